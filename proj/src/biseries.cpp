#include "dp3/biseries.hpp"

#include <algorithm>

namespace dp3 {

BiSeries BiSeries::constant(const std::string& outer, const std::string& inner,
                            const FieldElement& c) {
    BiSeries s(outer, inner, c.ring());
    if (!c.is_zero()) s.levels_.emplace(0, RationalFunction::from_const(inner, c));
    return s;
}

BiSeries BiSeries::monomial(const std::string& outer, const std::string& inner, int level,
                            RationalFunction f) {
    BiSeries s(outer, inner, f.ring());
    if (!f.is_zero()) s.levels_.emplace(level, std::move(f));
    return s;
}

int BiSeries::lo_support() const {
    for (auto& [j, f] : levels_)
        if (!f.is_zero()) return j;
    return hi_ >= kExact ? kExact : hi_ + 1;
}

RationalFunction BiSeries::level(int j) const {
    if (j > hi_)
        fail(Errc::InsufficientTruncation,
             "level " + std::to_string(j) + " beyond known truncation " + std::to_string(hi_));
    auto it = levels_.find(j);
    if (it == levels_.end()) return RationalFunction(inner_, ring_);
    return it->second;
}

void BiSeries::set_level(int j, RationalFunction f) {
    if (f.is_zero())
        levels_.erase(j);
    else
        levels_[j] = std::move(f);
}

void BiSeries::prune() {
    for (auto it = levels_.begin(); it != levels_.end();) {
        if (it->first > hi_ || it->second.is_zero())
            it = levels_.erase(it);
        else
            ++it;
    }
}

BiSeries BiSeries::operator+(const BiSeries& o) const {
    BiSeries r(outer_, inner_, ring_ ? ring_ : o.ring_, std::min(hi_, o.hi_));
    r.levels_ = levels_;
    for (auto& [j, f] : o.levels_) {
        auto it = r.levels_.find(j);
        if (it == r.levels_.end())
            r.levels_.emplace(j, f);
        else
            it->second = it->second + f;
    }
    r.prune();
    return r;
}

BiSeries BiSeries::operator-() const {
    BiSeries r = *this;
    for (auto& [j, f] : r.levels_) f = -f;
    return r;
}

BiSeries BiSeries::operator-(const BiSeries& o) const { return *this + (-o); }

BiSeries BiSeries::operator*(const BiSeries& o) const {
    int lo_a = lo_support(), lo_b = o.lo_support();
    long hi = std::min<long>(static_cast<long>(hi_) + lo_b, static_cast<long>(o.hi_) + lo_a);
    hi = std::min<long>(hi, kExact);
    BiSeries r(outer_, inner_, ring_ ? ring_ : o.ring_, static_cast<int>(hi));
    for (auto& [i, f] : levels_) {
        if (f.is_zero()) continue;
        for (auto& [j, g] : o.levels_) {
            if (g.is_zero()) continue;
            long L = static_cast<long>(i) + j;
            if (L > hi) continue;
            auto it = r.levels_.find(static_cast<int>(L));
            RationalFunction prod = f * g;
            if (it == r.levels_.end())
                r.levels_.emplace(static_cast<int>(L), std::move(prod));
            else
                it->second = it->second + prod;
        }
    }
    r.prune();
    return r;
}

BiSeries BiSeries::scale(const FieldElement& c) const {
    BiSeries r(outer_, inner_, ring_, hi_);
    if (c.is_zero()) return r;
    for (auto& [j, f] : levels_) r.levels_.emplace(j, f.scale(c));
    return r;
}

BiSeries BiSeries::mul_inner(const RationalFunction& f) const {
    BiSeries r(outer_, inner_, ring_, hi_);
    if (f.is_zero()) return r;
    for (auto& [j, g] : levels_) r.levels_.emplace(j, g * f);
    r.prune();
    return r;
}

BiSeries BiSeries::shift_outer(int s) const {
    BiSeries r(outer_, inner_, ring_, hi_ >= kExact ? kExact : hi_ + s);
    for (auto& [j, f] : levels_) r.levels_.emplace(j + s, f);
    r.prune();
    return r;
}

BiSeries BiSeries::truncated(int hi) const {
    BiSeries r = *this;
    r.hi_ = std::min(r.hi_, hi);
    r.prune();
    return r;
}

BiSeries BiSeries::d_inner() const {
    BiSeries r(outer_, inner_, ring_, hi_);
    for (auto& [j, f] : levels_) r.levels_.emplace(j, f.derivative());
    r.prune();
    return r;
}

BiSeries BiSeries::map_shift(int shift,
                             const std::function<RationalFunction(int, const RationalFunction&)>& fn) const {
    BiSeries r(outer_, inner_, ring_, hi_ >= kExact ? kExact : hi_ + shift);
    for (auto& [j, f] : levels_) {
        RationalFunction g = fn(j, f);
        if (!g.is_zero()) {
            auto it = r.levels_.find(j + shift);
            if (it == r.levels_.end())
                r.levels_.emplace(j + shift, std::move(g));
            else
                it->second = it->second + g;
        }
    }
    r.prune();
    return r;
}

BiSeries BiSeries::inverse(int want_hi) const {
    int lo = lo_support();
    if (lo > hi_) fail(Errc::DivisionByZero, "series inverse of (truncation-)zero series");
    RationalFunction head = level(lo);
    // 1 / (head * outer^lo * (1 + u)) with u = tail/head/outer^lo
    BiSeries u = (*this).shift_outer(-lo).mul_inner(head.inv());
    u.set_level(0, RationalFunction(inner_, ring_)); // drop the 1
    int target = want_hi + lo;                        // accuracy needed for 1/(1+u)
    BiSeries inv = BiSeries::constant(outer_, inner_, FieldElement(ring_, GR(1)));
    inv.set_hi_known(std::min(target, static_cast<int>(kExact)));
    int ulo = u.first_nonzero();
    if (ulo <= 0 && !u.empty())
        fail(Errc::AlgorithmInvariantViolation, "series inverse tail must start above level 0");
    if (!u.empty()) {
        BiSeries acc = BiSeries::constant(outer_, inner_, FieldElement(ring_, GR(1)));
        acc.set_hi_known(std::min(target, static_cast<int>(kExact)));
        // inv = 1 - u*inv iterated; converges once ulo*steps > target
        for (int step = 0; step * ulo <= target; ++step) {
            BiSeries next = acc - (u * inv).truncated(target);
            next.set_hi_known(std::min({next.hi_known(), target, static_cast<int>(kExact)}));
            inv = next;
        }
    }
    inv = inv.truncated(std::min(target, static_cast<int>(kExact)));
    inv.set_hi_known(std::min({inv.hi_known(), target, static_cast<int>(kExact)}));
    return inv.mul_inner(head.inv()).shift_outer(-lo);
}

int BiSeries::first_nonzero() const {
    for (auto& [j, f] : levels_)
        if (!f.is_zero()) return j;
    return hi_ >= kExact ? kExact : hi_ + 1;
}

RationalFunction BiSeries::mul_level(const BiSeries& a, const BiSeries& b, int L) {
    long hi = std::min<long>(static_cast<long>(a.hi_) + b.lo_support(),
                             static_cast<long>(b.hi_) + a.lo_support());
    if (L > hi)
        fail(Errc::InsufficientTruncation, "product level beyond exact range");
    RationalFunction acc(a.inner_, a.ring_ ? a.ring_ : b.ring_);
    for (auto& [i, f] : a.levels_) {
        if (f.is_zero()) continue;
        auto it = b.levels_.find(L - i);
        if (it == b.levels_.end() || it->second.is_zero()) continue;
        acc = acc + f * it->second;
    }
    return acc;
}

} // namespace dp3
