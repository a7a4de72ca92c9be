#include "dp3/ratfun.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dp3 {

FieldElement TaylorSeries::coeff(int n) const {
    if (n < 0 || n >= static_cast<int>(coeffs.size())) {
        if (n < order) return FieldElement(coeffs.empty() ? RingPtr() : coeffs[0].ring());
        fail(Errc::InvalidIndex, "Taylor coefficient beyond truncation order");
    }
    return coeffs[static_cast<std::size_t>(n)];
}

TaylorSeries ts_add(const TaylorSeries& a, const TaylorSeries& b) {
    if (a.var != b.var) fail(Errc::IncompatibleMap, "series variables differ");
    TaylorSeries r;
    r.var = a.var;
    r.order = std::min(a.order, b.order);
    r.coeffs = p1_add(a.coeffs, b.coeffs);
    r.coeffs.resize(static_cast<std::size_t>(r.order));
    return r;
}

TaylorSeries ts_mul(const TaylorSeries& a, const TaylorSeries& b) {
    if (a.var != b.var) fail(Errc::IncompatibleMap, "series variables differ");
    TaylorSeries r;
    r.var = a.var;
    r.order = std::min(a.order, b.order);
    r.coeffs = p1_series_mul(a.coeffs, b.coeffs, r.order);
    return r;
}

TaylorSeries ts_div(const TaylorSeries& a, const TaylorSeries& b) {
    if (a.var != b.var) fail(Errc::IncompatibleMap, "series variables differ");
    TaylorSeries r;
    r.var = a.var;
    r.order = std::min(a.order, b.order);
    Poly1 binv = p1_series_inv(b.coeffs, r.order);
    r.coeffs = p1_series_mul(a.coeffs, binv, r.order);
    return r;
}

TaylorSeries ts_log_derivative(const TaylorSeries& a) {
    TaylorSeries d;
    d.var = a.var;
    d.order = a.order - 1;
    if (d.order < 0) d.order = 0;
    d.coeffs = p1_derivative(a.coeffs);
    d.coeffs.resize(static_cast<std::size_t>(d.order));
    TaylorSeries base = a;
    base.order = d.order;
    base.coeffs.resize(static_cast<std::size_t>(d.order));
    return ts_div(d, base);
}

// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(std::string var, Poly1 num,
                                   std::vector<std::pair<Poly1, int>> den, RingPtr ring)
    : var_(std::move(var)), ring_(std::move(ring)), num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

RationalFunction RationalFunction::from_const(const std::string& var, const FieldElement& c) {
    RationalFunction r(var, c.ring());
    if (!c.is_zero()) r.num_ = {c};
    return r;
}

RationalFunction RationalFunction::variable(const std::string& var, RingPtr ring) {
    RationalFunction r(var, ring);
    r.num_ = {FieldElement(ring, GR(0)), FieldElement(ring, GR(1))};
    return r;
}

void RationalFunction::normalize() {
    p1_trim(num_);
    if (p1_is_zero(num_)) {
        num_.clear();
        den_.clear();
        return;
    }
    // canonicalize factors by their lowest nonzero coefficient (keeps
    // paper-style pole factors like 1 + C x^2/4 fraction-free), folding the
    // scale into the numerator
    FieldElement scale(ring_, GR(1));
    for (auto& [f, m] : den_) {
        p1_trim(f);
        int d = p1_degree(f);
        if (d < 0) fail(Errc::DivisionByZero, "zero factor in denominator");
        std::size_t lo = 0;
        while (f[lo].is_zero()) ++lo;
        FieldElement lc = f[lo];
        if (!lc.is_one()) {
            f = p1_scale(f, lc.inv());
            scale = scale * lc.pow(m);
        }
        if (d == 0) m = 0; // constant factor absorbed
    }
    num_ = p1_scale(num_, scale.inv());
    // merge equal factors
    std::vector<std::pair<Poly1, int>> merged;
    for (auto& [f, m] : den_) {
        if (m == 0 || p1_degree(f) == 0) continue;
        bool found = false;
        for (auto& [g, n] : merged)
            if (p1_equal(f, g)) {
                n += m;
                found = true;
                break;
            }
        if (!found) merged.emplace_back(f, m);
    }
    den_ = std::move(merged);
    // cancel factors dividing the numerator
    for (auto& [f, m] : den_) {
        while (m > 0 && p1_divides(f, num_)) {
            num_ = p1_divmod(num_, f).first;
            --m;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(),
                              [](const auto& fm) { return fm.second == 0; }),
               den_.end());
    std::sort(den_.begin(), den_.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
        for (std::size_t k = 0; k < a.first.size(); ++k) {
            if (a.first[k] != b.first[k]) return a.first[k] < b.first[k];
        }
        return a.second < b.second;
    });
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = p1_scale(r.num_, FieldElement(ring_, GR(-1)));
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (var_ != o.var_) fail(Errc::IncompatibleMap, "rational function variables differ");
    // union denominator
    std::vector<std::pair<Poly1, int>> uden = den_;
    for (auto& [g, n] : o.den_) {
        bool found = false;
        for (auto& [f, m] : uden)
            if (p1_equal(f, g)) {
                m = std::max(m, n);
                found = true;
                break;
            }
        if (!found) uden.emplace_back(g, n);
    }
    auto cofactor = [&](const std::vector<std::pair<Poly1, int>>& d) {
        Poly1 c = {FieldElement(ring_, GR(1))};
        for (auto& [f, m] : uden) {
            int have = 0;
            for (auto& [g, n] : d)
                if (p1_equal(f, g)) {
                    have = n;
                    break;
                }
            for (int k = have; k < m; ++k) c = p1_mul(c, f);
        }
        return c;
    };
    Poly1 n = p1_add(p1_mul(num_, cofactor(den_)), p1_mul(o.num_, cofactor(o.den_)));
    return RationalFunction(var_, std::move(n), std::move(uden), ring_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    if (is_zero() || o.is_zero()) return RationalFunction(var_, ring_ ? ring_ : o.ring_);
    if (var_ != o.var_) fail(Errc::IncompatibleMap, "rational function variables differ");
    std::vector<std::pair<Poly1, int>> d = den_;
    d.insert(d.end(), o.den_.begin(), o.den_.end());
    return RationalFunction(var_, p1_mul(num_, o.num_), std::move(d), ring_);
}

RationalFunction RationalFunction::inv() const {
    if (is_zero()) fail(Errc::DivisionByZero, "inverse of zero rational function");
    Poly1 n = {FieldElement(ring_, GR(1))};
    for (auto& [f, m] : den_)
        for (int k = 0; k < m; ++k) n = p1_mul(n, f);
    std::vector<std::pair<Poly1, int>> d;
    if (p1_degree(num_) > 0)
        d.emplace_back(num_, 1); // constructor re-normalizes to a monic factor
    else
        n = p1_scale(n, num_[0].inv());
    return RationalFunction(var_, std::move(n), std::move(d), ring_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const { return *this * o.inv(); }

RationalFunction RationalFunction::scale(const FieldElement& c) const {
    if (c.is_zero()) return RationalFunction(var_, ring_);
    RationalFunction r = *this;
    r.num_ = p1_scale(r.num_, c);
    return r;
}

RationalFunction RationalFunction::pow(int n) const {
    if (n == 0) return from_const(var_, FieldElement(ring_, GR(1)));
    RationalFunction b = n > 0 ? *this : inv();
    unsigned m = static_cast<unsigned>(n > 0 ? n : -n);
    RationalFunction r = from_const(var_, FieldElement(ring_, GR(1)));
    r.var_ = var_;
    while (m) {
        if (m & 1u) r = r * b;
        m >>= 1;
        if (m) b = b * b;
    }
    return r;
}

RationalFunction RationalFunction::shift(int k) const {
    if (is_zero()) return *this;
    RationalFunction r = *this;
    if (k >= 0) {
        r.num_ = p1_shift(r.num_, k);
        r.normalize();
    } else {
        Poly1 x = {FieldElement(ring_, GR(0)), FieldElement(ring_, GR(1))};
        r.den_.emplace_back(x, -k);
        r.normalize();
    }
    return r;
}

RationalFunction RationalFunction::derivative() const {
    if (is_zero()) return *this;
    // f = N / prod F_i^{m_i}
    // f' = (N' prod F_i - N sum_i m_i F_i' prod_{j != i} F_j) / prod F_i^{m_i+1}
    Poly1 prodF = {FieldElement(ring_, GR(1))};
    for (auto& [f, m] : den_) prodF = p1_mul(prodF, f);
    Poly1 n = p1_mul(p1_derivative(num_), prodF);
    for (std::size_t i = 0; i < den_.size(); ++i) {
        Poly1 t = p1_scale(p1_derivative(den_[i].first), FieldElement(ring_, GR(den_[i].second)));
        for (std::size_t j = 0; j < den_.size(); ++j)
            if (j != i) t = p1_mul(t, den_[j].first);
        n = p1_sub(n, p1_mul(num_, t));
    }
    std::vector<std::pair<Poly1, int>> d = den_;
    for (auto& [f, m] : d) ++m;
    return RationalFunction(var_, std::move(n), std::move(d), ring_);
}

bool RationalFunction::equals(const RationalFunction& o) const {
    // cross-multiplied comparison, robust to differing factorizations
    Poly1 lhs = p1_mul(num_, o.den_expanded());
    Poly1 rhs = p1_mul(o.num_, den_expanded());
    return p1_equal(lhs, rhs);
}

Poly1 RationalFunction::den_expanded() const {
    Poly1 d = {FieldElement(ring_, GR(1))};
    for (auto& [f, m] : den_)
        for (int k = 0; k < m; ++k) d = p1_mul(d, f);
    return d;
}

TaylorSeries RationalFunction::taylor(int order) const {
    TaylorSeries r;
    r.var = var_;
    r.order = order;
    r.coeffs.assign(static_cast<std::size_t>(order), FieldElement(ring_, GR(0)));
    if (is_zero()) return r;
    Poly1 acc = num_;
    acc.resize(static_cast<std::size_t>(std::max<std::size_t>(acc.size(), 1)));
    for (auto& [f, m] : den_) {
        if (f.empty() || f[0].is_zero())
            fail(Errc::PoleAtExpansionPoint, "denominator vanishes at the expansion point");
        Poly1 inv = p1_series_inv(f, order);
        for (int k = 0; k < m; ++k) acc = p1_series_mul(acc, inv, order);
    }
    acc.resize(static_cast<std::size_t>(order), FieldElement(ring_, GR(0)));
    r.coeffs = acc;
    return r;
}

std::map<int, FieldElement> RationalFunction::laurent(int lo, int hi) const {
    std::map<int, FieldElement> out;
    if (is_zero()) {
        for (int n = lo; n <= hi; ++n) out[n] = FieldElement(ring_, GR(0));
        return out;
    }
    // split monomial factors x^m from the denominator
    int mono = 0;
    RationalFunction rest = *this;
    std::vector<std::pair<Poly1, int>> keep;
    for (auto& [f, m] : rest.den_) {
        if (p1_degree(f) == 1 && f[0].is_zero())
            mono += m;
        else
            keep.emplace_back(f, m);
    }
    rest.den_ = keep;
    TaylorSeries ts = rest.taylor(hi + mono + 1);
    for (int n = lo; n <= hi; ++n) {
        int k = n + mono;
        out[n] = (k < 0) ? FieldElement(ring_, GR(0)) : ts.coeff(k);
    }
    return out;
}

FieldElement RationalFunction::laurent_coeff(int n) const {
    auto m = laurent(n, n);
    return m[n];
}

int RationalFunction::pole_order(const Poly1& factor) const {
    Poly1 f = p1_canonical(factor);
    for (auto& [g, m] : den_)
        if (p1_equal(g, f)) return m;
    return 0;
}

FieldElement RationalFunction::eval(const FieldElement& x) const {
    if (is_zero()) return FieldElement(ring_, GR(0));
    FieldElement n = p1_eval(num_, x);
    FieldElement d(ring_, GR(1));
    for (auto& [f, m] : den_) d = d * p1_eval(f, x).pow(m);
    if (d.is_zero()) fail(Errc::DivisionByZero, "evaluation at a pole");
    return n / d;
}

std::complex<double> RationalFunction::eval_complex(const std::vector<std::complex<double>>& ringvals,
                                                    const std::complex<double>& x) const {
    std::complex<double> n = 0.0;
    for (int k = static_cast<int>(num_.size()) - 1; k >= 0; --k)
        n = n * x + num_[static_cast<std::size_t>(k)].eval(ringvals);
    std::complex<double> d = 1.0;
    for (auto& [f, m] : den_) {
        std::complex<double> fv = 0.0;
        for (int k = static_cast<int>(f.size()) - 1; k >= 0; --k)
            fv = fv * x + f[static_cast<std::size_t>(k)].eval(ringvals);
        for (int k = 0; k < m; ++k) d *= fv;
    }
    if (d == std::complex<double>(0.0, 0.0)) fail(Errc::DivisionByZero, "evaluation at a pole");
    return n / d;
}

RationalFunction RationalFunction::substitute_param(const std::string& name, const FieldElement& v) const {
    return map_coeffs([&](const FieldElement& c) { return c.substitute(name, v); });
}

RationalFunction RationalFunction::map_coeffs(const std::function<FieldElement(const FieldElement&)>& f) const {
    RationalFunction r(var_, ring_);
    r.num_ = num_;
    for (auto& c : r.num_) c = f(c);
    r.den_ = den_;
    for (auto& [g, m] : r.den_)
        for (auto& c : g) c = f(c);
    r.normalize();
    return r;
}

std::string RationalFunction::str() const {
    std::ostringstream os;
    auto poly_str = [&](const Poly1& p) {
        if (p1_is_zero(p)) {
            os << "0";
            return;
        }
        bool first = true;
        for (std::size_t k = 0; k < p.size(); ++k) {
            if (p[k].is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << "(" << p[k].str() << ")";
            if (k == 1) os << "*" << var_;
            if (k > 1) os << "*" << var_ << "^" << k;
        }
    };
    poly_str(num_);
    for (auto& [f, m] : den_) {
        os << " / (";
        poly_str(f);
        os << ")^" << m;
    }
    return os.str();
}

// ---------------------------------------------------------------------------

RationalFunction normalize_rational(RationalFunction f) {
    f.normalize();
    return f;
}

TaylorSeries taylor_coefficients(const RationalFunction& f, int order) { return f.taylor(order); }

PartialFractions partial_fraction_decompose(const RationalFunction& f,
                                            const std::vector<Poly1>& basis) {
    for (auto& b : basis)
        if (p1_degree(b) < 1) fail(Errc::InvalidBasis, "basis factor must have degree >= 1");
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (p1_degree(p1_gcd(basis[i], basis[j])) > 0)
                fail(Errc::InvalidBasis, "basis factors are not pairwise coprime");

    PartialFractions out;
    if (f.is_zero()) return out;

    // multiplicities of each basis factor in the denominator
    std::vector<int> mult(basis.size(), 0);
    Poly1 residual_den = {FieldElement(f.ring(), GR(1))};
    for (auto& [g, m] : f.den()) {
        bool matched = false;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (p1_equal(p1_canonical(basis[i]), g)) {
                mult[i] += m;
                matched = true;
                break;
            }
        }
        if (!matched) {
            // try to express g as a product of basis powers (e.g. caller gave
            // an expanded denominator); otherwise the basis is unusable
            Poly1 rem = g;
            for (std::size_t i = 0; i < basis.size(); ++i) {
                Poly1 bm = p1_canonical(basis[i]);
                while (p1_degree(rem) > 0 && p1_divides(bm, rem)) {
                    rem = p1_divmod(rem, bm).first;
                    mult[i] += m;
                }
            }
            if (p1_degree(rem) != 0)
                fail(Errc::InvalidBasis, "denominator factor outside the basis closure");
            // constant leftover folds into numerator scale below via equals()
            for (int k = 0; k < m; ++k) residual_den = p1_mul(residual_den, rem);
        }
    }

    // numerator over the full basis denominator
    Poly1 N = f.num();
    // fold constant leftover
    if (p1_degree(residual_den) == 0 && !p1_is_zero(residual_den))
        N = p1_scale(N, residual_den[0].inv());

    // polynomial part: N / prod basis^mult
    Poly1 D = {FieldElement(f.ring(), GR(1))};
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (int k = 0; k < mult[i]; ++k) D = p1_mul(D, p1_canonical(basis[i]));
    auto [Q, R] = p1_divmod(N, D);
    out.polynomial_part = Q;

    // split R/D by extended gcd, factor by factor
    std::function<void(Poly1, std::vector<int>)> split = [&](Poly1 R_cur, std::vector<int> mult_cur) {
        int active = -1;
        int count = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (mult_cur[i] > 0) {
                if (active < 0) active = static_cast<int>(i);
                ++count;
            }
        if (p1_is_zero(R_cur)) return;
        if (count == 0) return;
        Poly1 P = {FieldElement(f.ring(), GR(1))};
        for (int k = 0; k < mult_cur[static_cast<std::size_t>(active)]; ++k)
            P = p1_mul(P, p1_canonical(basis[static_cast<std::size_t>(active)]));
        if (count == 1) {
            // expand R_cur in powers of the factor
            Poly1 b = p1_canonical(basis[static_cast<std::size_t>(active)]);
            Poly1 rem = R_cur;
            for (int p = mult_cur[static_cast<std::size_t>(active)]; p >= 1; --p) {
                auto [q, r] = p1_divmod(rem, b);
                if (!p1_is_zero(r)) out.parts[{active, p}] = r;
                rem = q;
            }
            if (!p1_is_zero(rem))
                fail(Errc::AlgorithmInvariantViolation, "partial fraction residue overflow");
            return;
        }
        Poly1 Qrest = {FieldElement(f.ring(), GR(1))};
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (static_cast<int>(i) == active) continue;
            for (int k = 0; k < mult_cur[i]; ++k) Qrest = p1_mul(Qrest, p1_canonical(basis[i]));
        }
        auto [g, u, v] = p1_ext_gcd(P, Qrest);
        if (p1_degree(g) != 0)
            fail(Errc::InvalidBasis, "basis factors are not coprime in the splitting step");
        // R/(P*Qrest) = R*v/P + R*u/Qrest   (u*P + v*Qrest = 1)
        Poly1 a = p1_divmod(p1_mul(R_cur, v), P).second;       // numerator over P
        Poly1 b2 = p1_divmod(p1_mul(R_cur, u), Qrest).second;  // numerator over Qrest
        // a/P handled as the single-factor case
        std::vector<int> only(basis.size(), 0);
        only[static_cast<std::size_t>(active)] = mult_cur[static_cast<std::size_t>(active)];
        split(a, only);
        std::vector<int> rest = mult_cur;
        rest[static_cast<std::size_t>(active)] = 0;
        split(b2, rest);
    };
    split(R, mult);
    return out;
}

RationalFunction recombine(const PartialFractions& pf, const std::vector<Poly1>& basis,
                           const std::string& var, RingPtr ring) {
    RationalFunction acc(var, ring);
    acc = RationalFunction(var, pf.polynomial_part, {}, ring);
    for (auto& [key, numr] : pf.parts) {
        std::vector<std::pair<Poly1, int>> den = {{basis[static_cast<std::size_t>(key.first)], key.second}};
        acc = acc + RationalFunction(var, numr, den, ring);
    }
    return acc;
}

} // namespace dp3
