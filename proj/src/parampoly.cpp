#include "dp3/parampoly.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

namespace dp3 {

namespace {
std::mutex g_ring_mutex;
std::vector<std::weak_ptr<const PolyRing>>& ring_registry() {
    static std::vector<std::weak_ptr<const PolyRing>> reg;
    return reg;
}
} // namespace

std::shared_ptr<const PolyRing> PolyRing::make(std::vector<std::string> names) {
    std::lock_guard<std::mutex> lock(g_ring_mutex);
    for (auto& w : ring_registry())
        if (auto p = w.lock())
            if (p->names() == names) return p;
    auto p = std::shared_ptr<const PolyRing>(new PolyRing(std::move(names)));
    ring_registry().push_back(p);
    return p;
}

int PolyRing::index(const std::string& name) const {
    for (std::size_t k = 0; k < names_.size(); ++k)
        if (names_[k] == name) return static_cast<int>(k);
    return -1;
}

int PolyRing::index_checked(const std::string& name) const {
    int k = index(name);
    if (k < 0) fail(Errc::RingMismatch, "parameter '" + name + "' not in ring");
    return k;
}

ParamPoly::ParamPoly(RingPtr ring, const GR& c) : ring_(std::move(ring)) {
    if (!c.is_zero()) terms_.emplace(Expvec(ring_->size(), 0), c);
}

ParamPoly ParamPoly::param(RingPtr ring, const std::string& name, int power) {
    int k = ring->index_checked(name);
    Expvec e(ring->size(), 0);
    e[static_cast<std::size_t>(k)] = static_cast<std::uint16_t>(power);
    return monomial(std::move(ring), e, GR(1));
}

ParamPoly ParamPoly::monomial(RingPtr ring, const Expvec& e, const GR& c) {
    ParamPoly p(std::move(ring));
    if (!c.is_zero()) p.terms_.emplace(e, c);
    return p;
}

bool ParamPoly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Expvec& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](std::uint16_t v) { return v == 0; });
}

GR ParamPoly::constant_value() const {
    if (terms_.empty()) return GR(0);
    return terms_.begin()->second;
}

void ParamPoly::add_term(const Expvec& e, const GR& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void ParamPoly::check_same_ring(const ParamPoly& o) const {
    if (ring_ != o.ring_) fail(Errc::RingMismatch, "mixed polynomial rings");
}

ParamPoly ParamPoly::operator-() const {
    ParamPoly r(ring_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

ParamPoly ParamPoly::operator+(const ParamPoly& o) const {
    ParamPoly r = *this;
    r += o;
    return r;
}

ParamPoly ParamPoly::operator-(const ParamPoly& o) const {
    ParamPoly r = *this;
    r -= o;
    return r;
}

ParamPoly& ParamPoly::operator+=(const ParamPoly& o) {
    if (ring_ == nullptr) ring_ = o.ring_;
    else if (!o.terms_.empty()) check_same_ring(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

ParamPoly& ParamPoly::operator-=(const ParamPoly& o) {
    if (ring_ == nullptr) ring_ = o.ring_;
    else if (!o.terms_.empty()) check_same_ring(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

ParamPoly ParamPoly::operator*(const ParamPoly& o) const {
    if (terms_.empty() || o.terms_.empty()) return ParamPoly(ring_ ? ring_ : o.ring_);
    check_same_ring(o);
    std::vector<std::pair<Expvec, GR>> prods;
    prods.reserve(terms_.size() * o.terms_.size());
    const std::size_t n = ring_->size();
    for (auto& [ea, ca] : terms_) {
        for (auto& [eb, cb] : o.terms_) {
            Expvec e(n);
            for (std::size_t k = 0; k < n; ++k) e[k] = static_cast<std::uint16_t>(ea[k] + eb[k]);
            prods.emplace_back(std::move(e), ca * cb);
        }
    }
    std::sort(prods.begin(), prods.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    ParamPoly r(ring_);
    std::size_t i = 0;
    while (i < prods.size()) {
        GR acc = prods[i].second;
        std::size_t j = i + 1;
        while (j < prods.size() && prods[j].first == prods[i].first) acc += prods[j++].second;
        if (!acc.is_zero()) r.terms_.emplace_hint(r.terms_.end(), prods[i].first, acc);
        i = j;
    }
    return r;
}

ParamPoly ParamPoly::scale(const GR& c) const {
    ParamPoly r(ring_);
    if (c.is_zero()) return r;
    for (auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
    return r;
}

ParamPoly ParamPoly::pow(unsigned n) const {
    ParamPoly r(ring_, GR(1));
    ParamPoly base = *this;
    while (n) {
        if (n & 1u) r = r * base;
        base = (n >>= 1) ? base * base : base;
    }
    return r;
}

int ParamPoly::degree_in(int var) const {
    int d = -1;
    for (auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[static_cast<std::size_t>(var)]));
    return d;
}

bool ParamPoly::uses_var(int var) const {
    for (auto& [e, c] : terms_)
        if (e[static_cast<std::size_t>(var)] != 0) return true;
    return false;
}

std::vector<int> ParamPoly::used_vars() const {
    std::vector<int> out;
    if (!ring_) return out;
    for (std::size_t v = 0; v < ring_->size(); ++v)
        if (uses_var(static_cast<int>(v))) out.push_back(static_cast<int>(v));
    return out;
}

std::pair<Expvec, GR> ParamPoly::lead() const {
    if (terms_.empty()) fail(Errc::AlgorithmInvariantViolation, "lead() of zero polynomial");
    auto it = terms_.rbegin();
    return {it->first, it->second};
}

std::vector<ParamPoly> ParamPoly::coeffs_in(int var) const {
    int d = degree_in(var);
    std::vector<ParamPoly> out(static_cast<std::size_t>(std::max(0, d) + 1), ParamPoly(ring_));
    for (auto& [e, c] : terms_) {
        Expvec r = e;
        std::uint16_t k = r[static_cast<std::size_t>(var)];
        r[static_cast<std::size_t>(var)] = 0;
        out[k].add_term(r, c);
    }
    return out;
}

ParamPoly ParamPoly::from_coeffs_in(int var, const std::vector<ParamPoly>& cs, RingPtr ring) {
    ParamPoly r(ring);
    for (std::size_t k = 0; k < cs.size(); ++k) {
        for (auto& [e, c] : cs[k].terms()) {
            Expvec m = e;
            m[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(m[static_cast<std::size_t>(var)] + k);
            r.add_term(m, c);
        }
    }
    return r;
}

ParamPoly ParamPoly::substitute(int var, const ParamPoly& value) const {
    if (!uses_var(var)) return *this;
    auto cs = coeffs_in(var);
    // Horner in `value`.
    ParamPoly r = cs.back();
    for (int k = static_cast<int>(cs.size()) - 2; k >= 0; --k) r = r * value + cs[static_cast<std::size_t>(k)];
    return r;
}

ParamPoly ParamPoly::map_to_ring(const RingPtr& other) const {
    ParamPoly r(other);
    if (!ring_) return r;
    std::vector<int> map(ring_->size(), -1);
    for (std::size_t v = 0; v < ring_->size(); ++v) map[v] = other->index(ring_->names()[v]);
    for (auto& [e, c] : terms_) {
        Expvec m(other->size(), 0);
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            if (map[v] < 0)
                fail(Errc::RingMismatch, "parameter '" + ring_->names()[v] + "' absent from target ring");
            m[static_cast<std::size_t>(map[v])] = e[v];
        }
        r.add_term(m, c);
    }
    return r;
}

ParamPoly ParamPoly::conj() const {
    ParamPoly r(ring_);
    for (auto& [e, c] : terms_) r.terms_.emplace(e, c.conj());
    return r;
}

ParamPoly ParamPoly::swap_vars(int va, int vb) const {
    ParamPoly r(ring_);
    for (auto& [e, c] : terms_) {
        Expvec m = e;
        std::swap(m[static_cast<std::size_t>(va)], m[static_cast<std::size_t>(vb)]);
        r.add_term(m, c);
    }
    return r;
}

std::complex<double> ParamPoly::eval(const std::vector<std::complex<double>>& vals) const {
    std::complex<double> acc = 0.0;
    for (auto& [e, c] : terms_) {
        std::complex<double> t = c.to_complex();
        for (std::size_t v = 0; v < e.size(); ++v)
            for (std::uint16_t k = 0; k < e[v]; ++k) t *= vals[v];
        acc += t;
    }
    return acc;
}

GR ParamPoly::eval_exact(const std::vector<GR>& vals) const {
    GR acc(0);
    for (auto& [e, c] : terms_) {
        GR t = c;
        for (std::size_t v = 0; v < e.size(); ++v)
            for (std::uint16_t k = 0; k < e[v]; ++k) t *= vals[v];
        acc += t;
    }
    return acc;
}

ParamPoly ParamPoly::normalized_monic() const {
    if (terms_.empty()) return *this;
    return scale(lead().second.inv());
}

std::string ParamPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (!first) os << " + ";
        first = false;
        os << "(" << it->second.str() << ")";
        for (std::size_t v = 0; v < it->first.size(); ++v)
            if (it->first[v]) {
                os << "*" << ring_->names()[v];
                if (it->first[v] > 1) os << "^" << it->first[v];
            }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// division / gcd

bool try_divexact(const ParamPoly& a, const ParamPoly& b, ParamPoly& quot) {
    if (b.is_zero()) return false;
    ParamPoly r = a;
    ParamPoly q(a.ring() ? a.ring() : b.ring());
    auto [eb, cb] = b.lead();
    while (!r.is_zero()) {
        auto [er, cr] = r.lead();
        Expvec e(er.size());
        for (std::size_t k = 0; k < er.size(); ++k) {
            if (er[k] < eb[k]) return false;
            e[k] = static_cast<std::uint16_t>(er[k] - eb[k]);
        }
        GR c = cr / cb;
        ParamPoly t = ParamPoly::monomial(r.ring(), e, c);
        q += t;
        r -= t * b;
    }
    quot = q;
    return true;
}

ParamPoly divexact(const ParamPoly& a, const ParamPoly& b) {
    ParamPoly q;
    if (!try_divexact(a, b, q))
        fail(Errc::AlgorithmInvariantViolation, "exact polynomial division failed");
    return q;
}

namespace {

Expvec monomial_gcd_exps(const ParamPoly& p) {
    Expvec m;
    bool first = true;
    for (auto& [e, c] : p.terms()) {
        if (first) {
            m = e;
            first = false;
        } else {
            for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::min(m[k], e[k]);
        }
    }
    return m;
}

ParamPoly shift_down(const ParamPoly& p, const Expvec& m) {
    ParamPoly r(p.ring());
    for (auto& [e, c] : p.terms()) {
        Expvec f(e.size());
        for (std::size_t k = 0; k < e.size(); ++k) f[k] = static_cast<std::uint16_t>(e[k] - m[k]);
        r.add_term(f, c);
    }
    return r;
}

// pseudo-remainder of a by b in variable `var`
ParamPoly pseudo_rem(std::vector<ParamPoly> A, const std::vector<ParamPoly>& B, int var, RingPtr ring) {
    const int db = static_cast<int>(B.size()) - 1;
    const ParamPoly& lb = B.back();
    while (static_cast<int>(A.size()) - 1 >= db && !A.empty()) {
        int da = static_cast<int>(A.size()) - 1;
        if (A.back().is_zero()) {
            A.pop_back();
            continue;
        }
        ParamPoly la = A.back();
        // A = lb*A - la * x^(da-db) * B
        for (auto& c : A) c = c * lb;
        for (int k = 0; k <= db; ++k)
            A[static_cast<std::size_t>(da - db + k)] -= la * B[static_cast<std::size_t>(k)];
        while (!A.empty() && A.back().is_zero()) A.pop_back();
    }
    return ParamPoly::from_coeffs_in(var, A, ring);
}

ParamPoly content_of(const std::vector<ParamPoly>& cs) {
    ParamPoly g;
    bool first = true;
    for (auto& c : cs) {
        if (c.is_zero()) continue;
        if (first) {
            g = c;
            first = false;
        } else {
            g = poly_gcd(g, c);
        }
        if (g.is_constant()) break;
    }
    return g.normalized_monic();
}

} // namespace

ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b) {
    if (a.is_zero()) return b.normalized_monic();
    if (b.is_zero()) return a.normalized_monic();
    RingPtr ring = a.ring() ? a.ring() : b.ring();

    // common monomial part
    Expvec ma = monomial_gcd_exps(a), mb = monomial_gcd_exps(b);
    Expvec mg(ma.size());
    for (std::size_t k = 0; k < ma.size(); ++k) mg[k] = std::min(ma[k], mb[k]);
    ParamPoly pa = shift_down(a, ma), pb = shift_down(b, mb);
    ParamPoly mono = ParamPoly::monomial(ring, mg, GR(1));

    if (pa.is_constant() || pb.is_constant()) return mono;
    if (pa == pb) return (mono * pa).normalized_monic();

    // quick divisibility probes
    {
        ParamPoly q;
        if (try_divexact(pa, pb, q)) return (mono * pb).normalized_monic();
        if (try_divexact(pb, pa, q)) return (mono * pa).normalized_monic();
    }

    // main variable: pick the used variable of smallest minimum degree
    std::vector<int> va = pa.used_vars();
    int var = -1, best = 1 << 30;
    for (int v : va) {
        if (!pb.uses_var(v)) continue;
        int d = std::min(pa.degree_in(v), pb.degree_in(v));
        if (d < best) {
            best = d;
            var = v;
        }
    }
    if (var < 0) return mono; // no common variable: coprime up to constants

    auto ca = pa.coeffs_in(var);
    auto cb = pb.coeffs_in(var);
    ParamPoly cont_a = content_of(ca), cont_b = content_of(cb);
    ParamPoly g_cont = poly_gcd(cont_a, cont_b);

    ParamPoly fa = divexact(pa, cont_a), fb = divexact(pb, cont_b);
    std::vector<ParamPoly> F = fa.coeffs_in(var), G = fb.coeffs_in(var);
    if (F.size() < G.size()) std::swap(F, G);

    // primitive PRS
    while (true) {
        ParamPoly r = pseudo_rem(F, G, var, ring);
        if (r.is_zero()) break;
        ParamPoly cont_r = content_of(r.coeffs_in(var));
        ParamPoly rp = divexact(r, cont_r);
        F = G;
        G = rp.coeffs_in(var);
        if (static_cast<int>(G.size()) - 1 == 0) {
            // gcd of primitive parts is trivial
            return (mono * g_cont).normalized_monic();
        }
    }
    ParamPoly gp = ParamPoly::from_coeffs_in(var, G, ring);
    ParamPoly cont_g = content_of(G);
    gp = divexact(gp, cont_g);
    return (mono * g_cont * gp).normalized_monic();
}

} // namespace dp3
