#include "dp3/poly1.hpp"

#include <tuple>

namespace dp3 {

Poly1 p1_zero() { return {}; }
Poly1 p1_const(const FieldElement& c) {
    if (c.is_zero()) return {};
    return {c};
}

bool p1_is_zero(const Poly1& p) {
    for (auto& c : p)
        if (!c.is_zero()) return false;
    return true;
}

int p1_degree(const Poly1& p) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (!p[static_cast<std::size_t>(k)].is_zero()) return k;
    return -1;
}

void p1_trim(Poly1& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly1 p1_add(const Poly1& a, const Poly1& b) {
    Poly1 r = a;
    if (r.size() < b.size()) r.resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) r[k] = r[k] + b[k];
    p1_trim(r);
    return r;
}

Poly1 p1_sub(const Poly1& a, const Poly1& b) {
    Poly1 r = a;
    if (r.size() < b.size()) r.resize(b.size());
    for (std::size_t k = 0; k < b.size(); ++k) r[k] = r[k] - b[k];
    p1_trim(r);
    return r;
}

Poly1 p1_mul(const Poly1& a, const Poly1& b) {
    if (p1_is_zero(a) || p1_is_zero(b)) return {};
    Poly1 r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) continue;
            r[i + j] = r[i + j] + a[i] * b[j];
        }
    }
    p1_trim(r);
    return r;
}

Poly1 p1_scale(const Poly1& a, const FieldElement& c) {
    if (c.is_zero()) return {};
    Poly1 r = a;
    for (auto& v : r) v = v * c;
    return r;
}

Poly1 p1_shift(const Poly1& a, int k) {
    if (p1_is_zero(a)) return {};
    Poly1 r(a.size() + static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < a.size(); ++i) r[i + static_cast<std::size_t>(k)] = a[i];
    return r;
}

Poly1 p1_pow(const Poly1& a, unsigned n) {
    Poly1 r;
    bool have = false;
    Poly1 base = a;
    while (n) {
        if (n & 1u) {
            r = have ? p1_mul(r, base) : base;
            have = true;
        }
        n >>= 1;
        if (n) base = p1_mul(base, base);
    }
    if (!have) {
        // empty exponent: the caller must supply a ring through `a`
        Poly1 one;
        if (!a.empty()) one.push_back(FieldElement(a[0].ring(), GR(1)));
        return one;
    }
    return r;
}

Poly1 p1_derivative(const Poly1& a) {
    if (a.size() <= 1) return {};
    Poly1 r(a.size() - 1);
    for (std::size_t k = 1; k < a.size(); ++k) r[k - 1] = a[k].scale(GR(static_cast<long>(k)));
    p1_trim(r);
    return r;
}

FieldElement p1_eval(const Poly1& a, const FieldElement& x) {
    if (a.empty()) return FieldElement(x.ring());
    FieldElement acc = a.back();
    for (int k = static_cast<int>(a.size()) - 2; k >= 0; --k)
        acc = acc * x + a[static_cast<std::size_t>(k)];
    return acc;
}

bool p1_equal(const Poly1& a, const Poly1& b) { return p1_is_zero(p1_sub(a, b)); }

std::pair<Poly1, Poly1> p1_divmod(const Poly1& a, const Poly1& b) {
    int db = p1_degree(b);
    if (db < 0) fail(Errc::DivisionByZero, "polynomial division by zero");
    Poly1 r = a;
    p1_trim(r);
    Poly1 q;
    int dr = p1_degree(r);
    if (dr >= db) q.assign(static_cast<std::size_t>(dr - db + 1), FieldElement(b[static_cast<std::size_t>(db)].ring()));
    FieldElement lb_inv = b[static_cast<std::size_t>(db)].inv();
    while ((dr = p1_degree(r)) >= db) {
        FieldElement c = r[static_cast<std::size_t>(dr)] * lb_inv;
        q[static_cast<std::size_t>(dr - db)] = c;
        for (int k = 0; k <= db; ++k) {
            std::size_t idx = static_cast<std::size_t>(dr - db + k);
            r[idx] = r[idx] - c * b[static_cast<std::size_t>(k)];
        }
        r[static_cast<std::size_t>(dr)] = FieldElement(c.ring()); // force exact zero
        p1_trim(r);
    }
    p1_trim(q);
    return {q, r};
}

Poly1 p1_monic(const Poly1& a) {
    int d = p1_degree(a);
    if (d < 0) return a;
    return p1_scale(a, a[static_cast<std::size_t>(d)].inv());
}

Poly1 p1_canonical(const Poly1& a) {
    Poly1 r = a;
    p1_trim(r);
    if (r.empty()) return r;
    std::size_t lo = 0;
    while (r[lo].is_zero()) ++lo;
    return p1_scale(r, r[lo].inv());
}

Poly1 p1_gcd(const Poly1& a, const Poly1& b) {
    Poly1 f = a, g = b;
    p1_trim(f);
    p1_trim(g);
    while (!p1_is_zero(g)) {
        Poly1 r = p1_divmod(f, g).second;
        f = g;
        g = r;
    }
    return p1_monic(f);
}

bool p1_divides(const Poly1& d, const Poly1& a) {
    if (p1_is_zero(a)) return true;
    if (p1_degree(d) > p1_degree(a)) return false;
    return p1_is_zero(p1_divmod(a, d).second);
}

std::tuple<Poly1, Poly1, Poly1> p1_ext_gcd(const Poly1& a, const Poly1& b) {
    RingPtr ring;
    for (auto& c : a) { ring = c.ring(); break; }
    if (!ring)
        for (auto& c : b) { ring = c.ring(); break; }
    Poly1 r0 = a, r1 = b;
    Poly1 s0 = {FieldElement(ring, GR(1))}, s1 = {};
    Poly1 t0 = {}, t1 = {FieldElement(ring, GR(1))};
    p1_trim(r0);
    p1_trim(r1);
    while (!p1_is_zero(r1)) {
        auto [q, r] = p1_divmod(r0, r1);
        Poly1 s = p1_sub(s0, p1_mul(q, s1));
        Poly1 t = p1_sub(t0, p1_mul(q, t1));
        r0 = r1; r1 = r;
        s0 = s1; s1 = s;
        t0 = t1; t1 = t;
    }
    int d = p1_degree(r0);
    if (d >= 0) {
        FieldElement inv = r0[static_cast<std::size_t>(d)].inv();
        r0 = p1_scale(r0, inv);
        s0 = p1_scale(s0, inv);
        t0 = p1_scale(t0, inv);
    }
    return {r0, s0, t0};
}

Poly1 p1_series_inv(const Poly1& a, int order) {
    if (a.empty() || a[0].is_zero())
        fail(Errc::PoleAtExpansionPoint, "series inverse with vanishing constant term");
    Poly1 r(static_cast<std::size_t>(order));
    FieldElement inv0 = a[0].inv();
    r[0] = inv0;
    for (int n = 1; n < order; ++n) {
        FieldElement acc(a[0].ring());
        for (int k = 1; k <= n && k < static_cast<int>(a.size()); ++k)
            acc = acc + a[static_cast<std::size_t>(k)] * r[static_cast<std::size_t>(n - k)];
        r[static_cast<std::size_t>(n)] = -acc * inv0;
    }
    return r;
}

Poly1 p1_series_mul(const Poly1& a, const Poly1& b, int order) {
    Poly1 r(static_cast<std::size_t>(order));
    for (std::size_t i = 0; i < a.size() && static_cast<int>(i) < order; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && static_cast<int>(i + j) < order; ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

} // namespace dp3
