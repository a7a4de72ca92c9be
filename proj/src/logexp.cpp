#include "dp3/logexp.hpp"

namespace dp3 {

namespace {
const char* kYA = "y"; // outer of the A-family
const char* kXA = "x"; // inner of the A-family
const char* kXB = "x"; // outer of the B-family
const char* kYB = "y"; // inner of the B-family
} // namespace

BiSeries apply_log_D(const BiSeries& s) {
    RingPtr ring = s.ring();
    RationalFunction v = RationalFunction::variable(s.inner(), ring);
    if (s.outer() == kYA) {
        // D(y^j f(x)) = y^j (2 x f') + y^{j+1} (x f' - j f)
        BiSeries diag = s.map_shift(0, [&](int, const RationalFunction& f) {
            return (v * f.derivative()).scale(FieldElement(ring, 2));
        });
        BiSeries up = s.map_shift(1, [&](int j, const RationalFunction& f) {
            return v * f.derivative() - f.scale(FieldElement(ring, GR(j)));
        });
        return diag + up;
    }
    // D(x^k g(y)) = x^k (k (y+2) g - y^2 g')
    return s.map_shift(0, [&](int k, const RationalFunction& g) {
        RationalFunction yplus2 = v + RationalFunction::from_const(s.inner(), FieldElement(ring, 2));
        return (yplus2 * g).scale(FieldElement(ring, GR(k))) - v * v * g.derivative();
    });
}

BiSeries log_pde_residual(const BiSeries& s, const LogContext& ctx) {
    RingPtr ring = ctx.ring;
    BiSeries ds = apply_log_D(s);
    BiSeries dds = apply_log_D(ds);
    BiSeries s3 = s * s * s;
    // xy sits at outer level 1 with one inner power either way
    RationalFunction v = RationalFunction::variable(s.inner(), ring);
    BiSeries xyA = s.shift_outer(1).mul_inner(v.scale(ctx.a * ctx.b * FieldElement(ring, 2)));
    BiSeries b2x2y2 = BiSeries::monomial(s.outer(), s.inner(), 2, (v * v).scale(ctx.b * ctx.b));
    return dds * s - ds * ds + s3.scale(FieldElement(ring, 8)) - xyA - b2x2y2;
}

namespace {

struct LogProbe {
    const LogContext& ctx;
    BiSeries s, ds, dds, s2;
    RationalFunction v; // the inner variable

    LogProbe(const BiSeries& known, const LogContext& c) : ctx(c), s(known) {
        ds = apply_log_D(s);
        dds = apply_log_D(ds);
        s2 = s * s;
        v = RationalFunction::variable(s.inner(), ctx.ring);
    }

    RationalFunction residual_level(int L) const {
        RationalFunction r =
            BiSeries::mul_level(dds, s, L) - BiSeries::mul_level(ds, ds, L) +
            BiSeries::mul_level(s2, s, L).scale(FieldElement(ctx.ring, 8));
        if (L - 1 >= 0 && L - 1 <= s.hi_known())
            r = r - (v * s.level(L - 1)).scale(ctx.a * ctx.b * FieldElement(ctx.ring, 2));
        if (L == 2) r = r - (v * v).scale(ctx.b * ctx.b);
        return r;
    }

    RationalFunction column(int K, const RationalFunction& g, int L) const {
        BiSeries u = BiSeries::monomial(s.outer(), s.inner(), K, g);
        BiSeries du = apply_log_D(u);
        BiSeries ddu = apply_log_D(du);
        RationalFunction r = BiSeries::mul_level(ddu, s, L) + BiSeries::mul_level(dds, u, L) -
                             BiSeries::mul_level(ds, du, L).scale(FieldElement(ctx.ring, 2)) +
                             BiSeries::mul_level(s2, u, L).scale(FieldElement(ctx.ring, 24));
        if (K == L - 1) r = r - (v * g).scale(ctx.a * ctx.b * FieldElement(ctx.ring, 2));
        return r;
    }

    LinearODE2 level_ode(int K, int L) const {
        auto col = [&](const RationalFunction& g) { return column(K, g, L); };
        return ode_from_linearization(col, residual_level(L), s.inner(), ctx.ring);
    }
};

} // namespace

LogExpansion compute_log_A(int kmax, const LogContext& ctx, const LogCoeffGrid& anchors) {
    RingPtr ring = ctx.ring;
    LogExpansion out;
    out.kind = 'A';

    FieldElement C = ctx.C();
    // A_0 = C x^2/(1 + C x^2/4)^2
    Poly1 pole = {FieldElement(ring, 1), FieldElement(ring, 0), C.scale(GR(1, 4))};
    Poly1 num = {FieldElement(ring, 0), FieldElement(ring, 0), C};
    RationalFunction a0(kXA, num, {{pole, 2}}, ring);
    out.gen.push_back(a0);

    BiSeries A(kYA, kXA, ring, 0);
    A.set_level(0, a0);
    if (!log_pde_residual(A, ctx).level(0).is_zero())
        fail(Errc::AlgorithmInvariantViolation, "leading generator fails its level");

    for (int k = 1; k <= kmax; ++k) {
        A.set_hi_known(k);
        LogProbe probe(A, ctx);
        LinearODE2 ode = probe.level_ode(k, k);
        RationalAnsatz ans;
        ans.pole = pole;
        ans.max_pole_order = k + 2;
        ans.max_degree = 2 * (k + 2) + k + 2;
        AnsatzFamily fam = solve_rational_ansatz(ode, ans);
        if (fam.empty)
            fail(Errc::AlgorithmInvariantViolation, "no rational solution at level " + std::to_string(k));
        if (fam.homogeneous.size() != 1)
            fail(Errc::AlgorithmInvariantViolation, "expected a one-dimensional resonant family");
        if (!anchors.has(3, k - 2))
            fail(Errc::MissingAnchor, "level-3 anchor (3," + std::to_string(k - 2) + ") unavailable");
        FieldElement target = ctx.lift(anchors.at(3, k - 2));
        FieldElement tp = fam.particular.taylor(3).coeff(2);
        FieldElement th = fam.homogeneous[0].taylor(3).coeff(2);
        if (th.is_zero())
            fail(Errc::AlgorithmInvariantViolation, "resonant direction invisible at the anchor order");
        RationalFunction gen = fam.particular + fam.homogeneous[0].scale((target - tp) / th);
        out.gen.push_back(gen);
        A.set_level(k, gen);
    }
    return out;
}

LogExpansion compute_log_B(int kmax, const LogContext& ctx) {
    RingPtr ring = ctx.ring;
    LogExpansion out;
    out.kind = 'B';

    FieldElement Cp = ctx.Cprime();
    Poly1 pole;
    RationalFunction b0(kYB, ring);
    if (Cp.is_zero()) {
        b0 = RationalFunction(kYB, {FieldElement(ring, 0), FieldElement(ring, 0), FieldElement(ring, GR(-1, 4))},
                              {}, ring);
    } else {
        pole = {FieldElement(ring, -1) / Cp, FieldElement(ring, 1)};
        Poly1 num = {FieldElement(ring, 0), FieldElement(ring, 0),
                     FieldElement(ring, GR(-1, 4)) / (Cp * Cp)};
        b0 = RationalFunction(kYB, num, {{pole, 2}}, ring);
    }
    out.gen.push_back(b0);

    BiSeries B(kXB, kYB, ring, 0);
    B.set_level(0, b0);
    if (!log_pde_residual(B, ctx).level(0).is_zero())
        fail(Errc::AlgorithmInvariantViolation, "leading conjugate generator fails its level");

    for (int k = 1; k <= kmax; ++k) {
        B.set_hi_known(k);
        LogProbe probe(B, ctx);
        LinearODE2 ode = probe.level_ode(k, k);
        RationalAnsatz ans;
        ans.pole = pole;
        ans.max_pole_order = pole.empty() ? 0 : k + 2;
        ans.max_degree = (pole.empty() ? 0 : k + 2) + 2 * k + 4;
        AnsatzFamily fam = solve_rational_ansatz(ode, ans);
        if (fam.empty)
            fail(Errc::AlgorithmInvariantViolation, "no rational solution at level " + std::to_string(k));
        if (!fam.homogeneous.empty())
            fail(Errc::AlgorithmInvariantViolation,
                 "unexpected resonance in the conjugate family at level " + std::to_string(k));
        out.gen.push_back(fam.particular);
        B.set_level(k, fam.particular);
    }
    return out;
}

LogCoeffGrid extract_log_coefficients(const LogExpansion& e, const LogContext& ctx, int k,
                                      int nmax) {
    if (k < 0 || k >= static_cast<int>(e.gen.size()))
        fail(Errc::InvalidIndex, "generator " + std::to_string(k) + " not computed");
    LogCoeffGrid g;
    g.ring = ctx.ring;
    TaylorSeries ts = e.gen[static_cast<std::size_t>(k)].taylor(nmax + 1);
    for (int n = 0; n <= nmax; ++n) {
        if (e.kind == 'A')
            g.set(2 * n - 1, k - n, ts.coeff(n));
        else
            g.set(2 * k - 1, n - k, ts.coeff(n));
    }
    return g;
}

namespace {

FieldElement binom_fe(RingPtr ring, long top, long bottom) {
    mpz_class num = 1, den = 1;
    for (long k = 0; k < bottom; ++k) {
        num *= (top - k);
        den *= (k + 1);
    }
    mpq_class q(num, den);
    q.canonicalize();
    return FieldElement(ring, GR(q, mpq_class(0)));
}

} // namespace

FieldElement ClosedFormLevel::coefficient(int n) const {
    FieldElement acc(ring, 0);
    if (n < static_cast<int>(polynomial_part.size())) acc = polynomial_part[static_cast<std::size_t>(n)];
    int l = n / 2;
    bool odd = (n % 2) != 0;
    FieldElement mC4 = (-C).scale(GR(1, 4)); // (-C/4)
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        int p = static_cast<int>(pi) + 1;
        const Poly1& numr = parts[pi];
        FieldElement coef = odd ? (numr.size() > 1 ? numr[1] : FieldElement(ring, 0))
                                : (numr.empty() ? FieldElement(ring, 0) : numr[0]);
        if (coef.is_zero()) continue;
        acc += coef * binom_fe(ring, l + p - 1, p - 1) * mC4.pow(l);
    }
    return acc;
}

ClosedFormLevel closed_form_level(const LogExpansion& e, const LogContext& ctx, int k) {
    if (e.kind != 'A') fail(Errc::IncompatibleMap, "closed forms defined for the A-family");
    if (k < 0 || k >= static_cast<int>(e.gen.size()))
        fail(Errc::InvalidIndex, "generator " + std::to_string(k) + " not computed");
    RingPtr ring = ctx.ring;
    FieldElement C = ctx.C();
    Poly1 pole = {FieldElement(ring, 4) / C, FieldElement(ring, 0), FieldElement(ring, 1)};
    PartialFractions pf = partial_fraction_decompose(e.gen[static_cast<std::size_t>(k)], {pole});

    ClosedFormLevel out;
    out.ring = ring;
    out.C = C;
    out.polynomial_part = pf.polynomial_part;
    int maxp = 0;
    for (auto& [key, numr] : pf.parts) maxp = std::max(maxp, key.second);
    out.parts.assign(static_cast<std::size_t>(maxp), Poly1{});
    FieldElement c4 = C.scale(GR(1, 4));
    for (auto& [key, numr] : pf.parts) {
        // numerator over (x^2+4/C)^p -> numerator over (1+Cx^2/4)^p
        Poly1 scaled = p1_scale(numr, c4.pow(key.second));
        out.parts[static_cast<std::size_t>(key.second - 1)] = scaled;
    }
    return out;
}

} // namespace dp3
