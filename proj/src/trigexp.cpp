#include "dp3/trigexp.hpp"

#include <algorithm>

namespace dp3 {

namespace {
const char* kA_outer = "y";
const char* kA_inner = "x";
const char* kB_outer = "x";
const char* kB_inner = "y";
} // namespace

RingPtr trig_ring() { return PolyRing::make({"alpha", "kappa", "b11", "b1m1", "theta"}); }

TrigContext TrigContext::general() { return TrigContext{}; }

TrigContext TrigContext::truncated_upper() {
    TrigContext c;
    c.b11 = FieldElement(c.ring, 0);
    c.kappa = FieldElement(c.ring, 0);
    return c;
}

TrigContext TrigContext::truncated_lower() {
    TrigContext c;
    c.b1m1 = FieldElement(c.ring, 0);
    c.kappa = FieldElement(c.ring, 0);
    return c;
}

TrigContext TrigContext::doubly_truncated() {
    TrigContext c;
    c.b11 = FieldElement(c.ring, 0);
    c.b1m1 = FieldElement(c.ring, 0);
    c.kappa = FieldElement(c.ring, 0);
    return c;
}

FieldElement TrigContext::Xi2() const {
    FieldElement four(ring, 4), eight(ring, 8), ten(ring, 10), three(ring, 3);
    return three * (alpha * alpha + eight * alpha * kappa + ten * kappa * kappa + four * alpha);
}

PairRelation TrigContext::constraint() const {
    return PairRelation{"b11", "b1m1", (iu() * FieldElement::param(ring, "kappa")).scale(GR(-3))};
}

FieldElement TrigContext::normalized(const FieldElement& e) const {
    if (!constraint_imposed) return e;
    return reduce_modulo(e, constraint());
}

// ---------------------------------------------------------------------------

BiSeries apply_trig_D(const BiSeries& s, const TrigContext& ctx) {
    RingPtr ring = ctx.ring;
    const bool a_graded = s.outer() == kA_outer;
    const std::string& inner = s.inner();
    RationalFunction xv = RationalFunction::variable(inner, ring);
    RationalFunction xm2 = RationalFunction::from_const(inner, ctx.iu()).shift(-2);

    if (a_graded) {
        // D(y^j f(x)) = y^j [-(1/2) E f + kappa (j - E) f] + y^{j-2} i x^{-2} (j - E) f
        BiSeries diag = s.map_shift(0, [&](int j, const RationalFunction& f) {
            RationalFunction ef = xv * f.derivative();
            return ef.scale(FieldElement(ring, GR(-1, 2)) - ctx.kappa) +
                   f.scale(ctx.kappa * FieldElement(ring, GR(j)));
        });
        BiSeries shifted = s.map_shift(-2, [&](int j, const RationalFunction& f) {
            RationalFunction ef = xv * f.derivative();
            return (f.scale(FieldElement(ring, GR(j))) - ef) * xm2;
        });
        return diag + shifted;
    }
    // B-grading: D(x^m g(y)) = x^m [-(m/2) g + kappa (E - m) g] + x^{m-2} i y^{-2} (E - m) g
    RationalFunction ym2 = RationalFunction::from_const(inner, ctx.iu()).shift(-2);
    BiSeries diag = s.map_shift(0, [&](int m, const RationalFunction& g) {
        RationalFunction eg = xv * g.derivative();
        return g.scale(FieldElement(ring, GR(-m, 2)) - ctx.kappa * FieldElement(ring, GR(m))) +
               eg.scale(ctx.kappa);
    });
    BiSeries shifted = s.map_shift(-2, [&](int m, const RationalFunction& g) {
        RationalFunction eg = xv * g.derivative();
        return (eg - g.scale(FieldElement(ring, GR(m)))) * ym2;
    });
    return diag + shifted;
}

BiSeries trig_pde_residual(const BiSeries& s, const TrigContext& ctx) {
    RingPtr ring = ctx.ring;
    const std::string& inner = s.inner();
    BiSeries ds = apply_trig_D(s, ctx);
    BiSeries dds = apply_trig_D(ds, ctx);
    BiSeries s3 = s * s * s;
    BiSeries one = BiSeries::constant(s.outer(), inner, FieldElement(ring, 1));
    RationalFunction xm4 =
        RationalFunction::from_const(inner, FieldElement(ring, GR(1, 3))).shift(-4);
    RationalFunction xm2 =
        RationalFunction::from_const(inner, (ctx.iu() * ctx.alpha).scale(GR(1, 2))).shift(-2);
    return dds * s - ds * ds + (s3 - one).shift_outer(-4).mul_inner(xm4) +
           s.shift_outer(-2).mul_inner(xm2);
}

namespace {

// Per-level affine probe of the governing equation around a known partial sum.
struct TrigProbe {
    const TrigContext& ctx;
    BiSeries s, ds, dds, s2;
    RationalFunction xm4, xm2;

    TrigProbe(const BiSeries& known, const TrigContext& c) : ctx(c), s(known) {
        ds = apply_trig_D(s, ctx);
        dds = apply_trig_D(ds, ctx);
        s2 = s * s;
        xm4 = RationalFunction::from_const(s.inner(), FieldElement(ctx.ring, GR(1, 3))).shift(-4);
        xm2 = RationalFunction::from_const(s.inner(), (ctx.iu() * ctx.alpha).scale(GR(1, 2)))
                  .shift(-2);
    }

    RationalFunction residual_level(int L) const {
        RationalFunction v =
            BiSeries::mul_level(dds, s, L) - BiSeries::mul_level(ds, ds, L);
        RationalFunction s3 = BiSeries::mul_level(s2, s, L + 4);
        if (L + 4 == 0)
            s3 = s3 - RationalFunction::from_const(s.inner(), FieldElement(ctx.ring, 1));
        v = v + s3 * xm4;
        if (L + 2 <= s.hi_known()) v = v + s.level(L + 2) * xm2;
        return v;
    }

    RationalFunction column(int K, const RationalFunction& g, int L) const {
        BiSeries u = BiSeries::monomial(s.outer(), s.inner(), K, g);
        BiSeries du = apply_trig_D(u, ctx);
        BiSeries ddu = apply_trig_D(du, ctx);
        RationalFunction v = BiSeries::mul_level(ddu, s, L) + BiSeries::mul_level(dds, u, L) -
                             BiSeries::mul_level(ds, du, L).scale(FieldElement(ctx.ring, 2));
        v = v + BiSeries::mul_level(s2, u, L + 4).scale(FieldElement(ctx.ring, 3)) * xm4;
        if (K == L + 2) v = v + g * xm2;
        return v;
    }

    LinearODE2 level_ode(int K, int L) const {
        auto col = [&](const RationalFunction& g) { return column(K, g, L); };
        return ode_from_linearization(col, residual_level(L), s.inner(), ctx.ring);
    }
};

} // namespace

// ---------------------------------------------------------------------------
// conjugate (B) expansion

namespace {

RingPtr extended_ring(int nmax) {
    std::vector<std::string> names = {"alpha", "kappa", "b11", "b1m1", "theta"};
    for (int m = 1; m <= 2 * nmax; ++m) names.push_back("C" + std::to_string(m));
    return PolyRing::make(names);
}

struct BRun {
    RingPtr ring;   // extended
    TrigContext ctx; // values mapped into the extended ring
    BiSeries A;     // partial sum, outer x, inner y
    std::map<int, FieldElement> resolved;
    std::map<int, Poly1> levels; // raw polynomials with possibly pending C's
    bool constraint_emitted = false;

    FieldElement cval(int m) const { return FieldElement::param(ring, "C" + std::to_string(m)); }

    FieldElement subst_resolved(FieldElement e) const {
        for (int round = 0; round < 8; ++round) {
            bool used = false;
            for (auto& [m, v] : resolved) {
                std::string nm = "C" + std::to_string(m);
                int var = ring->index(nm);
                if (var >= 0 && (e.num().uses_var(var) || e.den().uses_var(var))) {
                    e = e.substitute(nm, v);
                    used = true;
                }
            }
            if (!used) return e;
        }
        fail(Errc::AlgorithmInvariantViolation, "cyclic ledger substitution");
    }

    FieldElement norm(FieldElement e) const {
        e = subst_resolved(e);
        if (constraint_emitted) e = reduce_modulo(e, ctx.constraint());
        return e;
    }

    Poly1 norm_poly(Poly1 p) const {
        for (auto& c : p) c = norm(c);
        p1_trim(p);
        return p;
    }

    void store_level(int n, Poly1 p) {
        levels[n] = p;
        RationalFunction f(kB_inner, norm_poly(p), {}, ring);
        A.set_level(n, f);
    }

    void refresh_levels() {
        for (auto& [n, p] : levels) A.set_level(n, RationalFunction(kB_inner, norm_poly(p), {}, ring));
    }
};

} // namespace

BInfPolynomials compute_B_infty(int nmax, TrigContext pub_ctx) {
    const int top = nmax + 2; // run two levels deeper so nmax is fully resolved
    BRun run;
    run.ring = extended_ring(top + 2);
    run.ctx.ring = run.ring;
    run.ctx.alpha = pub_ctx.alpha.map_to_ring(run.ring);
    run.ctx.kappa = pub_ctx.kappa.map_to_ring(run.ring);
    run.ctx.b11 = pub_ctx.b11.map_to_ring(run.ring);
    run.ctx.b1m1 = pub_ctx.b1m1.map_to_ring(run.ring);
    run.ctx.theta = pub_ctx.theta.map_to_ring(run.ring);
    RingPtr ring = run.ring;

    run.A = BiSeries(kB_outer, kB_inner, ring, 0);
    run.store_level(0, {FieldElement(ring, 1)});
    {
        Poly1 b1 = {run.ctx.b1m1, FieldElement(ring, 0), run.ctx.b11};
        p1_trim(b1);
        run.store_level(1, b1);
    }

    for (int n = 2; n <= top; ++n) {
        run.A.set_hi_known(n);
        TrigProbe probe(run.A, run.ctx);
        LinearODE2 ode = probe.level_ode(n, n - 4);

        // the level operator is Euler-type up to an overall rational factor:
        // c(y) * (y^2 d^2 - (2n-1) y d + (n^2-1))
        RationalFunction yv = RationalFunction::variable(kB_inner, ring);
        if (ode.p0.is_zero()) fail(Errc::AlgorithmInvariantViolation, "level operator degenerate");
        RationalFunction cfun = ode.p0.scale(FieldElement(ring, GR(static_cast<long>(n) * n - 1)).inv());
        {
            RationalFunction exp2 = cfun * yv * yv;
            RationalFunction exp1 = (cfun * yv).scale(FieldElement(ring, GR(-(2 * n - 1))));
            if (!ode.p2.equals(exp2) || !ode.p1.equals(exp1))
                fail(Errc::AlgorithmInvariantViolation, "level operator is not Euler-type");
        }
        RationalFunction rhs = ode.rhs / cfun;
        if (!rhs.is_polynomial()) fail(Errc::UnsupportedRHS, "level right-hand side not polynomial");
        Poly1 rhsp = run.norm_poly(rhs.num());

        EulerSolveReport rep = solve_euler_polynomial(n, rhsp, ring);
        FieldElement L1 = run.norm(rep.log_high), L2 = run.norm(rep.log_low);

        if (!L1.is_zero() || !L2.is_zero()) {
            if (n == 3 && !run.constraint_emitted) {
                // rationality at the third level forces 3 i kappa + b11 b1m1 = 0
                FieldElement obstruction =
                    run.ctx.b11 * run.ctx.b1m1 + run.ctx.kappa.scale(GR(3)) * run.ctx.iu();
                FieldElement q1 = L1 / (obstruction * run.ctx.b11);
                FieldElement q2 = L2 / (obstruction * run.ctx.b1m1);
                if (!q1.is_constant() || !q2.is_constant())
                    fail(Errc::AlgorithmInvariantViolation,
                         "unexpected rationality obstruction at level 3");
                run.constraint_emitted = true;
                run.refresh_levels();
                // redo the level under the constraint
                run.A.set_hi_known(n);
                TrigProbe probe2(run.A, run.ctx);
                ode = probe2.level_ode(n, n - 4);
                cfun = ode.p0.scale(FieldElement(ring, GR(static_cast<long>(n) * n - 1)).inv());
                rhsp = run.norm_poly((ode.rhs / cfun).num());
                rep = solve_euler_polynomial(n, rhsp, ring);
                L1 = run.norm(rep.log_high);
                L2 = run.norm(rep.log_low);
                if (!L1.is_zero() || !L2.is_zero())
                    fail(Errc::AlgorithmInvariantViolation, "constraint did not clear the logs");
            } else if (n >= 4) {
                // solve L1 = L2 = 0 for the pair C_{2n-4}, C_{2n-5}
                std::string ca = "C" + std::to_string(2 * n - 4);
                std::string cb = "C" + std::to_string(2 * n - 5);
                auto lin = [&](const FieldElement& L, const std::string& s1, const std::string& s2) {
                    FieldElement zero(ring, 0), one(ring, 1);
                    FieldElement l00 = L.substitute(s1, zero).substitute(s2, zero);
                    FieldElement l10 = L.substitute(s1, one).substitute(s2, zero) - l00;
                    FieldElement l01 = L.substitute(s1, zero).substitute(s2, one) - l00;
                    return std::array<FieldElement, 3>{l10, l01, l00};
                };
                auto r1 = lin(L1, ca, cb), r2 = lin(L2, ca, cb);
                FieldElement det = det2x2(r1[0], r1[1], r2[0], r2[1]);
                det = run.norm(det);
                if (det.is_zero())
                    fail(Errc::DeterminantVanished,
                         "log-coefficient system degenerate at level " + std::to_string(n));
                FieldElement va = run.norm((-r1[2] * r2[1] + r2[2] * r1[1]) / det);
                FieldElement vb = run.norm((-r1[0] * r2[2] + r2[0] * r1[2]) / det);
                // check they are ledger-clean (no C symbols left)
                for (auto& v : {va, vb})
                    for (std::size_t pv = 5; pv < ring->size(); ++pv)
                        if (v.num().uses_var(static_cast<int>(pv)) ||
                            v.den().uses_var(static_cast<int>(pv)))
                            fail(Errc::AlgorithmInvariantViolation, "ledger value not closed");
                run.resolved[2 * n - 4] = va;
                run.resolved[2 * n - 5] = vb;
                run.refresh_levels();
                rhsp = run.norm_poly(rhsp);
                rep = solve_euler_polynomial(n, rhsp, ring);
                if (!run.norm(rep.log_high).is_zero() || !run.norm(rep.log_low).is_zero())
                    fail(Errc::AlgorithmInvariantViolation, "ledger resolution did not clear the logs");
            } else {
                fail(Errc::AlgorithmInvariantViolation,
                     "unexpected log obstruction at level " + std::to_string(n));
            }
        }

        // general solution: particular + C_{2n} y^{n+1} + C_{2n-1} y^{n-1}
        Poly1 level = rep.particular;
        if (static_cast<int>(level.size()) < n + 2) level.resize(static_cast<std::size_t>(n) + 2, FieldElement(ring, 0));
        level[static_cast<std::size_t>(n) + 1] = level[static_cast<std::size_t>(n) + 1] + run.cval(2 * n);
        level[static_cast<std::size_t>(n) - 1] = level[static_cast<std::size_t>(n) - 1] + run.cval(2 * n - 1);
        run.store_level(n, level);
    }

    // package: map levels 0..nmax back to the public ring
    BInfPolynomials out;
    out.ring = pub_ctx.ring;
    out.constraint_emitted = run.constraint_emitted;
    for (int n = 0; n <= nmax; ++n) {
        Poly1 p = run.norm_poly(run.levels[n]);
        Poly1 q;
        for (auto& cfe : p) q.push_back(cfe.map_to_ring(pub_ctx.ring));
        p1_trim(q);
        out.polys.push_back(q);
    }
    for (auto& [m, v] : run.resolved) out.constants[m] = run.norm(v).map_to_ring(pub_ctx.ring);
    out.constants[1] = pub_ctx.b1m1;
    out.constants[2] = pub_ctx.b11;
    for (int m = 2 * top - 3; m <= 2 * top; ++m) out.pending.push_back(m);
    return out;
}

// ---------------------------------------------------------------------------
// A expansion

AInfExpansion compute_A_infty(int kmax, const TrigContext& ctx, const TrigCoeffGrid& anchors) {
    RingPtr ring = ctx.ring;
    AInfExpansion out;
    out.ring = ring;

    RationalFunction xv = RationalFunction::variable(kA_inner, ring);
    RationalFunction one = RationalFunction::from_const(kA_inner, FieldElement(ring, 1));

    // A_0 = 1 + b1m1 x / (1 - b1m1 x/6)^2
    RationalFunction a0 = one;
    Poly1 pole; // monic pole x - 6/b1m1
    if (!ctx.b1m1.is_zero()) {
        pole = {FieldElement(ring, -6) / ctx.b1m1, FieldElement(ring, 1)};
        Poly1 num = {FieldElement(ring, 0), FieldElement(ring, 36) / ctx.b1m1};
        a0 = one + RationalFunction(kA_inner, num, {{pole, 2}}, ring);
    }
    out.gen.push_back(a0);

    BiSeries A(kA_outer, kA_inner, ring, 0);
    A.set_level(0, a0);
    {
        BiSeries r = trig_pde_residual(A, ctx);
        if (!r.level(-4).is_zero())
            fail(Errc::AlgorithmInvariantViolation, "leading generator fails its level");
    }

    for (int k = 1; k <= kmax; ++k) {
        A.set_hi_known(k);
        TrigProbe probe(A, ctx);
        LinearODE2 ode = probe.level_ode(k, k - 4);
        RationalAnsatz ans;
        ans.pole = pole;
        ans.max_pole_order = pole.empty() ? 0 : k / 2 + 3;
        ans.max_degree = 2 * ans.max_pole_order + k + 3;
        AnsatzFamily fam = solve_rational_ansatz(ode, ans);
        if (fam.empty) fail(Errc::AlgorithmInvariantViolation, "no rational solution at level " + std::to_string(k));
        RationalFunction gen = fam.particular;
        if (!fam.homogeneous.empty()) {
            if (fam.homogeneous.size() != 1)
                fail(Errc::AlgorithmInvariantViolation, "unexpected resonance dimension");
            if (!anchors.has(k + 1, -1))
                fail(Errc::MissingAnchor, "anchor a(" + std::to_string(k + 1) + ",-1) unavailable");
            FieldElement target = ctx.theta.pow(k + 1) * anchors.at(k + 1, -1);
            FieldElement tp = gen.taylor(k + 2).coeff(k + 1);
            FieldElement th = fam.homogeneous[0].taylor(k + 2).coeff(k + 1);
            if (th.is_zero())
                fail(Errc::AlgorithmInvariantViolation, "resonant direction invisible at anchor order");
            gen = gen + fam.homogeneous[0].scale((target - tp) / th);
        }
        // support check: series starts at x^floor((k+1)/2)
        TaylorSeries ts = gen.taylor((k + 1) / 2);
        for (auto& cf : ts.coeffs)
            if (!cf.is_zero())
                fail(Errc::AlgorithmInvariantViolation, "level generator violates its support");
        out.gen.push_back(gen);
        A.set_level(k, gen);
    }
    return out;
}

// ---------------------------------------------------------------------------
// grids and formulas

TrigCoeffGrid grid_from_B(const BInfPolynomials& b, int depth) {
    TrigCoeffGrid g;
    g.ring = b.ring;
    FieldElement theta = FieldElement::param(b.ring, "theta");
    for (int n = 0; n < static_cast<int>(b.polys.size()) && n <= depth; ++n) {
        FieldElement scale = theta.pow(-n);
        const Poly1& p = b.polys[static_cast<std::size_t>(n)];
        for (int j = -n; j <= n; ++j) {
            int pw = n + j;
            FieldElement v = (pw >= 0 && pw < static_cast<int>(p.size()))
                                 ? p[static_cast<std::size_t>(pw)]
                                 : FieldElement(b.ring, 0);
            g.set(n, j, v * scale);
        }
    }
    return g;
}

void grid_merge_from_A(TrigCoeffGrid& grid, const AInfExpansion& a, int nmax) {
    FieldElement theta = FieldElement::param(a.ring, "theta");
    for (int m = 0; m < static_cast<int>(a.gen.size()); ++m) {
        TaylorSeries ts = a.gen[static_cast<std::size_t>(m)].taylor(nmax + 1);
        for (int n = 0; n <= nmax; ++n) {
            int j = m - n;
            if (std::abs(j) > n) continue;
            grid.set(n, j, ts.coeff(n) * theta.pow(-n));
        }
    }
}

TrigCoeffGrid anchors_from_ledger(const BInfPolynomials& b, int nmax) {
    TrigCoeffGrid g;
    g.ring = b.ring;
    FieldElement theta = FieldElement::param(b.ring, "theta");
    for (int n = 2; n <= nmax; ++n) {
        auto hi = b.constants.find(2 * n);
        auto lo = b.constants.find(2 * n - 1);
        if (hi != b.constants.end()) g.set(n, 1, hi->second * theta.pow(-n));
        if (lo != b.constants.end()) g.set(n, -1, lo->second * theta.pow(-n));
    }
    g.set(1, 1, FieldElement::param(b.ring, "b11") / theta);
    g.set(1, -1, FieldElement::param(b.ring, "b1m1") / theta);
    return g;
}

FieldElement from_oracle_basis(const FieldElement& e) {
    RingPtr oring = PolyRing::make({"alpha", "theta", "a11", "a1m1"});
    RingPtr tring = trig_ring();
    if (e.ring() != oring) fail(Errc::RingMismatch, "expected the oracle trig ring");
    RingPtr joint = PolyRing::make({"alpha", "kappa", "b11", "b1m1", "theta", "a11", "a1m1"});
    FieldElement x = e.map_to_ring(joint);
    // a11*a1m1 -> -3 i kappa / theta^2, then a11 -> b11/theta, a1m1 -> b1m1/theta
    FieldElement iu(joint, GR::i());
    FieldElement kap = FieldElement::param(joint, "kappa");
    FieldElement th = FieldElement::param(joint, "theta");
    PairRelation pr{"a11", "a1m1", kap.scale(GR(-3)) * iu / (th * th)};
    x = reduce_modulo(x, pr);
    x = x.substitute("a11", FieldElement::param(joint, "b11") / th);
    x = x.substitute("a1m1", FieldElement::param(joint, "b1m1") / th);
    return x.map_to_ring(tring);
}

namespace {

FieldElement binom_fe(RingPtr ring, long top, long bottom) {
    // binomial(top, bottom) as an exact rational
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

FieldElement coefficient_formula(DiagFamily family, int n, bool positive_offset,
                                 const TrigContext& ctx, const TrigCoeffGrid* boundary) {
    RingPtr ring = ctx.ring;
    auto flip = [&](const FieldElement& e) { return positive_offset ? symmetry_transform(e) : e; };
    FieldElement a1 = ctx.b1m1 / ctx.theta; // a_{1,-1}
    FieldElement theta = ctx.theta;
    FieldElement iu = ctx.iu();
    FieldElement Xi2 = ctx.Xi2();
    FieldElement kap = ctx.kappa;

    int start = family == DiagFamily::Main ? 1 : family == DiagFamily::Offset2 ? 4 : 7;
    if (n < start) {
        if (!boundary) fail(Errc::InvalidIndex, "index below family validity and no grid supplied");
        int off = family == DiagFamily::Main ? 0 : family == DiagFamily::Offset2 ? 2 : 4;
        int j = -(n - off);
        if (positive_offset) j = -j;
        return boundary->at(n, j);
    }

    switch (family) {
        case DiagFamily::Main: {
            // a_{n,-n} = n a_{1,-1}^n / 6^(n-1)
            FieldElement six(ring, 6);
            return flip(a1.pow(n).scale(GR(n)) / six.pow(n - 1));
        }
        case DiagFamily::Offset2: {
            FieldElement eta1 =
                (Xi2.scale(GR(3)) + kap.scale(GR(42)) - FieldElement(ring, 47)).scale(GR(-27));
            FieldElement eta2 =
                (Xi2.scale(GR(7)) + kap.scale(GR(162)) - FieldElement(ring, 59)).scale(GR(9));
            FieldElement eta3 =
                (Xi2 + kap.scale(GR(30)) - FieldElement(ring, 5)).scale(GR(-18));
            FieldElement comb = eta1 + eta2.scale(GR(n + 1)) +
                                eta3.scale(GR(static_cast<long>(n + 1) * (n + 2), 2));
            FieldElement six(ring, 6);
            FieldElement v = iu * a1.pow(n - 2) * comb / (six.pow(n) * theta * theta);
            return flip(v);
        }
        case DiagFamily::Offset4: {
            FieldElement nu1 =
                (Xi2 * Xi2).scale(GR(25)) +
                Xi2 * (ctx.alpha.scale(GR(80)) + kap.scale(GR(2060)) + FieldElement(ring, 78)) +
                ctx.alpha * (kap.scale(GR(10)) + FieldElement(ring, 3)).scale(GR(240)) +
                kap.pow(3).scale(GR(10000)) + kap.pow(2).scale(GR(55452)) +
                kap.scale(GR(12692)) + FieldElement(ring, 2773);
            nu1 = nu1.scale(GR(135, 4));
            FieldElement nu2 =
                (Xi2 * Xi2).scale(GR(91)) +
                Xi2 * (ctx.alpha.scale(GR(176)) + kap.scale(GR(6692)) - FieldElement(ring, 246)) +
                ctx.alpha * (kap.scale(GR(10)) + FieldElement(ring, 3)).scale(GR(528)) +
                kap.pow(3).scale(GR(22000)) + kap.pow(2).scale(GR(153012)) +
                kap.scale(GR(14012)) + FieldElement(ring, 6943);
            nu2 = nu2.scale(GR(-27, 4));
            FieldElement nu3 =
                (Xi2 * Xi2).scale(GR(9)) +
                Xi2 * (ctx.alpha.scale(GR(8)) + kap.scale(GR(596)) - FieldElement(ring, 62)) +
                ctx.alpha * (kap.scale(GR(10)) + FieldElement(ring, 3)).scale(GR(24)) +
                (kap.pow(3).scale(GR(200)) + kap.pow(2).scale(GR(2256)) + kap.scale(GR(-188)) +
                 FieldElement(ring, 87))
                    .scale(GR(5));
            nu3 = nu3.scale(GR(27));
            FieldElement nu4 =
                (Xi2 + kap.scale(GR(30)) - FieldElement(ring, 5)).pow(2).scale(GR(-81, 2));
            FieldElement comb(ring, 0);
            std::array<FieldElement, 4> nus = {nu1, nu2, nu3, nu4};
            for (int l = 1; l <= 4; ++l)
                comb += nus[static_cast<std::size_t>(l - 1)] * binom_fe(ring, n + l - 1, l - 1);
            FieldElement six(ring, 6);
            FieldElement v = -(a1.pow(n - 4) * comb) / (six.pow(n) * theta.pow(4));
            return flip(v);
        }
    }
    fail(Errc::InvalidIndex, "unknown family");
}

FieldElement symmetry_transform(const FieldElement& e) {
    RingPtr ring = e.ring();
    auto flip_poly = [&](const ParamPoly& p) {
        ParamPoly q = p.conj();
        int ia = ring->index("alpha"), ik = ring->index("kappa");
        if (ia >= 0) q = q.substitute(ia, -ParamPoly::param(ring, "alpha"));
        if (ik >= 0) q = q.substitute(ik, -ParamPoly::param(ring, "kappa"));
        int b1 = ring->index("b11"), b2 = ring->index("b1m1");
        if (b1 >= 0 && b2 >= 0) q = q.swap_vars(b1, b2);
        int a1 = ring->index("a11"), a2 = ring->index("a1m1");
        if (a1 >= 0 && a2 >= 0) q = q.swap_vars(a1, a2);
        return q;
    };
    return FieldElement(flip_poly(e.num()), flip_poly(e.den()));
}

TrigCoeffGrid symmetry_transform(const TrigCoeffGrid& g) {
    TrigCoeffGrid out;
    out.ring = g.ring;
    for (auto& [kj, v] : g.entries) out.set(kj.first, -kj.second, symmetry_transform(v));
    return out;
}

RationalFunction symmetry_transform(const RationalFunction& f) {
    return f.map_coeffs([](const FieldElement& c) { return symmetry_transform(c); });
}

KappaValidity kappa_validity(std::complex<double> kappa_value) {
    KappaValidity v;
    double re = kappa_value.real();
    const double eps = 1e-12;
    auto near = [&](double x) { return std::abs(re - x) < eps; };
    v.marginal = near(-0.5) || near(1.5) || near(0.0) || near(1.0) || near(0.5) || near(-1.5);
    v.tilde_asymptotic = re > -0.5 && re < 1.5;
    v.leading_visible = re > 0.0 && re < 1.0;
    v.plain_asymptotic = re > -1.5 && re <= 0.5;
    return v;
}

TruncatedData compute_truncated(TruncCase which, int nmax, int kmax_a) {
    TruncatedData out;
    if (which == TruncCase::BothZero) {
        TrigContext ctx = TrigContext::doubly_truncated();
        out.bpolys = compute_B_infty(nmax, ctx);
        // B_{2n} = b_{2n} y^{2n}, odd levels vanish
        for (int n = 1; 2 * n <= nmax; ++n) {
            const Poly1& p = out.bpolys.polys[static_cast<std::size_t>(2 * n)];
            for (int k = 0; k < static_cast<int>(p.size()); ++k)
                if (k != 2 * n && !p[static_cast<std::size_t>(k)].is_zero())
                    fail(Errc::AlgorithmInvariantViolation, "doubly truncated level not a monomial");
            out.b2n.push_back(2 * n < static_cast<int>(p.size())
                                  ? p[static_cast<std::size_t>(2 * n)]
                                  : FieldElement(ctx.ring, 0));
        }
        for (std::size_t n = 1; n < out.bpolys.polys.size(); n += 2)
            if (!p1_is_zero(out.bpolys.polys[n]))
                fail(Errc::AlgorithmInvariantViolation, "odd doubly truncated level nonzero");
        return out;
    }
    if (which == TruncCase::LowerZero) {
        TruncatedData upper = compute_truncated(TruncCase::UpperZero, nmax, kmax_a);
        out.bpolys = upper.bpolys;
        for (auto& p : out.bpolys.polys)
            for (auto& c : p) c = symmetry_transform(c);
        for (auto& [m, v] : out.bpolys.constants) v = symmetry_transform(v);
        for (auto& f : upper.a_over_x2k) out.a_over_x2k.push_back(symmetry_transform(f));
        return out;
    }
    TrigContext ctx = TrigContext::truncated_upper();
    out.bpolys = compute_B_infty(std::max(nmax, kmax_a + 3), ctx);
    TrigCoeffGrid anchors = anchors_from_ledger(out.bpolys, kmax_a + 1);
    AInfExpansion a = compute_A_infty(kmax_a, ctx, anchors);
    for (int k = 0; k <= kmax_a; k += 2)
        out.a_over_x2k.push_back(a.gen[static_cast<std::size_t>(k)].shift(-k));
    // repackage the B table at the requested depth
    out.bpolys.polys.resize(static_cast<std::size_t>(nmax) + 1);
    return out;
}

} // namespace dp3
