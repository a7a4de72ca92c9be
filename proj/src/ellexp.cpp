#include "dp3/ellexp.hpp"

#include <algorithm>

namespace dp3 {

namespace {
const char* kOut1 = "y"; // route 1 grading
const char* kIn1 = "x";
const char* kOut2 = "x"; // conjugate route grading
const char* kIn2 = "y";
} // namespace

RingPtr elliptic_ring() {
    std::vector<std::string> names = {"k2", "P", "p", "q", "s", "t", "mu"};
    for (int n = 1; n <= 16; ++n) names.push_back("c" + std::to_string(n));
    for (int n = 2; n <= 8; n += 2) names.push_back("q" + std::to_string(n));
    return PolyRing::make(names);
}

PowerRelation EllipticContext::rel_s() const {
    return {"s", 2, q.pow(3).scale(GR(8)) + FieldElement(ring, 1)};
}
PowerRelation EllipticContext::rel_t() const { return {"t", 3, FieldElement(ring, 2)}; }
PowerRelation EllipticContext::rel_P() const {
    FieldElement val = p * p * q.scale(GR(2, 3)) * (s - FieldElement(ring, 3)) /
                       (s - FieldElement(ring, 1));
    return {"P", 2, val};
}
PowerRelation EllipticContext::rel_mu() const {
    FieldElement val = -(q * (s - FieldElement(ring, 3)) * t * t).scale(GR(1, 6)) /
                       (s - FieldElement(ring, 1));
    return {"mu", 2, val};
}

FieldElement EllipticContext::kappa2_value() const {
    return (s - FieldElement(ring, 1)) * (s + FieldElement(ring, 3)) /
           ((s + FieldElement(ring, 1)) * (s - FieldElement(ring, 3)));
}

FieldElement EllipticContext::impose(const FieldElement& e) const {
    FieldElement x = e.substitute("k2", kappa2_value());
    return reduce_modulo(x, {rel_P(), rel_s(), rel_t(), rel_mu()});
}

// ---------------------------------------------------------------------------
// route 1: D = iP x^-2 y^-1 d/dy - (x/2 + iP x^-1 y^-2 G(y)) d/dx with
// G = (16 y + k2 (y-1)(5y-3)) / (4 (4y + k2 (y-1)^2))

namespace {

struct Ell1Algebra {
    const EllipticContext& ctx;
    int hi;
    BiSeries G; // outer-y series of the bracket

    Ell1Algebra(const EllipticContext& c, int hi_needed) : ctx(c), hi(hi_needed) {
        RingPtr ring = ctx.ring;
        auto clev = [&](const FieldElement& v) {
            return RationalFunction::from_const(kIn1, v);
        };
        BiSeries W(kOut1, kIn1, ring);
        W.set_level(0, clev(ctx.k2));
        W.set_level(1, clev(FieldElement(ring, 4) - ctx.k2.scale(GR(2))));
        W.set_level(2, clev(ctx.k2));
        BiSeries Winv = W.inverse(hi + 8);
        BiSeries N(kOut1, kIn1, ring);
        // 16 y + k2 (y-1)(5y-3) = 3 k2 + (16 - 8 k2) y + 5 k2 y^2
        N.set_level(0, clev(ctx.k2.scale(GR(3))));
        N.set_level(1, clev(FieldElement(ring, 16) - ctx.k2.scale(GR(8))));
        N.set_level(2, clev(ctx.k2.scale(GR(5))));
        G = (N * Winv).scale(FieldElement(ring, GR(1, 4)));
        Winv_ = Winv;
    }

    BiSeries Winv_;

    BiSeries D(const BiSeries& s) const {
        RingPtr ring = ctx.ring;
        FieldElement iP = ctx.iu() * ctx.P;
        RationalFunction xm2 = RationalFunction::from_const(kIn1, iP).shift(-2);
        BiSeries t1 = s.map_shift(-2, [&](int j, const RationalFunction& f) {
            return f.scale(FieldElement(ring, GR(j))) * xm2;
        });
        BiSeries t2 = s.map_shift(0, [&](int, const RationalFunction& f) {
            return (RationalFunction::variable(kIn1, ring) * f.derivative())
                .scale(FieldElement(ring, GR(-1, 2)));
        });
        RationalFunction xm1 = RationalFunction::from_const(kIn1, -iP).shift(-1);
        BiSeries dxs = s.map_shift(0, [&](int, const RationalFunction& f) { return f.derivative(); });
        BiSeries t3 = (dxs.shift_outer(-2).mul_inner(xm1)) * G;
        return t1 + t2 + t3;
    }

    BiSeries residual(const BiSeries& s) const {
        RingPtr ring = ctx.ring;
        BiSeries ds = D(s);
        BiSeries dds = D(ds);
        BiSeries s3 = s * s * s;
        BiSeries one = BiSeries::constant(kOut1, kIn1, FieldElement(ring, 1));
        RationalFunction xm4 =
            RationalFunction::from_const(kIn1, (ctx.p * ctx.p).scale(GR(4, 3))).shift(-4);
        return dds * s - ds * ds + ((s3 - one).shift_outer(-3) * Winv_).mul_inner(xm4);
    }
};

struct Ell1Probe {
    const Ell1Algebra& alg;
    BiSeries s, ds, dds, s2, s3m1;
    RationalFunction xm4;

    Ell1Probe(const Ell1Algebra& a, const BiSeries& known) : alg(a), s(known) {
        ds = alg.D(s);
        dds = alg.D(ds);
        s2 = s * s;
        BiSeries one = BiSeries::constant(kOut1, kIn1, FieldElement(alg.ctx.ring, 1));
        s3m1 = s2 * s - one;
        xm4 = RationalFunction::from_const(kIn1, (alg.ctx.p * alg.ctx.p).scale(GR(4, 3)))
                  .shift(-4);
    }

    RationalFunction residual_level(int L) const {
        RationalFunction v =
            BiSeries::mul_level(dds, s, L) - BiSeries::mul_level(ds, ds, L);
        return v + BiSeries::mul_level(s3m1, alg.Winv_, L + 3) * xm4;
    }

    RationalFunction column(int K, const RationalFunction& g, int L) const {
        BiSeries u = BiSeries::monomial(kOut1, kIn1, K, g);
        BiSeries du = alg.D(u);
        BiSeries ddu = alg.D(du);
        RationalFunction v =
            BiSeries::mul_level(ddu, s, L) + BiSeries::mul_level(dds, u, L) -
            BiSeries::mul_level(ds, du, L).scale(FieldElement(alg.ctx.ring, 2));
        BiSeries s2u = s2 * u;
        return v + BiSeries::mul_level(s2u, alg.Winv_, L + 3)
                       .scale(FieldElement(alg.ctx.ring, 3)) * xm4;
    }

    LinearODE2 level_ode(int K, int L) const {
        auto col = [&](const RationalFunction& g) { return column(K, g, L); };
        return ode_from_linearization(col, residual_level(L), kIn1, alg.ctx.ring);
    }
};

} // namespace

BiSeries ell1_pde_residual(const BiSeries& s, const EllipticContext& ctx) {
    Ell1Algebra alg(ctx, s.hi_known() >= BiSeries::kExact ? 16 : s.hi_known());
    return alg.residual(s);
}

EllExpansionA1 compute_A1_elliptic(int kmax, const EllipticContext& ctx) {
    RingPtr ring = ctx.ring;
    EllExpansionA1 out;
    out.ring = ring;

    Ell1Algebra alg(ctx, kmax + 2);

    BiSeries A(kOut1, kIn1, ring, 0);
    RationalFunction a0 = RationalFunction::from_const(kIn1, ctx.q);
    A.set_level(0, a0);
    out.gen.push_back(a0);
    if (!alg.residual(A).level(-4).is_zero())
        fail(Errc::AlgorithmInvariantViolation, "constant leading generator fails its level");

    for (int k = 1; k <= kmax; ++k) {
        A.set_hi_known(k);
        Ell1Probe probe(alg, A);
        LinearODE2 ode = probe.level_ode(k, k - 4);
        int N = (2 * (k - 1)) / 3;
        RationalAnsatz ans;
        ans.max_pole_order = 0;
        ans.max_degree = 2 * (N + 1);
        AnsatzFamily fam = solve_rational_ansatz(ode, ans);
        if (fam.empty)
            fail(Errc::AlgorithmInvariantViolation, "no rational solution at level " + std::to_string(k));
        RationalFunction gen = fam.particular;
        bool resonant_expected = (k % 3) != 1;
        if (resonant_expected) {
            if (fam.homogeneous.size() != 1)
                fail(Errc::AlgorithmInvariantViolation, "expected one free direction at level " +
                                                            std::to_string(k));
            std::string qname = "q" + std::to_string(2 * (N + 1));
            FieldElement qsym = FieldElement::param(ring, qname);
            FieldElement tp = gen.taylor(2 * N + 3).coeff(2 * (N + 1));
            FieldElement th = fam.homogeneous[0].taylor(2 * N + 3).coeff(2 * (N + 1));
            if (th.is_zero())
                fail(Errc::AlgorithmInvariantViolation, "free direction invisible at its slot");
            gen = gen + fam.homogeneous[0].scale((qsym - tp) / th);
            out.free_constants.push_back(qname);
        } else if (!fam.homogeneous.empty()) {
            fail(Errc::AlgorithmInvariantViolation,
                 "unexpected free direction at level " + std::to_string(k));
        }
        if (!gen.is_polynomial())
            fail(Errc::AlgorithmInvariantViolation, "level generator is not polynomial");
        // even function of x
        TaylorSeries ts = gen.taylor(2 * N + 3);
        for (int n = 1; n < static_cast<int>(ts.coeffs.size()); n += 2)
            if (!ts.coeff(n).is_zero())
                fail(Errc::AlgorithmInvariantViolation, "level generator has odd terms");
        out.gen.push_back(gen);
        A.set_level(k, gen);
    }
    return out;
}

bool verify_boutroux_ratios(const EllExpansionA1& a, const EllipticContext& ctx, int kmax) {
    FieldElement a1 = a.gen.at(1).laurent_coeff(0);
    for (int k = 2; k <= kmax; ++k) {
        FieldElement r = a.gen.at(static_cast<std::size_t>(k)).laurent_coeff(0) / a1 -
                         FieldElement(ctx.ring, GR(k));
        if (!ctx.impose(r).is_zero()) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// conjugate route: V = 4xy + k2 (y - x)^2, Z = k2 (y^2 - x^2)/(4V),
// D = [y/2 + iP/x (-1/2 + Z)] d/dy + [x/2 + iP/y (1/2 + Z)] d/dx

namespace {

struct Ell2Algebra {
    const EllipticContext& ctx;
    BiSeries Zs;    // Z as an outer-x series
    BiSeries Vinv;  // 1/V

    Ell2Algebra(const EllipticContext& c, int hi_needed) : ctx(c) {
        RingPtr ring = ctx.ring;
        RationalFunction y = RationalFunction::variable(kIn2, ring);
        BiSeries V(kOut2, kIn2, ring);
        V.set_level(0, (y * y).scale(ctx.k2));
        V.set_level(1, y.scale(FieldElement(ring, 4) - ctx.k2.scale(GR(2))));
        V.set_level(2, RationalFunction::from_const(kIn2, ctx.k2));
        Vinv = V.inverse(hi_needed + 8);
        BiSeries N(kOut2, kIn2, ring);
        N.set_level(0, (y * y).scale(ctx.k2.scale(GR(1, 4))));
        N.set_level(2, RationalFunction::from_const(kIn2, ctx.k2.scale(GR(-1, 4))));
        Zs = N * Vinv;
    }

    BiSeries D(const BiSeries& s) const {
        RingPtr ring = ctx.ring;
        FieldElement iP = ctx.iu() * ctx.P;
        RationalFunction y = RationalFunction::variable(kIn2, ring);
        BiSeries half = BiSeries::constant(kOut2, kIn2, FieldElement(ring, GR(1, 2)));

        // d/dy part
        BiSeries dys = s.d_inner();
        BiSeries termA = dys.mul_inner(y.scale(FieldElement(ring, GR(1, 2))));
        BiSeries bracket1 = Zs - half; // (-1/2 + Z)
        BiSeries termB = (dys.shift_outer(-1) * bracket1).scale(iP);

        // d/dx part
        BiSeries dxs = s.map_shift(-1, [&](int m, const RationalFunction& f) {
            return f.scale(FieldElement(ring, GR(m)));
        });
        BiSeries termC = dxs.shift_outer(1).scale(FieldElement(ring, GR(1, 2)));
        BiSeries bracket2 = Zs + half; // (1/2 + Z)
        BiSeries termD = (dxs * bracket2).mul_inner(y.inv()).scale(iP);
        return termA + termB + termC + termD;
    }

    BiSeries residual(const BiSeries& s) const {
        RingPtr ring = ctx.ring;
        BiSeries ds = D(s);
        BiSeries dds = D(ds);
        BiSeries s3 = s * s * s;
        BiSeries one = BiSeries::constant(kOut2, kIn2, FieldElement(ring, 1));
        RationalFunction ym1 =
            RationalFunction::from_const(kIn2, (ctx.p * ctx.p).scale(GR(4, 3))).shift(-1);
        return dds * s - ds * ds + ((s3 - one).shift_outer(-1) * Vinv).mul_inner(ym1);
    }
};

struct Ell2Probe {
    const Ell2Algebra& alg;
    BiSeries s, ds, dds, s2, s3m1;
    RationalFunction ym1;

    Ell2Probe(const Ell2Algebra& a, const BiSeries& known) : alg(a), s(known) {
        ds = alg.D(s);
        dds = alg.D(ds);
        s2 = s * s;
        BiSeries one = BiSeries::constant(kOut2, kIn2, FieldElement(alg.ctx.ring, 1));
        s3m1 = s2 * s - one;
        ym1 = RationalFunction::from_const(kIn2, (alg.ctx.p * alg.ctx.p).scale(GR(4, 3)))
                  .shift(-1);
    }

    RationalFunction residual_level(int L) const {
        RationalFunction v =
            BiSeries::mul_level(dds, s, L) - BiSeries::mul_level(ds, ds, L);
        return v + BiSeries::mul_level(s3m1, alg.Vinv, L + 1) * ym1;
    }

    RationalFunction column(int K, const RationalFunction& g, int L) const {
        BiSeries u = BiSeries::monomial(kOut2, kIn2, K, g);
        BiSeries du = alg.D(u);
        BiSeries ddu = alg.D(du);
        RationalFunction v =
            BiSeries::mul_level(ddu, s, L) + BiSeries::mul_level(dds, u, L) -
            BiSeries::mul_level(ds, du, L).scale(FieldElement(alg.ctx.ring, 2));
        BiSeries s2u = s2 * u;
        return v + BiSeries::mul_level(s2u, alg.Vinv, L + 1)
                       .scale(FieldElement(alg.ctx.ring, 3)) * ym1;
    }

    LinearODE2 level_ode(int K, int L) const {
        auto col = [&](const RationalFunction& g) { return column(K, g, L); };
        return ode_from_linearization(col, residual_level(L), kIn2, alg.ctx.ring);
    }
};

} // namespace

BiSeries ell2_pde_residual(const BiSeries& s, const EllipticContext& ctx) {
    Ell2Algebra alg(ctx, s.hi_known() >= BiSeries::kExact ? 16 : s.hi_known());
    return alg.residual(s);
}

EllExpansionB2 compute_B2_elliptic(int kmax, const EllipticContext& ctx) {
    RingPtr ring = ctx.ring;
    EllExpansionB2 out;
    out.ring = ring;

    Ell2Algebra alg(ctx, kmax + 2);

    BiSeries B(kOut2, kIn2, ring, 0);
    RationalFunction b0 = RationalFunction::from_const(kIn2, ctx.q);
    B.set_level(0, b0);
    out.gen.push_back(b0);
    if (!alg.residual(B).level(-2).is_zero())
        fail(Errc::AlgorithmInvariantViolation, "constant leading generator fails its level");

    Poly1 ypole = {FieldElement(ring, 0), FieldElement(ring, 1)};
    for (int k = 1; k <= kmax; ++k) {
        B.set_hi_known(k);
        Ell2Probe probe(alg, B);
        LinearODE2 ode = probe.level_ode(k, k - 2);
        RationalAnsatz ans;
        ans.pole = ypole;
        ans.max_pole_order = k;
        ans.max_degree = 4 * k + 2;
        AnsatzFamily fam = solve_rational_ansatz(ode, ans);
        if (fam.empty)
            fail(Errc::AlgorithmInvariantViolation, "no rational solution at level " + std::to_string(k));
        if (fam.homogeneous.size() != 2)
            fail(Errc::AlgorithmInvariantViolation,
                 "expected the two-parameter family at level " + std::to_string(k));
        // pin the top coefficients to the normalization constants
        FieldElement c_hi = ctx.cpar(2 * k), c_lo = ctx.cpar(2 * k - 1);
        auto coeff_at = [&](const RationalFunction& f, int laurent_pow) {
            return f.laurent_coeff(laurent_pow);
        };
        FieldElement p_hi = coeff_at(fam.particular, 3 * k), p_lo = coeff_at(fam.particular, 3 * k - 2);
        FieldElement h11 = coeff_at(fam.homogeneous[0], 3 * k),
                     h12 = coeff_at(fam.homogeneous[1], 3 * k);
        FieldElement h21 = coeff_at(fam.homogeneous[0], 3 * k - 2),
                     h22 = coeff_at(fam.homogeneous[1], 3 * k - 2);
        FieldElement det = det2x2(h11, h12, h21, h22);
        if (det.is_zero())
            fail(Errc::AlgorithmInvariantViolation, "degenerate normalization at level " +
                                                        std::to_string(k));
        FieldElement u = ((c_hi - p_hi) * h22 - (c_lo - p_lo) * h12) / det;
        FieldElement v = (-(c_hi - p_hi) * h21 + (c_lo - p_lo) * h11) / det;
        RationalFunction gen = fam.particular + fam.homogeneous[0].scale(u) +
                               fam.homogeneous[1].scale(v);
        // support check: only powers y^{2m-k}, 0 <= m <= 2k
        auto lc = gen.laurent(-k - 2, 3 * k + 2);
        for (auto& [pw, val] : lc) {
            bool ok = pw >= -k && pw <= 3 * k && ((pw + k) % 2 == 0);
            if (!ok && !val.is_zero())
                fail(Errc::AlgorithmInvariantViolation, "conjugate level violates its support");
        }
        out.gen.push_back(gen);
        B.set_level(k, gen);
    }
    return out;
}

EllExpansionB2 mirror_family(const EllExpansionB2& b) {
    EllExpansionB2 out;
    out.ring = b.ring;
    FieldElement mP = -FieldElement::param(b.ring, "P");
    for (auto& g : b.gen) out.gen.push_back(g.substitute_param("P", mP));
    return out;
}

// ---------------------------------------------------------------------------

BoutrouxBindings solve_boutroux_from_q(std::complex<double> q, int s_branch, int P_branch,
                                       double phi0) {
    BoutrouxBindings out;
    out.q = q;
    std::complex<double> s = std::sqrt(8.0 * q * q * q + 1.0);
    if (s_branch < 0) s = -s;
    out.s = s;
    out.p = std::exp(std::complex<double>(0.0, 2.0 * phi0 / 3.0));
    std::complex<double> q3 = q * q * q;
    if (std::abs(q3 - 1.0) < 1e-12 || std::abs(s - 1.0) < 1e-12 || std::abs(s + 1.0) < 1e-12 ||
        std::abs(s - 3.0) < 1e-12 || std::abs(s + 3.0) < 1e-12)
        out.degenerate = true;
    out.kappa2 = (s - 1.0) * (s + 3.0) / ((s + 1.0) * (s - 3.0));
    std::complex<double> P2 = out.p * out.p * (2.0 * q / 3.0) * (s - 3.0) / (s - 1.0);
    out.P = std::sqrt(P2);
    if (P_branch < 0) out.P = -out.P;
    return out;
}

std::vector<BoutrouxBindings> solve_boutroux_from_Aphi(std::complex<double> Aphi, int s_branch,
                                                       int P_branch, double phi0) {
    // solve 4 z^3 - Aphi z^2 + 1 = 0, q = 2^(1/3) z
    std::vector<BoutrouxBindings> out;
    // depressed cubic via Newton from three spread starting points, then dedup
    auto f = [&](std::complex<double> z) { return 4.0 * z * z * z - Aphi * z * z + 1.0; };
    auto fp = [&](std::complex<double> z) { return 12.0 * z * z - 2.0 * Aphi * z; };
    std::vector<std::complex<double>> roots;
    for (int k = 0; k < 24 && roots.size() < 3; ++k) {
        std::complex<double> z = std::polar(0.3 + 0.45 * (k % 5), 0.25 + 2.1 * k);
        for (int it = 0; it < 80; ++it) {
            std::complex<double> d = fp(z);
            if (std::abs(d) < 1e-14) break;
            std::complex<double> step = f(z) / d;
            z -= step;
            if (std::abs(step) < 1e-15) break;
        }
        if (std::abs(f(z)) > 1e-10) continue;
        bool dup = false;
        for (auto& r : roots)
            if (std::abs(r - z) < 1e-8) dup = true;
        if (!dup) roots.push_back(z);
    }
    const double cbrt2 = std::cbrt(2.0);
    for (auto& z : roots) out.push_back(solve_boutroux_from_q(cbrt2 * z, s_branch, P_branch, phi0));
    return out;
}

WeierstrassData weierstrass_bridge(const EllipticContext& ctx) {
    RingPtr ring = ctx.ring;
    FieldElement mu = FieldElement::param(ring, "mu");
    FieldElement two(ring, 2), one(ring, 1);

    WeierstrassData w;
    w.e1 = (two - ctx.k2) * mu * mu;
    w.e2 = (ctx.k2.scale(GR(2)) - one) * mu * mu;
    w.e3 = -(ctx.k2 + one) * mu * mu;
    w.mu2 = ctx.impose(mu * mu);
    FieldElement g2 = -(w.e1 * w.e2 + w.e1 * w.e3 + w.e2 * w.e3).scale(GR(4));
    FieldElement g3 = (w.e1 * w.e2 * w.e3).scale(GR(4));
    w.g2 = ctx.impose(g2);
    w.g3 = ctx.impose(g3);
    w.Aphi = ctx.impose(ctx.t * ctx.t * (ctx.q.pow(3).scale(GR(2)) + one) / (ctx.q * ctx.q));
    w.phase_relation = "vartheta0 = -2*sqrt(3)*i*mu*x0p";
    return w;
}

FourierCorrection fourier_correction(int kmax, const EllipticContext& ctx) {
    EllExpansionB2 b = compute_B2_elliptic(kmax, ctx);
    FourierCorrection out;
    for (int k = 1; k <= kmax; ++k) {
        FieldElement raw = b.gen[static_cast<std::size_t>(k)].laurent_coeff(2 - k);
        FieldElement val = ctx.impose(ctx.p * raw);
        out.coeff.push_back(val);
        FieldElement at0 = val.substitute("c1", FieldElement(ctx.ring, 0));
        FieldElement at1 = val.substitute("c1", FieldElement(ctx.ring, 1));
        out.c1_part.push_back(ctx.impose(at1 - at0));
        if (k >= 2) {
            // unfold the c1-free part to the listed polynomial form
            FieldElement c1free = at0;
            FieldElement denom = (ctx.s + FieldElement(ctx.ring, 3)).pow(k - 2) *
                                 (ctx.s - FieldElement(ctx.ring, 1)).pow(k - 2);
            mpz_class fact = 1;
            for (int j = 2; j <= 2 * k - 1; ++j) fact *= j;
            FieldElement scale =
                ctx.p / (FieldElement(ctx.ring, GR::i()).scale(GR(-4)) * ctx.P);
            FieldElement qv = ctx.impose(c1free * denom * scale *
                                         FieldElement(ctx.ring, GR(mpq_class(fact), mpq_class(0))));
            out.Q.push_back(unfold_s_polynomial(qv, 2 * k - 4, ctx));
        }
    }
    return out;
}

ParamPoly unfold_s_polynomial(const FieldElement& v, int maxdeg, const EllipticContext& ctx) {
    RingPtr ring = ctx.ring;
    FieldElement red = reduce_modulo(v, {ctx.rel_s()});
    if (!red.den().is_constant())
        fail(Errc::AlgorithmInvariantViolation, "element is not polynomial after reduction");
    ParamPoly num = red.num().scale(red.den().constant_value().inv());
    int sv = ring->index_checked("s");
    int qv = ring->index_checked("q");
    auto sparts = num.coeffs_in(sv);
    sparts.resize(2, ParamPoly(ring));
    ParamPoly result(ring);
    ParamPoly sq = (FieldElement::param(ring, "q").pow(3).scale(GR(8)) + FieldElement(ring, 1)).num();
    for (int parity = 0; parity < 2; ++parity) {
        ParamPoly rem = sparts[static_cast<std::size_t>(parity)];
        // descending q-degree: lambda_j (8q^3+1)^j contributes q^{3j}
        for (int j = (maxdeg - parity) / 2; j >= 0; --j) {
            int qdeg = rem.degree_in(qv);
            if (qdeg < 0) break;
            if (qdeg % 3 != 0)
                fail(Errc::AlgorithmInvariantViolation, "unfolding stuck at fractional degree");
            int jj = qdeg / 3;
            if (jj > j) fail(Errc::AlgorithmInvariantViolation, "unfolding overflow");
            // coefficient of q^{3jj}
            auto qparts = rem.coeffs_in(qv);
            ParamPoly lead = qparts[static_cast<std::size_t>(qdeg)];
            if (!lead.is_constant())
                fail(Errc::AlgorithmInvariantViolation, "unfolding coefficient not scalar");
            GR p8(1);
            for (int e8 = 0; e8 < jj; ++e8) p8 *= GR(8);
            GR lambda = lead.constant_value() / p8;
            ParamPoly term = sq.pow(static_cast<unsigned>(jj)).scale(lambda);
            rem -= term;
            Expvec e(ring->size(), 0);
            e[static_cast<std::size_t>(sv)] = static_cast<std::uint16_t>(2 * jj + parity);
            result.add_term(e, lambda);
        }
        if (!rem.is_zero())
            fail(Errc::AlgorithmInvariantViolation, "element is not a polynomial in s");
    }
    return result;
}

} // namespace dp3
