#include "dp3/evalseries.hpp"

#include <cmath>

namespace dp3 {

namespace {

// compensated (Kahan) accumulation for the acceptance-grade sums
struct Comp {
    Cplx s{0.0, 0.0}, c{0.0, 0.0};
    void add(Cplx v) {
        Cplx y = v - c;
        Cplx t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

Cplx cpow(Cplx base, double expo) { return std::exp(expo * std::log(base)); }

} // namespace

double EvalBindings::theta() const {
    double eb = prm.eps * prm.b;
    if (eb <= 0) fail(Errc::EvaluationFailure, "theta requires eps*b > 0");
    return std::pow(3.0, 0.75) * std::pow(eb, 1.0 / 6.0);
}

Cplx EvalBindings::value(const std::string& name) const {
    auto it = values.find(name);
    if (it == values.end()) fail(Errc::MissingBinding, "parameter '" + name + "' unbound");
    return it->second;
}

Cplx eval_field(const FieldElement& e, const EvalBindings& bind) {
    std::vector<Cplx> vals;
    vals.reserve(e.ring()->size());
    for (auto& n : e.ring()->names()) {
        auto it = bind.values.find(n);
        vals.push_back(it == bind.values.end() ? Cplx(0.0, 0.0) : it->second);
    }
    // unbound parameters are only legal if unused
    for (std::size_t v = 0; v < e.ring()->size(); ++v) {
        if (bind.values.count(e.ring()->names()[v])) continue;
        if (e.num().uses_var(static_cast<int>(v)) || e.den().uses_var(static_cast<int>(v)))
            fail(Errc::MissingBinding, "parameter '" + e.ring()->names()[v] + "' unbound");
    }
    return e.eval(vals);
}

Cplx eval_doubly_truncated(const std::vector<FieldElement>& b2n, int N, Cplx tau,
                           const EvalBindings& bind) {
    double th = bind.theta();
    Cplx pref = static_cast<double>(bind.prm.eps) *
                std::pow(bind.prm.eps * bind.prm.b, 2.0 / 3.0) / 2.0 * cpow(tau, 1.0 / 3.0);
    Comp sum;
    sum.add(Cplx(1.0, 0.0));
    for (int n = 1; n <= N && n <= static_cast<int>(b2n.size()); ++n) {
        Cplx bv = eval_field(b2n[static_cast<std::size_t>(n - 1)], bind);
        sum.add(bv * std::pow(th, -2.0 * n) * cpow(tau, -2.0 * n / 3.0));
    }
    return pref * sum.s;
}

Cplx eval_doubly_truncated_d(const std::vector<FieldElement>& b2n, int N, Cplx tau,
                             const EvalBindings& bind) {
    double th = bind.theta();
    double c0 = bind.prm.eps * std::pow(bind.prm.eps * bind.prm.b, 2.0 / 3.0) / 2.0;
    // d/dtau [ c0 tau^(1/3) (1 + sum b tau^(-2n/3)) ]
    Comp sum;
    sum.add(Cplx(1.0 / 3.0, 0.0) * cpow(tau, -2.0 / 3.0));
    for (int n = 1; n <= N && n <= static_cast<int>(b2n.size()); ++n) {
        Cplx bv = eval_field(b2n[static_cast<std::size_t>(n - 1)], bind);
        double expo = 1.0 / 3.0 - 2.0 * n / 3.0;
        sum.add(bv * std::pow(th, -2.0 * n) * expo * cpow(tau, expo - 1.0));
    }
    return c0 * sum.s;
}

namespace {

struct TrigVars {
    Cplx x, y;
};

TrigVars trig_vars(TrigMap map, Cplx tau, const EvalBindings& bind) {
    double th = bind.theta();
    Cplx kap = bind.value("kappa");
    Cplx logtau = std::log(tau);
    Cplx theta_big = th * th * cpow(tau, 2.0 / 3.0);
    Cplx w = std::exp(2.0 / 3.0 * kap * logtau) * std::exp(Cplx(0.0, 1.0) * theta_big);
    TrigVars v;
    if (map == TrigMap::Plain) {
        v.x = cpow(tau, -1.0 / 3.0) / (th * w);
        v.y = w;
    } else {
        v.x = cpow(tau, -1.0 / 3.0) * w / th;
        v.y = 1.0 / w;
    }
    return v;
}

Cplx trig_prefactor(Cplx tau, const EvalBindings& bind) {
    return static_cast<double>(bind.prm.eps) *
           std::pow(bind.prm.eps * bind.prm.b, 2.0 / 3.0) / 2.0 * cpow(tau, 1.0 / 3.0);
}

Cplx eval_rf(const RationalFunction& f, const EvalBindings& bind, Cplx at) {
    std::vector<Cplx> vals;
    for (auto& n : f.ring()->names()) {
        auto it = bind.values.find(n);
        vals.push_back(it == bind.values.end() ? Cplx(0.0, 0.0) : it->second);
    }
    return f.eval_complex(vals, at);
}

} // namespace

Cplx eval_trig_A(const AInfExpansion& a, int kmax, TrigMap map, Cplx tau,
                 const EvalBindings& bind) {
    TrigVars v = trig_vars(map, tau, bind);
    Comp sum;
    Cplx yk = 1.0;
    for (int k = 0; k <= kmax && k < static_cast<int>(a.gen.size()); ++k) {
        const RationalFunction& g = map == TrigMap::Plain
                                        ? a.gen[static_cast<std::size_t>(k)]
                                        : symmetry_transform(a.gen[static_cast<std::size_t>(k)]);
        sum.add(yk * eval_rf(g, bind, v.x));
        yk *= v.y;
    }
    return trig_prefactor(tau, bind) * sum.s;
}

Cplx eval_trig_B(const BInfPolynomials& b, int nmax, TrigMap map, Cplx tau,
                 const EvalBindings& bind) {
    TrigVars v = trig_vars(map, tau, bind);
    Comp sum;
    Cplx xk = 1.0;
    for (int n = 0; n <= nmax && n < static_cast<int>(b.polys.size()); ++n) {
        Cplx val = 0.0;
        Cplx yp = 1.0;
        for (auto& c : b.polys[static_cast<std::size_t>(n)]) {
            FieldElement cc = map == TrigMap::Plain ? c : symmetry_transform(c);
            val += eval_field(cc, bind) * yp;
            yp *= v.y;
        }
        sum.add(xk * val);
        xk *= v.x;
    }
    return trig_prefactor(tau, bind) * sum.s;
}

Cplx eval_trig_uniform(const AInfExpansion& a, const BInfPolynomials& b, int N, Cplx tau,
                       const EvalBindings& bind) {
    Cplx plain = eval_trig_A(a, N, TrigMap::Plain, tau, bind);
    Cplx tilde = eval_trig_A(a, N, TrigMap::Tilde, tau, bind);
    Cplx conj = eval_trig_B(b, N, TrigMap::Plain, tau, bind);
    return plain + tilde - conj;
}

Cplx eval_log(const LogExpansion& e, int kmax, Cplx tau, const EvalBindings& bind) {
    Cplx logtau = std::log(tau);
    Cplx x = tau * tau * logtau;
    Cplx y = 1.0 / logtau;
    Cplx outer = e.kind == 'A' ? y : x;
    Cplx inner = e.kind == 'A' ? x : y;
    Comp sum;
    Cplx ok = 1.0;
    for (int k = 0; k <= kmax && k < static_cast<int>(e.gen.size()); ++k) {
        sum.add(ok * eval_rf(e.gen[static_cast<std::size_t>(k)], bind, inner));
        ok *= outer;
    }
    return sum.s / tau;
}

EllipticLeading elliptic_leading_term(const BoutrouxBindings& bb, Cplx theta0, double r,
                                      const EvalBindings& bind, double pole_exclusion) {
    double th = bind.theta();
    Cplx vartheta = th * th * bb.P * std::pow(r, 2.0 / 3.0) + theta0;
    JacobiValue J = jacobi_eval(vartheta / 2.0, bb.kappa2);
    EllipticLeading out;
    out.pole_near = std::abs(J.sn) < pole_exclusion;
    Cplx A = (bb.s - 3.0) / (bb.s - 1.0);
    out.sn_form = bb.q - A * bb.q / (J.sn * J.sn);
    Cplx z = 1.0 / (J.E * J.E); // x/y = exp(-2 i am)
    Cplx c = 8.0 * bb.p * bb.p * (bb.q * bb.q * bb.q - 1.0) /
             (3.0 * bb.kappa2 * bb.P * bb.P * bb.q);
    out.ratio_form = bb.q + c * z / ((1.0 - z) * (1.0 - z));
    return out;
}

double elliptic_candidate_residual(const BoutrouxBindings& bb, Cplx theta0, double r,
                                   const EvalBindings& bind, double pole_exclusion,
                                   bool* excluded) {
    double th = bind.theta();
    double phi0 = std::arg(bb.p) * 1.5; // p = exp(2 i phi0 / 3)
    Cplx ray = std::exp(Cplx(0.0, phi0));
    Cplx tau = ray * r;

    Cplx z = (th * th * bb.P * std::pow(r, 2.0 / 3.0) + theta0) / 2.0;
    Cplx zp = th * th * bb.P / (3.0 * std::pow(r, 1.0 / 3.0));
    Cplx zpp = -th * th * bb.P / (9.0 * std::pow(r, 4.0 / 3.0));
    JacobiValue J = jacobi_eval(z, bb.kappa2);
    if (excluded) *excluded = std::abs(J.sn) < pole_exclusion;

    Cplx A = (bb.s - 3.0) / (bb.s - 1.0);
    Cplx sn = J.sn, cn = J.cn, dn = J.dn;
    Cplx G = 1.0 / (sn * sn);
    Cplx cd = cn * dn;
    Cplx Gz = -2.0 * cd / (sn * sn * sn);
    Cplx cdz = -sn * (dn * dn + bb.kappa2 * cn * cn);
    Cplx Gzz = 6.0 * cd * cd / (sn * sn * sn * sn) - 2.0 * cdz / (sn * sn * sn);
    Cplx F = bb.q * (1.0 - A * G);
    Cplx Fr = -bb.q * A * Gz * zp;
    Cplx Frr = -bb.q * A * (Gzz * zp * zp + Gz * zpp);

    double c0 = bind.prm.eps * std::pow(bind.prm.eps * bind.prm.b, 2.0 / 3.0) / 2.0;
    Cplx e13 = cpow(ray, 1.0 / 3.0);
    double r13 = std::pow(r, 1.0 / 3.0);
    Cplx u = c0 * e13 * r13 * F;
    Cplx ur = c0 * e13 * (F / (3.0 * std::pow(r, 2.0 / 3.0)) + r13 * Fr);
    Cplx urr = c0 * e13 * (-2.0 * F / (9.0 * std::pow(r, 5.0 / 3.0)) +
                           2.0 * Fr / (3.0 * std::pow(r, 2.0 / 3.0)) + r13 * Frr);
    Cplx utau = ur / ray;
    Cplx utautau = urr / (ray * ray);

    Cplx rhs = dp3_rhs(bind.prm, tau, u, utau);
    double scale = std::max({std::abs(utautau), std::abs(utau * utau / u),
                             std::abs(utau / tau), std::abs(8.0 * u * u / tau),
                             std::abs(bind.prm.b * bind.prm.b / u)});
    return std::abs(utautau - rhs) / scale;
}

} // namespace dp3
