#include "dp3/validate.hpp"

#include <algorithm>
#include <cmath>

namespace dp3 {

DecayReport validate_truncated_decay(const Dp3Params& prm, const PathSpec& path,
                                     const std::vector<int>& orders, int init_order) {
    DecayReport rep;
    rep.orders = orders;

    TruncatedData td = compute_truncated(TruncCase::BothZero, 2 * (init_order + 2));
    EvalBindings bind;
    bind.prm = prm;
    Cplx alpha = 2.0 * Cplx(0.0, 1.0) * std::sqrt(3.0) * prm.a;
    bind.values["alpha"] = alpha;

    // launch from the far end with the deep truncation
    Cplx tau1 = std::exp(Cplx(0.0, path.arg_tau)) * path.abs_tau_to;
    Cplx u0 = eval_doubly_truncated(td.b2n, init_order, tau1, bind);
    Cplx du0 = eval_doubly_truncated_d(td.b2n, init_order, tau1, bind);
    PathSpec inward = path;
    inward.abs_tau_to = path.abs_tau_from;
    NumericSolution sol = integrate_dp3(prm, tau1, u0, du0, inward, 1e-12);
    if (!sol.completed) fail(Errc::EvaluationFailure, "reference integration did not complete");

    // samples over the far third of the path
    double lo = path.abs_tau_from + 2.0 / 3.0 * (path.abs_tau_to - path.abs_tau_from);
    double hi = path.abs_tau_to;
    const int ns = std::max(8, path.samples);
    double th = bind.theta();

    for (int N : orders) {
        double emax = 0.0, tmax = 0.0;
        for (int i = 0; i < ns; ++i) {
            double at = lo + (hi - lo) * i / (ns - 1.0);
            Cplx tau = std::exp(Cplx(0.0, path.arg_tau)) * at;
            Cplx ref = sol.at_abs_tau(at).first;
            Cplx val = eval_doubly_truncated(td.b2n, N, tau, bind);
            emax = std::max(emax, std::abs(ref - val));
            // next nonzero retained term
            for (int m = N + 1; m <= static_cast<int>(td.b2n.size()); ++m) {
                Cplx bv = eval_field(td.b2n[static_cast<std::size_t>(m - 1)], bind);
                if (std::abs(bv) < 1e-300) continue;
                Cplx pref = static_cast<double>(prm.eps) *
                            std::pow(prm.eps * prm.b, 2.0 / 3.0) / 2.0 *
                            std::exp(std::log(tau) / 3.0);
                tmax = std::max(tmax, std::abs(pref * bv) * std::pow(th, -2.0 * m) *
                                          std::pow(at, -2.0 * m / 3.0));
                break;
            }
        }
        rep.err.push_back(emax);
        rep.next_term.push_back(tmax);
    }
    rep.monotone = true;
    for (std::size_t i = 1; i < rep.err.size(); ++i)
        if (rep.err[i] > rep.err[i - 1] * (1.0 + 1e-9)) rep.monotone = false;
    rep.within_factor = true;
    for (std::size_t i = 0; i < rep.err.size(); ++i)
        if (rep.err[i] > 10.0 * rep.next_term[i] || rep.err[i] < rep.next_term[i] / 10.0)
            rep.within_factor = false;
    return rep;
}

EllipticResidualReport validate_elliptic_residual(const BoutrouxBindings& bb, Cplx theta0,
                                                  double r_from, double r_to, int samples,
                                                  const EvalBindings& bind,
                                                  double pole_exclusion) {
    EllipticResidualReport rep;
    for (int i = 0; i < samples; ++i) {
        double fr = static_cast<double>(i) / (samples - 1);
        double r = r_from * std::pow(r_to / r_from, fr);
        bool excl = false;
        double res = elliptic_candidate_residual(bb, theta0, r, bind, pole_exclusion, &excl);
        rep.r.push_back(r);
        rep.residual.push_back(res);
        rep.excluded.push_back(excl);
    }
    // trend over included samples, by thirds
    std::vector<double> inc_r, inc_v;
    for (std::size_t i = 0; i < rep.r.size(); ++i)
        if (!rep.excluded[i]) {
            inc_r.push_back(rep.r[i]);
            inc_v.push_back(rep.residual[i]);
        }
    if (inc_v.size() >= 6) {
        auto median_of = [](std::vector<double> v) {
            std::sort(v.begin(), v.end());
            return v[v.size() / 2];
        };
        std::size_t third = inc_v.size() / 3;
        std::vector<double> a(inc_v.begin(), inc_v.begin() + third);
        std::vector<double> b(inc_v.begin() + third, inc_v.begin() + 2 * third);
        std::vector<double> c(inc_v.begin() + 2 * third, inc_v.end());
        double ma = median_of(a), mb = median_of(b), mc = median_of(c);
        rep.decreasing = ma > mb && mb > mc;
        rep.residual_at_end = inc_v.back();
        rep.below_threshold = inc_v.back() < 0.1;
    }
    return rep;
}

} // namespace dp3
