#include "dp3/integrate.hpp"

#include <algorithm>
#include <cmath>

namespace dp3 {

Cplx dp3_rhs(const Dp3Params& prm, Cplx tau, Cplx u, Cplx du) {
    if (u == Cplx(0.0, 0.0)) fail(Errc::EvaluationFailure, "state hit u = 0");
    double eps = prm.eps;
    return du * du / u - du / tau +
           (-8.0 * eps * u * u + 2.0 * prm.a * prm.b) / tau + prm.b * prm.b / u;
}

namespace {

// Dormand-Prince 5(4)
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

struct State {
    Cplx y[2];
};

NumericSolution run(const Dp3Params& prm, Cplx tau0, Cplx u0, Cplx du0, const PathSpec& path,
                    double rtol, int fixed_steps) {
    NumericSolution sol;
    sol.arg_tau = path.arg_tau;
    const Cplx ray = std::exp(Cplx(0.0, path.arg_tau));

    auto tau_of = [&](double s) { return ray * std::pow(s, 1.5); };
    auto dtau_of = [&](double s) { return ray * 1.5 * std::sqrt(s); };

    double s0 = std::pow(std::abs(tau0), 2.0 / 3.0);
    double s1 = std::pow(path.abs_tau_to, 2.0 / 3.0);
    // direction from tau0 towards abs_tau_to
    double dir = (s1 >= s0) ? 1.0 : -1.0;

    auto f = [&](double s, const State& y, State& out) {
        Cplx tp = dtau_of(s);
        out.y[0] = y.y[1] * tp;
        out.y[1] = dp3_rhs(prm, tau_of(s), y.y[0], y.y[1]) * tp;
    };

    State y{{u0, du0}};
    double s = s0;
    double h = fixed_steps > 0 ? (s1 - s0) / fixed_steps
                               : dir * std::min(0.01 * std::abs(s1 - s0) + 1e-8, 0.1);
    const double atol = 1e-14;
    const double hmin = 1e-13 * (std::abs(s1 - s0) + 1.0);

    sol.tau.push_back(tau_of(s));
    sol.u.push_back(y.y[0]);
    sol.du.push_back(y.y[1]);
    sol.err_est.push_back(0.0);

    State k1, k2, k3, k4, k5, k6, k7, tmp, ynew;
    f(s, y, k1);
    int iter_cap = fixed_steps > 0 ? fixed_steps + 2 : 2000000;
    for (int it = 0; it < iter_cap; ++it) {
        if ((dir > 0 && s >= s1 - 1e-14) || (dir < 0 && s <= s1 + 1e-14)) break;
        if (fixed_steps == 0) {
            if ((dir > 0 && s + h > s1) || (dir < 0 && s + h < s1)) h = s1 - s;
        }
        auto stage = [&](State& out, double frac, std::initializer_list<std::pair<const State*, double>> terms) {
            for (int i = 0; i < 2; ++i) {
                Cplx acc = y.y[i];
                for (auto& [kp, w] : terms) acc += h * w * kp->y[i];
                out.y[i] = acc;
            }
            (void)frac;
        };
        stage(tmp, c2, {{&k1, a21}});
        f(s + c2 * h, tmp, k2);
        stage(tmp, c3, {{&k1, a31}, {&k2, a32}});
        f(s + c3 * h, tmp, k3);
        stage(tmp, c4, {{&k1, a41}, {&k2, a42}, {&k3, a43}});
        f(s + c4 * h, tmp, k4);
        stage(tmp, c5, {{&k1, a51}, {&k2, a52}, {&k3, a53}, {&k4, a54}});
        f(s + c5 * h, tmp, k5);
        stage(tmp, 1.0, {{&k1, a61}, {&k2, a62}, {&k3, a63}, {&k4, a64}, {&k5, a65}});
        f(s + h, tmp, k6);
        for (int i = 0; i < 2; ++i)
            ynew.y[i] = y.y[i] + h * (b1 * k1.y[i] + b3 * k3.y[i] + b4 * k4.y[i] + b5 * k5.y[i] +
                                      b6 * k6.y[i]);
        f(s + h, ynew, k7);

        double err = 0.0;
        for (int i = 0; i < 2; ++i) {
            Cplx ei = h * (e1 * k1.y[i] + e3 * k3.y[i] + e4 * k4.y[i] + e5 * k5.y[i] +
                           e6 * k6.y[i] + e7 * k7.y[i]);
            double sc = atol + rtol * std::max(std::abs(y.y[i]), std::abs(ynew.y[i]));
            double r = std::abs(ei) / sc;
            err += r * r;
        }
        err = std::sqrt(err / 2.0);

        bool accept = fixed_steps > 0 || err <= 1.0;
        if (accept) {
            NumericSolution::Segment seg;
            seg.s0 = s;
            seg.h = h;
            for (int i = 0; i < 2; ++i) {
                Cplx ydiff = ynew.y[i] - y.y[i];
                Cplx bspl = h * k1.y[i] - ydiff;
                seg.y0[i] = y.y[i];
                seg.rcont[i][0] = y.y[i];
                seg.rcont[i][1] = ydiff;
                seg.rcont[i][2] = bspl;
                seg.rcont[i][3] = ydiff - h * k7.y[i] - bspl;
                seg.rcont[i][4] = h * (d1 * k1.y[i] + d3 * k3.y[i] + d4 * k4.y[i] +
                                       d5 * k5.y[i] + d6 * k6.y[i] + d7 * k7.y[i]);
            }
            sol.segments.push_back(seg);
            s += h;
            y = ynew;
            k1 = k7; // first-same-as-last
            sol.tau.push_back(tau_of(s));
            sol.u.push_back(y.y[0]);
            sol.du.push_back(y.y[1]);
            sol.err_est.push_back(err);
            double au = std::abs(y.y[0]);
            if (au < 1e-8 || au > 1e8) {
                sol.events.push_back("PoleProximity at |tau|=" +
                                     std::to_string(std::abs(tau_of(s))));
                sol.completed = false;
                return sol;
            }
        }
        if (fixed_steps == 0) {
            double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
            fac = std::clamp(fac, 0.2, 5.0);
            h *= fac;
            if (std::abs(h) < hmin) {
                sol.events.push_back("StiffnessFailure at s=" + std::to_string(s));
                sol.completed = false;
                fail(Errc::StiffnessFailure, "step size collapsed at |tau|=" +
                                                 std::to_string(std::abs(tau_of(s))));
            }
        }
    }
    return sol;
}

} // namespace

std::pair<Cplx, Cplx> NumericSolution::at_abs_tau(double abs_tau) const {
    double s = std::pow(abs_tau, 2.0 / 3.0);
    for (auto& seg : segments) {
        double lo = std::min(seg.s0, seg.s0 + seg.h), hi = std::max(seg.s0, seg.s0 + seg.h);
        if (s < lo - 1e-12 || s > hi + 1e-12) continue;
        double th = (s - seg.s0) / seg.h;
        double th1 = 1.0 - th;
        Cplx out[2];
        for (int i = 0; i < 2; ++i) {
            out[i] = seg.rcont[i][0] +
                     th * (seg.rcont[i][1] +
                           th1 * (seg.rcont[i][2] + th * (seg.rcont[i][3] + th1 * seg.rcont[i][4])));
        }
        return {out[0], out[1]};
    }
    fail(Errc::InvalidIndex, "dense output requested outside the covered range");
}

NumericSolution integrate_dp3(const Dp3Params& prm, Cplx tau0, Cplx u0, Cplx du0,
                              const PathSpec& path, double rtol) {
    if (u0 == Cplx(0.0, 0.0)) fail(Errc::EvaluationFailure, "initial value u0 = 0");
    return run(prm, tau0, u0, du0, path, rtol, 0);
}

NumericSolution integrate_dp3_fixed(const Dp3Params& prm, Cplx tau0, Cplx u0, Cplx du0,
                                    const PathSpec& path, int steps) {
    return run(prm, tau0, u0, du0, path, 1e-12, steps);
}

} // namespace dp3
