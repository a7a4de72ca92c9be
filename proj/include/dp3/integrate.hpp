#ifndef DP3_INTEGRATE_HPP
#define DP3_INTEGRATE_HPP

#include <functional>
#include <string>
#include <vector>

#include "dp3/jacobi.hpp"

namespace dp3 {

/// Ray/path description for numeric runs: tau = exp(i arg) * sigma^(3/2)
/// with the real parameter sigma = |tau|^(2/3) (linearizes the oscillation
/// scale at infinity).
struct PathSpec {
    double arg_tau = 0.0;
    double abs_tau_from = 1.0;
    double abs_tau_to = 100.0;
    int samples = 64;
    double pole_exclusion = 0.05; // |sn| threshold in the elliptic runs
};

struct Dp3Params {
    Cplx a{0.0, 0.0};
    double b = 1.0;
    int eps = 1;
};

Cplx dp3_rhs(const Dp3Params& prm, Cplx tau, Cplx u, Cplx du);

struct NumericSolution {
    std::vector<Cplx> tau;
    std::vector<Cplx> u;
    std::vector<Cplx> du;
    std::vector<double> err_est;
    std::vector<std::string> events;
    bool completed = true;

    // dense-output segments
    struct Segment {
        double s0, h;
        Cplx y0[2];
        Cplx rcont[2][5];
    };
    std::vector<Segment> segments;
    double arg_tau = 0.0;

    /// Dense-output evaluation of (u, u') at |tau| inside the covered range.
    std::pair<Cplx, Cplx> at_abs_tau(double abs_tau) const;
};

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) along the ray; halts
/// with a PoleProximity event when |u| leaves [1e-8, 1e8].
NumericSolution integrate_dp3(const Dp3Params& prm, Cplx tau0, Cplx u0, Cplx du0,
                              const PathSpec& path, double rtol = 1e-12);

/// Fixed-step variant used by the order-verification test.
NumericSolution integrate_dp3_fixed(const Dp3Params& prm, Cplx tau0, Cplx u0, Cplx du0,
                                    const PathSpec& path, int steps);

} // namespace dp3

#endif
