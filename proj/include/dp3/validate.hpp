#ifndef DP3_VALIDATE_HPP
#define DP3_VALIDATE_HPP

#include "dp3/evalseries.hpp"

namespace dp3 {

/// Error-decay report for the truncated series against the integrator.
struct DecayReport {
    std::vector<int> orders;
    std::vector<double> err;       // max |u_num - S_N| over the far third
    std::vector<double> next_term; // magnitude of the next nonzero retained term
    bool monotone = false;
    bool within_factor = false; // err within a factor 10 of next_term
};

DecayReport validate_truncated_decay(const Dp3Params& prm, const PathSpec& path,
                                     const std::vector<int>& orders, int init_order);

/// Residual decay of the elliptic leading-term candidate along a ray.
struct EllipticResidualReport {
    std::vector<double> r;
    std::vector<double> residual;
    std::vector<bool> excluded;
    double residual_at_end = 0.0;
    bool decreasing = false;
    bool below_threshold = false; // < 0.1 at the far end
};

EllipticResidualReport validate_elliptic_residual(const BoutrouxBindings& bb, Cplx theta0,
                                                  double r_from, double r_to, int samples,
                                                  const EvalBindings& bind,
                                                  double pole_exclusion);

} // namespace dp3

#endif
