#ifndef DP3_ORACLE_HPP
#define DP3_ORACLE_HPP

#include "dp3/biseries.hpp"
#include "dp3/grids.hpp"

namespace dp3 {

/// Direct-substitution oracle: the series ansatz is pushed through the
/// equation itself and solved level by level. Nothing here consumes
/// generating-function output, so it stays an independent verifier.

struct OracleRun {
    std::string kind; // "trig" or "log"
    int depth = 0;
    CoefficientGrid grid;
    int residual_certificate = 0; // first level NOT verified to cancel
};

/// Ring ["alpha","theta","a11","a1m1"]; the exponent parameter is eliminated
/// through the first-level product (kappa = i*theta^2*a11*a1m1/3).
OracleRun oracle_trig_run(int depth);
TrigCoeffGrid oracle_trig_coeffs(int depth);

/// Ring ["a","b","g3"], g3 the free level-0 coefficient.
OracleRun oracle_log_run(int depth_k, int depth_m);
LogCoeffGrid oracle_log_coeffs(int depth_k, int depth_m);

/// Residual functionals of the equation in the two graded algebras. The
/// input is the inner-scaled series (trig: S with u = pref*tau^(1/3)*S;
/// log: v with u = sum tau^(2k-1) levels).
BiSeries trig_dp3_residual(const BiSeries& S);
BiSeries log_dp3_residual(const BiSeries& u);

/// Oracle graded algebras (shared by residual checks).
RingPtr oracle_trig_ring();
RingPtr oracle_log_ring();

/// First level with a nonzero residual coefficient, or hi_known()+1 when all
/// checked levels cancel.
int residual_first_nonzero(const BiSeries& residual);

/// Convert kappa-basis elements (ring ["alpha","kappa","b11","b1m1","theta"])
/// into the oracle basis by kappa = i theta^2 a11 a1m1 / 3, b1* = theta a1*.
FieldElement to_oracle_basis(const FieldElement& e);

} // namespace dp3

#endif
