#ifndef DP3_EVALSERIES_HPP
#define DP3_EVALSERIES_HPP

#include <map>
#include <string>

#include "dp3/ellexp.hpp"
#include "dp3/integrate.hpp"
#include "dp3/logexp.hpp"
#include "dp3/trigexp.hpp"

namespace dp3 {

/// Numeric bindings for the symbolic parameters plus branch conventions.
/// Branches: tau^(1/3) and log(tau) principal on arg tau in (-pi, pi].
struct EvalBindings {
    Dp3Params prm;                        // a, b, eps
    std::map<std::string, Cplx> values;   // ring parameter values by name
    double theta() const;                 // 3^(3/4) (eps b)^(1/6), eps b > 0
    Cplx value(const std::string& name) const;
};

Cplx eval_field(const FieldElement& e, const EvalBindings& bind);

/// u(tau) from the doubly truncated series through order N (in tau^(-2/3)).
Cplx eval_doubly_truncated(const std::vector<FieldElement>& b2n, int N, Cplx tau,
                           const EvalBindings& bind);
/// d/dtau of the same truncation.
Cplx eval_doubly_truncated_d(const std::vector<FieldElement>& b2n, int N, Cplx tau,
                             const EvalBindings& bind);

enum class TrigMap { Plain, Tilde };

/// u(tau) from the trigonometric expansion: prefactor times
/// sum y^k A_k(x) evaluated through level kmax under the chosen variable map.
Cplx eval_trig_A(const AInfExpansion& a, int kmax, TrigMap map, Cplx tau,
                 const EvalBindings& bind);
/// Conjugate route: sum x^k B_k(y).
Cplx eval_trig_B(const BInfPolynomials& b, int nmax, TrigMap map, Cplx tau,
                 const EvalBindings& bind);
/// Uniform combination over both maps minus the double-counted conjugate sum.
Cplx eval_trig_uniform(const AInfExpansion& a, const BInfPolynomials& b, int N, Cplx tau,
                       const EvalBindings& bind);

/// u(tau) from the logarithmic expansion (A or B family) through level kmax.
Cplx eval_log(const LogExpansion& e, int kmax, Cplx tau, const EvalBindings& bind);

/// Elliptic leading term along tau = r exp(i phi0): both algebraic forms.
struct EllipticLeading {
    Cplx sn_form;   // q - (s-3) q /((s-1) sn^2)
    Cplx ratio_form; // the conjugate-variable resummation
    bool pole_near = false;
};
EllipticLeading elliptic_leading_term(const BoutrouxBindings& bb, Cplx theta0, double r,
                                      const EvalBindings& bind, double pole_exclusion);

/// Residual of the equation on the elliptic leading-term candidate,
/// normalized by the dominant term magnitude.
double elliptic_candidate_residual(const BoutrouxBindings& bb, Cplx theta0, double r,
                                   const EvalBindings& bind, double pole_exclusion,
                                   bool* excluded);

} // namespace dp3

#endif
