#ifndef DP3_ODE_HPP
#define DP3_ODE_HPP

#include "dp3/biseries.hpp"
#include "dp3/linsolve.hpp"

namespace dp3 {

/// p2 f'' + p1 f' + p0 f = rhs in one variable.
struct LinearODE2 {
    std::string var;
    RingPtr ring;
    RationalFunction p2, p1, p0, rhs;

    RationalFunction apply(const RationalFunction& f) const; // lhs - rhs
    LinearODE2 scaled(const FieldElement& c) const;
    /// Equivalent ODE with polynomial p2, p1, p0 (multiplied through by the
    /// common denominator).
    LinearODE2 cleared() const;
};

/// Result of solving  y^2 B'' - (2n-1) y B' + (n^2-1) B = rhs  with
/// polynomial right-hand side: particular polynomial plus the resonant data.
struct EulerSolveReport {
    Poly1 particular;
    int hom_exp_high = 0; // n+1
    int hom_exp_low = 0;  // n-1
    FieldElement log_high; // coefficient of y^{n+1} log y forced by the rhs
    FieldElement log_low;  // coefficient of y^{n-1} log y forced by the rhs
};

EulerSolveReport solve_euler_polynomial(int n, const Poly1& rhs, RingPtr ring);

struct RationalAnsatz {
    Poly1 pole;            // single (monic) pole factor; empty for polynomials
    int max_pole_order = 0;
    int max_degree = 0;    // numerator degree over pole^max_pole_order
};

/// Affine family of rational solutions: particular + span(homogeneous).
/// `empty` marks a legitimately empty solution set.
struct AnsatzFamily {
    bool empty = true;
    RationalFunction particular;
    std::vector<RationalFunction> homogeneous;
};

AnsatzFamily solve_rational_ansatz(const LinearODE2& ode, const RationalAnsatz& ansatz);

bool verify_solution(const LinearODE2& ode, const RationalFunction& f);

/// Integer indicial exponents at the origin and at infinity, scanned over a
/// bounded window; used to sanity-boost ansatz degree bounds.
std::pair<std::vector<int>, std::vector<int>> indicial_integer_exponents(const LinearODE2& ode);

/// Assemble the linear ODE satisfied by a level generator from the PDE's
/// linearization: `column(g)` is the level-L residual response to placing g
/// at the unknown level, `base` the residual of the known part alone.
LinearODE2 ode_from_linearization(
    const std::function<RationalFunction(const RationalFunction&)>& column,
    const RationalFunction& base, const std::string& var, RingPtr ring);

} // namespace dp3

#endif
