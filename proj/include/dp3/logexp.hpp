#ifndef DP3_LOGEXP_HPP
#define DP3_LOGEXP_HPP

#include "dp3/grids.hpp"
#include "dp3/ode.hpp"

namespace dp3 {

/// Context of the small-tau logarithmic asymptotics: parameters a, b and the
/// free level-0 coefficient g3; the sign parameter of the equation is fixed
/// to +1 here (the documented substitution u->eps u, b->eps b covers -1).
struct LogContext {
    RingPtr ring = PolyRing::make({"a", "b", "g3"});
    FieldElement a = FieldElement::param(ring, "a");
    FieldElement b = FieldElement::param(ring, "b");
    FieldElement g3 = FieldElement::param(ring, "g3"); // the free coefficient

    /// C = -b^2(a^2+1)/4, the level-0 scale.
    FieldElement C() const { return -(b * b * (a * a + FieldElement(ring, 1))).scale(GR(1, 4)); }
    /// C' = -2 g3, the pole location parameter of the conjugate family.
    FieldElement Cprime() const { return g3.scale(GR(-2)); }
};

/// One family of generating functions for the logarithmic expansion.
struct LogExpansion {
    char kind = 'A'; // 'A': functions of x = tau^2 log tau; 'B': of y = 1/log tau
    std::vector<RationalFunction> gen;
};

/// x <-> outer grading: D = (y+2) x d/dx - y^2 d/dy applied to a graded
/// series (outer y for the A-family, outer x for the B-family).
BiSeries apply_log_D(const BiSeries& s);

/// Polynomial form of the governing PDE: D^2A*A - (DA)^2 + 8A^3
/// - 2ab*xy*A - (bxy)^2, evaluated on a graded series.
BiSeries log_pde_residual(const BiSeries& s, const LogContext& ctx);

/// A-family generators A_0..A_kmax; resonance constants pinned against the
/// level-3 anchors of the grid (c~_{3,k-2}).
LogExpansion compute_log_A(int kmax, const LogContext& ctx, const LogCoeffGrid& anchors);

/// B-family generators (unique rational solutions, no anchors needed).
LogExpansion compute_log_B(int kmax, const LogContext& ctx);

/// Exact coefficients c~ read off one generator: A-family generator k holds
/// (2n-1, k-n) for n = 0..nmax; B-family generator k holds (2k-1, n-k).
LogCoeffGrid extract_log_coefficients(const LogExpansion& e, const LogContext& ctx, int k,
                                      int nmax);

/// Partial-fraction summary of one A-family generator with a closed-form
/// coefficient evaluator (binomial weights against the pole powers).
struct ClosedFormLevel {
    FieldElement C;                  // pole parameter
    Poly1 polynomial_part;           // in x
    std::vector<Poly1> parts;        // parts[p-1]: numerator over (1+Cx^2/4)^p
    FieldElement coefficient(int n) const; // Taylor coefficient of x^n
    RingPtr ring;
};

ClosedFormLevel closed_form_level(const LogExpansion& e, const LogContext& ctx, int k);

} // namespace dp3

#endif
