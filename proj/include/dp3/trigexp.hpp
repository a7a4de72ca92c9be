#ifndef DP3_TRIGEXP_HPP
#define DP3_TRIGEXP_HPP

#include "dp3/grids.hpp"
#include "dp3/ode.hpp"
#include "dp3/relations.hpp"

namespace dp3 {

RingPtr trig_ring(); // ["alpha","kappa","b11","b1m1","theta"]

/// Context of the large-tau trigonometric asymptotics. The first-level
/// coefficients and the exponent parameter are independent symbols until the
/// rationality constraint 3i kappa + b11 b1m1 = 0 is imposed.
struct TrigContext {
    RingPtr ring = trig_ring();
    FieldElement alpha = FieldElement::param(ring, "alpha");
    FieldElement kappa = FieldElement::param(ring, "kappa");
    FieldElement b11 = FieldElement::param(ring, "b11");
    FieldElement b1m1 = FieldElement::param(ring, "b1m1");
    FieldElement theta = FieldElement::param(ring, "theta");
    bool constraint_imposed = false;

    static TrigContext general();
    static TrigContext truncated_upper(); // b11 = 0, kappa = 0 (one exponential family off)
    static TrigContext truncated_lower(); // b1m1 = 0, kappa = 0
    static TrigContext doubly_truncated(); // b11 = b1m1 = 0, kappa = 0

    FieldElement iu() const { return FieldElement(ring, GR::i()); }
    FieldElement Xi2() const;
    PairRelation constraint() const; // b11*b1m1 = -3 i kappa
    FieldElement normalized(const FieldElement& e) const;
};

/// D = -x/2 d/dx + (kappa + i/(x^2 y^2)) (y d/dy - x d/dx), applied to an
/// A-graded (outer y) or B-graded (outer x) series.
BiSeries apply_trig_D(const BiSeries& s, const TrigContext& ctx);

/// Polynomial form of the governing PDE:
/// D^2 A * A - (DA)^2 + (A^3 - 1)/(3 x^4 y^4) + i alpha A/(2 x^2 y^2).
BiSeries trig_pde_residual(const BiSeries& s, const TrigContext& ctx);

/// Conjugate-expansion polynomials with the two-level deferred-constant
/// ledger fully resolved up to level nmax.
struct BInfPolynomials {
    RingPtr ring;
    std::vector<Poly1> polys;                 // B_n(y), n = 0..nmax
    std::map<int, FieldElement> constants;    // resolved C_m
    std::vector<int> pending;                 // constants left free (internal top levels)
    bool constraint_emitted = false;
};

BInfPolynomials compute_B_infty(int nmax, TrigContext ctx);

/// A-expansion generators; anchors supply a_{k+1,-1} for the resonant
/// constants (from the conjugate ledger or from the oracle).
struct AInfExpansion {
    RingPtr ring;
    std::vector<RationalFunction> gen; // A_k(x), k = 0..kmax
};

AInfExpansion compute_A_infty(int kmax, const TrigContext& ctx, const TrigCoeffGrid& anchors);

/// Coefficient grids from the generating-function routes (ring of trig_ring,
/// entries carry explicit theta powers).
TrigCoeffGrid grid_from_B(const BInfPolynomials& b, int depth);
void grid_merge_from_A(TrigCoeffGrid& grid, const AInfExpansion& a, int nmax);

/// anchors grid built from the conjugate ledger via a_{n,1} = C_{2n} theta^-n,
/// a_{n,-1} = C_{2n-1} theta^-n.
TrigCoeffGrid anchors_from_ledger(const BInfPolynomials& b, int nmax);

/// Convert an oracle-ring element into the trig ring (products of the
/// first-level coefficients rewritten through kappa).
FieldElement from_oracle_basis(const FieldElement& e);

/// Closed coefficient formulas along the three known diagonal families.
enum class DiagFamily { Main, Offset2, Offset4 };
FieldElement coefficient_formula(DiagFamily family, int n, bool positive_offset,
                                 const TrigContext& ctx, const TrigCoeffGrid* boundary);

/// The sign involution (i, alpha, kappa, j) -> (-i, -alpha, -kappa, -j).
FieldElement symmetry_transform(const FieldElement& e);
TrigCoeffGrid symmetry_transform(const TrigCoeffGrid& g);
RationalFunction symmetry_transform(const RationalFunction& f);

/// Validity classification of the asymptotic series in the exponent strip.
struct KappaValidity {
    bool tilde_asymptotic = false; // Re in (-1/2, 3/2)
    bool leading_visible = false;  // Re in (0, 1)
    bool plain_asymptotic = false; // Re in (-3/2, 1/2]
    bool marginal = false;         // on a strip boundary
};
KappaValidity kappa_validity(std::complex<double> kappa_value);

/// Truncated series data (kappa = 0 cases).
struct TruncatedData {
    std::vector<FieldElement> b2n;            // both-zero: coefficient of tau^(-2n/3) Theta^(-2n)
    BInfPolynomials bpolys;                   // the case's conjugate table
    std::vector<RationalFunction> a_over_x2k; // upper/lower: A_{2k}(x)/x^{2k}
};
enum class TruncCase { BothZero, UpperZero, LowerZero };
TruncatedData compute_truncated(TruncCase which, int nmax, int kmax_a = 6);

} // namespace dp3

#endif
