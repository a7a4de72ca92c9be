#ifndef DP3_ELLEXP_HPP
#define DP3_ELLEXP_HPP

#include <complex>

#include "dp3/ode.hpp"
#include "dp3/relations.hpp"

namespace dp3 {

RingPtr elliptic_ring();

/// Context of the Boutroux-type elliptic expansions (a = 0 regime).
/// kappa^2 is carried as the symbol k2; the algebraic data s^2 = 8q^3 + 1 and
/// t^3 = 2 enter only when a reduction is requested.
struct EllipticContext {
    RingPtr ring = elliptic_ring();
    FieldElement k2 = FieldElement::param(ring, "k2");
    FieldElement P = FieldElement::param(ring, "P");
    FieldElement p = FieldElement::param(ring, "p");
    FieldElement q = FieldElement::param(ring, "q");
    FieldElement s = FieldElement::param(ring, "s");
    FieldElement t = FieldElement::param(ring, "t");

    FieldElement iu() const { return FieldElement(ring, GR::i()); }
    FieldElement cpar(int n) const { return FieldElement::param(ring, "c" + std::to_string(n)); }

    PowerRelation rel_s() const; // s^2 = 8 q^3 + 1
    PowerRelation rel_t() const; // t^3 = 2
    PowerRelation rel_P() const; // P^2 = p^2 (2q/3)(s-3)/(s-1)
    PowerRelation rel_mu() const; // mu^2 = -q (s-3) t^2 / (6 (s-1))
    FieldElement kappa2_value() const; // (s-1)(s+3)/((s+1)(s-3))

    /// Impose the full Boutroux constraint set on an element.
    FieldElement impose(const FieldElement& e) const;
};

/// Expansion in the non-conjugate variables: generators polynomial in x^2,
/// with the free even constants kept symbolic (q2, q4, ...).
struct EllExpansionA1 {
    RingPtr ring;
    std::vector<RationalFunction> gen;
    std::vector<std::string> free_constants;
};

/// Conjugate-variable expansion: Laurent polynomials in y with the
/// normalization constants c_{2k}, c_{2k-1} symbolic.
struct EllExpansionB2 {
    RingPtr ring;
    std::vector<RationalFunction> gen;
};

BiSeries ell1_pde_residual(const BiSeries& s, const EllipticContext& ctx);
BiSeries ell2_pde_residual(const BiSeries& s, const EllipticContext& ctx);

EllExpansionA1 compute_A1_elliptic(int kmax, const EllipticContext& ctx);
EllExpansionB2 compute_B2_elliptic(int kmax, const EllipticContext& ctx);
/// Mirror family A^2_{e,k}(x; P) = B^2_{e,k}(x; -P).
EllExpansionB2 mirror_family(const EllExpansionB2& b);

/// Verify A^1_{e,k}(0)/A^1_{e,1}(0) = k under the Boutroux constraints.
bool verify_boutroux_ratios(const EllExpansionA1& a, const EllipticContext& ctx, int kmax);

struct BoutrouxBindings {
    std::complex<double> q, s, kappa2, P, p;
    bool degenerate = false; // trigonometric limit (q^3 = 1 or s in {±1, ±3})
};
BoutrouxBindings solve_boutroux_from_q(std::complex<double> q, int s_branch, int P_branch,
                                       double phi0);
std::vector<BoutrouxBindings> solve_boutroux_from_Aphi(std::complex<double> Aphi, int s_branch,
                                                       int P_branch, double phi0);

struct WeierstrassData {
    FieldElement e1, e2, e3; // in terms of k2 and mu
    FieldElement mu2;        // reduced modulus scale
    FieldElement g2, g3, Aphi;
    std::string phase_relation; // recorded symbolically
};
WeierstrassData weierstrass_bridge(const EllipticContext& ctx);

/// One-sided Fourier correction data: coefficients of y^(2-k) in the
/// conjugate generators under the Boutroux constraints.
struct FourierCorrection {
    std::vector<FieldElement> coeff;    // b_{e,k}^{2-k}, index k-1, k = 1..kmax
    std::vector<FieldElement> c1_part;  // the coefficient of c1 in each
    std::vector<ParamPoly> Q;           // unfolded s-polynomials, k = 2..kmax
};
FourierCorrection fourier_correction(int kmax, const EllipticContext& ctx);

/// Write a reduced (s-linear) element as a polynomial in s of the given
/// degree, using s^2 = 8q^3 + 1; fails if impossible.
ParamPoly unfold_s_polynomial(const FieldElement& v, int maxdeg, const EllipticContext& ctx);

} // namespace dp3

#endif
