#ifndef DP3_POLY1_HPP
#define DP3_POLY1_HPP

#include <vector>

#include "dp3/fieldelem.hpp"

namespace dp3 {

/// Dense univariate polynomial with FieldElement coefficients, index = power.
using Poly1 = std::vector<FieldElement>;

Poly1 p1_zero();
Poly1 p1_const(const FieldElement& c);
bool p1_is_zero(const Poly1& p);
int p1_degree(const Poly1& p); // -1 for zero
void p1_trim(Poly1& p);
Poly1 p1_add(const Poly1& a, const Poly1& b);
Poly1 p1_sub(const Poly1& a, const Poly1& b);
Poly1 p1_mul(const Poly1& a, const Poly1& b);
Poly1 p1_scale(const Poly1& a, const FieldElement& c);
Poly1 p1_shift(const Poly1& a, int k); // multiply by x^k, k >= 0
Poly1 p1_pow(const Poly1& a, unsigned n);
Poly1 p1_derivative(const Poly1& a);
FieldElement p1_eval(const Poly1& a, const FieldElement& x);
bool p1_equal(const Poly1& a, const Poly1& b);

/// Quotient and remainder over the coefficient field.
std::pair<Poly1, Poly1> p1_divmod(const Poly1& a, const Poly1& b);
Poly1 p1_gcd(const Poly1& a, const Poly1& b); // monic
bool p1_divides(const Poly1& d, const Poly1& a);
Poly1 p1_monic(const Poly1& a);
/// Scale so the lowest nonzero coefficient becomes 1 (the canonical factor
/// normalization used by RationalFunction denominators).
Poly1 p1_canonical(const Poly1& a);

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic.
std::tuple<Poly1, Poly1, Poly1> p1_ext_gcd(const Poly1& a, const Poly1& b);

/// Truncated series inverse of a with a[0] != 0, `order` coefficients.
Poly1 p1_series_inv(const Poly1& a, int order);
Poly1 p1_series_mul(const Poly1& a, const Poly1& b, int order);

} // namespace dp3

#endif
