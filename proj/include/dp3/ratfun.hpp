#ifndef DP3_RATFUN_HPP
#define DP3_RATFUN_HPP

#include <map>
#include <string>

#include "dp3/poly1.hpp"

namespace dp3 {

/// Truncated Taylor series in one variable: coeffs[n] multiplies var^n.
struct TaylorSeries {
    std::string var;
    Poly1 coeffs;
    int order = 0; // number of known coefficients

    FieldElement coeff(int n) const;
};

TaylorSeries ts_add(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries ts_mul(const TaylorSeries& a, const TaylorSeries& b);
TaylorSeries ts_div(const TaylorSeries& a, const TaylorSeries& b);
/// d/dx log(a) = a'/a as a truncated series.
TaylorSeries ts_log_derivative(const TaylorSeries& a);

/// Univariate rational function over the parameter field with a factored
/// denominator: num / prod factor_i^mult_i. Factors are kept monic.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(std::string var, RingPtr ring)
        : var_(std::move(var)), ring_(std::move(ring)) {}
    RationalFunction(std::string var, Poly1 num,
                     std::vector<std::pair<Poly1, int>> den, RingPtr ring);

    static RationalFunction from_const(const std::string& var, const FieldElement& c);
    static RationalFunction variable(const std::string& var, RingPtr ring);

    const std::string& var() const { return var_; }
    const RingPtr& ring() const { return ring_; }
    const Poly1& num() const { return num_; }
    const std::vector<std::pair<Poly1, int>>& den() const { return den_; }

    bool is_zero() const { return p1_is_zero(num_); }
    bool is_polynomial() const { return den_.empty(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction scale(const FieldElement& c) const;
    RationalFunction inv() const;
    RationalFunction derivative() const;
    RationalFunction pow(int n) const;

    /// Multiply by var^k (k may be negative; negative powers join the
    /// denominator as a monomial factor).
    RationalFunction shift(int k) const;

    bool equals(const RationalFunction& o) const;

    /// Taylor coefficients at the origin; pole at 0 -> PoleAtExpansionPoint.
    TaylorSeries taylor(int order) const;
    /// Laurent coefficients c_lo..c_hi at the origin (handles x^m factors).
    std::map<int, FieldElement> laurent(int lo, int hi) const;
    FieldElement laurent_coeff(int n) const;

    /// Order of the pole at the zero set of `factor` (0 if absent).
    int pole_order(const Poly1& factor) const;

    Poly1 den_expanded() const;
    FieldElement eval(const FieldElement& x) const;
    std::complex<double> eval_complex(const std::vector<std::complex<double>>& ringvals,
                                      const std::complex<double>& x) const;

    RationalFunction substitute_param(const std::string& name, const FieldElement& v) const;
    RationalFunction map_coeffs(const std::function<FieldElement(const FieldElement&)>& f) const;

    void normalize();

    std::string str() const;

private:
    std::string var_;
    RingPtr ring_;
    Poly1 num_;
    std::vector<std::pair<Poly1, int>> den_;
};

struct PartialFractions {
    Poly1 polynomial_part;
    // decomposition terms: (basis index, power) -> numerator with deg < deg basis
    std::map<std::pair<int, int>, Poly1> parts;
};

/// Partial fraction decomposition of f over the given pairwise-coprime basis.
PartialFractions partial_fraction_decompose(const RationalFunction& f,
                                            const std::vector<Poly1>& basis);
RationalFunction recombine(const PartialFractions& pf, const std::vector<Poly1>& basis,
                           const std::string& var, RingPtr ring);

RationalFunction normalize_rational(RationalFunction f);

TaylorSeries taylor_coefficients(const RationalFunction& f, int order);

} // namespace dp3

#endif
