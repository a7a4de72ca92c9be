#ifndef DP3_PARAMPOLY_HPP
#define DP3_PARAMPOLY_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "dp3/gaussian_rational.hpp"

namespace dp3 {

/// Ordered list of formal parameters shared by a family of polynomials.
/// Rings are interned by name list so that equal parameter lists compare
/// pointer-equal.
class PolyRing {
public:
    static std::shared_ptr<const PolyRing> make(std::vector<std::string> names);

    const std::vector<std::string>& names() const { return names_; }
    std::size_t size() const { return names_.size(); }
    int index(const std::string& name) const; // -1 if absent
    int index_checked(const std::string& name) const;

private:
    explicit PolyRing(std::vector<std::string> names) : names_(std::move(names)) {}
    std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

using Expvec = std::vector<std::uint16_t>;

/// Sparse multivariate polynomial over Q(i) in the parameters of a PolyRing.
class ParamPoly {
public:
    ParamPoly() = default;
    explicit ParamPoly(RingPtr ring) : ring_(std::move(ring)) {}
    ParamPoly(RingPtr ring, const GR& c);

    static ParamPoly constant(RingPtr ring, const GR& c) { return ParamPoly(std::move(ring), c); }
    static ParamPoly param(RingPtr ring, const std::string& name, int power = 1);
    static ParamPoly monomial(RingPtr ring, const Expvec& e, const GR& c);

    const RingPtr& ring() const { return ring_; }
    const std::map<Expvec, GR>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    GR constant_value() const; // requires is_constant()
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Expvec& e, const GR& c);

    ParamPoly operator-() const;
    ParamPoly operator+(const ParamPoly& o) const;
    ParamPoly operator-(const ParamPoly& o) const;
    ParamPoly operator*(const ParamPoly& o) const;
    ParamPoly& operator+=(const ParamPoly& o);
    ParamPoly& operator-=(const ParamPoly& o);

    ParamPoly scale(const GR& c) const;
    ParamPoly pow(unsigned n) const;

    bool operator==(const ParamPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const ParamPoly& o) const { return !(*this == o); }
    bool operator<(const ParamPoly& o) const { return terms_ < o.terms_; }

    int degree_in(int var) const;
    bool uses_var(int var) const;
    std::vector<int> used_vars() const;

    /// Leading term in the global lex order.
    std::pair<Expvec, GR> lead() const;

    /// Coefficients with respect to one variable, as polynomials in the rest
    /// (same ring, exponent of `var` zeroed).
    std::vector<ParamPoly> coeffs_in(int var) const;
    static ParamPoly from_coeffs_in(int var, const std::vector<ParamPoly>& cs, RingPtr ring);

    /// Substitute a parameter by a polynomial of the same ring.
    ParamPoly substitute(int var, const ParamPoly& value) const;

    /// Map into another ring by parameter names; fails if a used parameter is
    /// missing there.
    ParamPoly map_to_ring(const RingPtr& other) const;

    /// i -> -i on every coefficient.
    ParamPoly conj() const;

    /// Exchange the exponents of two parameters.
    ParamPoly swap_vars(int va, int vb) const;

    std::complex<double> eval(const std::vector<std::complex<double>>& vals) const;
    GR eval_exact(const std::vector<GR>& vals) const;

    /// Scale so the lex-leading coefficient becomes 1. Zero stays zero.
    ParamPoly normalized_monic() const;

    std::string str() const;

private:
    void check_same_ring(const ParamPoly& o) const;
    RingPtr ring_;
    std::map<Expvec, GR> terms_;
};

/// Exact quotient; fails AlgorithmInvariantViolation if not divisible.
ParamPoly divexact(const ParamPoly& a, const ParamPoly& b);
/// True divisibility probe (no throw).
bool try_divexact(const ParamPoly& a, const ParamPoly& b, ParamPoly& quot);

/// Multivariate gcd, normalized so the leading coefficient is 1.
ParamPoly poly_gcd(const ParamPoly& a, const ParamPoly& b);

} // namespace dp3

#endif
