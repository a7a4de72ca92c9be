#ifndef DP3_BISERIES_HPP
#define DP3_BISERIES_HPP

#include <functional>
#include <map>

#include "dp3/ratfun.hpp"

namespace dp3 {

/// Two-variable graded series: sum over outer-variable levels of rational
/// functions of the inner variable. Levels above `hi_known` are unknown
/// (truncated), not zero; arithmetic tracks how far results stay exact.
class BiSeries {
public:
    static constexpr int kExact = 1 << 28;

    BiSeries() = default;
    BiSeries(std::string outer, std::string inner, RingPtr ring, int hi_known = kExact)
        : outer_(std::move(outer)), inner_(std::move(inner)), ring_(std::move(ring)),
          hi_(hi_known) {}

    static BiSeries constant(const std::string& outer, const std::string& inner,
                             const FieldElement& c);
    static BiSeries monomial(const std::string& outer, const std::string& inner, int level,
                             RationalFunction f);

    const std::string& outer() const { return outer_; }
    const std::string& inner() const { return inner_; }
    const RingPtr& ring() const { return ring_; }
    int hi_known() const { return hi_; }
    void set_hi_known(int h) { hi_ = h; }

    const std::map<int, RationalFunction>& levels() const { return levels_; }
    bool empty() const { return levels_.empty(); }
    int lo_support() const; // hi_+1 when no stored level is nonzero

    /// Exact coefficient of outer^j; InsufficientTruncation beyond hi_known.
    RationalFunction level(int j) const;
    void set_level(int j, RationalFunction f);

    BiSeries operator+(const BiSeries& o) const;
    BiSeries operator-(const BiSeries& o) const;
    BiSeries operator*(const BiSeries& o) const;
    BiSeries operator-() const;
    BiSeries scale(const FieldElement& c) const;
    BiSeries mul_inner(const RationalFunction& f) const; // level-wise multiply
    BiSeries shift_outer(int s) const;
    BiSeries truncated(int hi) const;

    /// Level-wise derivative with respect to the inner variable.
    BiSeries d_inner() const;

    /// Generic level map: each source level j contributes fn(j, f) at level
    /// j + shift.
    BiSeries map_shift(int shift,
                       const std::function<RationalFunction(int, const RationalFunction&)>& fn) const;

    /// Multiplicative inverse as a series in the outer variable; the lowest
    /// level must be nonzero (a unit rational function).
    BiSeries inverse(int want_hi) const;

    /// First level in [lo, hi_known] with a nonzero coefficient, or hi+1.
    int first_nonzero() const;

    /// Exact coefficient of outer^L in the product a*b without forming the
    /// whole product; fails if the level is beyond the product's exactness.
    static RationalFunction mul_level(const BiSeries& a, const BiSeries& b, int L);

private:
    void prune();
    std::string outer_, inner_;
    RingPtr ring_;
    std::map<int, RationalFunction> levels_;
    int hi_ = kExact;
};

} // namespace dp3

#endif
