#ifndef DP3_FIELDELEM_HPP
#define DP3_FIELDELEM_HPP

#include "dp3/parampoly.hpp"

namespace dp3 {

/// Element of the fraction field of a parameter polynomial ring, kept in
/// canonical form: gcd(num, den) trivial, den lex-leading coefficient 1.
class FieldElement {
public:
    FieldElement() = default;
    explicit FieldElement(RingPtr ring)
        : num_(ParamPoly(ring)), den_(ParamPoly(ring, GR(1))) {}
    FieldElement(RingPtr ring, const GR& c)
        : num_(ParamPoly(ring, c)), den_(ParamPoly(ring, GR(1))) {}
    FieldElement(RingPtr ring, long n) : FieldElement(ring, GR(n)) {}
    explicit FieldElement(const ParamPoly& p)
        : num_(p), den_(ParamPoly(p.ring(), GR(1))) {}
    FieldElement(const ParamPoly& num, const ParamPoly& den, bool do_normalize = true)
        : num_(num), den_(den) {
        if (do_normalize) normalize();
    }

    static FieldElement param(RingPtr ring, const std::string& name, int power = 1) {
        return FieldElement(ParamPoly::param(std::move(ring), name, power));
    }

    const ParamPoly& num() const { return num_; }
    const ParamPoly& den() const { return den_; }
    const RingPtr& ring() const { return num_.ring(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    GR constant_value() const { return num_.constant_value() / den_.constant_value(); }

    FieldElement operator-() const { return FieldElement(-num_, den_, false); }
    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement& operator+=(const FieldElement& o) { *this = *this + o; return *this; }
    FieldElement& operator-=(const FieldElement& o) { *this = *this - o; return *this; }
    FieldElement& operator*=(const FieldElement& o) { *this = *this * o; return *this; }
    FieldElement& operator/=(const FieldElement& o) { *this = *this / o; return *this; }

    FieldElement inv() const;
    FieldElement pow(int n) const;
    FieldElement scale(const GR& c) const { return FieldElement(num_.scale(c), den_, false); }

    bool operator==(const FieldElement& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }
    bool operator<(const FieldElement& o) const {
        if (num_ != o.num_) return num_ < o.num_;
        return den_ < o.den_;
    }

    FieldElement substitute(const std::string& name, const FieldElement& value) const;
    FieldElement map_to_ring(const RingPtr& other) const {
        return FieldElement(num_.map_to_ring(other), den_.map_to_ring(other));
    }
    FieldElement conj() const { return FieldElement(num_.conj(), den_.conj()); }

    std::complex<double> eval(const std::vector<std::complex<double>>& vals) const;
    GR eval_exact(const std::vector<GR>& vals) const;

    std::string str() const;

private:
    void normalize();
    ParamPoly num_, den_;
};

using FE = FieldElement;

} // namespace dp3

#endif
