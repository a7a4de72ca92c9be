#include "dp3/fieldelem.hpp"

namespace dp3 {

void FieldElement::normalize() {
    if (den_.is_zero()) fail(Errc::DivisionByZero, "field element with zero denominator");
    if (num_.is_zero()) {
        den_ = ParamPoly(den_.ring(), GR(1));
        return;
    }
    if (!den_.is_constant()) {
        ParamPoly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = divexact(num_, g);
            den_ = divexact(den_, g);
        }
    }
    GR lc = den_.lead().second;
    if (!lc.is_one()) {
        GR inv = lc.inv();
        num_ = num_.scale(inv);
        den_ = den_.scale(inv);
    }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return o;
    if (den_ == o.den_) return FieldElement(num_ + o.num_, den_);
    return FieldElement(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    if (o.is_zero()) return *this;
    if (is_zero()) return -o;
    if (den_ == o.den_) return FieldElement(num_ - o.num_, den_);
    return FieldElement(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (is_zero() || o.is_zero()) return FieldElement(ring() ? ring() : o.ring());
    // cross-cancel first to keep the final gcd small
    ParamPoly a = num_, b = den_, c = o.num_, d = o.den_;
    if (!b.is_constant() && !c.is_constant()) {
        ParamPoly g = poly_gcd(c, b);
        if (!g.is_constant()) {
            c = divexact(c, g);
            b = divexact(b, g);
        }
    }
    if (!d.is_constant() && !a.is_constant()) {
        ParamPoly g = poly_gcd(a, d);
        if (!g.is_constant()) {
            a = divexact(a, g);
            d = divexact(d, g);
        }
    }
    return FieldElement(a * c, b * d);
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::inv() const {
    if (num_.is_zero()) fail(Errc::DivisionByZero, "inverse of zero field element");
    return FieldElement(den_, num_);
}

FieldElement FieldElement::pow(int n) const {
    if (n == 0) return FieldElement(ring(), GR(1));
    FieldElement base = n > 0 ? *this : inv();
    unsigned m = static_cast<unsigned>(n > 0 ? n : -n);
    FieldElement r(ring(), GR(1));
    while (m) {
        if (m & 1u) r = r * base;
        m >>= 1;
        if (m) base = base * base;
    }
    return r;
}

FieldElement FieldElement::substitute(const std::string& name, const FieldElement& value) const {
    int var = ring()->index(name);
    if (var < 0) return *this;
    if (!num_.uses_var(var) && !den_.uses_var(var)) return *this;
    auto subst_poly = [&](const ParamPoly& p) -> FieldElement {
        if (!p.uses_var(var)) return FieldElement(p);
        auto cs = p.coeffs_in(var);
        FieldElement acc(FieldElement(cs.back()));
        for (int k = static_cast<int>(cs.size()) - 2; k >= 0; --k)
            acc = acc * value + FieldElement(cs[static_cast<std::size_t>(k)]);
        return acc;
    };
    FieldElement dn = subst_poly(den_);
    if (dn.is_zero()) fail(Errc::DivisionByZero, "substitution makes denominator vanish");
    return subst_poly(num_) / dn;
}

std::complex<double> FieldElement::eval(const std::vector<std::complex<double>>& vals) const {
    std::complex<double> d = den_.eval(vals);
    if (d == std::complex<double>(0.0, 0.0))
        fail(Errc::DivisionByZero, "denominator evaluates to zero");
    return num_.eval(vals) / d;
}

GR FieldElement::eval_exact(const std::vector<GR>& vals) const {
    GR d = den_.eval_exact(vals);
    if (d.is_zero()) fail(Errc::DivisionByZero, "denominator evaluates to zero");
    return num_.eval_exact(vals) / d;
}

std::string FieldElement::str() const {
    if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

} // namespace dp3
