#ifndef DP3_GAUSSIAN_RATIONAL_HPP
#define DP3_GAUSSIAN_RATIONAL_HPP

#include <complex>
#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "dp3/errors.hpp"

namespace dp3 {

/// Exact element of Q(i): re + i*im with arbitrary-precision rational parts.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(long num, long den) : re_(mpq_class(num, den)), im_(0) { re_.canonicalize(); }
    GaussianRational(const mpq_class& re, const mpq_class& im) : re_(re), im_(im) {}

    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }
    static GaussianRational from_strings(const std::string& re, const std::string& im) {
        mpq_class r(re), j(im);
        r.canonicalize();
        j.canonicalize();
        return GaussianRational(r, j);
    }

    const mpq_class& re() const { return re_; }
    const mpq_class& im() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }
    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    GaussianRational operator+(const GaussianRational& o) const {
        return GaussianRational(re_ + o.re_, im_ + o.im_);
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return GaussianRational(re_ - o.re_, im_ - o.im_);
    }
    GaussianRational operator*(const GaussianRational& o) const {
        return GaussianRational(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussianRational operator/(const GaussianRational& o) const {
        mpq_class n = o.re_ * o.re_ + o.im_ * o.im_;
        if (n == 0) fail(Errc::DivisionByZero, "Gaussian rational division by zero");
        return GaussianRational((re_ * o.re_ + im_ * o.im_) / n, (im_ * o.re_ - re_ * o.im_) / n);
    }

    GaussianRational& operator+=(const GaussianRational& o) { re_ += o.re_; im_ += o.im_; return *this; }
    GaussianRational& operator-=(const GaussianRational& o) { re_ -= o.re_; im_ -= o.im_; return *this; }
    GaussianRational& operator*=(const GaussianRational& o) { *this = *this * o; return *this; }

    GaussianRational inv() const { return GaussianRational(1) / *this; }

    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }
    bool operator<(const GaussianRational& o) const {
        if (re_ != o.re_) return re_ < o.re_;
        return im_ < o.im_;
    }

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

    std::string str() const {
        if (im_ == 0) return re_.get_str();
        return re_.get_str() + (im_ > 0 ? "+" : "") + im_.get_str() + "*i";
    }

private:
    mpq_class re_, im_;
};

using GR = GaussianRational;

inline GR gr_i() { return GR::i(); }
inline GR gr_frac(long n, long d) { return GR(n, d); }

} // namespace dp3

#endif
