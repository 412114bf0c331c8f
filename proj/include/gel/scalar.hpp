#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gel {

/// Exact Gaussian rational re + im*i.
class Scalar {
  public:
    Scalar() = default;
    Scalar(long v) : re_(v) {}
    Scalar(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static Scalar imag_unit() { return Scalar(0, 1); }

    const mpq_class &re() const { return re_; }
    const mpq_class &im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    Scalar conj() const { return Scalar(re_, -im_); }
    /// |z|^2, always rational.
    mpq_class norm() const { return re_ * re_ + im_ * im_; }

    Scalar operator-() const { return Scalar(-re_, -im_); }
    Scalar &operator+=(const Scalar &o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Scalar &operator-=(const Scalar &o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    Scalar &operator*=(const Scalar &o);
    Scalar &operator/=(const Scalar &o);

    friend Scalar operator+(Scalar a, const Scalar &b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar &b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar &b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar &b) { return a /= b; }
    friend bool operator==(const Scalar &a, const Scalar &b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const Scalar &a, const Scalar &b) { return !(a == b); }

    /// `a/b`, `c/d i`, or `a/b+c/d i`; integers print without denominator.
    std::string str() const;
    /// Inverse of str(); also accepts `i`, `-i` and surrounding blanks.
    static Scalar parse(std::string_view text);

  private:
    mpq_class re_;
    mpq_class im_;
};

} // namespace gel
