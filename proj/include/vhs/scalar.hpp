#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace vhs {

using Rational = boost::multiprecision::cpp_rational;

/// Thrown on contract violations (shape mismatches, invalid inputs).
/// `field` names the offending argument or model field.
class Error : public std::runtime_error {
public:
    Error(std::string field, const std::string& message)
        : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Complex scalar with a two-level coefficient tower: exact Gaussian
/// rationals, demoted to complex<double> as soon as any operand is
/// inexact. Demotion is one-way.
class Scalar {
public:
    Scalar() : exact_(true), re_(0), im_(0) {}
    Scalar(int v) : exact_(true), re_(v), im_(0) {}
    Scalar(long long v) : exact_(true), re_(v), im_(0) {}
    Scalar(Rational re, Rational im = 0)
        : exact_(true), re_(std::move(re)), im_(std::move(im)) {}
    Scalar(double v) : exact_(false), f_(v) {}
    Scalar(std::complex<double> v) : exact_(false), f_(v) {}

    static Scalar i() { return Scalar(Rational(0), Rational(1)); }

    bool exact() const { return exact_; }
    const Rational& re_rat() const { require_exact(); return re_; }
    const Rational& im_rat() const { require_exact(); return im_; }

    std::complex<double> to_complex() const {
        if (!exact_) return f_;
        return {static_cast<double>(re_), static_cast<double>(im_)};
    }

    bool is_zero() const {
        return exact_ ? (re_ == 0 && im_ == 0) : (f_ == std::complex<double>(0.0));
    }
    bool is_one() const {
        return exact_ ? (re_ == 1 && im_ == 0) : (f_ == std::complex<double>(1.0));
    }

    Scalar operator-() const {
        if (exact_) return Scalar(-re_, -im_);
        return Scalar(-f_);
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(a.re_ + b.re_, a.im_ + b.im_);
        return Scalar(a.to_complex() + b.to_complex());
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return Scalar(a.re_ - b.re_, a.im_ - b.im_);
        return Scalar(a.to_complex() - b.to_complex());
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_)
            return Scalar(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
        return Scalar(a.to_complex() * b.to_complex());
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) {
            Rational d = b.re_ * b.re_ + b.im_ * b.im_;
            if (d == 0) throw Error("divisor", "division by zero");
            return Scalar((a.re_ * b.re_ + a.im_ * b.im_) / d,
                          (a.im_ * b.re_ - a.re_ * b.im_) / d);
        }
        return Scalar(a.to_complex() / b.to_complex());
    }

    Scalar& operator+=(const Scalar& b) { *this = *this + b; return *this; }
    Scalar& operator-=(const Scalar& b) { *this = *this - b; return *this; }
    Scalar& operator*=(const Scalar& b) { *this = *this * b; return *this; }
    Scalar& operator/=(const Scalar& b) { *this = *this / b; return *this; }

    Scalar conj() const {
        if (exact_) return Scalar(re_, -im_);
        return Scalar(std::conj(f_));
    }

    double abs() const { return std::abs(to_complex()); }

    /// Exact equality on rationals, bitwise on floats.
    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.exact_ && b.exact_) return a.re_ == b.re_ && a.im_ == b.im_;
        return a.to_complex() == b.to_complex();
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    std::string str() const {
        if (exact_) {
            std::string s = re_.str();
            if (im_ != 0) s += (im_ > 0 ? "+" : "") + im_.str() + "i";
            return s;
        }
        std::string s = std::to_string(f_.real());
        if (f_.imag() != 0.0) s += (f_.imag() > 0 ? "+" : "") + std::to_string(f_.imag()) + "i";
        return s;
    }

private:
    void require_exact() const {
        if (!exact_) throw Error("scalar", "rational component requested from a floating value");
    }

    bool exact_;
    Rational re_, im_;
    std::complex<double> f_{};
};

inline Scalar rat(long long num, long long den) {
    return Scalar(Rational(num, den));
}

/// (√−1)^k as an exact scalar, any integer k.
inline Scalar i_pow(int k) {
    int m = ((k % 4) + 4) % 4;
    switch (m) {
        case 0: return Scalar(1);
        case 1: return Scalar::i();
        case 2: return Scalar(-1);
        default: return -Scalar::i();
    }
}

}  // namespace vhs
