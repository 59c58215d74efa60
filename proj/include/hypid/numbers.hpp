#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <stdexcept>
#include <string>
#include <utility>

namespace hypid {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::mpfr_float;  // variable precision

struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergentSeries : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LowerParamPole : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Working precision = target digits + guard digits.  Evaluations take the
// context explicitly; nothing global beyond mpfr's default precision, which
// ScopedPrecision manages RAII-style.
struct PrecisionContext {
    unsigned target_digits = 30;
    unsigned guard_digits = 20;

    unsigned working_digits() const { return target_digits + guard_digits; }
    Real epsilon() const {
        Real e = pow(Real(10), -static_cast<int>(target_digits));
        return e;
    }
    Real working_epsilon() const {
        return pow(Real(10), -static_cast<int>(working_digits()));
    }
};

class ScopedPrecision {
  public:
    explicit ScopedPrecision(unsigned digits10)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits10);
    }
    explicit ScopedPrecision(const PrecisionContext& ctx)
        : ScopedPrecision(ctx.working_digits()) {}
    ~ScopedPrecision() { Real::default_precision(saved_); }
    ScopedPrecision(const ScopedPrecision&) = delete;
    ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  private:
    unsigned saved_;
};

inline Real to_real(const Rational& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

// pi at the current default precision
inline Real const_pi() {
    Real p;
    mpfr_const_pi(p.backend().data(), MPFR_RNDN);
    return p;
}

// Minimal complex type over Real; mpc is not available in this toolchain.
struct Complex {
    Real re, im;

    Complex() : re(0), im(0) {}
    Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    Complex(int n) : re(n), im(0) {}  // NOLINT(google-explicit-constructor)
    Complex(long n) : re(n), im(0) {}  // NOLINT(google-explicit-constructor)
    explicit Complex(const Rational& q) : re(to_real(q)), im(0) {}

    bool is_real() const { return im == 0; }

    Complex& operator+=(const Complex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Complex& operator*=(const Complex& o) {
        Real r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    Complex& operator/=(const Complex& o) {
        Real d = o.re * o.re + o.im * o.im;
        if (d == 0) throw DomainError("complex division by zero");
        Real r = (re * o.re + im * o.im) / d;
        im = (im * o.re - re * o.im) / d;
        re = std::move(r);
        return *this;
    }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
inline bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

inline Real abs(const Complex& z) {
    return sqrt(z.re * z.re + z.im * z.im);
}
inline Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

inline Complex log(const Complex& z) {
    if (z.re == 0 && z.im == 0) throw DomainError("log(0)");
    return Complex(Real(0.5) * boost::multiprecision::log(z.re * z.re + z.im * z.im),
                   atan2(z.im, z.re));
}
inline Complex exp(const Complex& z) {
    Real m = boost::multiprecision::exp(z.re);
    return Complex(m * cos(z.im), m * sin(z.im));
}
inline Complex pow(const Complex& z, const Complex& w) {
    if (z.re == 0 && z.im == 0) {
        if (w.re > 0) return Complex(Real(0));
        throw DomainError("0 to non-positive power");
    }
    return exp(w * log(z));
}

inline std::string to_string(const Complex& z, unsigned digits = 0) {
    auto fmt = [&](const Real& x) {
        return digits ? x.str(digits) : x.str();
    };
    if (z.im == 0) return fmt(z.re);
    return fmt(z.re) + (z.im < 0 ? "-" : "+") + fmt(boost::multiprecision::abs(z.im)) + "i";
}

}  // namespace hypid
