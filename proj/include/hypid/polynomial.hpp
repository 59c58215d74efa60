#pragma once

#include "hypid/numbers.hpp"

#include <vector>

namespace hypid {

// Dense polynomial, coefficients in ascending degree; trailing zeros trimmed.
template <class T>
class Polynomial {
  public:
    Polynomial() : c_{T(0)} {}
    explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Polynomial constant(const T& v) { return Polynomial(std::vector<T>{v}); }
    // b + a*t
    static Polynomial linear(const T& b, const T& a) {
        return Polynomial(std::vector<T>{b, a});
    }

    long degree() const { return static_cast<long>(c_.size()) - 1; }
    bool is_zero() const { return c_.size() == 1 && c_[0] == T(0); }
    const std::vector<T>& coeffs() const { return c_; }
    const T& operator[](size_t i) const { return c_[i]; }
    const T& leading() const { return c_.back(); }

    T operator()(const T& x) const {
        T acc(0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return Polynomial();
        std::vector<T> out(c_.size() + o.c_.size() - 1, T(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(out));
    }
    Polynomial operator+(const Polynomial& o) const {
        Polynomial r = *this;
        return r += o;
    }
    Polynomial operator-(const Polynomial& o) const {
        Polynomial r = *this;
        return r -= o;
    }
    Polynomial& operator*=(const T& s) {
        for (auto& ci : c_) ci *= s;
        trim();
        return *this;
    }
    Polynomial scaled(const T& s) const {
        Polynomial r = *this;
        return r *= s;
    }

    // p(a*t + b)
    Polynomial compose_affine(const T& a, const T& b) const {
        Polynomial acc = constant(c_.back());
        Polynomial lin = linear(b, a);
        for (size_t i = c_.size() - 1; i-- > 0;) {
            acc = acc * lin;
            acc += constant(c_[i]);
        }
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() == 1) return Polynomial();
        std::vector<T> out(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * T(static_cast<long>(i));
        return Polynomial(std::move(out));
    }

    // rising-factorial polynomial (a*t + b)_n as a polynomial in t
    static Polynomial poch_linear(const T& a, const T& b, long n) {
        Polynomial acc = constant(T(1));
        for (long j = 0; j < n; ++j) acc = acc * linear(b + T(j), a);
        return acc;
    }

    template <class U, class Fn>
    Polynomial<U> map(Fn fn) const {
        std::vector<U> out;
        out.reserve(c_.size());
        for (const auto& ci : c_) out.push_back(fn(ci));
        return Polynomial<U>(std::move(out));
    }

  private:
    void trim() {
        while (c_.size() > 1 && c_.back() == T(0)) c_.pop_back();
        if (c_.empty()) c_.push_back(T(0));
    }
    std::vector<T> c_;
};

inline Polynomial<Complex> to_complex(const Polynomial<Rational>& p) {
    return p.template map<Complex>([](const Rational& q) { return Complex(q); });
}

}  // namespace hypid
