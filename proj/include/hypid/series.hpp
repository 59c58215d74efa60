#pragma once

#include "hypid/gammafn.hpp"
#include "hypid/polynomial.hpp"

#include <optional>
#include <vector>

namespace hypid {

template <class T>
struct EvalResult {
    T value{};
    long terms_used = 0;
    bool terminated = false;
    std::optional<T> tail_bound;  // 0 when terminated
};

struct SeriesSpec {
    std::vector<Rational> upper, lower;
    std::optional<Polynomial<Rational>> characteristic;
    Rational argument = Rational(1);
};

// sum(lower) - sum(upper)
template <class T>
T parametric_excess(const std::vector<T>& upper, const std::vector<T>& lower) {
    T s(0);
    for (const auto& b : lower) s += b;
    for (const auto& a : upper) s -= a;
    return s;
}

// Smallest n such that all terms beyond n vanish via a non-positive-integer
// upper parameter; -1 when none.  Characteristic roots never count.
long termination_index(const std::vector<Rational>& upper);
long termination_index(const std::vector<Complex>& upper);

// Exact mode: requires a terminating series; a vanishing lower-parameter
// factor before termination is an error.
EvalResult<Rational> eval_series(
    const std::vector<Rational>& upper, const std::vector<Rational>& lower,
    const Rational& x,
    const std::optional<Polynomial<Rational>>& characteristic = std::nullopt);

// Float mode: terminating, |x| < 1, or x == 1 with parametric excess
// exceeding the characteristic degree (tail summed by zeta acceleration).
EvalResult<Complex> eval_series(
    const std::vector<Complex>& upper, const std::vector<Complex>& lower,
    const Complex& x, const PrecisionContext& ctx,
    const std::optional<Polynomial<Complex>>& characteristic = std::nullopt,
    long terminate_at = -2 /* -2: detect, -1: force non-terminating */);

// Convenience wrappers over a SeriesSpec.
EvalResult<Rational> eval_phf(const SeriesSpec& spec);
EvalResult<Complex> eval_phf(const SeriesSpec& spec, const PrecisionContext& ctx);

// Hurwitz zeta, Re(s) > 1, a > 0; Euler-Maclaurin.
Complex hurwitz_zeta(const Complex& s, const Real& a, const PrecisionContext& ctx);

// Data of a transformation F(alpha, Delta(a,w); beta, Delta(b,w) | M)
// = sum_k (delta)_k (a)_{uk} D^k / ((gamma)_k (b)_{uk} k!) F(-lambda+vk, a+uk; b+uk | 1).
struct TransformSpec {
    std::vector<Rational> alpha, beta, delta, gamma;
    Rational lambda;
    long w = 1;
    long u = 1;
    long v = 0;
    Rational M;
    Rational D;
};

Rational master_lhs(const TransformSpec& t, const std::vector<Rational>& a,
                    const std::vector<Rational>& b);
Rational master_rhs(const TransformSpec& t, const std::vector<Rational>& a,
                    const std::vector<Rational>& b);

}  // namespace hypid
