#pragma once

#include "hypid/numbers.hpp"

#include <vector>

namespace hypid {

// Exact Bernoulli numbers B_0, B_1, B_2, ... (B_1 = -1/2); cached, thread-safe.
const Rational& bernoulli(unsigned n);

// Gamma via argument shifting into the Stirling region.  Throws PoleError
// within tolerance 10^(-working+5) of a non-positive integer.
Complex gamma(const Complex& z, const PrecisionContext& ctx);
Real gamma(const Real& x, const PrecisionContext& ctx);
Complex log_gamma(const Complex& z, const PrecisionContext& ctx);

// Digamma, needed for limit diagnostics; same shifting strategy.
Complex digamma(const Complex& z, const PrecisionContext& ctx);

// Rising factorial (a)_n.  Negative n means (a)_{-m} = 1/(a-m)_m.
template <class T>
T pochhammer(const T& a, long n) {
    if (n >= 0) {
        T r(1);
        for (long j = 0; j < n; ++j) r *= a + T(j);
        return r;
    }
    T r(1);
    for (long j = 0; j < -n; ++j) r *= a - T(j + 1);
    if (r == T(0)) throw PoleError("pochhammer with negative index hits zero");
    return T(1) / r;
}

// collapse boost expression templates before dispatching
template <class Tag, class A1, class A2, class A3, class A4>
auto pochhammer(
    const boost::multiprecision::detail::expression<Tag, A1, A2, A3, A4>& a,
    long n) {
    using Result = typename boost::multiprecision::detail::expression<
        Tag, A1, A2, A3, A4>::result_type;
    return pochhammer(Result(a), n);
}

template <class T>
T pochhammer_vec(const std::vector<T>& h, const std::vector<long>& p) {
    if (h.size() != p.size())
        throw DomainError("pochhammer_vec: length mismatch");
    T r(1);
    for (size_t i = 0; i < h.size(); ++i) r *= pochhammer(h[i], p[i]);
    return r;
}

// (z/m, (z+1)/m, ..., (z+m-1)/m)
template <class T>
std::vector<T> delta_split(const T& z, long m) {
    if (m < 1) throw DomainError("delta_split: m must be >= 1");
    std::vector<T> out;
    out.reserve(m);
    for (long j = 0; j < m; ++j) out.push_back((z + T(j)) / T(m));
    return out;
}

// prod Gamma(num_i) / prod Gamma(den_j), exact: every numerator entry must
// pair with a denominator entry at integer offset, Gamma(x)/Gamma(y) = (y)_{x-y}.
Rational gamma_ratio(std::vector<Rational> num, std::vector<Rational> den);

// Same ratio in floating point, no pairing requirement.
Complex gamma_ratio(const std::vector<Complex>& num,
                    const std::vector<Complex>& den,
                    const PrecisionContext& ctx);

bool is_nonpositive_integer(const Rational& q);
// n with q == -n when q is a non-positive integer, else -1.
long nonpositive_integer_index(const Rational& q);

}  // namespace hypid
