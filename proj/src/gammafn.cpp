#include "hypid/gammafn.hpp"

#include <algorithm>
#include <mutex>

namespace hypid {

namespace {

std::vector<Rational> g_bernoulli{Rational(1), Rational(-1, 2)};
std::mutex g_bernoulli_mu;

// B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1,k) B_k
void grow_bernoulli(unsigned n) {
    for (unsigned m = g_bernoulli.size(); m <= n; ++m) {
        if (m % 2 == 1) {
            g_bernoulli.emplace_back(0);
            continue;
        }
        Rational s(0);
        Integer binom(1);  // C(m+1, k), starting at k=0
        for (unsigned k = 0; k < m; ++k) {
            s += Rational(binom) * g_bernoulli[k];
            binom = binom * (m + 1 - k) / (k + 1);
        }
        g_bernoulli.push_back(-s / Rational(m + 1));
    }
}

}  // namespace

const Rational& bernoulli(unsigned n) {
    std::lock_guard<std::mutex> lk(g_bernoulli_mu);
    if (n >= g_bernoulli.size()) grow_bernoulli(n);
    return g_bernoulli[n];
}

bool is_nonpositive_integer(const Rational& q) {
    return denominator(q) == 1 && q <= 0;
}

long nonpositive_integer_index(const Rational& q) {
    if (!is_nonpositive_integer(q)) return -1;
    return static_cast<long>(-numerator(q));
}

namespace {

// log Gamma in the Stirling region Re(z) >= threshold.
Complex stirling_log_gamma(const Complex& z, const PrecisionContext& ctx) {
    const unsigned wd = ctx.working_digits();
    Real half_log_2pi = Real(0.5) * boost::multiprecision::log(
                            2 * const_pi());
    Complex lz = log(z);
    Complex acc = (z - Complex(Real(0.5))) * lz - z + Complex(half_log_2pi);
    Complex z2 = z * z;
    Complex zpow = z;  // z^(2k-1)
    Real eps = ctx.working_epsilon();
    for (unsigned k = 1; k <= 4 * wd; ++k) {
        Rational b = bernoulli(2 * k);
        Complex term = Complex(to_real(b / Rational(2 * k * (2 * k - 1)))) / zpow;
        acc += term;
        if (abs(term) < eps) break;
        zpow *= z2;
    }
    return acc;
}

Complex log_gamma_impl(Complex z, const PrecisionContext& ctx) {
    const unsigned wd = ctx.working_digits();
    // pole guard
    if (z.im == 0) {
        Real nearest = boost::multiprecision::floor(z.re + Real(0.5));
        if (nearest <= 0 &&
            boost::multiprecision::abs(z.re - nearest) <
                pow(Real(10), -static_cast<int>(wd) + 5))
            throw PoleError("gamma pole at non-positive integer");
    }
    // shift until Stirling converges comfortably
    Real threshold = Real(wd) * Real(2) / Real(5) + 10;
    Complex shift_log(Real(0));
    while (z.re < threshold) {
        shift_log += log(z);
        z += Complex(Real(1));
    }
    return stirling_log_gamma(z, ctx) - shift_log;
}

}  // namespace

Complex log_gamma(const Complex& z, const PrecisionContext& ctx) {
    return log_gamma_impl(z, ctx);
}

Complex gamma(const Complex& z, const PrecisionContext& ctx) {
    return exp(log_gamma_impl(z, ctx));
}

Real gamma(const Real& x, const PrecisionContext& ctx) {
    Complex g = gamma(Complex(x), ctx);
    return g.re;
}

Complex digamma(const Complex& z_in, const PrecisionContext& ctx) {
    const unsigned wd = ctx.working_digits();
    Complex z = z_in;
    if (z.im == 0) {
        Real nearest = boost::multiprecision::floor(z.re + Real(0.5));
        if (nearest <= 0 &&
            boost::multiprecision::abs(z.re - nearest) <
                pow(Real(10), -static_cast<int>(wd) + 5))
            throw PoleError("digamma pole at non-positive integer");
    }
    Real threshold = Real(wd) * Real(2) / Real(5) + 10;
    Complex acc(Real(0));
    while (z.re < threshold) {
        acc -= Complex(Real(1)) / z;
        z += Complex(Real(1));
    }
    // psi(z) ~ log z - 1/(2z) - sum B_2k / (2k z^{2k})
    acc += log(z) - Complex(Real(0.5)) / z;
    Complex z2 = z * z;
    Complex zpow = z2;
    Real eps = ctx.working_epsilon();
    for (unsigned k = 1; k <= 4 * wd; ++k) {
        Complex term = Complex(to_real(bernoulli(2 * k) / Rational(2 * k))) / zpow;
        acc -= term;
        if (abs(term) < eps) break;
        zpow *= z2;
    }
    return acc;
}

Rational gamma_ratio(std::vector<Rational> num, std::vector<Rational> den) {
    if (num.size() != den.size())
        throw DomainError("gamma_ratio: exact form needs equally many factors");
    std::sort(num.begin(), num.end());
    std::sort(den.begin(), den.end());
    std::vector<bool> used(den.size(), false);
    Rational res(1);
    for (const Rational& x : num) {
        bool found = false;
        for (size_t i = 0; i < den.size(); ++i) {
            if (used[i]) continue;
            Rational diff = x - den[i];
            if (denominator(diff) == 1) {
                // Gamma(x)/Gamma(y) = (y)_{x-y}
                res *= pochhammer(den[i], static_cast<long>(numerator(diff)));
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found)
            throw DomainError("gamma_ratio: unpairable arguments in exact mode");
    }
    return res;
}

Complex gamma_ratio(const std::vector<Complex>& num,
                    const std::vector<Complex>& den,
                    const PrecisionContext& ctx) {
    Complex acc(Real(0));
    for (const Complex& x : num) acc += log_gamma(x, ctx);
    for (const Complex& y : den) acc -= log_gamma(y, ctx);
    return exp(acc);
}

}  // namespace hypid
