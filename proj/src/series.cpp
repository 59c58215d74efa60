#include "hypid/series.hpp"

#include <algorithm>

namespace hypid {

long termination_index(const std::vector<Rational>& upper) {
    long best = -1;
    for (const auto& a : upper) {
        long n = nonpositive_integer_index(a);
        if (n >= 0 && (best < 0 || n < best)) best = n;
    }
    return best;
}

long termination_index(const std::vector<Complex>& upper) {
    long best = -1;
    for (const auto& a : upper) {
        if (a.im != 0) continue;
        if (a.re > 0 || a.re != boost::multiprecision::floor(a.re)) continue;
        long n = -static_cast<long>(a.re);
        if (best < 0 || n < best) best = n;
    }
    return best;
}

EvalResult<Rational> eval_series(
    const std::vector<Rational>& upper, const std::vector<Rational>& lower,
    const Rational& x, const std::optional<Polynomial<Rational>>& characteristic) {
    long N = termination_index(upper);
    if (N < 0) throw DivergentSeries("exact mode needs a terminating series");
    Rational acc(0), base(1);
    for (long n = 0; n <= N; ++n) {
        acc += characteristic ? base * (*characteristic)(Rational(n)) : base;
        if (n == N) break;
        Rational num(1), den(1);
        for (const auto& a : upper) num *= a + n;
        for (const auto& b : lower) den *= b + n;
        if (den == 0) throw LowerParamPole("lower parameter pole before termination");
        base = base * num / (den * (n + 1)) * x;
    }
    return {acc, N + 1, true, Rational(0)};
}

namespace {

// Coefficients e_j of the large-n expansion t_n ~ sum_j e_j n^{-sigma-j}
// (e_0 = 1), from matching t_{n+1} den(n) = t_n num(n) order by order.
// At order r the new unknown e_{r-1} enters with coefficient (1-r) d_0.
std::vector<Complex> tail_coefficients(const Polynomial<Complex>& num,
                                       const Polynomial<Complex>& den,
                                       const Complex& sigma, size_t count) {
    const long D = den.degree();
    auto dk = [&](long k) { return k <= D ? den[D - k] : Complex(0); };
    auto mk = [&](long k) { return k <= D ? num[D - k] : Complex(0); };
    std::vector<Complex> e{Complex(1)};
    for (size_t r = 2; r <= count; ++r) {
        Complex known(0);
        for (size_t j = 0; j + 2 <= r; ++j) {
            Complex inner = mk(r - j);
            Complex binom(1);  // C(-sigma-j, l)
            for (size_t l = 0; l <= r - j; ++l) {
                if (l > 0) binom *= (-sigma - Complex((long)(j + l)) + Complex(1)) / Complex((long)l);
                inner -= binom * dk(r - j - l);
            }
            known += e[j] * inner;
        }
        e.push_back(known / (Complex(1 - (long)r) * dk(0)));
    }
    return e;
}

struct RatioPolys {
    Polynomial<Complex> num, den;
};

RatioPolys term_ratio_polys(const std::vector<Complex>& upper,
                            const std::vector<Complex>& lower,
                            const std::optional<Polynomial<Complex>>& P) {
    // t_{n+1}/t_n = num(n)/den(n) for the unit-argument series.
    Polynomial<Complex> num = Polynomial<Complex>::constant(Complex(1));
    Polynomial<Complex> den = Polynomial<Complex>::linear(Complex(1), Complex(1));
    for (const auto& a : upper) num = num * Polynomial<Complex>::linear(a, Complex(1));
    for (const auto& b : lower) den = den * Polynomial<Complex>::linear(b, Complex(1));
    if (P) {
        num = num * P->compose_affine(Complex(1), Complex(1));
        den = den * *P;
    }
    return {num, den};
}

}  // namespace

Complex hurwitz_zeta(const Complex& s, const Real& a, const PrecisionContext& ctx) {
    if (a <= 0) throw DomainError("hurwitz_zeta: a must be positive");
    if (s.re <= 1) throw DivergentSeries("hurwitz_zeta: Re(s) <= 1");
    const unsigned wd = ctx.working_digits();
    Real eps = ctx.working_epsilon();
    Real target = (std::max)(Real(wd) * Real(2) / Real(5) + 10, 2 * abs(s));
    long M = 0;
    if (a < target) M = static_cast<long>(boost::multiprecision::ceil(target - a));
    Complex acc(Real(0));
    for (long k = 0; k < M; ++k) acc += pow(Complex(a + k), -s);
    Complex A(a + M);
    acc += pow(A, Complex(1) - s) / (s - Complex(1)) + pow(A, -s) * Complex(Real(0.5));
    Complex A2 = A * A;
    Complex poch_s = s;                       // (s)_{2j-1}
    Complex apow = pow(A, -s - Complex(1));   // A^{-s-2j+1}
    Real prev = -1;
    for (unsigned j = 1; j <= 4 * wd; ++j) {
        Complex term = Complex(to_real(bernoulli(2 * j))) /
                       Complex(to_real(pochhammer(Rational(1), (long)(2 * j)))) *
                       poch_s * apow;
        Real mag = abs(term);
        if (prev >= 0 && mag > prev) break;  // asymptotic turnaround
        acc += term;
        // acc carries the nonzero leading terms, so this test is relative:
        // the value itself can be far below 1 when s is large
        if (mag < eps * abs(acc)) break;
        prev = mag;
        poch_s *= (s + Complex((long)(2 * j - 1))) * (s + Complex((long)(2 * j)));
        apow /= A2;
    }
    return acc;
}

namespace {

// Tail sum_{n >= N} t_n of a unit-argument series with algebraic decay,
// given t_N; zeta-accelerated via the asymptotic expansion of t_n.
Complex unit_tail(const RatioPolys& rp, const Complex& sigma, const Complex& tN,
                  long N, const PrecisionContext& ctx) {
    const unsigned wd = ctx.working_digits();
    Real eps = ctx.working_epsilon();
    size_t count = 8 + static_cast<size_t>(
        Real(wd) * boost::multiprecision::log(Real(10)) /
        boost::multiprecision::log(Real(N)));
    std::vector<Complex> e = tail_coefficients(rp.num, rp.den, sigma, count);
    // Magnitudes of e_j N^{-j} (the N^{-sigma} factor is common).  The
    // expansion is asymptotic, so truncate at the globally smallest term
    // unless the terms reach the precision goal first; a single small
    // coefficient must not cut the sum short.
    std::vector<Real> mag(e.size());
    {
        Real npow(1);
        for (size_t j = 0; j < e.size(); ++j) {
            mag[j] = abs(e[j]) / npow;
            npow *= N;
        }
    }
    size_t use = 1, best = 0;
    for (size_t j = 1; j < e.size(); ++j)
        if (mag[j] < mag[best]) best = j;
    use = best + 1;
    for (size_t j = 0; j < e.size(); ++j) {
        if (mag[j] < eps * mag[0]) {
            use = j + 1;
            break;
        }
    }
    Complex basis(0), tail(0);
    Real npow(1);
    for (size_t j = 0; j < use; ++j) {
        basis += e[j] / Complex(npow);
        tail += e[j] * hurwitz_zeta(sigma + Complex((long)j), Real(N), ctx);
        npow *= N;
    }
    if (basis == Complex(0)) throw DomainError("tail calibration failed");
    // tN = scale * N^{-sigma} * basis
    return tN * pow(Complex(Real(N)), sigma) / basis * tail;
}

}  // namespace

EvalResult<Complex> eval_series(
    const std::vector<Complex>& upper, const std::vector<Complex>& lower,
    const Complex& x, const PrecisionContext& ctx,
    const std::optional<Polynomial<Complex>>& characteristic, long terminate_at) {
    long N = terminate_at == -2 ? termination_index(upper) : terminate_at;
    Real eps = ctx.working_epsilon();
    auto char_at = [&](long n) {
        return characteristic ? (*characteristic)(Complex(n)) : Complex(1);
    };
    auto step = [&](Complex& base, long n) {
        Complex num(1), den(1);
        for (const auto& a : upper) num *= a + Complex(n);
        for (const auto& b : lower) {
            Complex f = b + Complex(n);
            if (f == Complex(0)) throw LowerParamPole("lower parameter pole");
            den *= f;
        }
        base = base * num / (den * Complex(n + 1)) * x;
    };

    if (N >= 0) {
        Complex acc(0), base(1);
        for (long n = 0; n <= N; ++n) {
            acc += base * char_at(n);
            if (n < N) step(base, n);
        }
        return {acc, N + 1, true, Complex(0)};
    }

    Real ax = abs(x);
    if (ax < 1) {
        Complex acc(0), base(1);
        long quiet = 0;
        for (long n = 0;; ++n) {
            Complex term = base * char_at(n);
            acc += term;
            if (base == Complex(0)) return {acc, n + 1, true, Complex(0)};
            quiet = abs(term) < eps * (abs(acc) + 1) ? quiet + 1 : 0;
            if (quiet >= 3 && n > 20) {
                Real bound = abs(term) * ax / (1 - ax);
                return {acc, n + 1, false, Complex(bound)};
            }
            if (n > 2000000) throw DivergentSeries("series did not converge");
            step(base, n);
        }
    }
    if (x != Complex(1))
        throw DivergentSeries("argument outside convergence region");

    // x = 1: algebraic tail
    RatioPolys rp = term_ratio_polys(upper, lower, characteristic);
    if (rp.num.degree() > rp.den.degree())
        throw DivergentSeries("parametric excess too small at unit argument");
    if (rp.num.degree() < rp.den.degree()) {
        // superlinear decay: direct summation
        Complex acc(0), base(1);
        long quiet = 0;
        for (long n = 0;; ++n) {
            Complex term = base * char_at(n);
            acc += term;
            if (base == Complex(0)) return {acc, n + 1, true, Complex(0)};
            quiet = abs(term) < eps * (abs(acc) + 1) ? quiet + 1 : 0;
            if (quiet >= 3 && n > 20) return {acc, n + 1, false, Complex(abs(term))};
            if (n > 2000000) throw DivergentSeries("series did not converge");
            step(base, n);
        }
    }
    long D = rp.den.degree();
    Complex d0 = rp.den.leading();
    Complex sigma = (rp.den[D - 1] - rp.num[D - 1]) / d0;
    if (sigma.re <= 1 + Real(1) / 1000)
        throw DivergentSeries("parametric excess too small at unit argument");

    Real maxp(1);
    for (const auto& a : upper) maxp = (std::max)(maxp, abs(a));
    for (const auto& b : lower) maxp = (std::max)(maxp, abs(b));
    // The expansion behind unit_tail loses accuracy when the cut is not well
    // clear of the largest parameter, and the deficit compounds with the
    // precision goal, so the cut grows with both.
    long mp = maxp.convert_to<long>() + 1;
    long start = std::max({64L, (long)ctx.working_digits() + 16 * mp,
                           4 * mp + 8});
    for (int attempt = 0; attempt < 3; ++attempt, start *= 2) {
        Complex acc(0), base(1);
        long n = 0;
        for (; n < start; ++n) {
            acc += base * char_at(n);
            if (base == Complex(0)) return {acc, n + 1, true, Complex(0)};
            step(base, n);
        }
        Complex tN = base * char_at(n);
        if (tN == Complex(0)) continue;  // characteristic root; shift the cut
        Complex tail = unit_tail(rp, sigma, tN, n, ctx);
        return {acc + tail, n, false, Complex(abs(tail) * eps)};
    }
    throw DivergentSeries("unit-argument tail did not stabilize");
}

EvalResult<Rational> eval_phf(const SeriesSpec& spec) {
    return eval_series(spec.upper, spec.lower, spec.argument, spec.characteristic);
}

EvalResult<Complex> eval_phf(const SeriesSpec& spec, const PrecisionContext& ctx) {
    std::vector<Complex> up, lo;
    for (const auto& a : spec.upper) up.emplace_back(a);
    for (const auto& b : spec.lower) lo.emplace_back(b);
    std::optional<Polynomial<Complex>> P;
    if (spec.characteristic) P = to_complex(*spec.characteristic);
    return eval_series(up, lo, Complex(spec.argument), ctx, P);
}

Rational master_lhs(const TransformSpec& t, const std::vector<Rational>& a,
                    const std::vector<Rational>& b) {
    std::vector<Rational> up = t.alpha, lo = t.beta;
    for (const auto& ai : a) {
        auto d = delta_split(ai, t.w);
        up.insert(up.end(), d.begin(), d.end());
    }
    for (const auto& bi : b) {
        auto d = delta_split(bi, t.w);
        lo.insert(lo.end(), d.begin(), d.end());
    }
    return eval_series(up, lo, t.M).value;
}

Rational master_rhs(const TransformSpec& t, const std::vector<Rational>& a,
                    const std::vector<Rational>& b) {
    // K = first outer index whose coefficient vanishes (delta or (a)_{uk})
    long K = -1;
    for (const auto& d : t.delta) {
        long n = nonpositive_integer_index(d);
        if (n >= 0 && (K < 0 || n + 1 < K)) K = n + 1;
    }
    for (const auto& ai : a) {
        long n = nonpositive_integer_index(ai);
        if (n < 0) continue;
        long k = (n + t.u) / t.u;  // ceil((n+1)/u)
        if (K < 0 || k < K) K = k;
    }
    if (K < 0) throw DivergentSeries("outer sum of the double series does not terminate");
    Rational acc(0), coeff(1);
    for (long k = 0; k < K; ++k) {
        if (coeff != 0) {
            std::vector<Rational> up{-t.lambda + Rational(t.v * k)}, lo;
            for (const auto& ai : a) up.push_back(ai + Rational(t.u * k));
            for (const auto& bi : b) lo.push_back(bi + Rational(t.u * k));
            acc += coeff * eval_series(up, lo, Rational(1)).value;
        }
        Rational num(1), den(1);
        for (const auto& d : t.delta) num *= d + k;
        for (const auto& g : t.gamma) den *= g + k;
        for (const auto& ai : a)
            for (long j = 0; j < t.u; ++j) num *= ai + Rational(t.u * k + j);
        for (const auto& bi : b)
            for (long j = 0; j < t.u; ++j) den *= bi + Rational(t.u * k + j);
        if (den == 0) throw LowerParamPole("outer coefficient pole");
        coeff = coeff * num / (den * (k + 1)) * t.D;
    }
    return acc;
}

}  // namespace hypid
