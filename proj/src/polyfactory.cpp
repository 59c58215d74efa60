#include "hypid/polyfactory.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <complex>

namespace hypid {

namespace {

Rational factorial(long n) {
    Rational r(1);
    for (long j = 2; j <= n; ++j) r *= j;
    return r;
}

long sum_of(const IVec& v) {
    long s = 0;
    for (long x : v) s += x;
    return s;
}

// inner terminating F used throughout Y_p: F(-j, 1-h+d; 1-h+d-p | 1)
Rational y_inner_f(long j, const Rational& d, const QVec& h, const IVec& p) {
    QVec up{Rational(-j)}, lo;
    for (size_t i = 0; i < h.size(); ++i) {
        up.push_back(1 - h[i] + d);
        lo.push_back(1 - h[i] + d - p[i]);
    }
    return eval_series(up, lo, Rational(1)).value;
}

}  // namespace

QPoly y_poly_core(long u, long v, const Rational& d, const Rational& e,
                  const Rational& lambda, const QVec& h, const IVec& p) {
    if (h.size() != p.size()) throw DomainError("y_poly_core: length mismatch");
    const long P = sum_of(p);
    QPoly acc;  // zero
    for (long j = 0; j <= P; ++j) {
        Rational c = pochhammer(d - e + 1, j) / factorial(j) * y_inner_f(j, d, h, p);
        QPoly term = QPoly::poch_linear(Rational(u), d, j) *
                     QPoly::poch_linear(Rational(v), d - e - lambda + j + 1, P - j);
        acc += term.scaled(c);
    }
    Rational pref(1);
    for (size_t i = 0; i < h.size(); ++i) pref *= pochhammer(h[i] - d, p[i]);
    return acc.scaled(pref);
}

QPoly y_poly(long u, long v, const Rational& d, const Rational& e,
             const Rational& lambda, const QVec& h, const IVec& p) {
    Rational w = e - d;
    if (!(denominator(w) == 1 && w > 0))
        throw PoleError("y_poly: e-d must be a positive integer in exact mode");
    return y_poly_core(u, v, d, e, lambda, h, p)
        .scaled(1 / factorial(static_cast<long>(numerator(w)) - 1));
}

std::pair<QPoly, Rational> y1_closed(long u, long v, const Rational& d,
                                     const Rational& e, const Rational& lambda,
                                     const Rational& h) {
    Rational w = e - d;
    if (!(denominator(w) == 1 && w > 0))
        throw PoleError("y1_closed: e-d must be a positive integer in exact mode");
    Rational g = factorial(static_cast<long>(numerator(w)) - 1);
    Rational lead = (Rational(v) * (h - d) - Rational(u) * (e - d - 1)) / g;
    if (lead == 0)
        throw DegenerateLeadingCoefficient("y1_closed: vanishing t-coefficient");
    Rational c0 = -((h - d) * lambda + (e - d - 1) * h) / g;
    Rational root = ((h - d) * lambda + (e - d - 1) * h) /
                    ((h - d) * v - (e - d - 1) * u);
    return {QPoly({c0, lead}), root};
}

QPoly q3r_poly(long r, const Rational& alpha, const Rational& beta) {
    Rational den = pochhammer(Rational(1, 2) + beta, r) *
                   pochhammer(Rational(1, 2) - beta, r);
    if (den == 0) throw PoleError("q3r_poly: singular Pochhammer denominator");
    // a1 = (1/2 - r + beta - x)/2, a2 = (1/2 - r - beta - x)/2
    Rational b1 = (Rational(1, 2) - r + beta) / 2, b2 = (Rational(1, 2) - r - beta) / 2;
    QPoly acc;
    for (long k = 0; k <= r; ++k) {
        Rational c = pochhammer(Rational(-r), k) / factorial(k);
        QPoly term = QPoly::poch_linear(Rational(-1), Rational(0), k) *
                     QPoly::poch_linear(Rational(1, 2), alpha / 2, k) *
                     QPoly::poch_linear(Rational(-1, 2), b1 + k, r - k) *
                     QPoly::poch_linear(Rational(-1, 2), b2 + k, r - k);
        acc += term.scaled(c);
    }
    Rational four_r(1);
    for (long j = 0; j < r; ++j) four_r *= 4;
    return acc.scaled(four_r / den);
}

Rational beta_l(long l, const Rational& b, const QVec& f, const IVec& m) {
    return sigma_ql(1, l, b, f, m);
}

Rational sigma_ql(long q, long l, const Rational& b, const QVec& f, const IVec& m) {
    if (f.size() != m.size()) throw DomainError("sigma_ql: length mismatch");
    Rational fm(1), fmb(1);
    for (size_t i = 0; i < f.size(); ++i) {
        fm *= pochhammer(f[i], m[i]);
        fmb *= pochhammer(f[i] - b - q + 1, m[i]);
    }
    if (fm == 0) throw PoleError("sigma_ql: (f)_m vanishes");
    QVec up{Rational(-l), b + q - 1}, lo{b + q};
    for (size_t i = 0; i < f.size(); ++i) {
        up.push_back(f[i] + m[i]);
        lo.push_back(f[i]);
    }
    Rational sgn = l % 2 ? Rational(-1) : Rational(1);
    return sgn * (eval_series(up, lo, Rational(1)).value / factorial(l) -
                  fmb / (pochhammer(b + q, l) * fm));
}

QPoly t_poly(long k, const Rational& a, const Rational& b, const QVec& f,
             const IVec& m) {
    QPoly acc;
    for (long q = 1; q <= k; ++q) {
        Rational c = (q % 2 ? Rational(1) : Rational(-1));
        for (size_t i = 0; i < f.size(); ++i) c *= pochhammer(f[i] - b - q + 1, m[i]);
        c *= gamma_ratio({b + q - 1}, {b + q - a});
        c /= factorial(q - 1) * factorial(k - q);
        acc += (QPoly::poch_linear(Rational(1), b + q, k - q) *
                QPoly::poch_linear(Rational(1), b + 1 - a, q - 1))
                   .scaled(c);
    }
    return acc;
}

QPoly lhat_poly(const Rational& a, const Rational& g, const Rational& c,
                const Rational& b, const QVec& f, const IVec& m) {
    const long M = sum_of(m);
    Rational lam = c - a - g - M + 1;
    Rational ca = c - a - M + 1, cg = c - g - M + 1;
    if (pochhammer(ca, M - 1) == 0 || pochhammer(cg, M - 1) == 0)
        throw PoleError("lhat_poly: singular lower Pochhammer");
    QPoly acc;
    for (long l = 0; l < M; ++l) {
        Rational cl = (l % 2 ? Rational(-1) : Rational(1)) * beta_l(l, b, f, m) *
                      pochhammer(a, l) * pochhammer(g, l) /
                      (pochhammer(ca, l) * pochhammer(cg, l));
        // F(-M+1+l, t+l, lam; ca+l, cg+l | 1), polynomial in t
        for (long kk = 0; kk <= M - 1 - l; ++kk) {
            Rational ck = cl * pochhammer(Rational(-M + 1 + l), kk) *
                          pochhammer(lam, kk) /
                          (pochhammer(ca + l, kk) * pochhammer(cg + l, kk) *
                           factorial(kk));
            acc += (QPoly::poch_linear(Rational(1), Rational(0), l) *
                    QPoly::poch_linear(Rational(1), Rational(l), kk))
                       .scaled(ck);
        }
    }
    return acc;
}

QPoly p_big_m(long q, const Rational& gamma, const Rational& beta, const QVec& a,
              const QVec& b) {
    if (is_nonpositive_integer(gamma)) throw PoleError("p_big_m: gamma pole");
    QPoly acc;
    for (long k = 0; k <= q; ++k) {
        Rational c = pochhammer(Rational(-q), k) * pochhammer(gamma - beta, k) /
                     (pochhammer(gamma, k) * factorial(k));
        QPoly term = QPoly::constant(Rational(1));
        for (const auto& ai : a) term = term * QPoly::poch_linear(Rational(1), ai, k);
        for (const auto& bi : b)
            term = term * QPoly::poch_linear(Rational(1), bi + k, q - k);
        acc += term.scaled(c);
    }
    return acc;
}

QPoly r_big_m(long q, const Rational& alpha, const Rational& gamma, const QVec& a,
              const QVec& b) {
    if (is_nonpositive_integer(gamma)) throw PoleError("r_big_m: gamma pole");
    QPoly acc;
    for (long k = 0; k <= q; ++k) {
        Rational c = pochhammer(Rational(-q), k) /
                     (pochhammer(gamma, k) * factorial(k));
        if (k % 2) c = -c;
        QPoly term = QPoly::poch_linear(Rational(1), alpha, k);
        for (const auto& ai : a) term = term * QPoly::poch_linear(Rational(1), ai, k);
        for (const auto& bi : b)
            term = term * QPoly::poch_linear(Rational(1), bi + k, q - k);
        acc += term.scaled(c);
    }
    return acc;
}

QPoly q_big_m(long q, long r, const Rational& beta, const Rational& delta,
              const QVec& a, const QVec& b) {
    Rational alpha = beta + delta + r - q - 1;
    Rational l1 = delta + r - q, l2 = beta + r - q;
    QPoly acc;
    for (long k = 0; k <= q; ++k) {
        Rational c = pochhammer(Rational(-q), k) /
                     (pochhammer(l1, k) * pochhammer(l2, k) * factorial(k));
        if (k % 2) c = -c;  // Delta(alpha+x,2) pair at argument -4 leaves (-1)^k
        QPoly term = QPoly::poch_linear(Rational(1), alpha, 2 * k);
        for (const auto& ai : a) term = term * QPoly::poch_linear(Rational(1), ai, k);
        for (const auto& bi : b)
            term = term * QPoly::poch_linear(Rational(1), bi + k, q - k);
        acc += term.scaled(c);
    }
    return acc;
}

QPoly p2r_poly(long r, const Rational& alpha, const Rational& beta,
               const Rational& delta) {
    if (pochhammer(beta, r) == 0 || pochhammer(delta, r) == 0)
        throw PoleError("p2r_poly: lower parameter pole");
    QPoly acc;
    for (long k = 0; k <= r; ++k) {
        Rational c = pochhammer(Rational(-r), k) /
                     (pochhammer(beta, k) * pochhammer(delta, k) * factorial(k));
        acc += (QPoly::poch_linear(Rational(-1), Rational(0), k) *
                QPoly::poch_linear(Rational(1), alpha, k))
                   .scaled(c);
    }
    return acc;
}

namespace {

Complex poly_eval(const Polynomial<Complex>& p, const Complex& z) { return p(z); }

}  // namespace

RootSet roots(const Polynomial<Complex>& poly, const PrecisionContext& ctx) {
    const long n = poly.degree();
    if (n < 1) throw DegenerateDegree("roots: constant polynomial");
    // companion matrix at machine precision for seeds
    using CMat = Eigen::MatrixXcd;
    CMat comp = CMat::Zero(n, n);
    std::complex<double> lead(poly.leading().re.convert_to<double>(),
                              poly.leading().im.convert_to<double>());
    for (long i = 0; i < n; ++i) {
        std::complex<double> ci(poly[i].re.convert_to<double>(),
                                poly[i].im.convert_to<double>());
        comp(i, n - 1) = -ci / lead;
        if (i > 0) comp(i, i - 1) = 1.0;
    }
    Eigen::ComplexEigenSolver<CMat> es(comp, false);
    Polynomial<Complex> dp = poly.derivative();
    Real tol = pow(Real(10), -static_cast<int>(ctx.working_digits()) + 3);
    std::vector<Complex> out;
    for (long i = 0; i < n; ++i) {
        std::complex<double> seed = es.eigenvalues()(i);
        Complex z(Real(seed.real()), Real(seed.imag()));
        for (int it = 0; it < 300; ++it) {
            Complex fz = poly_eval(poly, z);
            Complex fpz = poly_eval(dp, z);
            if (abs(fpz) == 0) break;
            Complex step = fz / fpz;
            z -= step;
            if (abs(step) < tol * (abs(z) + 1)) break;
        }
        out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](const Complex& a, const Complex& b) {
        return a.re < b.re || (a.re == b.re && a.im < b.im);
    });
    // multiplicity clustering: collapse near-coincident roots to their mean
    Real ctol = pow(Real(10), -static_cast<int>(ctx.target_digits) / 2);
    for (size_t i = 0; i + 1 < out.size();) {
        if (abs(out[i] - out[i + 1]) < ctol * (abs(out[i]) + 1)) {
            Complex mean = (out[i] + out[i + 1]) / Complex(Real(2));
            out[i] = mean;
            out[i + 1] = mean;
            i += 2;
        } else {
            ++i;
        }
    }
    return {out};
}

RootSet roots(const QPoly& poly, const PrecisionContext& ctx) {
    return roots(to_complex(poly), ctx);
}

ShiftPairs to_shift_pairs(const Polynomial<Complex>& poly,
                          const PrecisionContext& ctx) {
    Complex scale = poly(Complex(Real(0)));
    if (scale == Complex(Real(0)))
        throw ZeroConstantTerm("to_shift_pairs: P(0) = 0");
    ShiftPairs sp;
    sp.scale = scale;
    if (poly.degree() == 0) return sp;
    RootSet rs = roots(poly, ctx);
    Real tol = pow(Real(10), -static_cast<int>(ctx.target_digits) / 2);
    for (const auto& lam : rs.roots) {
        Real nearest = boost::multiprecision::floor(lam.re + Real("0.5"));
        if (nearest >= 0 && abs(lam - Complex(nearest)) < tol)
            throw IntegerRoot("to_shift_pairs: root at non-negative integer " +
                              to_string(lam, 6));
        sp.upper.push_back(Complex(Real(1)) - lam);
        sp.lower.push_back(-lam);
    }
    return sp;
}

ShiftPairs to_shift_pairs(const QPoly& poly, const PrecisionContext& ctx) {
    return to_shift_pairs(to_complex(poly), ctx);
}

}  // namespace hypid
