#include "hypid/catalog.hpp"

#include <algorithm>
#include <sstream>

namespace hypid {

namespace {

Rational nz(Rational q) {
    if (q == 0) throw PoleError("vanishing denominator");
    return q;
}

Rational qpow(const Rational& base, long n) {
    if (n < 0) return Rational(1) / nz(qpow(base, -n));
    Rational r(1);
    for (long j = 0; j < n; ++j) r *= base;
    return r;
}

Rational qfact(long n) {
    Rational r(1);
    for (long j = 2; j <= n; ++j) r *= j;
    return r;
}

QVec dl(const Rational& z, long m) { return delta_split(z, m); }

QVec plus(const QVec& h, const Rational& c) {
    QVec out = h;
    for (auto& v : out) v += c;
    return out;
}

QVec plusp(const QVec& h, const IVec& p) {
    QVec out = h;
    for (size_t i = 0; i < out.size(); ++i) out[i] += p[i];
    return out;
}

long isum(const IVec& p) {
    long s = 0;
    for (long v : p) s += v;
    return s;
}

// Delta(z,m)_k
Rational pochd(const Rational& z, long m, long k) {
    Rational r(1);
    for (const auto& zz : dl(z, m)) r *= pochhammer(zz, k);
    return r;
}

void qv_append(QVec&) {}
template <class T, class... R>
void qv_append(QVec& v, const T& t, const R&... rest) {
    if constexpr (std::is_same_v<std::decay_t<T>, QVec>) {
        v.insert(v.end(), t.begin(), t.end());
    } else {
        v.emplace_back(t);
    }
    qv_append(v, rest...);
}
template <class... A>
QVec qv(const A&... a) {
    QVec v;
    qv_append(v, a...);
    return v;
}

// ---------------------------------------------------------------- engines

// A non-positive-integer lower parameter makes the truncated series differ
// from the analytic limit (terms past the lower zero revive as 0/0), so such
// bindings are degenerate regardless of where the pole falls.
void require_regular_lower(const QVec& lo) {
    for (const auto& b : lo)
        if (is_nonpositive_integer(b))
            throw LowerParamPole("degenerate non-positive integer lower parameter");
}

struct ExactEngine {
    using V = Rational;
    V val(const Rational& q) const { return q; }
    V F(const QVec& up, const QVec& lo, const Rational& x,
        const std::optional<QPoly>& P = std::nullopt) const {
        require_regular_lower(lo);
        return eval_series(up, lo, x, P).value;
    }
    V gr(const QVec& num, const QVec& den) const {
        return gamma_ratio(num, den);
    }
    V power(const Rational& base, const Rational& expo) const {
        if (denominator(expo) != 1)
            throw DomainError("fractional exponent requires float mode");
        return qpow(base, expo.convert_to<long>());
    }
};

struct FloatEngine {
    const PrecisionContext* ctx;
    using V = Complex;
    V val(const Rational& q) const { return Complex(to_real(q)); }
    V F(const QVec& up, const QVec& lo, const Rational& x,
        const std::optional<QPoly>& P = std::nullopt) const {
        require_regular_lower(lo);
        std::vector<Complex> u, l;
        u.reserve(up.size());
        l.reserve(lo.size());
        for (const auto& a : up) u.emplace_back(a);
        for (const auto& b : lo) l.emplace_back(b);
        std::optional<Polynomial<Complex>> PC;
        if (P) PC = to_complex(*P);
        return eval_series(u, l, Complex(to_real(x)), *ctx, PC).value;
    }
    V gr(const QVec& num, const QVec& den) const {
        // Entries at non-positive integers are gamma poles; pair them across
        // the ratio and take the finite limit Gamma(-a)/Gamma(-b) ->
        // (-1)^(a-b) b!/a!, matching the exact engine's pairing.  A leftover
        // pole below sends the ratio to zero, above it is genuine.
        std::vector<Complex> n, d;
        std::vector<long> npole, dpole;
        for (const auto& v : num) {
            if (is_nonpositive_integer(v))
                npole.push_back(nonpositive_integer_index(v));
            else
                n.emplace_back(v);
        }
        for (const auto& v : den) {
            if (is_nonpositive_integer(v))
                dpole.push_back(nonpositive_integer_index(v));
            else
                d.emplace_back(v);
        }
        Rational lim(1);
        while (!npole.empty() && !dpole.empty()) {
            long a = npole.back(), b = dpole.back();
            npole.pop_back();
            dpole.pop_back();
            lim *= ((a + b) % 2 ? Rational(-1) : Rational(1)) * qfact(b) /
                   qfact(a);
        }
        if (!npole.empty())
            throw PoleError("gamma pole at non-positive integer");
        if (!dpole.empty()) return Complex(Real(0));
        Complex rest = n.empty() && d.empty() ? Complex(Real(1))
                                              : gamma_ratio(n, d, *ctx);
        return Complex(to_real(lim)) * rest;
    }
    V power(const Rational& base, const Rational& expo) const {
        if (base <= 0) throw DomainError("nonpositive power base");
        Real b = to_real(base);
        return Complex(exp(log(b) * to_real(expo)));
    }
};

template <class E>
using PairsOf = std::vector<std::pair<typename E::V, typename E::V>>;

template <class Fn>
void wire(IdentityCase& c, Fn fn) {
    c.exact_eval = [fn](const Binding& b) { return fn(ExactEngine{}, b); };
    c.float_eval = [fn](const Binding& b, const PrecisionContext& ctx) {
        return fn(FloatEngine{&ctx}, b);
    };
}

// ------------------------------------------------------------- evaluators

// Shifted-argument IPD summation; shared by L2 and its four displays.
void l2_lhs_terms(long u, long v, long lam, const Rational& d,
                  const Rational& e, const QVec& h, const IVec& p, long k,
                  QVec& up, QVec& lo) {
    (void)p;
    up = qv(Rational(-lam + v * k), d + u * k, plus(plusp(h, p), Rational(u * k)));
    lo = qv(e + u * k, plus(h, Rational(u * k)));
}

template <class E>
PairsOf<E> eval_l2(const E& e_, const Binding& bd) {
    long u = bd.i("u"), v = bd.i("v"), k = bd.i("k"), lam = bd.i("lam");
    const Rational &d = bd.q("d"), &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long P = isum(p);
    QVec up, lo;
    l2_lhs_terms(u, v, lam, d, e, h, p, k, up, lo);
    auto lhs = e_.F(up, lo, Rational(1));
    Rational sign = (v * k) % 2 ? Rational(-1) : Rational(1);
    Rational y = y_poly_core(u, v, d, e, Rational(lam), h, p)(Rational(k));
    auto rhs = e_.val(sign) *
               e_.gr(qv(e + lam - d, 1 + d - e - lam, e + u * k),
                     qv((u - v) * k + e + lam, v * k + d - e - lam + P + 1,
                        e - d)) *
               e_.val(y / nz(pochhammer_vec(plus(h, Rational(u * k)), p)));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_l2_display(const E& e_, const Binding& bd, long u, long v) {
    long k = bd.i("k"), lam = bd.i("lam");
    const Rational &d = bd.q("d"), &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long P = isum(p);
    QVec up, lo;
    l2_lhs_terms(u, v, lam, d, e, h, p, k, up, lo);
    auto lhs = e_.F(up, lo, Rational(1));
    Rational y = y_poly_core(u, v, d, e, Rational(lam), h, p)(Rational(k));
    Rational num(1), den(1);
    if (u == 1 && v == 3) {
        num = pochhammer(e, k) * pochd(1 - e - lam, 2, k) *
              qpow(Rational(-4, 27), k);
        for (const auto& hi : h) num *= pochhammer(hi, k);
        den = pochd(1 + d - e - lam + P, 3, k);
        for (size_t i = 0; i < h.size(); ++i)
            den *= pochhammer(h[i] + p[i], k);
    } else if (u == 2 && v == 3) {
        num = pochd(e, 2, k) * pochhammer(1 - e - lam, k) *
              qpow(Rational(4, 27), k);
        for (const auto& hi : h) num *= pochd(hi, 2, k);
        den = pochd(1 + d - e - lam + P, 3, k);
        for (size_t i = 0; i < h.size(); ++i) den *= pochd(h[i] + p[i], 2, k);
    } else if (u == 3 && v == 2) {
        num = pochd(e, 3, k) * qpow(Rational(27, 4), k);
        for (const auto& hi : h) num *= pochd(hi, 3, k);
        den = pochhammer(e + lam, k) * pochd(1 + d - e - lam + P, 2, k);
        for (size_t i = 0; i < h.size(); ++i) den *= pochd(h[i] + p[i], 3, k);
    } else {  // (1,-2)
        num = pochhammer(e, k) * pochd(e + lam - d - P, 2, k) *
              qpow(Rational(4, 27), k);
        for (const auto& hi : h) num *= pochhammer(hi, k);
        den = pochd(e + lam, 3, k);
        for (size_t i = 0; i < h.size(); ++i)
            den *= pochhammer(h[i] + p[i], k);
    }
    den *= pochhammer_vec(h, p) * pochhammer(1 + d - e - lam, P);
    auto rhs = e_.gr(qv(e + lam - d, e), qv(e + lam, e - d)) *
               e_.val(num * y / nz(den));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_l3gs(const E& e_, const Binding& bd) {
    const Rational& lam = bd.q("lam");
    long n = bd.i("n"), k = bd.i("k");
    auto lhs = e_.F(qv(-lam + 3 * k, (lam + 1) / Rational(-3) + k, -n + k),
                    qv((5 - lam) / 3 + k, 2 * n + 2 - lam + k), Rational(1));
    auto rhs = e_.val(gessel_stanton_sum(lam, n, k));
    return {{lhs, rhs}};
}

Rational gs_pref_ratio(const Rational& alpha, long n, QVec& num, QVec& den) {
    num = qv(Rational(3 * n + 4), 2 * n + alpha + 2);
    den = qv(Rational(2 * n + 3), 3 * n + alpha + 3);
    return (alpha + 2) / 3;
}

template <class E>
PairsOf<E> eval_t1(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &b = bd.q("beta");
    long n = bd.i("n");
    auto lhs = e_.F(
        qv(a, 2 * b - a - 1, a + 2 - 2 * b, (a - 1) / 3, Rational(-n)),
        qv(b, a - b + Rational(3, 2), (a + 5) / 3, 2 * n + a + 2),
        Rational(1, 4));
    QVec gn, gd;
    Rational c = gs_pref_ratio(a, n, gn, gd);
    auto rhs = e_.val(c) * e_.gr(gn, gd) *
               e_.F(qv(dl(a - 1, 3), Rational(-1, 2) - n, Rational(-n)),
                    qv(b, a - b + Rational(3, 2), Rational(-1, 3) - n,
                       Rational(-2, 3) - n),
                    Rational(1));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t2(const E& e_, const Binding& bd, int lam_sign = -1) {
    const Rational &a = bd.q("alpha"), &b = bd.q("beta"), &d = bd.q("d"),
                   &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long P = isum(p);
    auto lhs = e_.F(qv(a, 2 * b - a - 1, a + 2 - 2 * b, d, plusp(h, p)),
                    qv(b, a - b + Rational(3, 2), e, h), Rational(1, 4));
    QPoly Y = y_poly_core(1, 3, d, e, Rational(lam_sign) * a, h, p);
    Rational pref =
        1 / nz(pochhammer_vec(h, p) * pochhammer(1 + d + a - e, P));
    auto rhs = e_.gr(qv(e - a - d, e), qv(e - a, e - d)) * e_.val(pref) *
               e_.F(qv(dl(a, 3), dl(1 + a - e, 2), d),
                    qv(b, a - b + Rational(3, 2), dl(1 + d + a - e + P, 3)),
                    Rational(1), Y);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t3(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &b = bd.q("beta");
    long n = bd.i("n");
    auto lhs = e_.F(qv(Rational(1), (a - 1) / 3, a - 2 * b, Rational(-n)),
                    qv(b + 1, (a + 5) / 3, 2 * n + a + 2), Rational(1));
    QVec gn, gd;
    Rational c = gs_pref_ratio(a, n, gn, gd);
    auto rhs =
        e_.val(c) * e_.gr(gn, gd) *
        e_.F(qv(dl(a - 1, 3), b, Rational(-1, 2) - n, Rational(-n)),
             qv(dl(a, 2), b + 1, Rational(-1, 3) - n, Rational(-2, 3) - n),
             Rational(1));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t4(const E& e_, const Binding& bd, int lam_sign = -1) {
    const Rational &a = bd.q("alpha"), &b = bd.q("beta"), &d = bd.q("d"),
                   &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long P = isum(p);
    auto lhs = e_.F(qv(Rational(1), a - 2 * b, d, plusp(h, p)),
                    qv(b + 1, e, h), Rational(1));
    QPoly Y = y_poly_core(1, 3, d, e, Rational(lam_sign) * a, h, p);
    Rational pref =
        1 / nz(pochhammer_vec(h, p) * pochhammer(1 + d + a - e, P));
    auto rhs = e_.gr(qv(e - a - d, e), qv(e - a, e - d)) * e_.val(pref) *
               e_.F(qv(dl(a, 3), b, dl(1 + a - e, 2), d),
                    qv(dl(a, 2), b + 1, dl(1 + d + a - e + P, 3)),
                    Rational(1), Y);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t5(const E& e_, const Binding& bd, int lam_sign = -1) {
    const Rational &a = bd.q("alpha"), &b = bd.q("beta"), &d = bd.q("d"),
                   &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long P = isum(p);
    auto lhs = e_.F(qv(a, b - Rational(1, 2), a - b + 1, d, plusp(h, p)),
                    qv(2 * b - 1, 2 * a - 2 * b + 2, e, h), Rational(4));
    QPoly Y = y_poly_core(2, 3, d, e, Rational(lam_sign) * a, h, p);
    Rational pref =
        1 / nz(pochhammer_vec(h, p) * pochhammer(1 + d + a - e, P));
    auto rhs = e_.gr(qv(e - a - d, e), qv(e - a, e - d)) * e_.val(pref) *
               e_.F(qv(dl(a, 3), dl(d, 2), 1 + a - e),
                    qv(b, a - b + Rational(3, 2), dl(1 + d + a - e + P, 3)),
                    Rational(1), Y);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t6(const E& e_, const Binding& bd, int lam_sign = -1) {
    const Rational &a = bd.q("alpha"), &d = bd.q("d"), &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long P = isum(p);
    auto lhs = e_.F(qv(3 * a, 3 * a + Rational(1, 2), d, plusp(h, p)),
                    qv(6 * a + 1, e, h), Rational(4, 3));
    QPoly Y = y_poly_core(3, 2, d, e, Rational(2 * lam_sign) * a, h, p);
    Rational pref =
        1 / nz(pochhammer_vec(h, p) * pochhammer(1 + d + 2 * a - e, P));
    auto rhs = e_.gr(qv(e - 2 * a - d, e), qv(e - 2 * a, e - d)) *
               e_.val(pref) *
               e_.F(qv(a, a + Rational(1, 2), dl(d, 3)),
                    qv(2 * a + 1, e - 2 * a, dl(1 + d + 2 * a - e + P, 2)),
                    Rational(1), Y);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t7(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &d = bd.q("d"), &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long P = isum(p);
    auto lhs = e_.F(qv(3 * a, -3 * a, d, plusp(h, p)),
                    qv(Rational(1, 2), e, h), Rational(3, 4));
    QPoly Y = y_poly_core(1, -2, d, e, Rational(0), h, p);
    Rational pref = 1 / nz(pochhammer_vec(h, p) * pochhammer(1 + d - e, P));
    auto rhs = e_.val(pref) *
               e_.F(qv(a, -a, d, dl(e - d - P, 2)),
                    qv(Rational(1, 2), dl(e, 3)), Rational(1), Y);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t7m(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &b = bd.q("beta");
    long r = bd.i("r"), n = bd.i("n");
    QVec lo2 = qv((a + b + r) / 2 + Rational(3, 4),
                  (a - b + r) / 2 + Rational(3, 4));
    QPoly Q = q3r_poly(r, a, b);
    auto lhs = e_.F(qv(a, Rational(1, 2) - r - b, Rational(1, 2) - r + b,
                       (a - 1) / 3, Rational(-n)),
                    qv(lo2, (a + 5) / 3, 2 * n + a + 2), Rational(1, 4), Q);
    QVec gn, gd;
    Rational c = gs_pref_ratio(a, n, gn, gd);
    auto rhs = e_.val(c) * e_.gr(gn, gd) *
               e_.F(qv(dl(a - 1, 3), Rational(-1, 2) - n, Rational(-n)),
                    qv(lo2, Rational(-1, 3) - n, Rational(-2, 3) - n),
                    Rational(1));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_c61(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &d = bd.q("d"), &e = bd.q("e"),
                   &h = bd.q("h");
    Rational top = 2 * a * (h - d) - (e - d - 1) * h;
    Rational xi = top / nz(2 * (h - d) - 3 * (e - d - 1));
    auto lhs = e_.F(qv(3 * a, 3 * a + Rational(1, 2), d, h + 1),
                    qv(6 * a + 1, e, h), Rational(4, 3));
    QPoly P = QPoly::linear(xi, Rational(1)).scaled(1 / nz(xi));
    auto rhs = e_.gr(qv(e - 2 * a - d, e), qv(e - d, e - 2 * a)) *
               e_.val(top / nz(h * (1 + d + 2 * a - e))) *
               e_.F(qv(a, a + Rational(1, 2), dl(d, 3)),
                    qv(2 * a + 1, e - 2 * a, dl(2 + d + 2 * a - e, 2)),
                    Rational(1), P);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_c71(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &d = bd.q("d"), &e = bd.q("e"),
                   &h = bd.q("h");
    Rational xi = (e - d - 1) * h / nz(2 * h + e - 3 * d - 1);
    auto lhs = e_.F(qv(3 * a, -3 * a, d, h + 1), qv(Rational(1, 2), e, h),
                    Rational(3, 4));
    QPoly P = QPoly::linear(xi, Rational(1)).scaled(1 / nz(xi));
    auto rhs = e_.F(qv(a, -a, d, dl(e - d - 1, 2)),
                    qv(Rational(1, 2), dl(e, 3)), Rational(1), P);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_c72(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &d = bd.q("d"), &h = bd.q("h");
    auto lhs = e_.F(qv(3 * a, -3 * a, d, h + 1),
                    qv(Rational(1, 2), d + 1, h), Rational(3, 4));
    auto rhs = e_.val(d / nz(h)) +
               e_.val((h - d) / h) *
                   e_.F(qv(a, -a, d, Rational(1)), dl(d + 1, 3), Rational(1));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t8(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b"), &d = bd.q("d"),
                   &e = bd.q("e");
    const QVec &f = bd.qv("f"), &h = bd.qv("h");
    const IVec &m = bd.iv("m"), &p = bd.iv("p");
    long M = isum(m), P = isum(p);
    auto lhs = e_.F(qv(a, b, d, plusp(f, m), plusp(h, p)),
                    qv(b + 1, e, f, h), Rational(1));
    Rational om = pochhammer_vec(plus(f, -b), m) /
                  nz(pochhammer_vec(f, m) * pochhammer_vec(h, p) *
                     pochhammer(d + a - e, P));
    QPoly Y = y_poly_core(1, 0, d, e, 1 - a, h, p);
    auto t1 = e_.val(om) * e_.gr(qv(e, e - a - d + 1), qv(e - d, e + 1 - a)) *
              e_.F(qv(Rational(1), b + 1 - a, d), qv(b + 1, e - a + 1),
                   Rational(1), Y);
    auto t2 = e_.val(Rational(0));
    for (long l = 0; l < M; ++l) {
        Rational c = beta_l(l, b, f, m) * pochhammer(a, l) * pochhammer(d, l);
        Rational den = pochhammer(e, l);
        for (size_t i = 0; i < h.size(); ++i) {
            c *= pochhammer(h[i] + p[i], l);
            den *= pochhammer(h[i], l);
        }
        t2 = t2 + e_.val(c / nz(den)) *
                      e_.F(qv(a + l, d + l, plus(plusp(h, p), Rational(l))),
                           qv(e + l, plus(h, Rational(l))), Rational(1));
    }
    return {{lhs, t1 + t2}};
}

template <class E>
PairsOf<E> eval_t9(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b"), &d = bd.q("d"),
                   &e = bd.q("e");
    const QVec &f = bd.qv("f"), &h = bd.qv("h");
    const IVec &m = bd.iv("m"), &p = bd.iv("p");
    long k = bd.i("k");
    long M = isum(m), P = isum(p);
    auto lhs = e_.F(qv(a, b, d, plusp(f, m), plusp(h, p)),
                    qv(b + k, e, f, h), Rational(1));
    Rational lam_pref = 1 / nz(pochhammer_vec(f, m) * pochhammer_vec(h, p) *
                               pochhammer(d - e + a, P));
    QPoly chi = t_poly(k, a, b, f, m) * y_poly_core(1, 0, d, e, 1 - a, h, p);
    auto t1 = e_.val(lam_pref) *
              e_.gr(qv(b - a + 1, e, e + 1 - a - d), qv(b, e - d, e - a + 1)) *
              e_.F(qv(Rational(1), b - a + 1, d), qv(b + k, e - a + 1),
                   Rational(1), chi);
    auto t2 = e_.val(Rational(0));
    for (long q = 1; q <= k; ++q) {
        auto inner = e_.val(Rational(0));
        for (long l = 0; l < M; ++l) {
            Rational c =
                sigma_ql(q, l, b, f, m) * pochhammer(a, l) * pochhammer(d, l);
            Rational den = pochhammer(e, l);
            for (size_t i = 0; i < h.size(); ++i) {
                c *= pochhammer(h[i] + p[i], l);
                den *= pochhammer(h[i], l);
            }
            inner = inner +
                    e_.val(c / nz(den)) *
                        e_.F(qv(a + l, d + l, plus(plusp(h, p), Rational(l))),
                             qv(e + l, plus(h, Rational(l))), Rational(1));
        }
        Rational outer = (q % 2 ? Rational(1) : Rational(-1)) *
                         pochhammer(b, k) /
                         nz((b + q - 1) * qfact(q - 1) * qfact(k - q));
        t2 = t2 + e_.val(outer) * inner;
    }
    return {{lhs, t1 + t2}};
}

template <class E>
PairsOf<E> eval_t9r(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &d = bd.q("d"), &e = bd.q("e");
    const QVec& h = bd.qv("h");
    const IVec& p = bd.iv("p");
    long l = bd.i("l");
    auto lhs = e_.F(qv(a + l, d + l, plus(plusp(h, p), Rational(l))),
                    qv(e + l, plus(h, Rational(l))), Rational(1));
    auto rhs = e_.val(finite_remark_sum(a, d, e, h, p, l));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t10(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &g = bd.q("g"), &d = bd.q("d"),
                   &b = bd.q("b"), &c = bd.q("c"), &e = bd.q("e");
    const QVec &f = bd.qv("f"), &h = bd.qv("h");
    const IVec &m = bd.iv("m"), &p = bd.iv("p");
    long M = isum(m), P = isum(p);
    Rational lam = c - a - g - M + 1;
    auto lhs = e_.F(qv(a, g, d, b, plusp(f, m), plusp(h, p)),
                    qv(c, e, b + 1, f, h), Rational(1));
    Rational fm = pochhammer_vec(f, m);
    Rational fmb = pochhammer_vec(plus(f, -b), m);
    auto t1 = e_.val(fmb / nz(fm)) *
              e_.F(qv(a, g, d, b, plusp(h, p)), qv(c, e, b + 1, h),
                   Rational(1));
    QPoly lh = lhat_poly(a, g, c, b, f, m);
    Rational L0 = nz(lh(Rational(0)));
    QPoly chi = y_poly_core(1, 0, d, e, lam, h, p) *
                lh.compose_affine(Rational(-1), Rational(0)).scaled(1 / L0);
    Rational pref = (fm - fmb) / nz(pochhammer(d - e - lam + 1, P) * fm *
                                    pochhammer_vec(h, p));
    auto t2 = e_.gr(qv(e, e + lam - d), qv(e - d, e + lam)) * e_.val(pref) *
              e_.F(qv(d, g + lam, a + lam), qv(c, e + lam), Rational(1), chi);
    return {{lhs, t1 + t2}};
}

template <class E>
PairsOf<E> eval_t11(const E& e_, const Binding& bd) {
    const Rational &g = bd.q("gamma"), &b = bd.q("beta");
    const QVec &av = bd.qv("av"), &bv = bd.qv("bv");
    long q = bd.i("q");
    auto lhs = e_.F(qv(g + q, b, av), qv(g, bv), Rational(1));
    QPoly P = p_big_m(q, g, b, av, bv);
    Rational den(1);
    for (const auto& bb : bv) den *= pochhammer(bb, q);
    auto rhs = e_.F(qv(b + q, av), plus(bv, Rational(q)), Rational(1), P) /
               e_.val(nz(den));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t12(const E& e_, const Binding& bd) {
    const Rational &g = bd.q("gamma"), &a = bd.q("alpha");
    const QVec &av = bd.qv("av"), &bv = bd.qv("bv");
    long q = bd.i("q");
    auto lhs = e_.F(qv(g + q, a, av), qv(g, bv), Rational(1));
    QPoly P = r_big_m(q, a, g, av, bv);
    Rational den(1);
    for (const auto& bb : bv) den *= pochhammer(bb, q);
    auto rhs = e_.F(qv(a, av), plus(bv, Rational(q)), Rational(1), P) /
               e_.val(nz(den));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t13(const E& e_, const Binding& bd) {
    const Rational &b = bd.q("beta"), &dlt = bd.q("delta");
    const QVec &av = bd.qv("av"), &bv = bd.qv("bv");
    long r = bd.i("r"), q = bd.i("q");
    Rational a = b + dlt + r - q - 1;
    QPoly P2 = p2r_poly(r, a, b, dlt);
    auto lhs = e_.F(qv(a, b, dlt, av), qv(dlt + r - q, b + r - q, bv),
                    Rational(1), P2);
    QPoly Q = q_big_m(q, r, b, dlt, av, bv);
    Rational den(1);
    for (const auto& bb : bv) den *= pochhammer(bb, q);
    auto rhs = e_.F(qv(a, av), plus(bv, Rational(q)), Rational(1), Q) /
               e_.val(nz(den));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t14(const E& e_, const Binding& bd) {
    const Rational &b = bd.q("beta"), &d = bd.q("d"), &g = bd.q("gamma");
    Rational zeta = (2 + b - d - g) * (g - d - 1) / nz(b) + g - 1;
    Rational psi = b * (1 - d) * (b + d) /
                   nz((b + d) * (2 + b - d - g) + (g - b - 1) * (d + g - 2));
    Rational A =
        b / nz((b * (g - 1) + (2 + b - d - g) * (g - d - 1)) * (b + d));
    QPoly P = (QPoly::linear(zeta, Rational(1)) *
               QPoly::linear(psi, Rational(1)))
                  .scaled(1 / nz(zeta * psi));
    auto lhs =
        e_.F(qv(b, d, 1 - d), qv(g, 3 + 2 * b - g), Rational(1), P);
    auto rhs = e_.val(A) *
               e_.gr(qv(g, (d + g) / 2, 1 + b - (d + g) / 2, 3 + 2 * b - g),
                     qv(d + g - 1, (g - d) / 2, 1 + b + (d - g) / 2,
                        2 + 2 * b - d - g));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t15(const E& e_, const Binding& bd) {
    const Rational &A = bd.q("A"), &C = bd.q("C"), &D = bd.q("D"),
                   &Ev = bd.q("E"), &Fp = bd.q("Fp");
    auto lhs = e_.F(qv(A, 1 + A / 2, C, D, Ev, Fp + 1, 1 + A - Fp),
                    qv(A / 2, 1 + A - C, 1 + A - D, 1 + A - Ev, Fp, A - Fp),
                    Rational(1));
    Rational extra =
        1 + C * D * Ev / nz(Fp * (Fp - A) * (C + D + Ev - A));
    auto rhs = e_.gr(qv(1 + A - C, 1 + A - D, 1 + A - Ev, 1 + A - C - D - Ev),
                     qv(1 + A, 1 + A - C - Ev, 1 + A - D - Ev,
                        1 + A - C - D)) *
               e_.val(extra);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t16(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &d = bd.q("d"), &e = bd.q("e"),
                   &h = bd.q("h");
    Rational top = (h - d) * a - (e - d - 1) * h;
    Rational xi = top / nz(3 * h - 2 * d - e + 1);
    QPoly P = QPoly::linear(xi, Rational(1)).scaled(1 / nz(xi));
    auto lhs = e_.F(qv(dl(a, 3), dl(1 + a - e, 2), d),
                    qv(a / 2, (a + 3) / 2, dl(2 + a + d - e, 3)),
                    Rational(1), P);
    Rational tail = 1 - 2 * d * (h + 1) / nz((a + 3) * e * h);
    auto rhs = e_.gr(qv(e - a, e - d), qv(e, e - a - d)) *
               e_.val(h * (1 + a + d - e) * tail / nz(top));
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t17(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("alpha"), &b = bd.q("beta"), &d = bd.q("d"),
                   &h = bd.q("h");
    Rational e = 2 - 3 * b + a + d;
    Rational top = (h - d) * a - (e - d - 1) * h;
    Rational xi = top / nz(3 * h - 2 * d - e + 1);
    QPoly P = QPoly::linear(xi, Rational(1)).scaled(1 / nz(xi));
    auto lhs = e_.F(qv(dl(a, 3), b, dl(1 + a - e, 2), d),
                    qv(dl(a, 2), b + 1, dl(2 + a + d - e, 3)),
                    Rational(1), P);
    Rational num = b * (1 + a + d - e) *
                   (h * (3 * b - a) * (b - d - 1) + d * (2 * b - a + h));
    Rational den =
        nz((b - d - 1) * (b - d) * (3 * b - a) * top);
    auto rhs = e_.gr(qv(e - a, e - d - 1), qv(e - 1, e - a - d)) *
               e_.val(num / den);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_t18(const E& e_, const Binding& bd) {
    const Rational& a = bd.q("alpha");
    long n = bd.i("n"), r = bd.i("r");
    auto lhs = e_.F(qv(dl(a - 1, 3), Rational(-1, 2) - n, Rational(-n)),
                    qv(a / 2 + r, a / 2 + Rational(3, 2), Rational(-1, 3) - n,
                       Rational(-2, 3) - n),
                    Rational(1));
    Rational base = Rational(2 * n) * (a - 1) /
                    nz((a + 3) * (a + 5) * (a + 2 * n + 2));
    Rational corr = r == 0 ? base : -a * base;
    auto rhs = e_.val(Rational(3) / nz(a + 2)) *
               e_.gr(qv(Rational(2 * n + 3), 3 * n + a + 3),
                     qv(Rational(3 * n + 4), 2 * n + a + 2)) *
               e_.val(1 + corr);
    return {{lhs, rhs}};
}

template <class E>
PairsOf<E> eval_c181(const E& e_, const Binding& bd) {
    const Rational& a = bd.q("alpha");
    long n = bd.i("n");
    auto lhs = e_.F(qv(dl(a - 1, 3), Rational(-1, 2) - n, Rational(-n)),
                    qv(a / 2, a / 2 + Rational(3, 2), Rational(-1, 3) - n,
                       Rational(-2, 3) - n),
                    Rational(1));
    Rational corr = Rational(2 * n) * (a - 1) /
                    nz((a + 3) * (a + 5) * (a + 2 * n + 2));
    auto rhs = e_.val(Rational(3) / nz(a + 2)) *
               e_.gr(qv(Rational(2 * n + 3), 3 * n + a + 3),
                     qv(Rational(3 * n + 4), 2 * n + a + 2)) *
               e_.val(1 + corr);
    return {{lhs, rhs}};
}

// ------------------------------------------------- pointwise transformations

const QVec& full_grid() {
    static const QVec g{Rational(1, 7), Rational(1, 3), Rational(1, 2),
                        Rational(9, 10)};
    return g;
}

QVec px_grid(const Binding& bd, const QVec& nonterminating) {
    return bd.i("terminating") ? full_grid() : nonterminating;
}

}  // namespace

namespace {

// Builders below produce one (lhs, rhs) pair per grid argument.

template <class E>
PairsOf<E> eval_px_bailey(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b");
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {})) {
        auto lhs = e_.F(qv(a, 2 * b - a - 1, a + 2 - 2 * b),
                        qv(b, a + Rational(3, 2) - b), x / 4);
        auto rhs = e_.power(1 - x, -a) *
                   e_.F(dl(a, 3), qv(b, a + Rational(3, 2) - b),
                        -27 * x / (4 * qpow(1 - x, 3)));
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_gs513(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b");
    PairsOf<E> out;
    // negative arguments keep |27x/(4(1-x)^3)| < 1
    for (const auto& x : px_grid(bd, {Rational(-1, 7), Rational(-1, 3)})) {
        auto lhs = e_.F(qv(Rational(1), a - 2 * b), qv(b + 1), x);
        auto rhs = e_.power(1 - x, -a) *
                   e_.F(qv(dl(a, 3), b), qv(dl(a, 2), b + 1),
                        -27 * x / (4 * qpow(1 - x, 3)));
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_aar185(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b");
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7)})) {
        auto lhs = e_.F(qv(a, b - Rational(1, 2), a + 1 - b),
                        qv(2 * b - 1, 2 * a + 2 - 2 * b), 4 * x);
        auto rhs = e_.power(1 - x, -a) *
                   e_.F(dl(a, 3), qv(b, a + Rational(3, 2) - b),
                        27 * x * x / (4 * qpow(1 - x, 3)));
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_gs520(const E& e_, const Binding& bd) {
    const Rational& a = bd.q("a");
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7), Rational(1, 3)})) {
        auto lhs = e_.F(qv(3 * a, 3 * a + Rational(1, 2)), qv(6 * a + 1),
                        4 * x / 3);
        auto rhs = e_.power(1 - x, -2 * a) *
                   e_.F(qv(a, a + Rational(1, 2)), qv(2 * a + 1),
                        4 * qpow(x, 3) / (27 * qpow(1 - x, 2)));
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_gs518(const E& e_, const Binding& bd) {
    const Rational& a = bd.q("a");
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7), Rational(1, 3)})) {
        auto lhs = e_.F(qv(3 * a, -3 * a), qv(Rational(1, 2)), 3 * x / 4);
        auto rhs = e_.F(qv(a, -a), qv(Rational(1, 2)),
                        27 * x * qpow(1 - x, 2) / 4);
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_maier32(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b");
    long r = bd.i("r");
    QVec lo2 = qv((a + b + r) / 2 + Rational(3, 4),
                  (a - b + r) / 2 + Rational(3, 4));
    QPoly Q = q3r_poly(r, a, b);
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {})) {
        auto lhs = e_.F(qv(a, Rational(1, 2) - r - b, Rational(1, 2) - r + b),
                        lo2, x / 4, Q);
        auto rhs = e_.power(1 - x, -a) *
                   e_.F(dl(a, 3), lo2, -27 * x / (4 * qpow(1 - x, 3)));
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_maier31(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b"), &dlt = bd.q("delta");
    long r = bd.i("r");
    QPoly P = p2r_poly(r, a, b, dlt);
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7)})) {
        auto lhs = e_.F(qv(a, b, dlt), qv(1 + a - b, 1 + a - dlt), x, P);
        auto rhs = e_.power(1 - x, -a) *
                   e_.F(qv(a / 2, a / 2 + Rational(1, 2), a - b - dlt - r + 1),
                        qv(1 + a - b, 1 + a - dlt),
                        -4 * x / qpow(1 - x, 2));
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_euler1(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b"), &c = bd.q("c");
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7), Rational(1, 3)})) {
        auto lhs = e_.F(qv(a, b), qv(c), x);
        auto rhs =
            e_.power(1 - x, -a) * e_.F(qv(a, c - b), qv(c), x / (x - 1));
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_euler2(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b"), &c = bd.q("c");
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7), Rational(1, 3)})) {
        auto lhs = e_.F(qv(a, b), qv(c), x);
        auto rhs = e_.power(1 - x, c - a - b) * e_.F(qv(c - a, c - b), qv(c), x);
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_kar112(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b");
    const QVec& f = bd.qv("f");
    const IVec& m = bd.iv("m");
    long M = isum(m);
    Rational ratio =
        pochhammer_vec(plus(f, -b), m) / nz(pochhammer_vec(f, m));
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7), Rational(1, 3)})) {
        auto lhs = e_.F(qv(a, b, plusp(f, m)), qv(b + 1, f), x);
        auto rhs = e_.val(ratio) * e_.power(1 - x, 1 - a) *
                   e_.F(qv(Rational(1), b + 1 - a), qv(b + 1), x);
        for (long l = 0; l < M; ++l) {
            rhs = rhs + e_.val(beta_l(l, b, f, m) * pochhammer(a, l) *
                               qpow(x, l)) *
                            e_.power(1 - x, -a - l);
        }
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_kar121(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &b = bd.q("b");
    const QVec& f = bd.qv("f");
    const IVec& m = bd.iv("m");
    long k = bd.i("k");
    long M = isum(m);
    // T_{k-1} with the outer Gamma(b-a+1)/Gamma(b) folded in, so the
    // per-q ratio Gamma(b+q-1)/Gamma(b+q-a) collapses to Pochhammers.
    QPoly T;
    for (long q = 1; q <= k; ++q) {
        Rational c = (q % 2 ? Rational(1) : Rational(-1)) *
                     pochhammer_vec(plus(f, 1 - b - q), m) * pochhammer(b, q - 1) /
                     nz(pochhammer(b - a + 1, q - 1) * qfact(q - 1) *
                        qfact(k - q));
        T += (QPoly::poch_linear(Rational(1), b + q, k - q) *
              QPoly::poch_linear(Rational(1), b + 1 - a, q - 1))
                 .scaled(c);
    }
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7), Rational(1, 3)})) {
        auto lhs = e_.F(qv(a, b, plusp(f, m)), qv(b + k, f), x);
        auto rhs = e_.val(1 / nz(pochhammer_vec(f, m))) *
                   e_.power(1 - x, 1 - a) *
                   e_.F(qv(Rational(1), b + 1 - a), qv(b + k), x, T);
        for (long q = 1; q <= k; ++q) {
            Rational outer = (q % 2 ? Rational(1) : Rational(-1)) *
                             pochhammer(b, k) /
                             nz((b + q - 1) * qfact(q - 1) * qfact(k - q));
            for (long l = 0; l < M; ++l) {
                rhs = rhs + e_.val(outer * sigma_ql(q, l, b, f, m) *
                                   pochhammer(a, l) * qpow(x, l)) *
                                e_.power(1 - x, -a - l);
            }
        }
        out.emplace_back(lhs, rhs);
    }
    return out;
}

template <class E>
PairsOf<E> eval_px_deqvect1(const E& e_, const Binding& bd) {
    const Rational &a = bd.q("a"), &g = bd.q("g"), &b = bd.q("b"),
                   &c = bd.q("c");
    const QVec& f = bd.qv("f");
    const IVec& m = bd.iv("m");
    long M = isum(m);
    Rational fm = pochhammer_vec(f, m);
    Rational fmb = pochhammer_vec(plus(f, -b), m);
    QPoly lh = lhat_poly(a, g, c, b, f, m);
    Rational L0 = nz(lh(Rational(0)));
    QPoly chi =
        lh.compose_affine(Rational(-1), Rational(0)).scaled(1 / L0);
    PairsOf<E> out;
    for (const auto& x : px_grid(bd, {Rational(1, 7), Rational(1, 3)})) {
        auto lhs = e_.F(qv(a, g, b, plusp(f, m)), qv(c, b + 1, f), x);
        auto rhs = e_.val(fmb / nz(fm)) *
                       e_.F(qv(a, g, b), qv(c, b + 1), x) +
                   e_.val((fm - fmb) / fm) *
                       e_.power(1 - x, c - a - g - M + 1) *
                       e_.F(qv(c - a - M + 1, c - g - M + 1), qv(c), x, chi);
        out.emplace_back(lhs, rhs);
    }
    return out;
}

// ---------------------------------------------------------------- samplers

void draw_hp(Draw& d, const Rational& base, QVec& h, IVec& p) {
    long l = d.integer(1, 2);
    h.clear();
    p.clear();
    while ((long)h.size() < l) {
        long den = d.pick({3, 4, 5});
        long mm = d.integer(7, 30);
        if (mm % den)
            h.push_back(base + Rational(mm, den));
        else
            d.reject();
    }
    for (long i = 0; i < l; ++i) p.push_back(d.integer(1, 2));
}

void draw_fm(Draw& d, QVec& f, IVec& m) {
    long r = d.integer(1, 2);
    f.clear();
    m.clear();
    for (long i = 0; i < r; ++i) {
        f.push_back(d.ratio(3, 12));
        m.push_back(d.integer(1, 2));
    }
}

Rational draw_nonint_diff(Draw& d, const Rational& fixed, long lo, long hi,
                          const Rational& offset = Rational(0)) {
    for (;;) {
        Rational x = d.ratio(lo, hi) + offset;
        if (denominator(Rational(x - fixed)) > 1) return x;
        d.reject();
    }
}

Binding sample_l2_family(Draw& d, long u, long v) {
    Binding b;
    long k = d.integer(0, 2);
    long lam = d.integer(v * k, v * k + 3);
    Rational dd = d.ratio(1, 9);
    Rational e = dd + d.integer(1, 4) + Rational(d.integer(0, 3), 3);
    QVec h;
    IVec p;
    draw_hp(d, dd, h, p);
    b.integers = {{"u", u}, {"v", v}, {"k", k}, {"lam", lam}};
    b.scalars = {{"d", dd}, {"e", e}};
    b.vectors["h"] = h;
    b.int_vectors["p"] = p;
    return b;
}

Binding sample_cubic_ipd(Draw& d, bool with_beta, bool double_alpha) {
    Binding b;
    Rational dd(-d.integer(1, 4));
    Rational alpha, beta, e;
    for (;;) {
        alpha = d.ratio(-8, 8);
        beta = d.ratio(1, 9);
        e = d.ratio(1, 12) + 4;
        Rational gap = double_alpha ? Rational(e - 2 * alpha)
                                    : Rational(e - alpha);
        bool ok = denominator(Rational(gap)) > 1;
        if (with_beta && denominator(Rational(alpha - beta)) == 1) ok = false;
        if (ok) break;
        d.reject();
    }
    QVec h;
    IVec p;
    draw_hp(d, dd, h, p);
    b.scalars = {{"alpha", alpha}, {"d", dd}, {"e", e}};
    if (with_beta) b.scalars["beta"] = beta;
    b.vectors["h"] = h;
    b.int_vectors["p"] = p;
    return b;
}

}  // namespace

// ------------------------------------------------------------ binding, draw

const Rational& Binding::q(const std::string& name) const {
    auto it = scalars.find(name);
    if (it == scalars.end()) throw DomainError("missing parameter " + name);
    return it->second;
}

long Binding::i(const std::string& name) const {
    auto it = integers.find(name);
    if (it == integers.end()) throw DomainError("missing parameter " + name);
    return it->second;
}

const QVec& Binding::qv(const std::string& name) const {
    auto it = vectors.find(name);
    if (it == vectors.end()) throw DomainError("missing parameter " + name);
    return it->second;
}

const IVec& Binding::iv(const std::string& name) const {
    auto it = int_vectors.find(name);
    if (it == int_vectors.end())
        throw DomainError("missing parameter " + name);
    return it->second;
}

std::string Binding::describe() const {
    std::map<std::string, std::string> parts;
    for (const auto& [k, v] : scalars) {
        std::ostringstream os;
        os << v;
        parts[k] = os.str();
    }
    for (const auto& [k, v] : integers) parts[k] = std::to_string(v);
    for (const auto& [k, v] : vectors) {
        std::ostringstream os;
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        parts[k] = os.str();
    }
    for (const auto& [k, v] : int_vectors) {
        std::ostringstream os;
        for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
        parts[k] = os.str();
    }
    std::string out;
    for (const auto& [k, v] : parts) {
        if (!out.empty()) out += " ";
        out += k + "=" + v;
    }
    return out;
}

namespace {
uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}
}  // namespace

Draw::Draw(const std::string& id, unsigned long long seed, long trial)
    : budget_(10000) {
    uint64_t tag = fnv1a(id);
    std::seed_seq seq{(unsigned)(seed & 0xffffffffu), (unsigned)(seed >> 32),
                      (unsigned)trial, (unsigned)(tag & 0xffffffffu),
                      (unsigned)(tag >> 32)};
    gen_.seed(seq);
}

long Draw::integer(long lo, long hi) {
    if (hi < lo) throw DomainError("empty integer range");
    return lo + (long)(gen_() % (unsigned long long)(hi - lo + 1));
}

long Draw::pick(const IVec& choices) {
    return choices[(size_t)(gen_() % choices.size())];
}

Rational Draw::ratio(long lo, long hi) { return ratio(lo, hi, {2, 3, 4, 5}); }

Rational Draw::ratio(long lo, long hi, const IVec& dens) {
    for (;;) {
        Rational r(integer(lo, hi), pick(dens));
        if (denominator(r) > 1) return r;
        reject();
    }
}

void Draw::reject() {
    if (--budget_ <= 0)
        throw SamplerExhausted("rejection budget exhausted");
}

// ---------------------------------------------------------------- registry

namespace {

std::vector<IdentityCase> build_registry() {
    std::vector<IdentityCase> reg;
    auto add = [&reg](std::string id, std::string ref, IdentityKind kind,
                      bool exact) -> IdentityCase& {
        IdentityCase c;
        c.id = std::move(id);
        c.paper_ref = std::move(ref);
        c.kind = kind;
        c.exact_capable = exact;
        reg.push_back(std::move(c));
        return reg.back();
    };

    {
        auto& c = add("L2", "IPD summation lemma at shifted arguments",
                      IdentityKind::Summation, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_l2(e, b); });
        c.sampler = [](Draw& d) {
            long u = d.pick({1, 1, 2, 3});
            long v = d.pick({-2, 0, 2, 3});
            return sample_l2_family(d, u, v);
        };
    }
    struct L2Disp {
        const char* id;
        const char* ref;
        long u, v;
    };
    for (const auto& sp : {L2Disp{"L2-13", "IPD summation, (u,v)=(1,3)", 1, 3},
                           L2Disp{"L2-23", "IPD summation, (u,v)=(2,3)", 2, 3},
                           L2Disp{"L2-32", "IPD summation, (u,v)=(3,2)", 3, 2},
                           L2Disp{"L2-1m2", "IPD summation, (u,v)=(1,-2)", 1,
                                  -2}}) {
        auto& c = add(sp.id, sp.ref, IdentityKind::Summation, true);
        long u = sp.u, v = sp.v;
        wire(c, [u, v](const auto& e, const Binding& b) {
            return eval_l2_display(e, b, u, v);
        });
        c.sampler = [u, v](Draw& d) { return sample_l2_family(d, u, v); };
    }
    {
        auto& c = add("L3-GS", "Gessel-Stanton terminating 3F2 summation",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_l3gs(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            long n = d.integer(0, 4);
            b.integers = {{"n", n}, {"k", d.integer(0, n)}};
            b.scalars["lam"] = d.ratio(-12, 12, {2, 3, 5, 7});
            return b;
        };
    }
    {
        auto& c = add("T1", "Bailey cubic with Gessel-Stanton right side",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t1(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"alpha", d.ratio(-8, 8)}, {"beta", d.ratio(1, 9)}};
            b.integers["n"] = d.integer(0, 3);
            return b;
        };
    }
    {
        auto& c = add("T2", "Bailey cubic with IPD(1,3) right side",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t2(e, b); });
        c.sampler = [](Draw& d) { return sample_cubic_ipd(d, true, false); };
    }
    {
        auto& c = add("T3",
                      "Gessel-Stanton (5.13) cubic with Gessel-Stanton right "
                      "side",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t3(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"alpha", d.ratio(-8, 8)}, {"beta", d.ratio(1, 9)}};
            b.integers["n"] = d.integer(0, 3);
            return b;
        };
    }
    {
        auto& c = add("T4", "Gessel-Stanton (5.13) cubic with IPD(1,3) right "
                      "side",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t4(e, b); });
        c.sampler = [](Draw& d) { return sample_cubic_ipd(d, true, false); };
    }
    {
        auto& c = add("T5", "Bailey argument-4 cubic with IPD(2,3) right side",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t5(e, b); });
        c.sampler = [](Draw& d) { return sample_cubic_ipd(d, true, false); };
    }
    {
        auto& c = add("T6", "Gessel-Stanton (5.20) with IPD(3,2) right side",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t6(e, b); });
        c.sampler = [](Draw& d) { return sample_cubic_ipd(d, false, true); };
    }
    {
        auto& c = add("C6.1", "p=1 display of the (5.20) transformation",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_c61(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            Rational dd(-d.integer(1, 4));
            Rational alpha, e;
            for (;;) {
                alpha = d.ratio(-8, 8);
                e = d.ratio(1, 12) + 4;
                if (denominator(Rational(e - 2 * alpha)) > 1) break;
                d.reject();
            }
            b.scalars = {{"alpha", alpha},
                         {"d", dd},
                         {"e", e},
                         {"h", d.ratio(1, 9)}};
            return b;
        };
    }
    {
        auto& c = add("T7", "Gessel-Stanton (5.18) with IPD(1,-2) right side",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t7(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            Rational dd = d.ratio(-9, 9);
            QVec h;
            IVec p;
            draw_hp(d, dd, h, p);
            b.scalars = {{"alpha", Rational(d.integer(1, 3))},
                         {"d", dd},
                         {"e", d.ratio(1, 12) + 4}};
            b.vectors["h"] = h;
            b.int_vectors["p"] = p;
            return b;
        };
    }
    {
        auto& c = add("C7.1", "p=1 display of the (5.18) transformation",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_c71(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"alpha", Rational(d.integer(1, 3))},
                         {"d", d.ratio(-9, 9)},
                         {"e", d.ratio(1, 12) + 4},
                         {"h", d.ratio(1, 9)}};
            return b;
        };
    }
    {
        auto& c = add("C7.2", "limit display of the p=1 (5.18) transformation",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_c72(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"alpha", Rational(d.integer(1, 3))},
                         {"d", d.ratio(-9, 9)},
                         {"h", d.ratio(1, 9)}};
            return b;
        };
    }
    {
        auto& c = add("T7M",
                      "Maier 3.2 cubic with quadratic characteristic and "
                      "Gessel-Stanton right side",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t7m(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"alpha", d.ratio(-8, 8)}, {"beta", d.ratio(1, 9)}};
            b.integers = {{"r", d.integer(0, 2)}, {"n", d.integer(0, 3)}};
            return b;
        };
    }
    {
        auto& c = add("T8", "degenerate Euler-type transformation, first kind",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t8(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            QVec f;
            IVec m;
            draw_fm(d, f, m);
            Rational dd(-(isum(m) + d.integer(0, 2)));
            QVec h;
            IVec p;
            draw_hp(d, dd, h, p);
            b.scalars = {{"a", d.ratio(-7, 7)},
                         {"b", d.ratio(1, 9)},
                         {"d", dd},
                         {"e", d.ratio(1, 12) + 5}};
            b.vectors = {{"f", f}, {"h", h}};
            b.int_vectors = {{"m", m}, {"p", p}};
            return b;
        };
    }
    {
        auto& c = add("T9", "degenerate Euler-type transformation, second "
                      "kind",
                      IdentityKind::FixedArgument, true);
        wire(c, [](const auto& e, const Binding& b) { return eval_t9(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            QVec f;
            IVec m;
            draw_fm(d, f, m);
            Rational dd(-(isum(m) + d.integer(0, 2)));
            QVec h;
            IVec p;
            draw_hp(d, dd, h, p);
            b.scalars = {{"a", Rational(-d.integer(1, 3))},
                         {"b", d.ratio(1, 9)},
                         {"d", dd},
                         {"e", d.ratio(1, 12) + 6}};
            b.vectors = {{"f", f}, {"h", h}};
            b.int_vectors = {{"m", m}, {"p", p}};
            b.integers["k"] = d.integer(2, 3);
            return b;
        };
    }
    {
        auto& c = add("T9R", "closed finite sum for the shifted IPD Gauss "
                      "value",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t9r(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            Rational dd(-d.integer(2, 5));
            QVec h;
            IVec p;
            draw_hp(d, dd, h, p);
            b.scalars = {{"a", d.ratio(-7, 7)},
                         {"d", dd},
                         {"e", d.ratio(1, 12) + 5}};
            b.vectors["h"] = h;
            b.int_vectors["p"] = p;
            b.integers["l"] = d.integer(0, 2);
            return b;
        };
    }
    {
        auto& c = add("T10", "degenerate transformation with the Lhat "
                      "characteristic",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t10(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            QVec f;
            IVec m;
            draw_fm(d, f, m);
            Rational dd(-d.integer(1, 3));
            QVec h;
            IVec p;
            draw_hp(d, dd, h, p);
            b.scalars = {{"a", d.ratio(-7, 7)},   {"g", d.ratio(-7, 7)},
                         {"d", dd},               {"b", d.ratio(1, 9)},
                         {"c", d.ratio(1, 12) + 4}, {"e", d.ratio(1, 12) + 5}};
            b.vectors = {{"f", f}, {"h", h}};
            b.int_vectors = {{"m", m}, {"p", p}};
            return b;
        };
    }
    {
        auto& c = add("T11", "interchange identity from the second Euler "
                      "transformation",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t11(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            long pp = d.integer(1, 2);
            QVec av, bv;
            for (long i = 0; i < pp - 1; ++i) av.push_back(d.ratio(1, 8));
            av.push_back(Rational(-d.integer(1, 4)));
            for (long i = 0; i < pp; ++i) bv.push_back(d.ratio(1, 8) + 3);
            b.scalars = {{"gamma", d.ratio(1, 9)}, {"beta", d.ratio(-7, 7)}};
            b.vectors = {{"av", av}, {"bv", bv}};
            b.integers["q"] = d.integer(1, 2);
            return b;
        };
    }
    {
        auto& c = add("T12", "interchange identity from the first Euler "
                      "transformation",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t12(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            long pp = d.integer(1, 2);
            long mm = d.integer(1, 4);
            QVec av, bv;
            for (long i = 0; i < pp - 1; ++i) av.push_back(d.ratio(1, 8));
            av.push_back(Rational(-mm));
            for (long i = 0; i < pp; ++i) bv.push_back(d.ratio(1, 8) + 3);
            b.scalars = {{"gamma", d.ratio(1, 9)}, {"alpha", d.ratio(-7, 7)}};
            b.vectors = {{"av", av}, {"bv", bv}};
            b.integers["q"] = d.integer(1, mm);
            return b;
        };
    }
    {
        auto& c = add("T13", "interchange identity from Maier's quadratic "
                      "transformation",
                      IdentityKind::FixedArgument, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t13(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            long pp = d.integer(1, 2);
            QVec av, bv;
            for (long i = 0; i < pp - 1; ++i) av.push_back(d.ratio(1, 8));
            av.push_back(Rational(-d.integer(1, 4)));
            for (long i = 0; i < pp; ++i) bv.push_back(d.ratio(1, 8) + 3);
            b.scalars = {{"beta", d.ratio(1, 9)}, {"delta", d.ratio(1, 9)}};
            b.vectors = {{"av", av}, {"bv", bv}};
            b.integers = {{"r", d.integer(0, 2)}, {"q", d.integer(1, 3)}};
            return b;
        };
    }
    {
        auto& c = add("T14", "nonlinearly constrained 3F2-type summation",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t14(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"beta", d.ratio(1, 9)},
                         {"d", Rational(-d.integer(1, 4))},
                         {"gamma", d.ratio(1, 9)}};
            return b;
        };
    }
    {
        auto& c = add("T15", "very well-poised 7F6 summation with a nonlinear "
                      "part",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t15(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            Rational A, Fp;
            for (;;) {
                A = d.ratio(1, 9);
                Fp = d.ratio(1, 8);
                if (denominator(Rational(A - Fp)) > 1) break;
                d.reject();
            }
            b.scalars = {{"A", A},
                         {"C", Rational(-d.integer(1, 4))},
                         {"D", d.ratio(1, 8)},
                         {"E", d.ratio(1, 8)},
                         {"Fp", Fp}};
            return b;
        };
    }
    {
        auto& c = add("T16", "summation from the (5.13) cubic at "
                      "2*beta=alpha+1",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t16(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            Rational alpha, e;
            for (;;) {
                alpha = d.ratio(-8, 8);
                e = d.ratio(1, 12) + 4;
                if (denominator(Rational(e - alpha)) > 1) break;
                d.reject();
            }
            b.scalars = {{"alpha", alpha},
                         {"d", Rational(-d.integer(1, 4))},
                         {"e", e},
                         {"h", d.ratio(1, 9)}};
            return b;
        };
    }
    {
        auto& c = add("T17", "Pfaff-Saalschutz-type extension with a cubic "
                      "constraint",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t17(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            Rational beta;
            for (;;) {
                beta = d.ratio(1, 9);
                if (denominator(Rational(3 * beta)) > 1) break;
                d.reject();
            }
            b.scalars = {{"alpha", d.ratio(-8, 8)},
                         {"beta", beta},
                         {"d", Rational(-d.integer(1, 4))},
                         {"h", d.ratio(1, 9)}};
            return b;
        };
    }
    {
        auto& c = add("T18", "5F4 summation at the half-integer shift",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_t18(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars["alpha"] = d.ratio(-8, 8);
            b.integers = {{"n", d.integer(0, 3)}, {"r", d.integer(0, 1)}};
            return b;
        };
    }
    {
        auto& c = add("C18.1", "r=0 display of the 5F4 summation",
                      IdentityKind::Summation, true);
        wire(c,
             [](const auto& e, const Binding& b) { return eval_c181(e, b); });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars["alpha"] = d.ratio(-8, 8);
            b.integers["n"] = d.integer(0, 3);
            return b;
        };
    }

    // -------- pointwise transformation checks
    {
        auto& c = add("PX-Bailey", "pointwise Bailey cubic transformation",
                      IdentityKind::Pointwise, true);
        wire(c, [](const auto& e, const Binding& b) {
            return eval_px_bailey(e, b);
        });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", Rational(-3 * d.integer(1, 2))},
                         {"b", d.ratio(1, 9)}};
            b.integers["terminating"] = 1;
            return b;
        };
    }
    {
        // the lower Delta(a,2) forces a non-positive integer for a = -3m,
        // so there is no valid terminating instance: float-only entry
        auto& c = add("PX-GS513", "pointwise Gessel-Stanton (5.13) cubic",
                      IdentityKind::Pointwise, false);
        c.float_eval = [](const Binding& b, const PrecisionContext& ctx) {
            return eval_px_gs513(FloatEngine{&ctx}, b);
        };
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)}, {"b", d.ratio(1, 9)}};
            b.integers["terminating"] = 0;
            return b;
        };
    }
    {
        auto& c = add("PX-AAR185", "pointwise Bailey argument-4 cubic",
                      IdentityKind::Pointwise, true);
        wire(c, [](const auto& e, const Binding& b) {
            return eval_px_aar185(e, b);
        });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", Rational(-3 * d.integer(1, 2))},
                         {"b", d.ratio(1, 9, {3, 4, 5})}};
            b.integers["terminating"] = 1;
            return b;
        };
        c.float_sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)},
                         {"b", d.ratio(1, 9, {3, 4, 5})}};
            b.integers["terminating"] = 0;
            return b;
        };
    }
    {
        // a = -m makes the lower 6a+1 a non-positive integer: float-only
        auto& c = add("PX-GS520", "pointwise Gessel-Stanton (5.20) "
                      "quadratic-cubic",
                      IdentityKind::Pointwise, false);
        c.float_eval = [](const Binding& b, const PrecisionContext& ctx) {
            return eval_px_gs520(FloatEngine{&ctx}, b);
        };
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars["a"] = d.ratio(1, 9);
            b.integers["terminating"] = 0;
            return b;
        };
    }
    {
        auto& c = add("PX-GS518", "pointwise Gessel-Stanton (5.18) cubic",
                      IdentityKind::Pointwise, true);
        wire(c, [](const auto& e, const Binding& b) {
            return eval_px_gs518(e, b);
        });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars["a"] = Rational(d.integer(1, 3));
            b.integers["terminating"] = 1;
            return b;
        };
        c.float_sampler = [](Draw& d) {
            Binding b;
            b.scalars["a"] = d.ratio(1, 9);
            b.integers["terminating"] = 0;
            return b;
        };
    }
    {
        auto& c = add("PX-Maier32", "pointwise Maier 3.2 cubic with "
                      "characteristic",
                      IdentityKind::Pointwise, true);
        wire(c, [](const auto& e, const Binding& b) {
            return eval_px_maier32(e, b);
        });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", Rational(-3 * d.integer(1, 2))},
                         {"b", d.ratio(1, 9)}};
            b.integers = {{"r", d.integer(1, 2)}, {"terminating", 1}};
            return b;
        };
    }
    {
        auto& c = add("PX-Maier31", "pointwise Maier 3.1 quadratic with "
                      "characteristic",
                      IdentityKind::Pointwise, true);
        wire(c, [](const auto& e, const Binding& b) {
            return eval_px_maier31(e, b);
        });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", Rational(-2 * d.integer(1, 2))},
                         {"b", d.ratio(1, 9)},
                         {"delta", d.ratio(1, 9)}};
            b.integers = {{"r", d.integer(1, 2)}, {"terminating", 1}};
            return b;
        };
        c.float_sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)},
                         {"b", d.ratio(1, 9)},
                         {"delta", d.ratio(1, 9)}};
            b.integers = {{"r", d.integer(1, 2)}, {"terminating", 0}};
            return b;
        };
    }
    {
        auto& c = add("PX-Euler1", "pointwise Euler-Pfaff transformation",
                      IdentityKind::Pointwise, true);
        wire(c, [](const auto& e, const Binding& b) {
            return eval_px_euler1(e, b);
        });
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", Rational(-d.integer(1, 3))},
                         {"b", d.ratio(-6, 6)},
                         {"c", d.ratio(1, 9) + 1}};
            b.integers["terminating"] = 1;
            return b;
        };
        c.float_sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)},
                         {"b", d.ratio(-6, 6)},
                         {"c", d.ratio(1, 9) + 1}};
            b.integers["terminating"] = 0;
            return b;
        };
    }
    {
        auto& c = add("PX-Euler2", "pointwise Euler transformation",
                      IdentityKind::Pointwise, true);
        wire(c, [](const auto& e, const Binding& b) {
            return eval_px_euler2(e, b);
        });
        c.sampler = [](Draw& d) {
            Binding b;
            long m = d.integer(1, 3);
            Rational a(-m);
            Rational bb = d.ratio(-6, 6);
            long j = d.integer(1, m);
            b.scalars = {{"a", a}, {"b", bb}, {"c", a + bb + j}};
            b.integers["terminating"] = 1;
            return b;
        };
        c.float_sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)},
                         {"b", d.ratio(-6, 6)},
                         {"c", d.ratio(1, 9) + 1}};
            b.integers["terminating"] = 0;
            return b;
        };
    }
    {
        auto& c = add("PX-Kar112", "pointwise degenerate Euler-type "
                      "transformation with residue tail",
                      IdentityKind::Pointwise, false);
        c.float_eval = [](const Binding& b, const PrecisionContext& ctx) {
            return eval_px_kar112(FloatEngine{&ctx}, b);
        };
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)}, {"b", d.ratio(1, 9)}};
            b.vectors["f"] = {d.ratio(3, 12)};
            b.int_vectors["m"] = {2};
            b.integers["terminating"] = 0;
            return b;
        };
    }
    {
        auto& c = add("PX-Kar121", "pointwise degenerate Euler-type "
                      "transformation, shifted bottom",
                      IdentityKind::Pointwise, false);
        c.float_eval = [](const Binding& b, const PrecisionContext& ctx) {
            return eval_px_kar121(FloatEngine{&ctx}, b);
        };
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)}, {"b", d.ratio(1, 9)}};
            b.vectors["f"] = {d.ratio(3, 12)};
            b.int_vectors["m"] = {2};
            b.integers = {{"k", 2}, {"terminating", 0}};
            return b;
        };
    }
    {
        auto& c = add("PX-Deqvect1", "pointwise transformation with the Lhat "
                      "characteristic",
                      IdentityKind::Pointwise, false);
        c.float_eval = [](const Binding& b, const PrecisionContext& ctx) {
            return eval_px_deqvect1(FloatEngine{&ctx}, b);
        };
        c.sampler = [](Draw& d) {
            Binding b;
            b.scalars = {{"a", d.ratio(-6, 6)},
                         {"g", d.ratio(-6, 6)},
                         {"b", d.ratio(1, 9)},
                         {"c", d.ratio(1, 12) + 4}};
            b.vectors["f"] = {d.ratio(3, 12)};
            b.int_vectors["m"] = {2};
            b.integers["terminating"] = 0;
            return b;
        };
    }

    return reg;
}

}  // namespace

const std::vector<IdentityCase>& registry() {
    static const std::vector<IdentityCase> reg = build_registry();
    return reg;
}

const IdentityCase& find_case(const std::string& id) {
    for (const auto& c : registry())
        if (c.id == id) return c;
    throw DomainError("unknown identity id: " + id);
}

// ------------------------------------------------------------ sample, verify

namespace {

Binding sample_impl(const std::string& id, unsigned long long seed, long trial,
                    bool float_flavor) {
    const IdentityCase& c = find_case(id);
    const auto& smp =
        float_flavor && c.float_sampler ? c.float_sampler : c.sampler;
    Draw d(id, seed, trial);
    for (;;) {
        Binding b;
        try {
            b = smp(d);
            // dry-run: the binding must evaluate cleanly
            if (c.exact_eval && !(float_flavor && c.float_sampler)) {
                (void)c.exact_eval(b);
            } else {
                PrecisionContext probe{15, 15};
                ScopedPrecision sp(probe);
                (void)c.float_eval(b, probe);
            }
        } catch (const SamplerExhausted&) {
            throw;
        } catch (const std::runtime_error&) {
            d.reject();
            continue;
        }
        return b;
    }
}

Real rel_err_of(const Complex& l, const Complex& r,
                const PrecisionContext& ctx) {
    Real d = abs(l - r);
    Real m = abs(l);
    Real m2 = abs(r);
    if (m2 > m) m = m2;
    if (m < ctx.epsilon()) return d;
    return d / m;
}

std::string value_str(const Rational& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

Binding sample(const std::string& id, unsigned long long seed, long trial) {
    return sample_impl(id, seed, trial, false);
}

Binding sample_float(const std::string& id, unsigned long long seed,
                     long trial) {
    return sample_impl(id, seed, trial, true);
}

VerificationReport verify(const std::string& id, long trials,
                          const PrecisionContext& ctx, VerifyMode mode,
                          unsigned long long seed) {
    const IdentityCase& c = find_case(id);
    bool use_exact =
        mode == VerifyMode::Exact || (mode == VerifyMode::Auto && c.exact_capable);
    if (mode == VerifyMode::Exact && !c.exact_capable)
        throw DomainError("identity is not exact-capable: " + id);
    ScopedPrecision sp(ctx);
    Real tol = pow(Real(10), -(int)ctx.target_digits + 5);
    VerificationReport rep;
    rep.id = c.id;
    rep.paper_ref = c.paper_ref;
    rep.max_rel_err = Real(0);
    for (long t = 0; t < trials; ++t) {
        TrialRecord rec;
        rec.mode = use_exact ? "exact" : "float";
        rec.abs_err = Real(0);
        rec.rel_err = Real(0);
        try {
            rec.binding = use_exact ? sample(id, seed, t)
                                    : sample_float(id, seed, t);
            rec.pass = true;
            if (use_exact) {
                auto pairs = c.exact_eval(rec.binding);
                for (const auto& [l, r] : pairs) {
                    if (l != r) rec.pass = false;
                    Complex lc(l), rc(r);
                    Real re = rel_err_of(lc, rc, ctx);
                    if (re > rec.rel_err) {
                        rec.rel_err = re;
                        rec.abs_err = abs(lc - rc);
                        rec.lhs = value_str(l);
                        rec.rhs = value_str(r);
                    }
                    if (rec.lhs.empty()) {
                        rec.lhs = value_str(l);
                        rec.rhs = value_str(r);
                    }
                }
            } else {
                auto pairs = c.float_eval(rec.binding, ctx);
                for (const auto& [l, r] : pairs) {
                    Real re = rel_err_of(l, r, ctx);
                    if (re > tol) rec.pass = false;
                    if (re >= rec.rel_err) {
                        rec.rel_err = re;
                        rec.abs_err = abs(l - r);
                        rec.lhs = to_string(l, ctx.target_digits);
                        rec.rhs = to_string(r, ctx.target_digits);
                    }
                }
            }
            if (!rec.pass && rec.reason.empty())
                rec.reason = "sides disagree";
        } catch (const std::runtime_error& ex) {
            rec.pass = false;
            rec.reason = ex.what();
        }
        if (!rec.pass) rep.failures++;
        if (rec.rel_err >= rep.max_rel_err) {
            rep.max_rel_err = rec.rel_err;
            rep.worst_binding = rec.binding.describe();
        }
        rep.records.push_back(std::move(rec));
        rep.trials++;
    }
    return rep;
}

// ----------------------------------------------------------- closed forms

Rational finite_remark_sum(const Rational& a, const Rational& d,
                           const Rational& e, const QVec& h, const IVec& p,
                           long l) {
    long P = isum(p);
    Rational sign = l % 2 ? Rational(-1) : Rational(1);
    Rational pref = sign * pochhammer_vec(plus(h, -d), p) *
                    gamma_ratio(qv(e - a - d, 1 + d - e + a, e + l),
                                qv(e - a, e - d, l + d - e + a + P + 1)) /
                    nz(pochhammer_vec(plus(h, Rational(l)), p));
    Rational s(0);
    for (long j = 0; j <= P; ++j) {
        QVec up = qv(Rational(-j));
        QVec lo;
        for (size_t i = 0; i < h.size(); ++i) {
            up.push_back(1 - h[i] + d);
            lo.push_back(1 - h[i] + d - p[i]);
        }
        Rational Fj = eval_series(up, lo, Rational(1)).value;
        s += pochhammer(d - e + 1, j) / qfact(j) * Fj *
             pochhammer(Rational(l) + d, j) *
             pochhammer(Rational(l + j + 1) + d - e + a, P - j);
    }
    return pref * s;
}

Rational gessel_stanton_sum(const Rational& lambda, long n, long k) {
    if (k < 0 || k > n) throw DomainError("requires 0 <= k <= n");
    Rational num = (2 - lambda) * (n + 1) * qfact(3 * n + 2) *
                   pochhammer(Rational(-1, 2) - n, k) *
                   pochhammer(2 - lambda + 2 * n, k) *
                   pochhammer((5 - lambda) / 3, k) * qpow(Rational(-4, 27), k);
    Rational den = (2 - lambda + 3 * n) * qfact(2 * n + 2) *
                   pochhammer(2 - lambda + 2 * n, n) *
                   pochhammer(Rational(-2, 3) - n, k) *
                   pochhammer(Rational(-1, 3) - n, k) *
                   pochhammer((2 - lambda) / 3, k);
    if (den == 0) throw PoleError("degenerate closed-form denominator");
    return num / den;
}

int lambda_sign_probe(const std::string& id) {
    const unsigned long long kProbeSeed = 7;
    const long kProbeTrials = 10;
    auto eval_with = [&](const Binding& b, int sign) {
        if (id == "T2") return eval_t2(ExactEngine{}, b, sign);
        if (id == "T4") return eval_t4(ExactEngine{}, b, sign);
        if (id == "T5") return eval_t5(ExactEngine{}, b, sign);
        if (id == "T6") return eval_t6(ExactEngine{}, b, sign);
        throw DomainError("probe only covers T2, T4, T5, T6");
    };
    bool pass[2] = {true, true};  // index 0: sign -1, index 1: sign +1
    for (long t = 0; t < kProbeTrials; ++t) {
        Binding b = sample(id, kProbeSeed, t);
        for (int s : {-1, +1}) {
            bool ok;
            try {
                auto pr = eval_with(b, s);
                ok = pr[0].first == pr[0].second;
            } catch (const std::runtime_error&) {
                ok = false;
            }
            pass[s < 0 ? 0 : 1] = pass[s < 0 ? 0 : 1] && ok;
        }
    }
    if (pass[0] && !pass[1]) return -1;
    if (pass[1] && !pass[0]) return +1;
    if (pass[0] && pass[1])
        throw DomainError("probe cannot separate the sign conventions");
    throw BothFail("both sign conventions fail: " + id);
}

bool has_master_data(const std::string& id) {
    static const std::vector<std::string> ids{"T1", "T2", "T3", "T4",
                                              "T5", "T6", "T7", "T7M"};
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

MasterData master_data(const std::string& id, const Binding& bd) {
    MasterData md;
    TransformSpec& t = md.spec;
    t.w = 1;
    auto gs_ab = [&](const Rational& alpha, long n) {
        md.a = qv((alpha - 1) / 3, Rational(-n));
        md.b = qv((alpha + 5) / 3, 2 * n + alpha + 2);
    };
    auto ipd_ab = [&](const Binding& b) {
        md.a = qv(b.q("d"), plusp(b.qv("h"), b.iv("p")));
        md.b = qv(b.q("e"), b.qv("h"));
    };
    if (id == "T1" || id == "T2") {
        const Rational &a = bd.q("alpha"), &b = bd.q("beta");
        t.alpha = qv(a, 2 * b - a - 1, a + 2 - 2 * b);
        t.beta = qv(b, a - b + Rational(3, 2));
        t.delta = dl(a, 3);
        t.gamma = t.beta;
        t.lambda = -a;
        t.u = 1;
        t.v = 3;
        t.M = Rational(1, 4);
        t.D = Rational(-27, 4);
        if (id == "T1")
            gs_ab(a, bd.i("n"));
        else
            ipd_ab(bd);
    } else if (id == "T3" || id == "T4") {
        const Rational &a = bd.q("alpha"), &b = bd.q("beta");
        t.alpha = qv(Rational(1), a - 2 * b);
        t.beta = qv(b + 1);
        t.delta = qv(dl(a, 3), b);
        t.gamma = qv(dl(a, 2), b + 1);
        t.lambda = -a;
        t.u = 1;
        t.v = 3;
        t.M = Rational(1);
        t.D = Rational(-27, 4);
        if (id == "T3")
            gs_ab(a, bd.i("n"));
        else
            ipd_ab(bd);
    } else if (id == "T5") {
        const Rational &a = bd.q("alpha"), &b = bd.q("beta");
        t.alpha = qv(a, b - Rational(1, 2), a + 1 - b);
        t.beta = qv(2 * b - 1, 2 * a + 2 - 2 * b);
        t.delta = dl(a, 3);
        t.gamma = qv(b, a - b + Rational(3, 2));
        t.lambda = -a;
        t.u = 2;
        t.v = 3;
        t.M = Rational(4);
        t.D = Rational(27, 4);
        ipd_ab(bd);
    } else if (id == "T6") {
        const Rational& a = bd.q("alpha");
        t.alpha = qv(3 * a, 3 * a + Rational(1, 2));
        t.beta = qv(6 * a + 1);
        t.delta = qv(a, a + Rational(1, 2));
        t.gamma = qv(2 * a + 1);
        t.lambda = -2 * a;
        t.u = 3;
        t.v = 2;
        t.M = Rational(4, 3);
        t.D = Rational(4, 27);
        ipd_ab(bd);
    } else if (id == "T7") {
        const Rational& a = bd.q("alpha");
        t.alpha = qv(3 * a, -3 * a);
        t.beta = qv(Rational(1, 2));
        t.delta = qv(a, -a);
        t.gamma = qv(Rational(1, 2));
        t.lambda = Rational(0);
        t.u = 1;
        t.v = -2;
        t.M = Rational(3, 4);
        t.D = Rational(27, 4);
        ipd_ab(bd);
    } else if (id == "T7M") {
        const Rational &a = bd.q("alpha"), &b = bd.q("beta");
        long r = bd.i("r");
        t.alpha = qv(a, Rational(1, 2) - r - b, Rational(1, 2) - r + b);
        t.beta = qv((a + b + r) / 2 + Rational(3, 4),
                    (a - b + r) / 2 + Rational(3, 4));
        t.delta = dl(a, 3);
        t.gamma = t.beta;
        t.lambda = -a;
        t.u = 1;
        t.v = 3;
        t.M = Rational(1, 4);
        t.D = Rational(-27, 4);
        gs_ab(a, bd.i("n"));
    } else {
        throw DomainError("no master expansion for id: " + id);
    }
    return md;
}

}  // namespace hypid
