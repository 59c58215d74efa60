#pragma once

#include "hypid/polynomial.hpp"
#include "hypid/series.hpp"

#include <utility>
#include <vector>

namespace hypid {

struct DegenerateDegree : DomainError {
    using DomainError::DomainError;
};
struct DegenerateLeadingCoefficient : DomainError {
    using DomainError::DomainError;
};
struct ZeroConstantTerm : DomainError {
    using DomainError::DomainError;
};
struct IntegerRoot : DomainError {
    using DomainError::DomainError;
};

using QPoly = Polynomial<Rational>;
using QVec = std::vector<Rational>;
using IVec = std::vector<long>;

// Gamma(e-d) * Y_p(u,v;t): the pure Pochhammer part, exact-capable.
QPoly y_poly_core(long u, long v, const Rational& d, const Rational& e,
                  const Rational& lambda, const QVec& h, const IVec& p);

// Y_p(u,v;t) proper; exact mode requires e-d to be a positive integer.
QPoly y_poly(long u, long v, const Rational& d, const Rational& e,
             const Rational& lambda, const QVec& h, const IVec& p);

// Degree-1 case with its closed-form root.
std::pair<QPoly, Rational> y1_closed(long u, long v, const Rational& d,
                                     const Rational& e, const Rational& lambda,
                                     const Rational& h);

QPoly q3r_poly(long r, const Rational& alpha, const Rational& beta);

Rational beta_l(long l, const Rational& b, const QVec& f, const IVec& m);
Rational sigma_ql(long q, long l, const Rational& b, const QVec& f, const IVec& m);

QPoly t_poly(long k, const Rational& a, const Rational& b, const QVec& f,
             const IVec& m);

QPoly lhat_poly(const Rational& a, const Rational& g, const Rational& c,
                const Rational& b, const QVec& f, const IVec& m);

QPoly p_big_m(long q, const Rational& gamma, const Rational& beta, const QVec& a,
              const QVec& b);
QPoly r_big_m(long q, const Rational& alpha, const Rational& gamma, const QVec& a,
              const QVec& b);
QPoly q_big_m(long q, long r, const Rational& beta, const Rational& delta,
              const QVec& a, const QVec& b);

QPoly p2r_poly(long r, const Rational& alpha, const Rational& beta,
               const Rational& delta);

// All complex roots, multiplicity-aware, ordered by (re, im).
struct RootSet {
    std::vector<Complex> roots;
};

RootSet roots(const Polynomial<Complex>& poly, const PrecisionContext& ctx);
RootSet roots(const QPoly& poly, const PrecisionContext& ctx);

// F(a; b; P; x) = scale * F(a + upper; b + lower; x)
struct ShiftPairs {
    std::vector<Complex> upper;  // 1 - lambda_i
    std::vector<Complex> lower;  // -lambda_i
    Complex scale;               // P(0)
};

ShiftPairs to_shift_pairs(const Polynomial<Complex>& poly, const PrecisionContext& ctx);
ShiftPairs to_shift_pairs(const QPoly& poly, const PrecisionContext& ctx);

}  // namespace hypid
