#pragma once

#include "hypid/polyfactory.hpp"

#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace hypid {

struct SamplerExhausted : DomainError {
    using DomainError::DomainError;
};
// Both sign conventions fail the probe: implementation bug, not a typo.
struct BothFail : DomainError {
    using DomainError::DomainError;
};

// Concrete parameter assignment for one identity trial.
struct Binding {
    std::map<std::string, Rational> scalars;
    std::map<std::string, long> integers;
    std::map<std::string, QVec> vectors;
    std::map<std::string, IVec> int_vectors;

    const Rational& q(const std::string& name) const;
    long i(const std::string& name) const;
    const QVec& qv(const std::string& name) const;
    const IVec& iv(const std::string& name) const;
    std::string describe() const;
};

// Deterministic parameter stream for one (id, seed, trial).
class Draw {
public:
    Draw(const std::string& id, unsigned long long seed, long trial);
    long integer(long lo, long hi);
    long pick(const IVec& choices);
    // Non-integer rational numerator/|den| bounded by small constants.
    Rational ratio(long lo, long hi);
    Rational ratio(long lo, long hi, const IVec& dens);
    void reject();  // counts toward the SamplerExhausted budget

private:
    std::mt19937_64 gen_;
    long budget_;
};

enum class IdentityKind { Summation, FixedArgument, Pointwise };

struct IdentityCase {
    std::string id;
    std::string paper_ref;
    IdentityKind kind;
    bool exact_capable;
    std::function<Binding(Draw&)> sampler;
    std::function<Binding(Draw&)> float_sampler;  // defaults to sampler
    // Each evaluator returns one or more (lhs, rhs) pairs; pointwise
    // entries produce one pair per grid argument.
    std::function<std::vector<std::pair<Rational, Rational>>(const Binding&)>
        exact_eval;
    std::function<std::vector<std::pair<Complex, Complex>>(
        const Binding&, const PrecisionContext&)>
        float_eval;
};

const std::vector<IdentityCase>& registry();
const IdentityCase& find_case(const std::string& id);

// Deterministic rejection sampling; the float flavor may draw
// non-terminating parameter sets for entries that support them.
Binding sample(const std::string& id, unsigned long long seed, long trial);
Binding sample_float(const std::string& id, unsigned long long seed, long trial);

struct TrialRecord {
    Binding binding;
    std::string lhs, rhs;
    Real abs_err, rel_err;
    std::string mode;
    bool pass = false;
    std::string reason;
};

struct VerificationReport {
    std::string id, paper_ref;
    long trials = 0;
    long failures = 0;
    Real max_rel_err;
    std::string worst_binding;
    std::vector<TrialRecord> records;
};

enum class VerifyMode { Exact, Float, Auto };

VerificationReport verify(const std::string& id, long trials,
                          const PrecisionContext& ctx, VerifyMode mode,
                          unsigned long long seed);

// Closed finite-sum form of F(a+l, d+l, h+p+l; e+l, h+l | 1).
Rational finite_remark_sum(const Rational& a, const Rational& d,
                           const Rational& e, const QVec& h, const IVec& p,
                           long l);

// Closed form of 3F2(-lambda+3k, -(lambda+1)/3+k, -n+k;
//                    (5-lambda)/3+k, 2n+2-lambda+k | 1), 0 <= k <= n.
Rational gessel_stanton_sum(const Rational& lambda, long n, long k);

// Resolves the Y-polynomial lambda convention empirically on 10 exact
// bindings; returns the validating sign (-1 here throughout).
int lambda_sign_probe(const std::string& id);

// Master-expansion data (outer-sum form) for the cubic-transformation
// entries T1..T7 and T7M; the double sum must match both identity sides.
struct MasterData {
    TransformSpec spec;
    QVec a, b;
};
MasterData master_data(const std::string& id, const Binding& binding);
bool has_master_data(const std::string& id);

}  // namespace hypid
