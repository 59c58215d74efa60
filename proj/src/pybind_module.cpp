// Python bindings for the core operations: series evaluation, the identity
// catalog, verification, and the sign probe.  Rationals cross the boundary
// as strings ("3/2", "-1"), exact values come back as rational strings and
// float values as decimal strings, so exactness survives the language gap.

#include "hypid/catalog.hpp"
#include "hypid/series.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace hypid;

namespace {

Rational rational_from(const py::handle& obj) {
    std::string text;
    if (py::isinstance<py::int_>(obj) || py::isinstance<py::str>(obj)) {
        text = py::str(obj).cast<std::string>();
    } else {
        // anything with a faithful str(), e.g. fractions.Fraction
        text = py::str(obj).cast<std::string>();
    }
    size_t slash = text.find('/');
    if (slash == std::string::npos) return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    return Rational(num) / Rational(den);
}

QVec qvec_from(const py::sequence& seq) {
    QVec out;
    for (const auto& item : seq) out.push_back(rational_from(item));
    return out;
}

std::string rational_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

std::string eval(const py::sequence& upper, const py::sequence& lower,
                 const py::object& arg, const std::string& mode,
                 unsigned digits) {
    QVec up = qvec_from(upper);
    QVec lo = qvec_from(lower);
    Rational x = rational_from(arg);
    PrecisionContext ctx{digits, 20};
    ScopedPrecision sp(ctx);
    bool exact =
        mode == "exact" || (mode == "auto" && termination_index(up) >= 0);
    if (exact) return rational_str(eval_series(up, lo, x).value);
    std::vector<Complex> u, l;
    for (const auto& a : up) u.emplace_back(a);
    for (const auto& b : lo) l.emplace_back(b);
    return to_string(eval_series(u, l, Complex(x), ctx).value, digits);
}

py::list identities() {
    py::list out;
    for (const auto& c : registry()) {
        py::dict d;
        d["id"] = c.id;
        d["paper_ref"] = c.paper_ref;
        d["exact_capable"] = c.exact_capable;
        out.append(std::move(d));
    }
    return out;
}

py::dict verify_py(const std::string& id, long trials, unsigned digits,
                   const std::string& mode, unsigned long long seed) {
    PrecisionContext ctx{digits, 20};
    VerifyMode vm = mode == "exact"   ? VerifyMode::Exact
                    : mode == "float" ? VerifyMode::Float
                                      : VerifyMode::Auto;
    auto rep = verify(id, trials, ctx, vm, seed);
    py::dict d;
    d["id"] = rep.id;
    d["paper_ref"] = rep.paper_ref;
    d["trials"] = rep.trials;
    d["failures"] = rep.failures;
    d["max_rel_err"] = rep.max_rel_err.str();
    d["worst_binding"] = rep.worst_binding;
    return d;
}

}  // namespace

PYBIND11_MODULE(_hypid, m) {
    m.doc() = "extended hypergeometric series and identity verification";

    py::register_exception<DomainError>(m, "DomainError");

    m.def("eval", &eval, py::arg("upper"), py::arg("lower"),
          py::arg("arg") = py::str("1"), py::arg("mode") = "auto",
          py::arg("digits") = 30,
          "Evaluate pFq(upper; lower | arg).  Parameters are rational "
          "strings, ints, or fractions.Fraction.  Returns a rational string "
          "in exact mode, a decimal string in float mode.");

    m.def("identities", &identities,
          "Catalog entries as dicts with id, paper_ref, exact_capable.");

    m.def("verify", &verify_py, py::arg("id"), py::arg("trials") = 25,
          py::arg("digits") = 30, py::arg("mode") = "auto",
          py::arg("seed") = 0,
          "Run seeded verification trials for one identity; returns the "
          "report summary as a dict.");

    m.def(
        "sample",
        [](const std::string& id, unsigned long long seed, long trial) {
            return sample(id, seed, trial).describe();
        },
        py::arg("id"), py::arg("seed") = 0, py::arg("trial") = 0,
        "Deterministically sample one admissible parameter binding.");

    m.def("probe", &lambda_sign_probe, py::arg("id"),
          "Resolve the characteristic shift convention empirically; "
          "returns the validating sign.");
}
