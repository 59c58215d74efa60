// hypid: evaluate extended hypergeometric series, list and verify the
// identity catalog, and emit machine-readable reports.
//
// Exit codes: 0 all requested work passed, 1 identity failure, 2 usage or
// configuration error.

#include "hypid/catalog.hpp"
#include "hypid/series.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace hypid;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "1.0.0";

Rational parse_rational(const std::string& text) {
    auto bad = [&] {
        throw CLI::ValidationError("rational", "cannot parse '" + text + "'");
    };
    if (text.empty()) bad();
    std::string s = text;
    size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Integer(s));
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) bad();
        return Rational(num) / Rational(den);
    } catch (const std::exception&) {
        bad();
    }
    return Rational(0);  // unreachable
}

QVec parse_rational_list(const std::string& text) {
    QVec out;
    if (text.empty()) return out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    return out;
}

unsigned default_digits() {
    if (const char* env = std::getenv("HYPID_DIGITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 15) return (unsigned)v;
        std::cerr << "warning: ignoring invalid HYPID_DIGITS='" << env
                  << "' (need an integer >= 15)\n";
    }
    return 30;
}

std::string real_string(const Real& x) { return x.str(); }

VerifyMode parse_mode(const std::string& mode) {
    if (mode == "exact") return VerifyMode::Exact;
    if (mode == "float") return VerifyMode::Float;
    return VerifyMode::Auto;
}

// ------------------------------------------------------------------ reports

ordered_json report_json(const std::vector<VerificationReport>& reports,
                         unsigned digits, unsigned long long seed) {
    ordered_json doc;
    doc["version"] = kVersion;
    doc["precision"] = digits;
    doc["seed"] = seed;
    doc["cases"] = ordered_json::array();
    for (const auto& rep : reports) {
        ordered_json c;
        c["id"] = rep.id;
        c["paper_ref"] = rep.paper_ref;
        c["trials"] = rep.trials;
        c["failures"] = rep.failures;
        c["max_rel_err"] = real_string(rep.max_rel_err);
        c["worst_binding"] = rep.worst_binding;
        doc["cases"].push_back(std::move(c));
    }
    return doc;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

void report_csv(std::ostream& os, const std::vector<VerificationReport>& reports) {
    os << "id,paper_ref,trial,mode,binding,lhs,rhs,abs_err,rel_err,pass,reason\n";
    for (const auto& rep : reports) {
        long t = 0;
        for (const auto& rec : rep.records) {
            os << csv_escape(rep.id) << ',' << csv_escape(rep.paper_ref) << ','
               << t++ << ',' << rec.mode << ','
               << csv_escape(rec.binding.describe()) << ','
               << csv_escape(rec.lhs) << ',' << csv_escape(rec.rhs) << ','
               << real_string(rec.abs_err) << ',' << real_string(rec.rel_err)
               << ',' << (rec.pass ? "1" : "0") << ',' << csv_escape(rec.reason)
               << '\n';
        }
    }
}

void report_human(std::ostream& os, const std::vector<VerificationReport>& reports) {
    for (const auto& rep : reports) {
        os << rep.id << ": " << (rep.failures == 0 ? "pass" : "FAIL") << " ("
           << rep.trials - rep.failures << "/" << rep.trials
           << " trials, max rel err " << rep.max_rel_err.str(3) << ")\n";
        if (rep.failures != 0) {
            for (const auto& rec : rep.records)
                if (!rec.pass)
                    os << "  failed: " << rec.binding.describe()
                       << (rec.reason.empty() ? "" : " -- " + rec.reason)
                       << "\n";
        }
    }
}

int emit_report(const std::vector<VerificationReport>& reports,
                const std::string& format, const std::string& out_path,
                unsigned digits, unsigned long long seed) {
    std::ostringstream body;
    if (format == "json")
        body << report_json(reports, digits, seed).dump(2) << '\n';
    else if (format == "csv")
        report_csv(body, reports);
    else
        report_human(body, reports);
    if (out_path.empty() || out_path == "-") {
        std::cout << body.str();
        return 0;
    }
    std::ofstream ofs(out_path, std::ios::binary);
    if (!ofs || !(ofs << body.str())) {
        std::cerr << "error: cannot write report to '" << out_path << "'\n";
        return 2;
    }
    return 0;
}

// ------------------------------------------------------------- subcommands

int run_eval(const std::string& upper, const std::string& lower,
             const std::string& arg, const std::string& mode, unsigned digits) {
    QVec up = parse_rational_list(upper);
    QVec lo = parse_rational_list(lower);
    Rational x = parse_rational(arg);
    PrecisionContext ctx{digits, 20};
    ScopedPrecision sp(ctx);
    bool exact = mode == "exact" ||
                 (mode == "auto" && termination_index(up) >= 0);
    if (exact) {
        std::cout << eval_series(up, lo, x).value << '\n';
        return 0;
    }
    std::vector<Complex> u, l;
    for (const auto& a : up) u.emplace_back(a);
    for (const auto& b : lo) l.emplace_back(b);
    Complex v = eval_series(u, l, Complex(x), ctx).value;
    std::cout << to_string(v, digits) << '\n';
    return 0;
}

int run_list() {
    size_t width = 0;
    for (const auto& c : registry()) width = std::max(width, c.id.size());
    for (const auto& c : registry()) {
        std::cout << c.id << std::string(width - c.id.size() + 2, ' ')
                  << (c.exact_capable ? "exact" : "float") << "  "
                  << c.paper_ref << '\n';
    }
    return 0;
}

int run_verify(const std::vector<std::string>& ids, long trials,
               unsigned long long seed, unsigned digits,
               const std::string& mode, const std::string& format,
               const std::string& out_path) {
    PrecisionContext ctx{digits, 20};
    VerifyMode vm = parse_mode(mode);
    std::vector<std::string> ordered = ids;
    std::sort(ordered.begin(), ordered.end());
    std::vector<VerificationReport> reports;
    for (const auto& id : ordered)
        reports.push_back(verify(id, trials, ctx, vm, seed));
    int rc = emit_report(reports, format, out_path, digits, seed);
    if (rc != 0) return rc;
    for (const auto& rep : reports)
        if (rep.failures != 0) return 1;
    return 0;
}

int run_probe(const std::vector<std::string>& ids) {
    bool ok = true;
    for (const auto& id : ids) {
        try {
            int sign = lambda_sign_probe(id);
            std::cout << id << ": characteristic shift argument "
                      << (sign < 0 ? "-" : "+") << "lambda validates\n";
        } catch (const BothFail& ex) {
            std::cout << id << ": both conventions fail\n";
            ok = false;
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"extended hypergeometric identity verifier"};
    app.require_subcommand(1);

    unsigned digits = default_digits();
    long trials = 25;
    unsigned long long seed = 0;
    std::string mode = "auto", format, out_path;
    std::vector<std::string> ids;
    std::string upper, lower, arg = "1";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--trials", trials, "trials per identity")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed, "sampling seed");
        cmd->add_option("--digits", digits, "target decimal digits")
            ->check(CLI::Range(15u, 10000u));
        cmd->add_option("--mode", mode, "exact | float | auto")
            ->check(CLI::IsMember({"exact", "float", "auto"}));
        cmd->add_option("--out", out_path, "report path ('-' for stdout)");
        cmd->add_option("--format", format, "json | csv | human")
            ->check(CLI::IsMember({"json", "csv", "human"}));
    };

    auto* eval_cmd = app.add_subcommand("eval", "evaluate one series");
    eval_cmd->add_option("--upper", upper, "comma-separated upper parameters");
    eval_cmd->add_option("--lower", lower, "comma-separated lower parameters");
    eval_cmd->add_option("--arg", arg, "series argument (rational)");
    eval_cmd->add_option("--digits", digits, "target decimal digits")
        ->check(CLI::Range(15u, 10000u));
    eval_cmd->add_option("--mode", mode, "exact | float | auto")
        ->check(CLI::IsMember({"exact", "float", "auto"}));

    auto* list_cmd = app.add_subcommand("list", "list catalog identities");

    auto* verify_cmd = app.add_subcommand("verify", "verify selected identities");
    verify_cmd->add_option("--id", ids, "identity id (repeatable)")
        ->required()
        ->delimiter(',');
    add_common(verify_cmd);

    auto* verify_all_cmd =
        app.add_subcommand("verify-all", "verify every catalog identity");
    add_common(verify_all_cmd);

    auto* probe_cmd = app.add_subcommand(
        "probe", "resolve the characteristic shift convention empirically");
    probe_cmd->add_option("--id", ids, "identity id (repeatable)")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    // default report format: json when writing to a file, human on stdout
    if (format.empty())
        format = (!out_path.empty() && out_path != "-") ? "json" : "human";

    try {
        if (*eval_cmd) return run_eval(upper, lower, arg, mode, digits);
        if (*list_cmd) return run_list();
        if (*verify_cmd)
            return run_verify(ids, trials, seed, digits, mode, format, out_path);
        if (*verify_all_cmd) {
            std::vector<std::string> all;
            for (const auto& c : registry()) all.push_back(c.id);
            return run_verify(all, trials, seed, digits, mode, format, out_path);
        }
        if (*probe_cmd) {
            if (ids.empty()) ids = {"T2", "T4", "T5", "T6"};
            return run_probe(ids);
        }
    } catch (const CLI::ValidationError& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    } catch (const std::runtime_error& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 2;
    }
    return 2;
}
