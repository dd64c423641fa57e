#ifndef DBR_SCENARIO_HPP
#define DBR_SCENARIO_HPP

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "dbr/cyclicity.hpp"

namespace dbr {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

enum class ScenarioKind { thm1, thm3, hayashi, clark, cohn, cyclic, set_eq, section4 };

inline const std::map<std::string, ScenarioKind>& scenario_kind_names() {
    static const std::map<std::string, ScenarioKind> names = {
        {"thm1", ScenarioKind::thm1},       {"thm3", ScenarioKind::thm3},
        {"hayashi", ScenarioKind::hayashi}, {"clark", ScenarioKind::clark},
        {"cohn", ScenarioKind::cohn},       {"cyclic", ScenarioKind::cyclic},
        {"set-eq", ScenarioKind::set_eq},   {"section4", ScenarioKind::section4},
    };
    return names;
}

inline ScenarioKind scenario_kind_from(const std::string& s) {
    const auto it = scenario_kind_names().find(s);
    if (it == scenario_kind_names().end()) throw ConfigError("unknown scenario kind '" + s + "'");
    return it->second;
}

inline std::string to_string(ScenarioKind k) {
    for (const auto& [name, kind] : scenario_kind_names())
        if (kind == k) return name;
    return "?";
}

namespace cfg {

inline void reject_unknown_keys(const Json& obj, const std::vector<std::string>& allowed,
                                const std::string& where) {
    if (!obj.is_object()) throw ConfigError(where + " must be an object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const auto& a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError("unknown field '" + key + "' in " + where);
    }
}

inline Complex parse_complex(const Json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw ConfigError(where + ": complex values are numbers or [re, im] pairs");
}

inline std::vector<Complex> parse_complex_list(const Json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + " must be an array");
    std::vector<Complex> out;
    for (const auto& e : j) out.push_back(parse_complex(e, where));
    return out;
}

/// Inner-function document: {"monomial": d} or {"zeros": [[re,im],...],
/// "rotation": [re,im]} (rotation defaults to 1).
inline BlaschkeProduct parse_inner(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.rfind("monomial:", 0) == 0) return BlaschkeProduct::monomial(std::stoi(s.substr(9)));
        throw ConfigError("inner: unrecognized shorthand '" + s + "'");
    }
    reject_unknown_keys(j, {"monomial", "zeros", "rotation"}, "inner");
    if (j.contains("monomial")) {
        if (j.contains("zeros") || j.contains("rotation"))
            throw ConfigError("inner: monomial excludes zeros/rotation");
        return BlaschkeProduct::monomial(j.at("monomial").get<int>());
    }
    if (!j.contains("zeros")) throw ConfigError("inner: needs monomial or zeros");
    std::vector<Complex> zeros = parse_complex_list(j.at("zeros"), "inner.zeros");
    Complex rot(1.0, 0.0);
    if (j.contains("rotation")) rot = parse_complex(j.at("rotation"), "inner.rotation");
    return BlaschkeProduct(std::move(zeros), rot);
}

inline RationalBoundaryFn parse_rational(const Json& j, const std::string& where) {
    reject_unknown_keys(j, {"num", "den"}, where);
    if (!j.contains("num")) throw ConfigError(where + ": missing num");
    const ComplexPoly num{parse_complex_list(j.at("num"), where + ".num")};
    ComplexPoly den = ComplexPoly::one();
    if (j.contains("den")) den = ComplexPoly{parse_complex_list(j.at("den"), where + ".den")};
    return {num, den};
}

}  // namespace cfg

/// One scenario as parsed from a config document; unknown fields are rejected.
struct ScenarioConfig {
    ScenarioKind kind = ScenarioKind::thm1;
    Json raw;  // echoed into the report
    Json inner;
    int n = 0;
    int trunc = 256;
    std::uint64_t seed = 424242;
    Complex lambda{1.0, 0.0};
    std::vector<Complex> coeffs;
    std::optional<Json> f;
    int family = 1;
    bool lenient = false;
    int kmax = 40;
    int probes = 12;
    // set-eq sides: {family, n, inner_power}
    int family_a = 1, n_a = 0, power_a = 1;
    int family_b = 1, n_b = 0, power_b = 1;
    std::map<std::string, double> tolerances;

    BlaschkeProduct inner_fn() const { return cfg::parse_inner(inner); }

    double tol(const std::string& name, double fallback) const {
        const auto it = tolerances.find(name);
        return it == tolerances.end() ? fallback : it->second;
    }
};

inline ScenarioConfig parse_scenario(const Json& j) {
    ScenarioConfig sc;
    sc.raw = j;
    if (!j.contains("kind")) throw ConfigError("scenario: missing kind");
    sc.kind = scenario_kind_from(j.at("kind").get<std::string>());

    std::vector<std::string> allowed = {"kind", "inner", "trunc", "seed", "tolerances"};
    switch (sc.kind) {
        case ScenarioKind::thm1: allowed.push_back("n"); break;
        case ScenarioKind::thm3: break;
        case ScenarioKind::hayashi: break;
        case ScenarioKind::clark: allowed.push_back("lambda"); break;
        case ScenarioKind::cohn: allowed = {"kind", "coeffs", "tolerances"}; break;
        case ScenarioKind::cyclic:
            allowed.insert(allowed.end(), {"family", "n", "f", "lenient", "kmax"});
            break;
        case ScenarioKind::set_eq: allowed.insert(allowed.end(), {"a", "b", "probes"}); break;
        case ScenarioKind::section4: allowed.push_back("f"); break;
    }
    cfg::reject_unknown_keys(j, allowed, "scenario");

    if (j.contains("inner")) sc.inner = j.at("inner");
    if (j.contains("n")) sc.n = j.at("n").get<int>();
    if (j.contains("trunc")) sc.trunc = j.at("trunc").get<int>();
    if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("lambda")) sc.lambda = cfg::parse_complex(j.at("lambda"), "lambda");
    if (j.contains("coeffs")) sc.coeffs = cfg::parse_complex_list(j.at("coeffs"), "coeffs");
    if (j.contains("f")) sc.f = j.at("f");
    if (j.contains("family")) sc.family = j.at("family").get<int>();
    if (j.contains("lenient")) sc.lenient = j.at("lenient").get<bool>();
    if (j.contains("kmax")) sc.kmax = j.at("kmax").get<int>();
    if (j.contains("probes")) sc.probes = j.at("probes").get<int>();
    if (j.contains("tolerances")) {
        if (!j.at("tolerances").is_object()) throw ConfigError("tolerances must be an object");
        for (const auto& [key, value] : j.at("tolerances").items()) {
            if (!value.is_number()) throw ConfigError("tolerance '" + key + "' must be a number");
            sc.tolerances[key] = value.get<double>();
        }
    }
    for (const char* side : {"a", "b"}) {
        if (!j.contains(side)) continue;
        const Json& s = j.at(side);
        cfg::reject_unknown_keys(s, {"family", "n", "inner_power"}, std::string("set-eq side ") + side);
        int family = 1, nn = 0, power = 1;
        if (s.contains("family")) family = s.at("family").get<int>();
        if (s.contains("n")) nn = s.at("n").get<int>();
        if (s.contains("inner_power")) power = s.at("inner_power").get<int>();
        if (std::string(side) == "a") {
            sc.family_a = family;
            sc.n_a = nn;
            sc.power_a = power;
        } else {
            sc.family_b = family;
            sc.n_b = nn;
            sc.power_b = power;
        }
    }
    if (sc.kind == ScenarioKind::cohn && sc.coeffs.empty())
        throw ConfigError("cohn scenario: missing coeffs");
    if ((sc.kind == ScenarioKind::cyclic || sc.kind == ScenarioKind::section4) && !sc.f)
        throw ConfigError(to_string(sc.kind) + " scenario: missing f");
    return sc;
}

namespace detail {

inline Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

inline PairSpec spec_for(int family, const BlaschkeProduct& inner, int n) {
    return {family == 2 ? PairFamily::family2 : PairFamily::family1, inner, n};
}

inline std::vector<Complex> interior_grid_25() {
    std::vector<Complex> grid;
    for (int ring = 1; ring <= 5; ++ring)
        for (int k = 0; k < 5; ++k)
            grid.push_back(std::polar(0.17 * ring, 2.0 * 3.14159265358979323846 * k / 5.0 + 0.2));
    return grid;
}

}  // namespace detail

/// Runs one scenario; returns {pass, metrics}. Throws only for configuration
/// mistakes; numerical errors are embedded by the caller.
inline std::pair<bool, Json> run_scenario(const ScenarioConfig& sc) {
    Json m;
    switch (sc.kind) {
        case ScenarioKind::thm1: {
            const auto rep = verify_family1_decomposition(sc.inner_fn(), sc.n, sc.trunc);
            m["scenario"] = rep.scenario;
            m["max_cross"] = rep.max_cross;
            m["max_completeness"] = rep.max_completeness;
            m["max_completeness_enlarged"] = rep.max_completeness_enlarged;
            m["residual_nonincreasing"] = rep.residual_nonincreasing;
            const bool pass = rep.max_cross < sc.tol("cross", rep.cross_tol) &&
                              rep.max_completeness < sc.tol("completeness", rep.completeness_tol);
            return {pass, m};
        }
        case ScenarioKind::thm3: {
            const auto rep = verify_family2_decomposition(sc.inner_fn(), sc.trunc);
            m["scenario"] = rep.scenario;
            m["max_cross"] = rep.max_cross;
            m["max_completeness"] = rep.max_completeness;
            m["max_completeness_enlarged"] = rep.max_completeness_enlarged;
            m["residual_nonincreasing"] = rep.residual_nonincreasing;
            const bool pass = rep.max_cross < sc.tol("cross", rep.cross_tol) &&
                              rep.max_completeness < sc.tol("completeness", rep.completeness_tol);
            return {pass, m};
        }
        case ScenarioKind::hayashi: {
            const auto rep = verify_hayashi_checks(sc.inner_fn(), sc.trunc);
            m["re_identity_err"] = rep.re_identity_err;
            m["f1_norm_sq"] = rep.f1_norm_sq;
            m["pair_identity_err"] = rep.pair_identity_err;
            m["f_form_err"] = rep.f_form_err;
            m["kernel_ratio_max"] = rep.kernel_ratio_max;
            m["image_scale"] = rep.image_scale;
            m["image_err_max"] = rep.image_err_max;
            m["f0_rigid"] = rep.f0_rigid;
            return {rep.pass, m};
        }
        case ScenarioKind::clark: {
            const BlaschkeProduct I = sc.inner_fn();
            const AtomicMeasure atoms = clark_atoms(I, sc.lambda);
            Json table = Json::array();
            for (const ClarkAtom& a : atoms.atoms()) {
                Json row;
                row["zeta"] = detail::complex_json(a.zeta);
                row["mass"] = a.mass;
                table.push_back(row);
            }
            const double perr = verify_poisson_identity(I, detail::interior_grid_25(), sc.lambda);
            m["lambda"] = detail::complex_json(sc.lambda);
            m["atoms"] = table;
            m["total_mass"] = atoms.total_mass();
            m["poisson_max_err"] = perr;
            return {perr < sc.tol("poisson", 1e-8), m};
        }
        case ScenarioKind::cohn: {
            const ComplexPoly p{sc.coeffs};
            const int count = closed_disk_zero_count(p);
            int census = 0;
            for (const Complex& r : poly_roots(p).roots)
                if (std::abs(r) < 1.0) ++census;
            m["count"] = count;
            m["census"] = census;
            return {count == census, m};
        }
        case ScenarioKind::cyclic: {
            const HbContext ctx(detail::spec_for(sc.family, sc.inner_fn(), sc.n), sc.trunc);
            const RationalBoundaryFn f = cfg::parse_rational(*sc.f, "f");
            const auto v = cyclicity_verdict(ctx, f, sc.lenient ? OuterMode::lenient : OuterMode::strict,
                                             sc.kmax);
            Json atom_values = Json::array();
            for (const Complex& z : v.criterion.atom_values) atom_values.push_back(detail::complex_json(z));
            m["atom_values"] = atom_values;
            m["min_atom_abs"] = v.criterion.min_abs;
            m["criterion_cyclic"] = v.criterion.cyclic;
            m["oracle_residuals"] = v.oracle.residuals;
            m["oracle_final"] = v.oracle.final_residual;
            m["oracle_ill_conditioned"] = v.oracle.ill_conditioned;
            m["agree"] = v.agree;
            return {v.agree, m};
        }
        case ScenarioKind::set_eq: {
            const BlaschkeProduct base = sc.inner_fn();
            const PairSpec sa = detail::spec_for(sc.family_a, base.pow(sc.power_a), sc.n_a);
            const PairSpec sb = detail::spec_for(sc.family_b, base.pow(sc.power_b), sc.n_b);
            const auto rep = verify_set_equality(sa, sb, sc.probes, sc.trunc, sc.seed);
            m["all_accepted"] = rep.all_accepted;
            m["min_ratio"] = rep.min_ratio;
            m["max_ratio"] = rep.max_ratio;
            m["ratios"] = rep.ratios;
            m["seed"] = rep.seed;
            return {rep.pass, m};
        }
        case ScenarioKind::section4: {
            const HbContext ctx(detail::spec_for(1, sc.inner_fn(), 0), sc.trunc);
            const RationalBoundaryFn f = cfg::parse_rational(*sc.f, "f");
            const auto rep = verify_evaluation_functionals(ctx, f);
            m["eval_errors"] = rep.eval_errors;
            m["max_eval_error"] = rep.max_eval_error;
            m["max_offdiag_ratio"] = rep.max_offdiag_ratio;
            m["min_diag"] = rep.min_diag;
            return {rep.pass, m};
        }
    }
    throw ConfigError("unhandled scenario kind");
}

struct ScenarioResult {
    int index = 0;
    bool pass = false;
    bool errored = false;
    std::string error;
    Json metrics;
    double elapsed_ms = 0.0;
};

struct RunConfig {
    std::vector<ScenarioConfig> scenarios;
    int jobs = 1;
    std::string format = "json";
    bool timings = false;
};

inline RunConfig parse_run_config(const Json& doc) {
    cfg::reject_unknown_keys(doc, {"schema", "jobs", "format", "scenarios"}, "config");
    if (doc.contains("schema") && doc.at("schema").get<int>() != kSchemaVersion)
        throw ConfigError("unsupported config schema");
    RunConfig rc;
    if (doc.contains("jobs")) rc.jobs = doc.at("jobs").get<int>();
    if (doc.contains("format")) {
        rc.format = doc.at("format").get<std::string>();
        if (rc.format != "json" && rc.format != "text") throw ConfigError("format must be json or text");
    }
    if (!doc.contains("scenarios") || !doc.at("scenarios").is_array())
        throw ConfigError("config: missing scenarios array");
    for (const auto& s : doc.at("scenarios")) rc.scenarios.push_back(parse_scenario(s));
    return rc;
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config parse: ") + e.what());
    }
    return parse_run_config(doc);
}

/// Executes the scenarios on a small worker pool; results are assembled in
/// scenario order regardless of completion order. DBR_LAB_JOBS overrides the
/// requested worker count.
inline std::vector<ScenarioResult> run_all(const RunConfig& rc) {
    int jobs = rc.jobs;
    if (const char* env = std::getenv("DBR_LAB_JOBS")) jobs = std::max(1, std::atoi(env));
    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(rc.scenarios.size())));

    std::vector<ScenarioResult> results(rc.scenarios.size());
    std::atomic<std::size_t> next{0};
    const auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rc.scenarios.size()) return;
            ScenarioResult& r = results[i];
            r.index = static_cast<int>(i);
            const auto t0 = std::chrono::steady_clock::now();
            try {
                const auto [pass, metrics] = run_scenario(rc.scenarios[i]);
                r.pass = pass;
                r.metrics = metrics;
            } catch (const std::exception& e) {
                r.errored = true;
                r.pass = false;
                r.error = e.what();
            }
            r.elapsed_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return results;
}

inline Json report_line(const ScenarioConfig& sc, const ScenarioResult& r, bool timings) {
    Json line;
    line["schema"] = kSchemaVersion;
    line["index"] = r.index;
    line["kind"] = to_string(sc.kind);
    line["pass"] = r.pass;
    if (r.errored) line["error"] = r.error;
    line["metrics"] = r.metrics;
    line["config"] = sc.raw;
    line["version"] = kToolVersion;
    if (timings) line["elapsed_ms"] = r.elapsed_ms;
    return line;
}

inline std::string format_text_line(const Json& line) {
    std::ostringstream os;
    os << "[" << (line.at("pass").get<bool>() ? "PASS" : "FAIL") << "] #" << line.at("index").get<int>()
       << " " << line.at("kind").get<std::string>();
    if (line.contains("error")) {
        os << "  error: " << line.at("error").get<std::string>();
        return os.str();
    }
    for (const auto& [key, value] : line.at("metrics").items()) {
        if (value.is_array() || value.is_object()) continue;  // tables stay in the json stream
        os << "  " << key << "=" << value.dump();
    }
    if (line.contains("elapsed_ms")) os << "  elapsed_ms=" << line.at("elapsed_ms").dump();
    return os.str();
}

/// Full run: parse, execute, stream one report per scenario. Exit code 0 when
/// everything passed, 1 on any failure or scenario error (2 is reserved for
/// configuration errors and assigned by the caller).
inline int run_and_report(const RunConfig& rc, std::ostream& out) {
    const auto results = run_all(rc);
    bool all_pass = true;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Json line = report_line(rc.scenarios[i], results[i], rc.timings);
        if (rc.format == "text")
            out << format_text_line(line) << "\n";
        else
            out << line.dump() << "\n";
        all_pass = all_pass && results[i].pass && !results[i].errored;
    }
    return all_pass ? 0 : 1;
}

/// Merges report streams (one JSON object per line), ordering by index.
inline std::vector<Json> merge_reports(const std::vector<std::string>& paths) {
    std::vector<Json> lines;
    for (const auto& p : paths) {
        std::ifstream in(p);
        if (!in) throw ConfigError("cannot open report " + p);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            try {
                lines.push_back(Json::parse(line));
            } catch (const std::exception& e) {
                throw ConfigError("report " + p + ": " + e.what());
            }
        }
    }
    std::stable_sort(lines.begin(), lines.end(), [](const Json& x, const Json& y) {
        return x.value("index", 0) < y.value("index", 0);
    });
    return lines;
}

}  // namespace dbr

#endif  // DBR_SCENARIO_HPP
