// Command-line runner for the verification suites. Subcommands mirror the
// scenario kinds; `run` executes a whole config file on a worker pool.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dbr/scenario.hpp"

namespace {

using dbr::Complex;
using dbr::Json;

// "re" or "re:im"
Complex parse_complex_token(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) return Complex(std::stod(token), 0.0);
    return Complex(std::stod(token.substr(0, colon)), std::stod(token.substr(colon + 1)));
}

std::vector<Complex> parse_complex_csv(const std::string& csv) {
    std::vector<Complex> out;
    std::string token;
    std::istringstream in(csv);
    while (std::getline(in, token, ',')) {
        if (token.empty()) throw dbr::ConfigError("empty coefficient in '" + csv + "'");
        out.push_back(parse_complex_token(token));
    }
    if (out.empty()) throw dbr::ConfigError("empty coefficient list");
    return out;
}

Json complex_list_json(const std::vector<Complex>& zs) {
    Json arr = Json::array();
    for (const Complex& z : zs) arr.push_back(Json::array({z.real(), z.imag()}));
    return arr;
}

// --inner accepts "monomial:d", an inline JSON object, or a path to a JSON file
Json parse_inner_flag(const std::string& s) {
    if (s.rfind("monomial:", 0) == 0) return Json(s);
    if (!s.empty() && s.front() == '{') return Json::parse(s);
    std::ifstream in(s);
    if (!in) throw dbr::ConfigError("--inner: not a shorthand, inline JSON, or readable file: " + s);
    return Json::parse(in);
}

// --f takes "n0,n1,.../d0,d1,..." with complex tokens re or re:im
Json parse_rational_flag(const std::string& s) {
    const auto slash = s.find('/');
    Json f;
    f["num"] = complex_list_json(parse_complex_csv(slash == std::string::npos ? s : s.substr(0, slash)));
    if (slash != std::string::npos) f["den"] = complex_list_json(parse_complex_csv(s.substr(slash + 1)));
    return f;
}

// "re,im" or "re"
Json parse_lambda_flag(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return Json::array({std::stod(s), 0.0});
    return Json::array({std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))});
}

struct CommonFlags {
    std::string inner = "monomial:1";
    int trunc = 256;
    std::uint64_t seed = 424242;
    std::string format = "json";
    int jobs = 1;
    bool timings = false;
    std::string out;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--inner", flags.inner, "inner function: monomial:d, inline JSON, or file");
    cmd->add_option("--trunc", flags.trunc, "Fourier truncation order");
    cmd->add_option("--seed", flags.seed, "seed for randomized probes");
    cmd->add_option("--format", flags.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--jobs", flags.jobs, "worker count (DBR_LAB_JOBS overrides)");
    cmd->add_flag("--timings", flags.timings, "include wall-clock timings in reports");
    cmd->add_option("--out", flags.out, "write the report stream to a file instead of stdout");
}

int execute(dbr::RunConfig rc, const CommonFlags& flags) {
    rc.format = flags.format;
    rc.jobs = flags.jobs;
    rc.timings = flags.timings;
    if (!flags.out.empty()) {
        std::ofstream out(flags.out);
        if (!out) throw dbr::ConfigError("cannot write " + flags.out);
        return dbr::run_and_report(rc, out);
    }
    return dbr::run_and_report(rc, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verification of de Branges-Rovnyak decompositions for finite Blaschke products"};
    app.require_subcommand(1);

    // run <config>
    std::string config_path;
    CommonFlags run_flags;
    auto* run_cmd = app.add_subcommand("run", "execute every scenario in a config file");
    run_cmd->add_option("config", config_path, "JSON config")->required();
    run_cmd->add_option("--format", run_flags.format, "override report format")
        ->check(CLI::IsMember({"json", "text"}));
    run_cmd->add_option("--jobs", run_flags.jobs, "worker count (DBR_LAB_JOBS overrides)")
        ->default_val(0);
    run_cmd->add_flag("--timings", run_flags.timings, "include wall-clock timings");
    run_cmd->add_option("--out", run_flags.out, "write reports to a file");

    // verify <kind>
    std::string verify_kind;
    CommonFlags verify_flags;
    int verify_n = 0, vs_family = 1, vs_n = 0, vs_power = 1, family = 1, probes = 12;
    std::string verify_f;
    auto* verify_cmd = app.add_subcommand("verify", "run one verification scenario");
    verify_cmd->add_option("kind", verify_kind, "thm1 | thm3 | hayashi | set-eq | section4")
        ->required()
        ->check(CLI::IsMember({"thm1", "thm3", "hayashi", "set-eq", "section4"}));
    add_common(verify_cmd, verify_flags);
    verify_cmd->add_option("--n", verify_n, "power n (family1 scenarios)");
    verify_cmd->add_option("--family", family, "side A family for set-eq")->check(CLI::IsMember({1, 2}));
    verify_cmd->add_option("--vs-family", vs_family, "side B family for set-eq")
        ->check(CLI::IsMember({1, 2}));
    verify_cmd->add_option("--vs-n", vs_n, "side B power n for set-eq");
    verify_cmd->add_option("--vs-inner-power", vs_power, "side B uses inner^power (set-eq)");
    verify_cmd->add_option("--probes", probes, "probe count for set-eq");
    verify_cmd->add_option("--f", verify_f, "rational candidate num/den (section4)");

    // clark atoms
    CommonFlags clark_flags;
    std::string lambda_flag = "1";
    auto* clark_cmd = app.add_subcommand("clark", "Clark measure utilities");
    auto* atoms_cmd = clark_cmd->add_subcommand("atoms", "atoms and masses of the level-set measure");
    add_common(atoms_cmd, clark_flags);
    atoms_cmd->add_option("--lambda", lambda_flag, "unimodular level, re,im");

    // cyclic test
    CommonFlags cyclic_flags;
    int cyclic_family = 1, cyclic_n = 0, kmax = 40;
    bool lenient = false;
    std::string cyclic_f;
    auto* cyclic_cmd = app.add_subcommand("cyclic", "cyclicity checks");
    auto* test_cmd = cyclic_cmd->add_subcommand("test", "criterion vs density oracle for one candidate");
    add_common(test_cmd, cyclic_flags);
    test_cmd->add_option("--family", cyclic_family, "1 or 2")->check(CLI::IsMember({1, 2}));
    test_cmd->add_option("--n", cyclic_n, "power n (family1)");
    test_cmd->add_option("--f", cyclic_f, "rational candidate num/den")->required();
    test_cmd->add_flag("--lenient", lenient, "allow boundary zeros of the candidate");
    test_cmd->add_option("--kmax", kmax, "largest polynomial degree for the oracle");

    // cohn count
    CommonFlags cohn_flags;
    std::string coeffs_flag;
    auto* cohn_cmd = app.add_subcommand("cohn", "closed-disk zero counting");
    auto* count_cmd = cohn_cmd->add_subcommand("count", "count zeros in the closed unit disk");
    count_cmd->add_option("--coeffs", coeffs_flag, "ascending coefficients, re or re:im tokens")
        ->required();
    count_cmd->add_option("--format", cohn_flags.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    count_cmd->add_option("--out", cohn_flags.out, "write the report to a file");

    // report merge
    std::vector<std::string> merge_paths;
    std::string merge_out;
    auto* report_cmd = app.add_subcommand("report", "report utilities");
    auto* merge_cmd = report_cmd->add_subcommand("merge", "merge report streams, ordered by index");
    merge_cmd->add_option("files", merge_paths, "report files (one JSON object per line)")->required();
    merge_cmd->add_option("--out", merge_out, "write merged stream to a file");

    try {
        app.parse(argc, argv);

        if (*run_cmd) {
            dbr::RunConfig rc = dbr::load_run_config(config_path);
            if (run_flags.jobs > 0) rc.jobs = run_flags.jobs;
            if (run_cmd->count("--format")) rc.format = run_flags.format;
            rc.timings = run_flags.timings;
            if (!run_flags.out.empty()) {
                std::ofstream out(run_flags.out);
                if (!out) throw dbr::ConfigError("cannot write " + run_flags.out);
                return dbr::run_and_report(rc, out);
            }
            return dbr::run_and_report(rc, std::cout);
        }

        if (*verify_cmd) {
            Json s;
            s["kind"] = verify_kind;
            s["inner"] = parse_inner_flag(verify_flags.inner);
            s["trunc"] = verify_flags.trunc;
            if (verify_kind == "thm1") {
                s["n"] = verify_n;
            } else if (verify_kind == "set-eq") {
                s["seed"] = verify_flags.seed;
                s["probes"] = probes;
                s["a"] = Json{{"family", family}, {"n", verify_n}};
                s["b"] = Json{{"family", vs_family}, {"n", vs_n}, {"inner_power", vs_power}};
            } else if (verify_kind == "section4") {
                if (verify_f.empty()) throw dbr::ConfigError("section4 requires --f");
                s["f"] = parse_rational_flag(verify_f);
            }
            dbr::RunConfig rc;
            rc.scenarios.push_back(dbr::parse_scenario(s));
            return execute(std::move(rc), verify_flags);
        }

        if (*atoms_cmd) {
            Json s;
            s["kind"] = "clark";
            s["inner"] = parse_inner_flag(clark_flags.inner);
            s["lambda"] = parse_lambda_flag(lambda_flag);
            dbr::RunConfig rc;
            rc.scenarios.push_back(dbr::parse_scenario(s));
            return execute(std::move(rc), clark_flags);
        }

        if (*test_cmd) {
            Json s;
            s["kind"] = "cyclic";
            s["inner"] = parse_inner_flag(cyclic_flags.inner);
            s["trunc"] = cyclic_flags.trunc;
            s["family"] = cyclic_family;
            s["n"] = cyclic_n;
            s["f"] = parse_rational_flag(cyclic_f);
            s["lenient"] = lenient;
            s["kmax"] = kmax;
            dbr::RunConfig rc;
            rc.scenarios.push_back(dbr::parse_scenario(s));
            return execute(std::move(rc), cyclic_flags);
        }

        if (*count_cmd) {
            Json s;
            s["kind"] = "cohn";
            s["coeffs"] = complex_list_json(parse_complex_csv(coeffs_flag));
            dbr::RunConfig rc;
            rc.scenarios.push_back(dbr::parse_scenario(s));
            return execute(std::move(rc), cohn_flags);
        }

        if (*merge_cmd) {
            const auto lines = dbr::merge_reports(merge_paths);
            if (!merge_out.empty()) {
                std::ofstream out(merge_out);
                if (!out) throw dbr::ConfigError("cannot write " + merge_out);
                for (const auto& l : lines) out << l.dump() << "\n";
            } else {
                for (const auto& l : lines) std::cout << l.dump() << "\n";
            }
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const dbr::ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
