// Command-line front end: single-point entropy evaluation, parameter
// sweeps, estimation protocols, and closed-form vs ODE cross-validation.
//
// Exit codes: 0 success, 1 domain/estimation/oracle failure, 2 usage error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rwent/entropy.hpp"
#include "rwent/estimation.hpp"
#include "rwent/mode_evolution.hpp"
#include "rwent/sweep.hpp"
#include "rwent/version.hpp"

namespace {

using nlohmann::json;
using namespace rwent;

struct CommonOpts {
    std::string format = "text";
    std::string out = "-";
    bool reproducible = false;
};

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
    return buf;
}

Provenance base_provenance(const CommonOpts& c) {
    Provenance prov;
    prov.emplace_back("tool", std::string("rwent ") + kVersion);
    if (!c.reproducible) prov.emplace_back("timestamp", iso_timestamp());
    return prov;
}

// key=value report, or a flat JSON object under --format json
void emit_report(std::ostream& os, const std::string& format,
                 const Provenance& prov,
                 const std::vector<std::pair<std::string, std::string>>& fields) {
    if (format == "json") {
        json j;
        for (const auto& [k, v] : prov) j["config"][k] = v;
        for (const auto& [k, v] : fields) {
            char* end = nullptr;
            const double num = std::strtod(v.c_str(), &end);
            if (end && *end == '\0' && std::isfinite(num))
                j[k] = num;
            else
                j[k] = v;
        }
        os << j.dump(2) << "\n";
    } else {
        for (const auto& [k, v] : prov) os << "config." << k << "=" << v << "\n";
        for (const auto& [k, v] : fields) os << k << "=" << v << "\n";
    }
}

// writes through a temporary ostream choice; removes partial files on error
int with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path == "-") {
        fn(std::cout);
        return 0;
    }
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot open output file: " << path << "\n";
        return 1;
    }
    try {
        fn(f);
        f.close();
        if (!f) throw std::runtime_error("flush failed");
    } catch (const std::exception& e) {
        f.close();
        std::remove(path.c_str());
        std::cerr << "error: writing " << path << " failed: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

// "epsilon=0.5,1,2;rho=0.5,1,2;mass=0.5,1,2;k=0.5,1,2"
struct OracleGrid {
    std::vector<double> epsilon{0.5, 1.0, 2.0};
    std::vector<double> rho{0.5, 1.0, 2.0};
    std::vector<double> mass{0.5, 1.0, 2.0};
    std::vector<double> k{0.5, 1.0, 2.0};
};

OracleGrid parse_grid(const std::string& spec) {
    OracleGrid g;
    if (spec.empty()) return g;
    std::stringstream ss(spec);
    std::string part;
    while (std::getline(ss, part, ';')) {
        const auto eq = part.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--grid", "expected axis=v1,v2,...");
        const std::string axis = part.substr(0, eq);
        std::vector<double> vals;
        std::stringstream vs(part.substr(eq + 1));
        std::string tok;
        while (std::getline(vs, tok, ',')) vals.push_back(std::stod(tok));
        if (vals.empty())
            throw CLI::ValidationError("--grid", "empty value list for " + axis);
        if (axis == "epsilon") g.epsilon = vals;
        else if (axis == "rho") g.rho = vals;
        else if (axis == "mass") g.mass = vals;
        else if (axis == "k") g.k = vals;
        else throw CLI::ValidationError("--grid", "unknown axis: " + axis);
    }
    return g;
}

std::string fmt(double v) { return format_g17(v); }

// Effective argv with config-file values merged in: every key=value line of
// the file whose flag is absent from the command line is appended as
// "--key value ...", so explicit flags always win. Lines starting with '#'
// or ';' and section headers are ignored.
std::vector<std::string> merge_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string path;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;

    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot read config file: " + path);
    const auto has_flag = [&args](const std::string& flag) {
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
        return false;
    };
    std::string line;
    while (std::getline(f, line)) {
        const auto b = line.find_first_not_of(" \t");
        if (b == std::string::npos) continue;
        if (line[b] == '#' || line[b] == ';' || line[b] == '[') continue;
        const auto eq = line.find('=', b);
        if (eq == std::string::npos)
            throw std::runtime_error("config line is not key=value: " + line);
        std::string key = line.substr(b, eq - b);
        key.erase(key.find_last_not_of(" \t") + 1);
        if (has_flag("--" + key)) continue;  // flags beat the config file
        args.push_back("--" + key);
        std::stringstream vs(line.substr(eq + 1));
        std::string tok;
        while (vs >> tok) args.push_back(tok);
    }
    return args;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mode entanglement from a tanh-profile expanding universe"};
    app.require_subcommand(1);
    std::string config_path;
    const auto with_config = [&config_path](CLI::App* sc) {
        sc->add_option("--config", config_path,
                       "key=value config file (flag names as keys)");
    };

    CommonOpts common;

    // ---- entropy ----------------------------------------------------------
    double mass = 1.0, k = 1.0, rho = 1.0, epsilon = 1.0;
    std::string stats = "both";
    auto* cmd_entropy = app.add_subcommand(
        "entropy", "Entanglement entropy of a single mode");
    with_config(cmd_entropy);
    cmd_entropy->add_option("--mass", mass, "field mass (>= 0)")
        ->check(CLI::NonNegativeNumber);
    cmd_entropy->add_option("--k", k, "mode momentum magnitude (> 0)")
        ->check(CLI::PositiveNumber);
    cmd_entropy->add_option("--rho", rho, "expansion rapidity (> 0)")
        ->check(CLI::PositiveNumber);
    cmd_entropy->add_option("--epsilon", epsilon, "volume parameter (> 0)")
        ->check(CLI::PositiveNumber);
    cmd_entropy->add_option("--stats", stats, "fermion|boson|both")
        ->check(CLI::IsMember({"fermion", "boson", "both"}));
    cmd_entropy->add_option("--format", common.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd_entropy->add_flag("--reproducible", common.reproducible,
                          "suppress the timestamp field");

    // ---- sweep ------------------------------------------------------------
    std::string axis = "k", spacing = "log", sweep_stats = "both";
    double from = 0.01, to = 100.0;
    int count = 200;
    auto* cmd_sweep = app.add_subcommand(
        "sweep", "Evaluate both entropies along one parameter axis");
    with_config(cmd_sweep);
    cmd_sweep->add_option("--axis", axis, "k|mass|epsilon|rho")
        ->check(CLI::IsMember({"k", "mass", "epsilon", "rho"}));
    cmd_sweep->add_option("--from", from, "axis start")->required();
    cmd_sweep->add_option("--to", to, "axis end")->required();
    cmd_sweep->add_option("--count", count, "number of grid points (>= 2)")
        ->required();
    cmd_sweep->add_option("--spacing", spacing, "log|linear")
        ->check(CLI::IsMember({"log", "linear"}));
    cmd_sweep->add_option("--stats", sweep_stats, "fermion|boson|both")
        ->check(CLI::IsMember({"fermion", "boson", "both"}));
    cmd_sweep->add_option("--mass", mass, "fixed mass")->check(CLI::NonNegativeNumber);
    cmd_sweep->add_option("--k", k, "fixed k")->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--rho", rho, "fixed rho")->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--epsilon", epsilon, "fixed epsilon")
        ->check(CLI::PositiveNumber);
    cmd_sweep->add_option("--format", common.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd_sweep->add_option("--out", common.out, "output path ('-' = stdout)");
    cmd_sweep->add_flag("--reproducible", common.reproducible,
                        "suppress the timestamp field");

    // ---- optimal-k --------------------------------------------------------
    auto* cmd_opt = app.add_subcommand(
        "optimal-k", "Entanglement-maximizing momentum for a fermion field");
    with_config(cmd_opt);
    cmd_opt->add_option("--mass", mass, "field mass (> 0)")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_opt->add_option("--rho", rho, "expansion rapidity")->check(CLI::PositiveNumber);
    cmd_opt->add_option("--epsilon", epsilon, "volume parameter")
        ->check(CLI::PositiveNumber);
    cmd_opt->add_option("--format", common.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd_opt->add_flag("--reproducible", common.reproducible,
                      "suppress the timestamp field");

    // ---- max-entanglement --------------------------------------------------
    auto* cmd_max = app.add_subcommand(
        "max-entanglement", "Joint (mass, k) entanglement maximum");
    with_config(cmd_max);
    cmd_max->add_option("--rho", rho, "expansion rapidity")->check(CLI::PositiveNumber);
    cmd_max->add_option("--epsilon", epsilon, "volume parameter")
        ->check(CLI::PositiveNumber);
    cmd_max->add_option("--format", common.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd_max->add_flag("--reproducible", common.reproducible,
                      "suppress the timestamp field");

    // ---- estimate-rho ------------------------------------------------------
    double k_observed = 1.0, epsilon_ref = 1.0;
    std::vector<double> bracket{1.0, 2000.0};
    auto* cmd_rho = app.add_subcommand(
        "estimate-rho", "Invert an observed optimal momentum into the rapidity");
    with_config(cmd_rho);
    cmd_rho->add_option("--mass", mass, "field mass used in the measurement")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_rho->add_option("--k-observed", k_observed,
                        "measured entanglement-maximizing momentum")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_rho->add_option("--bracket", bracket, "rho search bracket (lo hi)")
        ->expected(2);
    cmd_rho->add_option("--epsilon-ref", epsilon_ref,
                        "reference volume parameter for the inversion")
        ->check(CLI::PositiveNumber);
    cmd_rho->add_option("--format", common.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd_rho->add_flag("--reproducible", common.reproducible,
                      "suppress the timestamp field");

    // ---- epsilon-bound -----------------------------------------------------
    double entropy_obs = 0.0;
    auto* cmd_eps = app.add_subcommand(
        "epsilon-bound",
        "Lower bound on the volume parameter from an observed optimal-mode entropy");
    with_config(cmd_eps);
    cmd_eps->add_option("--entropy", entropy_obs, "observed entropy in [0, 1)")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    cmd_eps->add_option("--format", common.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd_eps->add_flag("--reproducible", common.reproducible,
                      "suppress the timestamp field");

    // ---- oracle-check ------------------------------------------------------
    std::string grid_spec;
    double tol = 1e-3, ode_tol = 1e-10;
    auto* cmd_oracle = app.add_subcommand(
        "oracle-check", "Closed forms vs ODE integration on a parameter grid");
    with_config(cmd_oracle);
    cmd_oracle->add_option(
        "--grid", grid_spec,
        "axis=v1,v2,...;... (axes: epsilon,rho,mass,k; default 3^4 grid)");
    cmd_oracle->add_option("--tol", tol, "relative tolerance (default 1e-3)")
        ->check(CLI::PositiveNumber);
    cmd_oracle->add_option("--ode-tol", ode_tol, "integrator tolerance")
        ->check(CLI::PositiveNumber);
    cmd_oracle->add_option("--format", common.format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    cmd_oracle->add_flag("--reproducible", common.reproducible,
                         "suppress the timestamp field");

    std::vector<std::string> args;
    try {
        args = merge_config_args(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        std::reverse(args.begin(), args.end());  // CLI11 pops from the back
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // help/version
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (*cmd_entropy) {
            const ExpansionParams p{epsilon, rho};
            const ModeParams mp{mass, k};
            Provenance prov = base_provenance(common);
            prov.emplace_back("stats", stats);
            prov.emplace_back("mass", fmt(mass));
            prov.emplace_back("k", fmt(k));
            prov.emplace_back("rho", fmt(rho));
            prov.emplace_back("epsilon", fmt(epsilon));
            std::vector<std::pair<std::string, std::string>> fields;
            if (stats != "boson") {
                const GammaSq g = gamma_sq_fermion(p, mp);
                fields.emplace_back("log_gamma_sq_fermion", fmt(g.log_value));
                fields.emplace_back("entropy_fermion_bits", fmt(entropy_fermion(g)));
            }
            if (stats != "fermion") {
                const GammaSq g = gamma_sq_boson(p, mp);
                fields.emplace_back("log_gamma_sq_boson", fmt(g.log_value));
                fields.emplace_back("entropy_boson_bits", fmt(entropy_boson(g)));
            }
            emit_report(std::cout, common.format, prov, fields);
            return 0;
        }

        if (*cmd_sweep) {
            SweepSpec spec;
            spec.axis = axis == "k" ? SweepAxis::K
                        : axis == "mass" ? SweepAxis::Mass
                        : axis == "epsilon" ? SweepAxis::Epsilon
                                            : SweepAxis::Rho;
            spec.range = {from, to, count, spacing == "log"};
            spec.expansion = {epsilon, rho};
            spec.mode = {mass, k};
            spec.statistics = sweep_stats == "fermion" ? SweepStats::Fermion
                              : sweep_stats == "boson" ? SweepStats::Boson
                                                       : SweepStats::Both;
            const std::vector<RunRecord> rows = run_sweep(spec);
            Provenance prov = base_provenance(common);
            prov.emplace_back("axis", axis);
            prov.emplace_back("from", fmt(from));
            prov.emplace_back("to", fmt(to));
            prov.emplace_back("count", std::to_string(count));
            prov.emplace_back("spacing", spacing);
            prov.emplace_back("stats", sweep_stats);
            prov.emplace_back("mass", fmt(mass));
            prov.emplace_back("k", fmt(k));
            prov.emplace_back("rho", fmt(rho));
            prov.emplace_back("epsilon", fmt(epsilon));
            const bool json_out = common.format == "json";
            return with_output(common.out, [&](std::ostream& os) {
                json_out ? write_json(os, rows, prov) : write_csv(os, rows, prov);
            });
        }

        if (*cmd_opt) {
            const OptimalMode om = optimal_k({epsilon, rho}, mass);
            Provenance prov = base_provenance(common);
            prov.emplace_back("mass", fmt(mass));
            prov.emplace_back("rho", fmt(rho));
            prov.emplace_back("epsilon", fmt(epsilon));
            emit_report(std::cout, common.format, prov,
                        {{"k_star", fmt(om.k_star)},
                         {"entropy_at_peak", fmt(om.entropy_at_peak)},
                         {"multimodal_warning", om.multimodal_warning ? "true" : "false"}});
            return 0;
        }

        if (*cmd_max) {
            const MaxEntanglement me = max_entanglement({epsilon, rho});
            Provenance prov = base_provenance(common);
            prov.emplace_back("rho", fmt(rho));
            prov.emplace_back("epsilon", fmt(epsilon));
            emit_report(std::cout, common.format, prov,
                        {{"m_star", fmt(me.m_star)},
                         {"k_star", fmt(me.k_star)},
                         {"s_max", fmt(me.s_max)}});
            return 0;
        }

        if (*cmd_rho) {
            const EstimationResult r =
                estimate_rho(mass, k_observed, epsilon_ref, {bracket[0], bracket[1]});
            Provenance prov = base_provenance(common);
            prov.emplace_back("mass", fmt(mass));
            prov.emplace_back("k_observed", fmt(k_observed));
            prov.emplace_back("epsilon_ref", fmt(epsilon_ref));
            prov.emplace_back("bracket", fmt(bracket[0]) + " " + fmt(bracket[1]));
            emit_report(std::cout, common.format, prov,
                        {{"estimate", fmt(r.estimate)},
                         {"bracket_lo", fmt(r.bracket_lo)},
                         {"bracket_hi", fmt(r.bracket_hi)},
                         {"residual", fmt(r.residual)},
                         {"iterations", std::to_string(r.iterations)}});
            return 0;
        }

        if (*cmd_eps) {
            const EstimationResult r = epsilon_lower_bound(entropy_obs);
            Provenance prov = base_provenance(common);
            prov.emplace_back("entropy", fmt(entropy_obs));
            emit_report(std::cout, common.format, prov,
                        {{"eps_min", fmt(r.estimate)},
                         {"bracket_lo", fmt(r.bracket_lo)},
                         {"bracket_hi", fmt(r.bracket_hi)},
                         {"residual", fmt(r.residual)},
                         {"iterations", std::to_string(r.iterations)}});
            return 0;
        }

        if (*cmd_oracle) {
            const OracleGrid grid = parse_grid(grid_spec);
            Provenance prov = base_provenance(common);
            prov.emplace_back("tol", fmt(tol));
            prov.emplace_back("ode_tol", fmt(ode_tol));
            for (const auto& [key, value] : prov)
                std::cout << "config." << key << "=" << value << "\n";

            bool all_ok = true;
            int n_points = 0, n_fail = 0;
            for (double e : grid.epsilon)
                for (double r : grid.rho)
                    for (double m : grid.mass)
                        for (double kk : grid.k)
                            for (Statistics st :
                                 {Statistics::Fermion, Statistics::Boson}) {
                                ++n_points;
                                const ExpansionParams p{e, r};
                                const ModeParams mp{m, kk};
                                std::string status;
                                double closed = 0, oracle = 0, err = 0,
                                       wronskian_dev = 0;
                                try {
                                    const GammaSq g =
                                        st == Statistics::Fermion
                                            ? gamma_sq_fermion(p, mp)
                                            : gamma_sq_boson(p, mp);
                                    closed = g.value();
                                    oracle = oracle_gamma_sq(p, mp, st, ode_tol);
                                    if (st == Statistics::Boson) {
                                        const auto traj = integrate_mode(
                                            p, mp, st, Branch::Minus, 25.0 / r,
                                            ode_tol);
                                        const auto pair =
                                            match_out(traj, p, mp, st);
                                        wronskian_dev =
                                            std::abs(std::norm(pair.alpha) -
                                                     std::norm(pair.beta) - 1.0);
                                    }
                                    // absolute comparison below 1e-6: zero
                                    // limits make relative error meaningless
                                    bool within;
                                    if (std::abs(closed) < 1e-6) {
                                        err = std::abs(oracle - closed);
                                        within = err <= 1e-8;
                                    } else {
                                        err = std::abs(oracle - closed) /
                                              std::abs(closed);
                                        within = err <= tol;
                                    }
                                    const bool ok =
                                        within && (st != Statistics::Boson ||
                                                   wronskian_dev <= 1e-6);
                                    status = ok ? "ok" : "FAIL";
                                    if (!ok) {
                                        all_ok = false;
                                        ++n_fail;
                                    }
                                } catch (const integration_error& ie) {
                                    status = std::string("integrator-error: ") +
                                             ie.what();
                                    all_ok = false;
                                    ++n_fail;
                                }
                                std::cout
                                    << "epsilon=" << fmt(e) << " rho=" << fmt(r)
                                    << " mass=" << fmt(m) << " k=" << fmt(kk)
                                    << " stat=" << to_string(st)
                                    << " closed=" << fmt(closed)
                                    << " oracle=" << fmt(oracle)
                                    << " rel_err=" << fmt(err);
                                if (st == Statistics::Boson)
                                    std::cout << " wronskian_dev="
                                              << fmt(wronskian_dev);
                                std::cout << " status=" << status << "\n";
                            }
            std::cout << "summary: " << (n_points - n_fail) << "/" << n_points
                      << " within tol=" << fmt(tol) << "\n";
            return all_ok ? 0 : 1;
        }
    } catch (const estimation_error& e) {
        std::cerr << "error (" << to_string(e.kind) << "): " << e.what() << "\n";
        return 1;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
