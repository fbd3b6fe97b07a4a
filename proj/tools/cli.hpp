#pragma once

// The `vassrank` command line. run_cli() takes its streams as arguments so the
// test suite can drive every command in-process.
//
// Exit codes:
//   analyze     0 terminating, 10 non-terminating, 2 bad input
//   check       0 verified, 1 rejected, 2 bad input
//   complexity  0 terminating, 10 non-terminating, 3 oracle budget exceeded, 2 bad input
//   simulate    0 finite, 10 non-termination detected, 3 budget exceeded, 2 bad input
//   generate    0, 2 bad parameters

#include "vassrank/vassrank.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace vassrank::cli {

constexpr int exit_ok = 0;
constexpr int exit_rejected = 1;
constexpr int exit_bad_input = 2;
constexpr int exit_budget = 3;
constexpr int exit_non_terminating = 10;

struct GlobalFlags {
    std::string out;
    std::string format = "json";
    std::string mode = "primal-dual";
    std::uint64_t seed = 1;
};

namespace detail {

inline void write_out(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

inline AnalysisOptions options_from(const GlobalFlags& g, bool min_coeff, bool min_witness) {
    AnalysisOptions o;
    o.mode = g.mode == "loop" ? Mode::Loop : Mode::PrimalDual;
    o.minimize_coefficients = min_coeff;
    o.minimize_witness = min_witness;
    return o;
}

inline std::string verdict_text(const Vass& v, const AnalysisResult& r) {
    if (r.terminating()) return "terminating, order " + std::to_string(r.certificate().order);
    const auto& w = r.witness();
    return "non-terminating, witness cycle of length " + std::to_string(w.cycle.length()) + " from " + v.name(w.start);
}

inline std::string rejection_text(const Rejection& r) {
    std::string s = std::string("rejected: ") + reject_kind_name(r.kind);
    if (r.transition) s += ", transition " + std::to_string(r.transition->value);
    if (r.level) s += ", level " + std::to_string(*r.level);
    if (r.component) s += ", component " + std::to_string(*r.component);
    return s + ": " + r.reason;
}

}  // namespace detail

inline int cmd_analyze(const GlobalFlags& g, const std::string& input, bool min_coeff, bool min_witness,
                       std::ostream& out) {
    const auto v = load_vass(input);
    const auto result = analyze(v, detail::options_from(g, min_coeff, min_witness));
    const auto doc = result_to_json(v, result);
    if (!g.out.empty()) detail::write_out(g.out, doc.dump(2) + "\n");
    if (g.format == "text") {
        out << detail::verdict_text(v, result) << '\n';
    } else {
        out << doc.dump(2) << '\n';
    }
    return result.terminating() ? exit_ok : exit_non_terminating;
}

inline int cmd_check(const GlobalFlags& g, const std::string& input, const std::string& cert_path, std::ostream& out,
                     std::ostream& err) {
    const auto v = load_vass(input);
    const auto cert = parse_certificate(v, vassrank::detail::read_file(cert_path));
    const auto res = std::visit(
        [&](const auto& c) {
            if constexpr (std::is_same_v<std::decay_t<decltype(c)>, RankingCertificate>) {
                return verify_ranking(v, c);
            } else {
                return verify_witness(v, c);
            }
        },
        cert);
    if (res) {
        if (g.format == "text") {
            out << "verified\n";
        } else {
            out << Json{{"verified", true}}.dump() << '\n';
        }
        return exit_ok;
    }
    err << detail::rejection_text(*res.rejection) << '\n';
    if (g.format != "text") {
        Json doc;
        doc["verified"] = false;
        doc["reason"] = reject_kind_name(res.rejection->kind);
        doc["message"] = res.rejection->reason;
        out << doc.dump() << '\n';
    }
    return exit_rejected;
}

inline int cmd_complexity(const GlobalFlags& g, const std::string& input, bool linear,
                          const std::vector<std::uint64_t>& empirical, const OracleLimits& limits, std::ostream& out,
                          std::ostream& err) {
    const auto v = load_vass(input);
    const auto result = analyze(v, detail::options_from(g, false, false));
    if (!result.terminating()) {
        auto doc = witness_to_json(v, result.witness());
        doc["terminating"] = false;
        out << doc.dump(2) << '\n';
        return exit_non_terminating;
    }
    const auto rep = classify(v, result);
    auto doc = report_to_json(rep);
    if (!linear) doc["linear"] = nullptr;
    int code = exit_ok;
    if (!empirical.empty()) {
        try {
            const auto samples = sample_complexity(v, empirical, limits);
            Json rows = Json::array();
            for (const auto& s : samples) {
                rows.push_back({{"N", s.n}, {"comp_N", s.comp}, {"explored_states", s.explored_states}});
            }
            doc["empirical"] = rows;
            if (samples.size() >= 2) {
                try {
                    doc["empirical_exponent"] = fit_exponent(samples);
                } catch (const std::exception&) {
                    doc["empirical_exponent"] = nullptr;
                }
            }
            if (!g.out.empty()) {
                std::ostringstream csv;
                write_csv(csv, samples);
                detail::write_out(g.out, csv.str());
            }
        } catch (const OracleFailure& e) {
            err << "empirical: " << e.what() << '\n';
            doc["empirical"] = nullptr;
            code = exit_budget;
        }
    }
    if (g.format == "text") {
        out << "terminating, order " << rep.order_k;
        if (auto t = rep.theta()) out << ", Theta(" << *t << ")";
        if (linear) {
            if (rep.linear_verdict.kind == LinearVerdict::Kind::ExactLinear) {
                out << ", linear complexity " << rep.linear_verdict.c->get_str() << "*N";
            } else {
                out << ", at least quadratic";
            }
        }
        out << '\n';
    } else {
        out << doc.dump(2) << '\n';
    }
    return code;
}

inline int cmd_simulate(const GlobalFlags& g, const std::string& input, const std::vector<std::uint64_t>& n_values,
                        const OracleLimits& limits, std::ostream& out, std::ostream& err) {
    const auto v = load_vass(input);
    std::vector<ComplexitySample> samples;
    int code = exit_ok;
    for (auto n : n_values) {
        const auto r = longest_trace(v, n, limits);
        if (r.status == TraceStatus::NonTerminationDetected) {
            err << "N = " << n << ": non-termination detected (non-negative cycle of length " << r.cycle.size() << ")\n";
            code = exit_non_terminating;
            break;
        }
        if (r.status == TraceStatus::BudgetExceeded) {
            err << "N = " << n << ": budget exceeded\n";
            code = exit_budget;
            break;
        }
        samples.push_back({n, r.length, r.explored_states});
    }
    std::ostringstream csv;
    write_csv(csv, samples);
    if (!g.out.empty()) detail::write_out(g.out, csv.str());
    out << csv.str();
    return code;
}

inline int cmd_generate(const GlobalFlags& g, GeneratorOptions opt, std::ostream& out) {
    opt.seed = g.seed;
    const auto v = generate_random(opt);
    const auto text = vass_to_json(v).dump(2) + "\n";
    if (!g.out.empty()) detail::write_out(g.out, text);
    out << text;
    return exit_ok;
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Termination and complexity analysis for vector addition systems with states", "vassrank"};
    app.require_subcommand(1);
    GlobalFlags g;
    app.add_option("--out", g.out, "Write the certificate, witness or CSV to this file");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--mode", g.mode, "Ranking mode")->check(CLI::IsMember({"loop", "primal-dual"}));
    app.add_option("--seed", g.seed, "Seed for `generate`");

    std::string input, cert;
    bool min_coeff = false, min_witness = false, linear = false;
    std::vector<std::uint64_t> n_values;
    OracleLimits limits;

    auto* analyze_cmd = app.add_subcommand("analyze", "Decide termination and emit a certificate or witness");
    analyze_cmd->add_option("input", input, "VASS JSON file")->required();
    analyze_cmd->add_flag("--minimize-coefficients", min_coeff, "Prefer small ranking coefficients");
    analyze_cmd->add_flag("--minimize-witness", min_witness, "Shorten the non-termination witness");

    auto* check_cmd = app.add_subcommand("check", "Verify a certificate or witness");
    check_cmd->add_option("input", input, "VASS JSON file")->required();
    check_cmd->add_option("certificate", cert, "Certificate JSON file")->required();

    auto* complexity_cmd = app.add_subcommand("complexity", "Classify the asymptotic complexity");
    complexity_cmd->add_option("input", input, "VASS JSON file")->required();
    complexity_cmd->add_flag("--linear", linear, "Solve the linear-complexity LP");
    complexity_cmd->add_option("--empirical", n_values, "Measure comp_N at these N");
    complexity_cmd->add_option("--step-budget", limits.step_budget, "Oracle step budget");
    complexity_cmd->add_option("--value-ceiling", limits.value_ceiling, "Oracle counter ceiling");

    auto* simulate_cmd = app.add_subcommand("simulate", "Compute comp_N by exhaustive search");
    simulate_cmd->add_option("input", input, "VASS JSON file")->required();
    simulate_cmd->add_option("-n,--n", n_values, "Bounds N")->required();
    simulate_cmd->add_option("--step-budget", limits.step_budget, "Oracle step budget");
    simulate_cmd->add_option("--value-ceiling", limits.value_ceiling, "Oracle counter ceiling");

    GeneratorOptions gen;
    auto* generate_cmd = app.add_subcommand("generate", "Print a seeded random VASS");
    generate_cmd->add_option("--dim", gen.dim)->check(CLI::PositiveNumber);
    generate_cmd->add_option("--locations", gen.locations)->check(CLI::PositiveNumber);
    generate_cmd->add_option("--transitions", gen.transitions);
    generate_cmd->add_option("--max-update", gen.max_update)->check(CLI::NonNegativeNumber);
    generate_cmd->add_flag("--connected", gen.connected);
    generate_cmd->add_flag("--conservative", gen.conservative);

    for (auto* sub : {analyze_cmd, check_cmd, complexity_cmd, simulate_cmd, generate_cmd}) sub->fallthrough();

    std::vector<const char*> argv{"vassrank"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_bad_input;
    }

    try {
        if (*analyze_cmd) return cmd_analyze(g, input, min_coeff, min_witness, out);
        if (*check_cmd) return cmd_check(g, input, cert, out, err);
        if (*complexity_cmd) return cmd_complexity(g, input, linear, n_values, limits, out, err);
        if (*simulate_cmd) return cmd_simulate(g, input, n_values, limits, out, err);
        if (*generate_cmd) return cmd_generate(g, gen, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_bad_input;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_bad_input;
    }
    return exit_bad_input;
}

}  // namespace vassrank::cli
