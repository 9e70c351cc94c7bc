#ifndef ORLICZ_CLI_HPP
#define ORLICZ_CLI_HPP

#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "orlicz/operators.hpp"
#include "orlicz/serialize.hpp"

namespace orlicz::cli {

struct RunConfig {
    long long grid_points = 1 << 14;
    double t_max = 1e8;
    double tolerance = 1e-10;
    long long seed = 101;
    std::string format = "json";
};

inline void validate(const RunConfig& rc) {
    if (rc.grid_points < (1 << 8) || (rc.grid_points & (rc.grid_points - 1)) != 0)
        throw std::invalid_argument("grid_points must be a power of two, at least 256");
    if (!(rc.tolerance > 0.0 && rc.tolerance <= 1e-4))
        throw std::invalid_argument("tolerance must lie in (0, 1e-4]");
    if (!(rc.t_max > 1.0)) throw std::invalid_argument("t_max must exceed 1");
}

/// Problem selection shared by `decide` and `witness`: either the raw operator
/// parameters with a fundamental-function term, or a named scenario with a
/// target family.
struct ProblemArgs {
    std::string alpha, beta, phi;
    std::string scenario;
    long long n = 0, m = 0, d = 0;
    std::string alpha_m;
    std::string target;
    std::string p, q = "0", gamma, sigma = "0";
};

inline void add_problem_options(CLI::App& cmd, ProblemArgs& a) {
    cmd.add_option("--alpha", a.alpha, "operator exponent alpha as a rational");
    cmd.add_option("--beta", a.beta, "dilation exponent beta as a rational");
    cmd.add_option("--phi", a.phi,
                   "target fundamental function as a term string, e.g. "
                   "\"1 * t^{1/2} * log^{0} * loglog^{0} @ zero\"");
    cmd.add_option("--scenario", a.scenario, "one of john, mazya, trace");
    cmd.add_option("--n", a.n, "ambient dimension");
    cmd.add_option("--m", a.m, "derivative order");
    cmd.add_option("--d", a.d, "trace dimension (trace scenario)");
    cmd.add_option("--alpha-m", a.alpha_m, "isoperimetric exponent (mazya scenario)");
    cmd.add_option("--target", a.target,
                   "target family: zygmund, zygmund-loglog, exp-power, exp-exp-power, "
                   "exp-log-power, linf");
    cmd.add_option("--p", a.p, "Lebesgue exponent of the target (rational)");
    cmd.add_option("--q", a.q, "log exponent of the target (rational)");
    cmd.add_option("--gamma", a.gamma, "exponential-scale exponent (rational)");
    cmd.add_option("--sigma", a.sigma, "inner log exponent for exp-log-power (rational)");
}

inline TargetSpec resolve_target(const ProblemArgs& a) {
    if (a.target == "zygmund") return ZygmundLog{parse_rational(a.p), parse_rational(a.q)};
    if (a.target == "zygmund-loglog")
        return ZygmundLogLog{parse_rational(a.p), parse_rational(a.q)};
    if (a.target == "exp-power") return ExpPower{parse_rational(a.gamma)};
    if (a.target == "exp-exp-power") return ExpExpPower{parse_rational(a.gamma)};
    if (a.target == "exp-log-power")
        return ExpLogPower{parse_rational(a.gamma), parse_rational(a.sigma)};
    if (a.target == "linf") return LInfinity{};
    throw std::invalid_argument("unknown target family: " + a.target);
}

inline std::pair<HardyParams, FundamentalFunction> resolve_problem(const ProblemArgs& a) {
    if (!a.phi.empty()) {
        if (a.alpha.empty() || a.beta.empty())
            throw std::invalid_argument("--phi needs --alpha and --beta");
        return {HardyParams(parse_rational(a.alpha), parse_rational(a.beta)),
                FundamentalFunction::symbolic(parse_pll(a.phi))};
    }
    if (a.scenario.empty())
        throw std::invalid_argument("give either --phi with --alpha/--beta, or --scenario");
    Scenario s = [&]() -> Scenario {
        if (a.scenario == "john") return make_john(a.n, a.m);
        if (a.scenario == "mazya") {
            if (a.alpha_m.empty()) throw std::invalid_argument("mazya needs --alpha-m");
            return make_mazya(a.n, a.m, parse_rational(a.alpha_m));
        }
        if (a.scenario == "trace") return make_trace(a.n, a.m, a.d);
        throw std::invalid_argument("unknown scenario: " + a.scenario);
    }();
    if (a.target.empty()) throw std::invalid_argument("scenario mode needs --target");
    return {reduce(s), target_phi(resolve_target(a))};
}

namespace detail_cli {

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline StepFunction read_function(const std::string& path) {
    if (path == "-") return read_csv(std::cin);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open input: " + path);
    return read_csv(in);
}

inline json read_json_input(const std::string& text) {
    if (!text.empty() && text.front() == '{') return json::parse(text);
    std::ifstream in(text);
    if (!in) throw std::invalid_argument("cannot open JSON input: " + text);
    return json::parse(in);
}

inline TableParams params_from_json(const json& j) {
    TableParams tp;
    if (j.contains("n")) tp.n = j["n"].get<long long>();
    if (j.contains("m")) tp.m = j["m"].get<long long>();
    if (j.contains("d")) tp.d = j["d"].get<long long>();
    if (j.contains("alpha_m")) tp.alphaM = parse_rational(j["alpha_m"].get<std::string>());
    if (j.contains("p")) tp.p = parse_rational(j["p"].get<std::string>());
    if (j.contains("q")) tp.q = parse_rational(j["q"].get<std::string>());
    return tp;
}

inline std::string render_suite(int id, const std::vector<TableParams>& samples,
                                const std::string& format) {
    if (format == "json") {
        json out = schema_header("table-suite");
        out["table"] = id;
        json arr = json::array();
        for (const auto& tp : samples) {
            json entry;
            entry["params"] = describe_params(id, tp);
            entry["rows"] = table_to_json(make_table(id, tp))["rows"];
            arr.push_back(std::move(entry));
        }
        out["tables"] = std::move(arr);
        return dump(out);
    }
    std::string out;
    for (const auto& tp : samples) {
        const auto rows = make_table(id, tp);
        if (format == "markdown") {
            out += "## table " + std::to_string(id) + ": " + describe_params(id, tp) + "\n\n";
            out += render_table_markdown(rows) + "\n";
        } else if (format == "latex") {
            out += "% table " + std::to_string(id) + ": " + describe_params(id, tp) + "\n";
            out += render_table_latex(rows) + "\n";
        } else {
            throw std::invalid_argument("table format must be markdown, latex or json");
        }
    }
    return out;
}

/// CSV sample of a Young function over the representable part of its domain.
inline std::string young_csv(const YoungFunction& A, double t_max) {
    std::ostringstream os;
    os << std::setprecision(17);
    const double hi = std::min(t_max, 1e300);
    for (double t = std::exp(2.1); t <= hi; t *= std::pow(10.0, 0.125))
        os << t << "," << std::exp(A.log_eval(std::log(t))) << "\n";
    return os.str();
}

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

inline json selftest_report(const RunConfig& rc) {
    std::vector<Check> checks;
    const auto add = [&](const std::string& name, bool pass, const std::string& detail) {
        checks.push_back({name, pass, detail});
    };

    {
        const auto A = YoungFunction::power(1.0, Rational(2));
        const double got = power_cutoff_norm(A, 0.5, 0.125);
        const double want = std::pow(0.125, 1.0) * std::pow(2.0, -0.5);
        add("power-cutoff-closed-form", std::fabs(got - want) <= 1e-6,
            "got " + std::to_string(got) + ", want " + std::to_string(want));
    }
    {
        const double defect = conjugate_pair_defect(YoungFunction::power(1.0, Rational(2)),
                                                    {0.25, 1.0, 4.0, 100.0, 1e4});
        add("conjugate-pair-defect", defect <= 1e-3, "defect " + std::to_string(defect));
    }
    {
        std::mt19937 rng(static_cast<unsigned>(rc.seed));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        bool ok = true;
        double worst = 0.0;
        for (int k = 0; k < 50; ++k) {
            std::vector<double> bp{0.0, unif(rng), 1.0};
            std::sort(bp.begin(), bp.end());
            const StepFunction f(bp, {2.0 * unif(rng), 2.0 * unif(rng)});
            const StepFunction g(bp, {2.0 * unif(rng), 2.0 * unif(rng)});
            const double d = hl_defect(f, g);
            worst = std::min(worst, d);
            ok = ok && d >= -1e-12;
        }
        add("rearrangement-pairing-defect", ok, "worst " + std::to_string(worst));
    }
    {
        const auto v = decide(HardyParams(Rational(1, 3), Rational(1)),
                              target_phi(ZygmundLog{Rational(2), Rational(0)}));
        add("decide-zygmund-domain", v.outcome == Verdict::Outcome::ExistsOptimal,
            std::string("outcome ") + outcome_name(v.outcome));
    }
    {
        const auto rep = averaged_growth_probe(
            g_from_term(PLLTerm(1.0, Rational(0), Rational(1), Rational(0), Chart::AtInfinity)),
            {2.0}, {std::exp(20.0)});
        const bool ok = std::fabs(rep.stat_ii[0] - 10.0) <= 1e-6;
        add("growth-probe-closed-form", ok, "stat " + std::to_string(rep.stat_ii[0]));
    }
    {
        const auto rows = make_table(1, TableParams{});
        const bool ok = rows[0].verdict == "exists" && rows[5].growth == "1";
        add("table-row-consistency", ok, rows[0].verdict + " / " + rows[5].growth);
    }

    json j = schema_header("selftest");
    bool all = true;
    json arr = json::array();
    for (const auto& c : checks) {
        all = all && c.pass;
        arr.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    j["checks"] = std::move(arr);
    j["all_pass"] = all;
    return j;
}

}  // namespace detail_cli

/// Runs one subcommand.  Exit codes: 0 success, 1 domain error, 2 inconclusive
/// numeric verdict, 64 usage error.
inline int dispatch(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Optimal Orlicz domains for Hardy-type operators"};
    app.require_subcommand(1);
    RunConfig rc;
    app.add_option("--grid-points", rc.grid_points, "grid size, a power of two (default 16384)");
    app.add_option("--t-max", rc.t_max, "upper end of numeric ranges (default 1e8)");
    app.add_option("--tolerance", rc.tolerance, "numeric tolerance (default 1e-10)");
    app.add_option("--seed", rc.seed, "seed for probe families (default 101)");
    app.add_option("--format", rc.format, "output format where applicable (default json)");

    ProblemArgs decide_args;
    auto* decide_cmd = app.add_subcommand("decide", "decide optimal-domain existence");
    add_problem_options(*decide_cmd, decide_args);

    ProblemArgs witness_args;
    int j_max = 5;
    double Cdil = 1.0;
    std::string csv_path;
    auto* witness_cmd =
        app.add_subcommand("witness", "construct an improving domain for a no-optimal case");
    add_problem_options(*witness_cmd, witness_args);
    witness_cmd->add_option("--j-max", j_max, "number of patch segments (default 5)");
    witness_cmd->add_option("--c", Cdil, "dilation constant C (default 1)");
    witness_cmd->add_option("--csv", csv_path,
                            "write the patched complementary function as CSV to this path");

    int table_id = 0;
    std::string params_text;
    auto* table_cmd = app.add_subcommand("table", "render an application table");
    table_cmd->add_option("--table", table_id, "table id: 1, 2 or 3")->required();
    table_cmd->add_option("--params", params_text,
                          "JSON object or file with n, m, d, alpha_m, p, q; "
                          "defaults to the golden sample set");

    std::string space_text, input_path = "-";
    auto* norm_cmd = app.add_subcommand("norm", "norm of a step function in a given space");
    norm_cmd->add_option("--space", space_text, "space spec as JSON text or a file path")
        ->required();
    norm_cmd->add_option("--input", input_path, "function CSV path, or - for stdin");

    std::string op_name;
    ProblemArgs op_args;
    int depth = 160;
    std::string op_input = "-";
    auto* apply_cmd = app.add_subcommand("apply-op", "apply an operator on the canonical grid");
    apply_cmd->add_option("--op", op_name, "hardy, dual-hardy or sup")->required();
    apply_cmd->add_option("--alpha", op_args.alpha, "operator exponent alpha")->required();
    apply_cmd->add_option("--beta", op_args.beta, "dilation exponent beta")->required();
    apply_cmd->add_option("--input", op_input, "function CSV path, or - for stdin");
    apply_cmd->add_option("--depth", depth, "grid depth (cells, default 160)");

    app.add_subcommand("selftest", "run the built-in oracle battery");

    try {
        std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 64;
    }

    try {
        validate(rc);

        if (app.got_subcommand("decide")) {
            const auto [p, phi] = resolve_problem(decide_args);
            out << detail_cli::dump(verdict_to_json(decide(p, phi)));
            return 0;
        }

        if (app.got_subcommand("witness")) {
            const auto [p, phi] = resolve_problem(witness_args);
            const Verdict v = decide(p, phi);
            if (v.outcome != Verdict::Outcome::NoOptimal)
                throw std::domain_error("nothing to improve: an optimal Orlicz domain exists");
            if (v.reason == Verdict::Reason::BoundedG_LInfinityCase)
                throw std::domain_error("bounded growth function: the construction does not apply");
            // Improve the plain power domain with the candidate's exponent.
            const auto At = YoungFunction::symbolic(
                detail::conjugate_term(PLLTerm::power(v.candidate_term->pow, Chart::AtInfinity)));
            const auto Bt = YoungFunction::symbolic(*v.conjugate_term);
            const auto w = witness_construct(At, Bt, p.alpha, Cdil, j_max);
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) throw std::invalid_argument("cannot open output: " + csv_path);
                csv << detail_cli::young_csv(w.patched, rc.t_max);
            }
            json j = witness_to_json(w);
            j["verdict"] = verdict_to_json(v);
            out << detail_cli::dump(j);
            return 0;
        }

        if (app.got_subcommand("table")) {
            std::vector<TableParams> samples;
            if (params_text.empty())
                samples = default_table_samples(table_id);
            else
                samples = {detail_cli::params_from_json(detail_cli::read_json_input(params_text))};
            out << detail_cli::render_suite(table_id, samples, rc.format);
            return 0;
        }

        if (app.got_subcommand("norm")) {
            const auto spec = space_from_json(detail_cli::read_json_input(space_text));
            const auto f = detail_cli::read_function(input_path);
            const double value = space_norm(spec, f);
            json j = schema_header("norm-report");
            j["value"] = value;
            j["kind"] = space_to_json(spec)["kind"];
            json diag(nullptr);
            if (spec.kind == SpaceSpec::Kind::Orlicz && value > 0.0) {
                diag = json{{"modular", orlicz_modular(*spec.A, f, value)}};
            } else if (spec.kind == SpaceSpec::Kind::MarcinkiewiczEndpoint && value > 0.0) {
                const HardyAverage avg(f);
                double best = 0.0, at = 1.0;
                for (double t = 1e-8; t < 1.0; t *= std::pow(10.0, 0.05)) {
                    const double v = avg(t) * (*spec.phi)(t);
                    if (v > best) {
                        best = v;
                        at = t;
                    }
                }
                diag = json{{"sup_location", at}};
            }
            j["diagnostics"] = std::move(diag);
            out << detail_cli::dump(j);
            return 0;
        }

        if (app.got_subcommand("apply-op")) {
            const HardyParams p(parse_rational(op_args.alpha), parse_rational(op_args.beta));
            OperatorTag tag;
            if (op_name == "hardy") tag = OperatorTag::Hardy;
            else if (op_name == "dual-hardy") tag = OperatorTag::DualHardy;
            else if (op_name == "sup") tag = OperatorTag::SupAlpha;
            else throw std::invalid_argument("unknown operator: " + op_name);
            const auto f = detail_cli::read_function(op_input);
            const auto g = apply_on_grid(tag, p, f, depth);
            std::ostringstream os;
            os << std::setprecision(17);
            write_csv(os, g);
            out << os.str();
            return 0;
        }

        // selftest
        const json j = detail_cli::selftest_report(rc);
        out << detail_cli::dump(j);
        return j["all_pass"].get<bool>() ? 0 : 1;
    } catch (const std::exception& e) {
        const std::string msg = e.what();
        err << detail_cli::dump(json{{"error", msg}});
        return msg.find("inconclusive") != std::string::npos ? 2 : 1;
    }
}

}  // namespace orlicz::cli

#endif
