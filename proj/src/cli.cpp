#include "altproj/cli.hpp"

#include "altproj/corpus.hpp"
#include "altproj/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <random>

namespace altproj::cli {

namespace {

using io::json;

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw InvalidArgument("cannot write " + path);
    f << text;
}

std::vector<Index> parse_dims(const std::string& text) {
    std::vector<Index> dims;
    for (double v : io::parse_number_list(text)) {
        if (v != std::floor(v) || v < 0) throw InvalidArgument("--dims must list nonnegative integers");
        dims.push_back(static_cast<Index>(v));
    }
    return dims;
}

// Flags are typed in decimal; 1.5708 means a right angle.
double snap_right_angle(double theta) {
    return theta > M_PI / 2 && theta <= M_PI / 2 + 1e-4 ? M_PI / 2 : theta;
}

std::vector<double> angles_from_rule(std::size_t k, const std::string& rule) {
    if (k < 1) throw InvalidArgument("--k must be >= 1");
    if (rule == "inv-k") return corpus::inverse_k_angles(k);
    if (rule.rfind("const:", 0) == 0) {
        const auto v = io::parse_number_list(rule.substr(6));
        if (v.size() != 1) throw InvalidArgument("--rule const:<theta> needs one angle");
        return std::vector<double>(k, snap_right_angle(v.front()));
    }
    throw InvalidArgument("unknown --rule '" + rule + "' (expected inv-k or const:<theta>)");
}

SlowSequence sequence_from_flag(const std::string& spec) {
    if (spec == "log") return SlowSequence::log_decay();
    if (spec.rfind("pow:", 0) == 0) {
        const auto v = io::parse_number_list(spec.substr(4));
        if (v.size() != 1) throw InvalidArgument("--seq pow:<p> needs one exponent");
        return SlowSequence::power(v.front());
    }
    if (spec.rfind("file:", 0) == 0) return SlowSequence::explicit_values(io::read_number_file(spec.substr(5)));
    throw InvalidArgument("unknown --seq '" + spec + "' (expected pow:<p>, log or file:<path>)");
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Friedrichs numbers and alternating projections for finitely many subspaces", "altproj"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Write a generated system as JSON");
    std::string family, gen_out, dims_text = "3,3,3", rule = "inv-k";
    long long dim = 12, k = 1, core = 1;
    double theta = M_PI / 3;
    std::uint64_t seed = 7;
    gen->add_option("--family", family, "example3 | two-lines | tilted | random | common-core | axes")->required();
    gen->add_option("--dim", dim, "Ambient dimension");
    gen->add_option("--theta", theta, "Angle in radians (two-lines)");
    gen->add_option("--k", k, "Number of blocks (tilted) or axes (axes)");
    gen->add_option("--rule", rule, "Angle rule for tilted: inv-k | const:<theta>");
    gen->add_option("--dims", dims_text, "Comma separated subspace dimensions");
    gen->add_option("--core", core, "Shared core dimension (common-core)");
    gen->add_option("--seed", seed, "Random seed");
    gen->add_option("-o,--output", gen_out, "Output path (default stdout)");

    // angles
    auto* ang = app.add_subcommand("angles", "Angle report for a system file");
    std::string system_path, ang_out;
    int starts = 32;
    ang->add_option("system", system_path, "System JSON file")->required();
    ang->add_option("--starts", starts, "Inclination multistarts");
    ang->add_option("--seed", seed, "Inclination seed");
    ang->add_option("-o,--output", ang_out, "Output path (default stdout)");

    // iterate
    auto* it = app.add_subcommand("iterate", "Run alternating projections and write an error trace");
    std::string order = "cyclic", indices_text, x0_text = "random", trace_path;
    std::size_t iters = 50, window = 0;
    it->add_option("system", system_path, "System JSON file")->required();
    it->add_option("--order", order, "cyclic | random | explicit");
    it->add_option("--indices", indices_text, "1-based index list for --order explicit");
    it->add_option("--window", window, "Coverage window for --order random (0 = none)");
    it->add_option("--seed", seed, "Seed for the random order and the random x0");
    it->add_option("--x0", x0_text, "random | comma separated coordinates");
    it->add_option("--iters", iters, "Passes (cyclic) or steps (random, explicit)");
    it->add_option("--trace", trace_path, "CSV output path (default stdout)");

    // bounds
    auto* bnd = app.add_subcommand("bounds", "Evaluate every convergence bound");
    std::size_t bound_iters = 100;
    std::string bound_out, bound_trace;
    bnd->add_option("system", system_path, "System JSON file")->required();
    bnd->add_option("--iters", bound_iters, "Powers n = 1..iters");
    bnd->add_option("--seed", seed, "Seed for inclination starts and random index lists");
    bnd->add_option("--trace", bound_trace, "CSV with measured |T^n - P_M| and bound columns");
    bnd->add_option("-o,--output", bound_out, "Output path (default stdout)");

    // probe-slow
    auto* probe = app.add_subcommand("probe-slow", "Construct a vector whose iteration error dominates a_n");
    std::string seq_spec = "pow:0.5", probe_out, probe_trace;
    std::size_t horizon = 100;
    double slack = 0.1;
    long long probe_k = 60;
    probe->add_option("--k", probe_k, "Number of planar blocks");
    probe->add_option("--rule", rule, "inv-k | const:<theta>");
    probe->add_option("--seq", seq_spec, "pow:<p> | log | file:<path>");
    probe->add_option("--horizon", horizon, "Largest n to dominate");
    probe->add_option("--slack", slack, "Allowed |x| - sup a_n");
    probe->add_option("--trace", probe_trace, "CSV trace path");
    probe->add_option("-o,--output", probe_out, "Output path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage_error;
    }

    try {
        if (gen->parsed()) {
            SubspaceSystem system = [&]() {
                if (family == "example3") return corpus::example3(dim);
                if (family == "two-lines") return corpus::two_lines(snap_right_angle(theta));
                if (family == "tilted") return corpus::tilted_pairs(angles_from_rule(static_cast<std::size_t>(k), rule));
                if (family == "random") return corpus::random_system(dim, parse_dims(dims_text), seed);
                if (family == "common-core") return corpus::common_core(dim, parse_dims(dims_text), core, seed);
                if (family == "axes") return corpus::coordinate_axes(k < 2 ? 3 : k);
                throw InvalidArgument("unknown --family '" + family + "'");
            }();
            emit(dump(io::system_to_json(system)), gen_out, out);
        } else if (ang->parsed()) {
            const auto system = io::read_system(system_path);
            InclinationBudget budget;
            budget.starts = starts;
            budget.seed = seed;
            emit(dump(io::to_json(angle_report(system, budget))), ang_out, out);
        } else if (it->parsed()) {
            const auto system = io::read_system(system_path);
            const auto n = system.size();
            IndexSchedule schedule = [&]() {
                if (order == "cyclic") return IndexSchedule::cyclic(n);
                if (order == "random")
                    return IndexSchedule::random(n, seed, window > 0 ? std::optional<std::size_t>(window) : std::nullopt);
                if (order == "explicit") {
                    std::vector<std::size_t> idx;
                    for (double v : io::parse_number_list(indices_text)) {
                        if (v != std::floor(v) || v < 1 || v > static_cast<double>(n))
                            throw InvalidArgument("--indices entries must be integers in 1.." + std::to_string(n));
                        idx.push_back(static_cast<std::size_t>(v) - 1);
                    }
                    return IndexSchedule::explicit_list(n, std::move(idx));
                }
                throw InvalidArgument("unknown --order '" + order + "'");
            }();
            Vector x0(system.ambient_dim());
            if (x0_text == "random") {
                std::mt19937_64 rng(seed);
                std::normal_distribution<double> g;
                for (Index i = 0; i < x0.size(); ++i) x0(i) = g(rng);
            } else {
                const auto coords = io::parse_number_list(x0_text);
                if (static_cast<Index>(coords.size()) != system.ambient_dim())
                    throw InvalidArgument("--x0 needs " + std::to_string(system.ambient_dim()) + " coordinates");
                for (Index i = 0; i < x0.size(); ++i) x0(i) = coords[static_cast<std::size_t>(i)];
            }
            const auto trace = iterate_vector(system, x0, schedule, iters);
            if (trace_path.empty()) io::write_trace_csv(out, trace);
            else io::write_trace_csv(trace_path, trace);
        } else if (bnd->parsed()) {
            const auto system = io::read_system(system_path);
            InclinationBudget budget;
            budget.seed = seed;
            const auto report = bound_report(system, bound_iters, budget);
            json doc = io::to_json(report);
            if (!report.degenerate) doc["dichotomy"] = io::to_json(dichotomy_report(system, budget));
            emit(dump(doc), bound_out, out);
            if (!bound_trace.empty()) {
                ConvergenceTrace trace = operator_error_norms(system, bound_iters);
                for (const auto& e : report.entries)
                    if (e.bound.size() == bound_iters && bound_iters > 1) trace.bounds[e.name] = e.bound;
                io::write_trace_csv(bound_trace, trace);
            }
        } else if (probe->parsed()) {
            const auto result = slow_vector_probe(angles_from_rule(static_cast<std::size_t>(probe_k), rule),
                                                  sequence_from_flag(seq_spec), horizon, slack);
            json x = json::array();
            for (Index i = 0; i < result.x.size(); ++i) x.push_back(result.x(i));
            json doc{{"x", std::move(x)},
                     {"success", result.success},
                     {"achieved_horizon", result.achieved_horizon},
                     {"norm", result.norm},
                     {"norm_budget", result.norm_budget}};
            emit(dump(doc), probe_out, out);
            if (!probe_trace.empty()) io::write_trace_csv(probe_trace, result.trace);
        }
    } catch (const NumericalFailure& e) {
        err << "numerical failure: " << e.what() << '\n';
        return numerical_failure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    }
    return ok;
}

}  // namespace altproj::cli
