// Command-line front end: compute, chi, verify and oracle subcommands.
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "hoffman/constants.hpp"
#include "hoffman/error.hpp"
#include "hoffman/io.hpp"
#include "hoffman/oracle.hpp"

using namespace hoffman;
using io::Json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kUnsupported = 2, kDegenerate = 3, kCheckFailed = 4 };

struct Globals {
    double tol = 1e-9;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string out;
    bool verbose = false;
    bool timings = false;
    std::string side;
    CLI::Option* tol_opt = nullptr;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* threads_opt = nullptr;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void emit(const Globals& g, const Json& j) {
    const std::string text = io::dump_stable(j);
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw io::SchemaError("--out: cannot write " + g.out);
    f << text;
}

io::Instance load(const Globals& g, const std::string& path) {
    io::Instance inst = io::load_instance(path);
    if (!g.side.empty()) inst.side = g.side;
    if (g.tol_opt->count() > 0) inst.options.tol = g.tol;
    if (g.threads_opt->count() > 0) inst.options.threads = g.threads;
    if (g.seed_opt->count() > 0) inst.seed = g.seed;
    return inst;
}

ComputeOptions matrix_options(const Globals& g) { return {g.tol, g.threads}; }

Json norms_json(const mapping::NormPair& n) {
    Json j;
    j["b"] = std::string(to_string(n.b));
    j["x"] = std::string(to_string(n.x));
    return j;
}

Json header(const std::string& command, const std::string& path) {
    Json j;
    j["schema"] = 1;
    j["command"] = command;
    j["input"] = path;
    return j;
}

Json check_json(const std::string& name, CheckStatus status, double lhs, double rhs, double slack) {
    Json c;
    c["name"] = name;
    c["status"] = std::string(to_string(status));
    c["lhs"] = lhs;
    c["rhs"] = rhs;
    c["slack"] = slack;
    return c;
}

double shown(const HoffmanReport& r) { return r.infinite ? std::numeric_limits<double>::infinity() : r.value; }

// Replays the report's witness through the definition.
Json replay_check(const mapping::SolutionMap& m, const HoffmanReport& r) {
    const auto rp = oracle::replay(m, r.witness_b, r.witness_x);
    const double gap = std::abs(rp.ratio - r.value);
    const bool ok = rp.feasible && gap <= 10 * r.tol;
    return check_json("witness replay", ok ? CheckStatus::pass : CheckStatus::fail, rp.ratio, r.value, -gap);
}

int exit_for(const Json& checks) {
    for (const auto& c : checks)
        if (c["status"] == "fail") return kCheckFailed;
    return kOk;
}

Json lower_bound_json(const oracle::LowerBound& lb, int trials) {
    Json j;
    j["value"] = lb.value;
    j["source"] = lb.source;
    j["trials"] = trials;
    j["evaluated"] = lb.evaluated;
    j["skipped"] = lb.skipped;
    j["distance"] = lb.distance;
    j["violation"] = lb.violation;
    j["b"] = io::vector_json(lb.b);
    j["x"] = io::vector_json(lb.x);
    return j;
}

void print_trajectory(const oracle::LowerBound& lb) {
    double last = -1.0;
    for (std::size_t i = 0; i < lb.trajectory.size(); ++i) {
        if (lb.trajectory[i] > last) {
            std::cerr << "trial " << i << ": best ratio " << lb.trajectory[i] << "\n";
            last = lb.trajectory[i];
        }
    }
}

int cmd_compute(const Globals& g, const std::string& path, const std::string& method, int oracle_trials) {
    const io::Instance inst = load(g, path);
    const mapping::SolutionMap m = io::to_map(inst);
    const Stopwatch clock;
    const HoffmanReport rep = hoffman_constant(m, inst.options, parse_route(method));
    const double elapsed = clock.seconds();

    Json j = header("compute", path);
    j["side"] = inst.side;
    j["norms"] = norms_json(m.norms());
    if (inst.side == "adjoint") j["instance_norms"] = norms_json(inst.norms);
    const Json report = io::report_json(rep);
    for (const auto& [k, v] : report.items()) j[k] = v;
    Json checks = Json::array();
    if (!rep.witness_b.empty()) checks.push_back(replay_check(m, rep));
    if (oracle_trials > 0) {
        oracle::SamplerConfig cfg;
        cfg.trials = oracle_trials;
        cfg.seed = inst.seed;
        cfg.threads = inst.options.threads;
        const auto lb = oracle::hoffman_lower_bound(m, cfg);
        if (g.verbose) print_trajectory(lb);
        j["oracle_lower_bound"] = lower_bound_json(lb, oracle_trials);
        const bool ok = lb.value <= shown(rep) + 1e-7;
        checks.push_back(check_json("oracle <= exact", ok ? CheckStatus::pass : CheckStatus::fail, lb.value,
                                    shown(rep), shown(rep) - lb.value));
    }
    j["checks"] = checks;
    if (g.timings) j["timings"] = Json{{"compute_seconds", elapsed}};
    if (g.verbose) std::cerr << "method " << to_string(rep.method) << ", value " << rep.value << "\n";
    emit(g, j);
    return exit_for(checks);
}

int cmd_chi(const Globals& g, const std::string& path, bool bar, int random_d) {
    const DenseMatrix a = io::load_matrix(path);
    const Stopwatch clock;
    const HoffmanReport rep = bar ? chibar(a, matrix_options(g)) : chi(a, matrix_options(g));
    const double elapsed = clock.seconds();
    Json j = header("chi", path);
    j["measure"] = bar ? "chibar" : "chi";
    j["value"] = rep.value;
    j["method"] = std::string(to_string(rep.method));
    j["basis"] = Json(rep.basis);
    Json w;
    w["x"] = io::vector_json(rep.direction_v);
    j["witness"] = w;
    Json checks = Json::array();
    if (random_d > 0) {
        const DenseMatrix target = bar ? linalg::orthonormalize_rows(a) : a;
        const auto lb = chi_lower_bound_random(target, random_d, g.seed);
        j["random_d"] = Json{{"value", lb.value}, {"trials", random_d}, {"skipped", lb.skipped}};
        const bool ok = lb.value <= rep.value + 1e-7;
        checks.push_back(check_json("random-D bound <= exact", ok ? CheckStatus::pass : CheckStatus::fail, lb.value,
                                    rep.value, rep.value - lb.value));
    }
    j["checks"] = checks;
    if (g.timings) j["timings"] = Json{{"compute_seconds", elapsed}};
    emit(g, j);
    return exit_for(checks);
}

Json optional_report(const std::optional<HoffmanReport>& r) { return r ? io::report_json(*r) : Json(nullptr); }

int cmd_verify(const Globals& g, const std::string& path, const std::string& check, int trials, int samples) {
    const io::Instance inst = load(g, path);
    Json j = header("verify", path);
    j["check"] = check;
    const Stopwatch clock;
    CheckStatus status = CheckStatus::unknown;
    Json checks = Json::array();
    if (check == "duality") {
        const mapping::SolutionMap m = io::to_map(inst);
        const auto r = verify_duality(m, inst.options, trials, inst.seed);
        status = r.status;
        j["side"] = r.side;
        j["norms"] = norms_json(m.norms());
        j["adjoint_norms"] = norms_json(m.norms().dualized());
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["lhs_exact"] = r.lhs_exact;
        j["rhs_exact"] = r.rhs_exact;
        checks.push_back(check_json("duality inequality", r.status, r.lhs, r.rhs, r.slack));
        j["lhs_report"] = optional_report(r.lhs_report);
        j["rhs_report"] = optional_report(r.rhs_report);
    } else if (check == "box") {
        const auto* box = inst.r.as<cones::Box>();
        if (!box) throw io::SchemaError("$.R: the box check needs R of type box");
        const auto r = verify_box_duality(inst.a, *box, inst.s, inst.norms, inst.options, 1e-6, trials, inst.seed);
        status = r.status;
        j["norms"] = norms_json(inst.norms);
        j["adjoint_norms"] = norms_json(inst.norms.dualized());
        j["lhs"] = r.lhs;
        j["rhs"] = r.rhs;
        j["lhs_exact"] = r.lhs_exact;
        j["rhs_exact"] = r.rhs_exact;
        checks.push_back(check_json("box duality", r.status, r.lhs, r.rhs, -r.gap));
        j["lhs_report"] = optional_report(r.lhs_report);
        j["rhs_report"] = optional_report(r.rhs_report);
    } else if (check == "chi") {
        const auto r = verify_chi_identity(inst.a, inst.options, 1e-7, trials, inst.seed);
        status = r.status;
        j["chi"] = r.chi;
        j["chibar"] = r.chibar;
        j["dual_box"] = r.dual_box;
        j["dual_box_row_space"] = r.dual_box_kernel;
        j["primal_box_oracle"] = r.primal_box_oracle;
        j["primal_kernel_oracle"] = r.primal_kernel_oracle;
        for (const auto& c : r.checks) checks.push_back(check_json(c.name, c.status, c.lhs, c.rhs, c.slack));
    } else if (check == "monotone") {
        const mapping::SolutionMap m = io::to_map(inst);
        const auto r = tangent_monotonicity_check(m, samples, inst.options, 1e-7, inst.seed);
        status = r.status;
        j["value"] = r.value;
        j["worst_excess"] = r.worst_excess;
        Json tangents = Json::array();
        for (const auto& [t, v] : r.tangent_values) {
            Json e;
            e["index"] = io::index_json(t);
            e["value"] = v;
            tangents.push_back(e);
        }
        j["tangents"] = tangents;
        checks.push_back(check_json("tangent monotonicity", r.status, r.value + r.worst_excess, r.value,
                                    -r.worst_excess));
    } else {
        throw io::SchemaError("--check: expected duality, box, chi or monotone");
    }
    j["status"] = std::string(to_string(status));
    j["checks"] = checks;
    if (g.timings) j["timings"] = Json{{"verify_seconds", clock.seconds()}};
    emit(g, j);
    if (status == CheckStatus::fail) {
        std::cerr << "check '" << check << "' failed; both certificates are in the report\n";
        return kCheckFailed;
    }
    return kOk;
}

int cmd_oracle(const Globals& g, const std::string& path, int trials, const std::string& replay_path) {
    const io::Instance inst = load(g, path);
    const mapping::SolutionMap m = io::to_map(inst);
    Json j = header("oracle", path);
    j["side"] = inst.side;
    j["norms"] = norms_json(m.norms());
    if (!replay_path.empty()) {
        std::ifstream f(replay_path);
        if (!f) throw io::SchemaError(replay_path + ": cannot open file");
        Json rep;
        try {
            rep = Json::parse(f);
        } catch (const Json::parse_error& e) {
            throw io::SchemaError(replay_path + ": invalid JSON: " + e.what());
        }
        if (!rep.contains("witness") || !rep["witness"].contains("b") || !rep["witness"].contains("x") ||
            !rep.contains("value") || !rep["value"].is_number())
            throw io::SchemaError(replay_path + ": expected a compute report with a finite value and a witness");
        const Vector b = rep["witness"]["b"].get<Vector>();
        const Vector x = rep["witness"]["x"].get<Vector>();
        const double value = rep["value"].get<double>();
        const double tol = rep.contains("tol") ? rep["tol"].get<double>() : inst.options.tol;
        if (b.size() != m.m() || x.size() != m.n())
            throw io::SchemaError(replay_path + ": witness dimensions do not match the instance");
        const auto rp = oracle::replay(m, b, x);
        const double gap = std::abs(rp.ratio - value);
        const bool ok = rp.feasible && gap <= 10 * tol;
        j["mode"] = "replay";
        j["distance"] = rp.distance;
        j["violation"] = rp.violation;
        j["ratio"] = rp.ratio;
        j["reported_value"] = value;
        Json checks = Json::array();
        checks.push_back(check_json("witness replay", ok ? CheckStatus::pass : CheckStatus::fail, rp.ratio, value,
                                    -gap));
        j["checks"] = checks;
        emit(g, j);
        return exit_for(checks);
    }
    oracle::SamplerConfig cfg;
    cfg.trials = trials;
    cfg.seed = inst.seed;
    cfg.threads = inst.options.threads;
    const Stopwatch clock;
    const auto lb = oracle::hoffman_lower_bound(m, cfg);
    if (g.verbose) print_trajectory(lb);
    j["mode"] = "sample";
    const Json bound = lower_bound_json(lb, trials);
    for (const auto& [k, v] : bound.items()) j[k] = v;
    if (g.timings) j["timings"] = Json{{"oracle_seconds", clock.seconds()}};
    emit(g, j);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Hoffman constants of polyhedral feasibility problems"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    g.tol_opt = app.add_option("--tol", g.tol, "Numerical tolerance")->check(CLI::PositiveNumber);
    g.seed_opt = app.add_option("--seed", g.seed, "Random seed");
    g.threads_opt = app.add_option("--threads", g.threads, "Worker threads (0 = available parallelism)");
    app.add_option("--out", g.out, "Write the report to this path instead of standard output");
    app.add_flag("--verbose", g.verbose, "Progress on standard error");
    app.add_flag("--timings", g.timings, "Include wall-clock timings in the report");
    app.add_option("--side", g.side, "Override the instance side")->check(CLI::IsMember({"primal", "adjoint"}));

    std::string path, method = "auto", check, replay;
    int oracle_trials = 0, random_d = 0, trials = 2000, samples = 64;
    bool bar = false;

    auto* compute = app.add_subcommand("compute", "Exact Hoffman constant with a replayable witness");
    compute->add_option("instance", path, "Instance JSON")->required();
    compute->add_option("--method", method, "auto, subspace, slater-max, geometric, cap or chi")
        ->check(CLI::IsMember({"auto", "subspace", "slater-max", "geometric", "cap", "chi"}));
    compute->add_option("--oracle", oracle_trials, "Also report a sampled lower bound with this many trials");

    auto* chi_cmd = app.add_subcommand("chi", "chi or chi-bar condition measure of a matrix");
    chi_cmd->add_option("matrix", path, "Matrix as CSV or JSON")->required();
    chi_cmd->add_flag("--bar", bar, "Compute chi-bar instead of chi");
    chi_cmd->add_option("--random-d", random_d, "Trials of the positive-diagonal lower bound");

    auto* verify = app.add_subcommand("verify", "Check a duality or identity theorem on an instance");
    verify->add_option("instance", path, "Instance JSON")->required();
    verify->add_option("--check", check, "duality, box, chi or monotone")
        ->required()
        ->check(CLI::IsMember({"duality", "box", "chi", "monotone"}));
    verify->add_option("--trials", trials, "Oracle trials for sides without an exact route");
    verify->add_option("--samples", samples, "Tangent indices sampled by the monotone check");

    auto* oracle_cmd = app.add_subcommand("oracle", "Sampled lower bound from the defining ratio");
    oracle_cmd->add_option("instance", path, "Instance JSON")->required();
    oracle_cmd->add_option("--trials", trials, "Number of sampled pairs")->check(CLI::PositiveNumber);
    oracle_cmd->add_option("--replay", replay, "Replay the witness of a compute report instead of sampling");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*compute) return cmd_compute(g, path, method, oracle_trials);
        if (*chi_cmd) return cmd_chi(g, path, bar, random_d);
        if (*verify) return cmd_verify(g, path, check, trials, samples);
        if (*oracle_cmd) return cmd_oracle(g, path, trials, replay);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnsupportedNormError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const UnsupportedStructureError& e) {
        std::cerr << "unsupported: " << e.what() << "\n";
        return kUnsupported;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kDegenerate;
    }
    return kUsage;
}
