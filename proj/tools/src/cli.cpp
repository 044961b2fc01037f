#include "symkit_cli/cli.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "symkit/errors.hpp"
#include "symkit/io.hpp"
#include "symkit/protocols.hpp"
#include "symkit/reductions.hpp"

#ifndef SYMKIT_VERSION
#define SYMKIT_VERSION "1.0.0"
#endif

namespace symkit_cli {

namespace {

using symkit::Json;

/// Offset separating the shot-sampling stream from the prover-optimizer
/// stream when both are derived from one user-facing --seed.
constexpr std::uint64_t kShotSeedOffset = 0x9e3779b97f4a7c15ULL;

struct ReportBuilder {
    std::string command;
    Json inputs = Json::array();
    std::uint64_t seed = 0;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    /// Reads a file, records its digest under `inputs`, and returns the bytes.
    std::string input_file(const std::string& path) {
        std::string bytes = symkit::read_file(path);
        inputs.push_back(Json{{"path", path}, {"sha256", symkit::sha256_hex(bytes)}});
        return bytes;
    }

    Json finish(Json results) const {
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        Json j;
        j["command"] = command;
        j["inputs"] = inputs;
        j["seed"] = seed;
        j["results"] = std::move(results);
        j["wall_time_ms"] = ms;
        j["version"] = SYMKIT_VERSION;
        return j;
    }
};

Json plan_to_json(const symkit::ShotPlan& p) {
    Json j;
    j["epsilon"] = p.epsilon;
    j["delta"] = p.delta;
    j["range"] = p.range;
    j["shots"] = p.shots;
    return j;
}

void apply_thread_cap() {
    if (const char* t = std::getenv("SYMKIT_THREADS")) {
        const int n = std::atoi(t);
        if (n > 0) Eigen::setNbThreads(n);
    }
}

}  // namespace

CliResult run(const std::vector<std::string>& args) {
    apply_thread_cap();

    CLI::App app{"symkit: symmetry-testing measures, reductions, and protocols"};
    app.require_subcommand(1);
    bool pretty = false;
    app.add_flag("--pretty", pretty, "indent the JSON report");

    // measure
    std::string m_path;
    int m_restarts = 20;
    std::uint64_t m_seed = 0;
    CLI::App* m = app.add_subcommand("measure", "evaluate an instance file's defining measure");
    m->fallthrough();
    m->add_option("instance", m_path, "instance JSON file")->required();
    m->add_option("--restarts", m_restarts, "optimizer restarts (optimizer-backed kinds)");
    m->add_option("--seed", m_seed, "optimizer seed");

    // verify-reduction
    std::string v_kind;
    int v_trials = 100;
    std::uint64_t v_seed = 0;
    CLI::App* v = app.add_subcommand(
        "verify-reduction", "replay a builder's defining identity on randomized instances");
    v->fallthrough();
    v->add_option("--kind", v_kind, "builder name (see reduction kinds)")->required();
    v->add_option("--trials", v_trials, "number of randomized instances");
    v->add_option("--seed", v_seed, "root seed for instance generation");

    // run-protocol
    std::string r_path;
    long r_shots = 0;
    std::uint64_t r_seed = 0;
    int r_restarts = 20;
    double r_eps = 0.0, r_delta = 0.05;
    CLI::App* r = app.add_subcommand(
        "run-protocol", "simulate a protocol file exactly and optionally sample shots");
    r->fallthrough();
    r->add_option("protocol", r_path, "protocol JSON file")->required();
    r->add_option("--shots", r_shots, "number of decision-qubit samples");
    CLI::Option* r_eps_opt =
        r->add_option("--epsilon", r_eps, "plan the shot count for this additive error instead");
    r->add_option("--delta", r_delta, "failure probability for the planned shot count");
    r->add_option("--restarts", r_restarts, "prover optimizer restarts");
    r->add_option("--seed", r_seed, "prover seed; the shot stream is derived from it");

    // plan-shots
    double p_eps = 0.0, p_delta = 0.0, p_range = 1.0;
    bool p_squared = false;
    CLI::App* p = app.add_subcommand("plan-shots", "Hoeffding sample-size planning");
    p->fallthrough();
    p->add_option("--epsilon", p_eps, "additive error target")->required();
    p->add_option("--delta", p_delta, "failure probability")->required();
    p->add_option("--range-m", p_range, "width of the estimator's bounded support");
    p->add_flag("--squared", p_squared, "plan for a square-root estimator instead");

    // build-instance
    std::string b_kind, b_state, b_channel, b_ham, b_group, b_out;
    double b_time = 0.0, b_alpha = 0.0, b_beta = 0.0;
    CLI::App* b = app.add_subcommand(
        "build-instance", "bundle component files into one instance JSON");
    b->fallthrough();
    b->add_option("--kind", b_kind, "problem kind name")->required();
    b->add_option("--state", b_state, "state-preparation JSON file (state kinds)");
    b->add_option("--channel", b_channel, "channel JSON file (channel kinds)");
    b->add_option("--hamiltonian", b_ham, "Hamiltonian matrix JSON file (Hamiltonian kinds)");
    b->add_option("--time", b_time, "evolution time (Hamiltonian kinds)");
    b->add_option("--group", b_group, "group representation JSON file")->required();
    CLI::Option* b_alpha_opt = b->add_option("--alpha", b_alpha, "YES threshold");
    CLI::Option* b_beta_opt = b->add_option("--beta", b_beta, "NO threshold");
    b->add_option("--output", b_out, "also write the instance JSON to this file");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return {0, app.help()};
    } catch (const CLI::CallForAllHelp& e) {
        return {0, app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        Json err;
        err["error"] = Json{{"code", "ParseError"}, {"message", e.what()}};
        return {2, err.dump()};
    }

    ReportBuilder report;
    int exit_code = 0;
    Json results;
    try {
        if (app.got_subcommand(m)) {
            report.command = "measure";
            report.seed = m_seed;
            const std::string bytes = report.input_file(m_path);
            const symkit::SymmetryInstance inst =
                symkit::instance_from_json(symkit::parse_json(bytes));
            const symkit::MeasureResult mr =
                symkit::run_instance_measure(inst, m_restarts, m_seed);
            results = symkit::measure_to_json(mr);
            results["restarts"] = m_restarts;
        } else if (app.got_subcommand(v)) {
            report.command = "verify-reduction";
            report.seed = v_seed;
            const symkit::VerifyReport vr = symkit::verify_reduction(v_kind, v_trials, v_seed);
            results = symkit::verify_report_to_json(vr);
            if (!vr.passed()) exit_code = 1;
        } else if (app.got_subcommand(r)) {
            report.command = "run-protocol";
            report.seed = r_seed;
            const std::string bytes = report.input_file(r_path);
            const symkit::Protocol proto =
                symkit::protocol_from_json(symkit::parse_json(bytes));
            const symkit::ProverStrategy strat =
                symkit::ProverStrategy::optimized(r_restarts, r_seed);
            results["kind"] = symkit::protocol_kind_name(proto.kind);
            results["exact"] = symkit::run_exact(proto, strat);
            results["prover_restarts"] = r_restarts;
            results["prover_seed"] = r_seed;
            long shots = r_shots;
            if (r_eps_opt->count() > 0) {
                const symkit::ShotPlan plan = symkit::plan_shots(r_eps, r_delta, 1.0);
                shots = plan.shots;
                results["plan"] = plan_to_json(plan);
            } else {
                results["plan"] = nullptr;
            }
            if (shots > 0) {
                const std::uint64_t shot_seed = r_seed + kShotSeedOffset;
                const symkit::ShotResult sr =
                    symkit::run_shots(proto, strat, shots, shot_seed);
                results["shots"] = sr.shots;
                results["accepted"] = sr.accepted;
                results["estimate"] = sr.estimate;
                results["shot_seed"] = shot_seed;
            } else {
                results["shots"] = 0;
            }
        } else if (app.got_subcommand(p)) {
            report.command = "plan-shots";
            const symkit::ShotPlan plan = p_squared
                                              ? symkit::plan_shots_squared(p_eps, p_delta)
                                              : symkit::plan_shots(p_eps, p_delta, p_range);
            results = plan_to_json(plan);
            results["squared"] = p_squared;
        } else if (app.got_subcommand(b)) {
            report.command = "build-instance";
            symkit::SymmetryInstance inst;
            inst.kind = symkit::problem_kind_from_name(b_kind);
            if (!b_state.empty())
                inst.state = symkit::state_prep_from_json(
                    symkit::parse_json(report.input_file(b_state)));
            if (!b_channel.empty())
                inst.channel = symkit::channel_from_json(
                    symkit::parse_json(report.input_file(b_channel)));
            if (!b_ham.empty()) {
                inst.hamiltonian =
                    symkit::matrix_from_json(symkit::parse_json(report.input_file(b_ham)));
                inst.time = b_time;
            }
            inst.rep =
                symkit::group_from_json(symkit::parse_json(report.input_file(b_group)));
            if (b_alpha_opt->count() > 0) inst.alpha = b_alpha;
            if (b_beta_opt->count() > 0) inst.beta = b_beta;
            symkit::validate_instance(inst);
            Json ij = symkit::instance_to_json(inst);
            if (!b_out.empty()) {
                symkit::write_file(b_out, symkit::dump_json(ij, pretty) + "\n");
                results["output"] = b_out;
            } else {
                results["output"] = nullptr;
            }
            results["instance"] = std::move(ij);
        }
    } catch (const symkit::Error& e) {
        Json err;
        err["error"] = Json{{"code", e.code()}, {"message", e.what()}};
        return {2, err.dump()};
    } catch (const std::exception& e) {
        Json err;
        err["error"] = Json{{"code", "InternalError"}, {"message", e.what()}};
        return {2, err.dump()};
    }

    return {exit_code, symkit::dump_json(report.finish(std::move(results)), pretty)};
}

}  // namespace symkit_cli
