// Command-line front end: equilibrium tables, stability classification,
// time integration, parameter sweeps and the self-verification suite for
// the herd-defense predator-prey ecoepidemic model.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ecoepi/equilibria.hpp"
#include "ecoepi/integrate.hpp"
#include "ecoepi/model.hpp"
#include "ecoepi/report.hpp"
#include "ecoepi/scenario.hpp"
#include "ecoepi/stability.hpp"
#include "ecoepi/sweep.hpp"
#include "ecoepi/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAnalysisFailure = 1;
constexpr int kExitInputError = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ecoepi::ScenarioError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write output file: " + path);
    out << content;
}

struct CommonArgs {
    std::string scenario_path;
    std::string out_path;
};

void emit(const std::string& subcommand, const CommonArgs& args,
          const std::string& scenario_bytes, const std::string& content,
          const std::vector<std::string>& events = {}) {
    ecoepi::RunManifest manifest =
        ecoepi::make_manifest(subcommand, args.scenario_path, scenario_bytes);
    manifest.events = events;
    if (args.out_path.empty()) {
        std::cout << content;
        return;
    }
    write_file(args.out_path, content);
    manifest.outputs.push_back(args.out_path);
    ecoepi::write_manifest(manifest, args.out_path + ".manifest.json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for a predator-prey ecoepidemic model with herd defense"};
    app.require_subcommand(1);

    CommonArgs eq_args, st_args, sim_args, sw_args;
    double t_end_override = 0.0;
    double stride_override = 0.0;
    bool refine = false;
    unsigned verify_seed = 20240901;

    auto* cmd_eq = app.add_subcommand("equilibria", "compute all candidate equilibria");
    cmd_eq->add_option("--scenario", eq_args.scenario_path, "scenario JSON file")->required();
    cmd_eq->add_option("--out", eq_args.out_path, "output JSON path (stdout when omitted)");

    auto* cmd_st = app.add_subcommand("stability", "classify the feasible equilibria");
    cmd_st->add_option("--scenario", st_args.scenario_path, "scenario JSON file")->required();
    cmd_st->add_option("--out", st_args.out_path, "output JSON path (stdout when omitted)");

    auto* cmd_sim = app.add_subcommand("simulate", "integrate the model and emit a CSV time series");
    cmd_sim->add_option("--scenario", sim_args.scenario_path, "scenario JSON file")->required();
    cmd_sim->add_option("--t-end", t_end_override, "integration horizon override");
    cmd_sim->add_option("--stride", stride_override, "output sampling interval override");
    cmd_sim->add_option("--out", sim_args.out_path, "output CSV path (stdout when omitted)");

    auto* cmd_sw = app.add_subcommand("sweep", "grid one parameter and emit a bifurcation table");
    cmd_sw->add_option("--scenario", sw_args.scenario_path, "scenario JSON file")->required();
    cmd_sw->add_flag("--refine", refine, "bisect flagged transitions and append thresholds");
    cmd_sw->add_option("--out", sw_args.out_path, "output CSV path (stdout when omitted)");

    auto* cmd_ver = app.add_subcommand("verify", "run the internal oracle and property suite");
    cmd_ver->add_option("--seed", verify_seed, "random seed for the property checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (cmd_eq->parsed()) {
            const std::string bytes = slurp(eq_args.scenario_path);
            const ecoepi::ScenarioFile sc =
                ecoepi::parse_scenario(bytes, eq_args.scenario_path);
            const auto recs = ecoepi::all_equilibria(sc.params);
            emit("equilibria", eq_args, bytes, ecoepi::equilibria_json(sc, recs));
            return kExitOk;
        }

        if (cmd_st->parsed()) {
            const std::string bytes = slurp(st_args.scenario_path);
            const ecoepi::ScenarioFile sc =
                ecoepi::parse_scenario(bytes, st_args.scenario_path);
            std::vector<ecoepi::StabilityRow> rows;
            for (const auto& rec : ecoepi::all_equilibria(sc.params)) {
                if (!rec.feasible()) continue;
                rows.push_back({rec, ecoepi::classify(sc.params, rec)});
            }
            emit("stability", st_args, bytes, ecoepi::stability_json(sc, rows));
            return kExitOk;
        }

        if (cmd_sim->parsed()) {
            const std::string bytes = slurp(sim_args.scenario_path);
            const ecoepi::ScenarioFile sc =
                ecoepi::parse_scenario(bytes, sim_args.scenario_path);
            ecoepi::SolverOptions opts = sc.solver;
            if (cmd_sim->count("--t-end") > 0) {
                if (!(t_end_override > 0.0))
                    throw ecoepi::ScenarioError("--t-end must be positive");
                opts.t_end = t_end_override;
            }
            if (cmd_sim->count("--stride") > 0) {
                if (!(stride_override > 0.0))
                    throw ecoepi::ScenarioError("--stride must be positive");
                opts.dense_output_stride = stride_override;
            }
            const ecoepi::Trajectory traj =
                ecoepi::simulate(sc.params, sc.initial_state(), opts);
            std::vector<std::string> events;
            if (traj.termination != ecoepi::Termination::completed)
                events.push_back(ecoepi::termination_name(traj.termination));
            emit("simulate", sim_args, bytes, ecoepi::trajectory_csv(traj), events);
            return traj.termination == ecoepi::Termination::completed ? kExitOk
                                                                      : kExitAnalysisFailure;
        }

        if (cmd_sw->parsed()) {
            const std::string bytes = slurp(sw_args.scenario_path);
            const ecoepi::ScenarioFile sc =
                ecoepi::parse_scenario(bytes, sw_args.scenario_path);
            if (!sc.sweep)
                throw ecoepi::ScenarioError(sw_args.scenario_path +
                                            ": scenario has no \"sweep\" block");
            const auto rows = ecoepi::run_sweep(*sc.sweep);
            std::vector<std::pair<std::string, double>> refined;
            if (refine) {
                for (const auto& cell : ecoepi::transitions(*sc.sweep, rows)) {
                    const std::string label =
                        ecoepi::equilibrium_label(cell.id, sc.params.variant) + ":" +
                        (cell.kind == ecoepi::TransitionKind::stability ? "stability"
                                                                        : "feasibility");
                    try {
                        refined.emplace_back(label, ecoepi::refine_transition(*sc.sweep, cell));
                    } catch (const std::exception&) {
                        refined.emplace_back(label + ":error",
                                             std::numeric_limits<double>::quiet_NaN());
                    }
                }
            }
            emit("sweep", sw_args, bytes, ecoepi::sweep_csv(rows, refined));
            return kExitOk;
        }

        if (cmd_ver->parsed()) {
            ecoepi::VerifyOptions opts;
            opts.seed = verify_seed;
            const ecoepi::VerifyReport report = ecoepi::run_verify(opts);
            std::cout << ecoepi::format_report(report);
            return report.all_passed() ? kExitOk : kExitAnalysisFailure;
        }
    } catch (const ecoepi::ScenarioError& ex) {
        std::cerr << "input error: " << ex.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "input error: " << ex.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitAnalysisFailure;
    }
    return kExitInputError;
}
