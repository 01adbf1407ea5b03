#ifndef ECOEPI_REPORT_HPP
#define ECOEPI_REPORT_HPP

#include <string>
#include <vector>

#include "ecoepi/equilibria.hpp"
#include "ecoepi/integrate.hpp"
#include "ecoepi/scenario.hpp"
#include "ecoepi/stability.hpp"
#include "ecoepi/sweep.hpp"

namespace ecoepi {

/// FNV-1a 64-bit digest, rendered as 16 hex digits; identifies scenario
/// file bytes in run manifests.
std::string fnv1a_digest(const std::string& bytes);

/// Reproducibility sidecar written next to every output file.
struct RunManifest {
    std::string tool_version;
    std::string subcommand;
    std::string scenario_path;
    std::string scenario_digest;
    std::string timestamp;  ///< ISO-8601 UTC
    std::vector<std::string> outputs;
    std::vector<std::string> events;
};

RunManifest make_manifest(const std::string& subcommand, const std::string& scenario_path,
                          const std::string& scenario_bytes);
void write_manifest(const RunManifest& m, const std::string& output_path);

std::string equilibria_json(const ScenarioFile& sc, const std::vector<EquilibriumRecord>& recs);

struct StabilityRow {
    EquilibriumRecord record;
    StabilityVerdict verdict;
};

std::string stability_json(const ScenarioFile& sc, const std::vector<StabilityRow>& rows);

/// Header t,A,T,U,S,I,P; one row per sample, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

std::string sweep_csv(const std::vector<BifurcationRow>& rows,
                      const std::vector<std::pair<std::string, double>>& refined);

}  // namespace ecoepi

#endif
