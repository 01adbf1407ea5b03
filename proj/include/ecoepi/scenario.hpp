#ifndef ECOEPI_SCENARIO_HPP
#define ECOEPI_SCENARIO_HPP

#include <optional>
#include <string>

#include "ecoepi/integrate.hpp"
#include "ecoepi/sweep.hpp"
#include "ecoepi/types.hpp"

namespace ecoepi {

/// Parsed scenario file.  JSON schema:
///
///   {
///     "model":   "harmless" | "toxic",
///     "comment": "free text",                       (optional)
///     "params":  { "r", "K", "sigma", "mu", "q", "w", "m", "g", "f" },
///     "init":    { "S", "I", "P" } or { "A", "T", "U" },   (optional)
///     "solver":  { "rel_tol", "abs_tol", "max_step", "t_end", "stride" },  (optional)
///     "sweep":   { "parameter", "values" | "from"/"to"/"step",
///                  "with_simulation", "refine" }     (optional)
///   }
///
/// Unknown keys are rejected.  At most one init form may be present.
struct ScenarioFile {
    ModelParams params;
    std::string comment;
    std::optional<StateReformed> init;
    SolverOptions solver;
    bool solver_given = false;
    std::optional<SweepSpec> sweep;

    /// Initial state for simulation: the explicit one if present, otherwise
    /// the interior default (0.5, sqrt(K)/2, 0.1).
    StateReformed initial_state() const;
};

/// Parse errors carry the offending key in the message.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

ScenarioFile load_scenario(const std::string& path);
ScenarioFile parse_scenario(const std::string& json_text, const std::string& origin = "<string>");

}  // namespace ecoepi

#endif
