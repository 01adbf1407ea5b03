#ifndef ECOEPI_SWEEP_HPP
#define ECOEPI_SWEEP_HPP

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ecoepi/integrate.hpp"
#include "ecoepi/stability.hpp"
#include "ecoepi/types.hpp"

namespace ecoepi {

/// One-parameter grid study specification.
struct SweepSpec {
    ModelParams base;
    std::string parameter;        ///< one of r, K, sigma, mu, q, w, m, g, f
    std::vector<double> values;   ///< strictly ascending grid
    bool with_simulation = false;
    SolverOptions sim_opts;
    std::optional<StateReformed> init;  ///< simulation start; default interior point
};

/// Returns a copy of base with the named parameter set to v; throws on an
/// unknown parameter name.
ModelParams with_parameter(const ModelParams& base, const std::string& name, double v);

struct EquilibriumCell {
    bool applicable = false;
    bool feasible = false;
    bool stable = false;
    double max_real_part = std::numeric_limits<double>::quiet_NaN();
    double feasibility_margin = std::numeric_limits<double>::quiet_NaN();
};

struct BifurcationRow {
    double value = 0.0;
    std::array<EquilibriumCell, 5> eq{};  ///< indexed by EquilibriumId
    std::optional<AttractorKind> attractor;
    std::vector<std::string> flags;  ///< sign changes vs the previous row
    bool errored = false;
    std::string error;
};

/// Evaluates equilibria + stability (and optionally the long-run attractor)
/// at every grid value; flags cells where a feasibility or stability boolean
/// flips between adjacent rows.  Errored grid points are marked, not fatal.
std::vector<BifurcationRow> run_sweep(const SweepSpec& spec);

enum class TransitionKind { feasibility, stability };

struct TransitionCell {
    EquilibriumId id = EquilibriumId::E1;
    TransitionKind kind = TransitionKind::feasibility;
    double lower = 0.0;  ///< grid value below the flip
    double upper = 0.0;  ///< grid value above the flip
};

/// Extracts the flagged cells of a sweep result.
std::vector<TransitionCell> transitions(const SweepSpec& spec,
                                        const std::vector<BifurcationRow>& rows);

/// Bisects the continuous margin across a flagged cell (max real eigenvalue
/// part for stability flips, the feasibility margin otherwise) until the
/// bracket is shorter than 1e-6 * max(1, |value|).  Throws when the cell
/// does not bracket a sign change.
double refine_transition(const SweepSpec& spec, const TransitionCell& cell);

}  // namespace ecoepi

#endif
