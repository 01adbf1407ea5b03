#ifndef ECOEPI_EQUILIBRIA_HPP
#define ECOEPI_EQUILIBRIA_HPP

#include <optional>
#include <string>
#include <vector>

#include "ecoepi/cubic.hpp"
#include "ecoepi/types.hpp"

namespace ecoepi {

/// Candidate equilibria of the reformed system.  Under the toxic variant the
/// same slots are conventionally written P1..P5.
enum class EquilibriumId { E1, E2, E3, E4, E5 };

/// Display label, e.g. "E3" (harmless) or "P3" (toxic).
std::string equilibrium_label(EquilibriumId id, Variant v);

/// One feasibility inequality with its signed margin: satisfied iff
/// margin > 0, boundary-degenerate when |margin| <= 1e-12.
struct FeasibilityCondition {
    std::string label;
    bool satisfied = false;
    double margin = 0.0;
    bool boundary = false;
};

struct FeasibilityReport {
    std::vector<FeasibilityCondition> conditions;

    bool feasible() const {
        for (const auto& c : conditions)
            if (!c.satisfied && !c.boundary) return false;
        return true;
    }
    /// Smallest margin across conditions; +inf for an empty report.
    double min_margin() const;
};

enum class RecordStatus {
    has_state,        ///< coordinates computed and state-space valid
    infeasible,       ///< conditions rule the state out; no coordinates
    not_applicable,   ///< the equilibrium's defining case (q = w vs q < w) does not hold
};

struct EquilibriumRecord {
    EquilibriumId id = EquilibriumId::E1;
    Variant variant = Variant::harmless;
    RecordStatus status = RecordStatus::infeasible;
    std::optional<StateReformed> state;
    FeasibilityReport feasibility;
    double residual = 0.0;  ///< inf-norm of rhs_reformed at the state, when present
    bool degenerate = false;
    std::vector<std::string> notes;

    bool feasible() const {
        return status == RecordStatus::has_state && feasibility.feasible();
    }
    std::string label() const { return equilibrium_label(id, variant); }
};

/// Boundary (predator-free) equilibria: the disease-free state
/// E1 = (1, sqrt(K), 0), always feasible, and the endemic prey-only state
/// E2 = (mu/sigma, sqrt(K(r+mu-sigma)/r), 0).  At mu = sigma the two
/// coincide and E2 carries a degeneracy flag.
std::vector<EquilibriumRecord> equilibrium_boundary(const ModelParams& p);

/// Disease-free coexistence E3 = (1, m/g, r(g^2 K - m^2)/(g^2 q K)),
/// feasible iff K > (m/g)^2.
EquilibriumRecord equilibrium_E3(const ModelParams& p);

/// Endemic coexistence in the equal-predation case q = w (within relative
/// 1e-12); "not applicable" otherwise.
EquilibriumRecord equilibrium_E4(const ModelParams& p);

/// Coefficients of the healthy-fraction polynomial for the endemic
/// coexistence equilibrium when q < w.  The polynomial is
/// K D(A)^2 [ (w sigma - r w - q mu) + sigma (q - w) A ] + m^2 r w
/// with D(A) = (g-f)A + f (harmless) or (g+f)A - f (toxic).
CubicCoeffs e5_cubic(const ModelParams& p);

/// Endemic coexistence candidates for q < w: all real roots of e5_cubic in
/// (0, 1] that give a valid state (T > 0, U >= 0), one record per root,
/// ordered by ascending A.  Roots at A = 1 are cross-labelled as coinciding
/// with E3; a vanishing constant coefficient flags the degenerate root A = 0
/// (healthy prey wiped out).
std::vector<EquilibriumRecord> equilibrium_E5(const ModelParams& p);

/// All candidate equilibria in id order, coincidences flagged.
std::vector<EquilibriumRecord> all_equilibria(const ModelParams& p);

/// Relative tolerance used to decide q = w (equal predation rates).
bool equal_predation_rates(const ModelParams& p);

}  // namespace ecoepi

#endif
