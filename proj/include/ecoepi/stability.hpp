#ifndef ECOEPI_STABILITY_HPP
#define ECOEPI_STABILITY_HPP

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ecoepi/cubic.hpp"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/types.hpp"

namespace ecoepi {

enum class StabilityClass { stable, unstable, marginal };

inline const char* stability_name(StabilityClass c) {
    switch (c) {
        case StabilityClass::stable: return "stable";
        case StabilityClass::unstable: return "unstable";
        default: return "marginal";
    }
}

/// Verdict from three routes: eigenvalues of the characteristic cubic,
/// Routh-Hurwitz on its coefficients, and (for the boundary and disease-free
/// equilibria) the model's closed-form inequality sets.
struct StabilityVerdict {
    std::array<std::complex<double>, 3> eigenvalues{};
    double max_real_part = 0.0;
    StabilityClass classification = StabilityClass::marginal;
    bool rh_satisfied = false;
    std::array<double, 4> rh_margins{};
    std::optional<std::vector<FeasibilityCondition>> closed_form;
    bool closed_form_satisfied = false;  ///< meaningful when closed_form is set
    bool agreement = true;               ///< eigen verdict vs Routh-Hurwitz
};

/// Classifies a feasible equilibrium record.  Throws std::domain_error when
/// the record carries no state or is infeasible.
StabilityVerdict classify(const ModelParams& p, const EquilibriumRecord& eq);

/// Eigenvalues of selected equilibria via the closed-form factorization
/// (one explicit eigenvalue plus a quadratic factor); available for E1, E2
/// and E3 in both variants.  Cross-check path, independent of the
/// characteristic-cubic route.
std::optional<std::array<std::complex<double>, 3>> factored_eigenvalues(
    const ModelParams& p, EquilibriumId id);

/// Critical carrying capacity 3 m^2/g^2 at which the disease-free
/// coexistence state loses stability through a pair of imaginary
/// eigenvalues, together with the residual of the degeneracy condition
/// a1 a2 - a0 = 0 evaluated there (vanishes to rounding).
struct HopfThreshold {
    double k_critical = 0.0;
    double condition_residual = 0.0;   ///< a1 a2 - a0 of the characteristic cubic at K = k_critical
    double quadratic_linear_coeff = 0.0;  ///< linear coefficient of the 2x2-block factor at K = k_critical
};

HopfThreshold hopf_K(const ModelParams& p);

/// Parameter-space loci where boundary equilibria exchange stability.
struct TranscriticalPoint {
    EquilibriumId first = EquilibriumId::E1;
    EquilibriumId second = EquilibriumId::E2;
    std::string locus;
    double margin = 0.0;   ///< positive on the side where `first` is stable
    bool at_threshold = false;
};

std::vector<TranscriticalPoint> transcritical_points(const ModelParams& p);

}  // namespace ecoepi

#endif
