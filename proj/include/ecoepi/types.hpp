#ifndef ECOEPI_TYPES_HPP
#define ECOEPI_TYPES_HPP

#include <array>
#include <cmath>
#include <string>

namespace ecoepi {

/// Disease effect on predators: infected prey are either ordinary food
/// ("harmless") or poisonous ("toxic", sign-flipped uptake from infected prey).
enum class Variant { harmless, toxic };

inline const char* variant_name(Variant v) {
    return v == Variant::harmless ? "harmless" : "toxic";
}

/// Rate and capacity parameters of the herd-defense ecoepidemic model.
///
///   r      birth rate of healthy prey
///   K      environment carrying capacity
///   sigma  disease incidence (standard incidence transmission)
///   mu     mortality of infected prey (natural + disease)
///   q      predation rate on healthy prey
///   w      predation rate on infected prey
///   m      predator death rate
///   g      predator conversion efficiency from healthy prey
///   f      predator conversion efficiency from infected prey
struct ModelParams {
    double r = 0.0;
    double K = 0.0;
    double sigma = 0.0;
    double mu = 0.0;
    double q = 0.0;
    double w = 0.0;
    double m = 0.0;
    double g = 0.0;
    double f = 0.0;
    Variant variant = Variant::harmless;
};

/// Throws std::invalid_argument when a parameter is negative, K or r is not
/// strictly positive, or (unless enforce_orderings is false) the variant's
/// rate orderings are violated.  Harmless: q <= w, g <= f, g < q, f < w.
/// Toxic: g <= q, f <= w, q <= w.  The ordering check can be disabled for
/// exploratory parameter sets.
void validate_params(const ModelParams& p, bool enforce_orderings = true);

/// True iff validate_params would not throw.
bool params_valid(const ModelParams& p, bool enforce_orderings = true) noexcept;

/// Population state of the original model: healthy prey, infected prey,
/// predators.
struct StateOriginal {
    double S = 0.0;
    double I = 0.0;
    double P = 0.0;
};

/// State of the reformulated, singularity-free model:
///   A = S/(S+I)    healthy fraction, in [0, 1]
///   T = sqrt(S+I)  prey population on the herd boundary, > 0
///   U = P/sqrt(S+I) predators per boundary prey, >= 0
struct StateReformed {
    double A = 0.0;
    double T = 0.0;
    double U = 0.0;
};

/// Componentwise validity with a slack band for states produced by floating
/// arithmetic just outside the exact domain.
inline bool state_valid(const StateReformed& y, double band = 1e-9) noexcept {
    return std::isfinite(y.A) && std::isfinite(y.T) && std::isfinite(y.U) &&
           y.A >= -band && y.A <= 1.0 + band && y.T > 0.0 && y.U >= -band;
}

inline bool state_valid(const StateOriginal& x) noexcept {
    return std::isfinite(x.S) && std::isfinite(x.I) && std::isfinite(x.P) &&
           x.S >= 0.0 && x.I >= 0.0 && x.P >= 0.0;
}

/// Time derivative triple; component order matches the owning state type.
using Deriv3 = std::array<double, 3>;

/// Row-major 3x3 real matrix; entry (i,k) = d(equation i)/d(component k).
struct Matrix3 {
    std::array<double, 9> e{};

    double& operator()(int i, int k) { return e[static_cast<size_t>(3 * i + k)]; }
    double operator()(int i, int k) const { return e[static_cast<size_t>(3 * i + k)]; }

    double trace() const { return e[0] + e[4] + e[8]; }
    double det() const {
        return e[0] * (e[4] * e[8] - e[5] * e[7]) -
               e[1] * (e[3] * e[8] - e[5] * e[6]) +
               e[2] * (e[3] * e[7] - e[4] * e[6]);
    }
    /// Sum of the three principal 2x2 minors.
    double minor_sum() const {
        return (e[4] * e[8] - e[5] * e[7]) +
               (e[0] * e[8] - e[2] * e[6]) +
               (e[0] * e[4] - e[1] * e[3]);
    }
};

inline double inf_norm(const Deriv3& d) {
    return std::max({std::fabs(d[0]), std::fabs(d[1]), std::fabs(d[2])});
}

inline double inf_norm(const StateReformed& y) {
    return std::max({std::fabs(y.A), std::fabs(y.T), std::fabs(y.U)});
}

}  // namespace ecoepi

#endif
