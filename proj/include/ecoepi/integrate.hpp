#ifndef ECOEPI_INTEGRATE_HPP
#define ECOEPI_INTEGRATE_HPP

#include <vector>

#include "ecoepi/types.hpp"

namespace ecoepi {

struct SolverOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.0;             ///< 0 = no cap beyond the output stride
    double t_end = 1000.0;
    double dense_output_stride = 0.0;  ///< 0 = t_end / 4000
};

enum class Termination { completed, extinction_event, blowup_event };

inline const char* termination_name(Termination t) {
    switch (t) {
        case Termination::completed: return "completed";
        case Termination::extinction_event: return "extinction_event";
        default: return "blowup_event";
    }
}

/// Sampled solution of the reformed system.  States are stored in reformed
/// coordinates; original-coordinate rows are derived on demand.
struct Trajectory {
    std::vector<double> times;
    std::vector<StateReformed> states;
    Termination termination = Termination::completed;

    StateOriginal original(size_t i) const;
    size_t size() const { return times.size(); }
};

/// Sampled solution of the original system; only used by the
/// dual-coordinate consistency checks.  Unsafe near prey extinction, where
/// the original right-hand side is singular.
struct TrajectoryOriginal {
    std::vector<double> times;
    std::vector<StateOriginal> states;
    Termination termination = Termination::completed;
};

/// Integrates the reformed system from y0 with an embedded Runge-Kutta 5(4)
/// pair and proportional-integral step-size control.  Samples are emitted on
/// the uniform stride grid.  Terminates early on prey extinction
/// (T < 1e-10) or blow-up (any component beyond 1e12).
Trajectory simulate(const ModelParams& p, const StateReformed& y0,
                    const SolverOptions& opts);

/// Same scheme applied to the original (S, I, P) coordinates.
TrajectoryOriginal simulate_original(const ModelParams& p, const StateOriginal& x0,
                                     const SolverOptions& opts);

enum class AttractorKind { equilibrium, limit_cycle, divergent, undetermined };

inline const char* attractor_name(AttractorKind k) {
    switch (k) {
        case AttractorKind::equilibrium: return "equilibrium";
        case AttractorKind::limit_cycle: return "limit_cycle";
        case AttractorKind::divergent: return "divergent";
        default: return "undetermined";
    }
}

struct AttractorReport {
    AttractorKind kind = AttractorKind::undetermined;
    StateReformed target{};           ///< meaningful for kind == equilibrium
    double period = 0.0;              ///< meaningful for kind == limit_cycle
    std::array<double, 3> amplitudes{};  ///< per-variable max - min over the window
    std::array<double, 3> means{};
    int peaks = 0;
    double peak_interval_cv = 0.0;
};

/// Classifies the post-transient window (the trailing 1 - transient_fraction
/// of the time span).  Equilibrium when every per-variable amplitude is
/// below 1e-3 (1 + |mean|); limit cycle when at least three regularly spaced
/// peaks are found (interval coefficient of variation < 5%).
AttractorReport detect_attractor(const Trajectory& traj, double transient_fraction = 0.8);

}  // namespace ecoepi

#endif
