#include "ecoepi/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

#include "ecoepi/model.hpp"

namespace ecoepi {

namespace {

constexpr double kExtinctionT = 1e-10;
constexpr double kBlowup = 1e12;
constexpr double kClampBand = 1e-12;

using Vec3 = std::array<double, 3>;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// difference between 5th and embedded 4th order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct StepResult {
    Vec3 y;
    Vec3 k_last;   // FSAL stage
    double error;  // scaled error norm
};

template <typename Rhs>
StepResult dopri_step(const Rhs& f, const Vec3& y, const Vec3& k1, double h,
                      double rel_tol, double abs_tol) {
    Vec3 t, k2, k3, k4, k5, k6, k7, y5;
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * a21 * k1[i];
    k2 = f(t);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = f(t);
    for (int i = 0; i < 3; ++i) t[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = f(t);
    for (int i = 0; i < 3; ++i)
        t[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = f(t);
    for (int i = 0; i < 3; ++i)
        t[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = f(t);
    for (int i = 0; i < 3; ++i)
        y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    k7 = f(y5);

    double err = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                               e6 * k6[i] + e7 * k7[i]);
        const double sc = abs_tol + rel_tol * std::max(std::fabs(y[i]), std::fabs(y5[i]));
        err += (ei / sc) * (ei / sc);
    }
    return {y5, k7, std::sqrt(err / 3.0)};
}

struct RawSamples {
    std::vector<double> times;
    std::vector<Vec3> states;
    Termination termination = Termination::completed;
};

// Adaptive integration with samples emitted on the uniform stride grid.
// The step is clipped so each sample time is hit exactly.
template <typename Rhs, typename EventCheck>
RawSamples integrate_adaptive(const Rhs& f, Vec3 y0, const SolverOptions& opts,
                              const EventCheck& event) {
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0))
        throw std::invalid_argument("solver tolerances must be positive");
    if (!(opts.t_end > 0.0))
        throw std::invalid_argument("t_end must be positive");

    const double stride =
        (opts.dense_output_stride > 0.0) ? opts.dense_output_stride : opts.t_end / 4000.0;
    const double h_cap = (opts.max_step > 0.0) ? opts.max_step : opts.t_end;

    RawSamples out;
    out.times.reserve(static_cast<size_t>(opts.t_end / stride) + 2);
    out.states.reserve(out.times.capacity());

    double t = 0.0;
    Vec3 y = y0;
    out.times.push_back(t);
    out.states.push_back(y);

    Vec3 k1 = f(y);
    double h = std::min({stride, h_cap, 1e-2});
    double err_prev = 1.0;
    long sample_index = 1;

    while (t < opts.t_end) {
        const double next_sample = stride * static_cast<double>(sample_index);
        const double target = std::min(next_sample, opts.t_end);
        double h_try = std::min(h, h_cap);
        bool hits_target = false;
        if (t + h_try >= target) {
            h_try = target - t;
            hits_target = true;
        }
        if (h_try <= 0.0) h_try = 1e-14 * std::max(1.0, target);

        const StepResult step = dopri_step(f, y, k1, h_try, opts.rel_tol, opts.abs_tol);
        if (step.error <= 1.0) {
            t = hits_target ? target : t + h_try;
            y = step.y;
            k1 = step.k_last;

            if (event(y)) {
                out.times.push_back(t);
                out.states.push_back(y);
                out.termination = (inf_norm(Deriv3{y[0], y[1], y[2]}) > kBlowup)
                                      ? Termination::blowup_event
                                      : Termination::extinction_event;
                return out;
            }
            if (hits_target) {
                out.times.push_back(target);
                out.states.push_back(y);
                if (target >= next_sample) ++sample_index;
            }
            // PI controller (order 5, stabilized)
            const double fac = 0.9 * std::pow(step.error + 1e-16, -0.7 / 5.0) *
                               std::pow(err_prev, 0.4 / 5.0);
            h = h_try * std::clamp(fac, 0.2, 6.0);
            err_prev = std::max(step.error, 1e-4);
        } else {
            h = h_try * std::max(0.2, 0.9 * std::pow(step.error, -1.0 / 5.0));
        }
    }
    return out;
}

}  // namespace

StateOriginal Trajectory::original(size_t i) const { return to_original(states[i]); }

Trajectory simulate(const ModelParams& p, const StateReformed& y0, const SolverOptions& opts) {
    validate_params(p, false);
    if (!state_valid(y0, 1e-12))
        throw std::domain_error("simulate: initial state outside the (A, T, U) domain");

    const auto f = [&p](const Vec3& y) {
        return detail::rhs_reformed_raw(p, y[0], y[1], y[2]);
    };
    const auto event = [](const Vec3& y) {
        return y[1] < kExtinctionT ||
               std::fabs(y[0]) > kBlowup || std::fabs(y[1]) > kBlowup || std::fabs(y[2]) > kBlowup;
    };
    RawSamples raw = integrate_adaptive(f, {y0.A, y0.T, y0.U}, opts, event);

    Trajectory traj;
    traj.termination = raw.termination;
    traj.times = std::move(raw.times);
    traj.states.reserve(raw.states.size());
    for (auto& v : raw.states) {
        // clamp only hairline excursions past the invariant faces
        if (v[0] > 1.0 && v[0] <= 1.0 + kClampBand) v[0] = 1.0;
        if (v[0] < 0.0 && v[0] >= -kClampBand) v[0] = 0.0;
        if (v[2] < 0.0 && v[2] >= -kClampBand) v[2] = 0.0;
        traj.states.push_back({v[0], v[1], v[2]});
    }
    return traj;
}

TrajectoryOriginal simulate_original(const ModelParams& p, const StateOriginal& x0,
                                     const SolverOptions& opts) {
    validate_params(p, false);
    if (!state_valid(x0) || !(x0.S + x0.I > 0.0))
        throw std::domain_error("simulate_original: initial state invalid or at extinction");

    const auto f = [&p](const Vec3& x) {
        return detail::rhs_original_raw(p, x[0], x[1], x[2]);
    };
    const auto event = [](const Vec3& x) {
        return x[0] + x[1] < kExtinctionT * kExtinctionT ||
               std::fabs(x[0]) > kBlowup || std::fabs(x[1]) > kBlowup || std::fabs(x[2]) > kBlowup;
    };
    RawSamples raw = integrate_adaptive(f, {x0.S, x0.I, x0.P}, opts, event);

    TrajectoryOriginal traj;
    traj.termination = raw.termination;
    traj.times = std::move(raw.times);
    traj.states.reserve(raw.states.size());
    for (auto& v : raw.states) {
        for (double& c : v)
            if (c < 0.0 && c >= -kClampBand) c = 0.0;
        traj.states.push_back({v[0], v[1], v[2]});
    }
    return traj;
}

namespace {

// Quadratic refinement of a three-point local maximum; returns the offset of
// the vertex relative to the middle sample, in units of the stride.
double peak_offset(double ym, double y0, double yp) {
    const double denom = ym - 2.0 * y0 + yp;
    if (denom == 0.0) return 0.0;
    return 0.5 * (ym - yp) / denom;
}

}  // namespace

AttractorReport detect_attractor(const Trajectory& traj, double transient_fraction) {
    AttractorReport rep;
    if (traj.termination == Termination::blowup_event) {
        rep.kind = AttractorKind::divergent;
        return rep;
    }
    if (traj.termination != Termination::completed) {
        rep.kind = AttractorKind::undetermined;
        return rep;
    }
    if (traj.size() < 2) throw std::domain_error("detect_attractor: trajectory too short");

    const double t_cut = traj.times.front() +
                         transient_fraction * (traj.times.back() - traj.times.front());
    size_t first = 0;
    while (first < traj.size() && traj.times[first] < t_cut) ++first;
    const size_t n = traj.size() - first;
    if (n < 50) throw std::domain_error("detect_attractor: fewer than 50 post-transient samples");

    std::array<double, 3> lo{}, hi{};
    for (int k = 0; k < 3; ++k) {
        lo[k] = std::numeric_limits<double>::infinity();
        hi[k] = -lo[k];
    }
    std::array<double, 3> sum{};
    auto comp = [](const StateReformed& s, int k) {
        return k == 0 ? s.A : (k == 1 ? s.T : s.U);
    };
    for (size_t i = first; i < traj.size(); ++i) {
        for (int k = 0; k < 3; ++k) {
            const double v = comp(traj.states[i], k);
            lo[k] = std::min(lo[k], v);
            hi[k] = std::max(hi[k], v);
            sum[k] += v;
        }
    }
    bool all_flat = true;
    for (int k = 0; k < 3; ++k) {
        rep.amplitudes[k] = hi[k] - lo[k];
        rep.means[k] = sum[k] / static_cast<double>(n);
        all_flat = all_flat && rep.amplitudes[k] < 1e-3 * (1.0 + std::fabs(rep.means[k]));
    }
    if (all_flat) {
        rep.kind = AttractorKind::equilibrium;
        rep.target = {rep.means[0], rep.means[1], rep.means[2]};
        return rep;
    }

    // pick the variable with the largest relative swing and analyse its peaks
    int ref = 0;
    double best = -1.0;
    for (int k = 0; k < 3; ++k) {
        const double relamp = rep.amplitudes[k] / (1.0 + std::fabs(rep.means[k]));
        if (relamp > best) {
            best = relamp;
            ref = k;
        }
    }
    std::vector<double> peak_times;
    for (size_t i = first + 1; i + 1 < traj.size(); ++i) {
        const double ym = comp(traj.states[i - 1], ref);
        const double y0 = comp(traj.states[i], ref);
        const double yp = comp(traj.states[i + 1], ref);
        if (y0 > ym && y0 >= yp) {
            const double dt = traj.times[i + 1] - traj.times[i];
            peak_times.push_back(traj.times[i] + peak_offset(ym, y0, yp) * dt);
        }
    }
    rep.peaks = static_cast<int>(peak_times.size());
    if (peak_times.size() >= 3) {
        std::vector<double> gaps(peak_times.size() - 1);
        double mean = 0.0;
        for (size_t i = 0; i + 1 < peak_times.size(); ++i) {
            gaps[i] = peak_times[i + 1] - peak_times[i];
            mean += gaps[i];
        }
        mean /= static_cast<double>(gaps.size());
        double var = 0.0;
        for (double gp : gaps) var += (gp - mean) * (gp - mean);
        var /= static_cast<double>(gaps.size());
        const double cv = (mean > 0.0) ? std::sqrt(var) / mean : 1.0;
        rep.peak_interval_cv = cv;
        if (cv < 0.05) {
            rep.kind = AttractorKind::limit_cycle;
            rep.period = mean;
            return rep;
        }
    }
    rep.kind = AttractorKind::undetermined;
    return rep;
}

}  // namespace ecoepi
