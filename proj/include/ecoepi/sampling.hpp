#ifndef ECOEPI_SAMPLING_HPP
#define ECOEPI_SAMPLING_HPP

#include <random>

#include "ecoepi/types.hpp"

namespace ecoepi {

/// Deterministic random draws used by the verification suite and the
/// property tests.  All draws respect the variant's rate orderings.
namespace sampling {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline ModelParams draw_params(Rng& rng, Variant variant) {
    ModelParams p;
    p.variant = variant;
    p.r = uniform(rng, 0.2, 1.0);
    p.K = uniform(rng, 2.0, 20.0);
    p.sigma = uniform(rng, 0.05, 0.9);
    p.mu = uniform(rng, 0.05, 0.9);
    p.m = uniform(rng, 0.05, 1.0);
    p.w = uniform(rng, 0.3, 1.0);
    if (variant == Variant::harmless) {
        p.q = uniform(rng, 0.05, p.w);
        p.f = uniform(rng, 0.1, 0.95 * p.w);
        p.g = uniform(rng, 0.02, std::min(0.95 * p.q, p.f));
    } else {
        p.q = uniform(rng, 0.05, p.w);
        p.f = uniform(rng, 0.05, p.w);
        p.g = uniform(rng, 0.02, p.q);
    }
    return p;
}

/// Interior state away from the faces, suitable for finite differencing.
inline StateReformed draw_state(Rng& rng, double K) {
    StateReformed y;
    y.A = uniform(rng, 0.01, 0.99);
    y.T = uniform(rng, 0.2, 1.4 * std::sqrt(K));
    y.U = uniform(rng, 0.01, 2.0);
    return y;
}

/// Original-coordinate state with total prey bounded away from zero.
inline StateOriginal draw_state_original(Rng& rng, double K) {
    StateOriginal x;
    x.S = uniform(rng, 0.05 * K, K);
    x.I = uniform(rng, 0.02 * K, 0.8 * K);
    x.P = uniform(rng, 0.0, 2.0 * std::sqrt(K));
    return x;
}

}  // namespace sampling

}  // namespace ecoepi

#endif
