#include "ecoepi/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ecoepi/model.hpp"

namespace ecoepi {

namespace {

constexpr double kMarginalBand = 1e-8;

FeasibilityCondition condition(std::string label, double margin) {
    FeasibilityCondition c;
    c.label = std::move(label);
    c.margin = margin;
    c.boundary = std::fabs(margin) <= 1e-12;
    c.satisfied = margin > 0.0;
    return c;
}

// Closed-form inequality sets for E1/P1, E2/P2, E3/P3.  Returns nullopt for
// the ids the model gives no printed set for.
std::optional<std::pair<std::vector<FeasibilityCondition>, bool>> closed_form_set(
    const ModelParams& p, EquilibriumId id) {
    std::vector<FeasibilityCondition> cs;
    const double rho = p.r + p.mu - p.sigma;
    switch (id) {
        case EquilibriumId::E1: {
            if (p.variant == Variant::harmless) {
                if (p.sigma > 0.0)
                    cs.push_back(condition("mu/sigma > 1", p.mu / p.sigma - 1.0));
                else
                    cs.push_back(condition("mu > sigma (sigma = 0)", p.mu - p.sigma));
            } else {
                cs.push_back(condition("sigma < mu", p.mu - p.sigma));
            }
            if (p.g > 0.0)
                cs.push_back(condition("K < m^2/g^2", (p.m / p.g) * (p.m / p.g) - p.K));
            else
                cs.push_back(condition("m > g sqrt(K)", p.m - p.g * std::sqrt(p.K)));
            bool ok = true;
            for (const auto& c : cs) ok = ok && c.satisfied;
            return std::make_pair(cs, ok);
        }
        case EquilibriumId::E2: {
            if (p.sigma <= 0.0 || rho <= 0.0) return std::nullopt;
            if (p.variant == Variant::harmless) {
                const double d1 = (p.sigma - p.mu) * p.f + p.g * p.mu;
                if (d1 <= 0.0) return std::nullopt;
                const double k_max = (p.m * p.sigma / d1) * (p.m * p.sigma / d1) * p.r / rho;
                cs.push_back(condition("K < (m sigma / ((sigma-mu)f + g mu))^2 r/(r+mu-sigma)",
                                       k_max - p.K));
                return std::make_pair(cs, cs.front().satisfied);
            }
            // toxic: either g <= f(sigma-mu)/mu, or else an upper bound on K
            if (p.mu <= 0.0) return std::nullopt;
            const double branch_a = p.f * (p.sigma - p.mu) / p.mu - p.g;
            cs.push_back(condition("g <= f(sigma-mu)/mu", branch_a));
            bool ok = branch_a >= 0.0;
            if (!ok) {
                const double d2 = p.g * p.mu - p.f * (p.sigma - p.mu);
                const double k_max = (p.r / rho) * (p.m * p.sigma / d2) * (p.m * p.sigma / d2);
                cs.push_back(condition("K < r m^2 sigma^2 / ((r+mu-sigma)(g mu - f(sigma-mu))^2)",
                                       k_max - p.K));
                ok = cs.back().satisfied;
            }
            return std::make_pair(cs, ok);
        }
        case EquilibriumId::E3: {
            if (p.g <= 0.0 || p.q <= 0.0 || p.m <= 0.0) return std::nullopt;
            const double ratio = p.K * p.g * p.g / (p.m * p.m);
            const double denom = p.r * p.w + p.q * p.mu - p.q * p.sigma;
            cs.push_back(condition("rw + q mu - q sigma > 0", denom));
            double lo = 1.0;
            if (denom > 0.0) lo = std::max(1.0, p.r * p.w / denom);
            cs.push_back(condition("K g^2/m^2 > max(1, rw/(rw+q mu-q sigma))", ratio - lo));
            cs.push_back(condition("K g^2/m^2 < 3", 3.0 - ratio));
            const bool ok = cs[0].satisfied && cs[1].satisfied && cs[2].satisfied;
            return std::make_pair(cs, ok);
        }
        default:
            return std::nullopt;
    }
}

}  // namespace

StabilityVerdict classify(const ModelParams& p, const EquilibriumRecord& eq) {
    if (!eq.state || !eq.feasible())
        throw std::domain_error("classify: record is not a feasible equilibrium");

    StabilityVerdict v;
    const Matrix3 J = jacobian_reformed(p, *eq.state);
    const CubicCoeffs chi = characteristic_cubic(J);
    v.eigenvalues = solve_cubic(chi);
    double max_re = v.eigenvalues[0].real();
    double max_abs = 0.0;
    for (const auto& lam : v.eigenvalues) {
        max_re = std::max(max_re, lam.real());
        max_abs = std::max(max_abs, std::abs(lam));
    }
    v.max_real_part = max_re;
    const double scale = 1.0 + max_abs;
    if (max_re < -kMarginalBand * scale)
        v.classification = StabilityClass::stable;
    else if (max_re > kMarginalBand * scale)
        v.classification = StabilityClass::unstable;
    else
        v.classification = StabilityClass::marginal;

    const RouthHurwitz rh = routh_hurwitz_cubic(chi);
    v.rh_satisfied = rh.satisfied;
    v.rh_margins = rh.margins;

    if (auto cf = closed_form_set(p, eq.id)) {
        v.closed_form = std::move(cf->first);
        v.closed_form_satisfied = cf->second;
    }

    v.agreement = v.classification == StabilityClass::marginal ||
                  ((v.classification == StabilityClass::stable) == v.rh_satisfied);
    return v;
}

std::optional<std::array<std::complex<double>, 3>> factored_eigenvalues(
    const ModelParams& p, EquilibriumId id) {
    const double rho = p.r + p.mu - p.sigma;
    switch (id) {
        case EquilibriumId::E1:
            return std::array<std::complex<double>, 3>{
                std::complex<double>(p.sigma - p.mu, 0.0),
                std::complex<double>(-p.r, 0.0),
                std::complex<double>(-p.m + p.g * std::sqrt(p.K), 0.0)};
        case EquilibriumId::E2: {
            if (p.sigma <= 0.0 || rho < 0.0) return std::nullopt;
            const double A2 = p.mu / p.sigma;
            const double T2 = std::sqrt(p.K * rho / p.r);
            const double growth = (p.variant == Variant::harmless)
                                      ? p.f + (p.g - p.f) * A2
                                      : (p.g + p.f) * A2 - p.f;
            const std::complex<double> lam1(T2 * growth - p.m, 0.0);
            // quadratic factor lambda^2 + (mu/sigma) rho lambda + mu (1 - mu/sigma) rho
            const double b = A2 * rho;
            const double c = p.mu * (1.0 - A2) * rho;
            const double disc = b * b - 4.0 * c;
            std::array<std::complex<double>, 3> out;
            out[0] = lam1;
            if (disc >= 0.0) {
                out[1] = { -0.5 * b - 0.5 * std::sqrt(disc), 0.0 };
                out[2] = { -0.5 * b + 0.5 * std::sqrt(disc), 0.0 };
            } else {
                out[1] = { -0.5 * b, -0.5 * std::sqrt(-disc) };
                out[2] = { -0.5 * b, 0.5 * std::sqrt(-disc) };
            }
            return out;
        }
        case EquilibriumId::E3: {
            if (p.g <= 0.0 || p.q <= 0.0) return std::nullopt;
            const double gK = p.g * p.g * p.K;
            const std::complex<double> lam1(
                (p.sigma - p.mu) + p.r * p.w * (p.m * p.m - gK) / (gK * p.q), 0.0);
            // 2x2 block factor: lambda^2 + r(3m^2 - g^2 K)/(2 g^2 K) lambda
            //                   + m r (g^2 K - m^2)/(2 g^2 K)
            const double b = p.r * (3.0 * p.m * p.m - gK) / (2.0 * gK);
            const double c = p.m * p.r * (gK - p.m * p.m) / (2.0 * gK);
            const double disc = b * b - 4.0 * c;
            std::array<std::complex<double>, 3> out;
            out[0] = lam1;
            if (disc >= 0.0) {
                out[1] = { -0.5 * b - 0.5 * std::sqrt(disc), 0.0 };
                out[2] = { -0.5 * b + 0.5 * std::sqrt(disc), 0.0 };
            } else {
                out[1] = { -0.5 * b, -0.5 * std::sqrt(-disc) };
                out[2] = { -0.5 * b, 0.5 * std::sqrt(-disc) };
            }
            return out;
        }
        default:
            return std::nullopt;
    }
}

HopfThreshold hopf_K(const ModelParams& p) {
    if (!(p.g > 0.0)) throw std::domain_error("hopf_K: requires g > 0");
    HopfThreshold h;
    h.k_critical = 3.0 * p.m * p.m / (p.g * p.g);

    ModelParams pc = p;
    pc.K = h.k_critical;
    const double gK = pc.g * pc.g * pc.K;
    h.quadratic_linear_coeff = pc.r * (3.0 * pc.m * pc.m - gK) / (2.0 * gK);

    // full characteristic cubic at the disease-free coexistence state
    const StateReformed e3{1.0, pc.m / pc.g,
                           pc.r * (gK - pc.m * pc.m) / (gK * std::max(pc.q, 1e-300))};
    const CubicCoeffs chi = characteristic_cubic(jacobian_reformed(pc, e3));
    h.condition_residual = chi.a1 * chi.a2 - chi.a0;
    return h;
}

std::vector<TranscriticalPoint> transcritical_points(const ModelParams& p) {
    validate_params(p, false);
    std::vector<TranscriticalPoint> out;
    TranscriticalPoint t1;
    t1.first = EquilibriumId::E1;
    t1.second = EquilibriumId::E2;
    t1.locus = "sigma = mu";
    t1.margin = p.mu - p.sigma;
    t1.at_threshold = std::fabs(t1.margin) <= 1e-12;
    out.push_back(t1);

    TranscriticalPoint t2;
    t2.first = EquilibriumId::E1;
    t2.second = EquilibriumId::E3;
    t2.locus = "K = m^2/g^2";
    t2.margin = (p.g > 0.0) ? (p.m / p.g) * (p.m / p.g) - p.K
                            : std::numeric_limits<double>::infinity();
    t2.at_threshold = std::fabs(t2.margin) <= 1e-12;
    out.push_back(t2);
    return out;
}

}  // namespace ecoepi
