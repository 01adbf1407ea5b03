#include "ecoepi/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ecoepi/model.hpp"

namespace ecoepi {

namespace {

constexpr double kBoundaryTol = 1e-12;
constexpr double kCoincidenceTol = 1e-9;

FeasibilityCondition make_condition(std::string label, double margin) {
    FeasibilityCondition c;
    c.label = std::move(label);
    c.margin = margin;
    c.boundary = std::fabs(margin) <= kBoundaryTol;
    c.satisfied = margin > 0.0 || c.boundary;
    return c;
}

double state_residual(const ModelParams& p, const StateReformed& y) {
    return inf_norm(detail::rhs_reformed_raw(p, y.A, y.T, y.U));
}

bool states_coincide(const StateReformed& a, const StateReformed& b) {
    const double scale = 1.0 + std::max(inf_norm(a), inf_norm(b));
    return std::fabs(a.A - b.A) <= kCoincidenceTol * scale &&
           std::fabs(a.T - b.T) <= kCoincidenceTol * scale &&
           std::fabs(a.U - b.U) <= kCoincidenceTol * scale;
}

EquilibriumRecord base_record(EquilibriumId id, const ModelParams& p) {
    EquilibriumRecord rec;
    rec.id = id;
    rec.variant = p.variant;
    return rec;
}

}  // namespace

std::string equilibrium_label(EquilibriumId id, Variant v) {
    const char prefix = (v == Variant::harmless) ? 'E' : 'P';
    return std::string(1, prefix) + std::to_string(static_cast<int>(id) + 1);
}

double FeasibilityReport::min_margin() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& c : conditions) m = std::min(m, c.margin);
    return m;
}

bool equal_predation_rates(const ModelParams& p) {
    const double scale = std::max({p.q, p.w, 1e-300});
    return std::fabs(p.q - p.w) <= 1e-12 * scale;
}

std::vector<EquilibriumRecord> equilibrium_boundary(const ModelParams& p) {
    validate_params(p, false);
    std::vector<EquilibriumRecord> out;

    // E1 = (1, sqrt(K), 0), unconditionally feasible
    EquilibriumRecord e1 = base_record(EquilibriumId::E1, p);
    e1.status = RecordStatus::has_state;
    e1.state = StateReformed{1.0, std::sqrt(p.K), 0.0};
    e1.residual = state_residual(p, *e1.state);
    out.push_back(std::move(e1));

    // E2 = (mu/sigma, sqrt(K(r+mu-sigma)/r), 0)
    EquilibriumRecord e2 = base_record(EquilibriumId::E2, p);
    if (p.sigma == 0.0) {
        e2.status = RecordStatus::infeasible;
        e2.notes.push_back("A undefined: sigma = 0");
        out.push_back(std::move(e2));
        return out;
    }
    const double rho = p.r + p.mu - p.sigma;
    e2.feasibility.conditions.push_back(make_condition("r + mu - sigma > 0", rho));
    e2.feasibility.conditions.push_back(make_condition("sigma - mu > 0", p.sigma - p.mu));
    if (e2.feasibility.feasible()) {
        const double A2 = p.mu / p.sigma;
        e2.state = StateReformed{A2, std::sqrt(p.K * rho / p.r), 0.0};
        e2.status = RecordStatus::has_state;
        e2.residual = state_residual(p, *e2.state);
        if (states_coincide(*e2.state, *out.front().state)) {
            e2.degenerate = true;
            e2.notes.push_back("coincides with " + out.front().label() + " (mu = sigma)");
        }
    } else {
        e2.status = RecordStatus::infeasible;
    }
    out.push_back(std::move(e2));
    return out;
}

EquilibriumRecord equilibrium_E3(const ModelParams& p) {
    validate_params(p, false);
    EquilibriumRecord rec = base_record(EquilibriumId::E3, p);
    if (p.g == 0.0 || p.q == 0.0) {
        rec.status = RecordStatus::infeasible;
        rec.notes.push_back(p.g == 0.0 ? "undefined: g = 0" : "undefined: q = 0");
        return rec;
    }
    const double gK = p.g * p.g * p.K;
    const double margin = p.K - (p.m / p.g) * (p.m / p.g);
    rec.feasibility.conditions.push_back(make_condition("K - m^2/g^2 > 0", margin));
    if (!rec.feasibility.feasible()) {
        rec.status = RecordStatus::infeasible;
        return rec;
    }
    const double U3 = p.r * (gK - p.m * p.m) / (gK * p.q);
    rec.state = StateReformed{1.0, p.m / p.g, std::max(U3, 0.0)};
    rec.status = RecordStatus::has_state;
    rec.residual = state_residual(p, *rec.state);
    if (std::fabs(margin) <= kBoundaryTol) {
        rec.degenerate = true;
        rec.notes.push_back("boundary-degenerate: U = 0, coincides with " +
                            equilibrium_label(EquilibriumId::E1, p.variant));
    }
    return rec;
}

EquilibriumRecord equilibrium_E4(const ModelParams& p) {
    validate_params(p, false);
    EquilibriumRecord rec = base_record(EquilibriumId::E4, p);
    if (!equal_predation_rates(p)) {
        rec.status = RecordStatus::not_applicable;
        rec.notes.push_back("requires equal predation rates q = w");
        return rec;
    }
    const double rho = p.r + p.mu - p.sigma;
    rec.feasibility.conditions.push_back(make_condition("r + mu - sigma > 0", rho));
    if (rho <= 0.0) {
        rec.status = RecordStatus::infeasible;
        rec.notes.push_back("T undefined: r + mu - sigma <= 0");
        return rec;
    }
    const double T4 = std::sqrt(p.K * rho / p.r);
    double A4 = 0.0;
    if (p.variant == Variant::harmless) {
        if (p.g == p.f) {
            rec.status = RecordStatus::infeasible;
            rec.notes.push_back("A undefined: g = f");
            return rec;
        }
        A4 = (p.m / T4 - p.f) / (p.g - p.f);
        const double d1 = (p.sigma - p.mu) * p.f + p.mu * p.g;
        rec.feasibility.conditions.push_back(
            make_condition("sigma f + mu g - mu f > 0", d1));
        if (d1 > 0.0) {
            const double k_lo = p.m * p.m * p.r * p.sigma * p.sigma / (d1 * d1 * rho);
            rec.feasibility.conditions.push_back(
                make_condition("K - m^2 r sigma^2 / (((sigma-mu)f + mu g)^2 (r+mu-sigma)) > 0",
                               p.K - k_lo));
        }
    } else {
        A4 = (p.m + p.f * T4) / ((p.f + p.g) * T4);
        if (p.mu > 0.0) {
            const double rhs = (p.sigma / p.mu) * (p.m + p.f * T4) - p.f * T4;
            rec.feasibility.conditions.push_back(
                make_condition("(sigma/mu)(m + f T) - f T - g T > 0", rhs - p.g * T4));
        }
    }
    const double U4 = (p.sigma * A4 - p.mu) / p.w;
    rec.feasibility.conditions.push_back(make_condition("A <= 1", 1.0 - A4));
    rec.feasibility.conditions.push_back(make_condition("A >= 0", A4));
    rec.feasibility.conditions.push_back(make_condition("U >= 0", U4));
    if (!rec.feasibility.feasible()) {
        rec.status = RecordStatus::infeasible;
        return rec;
    }
    rec.state = StateReformed{std::clamp(A4, 0.0, 1.0), T4, std::max(U4, 0.0)};
    rec.status = RecordStatus::has_state;
    rec.residual = state_residual(p, *rec.state);
    return rec;
}

CubicCoeffs e5_cubic(const ModelParams& p) {
    validate_params(p, false);
    // D(A) = e3 A + d0 per variant; polynomial K D^2 (c0 + sigma(q-w) A) + m^2 r w
    const double e3 = (p.variant == Variant::harmless) ? p.g - p.f : p.g + p.f;
    const double d0 = (p.variant == Variant::harmless) ? p.f : -p.f;
    const double c0 = p.w * p.sigma - p.r * p.w - p.q * p.mu;
    const double sqw = p.sigma * (p.q - p.w);
    CubicCoeffs c;
    c.a3 = p.K * e3 * e3 * sqw;
    c.a2 = p.K * (e3 * e3 * c0 + 2.0 * e3 * d0 * sqw);
    c.a1 = p.K * (2.0 * e3 * d0 * c0 + d0 * d0 * sqw);
    c.a0 = p.K * d0 * d0 * c0 + p.m * p.m * p.r * p.w;
    return c;
}

std::vector<EquilibriumRecord> equilibrium_E5(const ModelParams& p) {
    validate_params(p, false);
    std::vector<EquilibriumRecord> out;
    if (p.q >= p.w || equal_predation_rates(p)) {
        EquilibriumRecord rec = base_record(EquilibriumId::E5, p);
        rec.status = RecordStatus::not_applicable;
        rec.notes.push_back("requires q < w strictly");
        out.push_back(std::move(rec));
        return out;
    }
    const double rho = p.r + p.mu - p.sigma;
    if (rho <= 0.0) {
        EquilibriumRecord rec = base_record(EquilibriumId::E5, p);
        rec.status = RecordStatus::infeasible;
        rec.feasibility.conditions.push_back(make_condition("r + mu - sigma > 0", rho));
        rec.notes.push_back("requires r + mu - sigma > 0");
        out.push_back(std::move(rec));
        return out;
    }

    const CubicCoeffs cubic = e5_cubic(p);
    const double scale = cubic.max_abs();
    const bool origin_degenerate = scale > 0.0 && std::fabs(cubic.a0) <= 1e-12 * scale;

    const double e3 = (p.variant == Variant::harmless) ? p.g - p.f : p.g + p.f;
    const double d0 = (p.variant == Variant::harmless) ? p.f : -p.f;

    for (double A : real_roots_cubic_or_lower(cubic, 1e-14)) {
        if (!(A > kBoundaryTol) || A > 1.0 + kBoundaryTol) continue;
        A = std::min(A, 1.0);
        const double D = e3 * A + d0;
        if (!(D > 0.0)) continue;  // T = m/D must be positive
        const double T = p.m / D;
        const double U = (rho - (p.r / p.K) * T * T) / (p.q - p.w);
        if (U < -kBoundaryTol) continue;

        EquilibriumRecord rec = base_record(EquilibriumId::E5, p);
        rec.feasibility.conditions.push_back(make_condition("0 < A <= 1", std::min(A, 1.0 - A)));
        rec.feasibility.conditions.push_back(make_condition("U >= 0", U));
        if (p.variant == Variant::toxic) {
            // printed lower bound on A for the toxic case
            const double bound = (p.m * std::sqrt(p.r / (p.K * rho)) + p.f) / (p.f + p.g);
            rec.feasibility.conditions.push_back(
                make_condition("A >= (m sqrt(r/(K(r+mu-sigma))) + f)/(f+g)", A - bound));
        }
        rec.state = StateReformed{A, T, std::max(U, 0.0)};
        rec.status = RecordStatus::has_state;
        rec.residual = state_residual(p, *rec.state);
        if (std::fabs(A - 1.0) <= kCoincidenceTol) {
            rec.degenerate = true;
            rec.notes.push_back("A = 1 root, coincides with " +
                                equilibrium_label(EquilibriumId::E3, p.variant));
        }
        if (origin_degenerate) {
            rec.degenerate = true;
            rec.notes.push_back("constant coefficient vanishes: degenerate root A = 0, healthy prey wiped out");
        }
        out.push_back(std::move(rec));
    }

    if (out.empty()) {
        EquilibriumRecord rec = base_record(EquilibriumId::E5, p);
        rec.status = RecordStatus::infeasible;
        if (origin_degenerate) {
            rec.degenerate = true;
            rec.notes.push_back("constant coefficient vanishes: degenerate root A = 0, healthy prey wiped out");
        } else {
            rec.notes.push_back("no admissible root in (0, 1]");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<EquilibriumRecord> all_equilibria(const ModelParams& p) {
    std::vector<EquilibriumRecord> out = equilibrium_boundary(p);
    out.push_back(equilibrium_E3(p));
    out.push_back(equilibrium_E4(p));
    for (auto& rec : equilibrium_E5(p)) out.push_back(std::move(rec));

    // cross-record coincidence flags
    for (size_t i = 0; i < out.size(); ++i) {
        for (size_t j = i + 1; j < out.size(); ++j) {
            if (!out[i].state || !out[j].state) continue;
            if (out[i].id == out[j].id) continue;
            if (states_coincide(*out[i].state, *out[j].state)) {
                const std::string note_ij = "coincides with " + out[j].label();
                bool seen = false;
                for (const auto& n : out[i].notes) seen = seen || n.find(out[j].label()) != std::string::npos;
                if (!seen) {
                    out[i].degenerate = true;
                    out[i].notes.push_back(note_ij);
                }
                seen = false;
                for (const auto& n : out[j].notes) seen = seen || n.find(out[i].label()) != std::string::npos;
                if (!seen) {
                    out[j].degenerate = true;
                    out[j].notes.push_back("coincides with " + out[i].label());
                }
            }
        }
    }
    return out;
}

}  // namespace ecoepi
