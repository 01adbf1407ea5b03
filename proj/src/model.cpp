#include "ecoepi/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ecoepi {

namespace {

void check_nonnegative(const ModelParams& p) {
    const double vals[] = {p.r, p.K, p.sigma, p.mu, p.q, p.w, p.m, p.g, p.f};
    for (double v : vals) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("model parameter is negative or non-finite");
    }
    if (!(p.K > 0.0)) throw std::invalid_argument("carrying capacity K must be positive");
    if (!(p.r > 0.0)) throw std::invalid_argument("prey birth rate r must be positive");
}

// Width of the state band accepted around the exact domain; finite-difference
// probes and integrator stages may sit slightly outside [0,1] x (0,inf) x [0,inf).
constexpr double kStateBand = 1e-6;

}  // namespace

void validate_params(const ModelParams& p, bool enforce_orderings) {
    check_nonnegative(p);
    if (!enforce_orderings) return;
    if (p.variant == Variant::harmless) {
        if (p.q > p.w) throw std::invalid_argument("harmless variant requires q <= w");
        if (p.g > p.f) throw std::invalid_argument("harmless variant requires g <= f");
        if (!(p.g < p.q)) throw std::invalid_argument("harmless variant requires g < q");
        if (!(p.f < p.w)) throw std::invalid_argument("harmless variant requires f < w");
    } else {
        if (p.g > p.q) throw std::invalid_argument("toxic variant requires g <= q");
        if (p.f > p.w) throw std::invalid_argument("toxic variant requires f <= w");
        if (p.q > p.w) throw std::invalid_argument("toxic variant requires q <= w");
    }
}

bool params_valid(const ModelParams& p, bool enforce_orderings) noexcept {
    try {
        validate_params(p, enforce_orderings);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

namespace detail {

Deriv3 rhs_original_raw(const ModelParams& p, double S, double I, double P) noexcept {
    const double n = S + I;        // shared denominator, computed once
    const double inv_n = 1.0 / n;
    const double inv_rt = 1.0 / std::sqrt(n);
    const double contact = p.sigma * S * I * inv_n;
    const double dS = p.r * S * (1.0 - n / p.K) - contact - p.q * P * S * inv_rt;
    const double dI = contact - p.w * P * I * inv_rt - p.mu * I;
    const double uptake = (p.variant == Variant::harmless)
                              ? p.g * S + p.f * I
                              : p.g * S - p.f * I;
    const double dP = P * (uptake * inv_rt - p.m);
    return {dS, dI, dP};
}

Deriv3 rhs_reformed_raw(const ModelParams& p, double A, double T, double U) noexcept {
    const double T2 = T * T;
    const double rK = p.r / p.K;
    // dA/dt = A (A - 1) X with X the shared interior factor
    const double X = (p.sigma - p.r - p.mu) + rK * T2 + (p.q - p.w) * U;
    const double dA = A * (A - 1.0) * X;
    const double dT =
        T * (-0.5 * rK * A * T2 - 0.5 * p.mu + 0.5 * (p.r + p.mu) * A -
             0.5 * p.w * U + 0.5 * (p.w - p.q) * A * U);
    const double cg = (p.variant == Variant::harmless) ? p.g - p.f : p.g + p.f;
    const double cf = (p.variant == Variant::harmless) ? p.f : -p.f;
    const double dU =
        U * (0.5 * p.w * U + 0.5 * (p.q - p.w) * A * U + (0.5 * p.mu - p.m) +
             cg * A * T - 0.5 * (p.r + p.mu) * A + cf * T + 0.5 * rK * A * T2);
    return {dA, dT, dU};
}

}  // namespace detail

Deriv3 rhs_original(const ModelParams& p, const StateOriginal& x) {
    check_nonnegative(p);
    if (!state_valid(x))
        throw std::domain_error("rhs_original: state components must be nonnegative and finite");
    if (x.S == 0.0 && x.I == 0.0)
        return {0.0, 0.0, -p.m * x.P};  // continuous extension at total extinction
    return detail::rhs_original_raw(p, x.S, x.I, x.P);
}

Deriv3 rhs_reformed(const ModelParams& p, const StateReformed& y) {
    check_nonnegative(p);
    if (!state_valid(y, kStateBand))
        throw std::domain_error("rhs_reformed: state outside the (A, T, U) domain");
    return detail::rhs_reformed_raw(p, y.A, y.T, y.U);
}

StateReformed to_reformed(const StateOriginal& x) {
    if (!state_valid(x))
        throw std::domain_error("to_reformed: state components must be nonnegative and finite");
    const double n = x.S + x.I;
    if (!(n > 0.0))
        throw std::domain_error("to_reformed: transform is singular at S + I = 0");
    const double rt = std::sqrt(n);
    return {x.S / n, rt, x.P / rt};
}

StateOriginal to_original(const StateReformed& y) {
    const double T2 = y.T * y.T;
    const double S = y.A * T2;
    double I = (1.0 - y.A) * T2;
    if (I < 0.0) I = 0.0;
    return {S, I, y.U * y.T};
}

Matrix3 transform_jacobian(const StateOriginal& x) {
    const double n = x.S + x.I;
    if (!(n > 0.0))
        throw std::domain_error("transform_jacobian: singular at S + I = 0");
    const double inv_n = 1.0 / n;
    const double rt = std::sqrt(n);
    Matrix3 J;
    // row A = S/n
    J(0, 0) = x.I * inv_n * inv_n;
    J(0, 1) = -x.S * inv_n * inv_n;
    J(0, 2) = 0.0;
    // row T = sqrt(n)
    J(1, 0) = 0.5 / rt;
    J(1, 1) = 0.5 / rt;
    J(1, 2) = 0.0;
    // row U = P / sqrt(n)
    J(2, 0) = -0.5 * x.P / (n * rt);
    J(2, 1) = -0.5 * x.P / (n * rt);
    J(2, 2) = 1.0 / rt;
    return J;
}

Matrix3 jacobian_reformed(const ModelParams& p, const StateReformed& y) {
    check_nonnegative(p);
    if (!state_valid(y, kStateBand))
        throw std::domain_error("jacobian_reformed: state outside the (A, T, U) domain");
    const double A = y.A, T = y.T, U = y.U;
    const double T2 = T * T;
    const double rK = p.r / p.K;
    const double cg = (p.variant == Variant::harmless) ? p.g - p.f : p.g + p.f;
    const double cf = (p.variant == Variant::harmless) ? p.f : -p.f;

    Matrix3 J;
    J(0, 0) = (2.0 * A - 1.0) * ((p.sigma - p.r - p.mu) + (p.q - p.w) * U + rK * T2);
    J(0, 1) = 2.0 * rK * A * T * (A - 1.0);
    J(0, 2) = (p.q - p.w) * A * (A - 1.0);

    J(1, 0) = -0.5 * rK * T2 * T + 0.5 * (p.r + p.mu) * T + 0.5 * (p.w - p.q) * U * T;
    J(1, 1) = -1.5 * rK * A * T2 - 0.5 * p.mu + 0.5 * (p.r + p.mu) * A -
              0.5 * p.w * U + 0.5 * (p.w - p.q) * A * U;
    J(1, 2) = -0.5 * p.w * T + 0.5 * (p.w - p.q) * A * T;

    J(2, 0) = 0.5 * (p.q - p.w) * U * U + cg * U * T - 0.5 * (p.r + p.mu) * U +
              0.5 * rK * U * T2;
    J(2, 1) = cg * A * U + cf * U + rK * A * U * T;
    J(2, 2) = p.w * U + (p.q - p.w) * A * U + 0.5 * p.mu - p.m + cg * A * T -
              0.5 * (p.r + p.mu) * A + cf * T + 0.5 * rK * A * T2;
    return J;
}

}  // namespace ecoepi
