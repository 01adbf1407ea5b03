#include "ecoepi/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ecoepi {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// One guarded Newton step loop on the monic cubic x^3 + a x^2 + b x + c;
// stops as soon as the residual no longer improves.
double polish_real_root(double x, double a, double b, double c) {
    double fx = ((x + a) * x + b) * x + c;
    for (int it = 0; it < 8; ++it) {
        const double dfx = (3.0 * x + 2.0 * a) * x + b;
        if (dfx == 0.0) break;
        const double xn = x - fx / dfx;
        const double fn = ((xn + a) * xn + b) * xn + c;
        if (!(std::fabs(fn) < std::fabs(fx))) break;
        x = xn;
        fx = fn;
    }
    return x;
}

// Stable quadratic solver for x^2 + b x + c (monic).
std::array<std::complex<double>, 2> solve_monic_quadratic(double b, double c) {
    const double disc = b * b - 4.0 * c;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
        double r1, r2;
        if (q != 0.0) {
            r1 = q;
            r2 = c / q;
        } else {
            r1 = -0.5 * b + 0.5 * sq;
            r2 = -0.5 * b - 0.5 * sq;
        }
        if (r1 > r2) std::swap(r1, r2);
        return {std::complex<double>(r1, 0.0), std::complex<double>(r2, 0.0)};
    }
    const double re = -0.5 * b + 0.0;  // normalize -0.0
    const double im = 0.5 * std::sqrt(-disc);
    return {std::complex<double>(re, -im), std::complex<double>(re, im)};
}

bool root_less(const std::complex<double>& x, const std::complex<double>& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

}  // namespace

double CubicCoeffs::max_abs() const {
    return std::max({std::fabs(a3), std::fabs(a2), std::fabs(a1), std::fabs(a0)});
}

std::array<std::complex<double>, 3> solve_cubic(const CubicCoeffs& coeffs) {
    if (coeffs.a3 == 0.0)
        throw std::invalid_argument("solve_cubic: leading coefficient is zero");

    const double a = coeffs.a2 / coeffs.a3;
    const double b = coeffs.a1 / coeffs.a3;
    const double c = coeffs.a0 / coeffs.a3;

    // Depressed form t^3 + p t + q with x = t - a/3.
    const double a3rd = a / 3.0;
    const double p = b - a * a3rd;
    const double q = c + a3rd * (2.0 * a3rd * a3rd - b);
    const double half_q = 0.5 * q;
    const double p3rd = p / 3.0;
    const double disc = half_q * half_q + p3rd * p3rd * p3rd;

    std::array<std::complex<double>, 3> roots;
    if (disc <= 0.0) {
        // three real roots, trigonometric form
        const double rho = std::sqrt(-p3rd);
        double cosarg = (rho > 0.0) ? -half_q / (rho * rho * rho) : 0.0;
        cosarg = std::clamp(cosarg, -1.0, 1.0);
        const double theta = std::acos(cosarg) / 3.0;
        std::array<double, 3> xs;
        for (int k = 0; k < 3; ++k) {
            const double t = 2.0 * rho * std::cos(theta - 2.0 * kPi * k / 3.0);
            xs[static_cast<size_t>(k)] = polish_real_root(t - a3rd, a, b, c);
        }
        std::sort(xs.begin(), xs.end());
        for (int k = 0; k < 3; ++k) roots[static_cast<size_t>(k)] = {xs[static_cast<size_t>(k)], 0.0};
    } else {
        // one real root (Cardano), complex pair by deflation
        const double sq = std::sqrt(disc);
        const double u3 = -half_q + (half_q >= 0.0 ? -sq : sq);
        const double u = std::cbrt(u3);
        const double v = (u != 0.0) ? -p3rd / u : 0.0;
        const double x0 = polish_real_root(u + v - a3rd, a, b, c);
        // deflate: x^3 + a x^2 + b x + c = (x - x0)(x^2 + (a + x0) x - c/x0)
        const double qb = a + x0;
        const double qc = (x0 != 0.0) ? -c / x0 : b + x0 * qb;
        const auto pair = solve_monic_quadratic(qb, qc);
        roots = {pair[0], pair[1], std::complex<double>(x0, 0.0)};
        std::sort(roots.begin(), roots.end(), root_less);
    }
    return roots;
}

std::vector<double> real_roots_cubic_or_lower(const CubicCoeffs& c, double degeneracy_tol) {
    const double scale = c.max_abs();
    const double tol = degeneracy_tol * scale;
    std::vector<double> out;
    if (std::fabs(c.a3) > tol && c.a3 != 0.0) {
        for (const auto& z : solve_cubic(c))
            if (z.imag() == 0.0) out.push_back(z.real());
    } else if (std::fabs(c.a2) > tol && c.a2 != 0.0) {
        for (const auto& z : solve_monic_quadratic(c.a1 / c.a2, c.a0 / c.a2))
            if (z.imag() == 0.0) out.push_back(z.real());
    } else if (std::fabs(c.a1) > tol && c.a1 != 0.0) {
        out.push_back(-c.a0 / c.a1);
    }
    std::sort(out.begin(), out.end());
    return out;
}

RouthHurwitz routh_hurwitz_cubic(const CubicCoeffs& c) {
    if (c.a3 == 0.0)
        throw std::invalid_argument("routh_hurwitz_cubic: leading coefficient is zero");
    const double s = (c.a3 > 0.0) ? 1.0 : -1.0;
    const double a3 = s * c.a3, a2 = s * c.a2, a1 = s * c.a1, a0 = s * c.a0;
    RouthHurwitz rh;
    rh.margins = {a2, a1, a0, a1 * a2 - a0 * a3};
    rh.satisfied = a2 > 0.0 && a1 > 0.0 && a0 > 0.0 && rh.margins[3] > 0.0;
    return rh;
}

CubicCoeffs characteristic_cubic(const Matrix3& J) {
    return {1.0, -J.trace(), J.minor_sum(), -J.det()};
}

}  // namespace ecoepi
