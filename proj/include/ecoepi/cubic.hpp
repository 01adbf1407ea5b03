#ifndef ECOEPI_CUBIC_HPP
#define ECOEPI_CUBIC_HPP

#include <array>
#include <complex>
#include <vector>

#include "ecoepi/types.hpp"

namespace ecoepi {

/// Coefficients of a3 x^3 + a2 x^2 + a1 x + a0.
struct CubicCoeffs {
    double a3 = 0.0;
    double a2 = 0.0;
    double a1 = 0.0;
    double a0 = 0.0;

    double eval(double x) const { return ((a3 * x + a2) * x + a1) * x + a0; }
    std::complex<double> eval(std::complex<double> x) const {
        return ((a3 * x + a2) * x + a1) * x + a0;
    }
    double max_abs() const;
};

/// All three roots of a genuine cubic (a3 != 0), sorted ascending by
/// (real part, imaginary part).  Complex roots come back as an exact
/// conjugate pair.  Closed form (trigonometric / Cardano) followed by a
/// Newton polish.  Throws std::invalid_argument when a3 == 0.
std::array<std::complex<double>, 3> solve_cubic(const CubicCoeffs& c);

/// Real roots of a polynomial of degree <= 3 given as {a3, a2, a1, a0};
/// degenerate leading coefficients drop the degree.  Used where the model's
/// coexistence polynomial may lose degree for special parameter values.
std::vector<double> real_roots_cubic_or_lower(const CubicCoeffs& c,
                                              double degeneracy_tol = 0.0);

/// Routh-Hurwitz (Lienard-Chipart) verdict for a cubic with a3 > 0 after
/// sign normalization: stable iff a2 > 0, a1 > 0, a0 > 0 and
/// a1 a2 - a0 a3 > 0.  Margins are the four signed left-hand sides.
struct RouthHurwitz {
    bool satisfied = false;
    std::array<double, 4> margins{};  // {a2, a1, a0, a1*a2 - a0*a3}
};

RouthHurwitz routh_hurwitz_cubic(const CubicCoeffs& c);

/// Characteristic polynomial det(lambda I - J) of a 3x3 matrix, monic:
/// lambda^3 - tr(J) lambda^2 + M2(J) lambda - det(J) with M2 the sum of
/// principal 2x2 minors.
CubicCoeffs characteristic_cubic(const Matrix3& J);

}  // namespace ecoepi

#endif
