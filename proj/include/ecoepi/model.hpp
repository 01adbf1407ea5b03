#ifndef ECOEPI_MODEL_HPP
#define ECOEPI_MODEL_HPP

#include "ecoepi/types.hpp"

namespace ecoepi {

/// Right-hand side of the original (S, I, P) system.  Predation scales with
/// the square root of the total prey population (herd defense); the toxic
/// variant flips the sign of the uptake from infected prey in dP/dt.
/// At total extinction S = I = 0 the continuous-limit value (0, 0, -mP) is
/// returned.  Throws on negative parameters or a negative state.
Deriv3 rhs_original(const ModelParams& p, const StateOriginal& x);

/// Right-hand side of the reformulated (A, T, U) system, which is
/// singularity-free.  Each component is evaluated in factored form
/// (dA/dt = A(A-1)X, dT/dt = T(...), dU/dt = U(...)) so the invariant faces
/// A=0, A=1, T=0, U=0 are preserved exactly in floating arithmetic.
Deriv3 rhs_reformed(const ModelParams& p, const StateReformed& y);

/// Coordinate change (S, I, P) -> (A, T, U).  Requires S + I > 0; throws
/// std::domain_error otherwise (the transform is singular there).
StateReformed to_reformed(const StateOriginal& x);

/// Inverse coordinate change: S = A T^2, I = (1-A) T^2, P = U T.
/// I is clamped to zero when A is at or just past 1.
StateOriginal to_original(const StateReformed& y);

/// Analytic derivative of to_reformed, rows ordered (A, T, U), columns
/// (S, I, P).  Used by the pushforward consistency checks.
Matrix3 transform_jacobian(const StateOriginal& x);

/// Analytic Jacobian of rhs_reformed at y.  The toxic variant differs from
/// the harmless one only in the last row.
Matrix3 jacobian_reformed(const ModelParams& p, const StateReformed& y);

namespace detail {

/// Unchecked evaluation used by the integrator; the polynomial right-hand
/// side is defined for any finite (A, T, U).
Deriv3 rhs_reformed_raw(const ModelParams& p, double A, double T, double U) noexcept;

/// Unchecked evaluation of the original system away from S + I = 0.
Deriv3 rhs_original_raw(const ModelParams& p, double S, double I, double P) noexcept;

}  // namespace detail

}  // namespace ecoepi

#endif
