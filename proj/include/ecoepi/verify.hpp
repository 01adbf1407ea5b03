#ifndef ECOEPI_VERIFY_HPP
#define ECOEPI_VERIFY_HPP

#include <functional>
#include <string>
#include <vector>

#include "ecoepi/types.hpp"

namespace ecoepi {

struct VerifyOptions {
    unsigned seed = 20240901;
    /// Test hook: replaces the analytic Jacobian in the finite-difference
    /// cross-check.  The default (empty) uses jacobian_reformed.
    std::function<Matrix3(const ModelParams&, const StateReformed&)> jacobian_override;
};

struct VerifyCheck {
    std::string name;
    bool passed = false;
    long cases = 0;
    double max_error = 0.0;
    double millis = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Runs the full oracle and property suite: coordinate round-trips, the
/// pushforward identity between the two system formulations, Jacobian vs
/// finite differences, Routh-Hurwitz vs eigenvalue signs, equilibrium
/// residuals, polynomial-root residuals, closed-form stability agreement,
/// and the bifurcation-threshold identities.  Deterministic for a fixed
/// seed.
VerifyReport run_verify(const VerifyOptions& opts = {});

/// One line per check, plus a summary line.
std::string format_report(const VerifyReport& report);

}  // namespace ecoepi

#endif
