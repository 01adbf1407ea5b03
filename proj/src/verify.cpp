#include "ecoepi/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "ecoepi/cubic.hpp"
#include "ecoepi/equilibria.hpp"
#include "ecoepi/model.hpp"
#include "ecoepi/sampling.hpp"
#include "ecoepi/stability.hpp"

namespace ecoepi {

namespace {

using sampling::Rng;

using CheckBody = std::function<void(VerifyCheck&)>;

void run_check(VerifyReport& report, const std::string& name, const CheckBody& body) {
    VerifyCheck check;
    check.name = name;
    check.passed = true;
    const auto start = std::chrono::steady_clock::now();
    try {
        body(check);
    } catch (const std::exception& ex) {
        check.passed = false;
        check.detail = ex.what();
    }
    check.millis = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    report.checks.push_back(std::move(check));
}

void expect(VerifyCheck& check, bool ok, const std::string& detail) {
    if (!ok && check.passed) {
        check.passed = false;
        check.detail = detail;
    }
}

void track(VerifyCheck& check, double err) {
    check.max_error = std::max(check.max_error, err);
}

Matrix3 fd_jacobian(const ModelParams& p, const StateReformed& y) {
    Matrix3 J;
    for (int k = 0; k < 3; ++k) {
        StateReformed yp = y, ym = y;
        double* cp = (k == 0) ? &yp.A : (k == 1) ? &yp.T : &yp.U;
        double* cm = (k == 0) ? &ym.A : (k == 1) ? &ym.T : &ym.U;
        const double base = (k == 0) ? y.A : (k == 1) ? y.T : y.U;
        const double h = 1e-6 * std::max(1.0, std::fabs(base));
        *cp += h;
        *cm -= h;
        const Deriv3 fp = rhs_reformed(p, yp);
        const Deriv3 fm = rhs_reformed(p, ym);
        for (int i = 0; i < 3; ++i) J(i, k) = (fp[i] - fm[i]) / (2.0 * h);
    }
    return J;
}

}  // namespace

VerifyReport run_verify(const VerifyOptions& opts) {
    VerifyReport report;

    run_check(report, "transform round-trip", [&](VerifyCheck& c) {
        Rng rng(opts.seed);
        for (int i = 0; i < 1000; ++i) {
            const StateOriginal x = sampling::draw_state_original(rng, 10.0);
            const StateOriginal back = to_original(to_reformed(x));
            const double scale = 1.0 + std::max({x.S, x.I, x.P});
            const double err = std::max({std::fabs(back.S - x.S), std::fabs(back.I - x.I),
                                         std::fabs(back.P - x.P)}) /
                               scale;
            track(c, err);
            expect(c, err <= 1e-12, "round-trip error above 1e-12");
            ++c.cases;
        }
    });

    run_check(report, "pushforward identity", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 1);
        for (Variant v : {Variant::harmless, Variant::toxic}) {
            for (int i = 0; i < 1000; ++i) {
                const ModelParams p = sampling::draw_params(rng, v);
                const StateOriginal x = sampling::draw_state_original(rng, p.K);
                const Deriv3 fx = rhs_original(p, x);
                const Matrix3 D = transform_jacobian(x);
                Deriv3 pushed{};
                for (int r = 0; r < 3; ++r)
                    pushed[r] = D(r, 0) * fx[0] + D(r, 1) * fx[1] + D(r, 2) * fx[2];
                const Deriv3 fy = rhs_reformed(p, to_reformed(x));
                const double scale = 1.0 + inf_norm(fy);
                const double err = std::max({std::fabs(pushed[0] - fy[0]),
                                             std::fabs(pushed[1] - fy[1]),
                                             std::fabs(pushed[2] - fy[2])}) /
                                   scale;
                track(c, err);
                expect(c, err <= 1e-9, "pushforward mismatch above 1e-9");
                ++c.cases;
            }
        }
    });

    run_check(report, "jacobian vs finite differences", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 2);
        for (int i = 0; i < 200; ++i) {
            const Variant v = (i % 2 == 0) ? Variant::harmless : Variant::toxic;
            const ModelParams p = sampling::draw_params(rng, v);
            const StateReformed y = sampling::draw_state(rng, p.K);
            const Matrix3 J = opts.jacobian_override ? opts.jacobian_override(p, y)
                                                     : jacobian_reformed(p, y);
            const Matrix3 F = fd_jacobian(p, y);
            double scale = 1.0;
            for (double e : J.e) scale = std::max(scale, std::fabs(e));
            for (int k = 0; k < 9; ++k) {
                const double err = std::fabs(J.e[static_cast<size_t>(k)] -
                                             F.e[static_cast<size_t>(k)]) /
                                   scale;
                track(c, err);
                expect(c, err <= 1e-5, "jacobian entry differs from finite differences");
            }
            ++c.cases;
        }
    });

    run_check(report, "routh-hurwitz vs eigenvalue signs", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 3);
        for (int i = 0; i < 1000; ++i) {
            CubicCoeffs cub{1.0, sampling::uniform(rng, -3.0, 3.0),
                            sampling::uniform(rng, -3.0, 3.0),
                            sampling::uniform(rng, -3.0, 3.0)};
            const auto roots = solve_cubic(cub);
            double max_re = roots[0].real(), max_abs = 0.0;
            for (const auto& z : roots) {
                max_re = std::max(max_re, z.real());
                max_abs = std::max(max_abs, std::abs(z));
            }
            if (std::fabs(max_re) <= 1e-8 * (1.0 + max_abs)) continue;  // marginal band
            const bool stable = max_re < 0.0;
            expect(c, routh_hurwitz_cubic(cub).satisfied == stable,
                   "Routh-Hurwitz disagrees with eigenvalue signs");
            ++c.cases;
        }
    });

    run_check(report, "equilibrium residuals", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 4);
        for (int i = 0; i < 200; ++i) {
            const Variant v = (i % 2 == 0) ? Variant::harmless : Variant::toxic;
            const ModelParams p = sampling::draw_params(rng, v);
            for (const auto& rec : all_equilibria(p)) {
                if (!rec.state) continue;
                const double bound = 1e-10 * (1.0 + inf_norm(*rec.state));
                track(c, rec.residual / (1.0 + inf_norm(*rec.state)));
                expect(c, rec.residual <= bound,
                       "reported equilibrium residual above 1e-10 scale for " + rec.label());
                ++c.cases;
            }
        }
    });

    run_check(report, "coexistence polynomial root residuals", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 5);
        for (int i = 0; i < 300; ++i) {
            const Variant v = (i % 2 == 0) ? Variant::harmless : Variant::toxic;
            const ModelParams p = sampling::draw_params(rng, v);
            if (p.q >= p.w) continue;
            const CubicCoeffs cub = e5_cubic(p);
            const double scale = cub.max_abs();
            if (scale == 0.0) continue;
            for (const auto& rec : equilibrium_E5(p)) {
                if (!rec.state) continue;
                const double res = std::fabs(cub.eval(rec.state->A)) / scale;
                track(c, res);
                expect(c, res <= 1e-12, "polynomial residual above 1e-12 at returned root");
                ++c.cases;
            }
        }
    });

    run_check(report, "closed-form stability agreement", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 6);
        long accepted = 0;
        int attempts = 0;
        while (accepted < 600 && attempts < 60000) {
            ++attempts;
            const Variant v = (attempts % 2 == 0) ? Variant::harmless : Variant::toxic;
            const ModelParams p = sampling::draw_params(rng, v);
            for (const auto& rec : all_equilibria(p)) {
                if (!rec.feasible() || rec.degenerate) continue;
                if (rec.id != EquilibriumId::E1 && rec.id != EquilibriumId::E2 &&
                    rec.id != EquilibriumId::E3)
                    continue;
                const StabilityVerdict verdict = classify(p, rec);
                if (!verdict.closed_form) continue;
                bool near_threshold = false;
                for (const auto& cond : *verdict.closed_form)
                    near_threshold = near_threshold || std::fabs(cond.margin) <= 1e-6;
                if (near_threshold || verdict.classification == StabilityClass::marginal)
                    continue;
                const bool eig_stable = verdict.classification == StabilityClass::stable;
                expect(c, verdict.closed_form_satisfied == eig_stable,
                       "closed-form set disagrees with eigenvalues at " + rec.label());
                expect(c, verdict.rh_satisfied == eig_stable,
                       "Routh-Hurwitz disagrees with eigenvalues at " + rec.label());
                ++accepted;
                ++c.cases;
            }
        }
    });

    run_check(report, "endemic prey-only state has no imaginary crossing", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 7);
        for (int i = 0; i < 500; ++i) {
            const ModelParams p = sampling::draw_params(rng, Variant::harmless);
            const double rho = p.r + p.mu - p.sigma;
            if (!(rho > 0.0) || !(p.sigma > p.mu) || p.mu <= 0.0) continue;
            // linear coefficient of the quadratic factor at the prey-only state
            const double b = (p.mu / p.sigma) * rho;
            track(c, -b);
            expect(c, b > 0.0, "quadratic linear coefficient not positive under feasibility");
            ++c.cases;
        }
    });

    run_check(report, "imaginary-pair threshold identities", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 8);
        for (int i = 0; i < 200; ++i) {
            const Variant v = (i % 2 == 0) ? Variant::harmless : Variant::toxic;
            ModelParams p = sampling::draw_params(rng, v);
            const HopfThreshold h = hopf_K(p);
            track(c, std::fabs(h.quadratic_linear_coeff));
            expect(c, std::fabs(h.quadratic_linear_coeff) <= 1e-10,
                   "quadratic linear coefficient does not vanish at the critical K");
            track(c, std::fabs(h.condition_residual));
            expect(c, std::fabs(h.condition_residual) <= 1e-10,
                   "a1 a2 - a0 does not vanish at the critical K");
            ++c.cases;
        }
    });

    run_check(report, "coexistence feasibility simplification", [&](VerifyCheck& c) {
        Rng rng(opts.seed + 9);
        for (int i = 0; i < 2000; ++i) {
            const ModelParams p = sampling::draw_params(rng, Variant::harmless);
            const double rho = p.r + p.mu - p.sigma;
            const double d1 = (p.sigma - p.mu) * p.f + p.mu * p.g;
            if (!(rho > 0.0) || !(d1 > 0.0)) continue;
            const double strong = p.m * p.m * p.r * p.sigma * p.sigma / (d1 * d1 * rho);
            const double weak = p.m * p.m * p.r / (p.f * p.f * rho);
            // K > strong must imply K > weak; equivalent to strong >= weak under g <= f
            track(c, weak - strong);
            expect(c, strong >= weak * (1.0 - 1e-12),
                   "simplified feasibility bound is not the binding one");
            ++c.cases;
        }
    });

    return report;
}

std::string format_report(const VerifyReport& report) {
    std::string out;
    char line[256];
    for (const auto& c : report.checks) {
        std::snprintf(line, sizeof line, "[%s] %-44s cases=%-6ld max_err=%.3e  %.1f ms%s%s\n",
                      c.passed ? "PASS" : "FAIL", c.name.c_str(), c.cases, c.max_error,
                      c.millis, c.detail.empty() ? "" : "  ", c.detail.c_str());
        out += line;
    }
    out += report.all_passed() ? "verify: all checks passed\n" : "verify: FAILURES present\n";
    return out;
}

}  // namespace ecoepi
