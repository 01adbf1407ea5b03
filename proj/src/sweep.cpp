#include "ecoepi/sweep.hpp"

#include <cmath>
#include <stdexcept>

#include "ecoepi/equilibria.hpp"
#include "ecoepi/model.hpp"

namespace ecoepi {

namespace {

StateReformed default_start(const ModelParams& p) {
    return {0.5, 0.5 * std::sqrt(p.K), 0.1};
}

// Aggregates the (possibly several) records of one equilibrium id into one
// cell: feasible when any member is, stable when every feasible member is,
// max_real_part the worst feasible member.
EquilibriumCell summarize(const std::vector<const EquilibriumRecord*>& recs,
                          const ModelParams& p) {
    EquilibriumCell cell;
    bool all_stable = true;
    for (const EquilibriumRecord* rec : recs) {
        if (rec->status == RecordStatus::not_applicable) continue;
        cell.applicable = true;
        const double margin = rec->feasibility.min_margin();
        if (std::isfinite(margin) &&
            (!std::isfinite(cell.feasibility_margin) || margin < cell.feasibility_margin))
            cell.feasibility_margin = margin;
        if (rec->feasible()) {
            cell.feasible = true;
            const StabilityVerdict v = classify(p, *rec);
            if (!std::isfinite(cell.max_real_part) || v.max_real_part > cell.max_real_part)
                cell.max_real_part = v.max_real_part;
            all_stable = all_stable && v.classification == StabilityClass::stable;
        }
    }
    cell.stable = cell.feasible && all_stable;
    return cell;
}

BifurcationRow evaluate_point(const SweepSpec& spec, double v) {
    BifurcationRow row;
    row.value = v;
    try {
        const ModelParams p = with_parameter(spec.base, spec.parameter, v);
        validate_params(p, false);
        const auto recs = all_equilibria(p);
        for (int id = 0; id < 5; ++id) {
            std::vector<const EquilibriumRecord*> group;
            for (const auto& rec : recs)
                if (static_cast<int>(rec.id) == id) group.push_back(&rec);
            if (!group.empty())
                row.eq[static_cast<size_t>(id)] = summarize(group, p);
        }
        if (spec.with_simulation) {
            SolverOptions so = spec.sim_opts;
            if (!(so.t_end > 0.0)) so.t_end = 2000.0;
            const StateReformed y0 = spec.init ? *spec.init : default_start(p);
            const Trajectory traj = simulate(p, y0, so);
            row.attractor = detect_attractor(traj).kind;
        }
    } catch (const std::exception& ex) {
        row.errored = true;
        row.error = ex.what();
    }
    return row;
}

const char* eq_name(int id) {
    static const char* names[] = {"E1", "E2", "E3", "E4", "E5"};
    return names[id];
}

}  // namespace

ModelParams with_parameter(const ModelParams& base, const std::string& name, double v) {
    ModelParams p = base;
    if (name == "r") p.r = v;
    else if (name == "K") p.K = v;
    else if (name == "sigma") p.sigma = v;
    else if (name == "mu") p.mu = v;
    else if (name == "q") p.q = v;
    else if (name == "w") p.w = v;
    else if (name == "m") p.m = v;
    else if (name == "g") p.g = v;
    else if (name == "f") p.f = v;
    else throw std::invalid_argument("unknown sweep parameter: " + name);
    return p;
}

std::vector<BifurcationRow> run_sweep(const SweepSpec& spec) {
    if (spec.values.empty())
        throw std::invalid_argument("sweep grid is empty");
    for (size_t i = 0; i + 1 < spec.values.size(); ++i)
        if (!(spec.values[i] < spec.values[i + 1]))
            throw std::invalid_argument("sweep grid must be strictly ascending");
    with_parameter(spec.base, spec.parameter, spec.values.front());  // name check

    std::vector<BifurcationRow> rows;
    rows.reserve(spec.values.size());
    for (double v : spec.values) rows.push_back(evaluate_point(spec, v));

    for (size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].errored || rows[i - 1].errored) continue;
        for (int id = 0; id < 5; ++id) {
            const auto& prev = rows[i - 1].eq[static_cast<size_t>(id)];
            const auto& cur = rows[i].eq[static_cast<size_t>(id)];
            if (!prev.applicable || !cur.applicable) continue;
            if (prev.feasible != cur.feasible)
                rows[i].flags.push_back(std::string(eq_name(id)) + ":feasibility");
            if (prev.feasible && cur.feasible && prev.stable != cur.stable)
                rows[i].flags.push_back(std::string(eq_name(id)) + ":stability");
        }
        if (rows[i].attractor && rows[i - 1].attractor &&
            *rows[i].attractor != *rows[i - 1].attractor)
            rows[i].flags.push_back("attractor");
    }
    return rows;
}

std::vector<TransitionCell> transitions(const SweepSpec& spec,
                                        const std::vector<BifurcationRow>& rows) {
    (void)spec;
    std::vector<TransitionCell> cells;
    for (size_t i = 1; i < rows.size(); ++i) {
        for (const auto& flag : rows[i].flags) {
            const auto colon = flag.find(':');
            if (colon == std::string::npos) continue;
            const std::string eq = flag.substr(0, colon);
            const std::string kind = flag.substr(colon + 1);
            if (eq.size() != 2 || (eq[0] != 'E')) continue;
            TransitionCell cell;
            cell.id = static_cast<EquilibriumId>(eq[1] - '1');
            cell.kind = (kind == "stability") ? TransitionKind::stability
                                              : TransitionKind::feasibility;
            cell.lower = rows[i - 1].value;
            cell.upper = rows[i].value;
            cells.push_back(cell);
        }
    }
    return cells;
}

namespace {

// Continuous margin whose sign flips across the transition.
double transition_margin(const SweepSpec& spec, const TransitionCell& cell, double v) {
    const ModelParams p = with_parameter(spec.base, spec.parameter, v);
    std::vector<EquilibriumRecord> recs;
    switch (cell.id) {
        case EquilibriumId::E1:
        case EquilibriumId::E2:
            recs = equilibrium_boundary(p);
            break;
        case EquilibriumId::E3:
            recs.push_back(equilibrium_E3(p));
            break;
        case EquilibriumId::E4:
            recs.push_back(equilibrium_E4(p));
            break;
        case EquilibriumId::E5:
            recs = equilibrium_E5(p);
            break;
    }
    const EquilibriumRecord* rec = nullptr;
    for (const auto& r : recs)
        if (r.id == cell.id) rec = &r;
    if (rec == nullptr) throw std::domain_error("refine_transition: record unavailable");

    if (cell.kind == TransitionKind::feasibility) return rec->feasibility.min_margin();
    if (!rec->feasible())
        throw std::domain_error("refine_transition: equilibrium infeasible inside stability cell");
    return -classify(p, *rec).max_real_part;  // positive while stable
}

}  // namespace

double refine_transition(const SweepSpec& spec, const TransitionCell& cell) {
    double lo = cell.lower, hi = cell.upper;
    double flo = transition_margin(spec, cell, lo);
    double fhi = transition_margin(spec, cell, hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::domain_error("refine_transition: cell does not bracket a sign change");

    const double tol = 1e-6 * std::max(1.0, std::max(std::fabs(lo), std::fabs(hi)));
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = transition_margin(spec, cell, mid);
        if (fmid == 0.0) return mid;
        if ((fmid > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace ecoepi
