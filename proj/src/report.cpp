#include "ecoepi/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "ecoepi/model.hpp"

namespace ecoepi {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json params_json(const ModelParams& p) {
    return json{{"r", p.r}, {"K", p.K}, {"sigma", p.sigma}, {"mu", p.mu}, {"q", p.q},
                {"w", p.w}, {"m", p.m}, {"g", p.g}, {"f", p.f}};
}

json state_json(const StateReformed& y) {
    const StateOriginal x = to_original(y);
    return json{{"A", y.A}, {"T", y.T}, {"U", y.U}, {"S", x.S}, {"I", x.I}, {"P", x.P}};
}

json conditions_json(const std::vector<FeasibilityCondition>& cs) {
    json arr = json::array();
    for (const auto& c : cs)
        arr.push_back(json{{"label", c.label},
                           {"satisfied", c.satisfied},
                           {"margin", c.margin},
                           {"boundary", c.boundary}});
    return arr;
}

const char* status_name(RecordStatus s) {
    switch (s) {
        case RecordStatus::has_state: return "state";
        case RecordStatus::infeasible: return "infeasible";
        default: return "not_applicable";
    }
}

json record_json(const EquilibriumRecord& rec) {
    json j{{"id", rec.label()},
           {"status", status_name(rec.status)},
           {"feasible", rec.feasible()},
           {"conditions", conditions_json(rec.feasibility.conditions)},
           {"degenerate", rec.degenerate},
           {"notes", rec.notes}};
    if (rec.state) {
        j["state"] = state_json(*rec.state);
        j["residual"] = rec.residual;
    }
    return j;
}

}  // namespace

std::string fnv1a_digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

RunManifest make_manifest(const std::string& subcommand, const std::string& scenario_path,
                          const std::string& scenario_bytes) {
    RunManifest m;
    m.tool_version = kToolVersion;
    m.subcommand = subcommand;
    m.scenario_path = scenario_path;
    m.scenario_digest = fnv1a_digest(scenario_bytes);
    const auto now = std::chrono::system_clock::now();
    const std::time_t tt = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&tt, &tm_utc);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    m.timestamp = buf;
    return m;
}

void write_manifest(const RunManifest& m, const std::string& output_path) {
    json j{{"tool_version", m.tool_version},
           {"subcommand", m.subcommand},
           {"scenario_path", m.scenario_path},
           {"scenario_digest", m.scenario_digest},
           {"timestamp", m.timestamp},
           {"outputs", m.outputs},
           {"events", m.events}};
    std::ofstream out(output_path);
    if (!out) throw std::runtime_error("cannot write manifest: " + output_path);
    out << j.dump(2) << "\n";
}

std::string equilibria_json(const ScenarioFile& sc, const std::vector<EquilibriumRecord>& recs) {
    json arr = json::array();
    for (const auto& rec : recs) arr.push_back(record_json(rec));
    json j{{"model", variant_name(sc.params.variant)},
           {"params", params_json(sc.params)},
           {"equilibria", arr}};
    return j.dump(2) + "\n";
}

std::string stability_json(const ScenarioFile& sc, const std::vector<StabilityRow>& rows) {
    json arr = json::array();
    for (const auto& row : rows) {
        json eig = json::array();
        for (const auto& lam : row.verdict.eigenvalues)
            eig.push_back(json{{"re", lam.real()}, {"im", lam.imag()}});
        json jr{{"id", row.record.label()},
                {"state", row.record.state ? state_json(*row.record.state) : json()},
                {"eigenvalues", eig},
                {"max_real_part", row.verdict.max_real_part},
                {"classification", stability_name(row.verdict.classification)},
                {"routh_hurwitz",
                 json{{"satisfied", row.verdict.rh_satisfied},
                      {"margins", row.verdict.rh_margins}}},
                {"agreement", row.verdict.agreement}};
        if (row.verdict.closed_form) {
            jr["closed_form"] = json{{"satisfied", row.verdict.closed_form_satisfied},
                                     {"conditions", conditions_json(*row.verdict.closed_form)}};
        }
        arr.push_back(jr);
    }
    json j{{"model", variant_name(sc.params.variant)},
           {"params", params_json(sc.params)},
           {"results", arr}};
    return j.dump(2) + "\n";
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,A,T,U,S,I,P\n";
    for (size_t i = 0; i < traj.size(); ++i) {
        const StateReformed& y = traj.states[i];
        const StateOriginal x = traj.original(i);
        out += fmt17(traj.times[i]);
        out += ',';
        out += fmt17(y.A);
        out += ',';
        out += fmt17(y.T);
        out += ',';
        out += fmt17(y.U);
        out += ',';
        out += fmt17(x.S);
        out += ',';
        out += fmt17(x.I);
        out += ',';
        out += fmt17(x.P);
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<BifurcationRow>& rows,
                      const std::vector<std::pair<std::string, double>>& refined) {
    std::string out = "value";
    for (const char* eq : {"e1", "e2", "e3", "e4", "e5"}) {
        out += std::string(",") + eq + "_feasible," + eq + "_stable," + eq + "_max_re";
    }
    out += ",attractor,flags,error\n";
    for (const auto& row : rows) {
        out += fmt17(row.value);
        for (const auto& cell : row.eq) {
            if (!cell.applicable) {
                out += ",,,";
                continue;
            }
            out += cell.feasible ? ",1" : ",0";
            out += cell.stable ? ",1" : ",0";
            out += ',';
            out += std::isfinite(cell.max_real_part) ? fmt17(cell.max_real_part) : "";
        }
        out += ',';
        if (row.attractor) out += attractor_name(*row.attractor);
        out += ',';
        for (size_t i = 0; i < row.flags.size(); ++i) {
            if (i) out += ';';
            out += row.flags[i];
        }
        out += ',';
        out += row.error;
        out += '\n';
    }
    for (const auto& [label, value] : refined)
        out += "#refined," + label + "," + fmt17(value) + "\n";
    return out;
}

}  // namespace ecoepi
