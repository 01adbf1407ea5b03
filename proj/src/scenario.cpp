#include "ecoepi/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ecoepi/model.hpp"

namespace ecoepi {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& msg) {
    throw ScenarioError(origin + ": " + msg);
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& origin, const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            fail(origin, "unknown key \"" + key + "\" in " + where);
    }
}

double require_number(const json& obj, const std::string& key, const std::string& origin,
                      const std::string& where) {
    if (!obj.contains(key)) fail(origin, "missing key \"" + key + "\" in " + where);
    if (!obj[key].is_number()) fail(origin, "key \"" + key + "\" in " + where + " must be a number");
    return obj[key].get<double>();
}

double optional_number(const json& obj, const std::string& key, double fallback,
                       const std::string& origin, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) fail(origin, "key \"" + key + "\" in " + where + " must be a number");
    return obj[key].get<double>();
}

}  // namespace

StateReformed ScenarioFile::initial_state() const {
    if (init) return *init;
    return {0.5, 0.5 * std::sqrt(params.K), 0.1};
}

ScenarioFile parse_scenario(const std::string& text, const std::string& origin) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw ScenarioError(origin + ": " + ex.what());
    }
    if (!root.is_object()) fail(origin, "top level must be an object");
    reject_unknown(root, {"model", "comment", "params", "init", "solver", "sweep"},
                   origin, "scenario");

    ScenarioFile sc;

    if (!root.contains("model") || !root["model"].is_string())
        fail(origin, "missing or non-string \"model\"");
    const std::string model = root["model"].get<std::string>();
    if (model == "harmless") sc.params.variant = Variant::harmless;
    else if (model == "toxic") sc.params.variant = Variant::toxic;
    else fail(origin, "\"model\" must be \"harmless\" or \"toxic\", got \"" + model + "\"");

    if (root.contains("comment")) {
        if (!root["comment"].is_string()) fail(origin, "\"comment\" must be a string");
        sc.comment = root["comment"].get<std::string>();
    }

    if (!root.contains("params") || !root["params"].is_object())
        fail(origin, "missing \"params\" object");
    const json& pj = root["params"];
    reject_unknown(pj, {"r", "K", "sigma", "mu", "q", "w", "m", "g", "f"}, origin, "params");
    sc.params.r = require_number(pj, "r", origin, "params");
    sc.params.K = require_number(pj, "K", origin, "params");
    sc.params.sigma = require_number(pj, "sigma", origin, "params");
    sc.params.mu = require_number(pj, "mu", origin, "params");
    sc.params.q = require_number(pj, "q", origin, "params");
    sc.params.w = require_number(pj, "w", origin, "params");
    sc.params.m = require_number(pj, "m", origin, "params");
    sc.params.g = require_number(pj, "g", origin, "params");
    sc.params.f = require_number(pj, "f", origin, "params");
    try {
        validate_params(sc.params);
    } catch (const std::exception& ex) {
        fail(origin, std::string("invalid params: ") + ex.what());
    }

    if (root.contains("init")) {
        const json& ij = root["init"];
        if (!ij.is_object()) fail(origin, "\"init\" must be an object");
        const bool orig = ij.contains("S") || ij.contains("I") || ij.contains("P");
        const bool refd = ij.contains("A") || ij.contains("T") || ij.contains("U");
        if (orig && refd) fail(origin, "init must use either {S,I,P} or {A,T,U}, not both");
        if (orig) {
            reject_unknown(ij, {"S", "I", "P"}, origin, "init");
            StateOriginal x;
            x.S = require_number(ij, "S", origin, "init");
            x.I = require_number(ij, "I", origin, "init");
            x.P = require_number(ij, "P", origin, "init");
            if (!state_valid(x) || !(x.S + x.I > 0.0))
                fail(origin, "init {S,I,P} must be nonnegative with S + I > 0");
            sc.init = to_reformed(x);
        } else if (refd) {
            reject_unknown(ij, {"A", "T", "U"}, origin, "init");
            StateReformed y;
            y.A = require_number(ij, "A", origin, "init");
            y.T = require_number(ij, "T", origin, "init");
            y.U = require_number(ij, "U", origin, "init");
            if (!state_valid(y, 0.0))
                fail(origin, "init {A,T,U} must satisfy 0 <= A <= 1, T > 0, U >= 0");
            sc.init = y;
        } else {
            fail(origin, "init must contain {S,I,P} or {A,T,U}");
        }
    }

    if (root.contains("solver")) {
        const json& sj = root["solver"];
        if (!sj.is_object()) fail(origin, "\"solver\" must be an object");
        reject_unknown(sj, {"rel_tol", "abs_tol", "max_step", "t_end", "stride"},
                       origin, "solver");
        sc.solver.rel_tol = optional_number(sj, "rel_tol", sc.solver.rel_tol, origin, "solver");
        sc.solver.abs_tol = optional_number(sj, "abs_tol", sc.solver.abs_tol, origin, "solver");
        sc.solver.max_step = optional_number(sj, "max_step", sc.solver.max_step, origin, "solver");
        sc.solver.t_end = optional_number(sj, "t_end", sc.solver.t_end, origin, "solver");
        sc.solver.dense_output_stride =
            optional_number(sj, "stride", sc.solver.dense_output_stride, origin, "solver");
        if (!(sc.solver.rel_tol > 0.0) || !(sc.solver.abs_tol > 0.0))
            fail(origin, "solver tolerances must be positive");
        if (!(sc.solver.t_end > 0.0)) fail(origin, "solver t_end must be positive");
        sc.solver_given = true;
    }

    if (root.contains("sweep")) {
        const json& wj = root["sweep"];
        if (!wj.is_object()) fail(origin, "\"sweep\" must be an object");
        reject_unknown(wj, {"parameter", "values", "from", "to", "step", "with_simulation"},
                       origin, "sweep");
        SweepSpec spec;
        spec.base = sc.params;
        if (!wj.contains("parameter") || !wj["parameter"].is_string())
            fail(origin, "sweep requires a string \"parameter\"");
        spec.parameter = wj["parameter"].get<std::string>();
        try {
            with_parameter(spec.base, spec.parameter, 1.0);
        } catch (const std::exception& ex) {
            fail(origin, ex.what());
        }
        if (wj.contains("values")) {
            if (!wj["values"].is_array()) fail(origin, "sweep \"values\" must be an array");
            for (const auto& v : wj["values"]) {
                if (!v.is_number()) fail(origin, "sweep \"values\" must be numbers");
                spec.values.push_back(v.get<double>());
            }
        } else {
            const double from = require_number(wj, "from", origin, "sweep");
            const double to = require_number(wj, "to", origin, "sweep");
            const double step = require_number(wj, "step", origin, "sweep");
            if (!(step > 0.0) || !(to >= from))
                fail(origin, "sweep requires step > 0 and to >= from");
            for (double v = from; v <= to + 0.5 * step; v += step) spec.values.push_back(v);
        }
        if (spec.values.empty()) fail(origin, "sweep grid is empty");
        for (size_t i = 0; i + 1 < spec.values.size(); ++i)
            if (!(spec.values[i] < spec.values[i + 1]))
                fail(origin, "sweep grid must be strictly ascending");
        if (wj.contains("with_simulation")) {
            if (!wj["with_simulation"].is_boolean())
                fail(origin, "sweep \"with_simulation\" must be a boolean");
            spec.with_simulation = wj["with_simulation"].get<bool>();
        }
        spec.sim_opts = sc.solver;
        spec.init = sc.init;
        sc.sweep = std::move(spec);
    }

    return sc;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

}  // namespace ecoepi
