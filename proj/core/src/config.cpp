#include "aqrm/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <set>

namespace aqrm {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed,
                    std::string_view where) {
    if (!obj.is_object()) {
        throw ConfigError(std::string(where) + ": expected an object");
    }
    const std::set<std::string_view> keys(allowed);
    for (const auto& item : obj.items()) {
        if (!keys.contains(item.key())) {
            throw ConfigError(std::string(where) + ": unknown key '" + item.key() + "'");
        }
    }
}

double number(const json& obj, const char* key, std::string_view where) {
    const json& v = obj.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string(where) + "." + key + ": expected a number");
    }
    const double d = v.get<double>();
    if (!std::isfinite(d)) {
        throw ConfigError(std::string(where) + "." + key + ": must be finite");
    }
    return d;
}

int integer(const json& obj, const char* key, std::string_view where) {
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
        throw ConfigError(std::string(where) + "." + key + ": expected an integer");
    }
    return v.get<int>();
}

bool boolean(const json& obj, const char* key, std::string_view where) {
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
        throw ConfigError(std::string(where) + "." + key + ": expected true or false");
    }
    return v.get<bool>();
}

std::string text(const json& obj, const char* key, std::string_view where) {
    const json& v = obj.at(key);
    if (!v.is_string()) {
        throw ConfigError(std::string(where) + "." + key + ": expected a string");
    }
    return v.get<std::string>();
}

SweepMode parse_mode(const std::string& s) {
    if (s == "spectrum-scan") return SweepMode::SpectrumScan;
    if (s == "parameter-map") return SweepMode::ParameterMap;
    throw ConfigError("mode: expected 'spectrum-scan' or 'parameter-map'");
}

AxisName parse_axis(const std::string& s) {
    if (s == "g") return AxisName::G;
    if (s == "epsilon") return AxisName::Epsilon;
    if (s == "delta") return AxisName::Detuning;
    if (s == "xi") return AxisName::Xi;
    throw ConfigError("axes.name: '" + s + "' is not one of g, epsilon, delta, xi");
}

void parse_params(const json& p, SweepConfig& cfg) {
    reject_unknown(p, {"omega", "Delta", "detuning", "g", "epsilon", "xi"}, "params");
    ModelParams& m = cfg.fixed;
    if (p.contains("omega")) m.omega = number(p, "omega", "params");
    if (p.contains("Delta") && p.contains("detuning")) {
        throw ConfigError("params: give either Delta or detuning, not both");
    }
    if (p.contains("Delta")) m.delta = number(p, "Delta", "params");
    if (p.contains("detuning")) {
        m.delta = ModelParams::delta_from_detuning(m.omega, number(p, "detuning", "params"));
    }
    if (p.contains("g")) m.g = number(p, "g", "params");
    if (p.contains("epsilon")) m.epsilon = number(p, "epsilon", "params");
    if (p.contains("xi")) m.xi = number(p, "xi", "params");
}

void parse_axes(const json& a, SweepConfig& cfg) {
    if (!a.is_array()) throw ConfigError("axes: expected an array");
    for (const json& item : a) {
        reject_unknown(item, {"name", "min", "max", "count"}, "axes[]");
        for (const char* key : {"name", "min", "max", "count"}) {
            if (!item.contains(key)) throw ConfigError(std::string("axes[]: missing '") + key + "'");
        }
        SweepAxis axis;
        axis.name = parse_axis(text(item, "name", "axes[]"));
        axis.min = number(item, "min", "axes[]");
        axis.max = number(item, "max", "axes[]");
        axis.count = integer(item, "count", "axes[]");
        if (axis.count < 2) throw ConfigError("axes[].count: must be >= 2");
        for (const SweepAxis& other : cfg.axes) {
            if (other.name == axis.name) throw ConfigError("axes: duplicate axis name");
        }
        cfg.axes.push_back(axis);
    }
}

void parse_states(const json& s, SweepConfig& cfg) {
    reject_unknown(s, {"lowest", "indices", "energy_window"}, "states");
    if (s.size() != 1) {
        throw ConfigError("states: give exactly one of lowest, indices, energy_window");
    }
    StateSelection& sel = cfg.states;
    sel = StateSelection{};
    if (s.contains("lowest")) {
        sel.kind = StateSelection::Kind::Lowest;
        sel.lowest = integer(s, "lowest", "states");
        if (sel.lowest < 1) throw ConfigError("states.lowest: must be >= 1");
    } else if (s.contains("indices")) {
        sel.kind = StateSelection::Kind::Indices;
        const json& idx = s.at("indices");
        if (!idx.is_array() || idx.empty()) {
            throw ConfigError("states.indices: expected a non-empty array");
        }
        for (const json& v : idx) {
            if (!v.is_number_integer() || v.get<int>() < 0) {
                throw ConfigError("states.indices: entries must be non-negative integers");
            }
            sel.indices.push_back(v.get<int>());
        }
        std::sort(sel.indices.begin(), sel.indices.end());
        sel.indices.erase(std::unique(sel.indices.begin(), sel.indices.end()), sel.indices.end());
    } else {
        sel.kind = StateSelection::Kind::EnergyWindow;
        const json& w = s.at("energy_window");
        if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number()) {
            throw ConfigError("states.energy_window: expected [min, max]");
        }
        sel.energy_min = w[0].get<double>();
        sel.energy_max = w[1].get<double>();
        if (!(sel.energy_min < sel.energy_max)) {
            throw ConfigError("states.energy_window: min must be below max");
        }
    }
}

void parse_truncation(const json& t, SweepConfig& cfg) {
    reject_unknown(t, {"policy", "n_max", "start", "cap"}, "truncation");
    TruncationPolicy& pol = cfg.truncation;
    if (t.contains("policy")) {
        const std::string p = text(t, "policy", "truncation");
        if (p == "adaptive") {
            pol.adaptive = true;
        } else if (p == "fixed") {
            pol.adaptive = false;
        } else {
            throw ConfigError("truncation.policy: expected 'adaptive' or 'fixed'");
        }
    }
    if (t.contains("n_max")) {
        pol.fixed_n_max = integer(t, "n_max", "truncation");
        if (!t.contains("policy")) pol.adaptive = false;
    }
    if (t.contains("start")) pol.start = integer(t, "start", "truncation");
    if (t.contains("cap")) pol.cap = integer(t, "cap", "truncation");
    if (pol.fixed_n_max < 1 || pol.start < 1 || pol.cap < pol.start) {
        throw ConfigError("truncation: need n_max >= 1, start >= 1 and cap >= start");
    }
}

void parse_convergence(const json& c, SweepConfig& cfg) {
    reject_unknown(c, {"tail_levels", "tol"}, "convergence");
    if (c.contains("tail_levels")) {
        const int t = integer(c, "tail_levels", "convergence");
        if (t < 1) throw ConfigError("convergence.tail_levels: must be >= 1");
        cfg.convergence.tail_levels = t;
    }
    if (c.contains("tol")) {
        cfg.convergence.tol = number(c, "tol", "convergence");
        if (!(cfg.convergence.tol > 0.0)) throw ConfigError("convergence.tol: must be positive");
    }
}

void parse_wigner(const json& w, SweepConfig& cfg) {
    reject_unknown(w, {"enabled", "spacing", "margin", "weight_cutoff", "extent"}, "wigner");
    GridOptions& g = cfg.wigner;
    if (w.contains("enabled")) cfg.bosonic = boolean(w, "enabled", "wigner");
    if (w.contains("spacing")) g.spacing = number(w, "spacing", "wigner");
    if (w.contains("margin")) g.margin = number(w, "margin", "wigner");
    if (w.contains("weight_cutoff")) g.weight_cutoff = number(w, "weight_cutoff", "wigner");
    if (w.contains("extent")) g.extent = number(w, "extent", "wigner");
    if (!(g.spacing > 0.0) || g.margin < 0.0 || !(g.weight_cutoff > 0.0) ||
        (g.extent && !(*g.extent > 0.0))) {
        throw ConfigError("wigner: spacing/extent must be positive, margin non-negative");
    }
}

void parse_output(const json& o, SweepConfig& cfg) {
    reject_unknown(o, {"basename", "format", "plots"}, "output");
    if (o.contains("basename")) {
        cfg.output.basename = text(o, "basename", "output");
        if (cfg.output.basename.empty() ||
            cfg.output.basename.find_first_of("/\\") != std::string::npos) {
            throw ConfigError("output.basename: must be a plain file name");
        }
    }
    if (o.contains("format")) {
        const std::string f = text(o, "format", "output");
        if (f == "csv") cfg.output.format = OutputFormat::Csv;
        else if (f == "json") cfg.output.format = OutputFormat::Json;
        else if (f == "both") cfg.output.format = OutputFormat::Both;
        else throw ConfigError("output.format: expected csv, json or both");
    }
    if (o.contains("plots")) cfg.output.plots = boolean(o, "plots", "output");
}

}  // namespace

std::string_view to_string(SweepMode mode) {
    return mode == SweepMode::SpectrumScan ? "spectrum-scan" : "parameter-map";
}

std::string_view to_string(AxisName axis) {
    switch (axis) {
        case AxisName::G: return "g";
        case AxisName::Epsilon: return "epsilon";
        case AxisName::Detuning: return "delta";
        case AxisName::Xi: return "xi";
    }
    return "?";
}

double SweepAxis::value(int i) const {
    // exact endpoints, and exact mirror values on symmetric axes
    const double n = static_cast<double>(count - 1);
    return (min * (n - i) + max * i) / n;
}

std::size_t SweepConfig::point_count() const {
    std::size_t n = 1;
    for (const SweepAxis& a : axes) n *= static_cast<std::size_t>(a.count);
    return n;
}

std::vector<double> SweepConfig::point_coordinates(std::size_t point) const {
    std::vector<double> coords(axes.size());
    for (std::size_t k = axes.size(); k-- > 0;) {
        const auto count = static_cast<std::size_t>(axes[k].count);
        coords[k] = axes[k].value(static_cast<int>(point % count));
        point /= count;
    }
    return coords;
}

ModelParams SweepConfig::point_params(std::size_t point) const {
    ModelParams p = fixed;
    const std::vector<double> coords = point_coordinates(point);
    for (std::size_t k = 0; k < axes.size(); ++k) {
        switch (axes[k].name) {
            case AxisName::G: p.g = coords[k]; break;
            case AxisName::Epsilon: p.epsilon = coords[k]; break;
            case AxisName::Detuning: p.delta = ModelParams::delta_from_detuning(p.omega, coords[k]); break;
            case AxisName::Xi: p.xi = coords[k]; break;
        }
    }
    return p;
}

SweepConfig parse_sweep_config(const json& doc, std::optional<SweepMode> expected) {
    reject_unknown(doc, {"mode", "params", "axes", "states", "truncation", "convergence",
                         "wigner", "output"},
                   "config");
    SweepConfig cfg;
    cfg.source = doc;
    try {
        if (doc.contains("mode")) {
            cfg.mode = parse_mode(text(doc, "mode", "config"));
            if (expected && *expected != cfg.mode) {
                throw ConfigError("mode: config is '" + std::string(to_string(cfg.mode)) +
                                  "' but the subcommand runs '" +
                                  std::string(to_string(*expected)) + "'");
            }
        } else if (expected) {
            cfg.mode = *expected;
        } else {
            throw ConfigError("mode: missing");
        }
        if (doc.contains("params")) parse_params(doc.at("params"), cfg);
        if (!doc.contains("axes")) throw ConfigError("axes: missing");
        parse_axes(doc.at("axes"), cfg);

        if (cfg.mode == SweepMode::ParameterMap) {
            cfg.states.kind = StateSelection::Kind::Indices;
            cfg.states.indices = {0, 1};
        }
        if (doc.contains("states")) parse_states(doc.at("states"), cfg);
        if (doc.contains("truncation")) parse_truncation(doc.at("truncation"), cfg);
        if (doc.contains("convergence")) parse_convergence(doc.at("convergence"), cfg);
        if (doc.contains("wigner")) parse_wigner(doc.at("wigner"), cfg);
        if (doc.contains("output")) parse_output(doc.at("output"), cfg);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    const std::size_t want_axes = cfg.mode == SweepMode::SpectrumScan ? 1 : 2;
    if (cfg.axes.size() != want_axes) {
        throw ConfigError(cfg.mode == SweepMode::SpectrumScan
                              ? "axes: a spectrum scan sweeps exactly one axis"
                              : "axes: a parameter map sweeps exactly two axes");
    }
    for (const SweepAxis& a : cfg.axes) {
        if (a.name == AxisName::Detuning && cfg.fixed.omega != 1.0) {
            throw ConfigError("axes: a delta (detuning) sweep requires omega = 1");
        }
        if (a.name == AxisName::Xi && (a.min < 0.0 || a.max > 1.0)) {
            throw ConfigError("axes: xi must stay within [0, 1]");
        }
        if (a.name == AxisName::Detuning && cfg.fixed.delta != ModelParams{}.delta &&
            cfg.source.contains("params") &&
            (cfg.source["params"].contains("Delta") || cfg.source["params"].contains("detuning"))) {
            throw ConfigError("axes: Delta is set by the delta axis; drop it from params");
        }
    }
    try {
        for (std::size_t i = 0; i < cfg.point_count(); i += std::max<std::size_t>(1, cfg.point_count() - 1)) {
            cfg.point_params(i).validate();
        }
        cfg.fixed.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path, std::optional<SweepMode> expected) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_sweep_config(doc, expected);
}

nlohmann::json resolved_json(const SweepConfig& c) {
    json axes = json::array();
    for (const SweepAxis& a : c.axes) {
        axes.push_back({{"name", to_string(a.name)}, {"min", a.min}, {"max", a.max}, {"count", a.count}});
    }
    json states;
    switch (c.states.kind) {
        case StateSelection::Kind::Lowest: states = {{"lowest", c.states.lowest}}; break;
        case StateSelection::Kind::Indices: states = {{"indices", c.states.indices}}; break;
        case StateSelection::Kind::EnergyWindow:
            states = {{"energy_window", {c.states.energy_min, c.states.energy_max}}};
            break;
    }
    json truncation = c.truncation.adaptive
                          ? json{{"policy", "adaptive"}, {"start", c.truncation.start}, {"cap", c.truncation.cap}}
                          : json{{"policy", "fixed"}, {"n_max", c.truncation.fixed_n_max}};
    json convergence = {{"tol", c.convergence.tol}};
    if (c.convergence.tail_levels) convergence["tail_levels"] = *c.convergence.tail_levels;
    json wigner = {{"enabled", c.bosonic},
                   {"spacing", c.wigner.spacing},
                   {"margin", c.wigner.margin},
                   {"weight_cutoff", c.wigner.weight_cutoff}};
    if (c.wigner.extent) wigner["extent"] = *c.wigner.extent;
    const char* format = c.output.format == OutputFormat::Csv    ? "csv"
                         : c.output.format == OutputFormat::Json ? "json"
                                                                 : "both";
    return {{"mode", to_string(c.mode)},
            {"params",
             {{"omega", c.fixed.omega},
              {"Delta", c.fixed.delta},
              {"g", c.fixed.g},
              {"epsilon", c.fixed.epsilon},
              {"xi", c.fixed.xi}}},
            {"axes", axes},
            {"states", states},
            {"truncation", truncation},
            {"convergence", convergence},
            {"wigner", wigner},
            {"output", {{"basename", c.output.basename}, {"format", format}, {"plots", c.output.plots}}}};
}

}  // namespace aqrm
