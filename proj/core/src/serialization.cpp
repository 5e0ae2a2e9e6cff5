#include "dmca/serialization.hpp"

#include "dmca/errors.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace dmca {

using nlohmann::json;

namespace {

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config key '") + key + "': " + e.what());
    }
}

json number_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double read_number_or_inf(const json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
    }
    throw ParameterError(std::string("config key '") + key + "' must be a number or \"inf\"");
}

Scalar read_complex(const json& v, const char* key) {
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    throw ParameterError(std::string("config key '") + key + "' must be a number or [re, im]");
}

}  // namespace

void to_json(json& j, const Labeler& l) {
    j = json{{"kind", to_string(l.kind)}};
    switch (l.kind) {
        case LabelerKind::magnitude_threshold: {
            json t = json::array();
            for (double s : l.thresholds) t.push_back(number_or_inf(s));
            j["thresholds"] = t;
            j["center"] = {l.center.real(), l.center.imag()};
            break;
        }
        case LabelerKind::radial:
            j["k"] = l.k;
            break;
        case LabelerKind::kmedians:
        case LabelerKind::kmeans:
            j["k"] = l.k;
            j["seed"] = l.seed;
            if (!l.centers.empty()) j["centers"] = l.centers;
            break;
    }
}

void from_json(const json& j, Labeler& l) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
        throw ParameterError("labeler must be an object with a string 'kind'");
    }
    const auto kind = j["kind"].get<std::string>();
    const Scalar center = j.contains("center") ? read_complex(j["center"], "center") : Scalar{};
    if (kind == "two_way") {
        if (!j.contains("cut")) throw ParameterError("two_way labeler needs 'cut'");
        l = Labeler::two_way(read_number_or_inf(j["cut"], "cut"), center);
    } else {
        switch (labeler_kind_from_string(kind)) {
            case LabelerKind::magnitude_threshold: {
                if (!j.contains("thresholds") || !j["thresholds"].is_array()) {
                    throw ParameterError("magnitude_threshold labeler needs a 'thresholds' array");
                }
                std::vector<double> t;
                for (const auto& v : j["thresholds"]) t.push_back(read_number_or_inf(v, "thresholds"));
                l = Labeler::magnitude(std::move(t), center);
                break;
            }
            case LabelerKind::radial:
                l = Labeler::radial(get_or<int>(j, "k", 1));
                break;
            case LabelerKind::kmedians:
            case LabelerKind::kmeans:
                l = Labeler::clustering(labeler_kind_from_string(kind), get_or<int>(j, "k", 2),
                                        get_or<std::uint64_t>(j, "seed", 0));
                l.centers = get_or<std::vector<double>>(j, "centers", {});
                break;
        }
    }
    l.validate();
}

void to_json(json& j, const SmootherConfig& c) {
    j = json{{"enabled", c.enabled}, {"window", c.window}, {"poly_order", c.poly_order}};
}

void from_json(const json& j, SmootherConfig& c) {
    c.enabled = get_or<bool>(j, "enabled", c.enabled);
    c.window = get_or<int>(j, "window", c.window);
    c.poly_order = get_or<int>(j, "poly_order", c.poly_order);
    c.validate();
}

void to_json(json& j, const SolverOptions& o) {
    j = json{{"max_iters", o.max_iters}, {"tolerance", o.tolerance}, {"acceleration", o.acceleration}};
}

void from_json(const json& j, SolverOptions& o) {
    o.max_iters = get_or<int>(j, "max_iters", o.max_iters);
    o.tolerance = get_or<double>(j, "tolerance", o.tolerance);
    o.acceleration = get_or<bool>(j, "acceleration", o.acceleration);
    o.validate();
}

void to_json(json& j, const GammaSpec& g) {
    j = json{{"mode", g.mode == GammaSpec::Mode::relative ? "relative" : "absolute"}, {"value", g.value}};
}

void from_json(const json& j, GammaSpec& g) {
    if (j.is_string() && j.get<std::string>() == "auto") {
        g = GammaSpec{};
    } else if (j.is_number()) {
        g = GammaSpec::absolute(j.get<double>());
    } else if (j.is_object()) {
        const auto mode = get_or<std::string>(j, "mode", "relative");
        if (mode != "relative" && mode != "absolute") {
            throw ParameterError("gamma mode must be 'relative' or 'absolute'");
        }
        g.mode = mode == "relative" ? GammaSpec::Mode::relative : GammaSpec::Mode::absolute;
        g.value = get_or<double>(j, "value", 0.01);
    } else {
        throw ParameterError("gamma must be \"auto\", a number, or {mode, value}");
    }
    if (!(g.value > 0.0)) throw ParameterError("gamma must be > 0");
}

void to_json(json& j, const DmcaConfig& c) {
    j = json{{"schema_version", kConfigSchemaVersion},
             {"window_length", c.window_length},
             {"neighborhood", c.neighborhood},
             {"labeler", c.labeler},
             {"gamma", c.gamma},
             {"smoother", c.smoother},
             {"target_label", c.target_label},
             {"solver", c.solver},
             {"stride", c.stride},
             {"threads", c.threads}};
    j["take_real_part"] = c.take_real_part ? json(*c.take_real_part) : json(nullptr);
}

void from_json(const json& j, DmcaConfig& c) {
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    const int version = get_or<int>(j, "schema_version", kConfigSchemaVersion);
    if (version != kConfigSchemaVersion) {
        throw ParameterError("unsupported config schema_version " + std::to_string(version));
    }
    if (!j.contains("window_length")) throw ParameterError("config needs 'window_length'");
    if (!j.contains("neighborhood")) throw ParameterError("config needs 'neighborhood'");
    if (!j.contains("labeler")) throw ParameterError("config needs 'labeler'");
    c.window_length = get_or<Index>(j, "window_length", c.window_length);
    c.neighborhood = get_or<Index>(j, "neighborhood", c.neighborhood);
    c.labeler = j["labeler"].get<Labeler>();
    if (j.contains("gamma")) c.gamma = j["gamma"].get<GammaSpec>();
    if (j.contains("smoother")) c.smoother = j["smoother"].get<SmootherConfig>();
    if (j.contains("solver")) c.solver = j["solver"].get<SolverOptions>();
    c.target_label = get_or<int>(j, "target_label", c.target_label);
    c.stride = get_or<Index>(j, "stride", c.stride);
    c.threads = get_or<unsigned>(j, "threads", c.threads);
    if (j.contains("take_real_part") && !j["take_real_part"].is_null()) {
        c.take_real_part = get_or<bool>(j, "take_real_part", false);
    } else {
        c.take_real_part.reset();
    }
    c.validate();
}

void to_json(json& j, const ColumnDiagnostics& d) {
    j = json{{"j", d.column},
             {"gamma", d.gamma},
             {"objective", d.objective},
             {"residual_norm", d.residual_norm},
             {"iterations", d.iterations},
             {"converged", d.converged},
             {"optimality_violation", d.optimality_violation},
             {"atoms_per_label", d.atoms_per_label},
             {"active_per_label", d.active_per_label}};
}

void to_json(json& j, const WaveComponent& w) {
    j = json{{"amplitude", w.amplitude}, {"kx", w.kx}, {"ky", w.ky}, {"omega", w.omega}, {"phase", w.phase}};
}

void from_json(const json& j, WaveComponent& w) {
    w.amplitude = get_or<double>(j, "amplitude", 1.0);
    w.kx = get_or<double>(j, "kx", 0.0);
    w.ky = get_or<double>(j, "ky", 0.0);
    w.omega = get_or<double>(j, "omega", 0.0);
    w.phase = get_or<double>(j, "phase", 0.0);
}

DmcaConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParameterError(std::string("config is not valid JSON: ") + e.what());
    }
    return j.get<DmcaConfig>();
}

}  // namespace dmca
