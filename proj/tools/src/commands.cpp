#include "commands.hpp"

#include "sha256.hpp"

#include "dmca/clustering.hpp"
#include "dmca/errors.hpp"
#include "dmca/harvest.hpp"
#include "dmca/io.hpp"
#include "dmca/metrics.hpp"
#include "dmca/pipeline.hpp"
#include "dmca/random.hpp"
#include "dmca/serialization.hpp"
#include "dmca/synth.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <regex>

#ifndef DMCA_VERSION
#define DMCA_VERSION "0.0.0"
#endif

namespace dmca::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kManifestVersion = 1;

template <typename T>
T require(const json& p, const char* key) {
    if (!p.contains(key) || p[key].is_null()) throw ParameterError(std::string("missing required parameter '") + key + "'");
    try {
        return p[key].get<T>();
    } catch (const json::exception&) {
        throw ParameterError(std::string("parameter '") + key + "' has the wrong type");
    }
}

template <typename T>
T value_or(const json& p, const char* key, T fallback) {
    if (!p.contains(key) || p[key].is_null()) return fallback;
    try {
        return p[key].get<T>();
    } catch (const json::exception&) {
        throw ParameterError(std::string("parameter '") + key + "' has the wrong type");
    }
}

std::pair<Index, Index> parse_shape(const json& p) {
    const json& s = p.contains("shape") ? p["shape"] : json();
    if (s.is_string()) {
        static const std::regex re(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
        std::smatch m;
        const auto text = s.get<std::string>();
        if (std::regex_match(text, m, re)) return {std::stoll(m[1]), std::stoll(m[2])};
    } else if (s.is_array() && s.size() == 2 && s[0].is_number_integer() && s[1].is_number_integer()) {
        return {s[0].get<Index>(), s[1].get<Index>()};
    }
    throw ParameterError("parameter 'shape' must look like \"HEIGHTxWIDTH\" or [height, width]");
}

// path/to/x.dmx + "mask" -> path/to/x.mask.dmx
fs::path companion(const fs::path& out, const std::string& tag, const std::string& ext = ".dmx") {
    return out.parent_path() / (out.stem().string() + "." + tag + ext);
}

void write_json(const fs::path& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path.string() + " for writing");
    f << std::setw(2) << j << '\n';
}

void ensure_parent(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

DataMatrix masks_to_matrix(const std::vector<TargetMask>& masks, FrameGeometry g) {
    RealMatrix m(static_cast<Index>(g.pixels()), static_cast<Index>(masks.size()));
    for (std::size_t t = 0; t < masks.size(); ++t) {
        const auto& cells = masks[t].cells();
        for (Index r = 0; r < cells.rows(); ++r) {
            for (Index c = 0; c < cells.cols(); ++c) m(r * cells.cols() + c, static_cast<Index>(t)) = cells(r, c) ? 1.0 : 0.0;
        }
    }
    return DataMatrix::from_real(m, g);
}

json rescale_json(const AffineRescale& r) { return {{"scale", r.scale}, {"offset", r.offset}}; }

int synth_checker(const json& p, const Streams& io) {
    const fs::path image = require<std::string>(p, "image");
    const fs::path out = require<std::string>(p, "out");
    const double amplitude = value_or<double>(p, "amplitude", 3500.0);
    const CheckerboardImage c = gen_checkerboard_image(read_pgm(image), amplitude);
    ensure_parent(out);
    // Image columns are the snapshots.
    save_matrix(DataMatrix::from_real(c.input), out);
    save_matrix(DataMatrix::from_real(c.clean), companion(out, "clean"));
    save_matrix(DataMatrix::from_real(c.checkerboard), companion(out, "checkerboard"));
    write_json(companion(out, "rescale", ".json"), rescale_json(c.rescale));
    io.log << "wrote " << out.string() << " (" << c.input.rows() << "x" << c.input.cols() << ")\n";
    return kOk;
}

int synth_noise(const json& p, const Streams& io) {
    const fs::path out = require<std::string>(p, "out");
    const NoiseParams params{value_or<double>(p, "rho", 0.5), value_or<std::uint64_t>(p, "seed", 0)};
    params.validate();
    ensure_parent(out);
    if (p.contains("clean") && !p["clean"].is_null()) {
        const DataMatrix clean = load_matrix(require<std::string>(p, "clean"));
        auto [noisy, map] = add_noise_video(clean, params);
        save_matrix(noisy, out);
        write_json(companion(out, "rescale", ".json"), rescale_json(map));
        io.log << "wrote " << out.string() << " (" << noisy.cols() << " noisy frames)\n";
        return kOk;
    }
    const Index frames = value_or<Index>(p, "frames", 25);
    const auto [h, w] = parse_shape(p);
    if (frames < 2) throw ParameterError("frames must be >= 2");
    std::vector<RealFrame> video;
    for (Index t = 0; t < frames; ++t) video.push_back(sample_noise_frame(static_cast<double>(t), h, w, params));
    save_matrix(frames_to_matrix(video), out);
    io.log << "wrote " << out.string() << " (" << frames << " noise frames)\n";
    return kOk;
}

WalkTargetParams walk_params(const json& p) {
    WalkTargetParams w;
    w.extent = value_or<Index>(p, "extent", w.extent);
    w.height = value_or<double>(p, "height", w.height);
    w.seed = value_or<std::uint64_t>(p, "seed", 0);
    if (p.contains("start") && !p["start"].is_null()) w.start = p["start"].get<std::array<Index, 2>>();
    return w;
}

int synth_walk(const json& p, const Streams& io) {
    const fs::path out = require<std::string>(p, "out");
    const auto [h, w] = parse_shape(p);
    const auto v = gen_walk_target_video(value_or<Index>(p, "frames", 40), h, w, walk_params(p));
    ensure_parent(out);
    save_matrix(v.video, out);
    save_matrix(masks_to_matrix(v.masks, *v.video.geometry()), companion(out, "mask"));
    io.log << "wrote " << out.string() << " and its mask\n";
    return kOk;
}

int synth_waves(const json& p, const Streams& io) {
    const fs::path out = require<std::string>(p, "out");
    const auto [h, w] = parse_shape(p);
    const Index frames = value_or<Index>(p, "frames", 40);
    const auto waves = require<std::vector<WaveComponent>>(p, "waves");
    const DataMatrix surface = gen_wave_surface(frames, h, w, waves, value_or<double>(p, "noise_sigma", 0.02),
                                                value_or<std::uint64_t>(p, "seed", 0));
    ensure_parent(out);
    if (p.contains("target") && !p["target"].is_null()) {
        // Surface plus random-walk target, rescaled to [0, 255].
        const auto v = gen_walk_target_video(frames, h, w, walk_params(p["target"]));
        auto [scaled, map] = rescale_to_range(RealMatrix(surface.real_values() + v.video.real_values()), 0.0, 255.0);
        save_matrix(DataMatrix::from_real(scaled, surface.geometry()), out);
        save_matrix(masks_to_matrix(v.masks, *surface.geometry()), companion(out, "mask"));
        write_json(companion(out, "rescale", ".json"), rescale_json(map));
    } else {
        save_matrix(surface, out);
    }
    io.log << "wrote " << out.string() << "\n";
    return kOk;
}

std::vector<TargetMask> load_masks(const fs::path& path, Index frames, FrameGeometry g) {
    const DataMatrix m = load_matrix(path);
    if (static_cast<std::uint64_t>(m.rows()) != g.pixels()) throw DimensionError("mask rows do not match the frame size");
    if (m.cols() != frames && m.cols() != 1) {
        throw DimensionError("mask needs one column per frame or a single static column");
    }
    std::vector<TargetMask> masks;
    for (Index t = 0; t < frames; ++t) {
        const RealVector col = m.real_values().col(m.cols() == 1 ? 0 : t);
        BoolGrid cells(g.height, g.width);
        for (Index r = 0; r < cells.rows(); ++r) {
            for (Index c = 0; c < cells.cols(); ++c) cells(r, c) = col(r * cells.cols() + c) != 0.0;
        }
        masks.emplace_back(std::move(cells));
    }
    return masks;
}

}  // namespace

json read_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParameterError(path.string() + " is not valid JSON: " + e.what());
    }
}

int cmd_synth(const std::string& kind, const json& params, const Streams& io) {
    if (kind == "checker") return synth_checker(params, io);
    if (kind == "noise") return synth_noise(params, io);
    if (kind == "walk") return synth_walk(params, io);
    if (kind == "waves") return synth_waves(params, io);
    throw ParameterError("unknown synth kind '" + kind + "'");
}

int cmd_eig(const json& p, const Streams& io) {
    const DataMatrix x = load_matrix(require<std::string>(p, "input"));
    Index window_length = value_or<Index>(p, "window_length", 0);
    std::optional<Labeler> labeler;
    if (p.contains("config") && !p["config"].is_null()) {
        const DmcaConfig cfg = read_json_file(p["config"].get<std::string>()).get<DmcaConfig>();
        if (window_length == 0) window_length = cfg.window_length;
        labeler = cfg.labeler;
    }
    if (window_length == 0) throw ParameterError("eig needs --window-length or a config");
    ModeLibrary lib = harvest(x, window_length, {1, value_or<unsigned>(p, "threads", 1)});
    if (labeler) {
        if (labeler->needs_fit()) {
            const auto mags = eigenvalue_magnitudes(lib);
            *labeler = labeler->kind == LabelerKind::kmedians ? fit_kmedians(mags, labeler->k, labeler->seed)
                                                              : fit_kmeans(mags, labeler->k, labeler->seed);
        }
        label_library(lib, *labeler);
    }
    const auto rows = eigen_table(lib);
    if (p.contains("out") && !p["out"].is_null()) {
        const fs::path out = p["out"].get<std::string>();
        ensure_parent(out);
        std::ofstream f(out);
        if (!f) throw IoError("cannot open " + out.string() + " for writing");
        write_eigen_csv(f, rows);
        io.log << "wrote " << rows.size() << " eigenvalue rows to " << out.string() << "\n";
    } else {
        write_eigen_csv(io.out, rows);
    }
    return kOk;
}

int cmd_decompose(const json& p, const Streams& io) {
    fs::path input;
    json config_json;
    std::optional<std::string> expected_hash;
    if (p.contains("manifest") && !p["manifest"].is_null()) {
        const json m = read_json_file(p["manifest"].get<std::string>());
        input = m.at("input").at("path").get<std::string>();
        expected_hash = m.at("input").at("sha256").get<std::string>();
        config_json = m.at("config");
    } else {
        input = require<std::string>(p, "input");
        config_json = read_json_file(require<std::string>(p, "config"));
    }
    DmcaConfig config = config_json.get<DmcaConfig>();
    if (p.contains("threads") && !p["threads"].is_null()) config.threads = p["threads"].get<unsigned>();
    const fs::path out_dir = require<std::string>(p, "out");

    const std::string input_hash = sha256_file(input);
    if (expected_hash && *expected_hash != input_hash) {
        throw DimensionError("input " + input.string() + " does not match the manifest hash");
    }
    const DataMatrix x = load_matrix(input);
    const auto start = std::chrono::steady_clock::now();
    const LayerSet result = dmca::dmca(x, config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    fs::create_directories(out_dir);
    json outputs = json::array();
    for (int p_idx = 0; p_idx < result.k(); ++p_idx) {
        const fs::path path = out_dir / ("layer_" + std::to_string(p_idx + 1) + ".dmx");
        save_matrix(result.layers[static_cast<std::size_t>(p_idx)], path);
        outputs.push_back({{"path", path.filename().string()}, {"sha256", sha256_file(path)}});
    }
    {
        std::ofstream diag(out_dir / "diagnostics.jsonl");
        write_diagnostics_jsonl(diag, result.diagnostics);
    }
    // The echo keeps the caller's config; threads do not change the outputs.
    json manifest = {{"manifest_version", kManifestVersion},
                     {"tool_version", DMCA_VERSION},
                     {"random_stream_version", kRandomStreamVersion},
                     {"config", json(config)},
                     {"fitted_labeler", json(result.config.labeler)},
                     {"input", {{"path", fs::absolute(input).string()}, {"sha256", input_hash}}},
                     {"outputs", outputs},
                     {"diagnostics", "diagnostics.jsonl"},
                     {"k", result.k()},
                     {"all_converged", result.all_converged()},
                     {"max_imag_residue", result.max_imag_residue},
                     {"warnings", result.warnings},
                     {"wall_time_s", seconds}};
    write_json(out_dir / "manifest.json", manifest);
    for (const auto& w : result.warnings) io.log << "warning: " << w << "\n";
    io.log << "wrote " << result.k() << " layers to " << out_dir.string() << " in " << seconds << " s\n";
    return result.all_converged() ? kOk : kNumerical;
}

int cmd_metrics(const json& p, const Streams& io) {
    const DataMatrix ref = load_matrix(require<std::string>(p, "reference"));
    DataMatrix test = load_matrix(require<std::string>(p, "test"));
    const auto metric = require<std::string>(p, "metric");
    if (ref.rows() != test.rows() || ref.cols() != test.cols()) {
        throw DimensionError("reference is " + std::to_string(ref.rows()) + "x" + std::to_string(ref.cols()) +
                             " but test is " + std::to_string(test.rows()) + "x" + std::to_string(test.cols()));
    }
    if (value_or<bool>(p, "rescale_test", false)) test = rescale_to_range(test, 0.0, 255.0).first;
    const double peak = value_or<double>(p, "peak", 255.0);

    // With frame geometry every column is a frame; otherwise the whole matrix is one image.
    std::vector<MetricRow> rows;
    const auto g = ref.geometry();
    const Index frames = g ? ref.cols() : 1;
    std::vector<TargetMask> masks;
    if (metric == "snr" || metric == "scr") {
        if (!g) throw DimensionError(metric + " needs frame geometry");
        masks = load_masks(require<std::string>(p, "mask"), frames, *g);
    } else if (metric != "psnr" && metric != "ssim") {
        throw ParameterError("unknown metric '" + metric + "' (psnr, ssim, snr, scr)");
    }
    for (Index t = 0; t < frames; ++t) {
        double v = 0.0;
        if (metric == "scr" || metric == "snr") {
            const Frame f = column_to_frame(test.values().col(t), *g);
            v = metric == "scr" ? scr_db(f, masks[static_cast<std::size_t>(t)]) : snr_db(f, masks[static_cast<std::size_t>(t)]);
        } else {
            if (!ref.is_real() || !test.is_real()) throw DimensionError(metric + " needs real-valued inputs");
            const RealFrame a = g ? column_to_real_frame(ref.real_values().col(t), *g) : ref.real_values();
            const RealFrame b = g ? column_to_real_frame(test.real_values().col(t), *g) : test.real_values();
            v = metric == "psnr" ? psnr(a, b, peak) : ssim(a, b);
        }
        rows.push_back({t + 1, metric, v});
    }
    if (p.contains("out") && !p["out"].is_null()) {
        const fs::path out = p["out"].get<std::string>();
        ensure_parent(out);
        std::ofstream f(out);
        if (!f) throw IoError("cannot open " + out.string() + " for writing");
        write_metrics_csv(f, rows);
    } else {
        write_metrics_csv(io.out, rows);
    }
    return kOk;
}

int cmd_info(const json& p, const Streams& io) {
    json info = {{"tool_version", DMCA_VERSION},
                 {"config_schema_version", kConfigSchemaVersion},
                 {"random_stream_version", kRandomStreamVersion},
                 {"exit_codes", {{"ok", kOk}, {"usage", kUsage}, {"data", kData}, {"numerical", kNumerical}}}};
    if (p.contains("input") && !p["input"].is_null()) {
        const fs::path path = p["input"].get<std::string>();
        const DmxInfo d = read_dmx_info(path);
        info["input"] = {{"path", path.string()}, {"dtype", d.is_real ? "float64" : "complex128"},
                         {"height", d.height},    {"width", d.width},
                         {"rows", d.rows},        {"cols", d.cols},
                         {"sha256", sha256_file(path)}};
    }
    io.out << std::setw(2) << info << '\n';
    return kOk;
}

}  // namespace dmca::cli
