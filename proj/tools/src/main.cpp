#include "commands.hpp"

#include "dmca/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

using nlohmann::json;
using namespace dmca::cli;

// Flags are stored as optionals and merged over the JSON parameter file, so
// every flag has a JSON equivalent under the same (snake_case) key.
struct Overlay {
    std::vector<std::pair<std::string, std::function<void(json&)>>> setters;

    template <typename T>
    CLI::Option* add(CLI::App* app, const std::string& flag, const std::string& key, std::optional<T>& slot,
                     const std::string& help) {
        setters.emplace_back(key, [&slot, key](json& j) {
            if (slot) j[key] = *slot;
        });
        return app->add_option(flag, slot, help);
    }

    json merge(const std::string& file) const {
        json j = file.empty() ? json::object() : read_json_file(file);
        if (!j.is_object()) throw dmca::ParameterError("parameter file must hold a JSON object");
        for (const auto& [key, set] : setters) set(j);
        return j;
    }
};

int run_guarded(const std::function<int()>& fn) {
    try {
        return fn();
    } catch (const dmca::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const dmca::DegenerateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    } catch (const dmca::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kData;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Separate a video data matrix into morphological layers with sliding-window DMD and sparse coding"};
    app.require_subcommand(1);
    const Streams io{std::cout, std::cerr};
    std::function<int()> action;

    // synth
    auto* synth = app.add_subcommand("synth", "Generate synthetic inputs");
    synth->require_subcommand(1);
    struct SynthFlags {
        std::string params;
        std::optional<std::string> out, image, shape, clean;
        std::optional<double> amplitude, rho, noise_sigma, height;
        std::optional<long long> frames, extent;
        std::optional<std::uint64_t> seed;
        Overlay overlay;
    };
    static SynthFlags sf;
    for (const std::string kind : {"checker", "noise", "walk", "waves"}) {
        auto* sub = synth->add_subcommand(kind, "Synthesize " + kind + " data");
        sub->add_option("--params", sf.params, "JSON parameter file");
        sf.overlay.add(sub, "--out", "out", sf.out, "Output DMX path");
        if (kind == "checker") {
            sf.overlay.add(sub, "--image", "image", sf.image, "Base grayscale image (P5 PGM)");
            sf.overlay.add(sub, "--amplitude", "amplitude", sf.amplitude, "Checkerboard amplitude");
        } else {
            sf.overlay.add(sub, "--frames", "frames", sf.frames, "Frame count");
            sf.overlay.add(sub, "--shape", "shape", sf.shape, "Frame shape HEIGHTxWIDTH");
            sf.overlay.add(sub, "--seed", "seed", sf.seed, "RNG seed");
        }
        if (kind == "noise") {
            sf.overlay.add(sub, "--rho", "rho", sf.rho, "Noise intensity in [0, 1]");
            sf.overlay.add(sub, "--clean", "clean", sf.clean, "Clean video DMX to add the noise to");
        }
        if (kind == "walk") {
            sf.overlay.add(sub, "--extent", "extent", sf.extent, "Glyph size in pixels");
            sf.overlay.add(sub, "--height", "height", sf.height, "Glyph height");
        }
        if (kind == "waves") sf.overlay.add(sub, "--noise-sigma", "noise_sigma", sf.noise_sigma, "Gaussian noise sigma");
        sub->callback([kind, &action] {
            action = [kind] { return cmd_synth(kind, sf.overlay.merge(sf.params), Streams{std::cout, std::cerr}); };
        });
    }

    // eig
    static std::string eig_params;
    static std::optional<std::string> eig_input, eig_out, eig_config;
    static std::optional<long long> eig_wl;
    static std::optional<unsigned> eig_threads;
    static Overlay eig_overlay;
    auto* eig = app.add_subcommand("eig", "Write the harvested eigenvalue table as CSV");
    eig->add_option("--params", eig_params, "JSON parameter file");
    eig_overlay.add(eig, "--input", "input", eig_input, "Input DMX");
    eig_overlay.add(eig, "--window-length", "window_length", eig_wl, "DMD window length");
    eig_overlay.add(eig, "--config", "config", eig_config, "DMCA config whose labeler fills the label column");
    eig_overlay.add(eig, "--out", "out", eig_out, "CSV path (stdout when omitted)");
    eig_overlay.add(eig, "--threads", "threads", eig_threads, "Worker threads (0 = auto)");
    eig->callback([&] { action = [&] { return cmd_eig(eig_overlay.merge(eig_params), io); }; });

    // decompose
    static std::string dec_params;
    static std::optional<std::string> dec_input, dec_config, dec_out, dec_manifest;
    static std::optional<unsigned> dec_threads;
    static Overlay dec_overlay;
    auto* dec = app.add_subcommand("decompose", "Run DMCA and write layer_1..k.dmx, diagnostics and a manifest");
    dec->add_option("--params", dec_params, "JSON parameter file");
    dec_overlay.add(dec, "--input", "input", dec_input, "Input DMX");
    dec_overlay.add(dec, "--config", "config", dec_config, "DMCA config JSON");
    dec_overlay.add(dec, "--manifest", "manifest", dec_manifest, "Re-run the input and config recorded in a manifest");
    dec_overlay.add(dec, "--out", "out", dec_out, "Output directory");
    dec_overlay.add(dec, "--threads", "threads", dec_threads, "Worker threads (0 = auto)");
    dec->callback([&] { action = [&] { return cmd_decompose(dec_overlay.merge(dec_params), io); }; });

    // metrics
    static std::string met_params;
    static std::optional<std::string> met_ref, met_test, met_metric, met_mask, met_out;
    static std::optional<double> met_peak;
    static std::optional<bool> met_rescale;
    static Overlay met_overlay;
    auto* met = app.add_subcommand("metrics", "Per-frame PSNR, SSIM, SNR or SCR as CSV");
    met->add_option("--params", met_params, "JSON parameter file");
    met_overlay.add(met, "--reference", "reference", met_ref, "Reference DMX");
    met_overlay.add(met, "--test", "test", met_test, "Test DMX");
    met_overlay.add(met, "--metric", "metric", met_metric, "psnr | ssim | snr | scr");
    met_overlay.add(met, "--mask", "mask", met_mask, "Target mask DMX (snr, scr)");
    met_overlay.add(met, "--peak", "peak", met_peak, "PSNR peak value");
    met_overlay.add(met, "--rescale-test", "rescale_test", met_rescale, "Min-max rescale the test data to [0, 255] first");
    met_overlay.add(met, "--out", "out", met_out, "CSV path (stdout when omitted)");
    met->callback([&] { action = [&] { return cmd_metrics(met_overlay.merge(met_params), io); }; });

    // info
    static std::optional<std::string> info_input;
    static Overlay info_overlay;
    auto* info = app.add_subcommand("info", "Print version information, or the header of a DMX file");
    info_overlay.add(info, "--input", "input", info_input, "DMX file to describe");
    info->callback([&] { action = [&] { return cmd_info(info_overlay.merge(""), io); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e, std::cerr, std::cerr);
        return kUsage;
    }
    return run_guarded(action);
}
