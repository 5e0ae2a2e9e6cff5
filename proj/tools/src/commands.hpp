#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace dmca::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kNumerical = 4 };

/// Shared context: data goes to `out`, logs to `log`.
struct Streams {
    std::ostream& out;
    std::ostream& log;
};

/// Every subcommand takes its parameters as one JSON object: the optional
/// --params/--config file overlaid with whatever flags were given.
int cmd_synth(const std::string& kind, const nlohmann::json& params, const Streams& io);
int cmd_eig(const nlohmann::json& params, const Streams& io);
int cmd_decompose(const nlohmann::json& params, const Streams& io);
int cmd_metrics(const nlohmann::json& params, const Streams& io);
int cmd_info(const nlohmann::json& params, const Streams& io);

nlohmann::json read_json_file(const std::filesystem::path& path);

}  // namespace dmca::cli
