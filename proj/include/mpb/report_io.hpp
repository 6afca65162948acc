#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mpb/config.hpp"
#include "mpb/experiments.hpp"

namespace mpb {

/// report.json / rows.csv both open with `# config-hash=<hex> seed=<n>`.
/// Every float in rows.csv is written with 17 significant digits so the
/// bytes round-trip; report.json carries no timing (byte-identical output
/// at any worker count), wall time goes to the manifest.
struct EmittedFile {
    std::string name;
    std::string hash;
    std::size_t bytes = 0;
};

inline std::string header_comment(const std::string& config_hash, std::uint64_t seed) {
    return "# config-hash=" + config_hash + " seed=" + std::to_string(seed) + "\n";
}

inline std::string render_report(const SuiteResult& res, std::uint64_t seed) {
    return header_comment(res.report.at("config_hash").get<std::string>(), seed) +
           res.report.dump(2) + "\n";
}

inline std::string render_csv(const SuiteResult& res, std::uint64_t seed) {
    std::string out = header_comment(res.report.at("config_hash").get<std::string>(), seed);
    out += res.csv.header + "\n";
    for (const auto& line : res.csv.lines) {
        out += line;
        out += "\n";
    }
    return out;
}

inline EmittedFile write_bytes(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << bytes;
    out.close();
    return {path.filename().string(), to_hex(fnv1a64(bytes)), bytes.size()};
}

/// run_manifest.json: invocation record plus emitted-file hashes.
inline void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                           const std::string& config_path, std::uint64_t seed, int workers,
                           const std::vector<EmittedFile>& files, double wall_time_s) {
    nlohmann::json m;
    m["subcommand"] = subcommand;
    m["config_path"] = config_path;
    m["seed"] = seed;
    m["workers"] = workers;
    m["wall_time_s"] = wall_time_s;
    m["files"] = nlohmann::json::array();
    for (const auto& f : files)
        m["files"].push_back({{"name", f.name}, {"hash", f.hash}, {"bytes", f.bytes}});
    std::ofstream out(dir / "run_manifest.json", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << m.dump(2) << "\n";
}

enum class OutputFormat { Csv, Json, Both };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::Json;
    if (s == "both") return OutputFormat::Both;
    throw std::invalid_argument("format must be csv, json or both");
}

inline std::vector<EmittedFile> emit_outputs(const SuiteResult& res, std::uint64_t seed,
                                             const std::filesystem::path& dir,
                                             OutputFormat format) {
    std::filesystem::create_directories(dir);
    std::vector<EmittedFile> files;
    if (format != OutputFormat::Csv)
        files.push_back(write_bytes(dir / "report.json", render_report(res, seed)));
    if (format != OutputFormat::Json)
        files.push_back(write_bytes(dir / "rows.csv", render_csv(res, seed)));
    return files;
}

}  // namespace mpb
