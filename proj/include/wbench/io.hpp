#pragma once

// Result plumbing: flat key=value configs, atomic text output, CSV and JSON
// serialization with round-trip float formatting, FNV-1a digests, and the
// append-only run manifest.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "wbench/verify.hpp"

namespace wbench {

// Flat key=value text with section prefixes (grid.N=1024). '#' starts a
// comment, blank lines are skipped, later keys win. Keys and values are
// whitespace-trimmed.
class Config {
  public:
    Config() = default;
    static Config from_text(const std::string& text);
    static Config from_file(const std::string& path); // throws on unreadable file

    bool has(const std::string& key) const { return kv_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    std::string get(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    int get_int(const std::string& key, int def) const;
    std::uint64_t get_u64(const std::string& key, std::uint64_t def) const;
    std::vector<int> get_ints(const std::string& key, const std::vector<int>& def) const;
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& def) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }

  private:
    std::map<std::string, std::string> kv_;
};

// Keys: grid.dim, grid.L, exp.resolutions, exp.weight, exp.p, exp.q, exp.s,
// exp.eps, exp.trials, exp.seed, exp.op, exp.block_sides, exp.stability,
// sharp.L, sharp.cells_per_unit. Missing keys keep the defaults.
ExperimentConfig experiment_from_config(const Config& c);

// Shortest text that round-trips a double exactly (printf %.17g).
std::string format_g17(double v);

// Write-to-temp then rename; no partial files on interruption.
void atomic_write_text(const std::string& path, const std::string& text);

std::string csv_text(const std::vector<std::string>& cols,
                     const std::vector<std::vector<double>>& rows);
std::string csv_text_str(const std::vector<std::string>& cols,
                         const std::vector<std::vector<std::string>>& rows);

std::uint64_t fnv1a64(const void* data, std::size_t n);
std::string fnv1a64_hex(const std::string& bytes);

// JSON value for v; infinities and NaN become strings, since JSON numbers
// cannot carry them.
nlohmann::json json_finite(double v);

nlohmann::json report_to_json(const BoundReport& r);
nlohmann::json weight_report_to_json(const WeightReport& r);

// One JSON object per line; creates the file on first use.
void append_manifest_line(const std::string& path, const nlohmann::json& entry);

} // namespace wbench
