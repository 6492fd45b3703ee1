#include "wbench/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace wbench {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, ',')) {
        cur = trim(cur);
        if (!cur.empty()) out.push_back(cur);
    }
    return out;
}

} // namespace

Config Config::from_text(const std::string& text) {
    Config c;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line without '=': " + line);
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw std::invalid_argument("config line with empty key: " + line);
        c.kv_[key] = trim(line.substr(eq + 1));
    }
    return c;
}

Config Config::from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

std::string Config::get(const std::string& key, const std::string& def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : it->second;
}

double Config::get_double(const std::string& key, double def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : std::stod(it->second);
}

int Config::get_int(const std::string& key, int def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : std::stoi(it->second);
}

std::uint64_t Config::get_u64(const std::string& key, std::uint64_t def) const {
    auto it = kv_.find(key);
    return it == kv_.end() ? def : std::stoull(it->second);
}

std::vector<int> Config::get_ints(const std::string& key, const std::vector<int>& def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::vector<int> out;
    for (const std::string& tok : split_list(it->second)) out.push_back(std::stoi(tok));
    return out;
}

std::vector<double> Config::get_doubles(const std::string& key, const std::vector<double>& def) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) return def;
    std::vector<double> out;
    for (const std::string& tok : split_list(it->second)) out.push_back(std::stod(tok));
    return out;
}

ExperimentConfig experiment_from_config(const Config& c) {
    ExperimentConfig e;
    e.dim = c.get_int("grid.dim", e.dim);
    e.L = c.get_double("grid.L", e.L);
    e.resolutions = c.get_ints("exp.resolutions", e.resolutions);
    e.weight = c.get("exp.weight", e.weight);
    e.p = c.get_double("exp.p", e.p);
    e.q = c.get_double("exp.q", e.q);
    e.s = c.get_double("exp.s", e.s);
    e.eps = c.get_double("exp.eps", e.eps);
    e.trials = c.get_int("exp.trials", e.trials);
    e.seed = c.get_u64("exp.seed", e.seed);
    e.block_sides = c.get_ints("exp.block_sides", e.block_sides);
    e.op = c.get("exp.op", e.op);
    e.stability_factor = c.get_double("exp.stability", e.stability_factor);
    e.sharpness_L = c.get_doubles("sharp.L", e.sharpness_L);
    e.cells_per_unit = c.get_int("sharp.cells_per_unit", e.cells_per_unit);
    return e;
}

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void atomic_write_text(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp);
        out << text;
        if (!out.good()) throw std::runtime_error("short write: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("rename failed: " + path);
    }
}

std::string csv_text(const std::vector<std::string>& cols,
                     const std::vector<std::vector<double>>& rows) {
    std::vector<std::vector<std::string>> cells;
    cells.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<std::string> r;
        r.reserve(row.size());
        for (double v : row) r.push_back(format_g17(v));
        cells.push_back(std::move(r));
    }
    return csv_text_str(cols, cells);
}

std::string csv_text_str(const std::vector<std::string>& cols,
                         const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream os;
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& row : rows) {
        if (row.size() != cols.size()) throw std::invalid_argument("csv row width mismatch");
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

std::uint64_t fnv1a64(const void* data, std::size_t n) {
    const unsigned char* b = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= b[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes.data(), bytes.size())));
    return buf;
}

nlohmann::json json_finite(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

nlohmann::json report_to_json(const BoundReport& r) {
    nlohmann::json j;
    j["schema"] = "weightbench/1";
    j["name"] = r.name;
    j["columns"] = r.columns;
    j["row_count"] = r.rows.size();
    nlohmann::json pr = nlohmann::json::array();
    for (const auto& kv : r.per_resolution) pr.push_back({kv.first, json_finite(kv.second)});
    j["per_resolution"] = pr;
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& kv : r.per_scale) ps.push_back({kv.first, json_finite(kv.second)});
    j["per_scale"] = ps;
    j["sup"] = json_finite(r.sup);
    j["median"] = json_finite(r.median);
    j["fitted_slope"] = json_finite(r.slope);
    j["stability"] = json_finite(r.stability);
    j["gates"] = {{"ok", r.gates.ok},
                  {"r_w", json_finite(r.gates.r_w)},
                  {"r_w_unbounded", r.gates.r_w_unbounded},
                  {"aplus", json_finite(r.gates.aplus)},
                  {"violations", r.gates.violations}};
    j["notes"] = r.notes;
    j["pass"] = r.pass;
    return j;
}

nlohmann::json weight_report_to_json(const WeightReport& r) {
    nlohmann::json j;
    j["constant"] = json_finite(r.constant);
    if (r.witness) {
        j["witness"] = {{"level", r.witness->cube.level},
                        {"corner", {r.witness->cube.corner[0], r.witness->cube.corner[1]}},
                        {"subset_cells", r.witness->subset_cells},
                        {"lambda", r.witness->lambda}};
    }
    nlohmann::json curve = nlohmann::json::array();
    for (const auto& kv : r.curve) curve.push_back({kv.first, json_finite(kv.second)});
    j["curve"] = curve;
    j["cubes_scanned"] = r.cubes_scanned;
    j["cubes_skipped"] = r.cubes_skipped;
    return j;
}

void append_manifest_line(const std::string& path, const nlohmann::json& entry) {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) throw std::runtime_error("cannot append manifest: " + path);
    out << entry.dump() << "\n";
}

} // namespace wbench
