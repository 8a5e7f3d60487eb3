#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sceot/costs.hpp"
#include "sceot/error.hpp"
#include "sceot/measure1d.hpp"

namespace sceot::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchema = 1;

// Unreadable or malformed input. The message starts with the path and, for
// syntax errors, the 1-based line and column.
class InputError : public Error {
 public:
  using Error::Error;
};

std::string read_text(const std::filesystem::path& path);
Json parse_json(const std::string& text, const std::string& origin);
Json load_json(const std::filesystem::path& path);

struct LoadedDensity {
  GridDensity density;
  double scale = 1.0;  // factor applied to the raw values to reach unit mass
  std::string label;
};

// {"nodes": [...], "values": [...], "periodic": true} or
// {"builtin": "uniform" | "cosine" | "random", "seed": s, "intervals": k}.
LoadedDensity density_from_json(const Json& j);
LoadedDensity load_density(const std::filesystem::path& path);

// {"kind": "ring" | "torus" | "line" | "graph" | "one_body" | "sum",
//  "profile": {"kind": ..., "params": {...}}, "truncate": h, ...}
CostModel cost_from_json(const Json& j);
CostModel load_cost(const std::filesystem::path& path);
Profile profile_from_json(const Json& j);

// Comma-separated list of reals, e.g. "1e-1,1e-2".
std::vector<double> parse_real_list(const std::string& text);

// Shortest decimal string that reads back to the same double.
std::string format_real(double x);
// Rounded to the given number of significant digits, stable across platforms.
double round_significant(double x, int digits);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string to_csv(const CsvTable& table);
CsvTable parse_csv(const std::string& text, const std::string& origin);
void write_text(const std::filesystem::path& path, const std::string& text);
// Two-space indented dump with a trailing newline.
std::string dump_json(const Json& j);

// Lower-case hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

}  // namespace sceot::io
