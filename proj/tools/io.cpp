#include "io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

namespace sceot::io {

namespace {

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
  throw InputError(origin + ": " + what);
}

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  const std::size_t end = std::min(byte, text.size());
  // nlohmann reports the byte after the offending character; step back one.
  const std::size_t stop = end > 0 ? end - 1 : 0;
  for (std::size_t i = 0; i < stop; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double number(const Json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  const Json& v = j.at(key);
  if (!v.is_number()) throw InputError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

double number_or(const Json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

std::vector<double> real_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InputError(std::string("field \"") + key + "\" must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw InputError(std::string("field \"") + key + "\" must be an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

std::string string_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string()) {
    throw InputError(std::string("field \"") + key + "\" must be a string");
  }
  return j.at(key).get<std::string>();
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte);
    // Keep only the reason; the position is recomputed as line and column.
    std::string what = e.what();
    const auto pos = what.find(": ", what.find("parse error"));
    if (pos != std::string::npos) what = what.substr(pos + 2);
    fail(origin, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + what);
  }
}

Json load_json(const std::filesystem::path& path) {
  return parse_json(read_text(path), path.string());
}

LoadedDensity density_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("density spec must be a JSON object");
  if (j.contains("builtin")) {
    const std::string name = string_field(j, "builtin");
    if (name == "uniform") return {densities::uniform(), 1.0, "uniform"};
    if (name == "cosine") {
      const int k = static_cast<int>(number_or(j, "intervals", 1023));
      return {densities::cosine(k), 1.0, "cosine"};
    }
    if (name == "random") {
      const auto seed = static_cast<std::uint64_t>(number_or(j, "seed", 0));
      const int k = static_cast<int>(number_or(j, "intervals", 16));
      return {densities::random_positive(seed, k), 1.0, "random"};
    }
    throw InputError("unknown builtin density \"" + name + "\"");
  }
  const bool periodic = j.contains("periodic") ? j.at("periodic").get<bool>() : false;
  double scale = 1.0;
  GridDensity rho = GridDensity::normalized(real_array(j, "nodes"), real_array(j, "values"),
                                            periodic, &scale);
  return {std::move(rho), scale, "table"};
}

LoadedDensity load_density(const std::filesystem::path& path) {
  const Json j = load_json(path);
  try {
    return density_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    fail(path.string(), e.what());
  } catch (const Error& e) {
    fail(path.string(), e.what());
  }
}

Profile profile_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("profile must be a JSON object");
  const std::string kind = string_field(j, "kind");
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (kind == "inverse") {
    return profiles::inverse(number_or(params, "scale", 1.0), number_or(params, "power", 1.0));
  }
  if (kind == "exp") {
    return profiles::exponential(number_or(params, "scale", 1.0), number(params, "rate"));
  }
  if (kind == "linear") return profiles::linear(number(params, "intercept"), number(params, "slope"));
  if (kind == "power") {
    return profiles::power(number_or(params, "scale", 1.0), number(params, "exponent"));
  }
  if (kind == "table") return profiles::table(real_array(params, "t"), real_array(params, "g"));
  throw InputError("unknown profile kind \"" + kind + "\"");
}

CostModel cost_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("cost spec must be a JSON object");
  const std::string kind = string_field(j, "kind");
  auto build = [&]() -> CostModel {
    if (kind == "ring") return make_ring_cost(profile_from_json(j.at("profile")));
    if (kind == "torus") return make_torus_cost(profile_from_json(j.at("profile")));
    if (kind == "line") {
      return make_line_cost(profile_from_json(j.at("profile")), number_or(j, "lo", 0.0),
                            number_or(j, "hi", kTwoPi));
    }
    if (kind == "graph") {
      if (!j.contains("f")) throw InputError("graph cost needs an \"f\" profile");
      return make_graph_cost(profile_from_json(j.at("f")), profile_from_json(j.at("profile")),
                             number(j, "lo"), number(j, "hi"));
    }
    if (kind == "one_body") {
      return make_one_body_cost(profile_from_json(j.at("f")), number_or(j, "lo", 0.0),
                                number_or(j, "hi", kTwoPi));
    }
    if (kind == "sum") {
      if (!j.contains("terms") || !j.at("terms").is_array() || j.at("terms").empty()) {
        throw InputError("sum cost needs a non-empty \"terms\" array");
      }
      std::vector<CostModel> models;
      std::vector<double> weights;
      for (const auto& t : j.at("terms")) {
        models.push_back(cost_from_json(t.at("cost")));
        weights.push_back(number_or(t, "weight", 1.0));
      }
      return cone_combine(models, weights);
    }
    throw InputError("unknown cost kind \"" + kind + "\"");
  };
  if (kind != "one_body" && kind != "sum" && !j.contains("profile")) {
    throw InputError(kind + " cost needs a \"profile\"");
  }
  CostModel w = build();
  if (j.contains("truncate")) w = truncate(w, number(j, "truncate"));
  return w;
}

CostModel load_cost(const std::filesystem::path& path) {
  const Json j = load_json(path);
  try {
    return cost_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    fail(path.string(), e.what());
  } catch (const Error& e) {
    fail(path.string(), e.what());
  }
}

std::vector<double> parse_real_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    std::string item =
        text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    double v = 0.0;
    const auto* first = item.data();
    const auto* last = item.data() + item.size();
    const auto res = std::from_chars(first, last, v);
    if (item.empty() || res.ec != std::errc() || res.ptr != last) {
      throw InputError("invalid number \"" + item + "\" in list \"" + text + "\"");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_real(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

double round_significant(double x, int digits) {
  if (!std::isfinite(x) || x == 0.0) return x;
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*e", digits - 1, x);
  double out = 0.0;
  std::from_chars(buf.data(), buf.data() + std::char_traits<char>::length(buf.data()), out);
  return out;
}

std::string to_csv(const CsvTable& table) {
  std::string s;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) s += ',';
    s += table.columns[c];
  }
  s += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) s += ',';
      s += format_real(row[c]);
    }
    s += '\n';
  }
  return s;
}

CsvTable parse_csv(const std::string& text, const std::string& origin) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (table.columns.empty()) {
      table.columns = cells;
      continue;
    }
    if (cells.size() != table.columns.size()) {
      fail(origin, "line " + std::to_string(lineno) + ": expected " +
                       std::to_string(table.columns.size()) + " cells");
    }
    std::vector<double> row;
    for (const auto& c : cells) {
      double v = 0.0;
      const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (c.empty() || res.ec != std::errc() || res.ptr != c.data() + c.size()) {
        fail(origin, "line " + std::to_string(lineno) + ": invalid number \"" + c + "\"");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError(path.string() + ": cannot open file for writing");
  out << text;
  if (!out) throw InputError(path.string() + ": write failed");
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xF];
  }
  return out;
}

}  // namespace sceot::io
