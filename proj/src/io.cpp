#include "kgspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>

#include "kgspec/shooting.hpp"

namespace kgspec::io {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& raw, const std::string& key) {
  const std::string text = trim(raw);
  auto whole = [&](const std::string& s) {
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw InvalidInput("bad number '" + raw + "' for " + key);
    return x;
  };
  const auto slash = text.find('/');
  if (slash == std::string::npos) return whole(text);
  const double den = whole(text.substr(slash + 1));
  if (den == 0.0) throw InvalidInput("zero denominator in '" + raw + "' for " + key);
  return whole(text.substr(0, slash)) / den;
}

// Splits at `sep` outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::map<std::string, double> parse_params(const std::string& body, const std::vector<std::string>& allowed,
                                           const std::string& name) {
  std::map<std::string, double> out;
  if (trim(body).empty()) return out;
  for (const auto& item : split_top(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidInput("expected key=value in '" + item + "' for " + name);
    const std::string key = trim(item.substr(0, eq));
    bool known = false;
    for (const auto& a : allowed) known = known || a == key;
    if (!known) throw InvalidInput("unknown parameter '" + key + "' for " + name);
    out[key] = parse_number(item.substr(eq + 1), key);
  }
  return out;
}

double get(const std::map<std::string, double>& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

double require(const std::map<std::string, double>& p, const std::string& key, const std::string& name) {
  const auto it = p.find(key);
  if (it == p.end()) throw InvalidInput(name + " needs parameter " + key);
  return it->second;
}

// Splits "<lead>,<key=value>" at the last top-level comma so `lead` may itself hold commas.
bool split_trailing_param(const std::string& inner, std::string& lead, std::string& param) {
  const auto parts = split_top(inner, ',');
  if (parts.size() < 2) return false;
  param = parts.back();
  lead = parts.front();
  for (std::size_t i = 1; i + 1 < parts.size(); ++i) lead += "," + parts[i];
  return true;
}

// "head(<inner>)" -> inner, or empty when `text` is not of that form.
bool unwrap(const std::string& text, const std::string& head, std::string& inner) {
  if (text.rfind(head + "(", 0) != 0 || text.back() != ')') return false;
  inner = text.substr(head.size() + 1, text.size() - head.size() - 2);
  return true;
}

}  // namespace

Shape parse_shape(const std::string& raw) {
  const std::string text = trim(raw);
  if (text.empty()) throw InvalidInput("empty shape specification");
  if (text.front() == '@') return load_tabulated_file(text.substr(1));

  std::string inner;
  if (unwrap(text, "blend", inner)) {
    std::string lead, param;
    if (!split_trailing_param(inner, lead, param)) throw InvalidInput("blend expects blend(<lower>|<upper>,a=value)");
    const auto shapes = split_top(lead, '|');
    if (shapes.size() != 2) throw InvalidInput("blend expects two shapes separated by '|'");
    const auto p = parse_params(param, {"a"}, "blend");
    return Shape::blend(parse_shape(shapes[0]), parse_shape(shapes[1]), require(p, "a", "blend"));
  }
  if (unwrap(text, "shifted", inner)) {
    std::string lead, param;
    if (!split_trailing_param(inner, lead, param)) throw InvalidInput("shifted expects shifted(<shape>,s=value)");
    const auto p = parse_params(param, {"s"}, "shifted");
    return Shape::shifted(parse_shape(lead), require(p, "s", "shifted"));
  }

  const auto colon = text.find(':');
  const std::string name = trim(text.substr(0, colon));
  const std::string body = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (name == "table") {
    const std::string path = trim(body);
    return load_tabulated_file(!path.empty() && path.front() == '@' ? path.substr(1) : path);
  }
  if (name == "square-well") {
    const auto p = parse_params(body, {"t", "depth"}, name);
    return Shape::square_well(require(p, "t", name), get(p, "depth", 1.0));
  }
  if (name == "shifted-well") {
    const auto p = parse_params(body, {"t", "inner", "floor"}, name);
    return Shape::shifted_square_well(require(p, "t", name), require(p, "inner", name), get(p, "floor", 0.0));
  }
  if (name == "woods-saxon") {
    const auto p = parse_params(body, {"q", "b", "R", "depth"}, name);
    if (p.count("q") == p.count("b")) throw InvalidInput("woods-saxon needs exactly one of q or b");
    const double R = get(p, "R", 1.0), depth = get(p, "depth", 1.0);
    if (p.count("b")) return Shape::woods_saxon_steepness(p.at("b"), R, depth);
    return Shape::woods_saxon(p.at("q"), R, depth);
  }
  if (name == "exponential") {
    const auto p = parse_params(body, {"a", "depth"}, name);
    return Shape::exponential(require(p, "a", name), get(p, "depth", 1.0));
  }
  throw InvalidInput("unknown shape '" + name +
                     "' (expected square-well, shifted-well, woods-saxon, exponential, table, blend, shifted)");
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string config_hash(const nlohmann::json& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(config.dump())));
  return buf;
}

nlohmann::json to_json(const Channel& channel) {
  return {{"d", channel.d}, {"l", channel.l}, {"n", channel.n}};
}

nlohmann::json to_json(const SpectralPoint& p) {
  nlohmann::json j = {{"E", p.E},
                      {"v", p.v},
                      {"n", p.n},
                      {"f_mean", p.f_mean},
                      {"f2_mean", p.f2_mean},
                      {"norm_residual", p.norm_residual},
                      {"match_residual", p.match_residual}};
  try {
    j["slope"] = shooting::slope_vE(p);
  } catch (const InvariantViolation&) {
    j["slope"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const SpectralCurve& curve) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : curve.points) points.push_back(to_json(p));
  return {{"channel", to_json(curve.channel)}, {"shape", curve.shape_id}, {"points", points}, {"gaps", curve.gaps}};
}

nlohmann::json to_json(const bounds::BoundsRow& row) {
  nlohmann::json j = {{"E", row.E}, {"t1_opt", row.t1}, {"t2_opt", row.t2}, {"rigorous", row.rigorous},
                      {"sandwiched", row.sandwiched()}};
  j["v_lower"] = row.v_lower ? nlohmann::json(*row.v_lower) : nlohmann::json(nullptr);
  j["v_upper"] = row.v_upper ? nlohmann::json(*row.v_upper) : nlohmann::json(nullptr);
  j["point"] = row.point ? to_json(*row.point) : nlohmann::json(nullptr);
  return j;
}

namespace {

void write_header(std::ostream& out, const std::string& shape_id, const Channel& channel, const std::string& hash) {
  out << "# " << kToolName << " " << kToolVersion << "\n";
  out << "# config-hash: " << hash << "\n";
  out << "# shape: " << shape_id << "\n";
  out << "# channel: " << channel.label() << "\n";
}

std::string point_columns(const SpectralPoint& p) {
  double slope = NAN;
  try {
    slope = shooting::slope_vE(p);
  } catch (const InvariantViolation&) {
  }
  return format_number(p.E) + "," + format_number(p.v) + "," + std::to_string(p.n) + "," +
         format_number(p.f_mean) + "," + format_number(p.f2_mean) + "," + format_number(slope);
}

std::string gap_columns(double E, int n) {
  return format_number(E) + ",nan," + std::to_string(n) + ",nan,nan,nan";
}

}  // namespace

void write_curve_csv(std::ostream& out, const SpectralCurve& curve, const std::string& hash) {
  write_header(out, curve.shape_id, curve.channel, hash);
  out << "E,v,n,f_mean,f2_mean,slope\n";
  std::size_t i = 0, g = 0;
  while (i < curve.points.size() || g < curve.gaps.size()) {
    const bool take_gap = g < curve.gaps.size() && (i == curve.points.size() || curve.gaps[g] < curve.points[i].E);
    if (take_gap) {
      out << gap_columns(curve.gaps[g++], curve.channel.n) << "\n";
    } else {
      out << point_columns(curve.points[i++]) << "\n";
    }
  }
}

void write_bounds_csv(std::ostream& out, const std::vector<bounds::BoundsRow>& rows, const Channel& channel,
                      const std::string& shape_id, const std::string& hash) {
  write_header(out, shape_id, channel, hash);
  out << "E,v,n,f_mean,f2_mean,slope,v_lower,v_upper,t1_opt,t2_opt,rigorous\n";
  for (const auto& row : rows) {
    out << (row.point ? point_columns(*row.point) : gap_columns(row.E, channel.n)) << ","
        << format_number(row.v_lower.value_or(NAN)) << "," << format_number(row.v_upper.value_or(NAN)) << ","
        << format_number(row.t1) << "," << format_number(row.t2) << "," << (row.rigorous ? 1 : 0) << "\n";
  }
}

}  // namespace kgspec::io
