#include "perifrac/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace perifrac {

bool Config::operator==(const Config& o) const {
  const auto crack_eq = [&] {
    if (crack.has_value() != o.crack.has_value()) return false;
    if (!crack) return true;
    return crack->p0.x == o.crack->p0.x && crack->p0.y == o.crack->p0.y &&
           crack->p1.x == o.crack->p1.x && crack->p1.y == o.crack->p1.y;
  };
  return width == o.width && height == o.height && crack_eq() &&
         density == o.density && bulk_modulus == o.bulk_modulus &&
         poisson_ratio == o.poisson_ratio &&
         fracture_toughness == o.fracture_toughness && horizon == o.horizon &&
         influence == o.influence && hydrostatic_kind == o.hydrostatic_kind &&
         inflection == o.inflection && h == o.h && dt == o.dt &&
         t_end == o.t_end && quadrature_order == o.quadrature_order &&
         skip_cfl_check == o.skip_cfl_check &&
         collar_thickness == o.collar_thickness &&
         bottom_velocity == o.bottom_velocity && bc_mode == o.bc_mode &&
         ic_mode == o.ic_mode && ic_amplitude == o.ic_amplitude &&
         output_dir == o.output_dir && cadence == o.cadence &&
         write_vtk_files == o.write_vtk_files &&
         study_mesh_sizes == o.study_mesh_sizes && study_times == o.study_times;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1);
  std::vector<int> cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ConfigError("config line " + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, int line, const std::string& key) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    fail(line, "value for " + key + " is not a number: '" + v + "'");
  return x;
}

long long parse_int(const std::string& v, int line, const std::string& key) {
  const char* begin = v.c_str();
  char* end = nullptr;
  const long long x = std::strtoll(begin, &end, 10);
  if (end == begin || *end != '\0')
    fail(line, "value for " + key + " is not an integer: '" + v + "'");
  return x;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  fail(line, "value for " + key + " must be true or false");
}

std::vector<double> parse_list(const std::string& v, int line,
                               const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(line, "empty entry in list " + key);
    out.push_back(parse_double(item, line, key));
  }
  if (out.empty()) fail(line, "empty list for " + key);
  return out;
}

const std::map<std::string, std::vector<std::string>> kKnownKeys = {
    {"domain",
     {"width", "height", "crack_x0", "crack_y0", "crack_x1", "crack_y1"}},
    {"material",
     {"density", "bulk_modulus", "poisson_ratio", "fracture_toughness",
      "horizon", "influence", "hydrostatic_kind", "inflection"}},
    {"discretization", {"h", "dt", "t_end", "quadrature_order",
                        "skip_cfl_check"}},
    {"bc", {"collar_thickness", "bottom_velocity", "mode"}},
    {"ic", {"mode", "amplitude"}},
    {"output", {"directory", "cadence", "write_vtk"}},
    {"study", {"mesh_sizes", "comparison_times"}},
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

Config parse_config(const std::string& text) {
  Config cfg;
  std::set<std::string> seen;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  // Crack endpoints arrive as four separate keys.
  double cx0 = 0, cy0 = 0, cx1 = 0, cy1 = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!kKnownKeys.count(section))
        fail(line_no, "unknown section [" + section + "]");
      continue;
    }
    if (section.empty()) fail(line_no, "key before any [section] header");

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string path = section + "." + key;

    const auto& known = kKnownKeys.at(section);
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      std::string best = known.front();
      int best_d = edit_distance(key, best);
      for (const auto& k : known) {
        const int d = edit_distance(key, k);
        if (d < best_d) {
          best = k;
          best_d = d;
        }
      }
      fail(line_no, "unknown key '" + path + "'; did you mean '" + section +
                        "." + best + "'?");
    }
    if (!seen.insert(path).second) fail(line_no, "duplicate key " + path);

    if (section == "domain") {
      if (key == "width") cfg.width = parse_double(value, line_no, path);
      else if (key == "height") cfg.height = parse_double(value, line_no, path);
      else if (key == "crack_x0") cx0 = parse_double(value, line_no, path);
      else if (key == "crack_y0") cy0 = parse_double(value, line_no, path);
      else if (key == "crack_x1") cx1 = parse_double(value, line_no, path);
      else if (key == "crack_y1") cy1 = parse_double(value, line_no, path);
    } else if (section == "material") {
      if (key == "density") cfg.density = parse_double(value, line_no, path);
      else if (key == "bulk_modulus")
        cfg.bulk_modulus = parse_double(value, line_no, path);
      else if (key == "poisson_ratio")
        cfg.poisson_ratio = parse_double(value, line_no, path);
      else if (key == "fracture_toughness")
        cfg.fracture_toughness = parse_double(value, line_no, path);
      else if (key == "horizon")
        cfg.horizon = parse_double(value, line_no, path);
      else if (key == "influence") {
        if (value == "one_minus_r")
          cfg.influence = InfluenceFunction::Kind::OneMinusR;
        else if (value == "const")
          cfg.influence = InfluenceFunction::Kind::Const;
        else
          fail(line_no, path + " must be one_minus_r or const");
      } else if (key == "hydrostatic_kind") {
        if (value == "quadratic")
          cfg.hydrostatic_kind = HydrostaticPotential::Kind::Quadratic;
        else if (value == "convex_concave")
          cfg.hydrostatic_kind = HydrostaticPotential::Kind::ConvexConcave;
        else
          fail(line_no, path + " must be quadratic or convex_concave");
      } else if (key == "inflection") {
        if (value == "analytic")
          cfg.inflection = InflectionConvention::Analytic;
        else if (value == "stated")
          cfg.inflection = InflectionConvention::Stated;
        else
          fail(line_no, path + " must be analytic or stated");
      }
    } else if (section == "discretization") {
      if (key == "h") cfg.h = parse_double(value, line_no, path);
      else if (key == "dt") cfg.dt = parse_double(value, line_no, path);
      else if (key == "t_end") cfg.t_end = parse_double(value, line_no, path);
      else if (key == "quadrature_order")
        cfg.quadrature_order =
            static_cast<int>(parse_int(value, line_no, path));
      else if (key == "skip_cfl_check")
        cfg.skip_cfl_check = parse_bool(value, line_no, path);
    } else if (section == "bc") {
      if (key == "collar_thickness")
        cfg.collar_thickness = parse_double(value, line_no, path);
      else if (key == "bottom_velocity")
        cfg.bottom_velocity = parse_double(value, line_no, path);
      else if (key == "mode") cfg.bc_mode = value;
    } else if (section == "ic") {
      if (key == "mode") cfg.ic_mode = value;
      else if (key == "amplitude")
        cfg.ic_amplitude = parse_double(value, line_no, path);
    } else if (section == "output") {
      if (key == "directory") cfg.output_dir = value;
      else if (key == "cadence") cfg.cadence = parse_int(value, line_no, path);
      else if (key == "write_vtk")
        cfg.write_vtk_files = parse_bool(value, line_no, path);
    } else if (section == "study") {
      if (key == "mesh_sizes")
        cfg.study_mesh_sizes = parse_list(value, line_no, path);
      else if (key == "comparison_times")
        cfg.study_times = parse_list(value, line_no, path);
    }
  }

  const char* required[] = {
      "domain.width",        "domain.height",
      "material.density",    "material.bulk_modulus",
      "material.poisson_ratio", "material.fracture_toughness",
      "material.horizon",    "discretization.h",
      "discretization.dt",   "discretization.t_end",
  };
  for (const char* key : required)
    if (!seen.count(key))
      throw ConfigError(std::string("missing required key ") + key);

  const int crack_keys = seen.count("domain.crack_x0") +
                         seen.count("domain.crack_y0") +
                         seen.count("domain.crack_x1") +
                         seen.count("domain.crack_y1");
  if (crack_keys == 4)
    cfg.crack = CrackSegment{{cx0, cy0}, {cx1, cy1}};
  else if (crack_keys != 0)
    throw ConfigError(
        "crack needs all of crack_x0, crack_y0, crack_x1, crack_y1");

  validate_config(cfg);
  return cfg;
}

void validate_config(const Config& cfg) {
  const auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(cfg.width > 0.0, "domain.width must be positive");
  require(cfg.height > 0.0, "domain.height must be positive");
  require(cfg.density > 0.0, "material.density must be positive");
  require(cfg.bulk_modulus > 0.0, "material.bulk_modulus must be positive");
  require(cfg.poisson_ratio > -1.0 && cfg.poisson_ratio < 0.5,
          "material.poisson_ratio must lie in (-1, 0.5)");
  require(cfg.fracture_toughness > 0.0,
          "material.fracture_toughness must be positive");
  require(cfg.horizon > 0.0, "material.horizon must be positive");
  require(cfg.h > 0.0, "discretization.h must be positive");
  require(cfg.dt > 0.0, "discretization.dt must be positive");
  require(cfg.t_end >= cfg.dt, "discretization.t_end must be at least dt");
  require(cfg.quadrature_order == 2,
          "discretization.quadrature_order: only order 2 is supported");
  require(cfg.cadence >= 1, "output.cadence must be at least 1");
  require(cfg.bc_mode == "crack_drive" || cfg.bc_mode == "none",
          "bc.mode must be crack_drive or none");
  require(cfg.ic_mode == "zero" || cfg.ic_mode == "smooth_bump",
          "ic.mode must be zero or smooth_bump");
  if (cfg.crack) {
    require(cfg.crack->p0.x >= 0.0 && cfg.crack->p0.x <= cfg.width &&
                cfg.crack->p1.x >= 0.0 && cfg.crack->p1.x <= cfg.width &&
                cfg.crack->p0.y >= 0.0 && cfg.crack->p0.y <= cfg.height &&
                cfg.crack->p1.y >= 0.0 && cfg.crack->p1.y <= cfg.height,
            "domain crack must lie inside the domain");
  }
}

std::string emit_config(const Config& cfg) {
  std::ostringstream out;
  out << "[domain]\n";
  out << "width = " << fmt(cfg.width) << "\n";
  out << "height = " << fmt(cfg.height) << "\n";
  if (cfg.crack) {
    out << "crack_x0 = " << fmt(cfg.crack->p0.x) << "\n";
    out << "crack_y0 = " << fmt(cfg.crack->p0.y) << "\n";
    out << "crack_x1 = " << fmt(cfg.crack->p1.x) << "\n";
    out << "crack_y1 = " << fmt(cfg.crack->p1.y) << "\n";
  }
  out << "\n[material]\n";
  out << "density = " << fmt(cfg.density) << "\n";
  out << "bulk_modulus = " << fmt(cfg.bulk_modulus) << "\n";
  out << "poisson_ratio = " << fmt(cfg.poisson_ratio) << "\n";
  out << "fracture_toughness = " << fmt(cfg.fracture_toughness) << "\n";
  out << "horizon = " << fmt(cfg.horizon) << "\n";
  out << "influence = "
      << (cfg.influence == InfluenceFunction::Kind::OneMinusR ? "one_minus_r"
                                                              : "const")
      << "\n";
  out << "hydrostatic_kind = "
      << (cfg.hydrostatic_kind == HydrostaticPotential::Kind::Quadratic
              ? "quadratic"
              : "convex_concave")
      << "\n";
  out << "inflection = "
      << (cfg.inflection == InflectionConvention::Analytic ? "analytic"
                                                           : "stated")
      << "\n";
  out << "\n[discretization]\n";
  out << "h = " << fmt(cfg.h) << "\n";
  out << "dt = " << fmt(cfg.dt) << "\n";
  out << "t_end = " << fmt(cfg.t_end) << "\n";
  out << "quadrature_order = " << cfg.quadrature_order << "\n";
  out << "skip_cfl_check = " << (cfg.skip_cfl_check ? "true" : "false")
      << "\n";
  out << "\n[bc]\n";
  out << "collar_thickness = " << fmt(cfg.collar_thickness) << "\n";
  out << "bottom_velocity = " << fmt(cfg.bottom_velocity) << "\n";
  out << "mode = " << cfg.bc_mode << "\n";
  out << "\n[ic]\n";
  out << "mode = " << cfg.ic_mode << "\n";
  out << "amplitude = " << fmt(cfg.ic_amplitude) << "\n";
  out << "\n[output]\n";
  out << "directory = " << cfg.output_dir << "\n";
  out << "cadence = " << cfg.cadence << "\n";
  out << "write_vtk = " << (cfg.write_vtk_files ? "true" : "false") << "\n";
  if (!cfg.study_mesh_sizes.empty() || !cfg.study_times.empty()) {
    out << "\n[study]\n";
    const auto list = [&](const std::vector<double>& v) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += fmt(v[i]);
      }
      return s;
    };
    if (!cfg.study_mesh_sizes.empty())
      out << "mesh_sizes = " << list(cfg.study_mesh_sizes) << "\n";
    if (!cfg.study_times.empty())
      out << "comparison_times = " << list(cfg.study_times) << "\n";
  }
  return out.str();
}

}  // namespace perifrac
