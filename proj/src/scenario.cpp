#include "relay/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "textio.hpp"

namespace relay {
namespace {

int ceil_cells(double extent, double cell) {
  return static_cast<int>(std::ceil(extent / cell - 1e-9));
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
      ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

struct IntParam { const char* name; int Params::*field; };
struct RealParam { const char* name; double Params::*field; };

constexpr IntParam kIntParams[] = {
    {"fault_tolerance", &Params::fault_tolerance},
    {"max_hops", &Params::max_hops},
    {"max_antennas_gateway", &Params::max_antennas_gateway},
    {"max_antennas_sensor", &Params::max_antennas_sensor},
    {"max_antennas_relay", &Params::max_antennas_relay},
    {"max_links_per_pole", &Params::max_links_per_pole},
    {"orientations", &Params::orientations},
};

constexpr RealParam kRealParams[] = {
    {"antenna_cost", &Params::antenna_cost},
    {"link_penalty", &Params::link_penalty},
    {"pole_cost_base", &Params::pole_cost_base},
    {"rho", &Params::rho},
    {"beam_halfwidth", &Params::beam_halfwidth},
    {"radio_range", &Params::radio_range},
};

// Canonical param emission order.
constexpr const char* kParamOrder[] = {
    "fault_tolerance", "max_hops",       "max_antennas_gateway",
    "max_antennas_sensor", "max_antennas_relay", "max_links_per_pole",
    "antenna_cost",    "link_penalty",   "pole_cost_base",
    "rho",             "orientations",   "beam_halfwidth",
    "radio_range"};

}  // namespace

int Scenario::grid_cols() const { return ceil_cells(x_max, cell_size); }
int Scenario::grid_rows() const { return ceil_cells(y_max, cell_size); }

double Scenario::terrain_at(double x, double y) const {
  const int cols = grid_cols(), rows = grid_rows();
  if (cols <= 0 || rows <= 0 || elevation.empty()) return 0;
  auto axis = [](double v, double cell, int n) {
    double g = v / cell - 0.5;
    g = std::clamp(g, 0.0, static_cast<double>(n - 1));
    int lo = std::min(static_cast<int>(g), n - 1);
    return std::pair<int, double>{lo, g - lo};
  };
  auto [c0, tx] = axis(x, cell_size, cols);
  auto [r0, ty] = axis(y, cell_size, rows);
  const int c1 = std::min(c0 + 1, cols - 1);
  const int r1 = std::min(r0 + 1, rows - 1);
  const double v00 = elevation[r0][c0], v01 = elevation[r0][c1];
  const double v10 = elevation[r1][c0], v11 = elevation[r1][c1];
  const double top = v00 + (v01 - v00) * tx;
  const double bot = v10 + (v11 - v10) * tx;
  return top + (bot - top) * ty;
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  bool saw_ma = false, saw_elevation = false;
  std::vector<std::string> seen_params;

  std::vector<std::pair<int, std::string_view>> lines;  // (1-based line, body)
  {
    int n = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
      size_t eol = text.find('\n', pos);
      std::string_view line = text.substr(
          pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
      ++n;
      if (size_t h = line.find('#'); h != std::string_view::npos)
        line = line.substr(0, h);
      if (!split_ws(line).empty()) lines.emplace_back(n, line);
      if (eol == std::string_view::npos) break;
      pos = eol + 1;
    }
  }

  auto want_real = [](int ln, std::string_view tok) {
    auto v = parse_real(tok);
    if (!v) throw ScenarioError(ln, "expected a number, got '" + std::string(tok) + "'");
    return *v;
  };

  size_t li = 0;
  while (li < lines.size()) {
    auto [ln, line] = lines[li];
    auto tok = split_ws(line);
    const std::string key(tok[0]);
    auto arity = [&](size_t n) {
      if (tok.size() != n + 1)
        throw ScenarioError(ln, key + " takes " + std::to_string(n) + " values");
    };

    if (key == "ma") {
      if (saw_ma) throw ScenarioError(ln, "duplicate ma");
      arity(3);
      s.x_max = want_real(ln, tok[1]);
      s.y_max = want_real(ln, tok[2]);
      s.cell_size = want_real(ln, tok[3]);
      if (s.x_max <= 0 || s.y_max <= 0 || s.cell_size <= 0)
        throw ScenarioError(ln, "ma extents and cell_size must be positive");
      saw_ma = true;
    } else if (key == "pole_height") {
      arity(1);
      s.pole_height = want_real(ln, tok[1]);
    } else if (key == "param") {
      arity(2);
      const std::string name(tok[1]);
      if (std::find(seen_params.begin(), seen_params.end(), name) != seen_params.end())
        throw ScenarioError(ln, "duplicate param " + name);
      seen_params.push_back(name);
      const double v = want_real(ln, tok[2]);
      bool known = false;
      for (const auto& ip : kIntParams) {
        if (name == ip.name) {
          if (v != std::floor(v))
            throw ScenarioError(ln, "param " + name + " must be an integer");
          s.params.*ip.field = static_cast<int>(v);
          known = true;
        }
      }
      for (const auto& rp : kRealParams) {
        if (name == rp.name) {
          s.params.*rp.field = v;
          known = true;
        }
      }
      if (!known) throw ScenarioError(ln, "unknown param " + name);
    } else if (key == "elevation") {
      arity(0);
      if (!saw_ma) throw ScenarioError(ln, "elevation before ma");
      if (saw_elevation) throw ScenarioError(ln, "duplicate elevation");
      saw_elevation = true;
      const int rows = s.grid_rows(), cols = s.grid_cols();
      for (int r = 0; r < rows; ++r) {
        if (li + 1 >= lines.size())
          throw ScenarioError(ln, "elevation: expected " + std::to_string(rows) +
                                      " rows, got " + std::to_string(r));
        auto [rln, rline] = lines[++li];
        auto vals = split_ws(rline);
        if (!parse_real(vals[0]))  // a directive where a row should be
          throw ScenarioError(rln, "elevation: expected " + std::to_string(rows) +
                                       " rows, got " + std::to_string(r));
        std::vector<double> row;
        row.reserve(vals.size());
        for (auto t : vals) {
          auto v = parse_real(t);
          if (!v)
            throw ScenarioError(rln, "bad elevation value '" + std::string(t) + "'");
          row.push_back(*v);
        }
        if (static_cast<int>(row.size()) != cols)
          throw ScenarioError(rln, "elevation row has " + std::to_string(row.size()) +
                                       " values, grid needs " + std::to_string(cols));
        s.elevation.push_back(std::move(row));
      }
    } else if (key == "obstacle") {
      arity(5);
      Obstacle o;
      o.footprint = {want_real(ln, tok[1]), want_real(ln, tok[2]),
                     want_real(ln, tok[3]), want_real(ln, tok[4])};
      o.height = want_real(ln, tok[5]);
      s.obstacles.push_back(o);
    } else if (key == "forbid_place") {
      arity(4);
      s.forbidden_placement.push_back({want_real(ln, tok[1]), want_real(ln, tok[2]),
                                       want_real(ln, tok[3]), want_real(ln, tok[4])});
    } else if (key == "forbid_link") {
      arity(6);
      s.forbidden_link.push_back({want_real(ln, tok[1]), want_real(ln, tok[2]),
                                  want_real(ln, tok[3]), want_real(ln, tok[4]),
                                  want_real(ln, tok[5]), want_real(ln, tok[6])});
    } else if (key == "sensor" || key == "gateway") {
      arity(2);
      FixedPole p;
      p.pos = {want_real(ln, tok[1]), want_real(ln, tok[2])};
      p.kind = key == "sensor" ? PoleKind::Sensor : PoleKind::Gateway;
      if (!saw_ma) throw ScenarioError(ln, key + " before ma");
      if (!s.inside_ma(p.pos.x, p.pos.y))
        throw ScenarioError(ln, key + " at (" + fmt_real(p.pos.x) + ", " +
                                    fmt_real(p.pos.y) + ") is outside the MA");
      (key == "sensor" ? s.sensors : s.gateways).push_back(p);
    } else {
      throw ScenarioError(ln, "unknown directive '" + key + "'");
    }
    ++li;
  }

  if (!saw_ma) throw ScenarioError(1, "missing ma directive");
  const int rows = s.grid_rows();
  if (static_cast<int>(s.elevation.size()) != rows)
    throw ScenarioError(1, "elevation has " + std::to_string(s.elevation.size()) +
                               " rows, grid needs " + std::to_string(rows));
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  std::string out;
  auto line = [&out](std::initializer_list<std::string> parts) {
    bool first = true;
    for (const auto& p : parts) {
      if (!first) out += ' ';
      out += p;
      first = false;
    }
    out += '\n';
  };

  line({"ma", fmt_real(s.x_max), fmt_real(s.y_max), fmt_real(s.cell_size)});
  line({"pole_height", fmt_real(s.pole_height)});
  const Params& p = s.params;
  for (const char* name : kParamOrder) {
    std::string value;
    for (const auto& ip : kIntParams)
      if (std::string_view(name) == ip.name) value = fmt_int(p.*ip.field);
    for (const auto& rp : kRealParams)
      if (std::string_view(name) == rp.name) value = fmt_real(p.*rp.field);
    line({"param", name, value});
  }
  out += "elevation\n";
  for (const auto& row : s.elevation) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      out += fmt_real(row[c]);
    }
    out += '\n';
  }
  for (const auto& o : s.obstacles)
    line({"obstacle", fmt_real(o.footprint.x0), fmt_real(o.footprint.y0),
          fmt_real(o.footprint.x1), fmt_real(o.footprint.y1), fmt_real(o.height)});
  for (const auto& b : s.forbidden_placement)
    line({"forbid_place", fmt_real(b.x0), fmt_real(b.y0), fmt_real(b.x1),
          fmt_real(b.y1)});
  for (const auto& b : s.forbidden_link)
    line({"forbid_link", fmt_real(b.x0), fmt_real(b.y0), fmt_real(b.x1),
          fmt_real(b.y1), fmt_real(b.z0), fmt_real(b.z1)});
  for (const auto& f : s.sensors) line({"sensor", fmt_real(f.pos.x), fmt_real(f.pos.y)});
  for (const auto& f : s.gateways) line({"gateway", fmt_real(f.pos.x), fmt_real(f.pos.y)});
  return out;
}

std::vector<std::string> validate_scenario(const Scenario& s) {
  std::vector<std::string> v;
  auto bad = [&v](const std::string& msg) { v.push_back(msg); };

  if (s.x_max <= 0 || s.y_max <= 0) bad("x_max/y_max: MA extents must be positive");
  if (s.cell_size <= 0) bad("cell_size: must be positive");
  if (s.pole_height <= 0) bad("pole_height: must be positive");

  if (s.cell_size > 0) {
    const int rows = s.grid_rows(), cols = s.grid_cols();
    if (static_cast<int>(s.elevation.size()) != rows)
      bad("elevation: " + std::to_string(s.elevation.size()) + " rows, grid needs " +
          std::to_string(rows));
    for (size_t r = 0; r < s.elevation.size(); ++r)
      if (static_cast<int>(s.elevation[r].size()) != cols)
        bad("elevation: row " + std::to_string(r) + " has " +
            std::to_string(s.elevation[r].size()) + " values, grid needs " +
            std::to_string(cols));
  }

  auto check_fixed = [&](const FixedPole& f, const std::string& what, size_t idx) {
    const std::string tag = what + " " + std::to_string(idx);
    if (!s.inside_ma(f.pos.x, f.pos.y)) bad(tag + ": position outside the MA");
    for (size_t b = 0; b < s.forbidden_placement.size(); ++b)
      if (s.forbidden_placement[b].contains(f.pos.x, f.pos.y))
        bad(tag + ": inside forbidden placement area " + std::to_string(b));
  };
  for (size_t i = 0; i < s.sensors.size(); ++i) check_fixed(s.sensors[i], "sensor", i);
  for (size_t i = 0; i < s.gateways.size(); ++i) check_fixed(s.gateways[i], "gateway", i);

  std::vector<std::pair<Point2, std::string>> fixed;
  for (size_t i = 0; i < s.sensors.size(); ++i)
    fixed.emplace_back(s.sensors[i].pos, "sensor " + std::to_string(i));
  for (size_t i = 0; i < s.gateways.size(); ++i)
    fixed.emplace_back(s.gateways[i].pos, "gateway " + std::to_string(i));
  for (size_t i = 0; i < fixed.size(); ++i)
    for (size_t j = i + 1; j < fixed.size(); ++j)
      if (fixed[i].first == fixed[j].first)
        bad(fixed[i].second + "/" + fixed[j].second + ": duplicate position");

  auto box_ok = [&bad](double x0, double y0, double x1, double y1,
                       const std::string& tag) {
    if (!(x0 < x1 && y0 < y1)) bad(tag + ": needs x0<x1 and y0<y1");
  };
  for (size_t i = 0; i < s.obstacles.size(); ++i) {
    const auto& o = s.obstacles[i];
    const std::string tag = "obstacle " + std::to_string(i);
    box_ok(o.footprint.x0, o.footprint.y0, o.footprint.x1, o.footprint.y1, tag);
    if (o.height <= 0) bad(tag + ": height must be positive");
  }
  for (size_t i = 0; i < s.forbidden_placement.size(); ++i) {
    const auto& b = s.forbidden_placement[i];
    box_ok(b.x0, b.y0, b.x1, b.y1, "forbid_place " + std::to_string(i));
  }
  for (size_t i = 0; i < s.forbidden_link.size(); ++i) {
    const auto& b = s.forbidden_link[i];
    const std::string tag = "forbid_link " + std::to_string(i);
    box_ok(b.x0, b.y0, b.x1, b.y1, tag);
    if (!(b.z0 < b.z1)) bad(tag + ": needs z0<z1");
  }

  const Params& p = s.params;
  if (p.fault_tolerance < 0) bad("fault_tolerance: must be >= 0");
  if (p.max_hops < 1) bad("max_hops: must be >= 1");
  if (p.max_antennas_gateway < 1) bad("max_antennas_gateway: must be >= 1");
  if (p.max_antennas_sensor < 1) bad("max_antennas_sensor: must be >= 1");
  if (p.max_antennas_relay < 1) bad("max_antennas_relay: must be >= 1");
  if (p.max_links_per_pole < 1) bad("max_links_per_pole: must be >= 1");
  if (p.orientations < 1) bad("orientations: must be >= 1");
  if (p.antenna_cost < 0) bad("antenna_cost: must be >= 0");
  if (p.link_penalty < 0) bad("link_penalty: must be >= 0");
  if (p.pole_cost_base < 0) bad("pole_cost_base: must be >= 0");
  if (!(p.beam_halfwidth > 0 && p.beam_halfwidth <= 180))
    bad("beam_halfwidth: must be in (0, 180]");
  if (p.radio_range <= 0) bad("radio_range: must be positive");
  if (p.fault_tolerance + 1 > p.max_antennas_sensor)
    bad("fault_tolerance: F+1 = " + std::to_string(p.fault_tolerance + 1) +
        " first hops exceed max_antennas_sensor = " +
        std::to_string(p.max_antennas_sensor));
  bool rho_ok = false;
  for (double r : kRhoSweep) rho_ok = rho_ok || std::fabs(p.rho - r) < 1e-9;
  if (!rho_ok) bad("rho: not in the configured sweep set (100%..40%)");

  return v;
}

}  // namespace relay
