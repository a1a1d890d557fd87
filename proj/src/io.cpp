#include "sweep/io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sweep/error.hpp"

namespace sweep::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing key '") + key + "'");
  return j.at(key);
}

int to_int(const json& j) {
  if (!j.is_number_integer()) parse_error("expected an integer");
  return j.get<int>();
}

json point_json(const Point& p, int d) {
  json a = json::array();
  for (int i = 0; i < d; ++i) a.push_back(number(p[i]));
  return a;
}

Point point_from(const json& j, int d) {
  if (!j.is_array() || int(j.size()) != d) parse_error("point must have " + std::to_string(d) + " coordinates");
  Point p{0, 0, 0};
  for (int i = 0; i < d; ++i) p[i] = to_number(j[std::size_t(i)]);
  return p;
}

Dimension dim_from(const json& j) {
  const int d = to_int(field(j, "d"));
  if (d < 1 || d > 3) parse_error("d must be 1, 2 or 3");
  return Dimension(d);
}

json encode_bits(std::span<const std::uint8_t> bits) {
  json runs = json::array();
  std::uint8_t current = 0;
  std::size_t run = 0;
  for (std::uint8_t b : bits) {
    if (b != current) {
      runs.push_back(run);
      current = b;
      run = 0;
    }
    ++run;
  }
  runs.push_back(run);
  return runs;
}

std::vector<std::uint8_t> decode_bits(const json& runs, std::size_t size) {
  if (!runs.is_array()) parse_error("cells must be an array of run lengths");
  std::vector<std::uint8_t> bits;
  bits.reserve(size);
  std::uint8_t current = 0;
  for (const json& r : runs) {
    if (!r.is_number_unsigned() && !(r.is_number_integer() && r.get<long long>() >= 0)) parse_error("run lengths must be >= 0");
    const auto n = r.get<std::size_t>();
    if (bits.size() + n > size) parse_error("run lengths exceed the grid size");
    bits.insert(bits.end(), n, current);
    current = std::uint8_t(1 - current);
  }
  if (bits.size() != size) parse_error("run lengths do not cover the grid");
  return bits;
}

}  // namespace

json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double to_number(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  parse_error("expected a number");
}

json to_json(const GridSpec& g) {
  const int d = g.dim.value();
  json e = json::array();
  for (int a = 0; a < d; ++a) e.push_back(g.extents[a]);
  return {{"d", d}, {"origin", point_json(g.origin, d)}, {"h", number(g.h)}, {"extents", e}};
}

GridSpec grid_from_json(const json& j) {
  const Dimension d = dim_from(j);
  const Point origin = point_from(field(j, "origin"), d.value());
  const json& e = field(j, "extents");
  if (!e.is_array() || int(e.size()) != d.value()) parse_error("extents must have d entries");
  std::array<int, 3> ext{1, 1, 1};
  for (int a = 0; a < d.value(); ++a) ext[a] = to_int(e[std::size_t(a)]);
  return GridSpec(d, origin, to_number(field(j, "h")), ext);
}

json to_json(const RasterSet& s) {
  json j = to_json(s.grid());
  j["cells"] = encode_bits(s.bits());
  return j;
}

RasterSet raster_from_json(const json& j) {
  const GridSpec g = grid_from_json(j);
  return RasterSet(g, decode_bits(field(j, "cells"), g.size()));
}

json to_json(const Measure& mu) {
  const int d = mu.dim().value();
  json atoms = json::array();
  for (const Atom& a : mu.atoms()) {
    json e = {{"p", point_json(a.point, d)}, {"w", number(a.weight)}};
    if (a.shell > 0.0) e["s"] = number(a.shell);
    atoms.push_back(e);
  }
  json j = {{"d", d}, {"atoms", atoms}};
  if (const auto& part = mu.grid()) {
    json g = to_json(part->grid);
    g.erase("d");
    json runs = json::array();
    const auto& dens = part->density;
    for (std::size_t i = 0; i < dens.size();) {
      std::size_t k = i;
      while (k < dens.size() && dens[k] == dens[i]) ++k;
      runs.push_back(json::array({number(dens[i]), k - i}));
      i = k;
    }
    g["densities"] = runs;
    j["grid"] = g;
  }
  return j;
}

Measure measure_from_json(const json& j) {
  const Dimension d = dim_from(j);
  // A raster document also has "d"; insist on a measure field so the two are not confused.
  if (!j.contains("atoms") && !j.contains("grid")) parse_error("a measure needs \"atoms\" or \"grid\"");
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    const json& arr = j.at("atoms");
    if (!arr.is_array()) parse_error("atoms must be an array");
    for (const json& a : arr) {
      Atom atom{point_from(field(a, "p"), d.value()), to_number(field(a, "w")), 0.0};
      if (a.contains("s")) atom.shell = to_number(a.at("s"));
      atoms.push_back(atom);
    }
  }
  std::optional<GridPart> part;
  if (j.contains("grid") && !j.at("grid").is_null()) {
    json gj = j.at("grid");
    gj["d"] = d.value();
    const GridSpec g = grid_from_json(gj);
    std::vector<double> dens;
    dens.reserve(g.size());
    for (const json& run : field(gj, "densities")) {
      if (!run.is_array() || run.size() != 2) parse_error("density runs are [value, count] pairs");
      const double v = to_number(run[0]);
      const auto n = run[1].get<std::size_t>();
      if (dens.size() + n > g.size()) parse_error("density runs exceed the grid size");
      dens.insert(dens.end(), n, v);
    }
    if (dens.size() != g.size()) parse_error("density runs do not cover the grid");
    part = GridPart{g, std::move(dens)};
  }
  return Measure(d, std::move(atoms), std::move(part));
}

json to_json(const GridFunction& u) {
  json j = to_json(u.domain.mask());
  json vals = json::array();
  for (std::size_t i : u.domain.mask().indices()) vals.push_back(number(u.values[i]));
  j["values"] = vals;
  return j;
}

GridFunction grid_function_from_json(const json& j) {
  RasterDomain dom(raster_from_json(j));
  const json& vals = field(j, "values");
  const auto idx = dom.mask().indices();
  if (!vals.is_array() || vals.size() != idx.size()) parse_error("values must have one entry per mask cell");
  std::vector<double> v(dom.grid().size(), 0.0);
  for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = to_number(vals[k]);
  return GridFunction(std::move(dom), std::move(v));
}

json to_json(const BalayageVerdict& v) {
  json j = {{"relation", to_string(v.relation)},
            {"holds", v.holds},
            {"mass_gap", number(v.mass_gap)},
            {"worst_equality_violation", number(v.worst_equality_violation)},
            {"worst_inequality_violation", number(v.worst_inequality_violation)},
            {"definite_violation", v.definite_violation},
            {"witness", nullptr},
            {"witness_test", v.witness_test},
            {"tolerance", number(v.tolerance)},
            {"equality_samples", v.equality_samples},
            {"inequality_samples", v.inequality_samples}};
  if (v.witness) j["witness"] = point_json(*v.witness, 3);
  return j;
}

json to_json(const CapacityReport& r) {
  return {{"capacity", number(r.capacity)}, {"energy", number(r.energy)}, {"iterations", r.iterations},
          {"gap", number(r.gap)}, {"nodes", r.nodes}};
}

std::vector<Point> points_from_json(const json& j, Dimension& d) {
  d = dim_from(j);
  std::vector<Point> pts;
  const json& arr = field(j, "points");
  if (!arr.is_array()) parse_error("points must be an array");
  for (const json& p : arr) pts.push_back(point_from(p, d.value()));
  return pts;
}

void write_pgm(std::ostream& out, const RasterSet& s) {
  const GridSpec& g = s.grid();
  if (g.dim.value() != 2) throw Error(ErrorKind::DimensionMismatch, "PGM export needs d = 2");
  const int nx = g.extents[0], ny = g.extents[1];
  out << "P5\n" << nx << " " << ny << "\n255\n";
  for (int row = 0; row < ny; ++row) {
    const int j = ny - 1 - row;
    for (int i = 0; i < nx; ++i) out.put(s.contains(g.index({i, j, 0})) ? char(255) : char(0));
  }
}

RasterSet read_pgm(std::istream& in, const Point& origin, double h) {
  auto token = [&]() {
    std::string t;
    while (in >> std::ws && in.peek() == '#') in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
    in >> t;
    return t;
  };
  if (token() != "P5") parse_error("not a binary PGM (P5)");
  int nx = 0, ny = 0, maxval = 0;
  try {
    nx = std::stoi(token());
    ny = std::stoi(token());
    maxval = std::stoi(token());
  } catch (const std::exception&) {
    parse_error("bad PGM header");
  }
  if (nx < 1 || ny < 1 || maxval < 1 || maxval > 255) parse_error("unsupported PGM header");
  in.get();
  const GridSpec g(Dimension(2), origin, h, {nx, ny, 1});
  RasterSet s(g);
  for (int row = 0; row < ny; ++row)
    for (int i = 0; i < nx; ++i) {
      const int c = in.get();
      if (c == EOF) parse_error("truncated PGM data");
      if (c > maxval / 2) s.insert(g.index({i, ny - 1 - row, 0}));
    }
  return s;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) parse_error("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    parse_error(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + path);
  f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sweep::io

namespace sweep::io {

MeasureField field_from_json(const json& j, Dimension d) {
  if (!j.is_object()) parse_error("field must be an object");
  const std::string kind = field(j, "kind").get<std::string>();
  MeasureField::Base base = std::monostate{};
  if (j.contains("base")) {
    const json& b = j.at("base");
    if (b.contains("points")) {
      std::vector<Point> pts;
      for (const json& p : b.at("points")) pts.push_back(point_from(p, d.value()));
      base = std::move(pts);
    } else {
      base = raster_from_json(b);
    }
  }
  if (kind == "shift") return MeasureField(ShiftField{measure_from_json(field(j, "theta"))}, std::move(base));
  if (kind == "sphere") return MeasureField(SphereField{to_number(field(j, "radius")), to_int(field(j, "nodes"))}, std::move(base));
  if (kind == "ball") return MeasureField(BallField{to_number(field(j, "radius"))}, std::move(base));
  if (kind == "table") {
    TableField t;
    for (const json& e : field(j, "entries")) t.entries.emplace_back(point_from(field(e, "x"), d.value()), measure_from_json(field(e, "measure")));
    return MeasureField(std::move(t), std::move(base));
  }
  parse_error("unknown field kind '" + kind + "'");
}

std::vector<Example5Atom> example5_atoms_from_json(const json& j, Dimension d) {
  const json& arr = j.is_array() ? j : field(j, "atoms");
  if (!arr.is_array()) parse_error("atoms must be an array");
  std::vector<Example5Atom> out;
  for (const json& a : arr) out.push_back({point_from(field(a, "center"), d.value()), to_number(field(a, "radius"))});
  return out;
}

}  // namespace sweep::io
