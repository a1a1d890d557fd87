#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sweep/balayage.hpp"
#include "sweep/capacity.hpp"
#include "sweep/potential.hpp"

namespace sweep::io {

using nlohmann::json;

// Non-finite numbers travel as the strings "inf", "-inf", "nan".
json number(double v);
double to_number(const json& j);

json to_json(const GridSpec& g);
GridSpec grid_from_json(const json& j);

// {d, origin, h, extents, cells}; cells alternate run lengths, zeros first.
json to_json(const RasterSet& s);
RasterSet raster_from_json(const json& j);

json to_json(const Measure& mu);
Measure measure_from_json(const json& j);

// Raster fields plus "values": one entry per mask cell in index order.
json to_json(const GridFunction& u);
GridFunction grid_function_from_json(const json& j);

json to_json(const BalayageVerdict& v);
json to_json(const CapacityReport& r);

// {"d": 2, "points": [[x, y], ...]}
std::vector<Point> points_from_json(const json& j, Dimension& d);

// d = 2 PGM (P5); row 0 is the top (largest y); 0 outside, 255 inside.
void write_pgm(std::ostream& out, const RasterSet& s);
RasterSet read_pgm(std::istream& in, const Point& origin, double h);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump(const json& j);

}  // namespace sweep::io

namespace sweep::io {

// {"kind": "shift", "theta": measure} | {"kind": "sphere", "radius", "nodes"} |
// {"kind": "ball", "radius"} | {"kind": "table", "entries": [{"x", "measure"}]};
// optional "base": {"points": [...]} or a raster.
MeasureField field_from_json(const json& j, Dimension d);

// {"atoms": [{"center": [...], "radius": r}, ...]}
std::vector<Example5Atom> example5_atoms_from_json(const json& j, Dimension d);

}  // namespace sweep::io
