#pragma once

#include <iosfwd>
#include <string>

#include "epilim/grid_fn.hpp"

namespace epilim {

/// Shortest round-tripping decimal for a double ("inf"/"-inf" for sentinels).
std::string format_double(double v);

/// CSV with header `x,value`; sentinels are written as `inf` / `-inf`.
void write_csv(std::ostream& out, const GridFn& f);
/// Reads write_csv output. The x column must describe a uniform odd grid.
GridFn read_csv(std::istream& in);

/// JSON mirror: {"x": [...], "value": [...]}, sentinels as the strings
/// "inf" / "-inf".
std::string to_json(const GridFn& f);
GridFn grid_fn_from_json(const std::string& text);

}  // namespace epilim
