#include "epilim/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "epilim/error.hpp"

namespace epilim {
namespace {

GridFn from_columns(const std::vector<double>& xs, std::vector<ExtReal> vals) {
  if (xs.size() < 3) throw Error(ErrorCode::Io, "need at least 3 samples");
  Grid1D grid(xs.front(), xs.back(), xs.size());
  if (grid.count() != xs.size()) throw Error(ErrorCode::Io, "sample count must be odd");
  const double tol = 1e-9 * grid.spacing();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - grid.point(i)) > tol) {
      throw Error(ErrorCode::Io, "x column is not a uniform grid");
    }
  }
  return GridFn(grid, std::move(vals), NegInfPolicy::Allow);
}

}  // namespace

std::string format_double(double v) { return ExtReal(v).to_string(); }

void write_csv(std::ostream& out, const GridFn& f) {
  out << "x,value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    out << format_double(f.grid().point(i)) << ',' << f[i].to_string() << '\n';
  }
}

GridFn read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,value", 0) != 0) {
    throw Error(ErrorCode::Io, "missing 'x,value' header");
  }
  std::vector<double> xs;
  std::vector<ExtReal> vals;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::Io, "malformed row '" + line + "'");
    xs.push_back(ExtReal::parse(line.substr(0, comma)).value());
    vals.push_back(ExtReal::parse(line.substr(comma + 1)));
  }
  return from_columns(xs, std::move(vals));
}

std::string to_json(const GridFn& f) {
  nlohmann::ordered_json j;
  j["x"] = nlohmann::json::array();
  j["value"] = nlohmann::json::array();
  for (std::size_t i = 0; i < f.size(); ++i) {
    j["x"].push_back(f.grid().point(i));
    if (f[i].is_finite()) {
      j["value"].push_back(f[i].value());
    } else {
      j["value"].push_back(f[i].to_string());
    }
  }
  return j.dump();
}

GridFn grid_fn_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Io, e.what());
  }
  if (!j.contains("x") || !j.contains("value") || j["x"].size() != j["value"].size()) {
    throw Error(ErrorCode::Io, "expected equal-length 'x' and 'value' arrays");
  }
  std::vector<double> xs;
  std::vector<ExtReal> vals;
  for (const auto& x : j["x"]) xs.push_back(x.get<double>());
  for (const auto& v : j["value"]) {
    vals.push_back(v.is_string() ? ExtReal::parse(v.get<std::string>()) : ExtReal(v.get<double>()));
  }
  return from_columns(xs, std::move(vals));
}

}  // namespace epilim
