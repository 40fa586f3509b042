#include "epilim/ext_real.hpp"

#include <charconv>
#include <cmath>

#include "epilim/error.hpp"

namespace epilim {

ExtReal::ExtReal(double v) {
  if (std::isnan(v)) throw Error(ErrorCode::ExtendedArithmetic, "NaN is not an extended real");
  if (std::isinf(v)) {
    kind_ = v > 0 ? Kind::PosInf : Kind::NegInf;
  } else {
    value_ = v;
  }
}

void ExtReal::throw_not_finite() const {
  throw Error(ErrorCode::ExtendedArithmetic, "value() of " + to_string());
}

ExtReal ExtReal::operator-() const {
  switch (kind_) {
    case Kind::PosInf: return neg_inf();
    case Kind::NegInf: return pos_inf();
    case Kind::Finite: break;
  }
  return ExtReal(-value_);
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw Error(ErrorCode::ExtendedArithmetic, "inf + (-inf) is undefined");
  }
  if (a.is_pos_inf() || b.is_pos_inf()) return ExtReal::pos_inf();
  if (a.is_neg_inf() || b.is_neg_inf()) return ExtReal::neg_inf();
  return ExtReal(a.value_ + b.value_);
}

ExtReal scale(double factor, const ExtReal& a) {
  if (!(factor >= 0.0) || std::isinf(factor)) {
    throw Error(ErrorCode::BadParameter, "scale factor must be finite and nonnegative");
  }
  if (factor == 0.0) return ExtReal(0.0);
  if (!a.is_finite()) return a;
  return ExtReal(factor * a.value_);
}

std::string ExtReal::to_string() const {
  if (is_pos_inf()) return "inf";
  if (is_neg_inf()) return "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value_);
  return std::string(buf, res.ptr);
}

ExtReal ExtReal::parse(const std::string& text) {
  if (text == "inf" || text == "+inf" || text == "Infinity") return pos_inf();
  if (text == "-inf" || text == "-Infinity") return neg_inf();
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::Io, "cannot parse extended real '" + text + "'");
  }
  return ExtReal(v);
}

}  // namespace epilim
