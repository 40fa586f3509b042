#pragma once

#include <compare>
#include <limits>
#include <string>

namespace epilim {

/// Extended real number: a finite double or one of the sentinels +inf/-inf.
///
/// Ordering is total (NegInf < finite < PosInf). Addition saturates, except
/// that PosInf + NegInf is undefined and throws ErrorCode::ExtendedArithmetic
/// instead of silently producing a value.
class ExtReal {
 public:
  enum class Kind : unsigned char { Finite, PosInf, NegInf };

  constexpr ExtReal() = default;
  /// Non-finite doubles map onto the sentinels; NaN is rejected.
  ExtReal(double v);  // NOLINT(google-explicit-constructor)

  static constexpr ExtReal pos_inf() { return ExtReal(Kind::PosInf); }
  static constexpr ExtReal neg_inf() { return ExtReal(Kind::NegInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }

  /// Finite value; throws if the number is a sentinel.
  double value() const {
    if (kind_ != Kind::Finite) throw_not_finite();
    return value_;
  }

  /// Value as a double, mapping the sentinels to +/-infinity.
  constexpr double to_double() const {
    switch (kind_) {
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      case Kind::Finite: break;
    }
    return value_;
  }

  ExtReal operator-() const;
  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b) { return a + (-b); }
  /// Scaling by a finite nonnegative factor; 0 * inf is treated as 0.
  friend ExtReal scale(double factor, const ExtReal& a);

  friend std::partial_ordering operator<=>(const ExtReal& a, const ExtReal& b) {
    return a.to_double() <=> b.to_double();
  }
  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }

  /// "inf", "-inf" or the shortest round-tripping decimal of the value.
  std::string to_string() const;
  /// Parses the output of to_string(); throws ErrorCode::Io on garbage.
  static ExtReal parse(const std::string& text);

 private:
  constexpr explicit ExtReal(Kind k) : kind_(k) {}
  [[noreturn]] void throw_not_finite() const;

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return b < a ? b : a; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

}  // namespace epilim
