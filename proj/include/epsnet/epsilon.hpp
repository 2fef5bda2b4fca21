#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>

#include "epsnet/geometry.hpp"

namespace epsnet {

/// Stretch tolerance epsilon > 0, where infinity (feasibility only) is a distinct value
/// rather than a large float.
class Epsilon {
 public:
  explicit Epsilon(double value) : value_(value) {
    if (std::isnan(value) || value <= 0.0) throw DomainError("epsilon must be > 0");
  }
  static Epsilon infinity() { return Epsilon(std::numeric_limits<double>::infinity()); }

  static Epsilon parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "Inf") return infinity();
    std::istringstream in{std::string(text)};
    double v = 0.0;
    if (!(in >> v) || !in.eof()) throw DomainError("cannot parse epsilon '" + std::string(text) + "'");
    return Epsilon(v);
  }

  bool is_infinite() const { return std::isinf(value_); }
  double value() const { return value_; }
  /// 1/epsilon, exactly 0 at infinity.
  double inverse() const { return is_infinite() ? 0.0 : 1.0 / value_; }

  /// alpha = eps / sqrt(1 + eps^2), with alpha = 1 at infinity.
  double alpha() const {
    if (is_infinite()) return 1.0;
    if (value_ > 1.0) return 1.0 / std::sqrt(1.0 + 1.0 / (value_ * value_));
    return value_ / std::sqrt(1.0 + value_ * value_);
  }

  std::string to_string() const {
    if (is_infinite()) return "inf";
    std::ostringstream out;
    out.precision(17);
    out << value_;
    return out.str();
  }

 private:
  double value_;
};

}  // namespace epsnet
