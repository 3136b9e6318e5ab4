#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace modcont {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Three-valued verdict used for the dichotomy classifications.  Numeric
// probing is allowed to give up, so "inconclusive" is a first-class answer.
enum class Outcome { Yes, No, Inconclusive };

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    default: return "inconclusive";
  }
}

// Extended real for integral limits.  value may be +-inf.  For limits whose
// extent is finite but whose anchored value at 0 does not exist (singular
// homogeneous families) value is NaN with inconclusive=false.
struct ExtReal {
  double value = kNaN;
  bool inconclusive = false;

  bool is_inconclusive() const { return inconclusive; }
  bool is_infinite() const { return !inconclusive && std::isinf(value); }
  bool finite_extent() const { return !inconclusive && !std::isinf(value); }

  static ExtReal finite(double v) { return {v, false}; }
  static ExtReal pos_inf() { return {kInf, false}; }
  static ExtReal neg_inf() { return {-kInf, false}; }
  static ExtReal finite_unanchored() { return {kNaN, false}; }
  static ExtReal unknown() { return {kNaN, true}; }
};

inline std::string to_string(const ExtReal& e) {
  if (e.inconclusive) return "inconclusive";
  if (e.value == kInf) return "+inf";
  if (e.value == -kInf) return "-inf";
  if (std::isnan(e.value)) return "finite";
  return std::to_string(e.value);
}

}  // namespace modcont
