#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace minorlab {

// Ordinals below omega^2, stored as omega*a + b.
class Ordinal {
 public:
  constexpr Ordinal() = default;
  constexpr Ordinal(int omega_coeff, int finite) : a_(omega_coeff), b_(finite) {}

  static constexpr Ordinal finite(int n) { return Ordinal(0, n); }
  static constexpr Ordinal omega(int times = 1, int plus = 0) { return Ordinal(times, plus); }

  constexpr int omega_coeff() const { return a_; }
  constexpr int finite_part() const { return b_; }
  constexpr bool is_finite() const { return a_ == 0; }
  constexpr bool is_zero() const { return a_ == 0 && b_ == 0; }
  constexpr Ordinal successor() const { return Ordinal(a_, b_ + 1); }
  // Predecessor of a successor ordinal; limits and zero are returned unchanged.
  constexpr Ordinal predecessor() const { return b_ > 0 ? Ordinal(a_, b_ - 1) : *this; }

  // Cantor normal form as (exponent, coefficient) pairs, exponents descending.
  std::vector<std::pair<int, int>> cnf() const {
    std::vector<std::pair<int, int>> out;
    if (a_ > 0) out.emplace_back(1, a_);
    if (b_ > 0) out.emplace_back(0, b_);
    return out;
  }

  // "0", "3", "w", "w+2", "w*2+1".
  std::string to_string() const {
    if (a_ == 0) return std::to_string(b_);
    std::string s = "w";
    if (a_ > 1) s += "*" + std::to_string(a_);
    if (b_ > 0) s += "+" + std::to_string(b_);
    return s;
  }

  friend constexpr auto operator<=>(const Ordinal&, const Ordinal&) = default;

 private:
  int a_ = 0;
  int b_ = 0;
};

}  // namespace minorlab
