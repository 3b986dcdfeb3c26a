#pragma once
#include <compare>
#include <functional>
#include <string>

namespace motivic {

// (s, w): stem and motivic weight
struct Deg {
  int s = 0, w = 0;
  Deg operator+(Deg o) const { return {s + o.s, w + o.w}; }
  Deg operator-(Deg o) const { return {s - o.s, w - o.w}; }
  Deg operator-() const { return {-s, -w}; }
  Deg operator*(int k) const { return {s * k, w * k}; }
  auto operator<=>(const Deg&) const = default;
  // connectivity grading: every positive-degree operation strictly raises it
  int h() const { return -(s + w); }
  std::string str() const { return "(" + std::to_string(s) + "," + std::to_string(w) + ")"; }
};

// (s, f, w): stem, Adams filtration, weight; t = s + f is derived
struct Deg3 {
  int s = 0, f = 0, w = 0;
  int t() const { return s + f; }
  auto operator<=>(const Deg3&) const = default;
  std::string str() const {
    return "(" + std::to_string(s) + "," + std::to_string(f) + "," + std::to_string(w) + ")";
  }
};

// box window; f range only used by Ext-level objects
struct Window {
  int s_min = -6, s_max = 10;
  int f_max = 6;
  int w_min = -8, w_max = 8;
  bool operator==(const Window&) const = default;
  bool contains(Deg3 d) const {
    return d.s >= s_min && d.s <= s_max && d.f >= 0 && d.f <= f_max && d.w >= w_min &&
           d.w <= w_max;
  }
};

}  // namespace motivic

template <>
struct std::hash<motivic::Deg> {
  size_t operator()(const motivic::Deg& d) const noexcept {
    return std::hash<long long>()((static_cast<long long>(d.s) << 32) ^ static_cast<unsigned>(d.w));
  }
};
