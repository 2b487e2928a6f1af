#pragma once

#include <cmath>

namespace vmsdg {

/// Physical or reference coordinates. In 1-D only `x` is used and `y` stays 0.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

using Vec2 = Point;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

}  // namespace vmsdg
