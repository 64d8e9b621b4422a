#pragma once

#include <string>

#include "tunnelmeet/rational.hpp"

namespace tunnelmeet {

/// Rational point of the plane; y grows to the North.
struct QPoint {
  Rational x;
  Rational y;

  bool operator==(const QPoint&) const = default;
};

inline QPoint operator+(const QPoint& a, const QPoint& b) { return {a.x + b.x, a.y + b.y}; }
inline QPoint operator-(const QPoint& a, const QPoint& b) { return {a.x - b.x, a.y - b.y}; }
inline QPoint operator*(const Rational& s, const QPoint& a) { return {s * a.x, s * a.y}; }
inline Rational dot(const QPoint& a, const QPoint& b) { return a.x * b.x + a.y * b.y; }
inline Rational cross(const QPoint& a, const QPoint& b) { return a.x * b.y - a.y * b.x; }
inline Rational norm_sq(const QPoint& a) { return dot(a, a); }

/// max(|dx|, |dy|).
inline Rational chebyshev(const QPoint& a, const QPoint& b) {
  const Rational dx = abs(a.x - b.x), dy = abs(a.y - b.y);
  return dx > dy ? dx : dy;
}

inline bool operator<(const QPoint& a, const QPoint& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

inline std::string to_string(const QPoint& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

struct QPointHash {
  std::size_t operator()(const QPoint& p) const { return hash_value(p.x) * 31 ^ hash_value(p.y); }
};

}  // namespace tunnelmeet
