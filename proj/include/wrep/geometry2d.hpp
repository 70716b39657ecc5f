// Copyright 2026 The wrep Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file geometry2d.hpp
 * @brief Planar geometry for d = 3 spectral sets.
 *
 * A point λ with Σλ = S is drawn as (λ1, λ2); λ3 = S - λ1 - λ2 is implied.
 */

#pragma once

#include "wrep/errors.hpp"
#include "wrep/polytope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace wrep {

struct Point2 {
  double x = 0;
  double y = 0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }

/// Half-plane n.p <= c.
struct HalfPlane {
  Point2 n;
  double c = 0;
};

using Polygon = std::vector<Point2>;  // counter-clockwise, no repeated closing vertex

/// Intersection of a convex polygon with a half-plane.
inline Polygon clip(const Polygon& poly, const HalfPlane& h) {
  Polygon out;
  const std::size_t n = poly.size();
  auto val = [&](Point2 p) { return h.n.x * p.x + h.n.y * p.y - h.c; };
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    const double va = val(a), vb = val(b);
    if (va <= 0) out.push_back(a);
    if ((va < 0 && vb > 0) || (va > 0 && vb < 0)) {
      const double t = va / (va - vb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

inline double polygon_area(const Polygon& p) {
  double a = 0;
  for (std::size_t i = 0; i < p.size(); ++i) a += cross(p[i], p[(i + 1) % p.size()]);
  return 0.5 * a;
}

/// Monotone-chain convex hull; collinear points dropped.
inline Polygon convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 a, Point2 b) { return std::abs(a.x - b.x) < 1e-13 && std::abs(a.y - b.y) < 1e-13; }),
            pts.end());
  if (pts.size() < 3) return pts;
  Polygon h(2 * pts.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 2]) <= 1e-15) --k;
    h[k++] = pts[i];
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
    while (k >= t && cross(h[k - 1] - h[k - 2], pts[i - 1] - h[k - 2]) <= 1e-15) --k;
    h[k++] = pts[i - 1];
  }
  h.resize(k - 1);
  return h;
}

/// Signed distance-like margin of p inside a CCW convex polygon (min over
/// edges of the normalized cross product); negative outside.
inline double inside_margin(const Polygon& poly, Point2 p) {
  if (poly.size() < 3) return -1;
  double m = 1e300;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % poly.size()];
    m = std::min(m, cross(b - a, p - a) / norm(b - a));
  }
  return m;
}

inline std::array<double, 3> lift(Point2 p, double sum) { return {p.x, p.y, sum - p.x - p.y}; }
inline Point2 project(const std::array<double, 3>& v) { return {v[0], v[1]}; }

/// Sorted-sector part of an HRep with d = 3, as a CCW polygon in (λ1, λ2).
inline Polygon sector_polygon(const HRep& h) {
  if (h.dimension != 3) throw CapabilityError("sector_polygon: d = 3 required");
  const double S = h.sum;
  const double box = 4.0 * (std::abs(S) + 1.0);
  Polygon poly{{-box, -box}, {box, -box}, {box, box}, {-box, box}};
  std::vector<HalfPlane> hs;
  for (const auto& r : h.rows) {
    const auto& a = r.coeffs;
    hs.push_back({{a[0] - a[2], a[1] - a[2]}, r.rhs - a[2] * S});
  }
  hs.push_back({{-1, 1}, 0});    // λ2 <= λ1
  hs.push_back({{-1, -2}, -S});  // λ3 <= λ2
  for (const auto& hp : hs) {
    poly = clip(poly, hp);
    if (poly.empty()) return poly;
  }
  // Merge vertices produced twice by clipping through a corner.
  Polygon out;
  for (const auto& p : poly) {
    if (out.empty() || norm(p - out.back()) > 1e-12) out.push_back(p);
  }
  while (out.size() > 1 && norm(out.front() - out.back()) <= 1e-12) out.pop_back();
  return out;
}

/// The six coordinate permutations of a sector polygon.
inline std::vector<Polygon> orbit_pieces(const Polygon& sector, double sum) {
  std::array<int, 3> perm{0, 1, 2};
  std::vector<Polygon> pieces;
  do {
    Polygon piece;
    for (const auto& p : sector) {
      const auto v = lift(p, sum);
      piece.push_back({v[perm[0]], v[perm[1]]});
    }
    if (polygon_area(piece) < 0) std::reverse(piece.begin(), piece.end());
    pieces.push_back(std::move(piece));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return pieces;
}

/// Whether the symmetric-group orbit of the sorted-sector set of h is
/// convex. The orbit is compared with its convex hull on probe points:
/// the hull centroid, hull edge midpoints and points just off every vertex
/// of the line arrangement formed by all piece edges, one per angular
/// sector around the vertex.
inline bool orbit_convexity_check(const HRep& h, double eps = 1e-6) {
  if (h.dimension != 3) throw CapabilityError("orbit_convexity_check: only d = 3 is supported");
  const double S = h.sum;
  const Polygon sector = sector_polygon(h);
  if (sector.empty()) throw InputError("orbit_convexity_check: empty set");
  const auto pieces = orbit_pieces(sector, S);
  std::vector<Point2> all;
  for (const auto& pc : pieces) all.insert(all.end(), pc.begin(), pc.end());
  const Polygon hull = convex_hull(all);

  auto in_orbit = [&](Point2 p) {
    const auto v = lift(p, S);
    return membership<double>(h, std::span<const double>(v.data(), 3), 1e-10).member;
  };

  std::vector<Point2> probes;
  if (hull.size() < 3 || std::abs(polygon_area(hull)) < 1e-14) {
    // Point or segment: walk along it.
    if (hull.size() <= 1) return true;
    for (int i = 0; i <= 200; ++i) probes.push_back(hull.front() + (i / 200.0) * (hull.back() - hull.front()));
    for (const auto& p : probes) {
      if (!in_orbit(p)) return false;
    }
    return true;
  }

  Point2 centroid{};
  for (const auto& p : hull) centroid = centroid + (1.0 / hull.size()) * p;
  probes.push_back(centroid);
  for (std::size_t i = 0; i < hull.size(); ++i) probes.push_back(0.5 * (hull[i] + hull[(i + 1) % hull.size()]));

  struct Line {
    Point2 p, dir;
  };
  std::vector<Line> lines;
  for (const auto& pc : pieces) {
    for (std::size_t i = 0; i < pc.size(); ++i) {
      const Point2 a = pc[i], b = pc[(i + 1) % pc.size()];
      if (norm(b - a) > 1e-12) lines.push_back({a, (1.0 / norm(b - a)) * (b - a)});
    }
  }
  std::vector<Point2> verts(all.begin(), all.end());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double den = cross(lines[i].dir, lines[j].dir);
      if (std::abs(den) < 1e-12) continue;
      const double t = cross(lines[j].p - lines[i].p, lines[j].dir) / den;
      const Point2 q = lines[i].p + t * lines[i].dir;
      if (inside_margin(hull, q) > -1e-9) verts.push_back(q);
    }
  }
  for (const auto& v : verts) {
    std::vector<double> angles;
    for (const auto& l : lines) {
      if (std::abs(cross(l.dir, v - l.p)) > 1e-9) continue;
      const double a = std::atan2(l.dir.y, l.dir.x);
      angles.push_back(a);
      angles.push_back(a + M_PI);
    }
    if (angles.empty()) continue;
    for (auto& a : angles) a = std::remainder(a, 2 * M_PI);
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 0; i < angles.size(); ++i) {
      const double a0 = angles[i];
      const double a1 = i + 1 < angles.size() ? angles[i + 1] : angles[0] + 2 * M_PI;
      if (a1 - a0 < 1e-9) continue;
      const double mid = 0.5 * (a0 + a1);
      probes.push_back(v + eps * Point2{std::cos(mid), std::sin(mid)});
    }
  }
  for (const auto& p : probes) {
    if (inside_margin(hull, p) > 1e-9 && !in_orbit(p)) return false;
  }
  return true;
}

}  // namespace wrep
