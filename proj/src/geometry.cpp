#include "diebal/geometry.hpp"

#include <cmath>

#include <fmt/format.h>

#include "diebal/error.hpp"

namespace diebal {

namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

int sign(double v) { return (v > 0.0) - (v < 0.0); }

// q is known to be collinear with segment ab.
bool on_segment(Point2 a, Point2 b, Point2 q) {
  return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) &&
         std::min(a.y, b.y) <= q.y && q.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const int d1 = sign(cross(q1, q2, p1));
  const int d2 = sign(cross(q1, q2, p2));
  const int d3 = sign(cross(p1, p2, q1));
  const int d4 = sign(cross(p1, p2, q2));
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && on_segment(q1, q2, p1)) return true;
  if (d2 == 0 && on_segment(q1, q2, p2)) return true;
  if (d3 == 0 && on_segment(p1, p2, q1)) return true;
  if (d4 == 0 && on_segment(p1, p2, q2)) return true;
  return false;
}

double shoelace(std::span<const Point2> v) {
  // Shifting to the first vertex keeps the sum well conditioned far from the origin.
  const Point2 o = v.front();
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i] - o;
    const Point2 b = v[(i + 1) % v.size()] - o;
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

void validate_ring(std::span<const Point2> v) {
  const std::size_t n = v.size();
  if (n < 3) {
    throw ValidationError(fmt::format("polygon needs at least 3 vertices, got {}", n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(v[i].x) || !std::isfinite(v[i].y)) {
      throw ValidationError(fmt::format("polygon vertex {} is not finite", i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (v[i] == v[(i + 1) % n]) {
      throw ValidationError(
          fmt::format("polygon vertices {} and {} coincide", i, (i + 1) % n));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a1 = v[i];
    const Point2 a2 = v[(i + 1) % n];
    // Adjacent edge: only a collinear fold-back overlaps.
    {
      const Point2 b2 = v[(i + 2) % n];
      const Point2 d1 = a2 - a1;
      const Point2 d2 = b2 - a2;
      if (cross(a1, a2, b2) == 0.0 && d1.x * d2.x + d1.y * d2.y < 0.0) {
        throw ValidationError(
            fmt::format("polygon folds back on itself at vertex {}", (i + 1) % n));
      }
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // edges n-1 and 0 share vertex 0
      if (segments_intersect(a1, a2, v[j], v[(j + 1) % n])) {
        throw ValidationError(fmt::format(
            "polygon is self-intersecting: edge {} crosses edge {}", i, j));
      }
    }
  }
  if (shoelace(v) == 0.0) {
    throw ValidationError("polygon has zero area");
  }
}

}  // namespace

double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  validate_ring(vertices_);
}

double Polygon::signed_area() const { return shoelace(vertices_); }

double polygon_area(const Polygon& p) { return std::abs(p.signed_area()); }

double polygon_perimeter(const Polygon& p) {
  const auto v = p.vertices();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += distance(v[i], v[(i + 1) % v.size()]);
  }
  return total;
}

Point2 polygon_centroid(const Polygon& p) {
  const auto v = p.vertices();
  const Point2 o = v.front();
  double twice_area = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i] - o;
    const Point2 b = v[(i + 1) % v.size()] - o;
    const double w = a.x * b.y - b.x * a.y;
    twice_area += w;
    cx += (a.x + b.x) * w;
    cy += (a.y + b.y) * w;
  }
  // Ratios of signed moments are orientation independent.
  return o + Point2{cx / (3.0 * twice_area), cy / (3.0 * twice_area)};
}

bool contains(const Polygon& p, Point2 q) {
  const auto v = p.vertices();
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const Point2 a = v[j];
    const Point2 b = v[i];
    if (cross(a, b, q) == 0.0 && on_segment(a, b, q)) return true;
    if ((b.y > q.y) != (a.y > q.y) &&
        q.x < (a.x - b.x) * (q.y - b.y) / (a.y - b.y) + b.x) {
      inside = !inside;
    }
  }
  return inside;
}

bool boundaries_disjoint(const Polygon& a, const Polygon& b) {
  const auto va = a.vertices();
  const auto vb = b.vertices();
  for (std::size_t i = 0; i < va.size(); ++i) {
    for (std::size_t j = 0; j < vb.size(); ++j) {
      if (segments_intersect(va[i], va[(i + 1) % va.size()], vb[j],
                             vb[(j + 1) % vb.size()])) {
        return false;
      }
    }
  }
  return true;
}

ProfileZone::ProfileZone(std::vector<Polygon> boundaries)
    : boundaries_(std::move(boundaries)) {
  if (boundaries_.empty()) {
    throw ValidationError("profile zone needs an outer boundary");
  }
  const auto hs = holes();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (!boundaries_disjoint(outer(), hs[i]) ||
        !contains(outer(), hs[i].vertices().front())) {
      throw ValidationError(
          fmt::format("profile zone hole {} is not inside the outer boundary", i));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (!boundaries_disjoint(hs[i], hs[j]) ||
          contains(hs[i], hs[j].vertices().front()) ||
          contains(hs[j], hs[i].vertices().front())) {
        throw ValidationError(fmt::format("profile zone holes {} and {} overlap", j, i));
      }
    }
  }
  if (!(zone_area(*this) > 0.0)) {
    throw ValidationError("profile zone area is not positive");
  }
}

double zone_area(const ProfileZone& z) {
  double area = polygon_area(z.outer());
  for (const auto& h : z.holes()) area -= polygon_area(h);
  return area;
}

double zone_perimeter(const ProfileZone& z) {
  double total = 0.0;
  for (const auto& b : z.boundaries()) total += polygon_perimeter(b);
  return total;
}

Point2 zone_centroid(const ProfileZone& z) {
  double area = polygon_area(z.outer());
  Point2 moment = area * polygon_centroid(z.outer());
  for (const auto& h : z.holes()) {
    const double ha = polygon_area(h);
    area -= ha;
    moment = moment - ha * polygon_centroid(h);
  }
  return (1.0 / area) * moment;
}

}  // namespace diebal
