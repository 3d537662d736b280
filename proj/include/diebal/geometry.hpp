#pragma once

#include <span>
#include <vector>

namespace diebal {

/// Planar point, millimetres.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

double distance(Point2 a, Point2 b);

/// Closed ring of vertices. The last edge joins the final vertex back to the first.
///
/// Construction validates the ring: at least three finite vertices, no two
/// consecutive vertices coincident, no self-intersection and a nonzero signed
/// area. Either orientation is accepted. Throws ValidationError otherwise.
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> vertices);

  std::span<const Point2> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  /// Shoelace area; positive for counter-clockwise rings.
  double signed_area() const;

  friend bool operator==(const Polygon&, const Polygon&) = default;

 private:
  std::vector<Point2> vertices_;
};

double polygon_area(const Polygon& p);
double polygon_perimeter(const Polygon& p);
/// Area-weighted centroid (first moments over the signed area).
Point2 polygon_centroid(const Polygon& p);

/// Even-odd point-in-polygon test. Points on the boundary count as inside.
bool contains(const Polygon& p, Point2 q);

/// True when the two closed rings share no point.
bool boundaries_disjoint(const Polygon& a, const Polygon& b);

/// The portion of the extruded profile fed by one port: one outer boundary
/// followed by zero or more holes. Holes must lie strictly inside the outer
/// boundary and the remaining area must be positive.
class ProfileZone {
 public:
  explicit ProfileZone(std::vector<Polygon> boundaries);

  const Polygon& outer() const { return boundaries_.front(); }
  std::span<const Polygon> holes() const { return std::span(boundaries_).subspan(1); }
  std::span<const Polygon> boundaries() const { return boundaries_; }

  friend bool operator==(const ProfileZone&, const ProfileZone&) = default;

 private:
  std::vector<Polygon> boundaries_;
};

double zone_area(const ProfileZone& z);
/// Sum of the lengths of every boundary ring, holes included.
double zone_perimeter(const ProfileZone& z);
Point2 zone_centroid(const ProfileZone& z);

}  // namespace diebal
