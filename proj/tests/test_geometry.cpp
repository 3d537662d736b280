#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "diebal/die.hpp"
#include "diebal/error.hpp"
#include "diebal/geometry.hpp"
#include "support/oracles.hpp"

using namespace diebal;
using doctest::Approx;

namespace {

Polygon square(double x0, double y0, double side) {
  return Polygon({{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}});
}

Polygon regular(int n, double circumradius, Point2 c = {}, double phase = 0.0) {
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) {
    const double a = phase + 2.0 * std::numbers::pi * i / n;
    pts.push_back({c.x + circumradius * std::cos(a), c.y + circumradius * std::sin(a)});
  }
  return Polygon(std::move(pts));
}

// Star-shaped random polygon around a random centre. Always simple.
Polygon random_polygon(oracle::Rng& rng) {
  const int n = 3 + static_cast<int>(rng.uniform() * 20);
  // Jittered even spacing keeps every angular gap below pi.
  std::vector<double> angles;
  for (int i = 0; i < n; ++i) angles.push_back((i + 0.4 * rng.uniform()) * 2.0 * std::numbers::pi / n);
  const Point2 c{rng.uniform(-200, 200), rng.uniform(-200, 200)};
  std::vector<Point2> pts;
  for (double a : angles) {
    const double r = rng.uniform(5.0, 50.0);
    pts.push_back({c.x + r * std::cos(a), c.y + r * std::sin(a)});
  }
  return Polygon(std::move(pts));
}

Polygon transform(const Polygon& p, double angle, Point2 shift, bool mirror = false) {
  std::vector<Point2> out;
  const double c = std::cos(angle), s = std::sin(angle);
  for (auto q : p.vertices()) {
    if (mirror) q.y = -q.y;
    out.push_back({c * q.x - s * q.y + shift.x, s * q.x + c * q.y + shift.y});
  }
  return Polygon(std::move(out));
}

bool near_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("polygon area") {
  CHECK(polygon_area(square(0, 0, 1)) == Approx(1.0).epsilon(1e-12));
  CHECK(polygon_area(Polygon({{0, 0}, {4, 0}, {0, 3}})) == Approx(6.0).epsilon(1e-12));
  CHECK(polygon_area(regular(6, 1.0)) == Approx(3.0 * std::sqrt(3.0) / 2.0).epsilon(1e-12));
  // Clockwise input.
  CHECK(polygon_area(Polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}})) == Approx(1.0));
  CHECK(Polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}).signed_area() < 0.0);
}

TEST_CASE("polygon perimeter") {
  CHECK(polygon_perimeter(square(0, 0, 1)) == Approx(4.0));
  CHECK(polygon_perimeter(Polygon({{0, 0}, {4, 0}, {0, 3}})) == Approx(12.0));
  CHECK(polygon_perimeter(square(100, 100, 1)) == Approx(4.0).epsilon(1e-12));
}

TEST_CASE("polygon centroid") {
  const auto c = polygon_centroid(square(0, 0, 1));
  CHECK(c.x == Approx(0.5));
  CHECK(c.y == Approx(0.5));
  const auto t = polygon_centroid(Polygon({{0, 0}, {4, 0}, {0, 3}}));
  CHECK(t.x == Approx(4.0 / 3.0));
  CHECK(t.y == Approx(1.0));

  SUBCASE("L shape matches two-rectangle decomposition") {
    // 3x1 bar along x plus a 1x2 bar on top of its left cell.
    const Polygon l({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
    const double a1 = 3.0, a2 = 2.0;
    const Point2 c1{1.5, 0.5}, c2{0.5, 2.0};
    const Point2 expected = (1.0 / (a1 + a2)) * (a1 * c1 + a2 * c2);
    const auto got = polygon_centroid(l);
    CHECK(got.x == Approx(expected.x).epsilon(1e-12));
    CHECK(got.y == Approx(expected.y).epsilon(1e-12));
    CHECK(polygon_area(l) == Approx(a1 + a2));
  }
}

TEST_CASE("polygon validation") {
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}}), ValidationError);
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {1, 0}, {0, 1}}), ValidationError);
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {0, 1}, {0, 0}}), ValidationError);  // closing duplicate
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 0}, {2, 0}}), ValidationError);          // zero area
  CHECK_THROWS_AS(Polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), ValidationError);  // bow tie
  CHECK_THROWS_AS(Polygon({{0, 0}, {2, 0}, {1, 0}, {1, 1}}), ValidationError);  // fold back
  CHECK_THROWS_AS(Polygon({{0, 0}, {NAN, 0}, {0, 1}}), ValidationError);
  // Vertex touching a non-adjacent edge.
  CHECK_THROWS_AS(Polygon({{0, 0}, {4, 0}, {4, 4}, {2, 0}, {0, 4}}), ValidationError);
  CHECK_NOTHROW(Polygon({{0, 0}, {4, 0}, {4, 4}, {2, 1}, {0, 4}}));
}

TEST_CASE("profile zone with hole") {
  const ProfileZone z({square(-2, -2, 4), square(-1, -1, 2)});
  CHECK(zone_area(z) == Approx(12.0));
  CHECK(zone_perimeter(z) == Approx(24.0));
  const auto c = zone_centroid(z);
  CHECK(c.x == Approx(0.0).epsilon(1e-12));
  CHECK(c.y == Approx(0.0).epsilon(1e-12));

  SUBCASE("single boundary reduces to the polygon") {
    const auto p = regular(7, 3.0, {10, -4}, 0.3);
    const ProfileZone single({p});
    CHECK(zone_area(single) == Approx(polygon_area(p)));
    CHECK(zone_perimeter(single) == Approx(polygon_perimeter(p)));
    CHECK(zone_centroid(single).x == Approx(polygon_centroid(p).x));
    CHECK(zone_centroid(single).y == Approx(polygon_centroid(p).y));
  }

  SUBCASE("ring centroid at the centre of symmetry") {
    const ProfileZone ring({regular(64, 10.0, {5, 7}), regular(64, 8.0, {5, 7}, 0.05)});
    CHECK(zone_centroid(ring).x == Approx(5.0).epsilon(1e-9));
    CHECK(zone_centroid(ring).y == Approx(7.0).epsilon(1e-9));
  }

  SUBCASE("off-centre hole shifts the centroid away") {
    const ProfileZone z2({square(0, 0, 4), square(2.5, 1.5, 1)});
    // Oracle: composite moments.
    const double x = (16 * 2.0 - 1 * 3.0) / 15.0;
    const double y = (16 * 2.0 - 1 * 2.0) / 15.0;
    CHECK(zone_centroid(z2).x == Approx(x));
    CHECK(zone_centroid(z2).y == Approx(y));
  }

  CHECK_THROWS_AS(ProfileZone({square(0, 0, 1), square(5, 5, 1)}), ValidationError);
  CHECK_THROWS_AS(ProfileZone({square(0, 0, 2), square(1, 1, 2)}), ValidationError);
  CHECK_THROWS_AS(ProfileZone({square(0, 0, 4), square(0.5, 0.5, 1), square(1, 1, 1)}),
                  ValidationError);
  CHECK_THROWS_AS(ProfileZone(std::vector<Polygon>{}), ValidationError);
}

TEST_CASE("isometry invariance on random polygons") {
  oracle::Rng rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    const auto p = random_polygon(rng);
    const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
    const Point2 shift{rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)};
    const auto q = transform(p, angle, shift, i % 2 == 1);
    REQUIRE(near_rel(polygon_area(q), polygon_area(p), 1e-9));
    REQUIRE(near_rel(polygon_perimeter(q), polygon_perimeter(p), 1e-9));

    std::vector<Point2> rev(p.vertices().rbegin(), p.vertices().rend());
    REQUIRE(near_rel(polygon_area(Polygon(rev)), polygon_area(p), 1e-12));

    // Centroid inside the bounding box of the vertices (a superset of the hull
    // check) and inside the polygon itself for star-shaped inputs.
    const auto c = polygon_centroid(p);
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto v : p.vertices()) {
      xmin = std::min(xmin, v.x);
      xmax = std::max(xmax, v.x);
      ymin = std::min(ymin, v.y);
      ymax = std::max(ymax, v.y);
    }
    REQUIRE(c.x >= xmin);
    REQUIRE(c.x <= xmax);
    REQUIRE(c.y >= ymin);
    REQUIRE(c.y <= ymax);

    // Centroids transform with the isometry.
    const auto cq = polygon_centroid(q);
    const double cx = c.x;
    const double cy = i % 2 == 1 ? -c.y : c.y;
    REQUIRE(std::abs(cq.x - (std::cos(angle) * cx - std::sin(angle) * cy + shift.x)) < 1e-8);
    REQUIRE(std::abs(cq.y - (std::sin(angle) * cx + std::cos(angle) * cy + shift.y)) < 1e-8);
  }
}

TEST_CASE("convex hull containment of centroid") {
  oracle::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_polygon(rng);
    // Andrew monotone chain hull, then point-in-convex test.
    std::vector<Point2> pts(p.vertices().begin(), p.vertices().end());
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    auto cr = [](Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); };
    std::vector<Point2> hull;
    for (int pass = 0; pass < 2; ++pass) {
      const auto start = hull.size();
      for (auto q : pts) {
        while (hull.size() >= start + 2 && cr(hull[hull.size() - 2], hull.back(), q) <= 0) hull.pop_back();
        hull.push_back(q);
      }
      hull.pop_back();
      std::reverse(pts.begin(), pts.end());
    }
    const auto c = polygon_centroid(p);
    for (std::size_t k = 0; k < hull.size(); ++k) {
      REQUIRE(cr(hull[k], hull[(k + 1) % hull.size()], c) >= -1e-9);
    }
  }
}

namespace {

Port make_port(std::string id, Polygon g, ProfileZone z, std::optional<double> depth = 45.0) {
  return Port{std::move(id), std::move(g), depth, std::move(z)};
}

// 4 cavities x 4 ports, each cavity a rotated copy of the first.
DieDesign symmetric_die() {
  DieDesign d;
  d.name = "sym";
  const Polygon base_ports[] = {
      Polygon({{60, 40}, {80, 40}, {85, 60}, {55, 60}}),
      Polygon({{30, 60}, {50, 62}, {50, 75}, {28, 78}}),
      Polygon({{60, 90}, {90, 88}, {92, 110}, {58, 108}}),
      Polygon({{95, 55}, {120, 60}, {118, 85}, {97, 80}}),
  };
  const ProfileZone base_zone({Polygon({{62, 62}, {90, 62}, {90, 66}, {62, 66}})});
  for (int k = 0; k < 4; ++k) {
    const double a = k * std::numbers::pi / 2.0;
    Cavity cav;
    for (int j = 0; j < 4; ++j) {
      cav.push_back(make_port(fmt::format("{}-{}", k, j), transform(base_ports[j], a, {}),
                              ProfileZone({transform(base_zone.outer(), a, {})})));
    }
    d.cavities.push_back(std::move(cav));
  }
  return d;
}

}  // namespace

TEST_CASE("extract port variables") {
  SUBCASE("single square port") {
    DieDesign d;
    d.cavities.push_back({make_port("P", square(45, -5, 10), ProfileZone({square(60, -5, 10)}))});
    const auto v = extract_port_variables(d);
    REQUIRE(v.size() == 1);
    CHECK(v[0].area == Approx(100.0));
    CHECK(v[0].dist == Approx(50.0));
    CHECK(v[0].perimeter == Approx(40.0));
    CHECK(v[0].area_prof == Approx(100.0));
    CHECK(v[0].perim_prof == Approx(40.0));
    CHECK(v[0].dist_port_prof == Approx(15.0));
    CHECK(v[0].area_total == Approx(100.0));
    CHECK(v[0].perim_total == Approx(40.0));
    CHECK(*v[0].depth == 45.0);
  }

  SUBCASE("die centre override") {
    DieDesign d;
    d.centre = {45, -5};
    d.cavities.push_back({make_port("P", square(45, -5, 10), ProfileZone({square(60, -5, 10)}))});
    CHECK(extract_port_variables(d)[0].dist == Approx(std::sqrt(50.0)));
  }

  SUBCASE("rotated cavities report identical variables") {
    const auto d = symmetric_die();
    CHECK(is_standard_layout(d));
    CHECK(layout_warnings(d).empty());
    const auto v = extract_port_variables(d);
    REQUIRE(v.size() == 16);
    double sum = 0.0;
    for (const auto& c : d.cavities) {
      for (const auto& p : c) sum += polygon_area(p.geometry);
    }
    for (int k = 1; k < 4; ++k) {
      for (int j = 0; j < 4; ++j) {
        const auto& a = v[static_cast<std::size_t>(j)];
        const auto& b = v[static_cast<std::size_t>(4 * k + j)];
        CHECK(b.area == Approx(a.area).epsilon(1e-12));
        CHECK(b.dist == Approx(a.dist).epsilon(1e-12));
        CHECK(b.area_prof == Approx(a.area_prof).epsilon(1e-12));
        CHECK(b.perim_prof == Approx(a.perim_prof).epsilon(1e-12));
        CHECK(b.dist_port_prof == Approx(a.dist_port_prof).epsilon(1e-12));
      }
    }
    for (const auto& x : v) {
      CHECK(x.area_total == Approx(sum).epsilon(1e-12));
      CHECK(x.area_total >= x.area);
      CHECK(x.perim_total >= x.perimeter);
    }
  }

  SUBCASE("point mirror through the die centre preserves the variables") {
    DieDesign d;
    d.centre = {3, -2};
    const Polygon g({{40, 10}, {60, 12}, {58, 30}, {42, 28}});
    const ProfileZone z({Polygon({{45, 35}, {65, 35}, {65, 38}, {45, 38}})});
    auto mirror = [&](const Polygon& p) {
      std::vector<Point2> out;
      for (auto q : p.vertices()) out.push_back(2.0 * d.centre - q);
      return Polygon(out);
    };
    d.cavities.push_back({make_port("A", g, z), make_port("B", mirror(g), ProfileZone({mirror(z.outer())}))});
    const auto v = extract_port_variables(d);
    CHECK(v[1].area == Approx(v[0].area));
    CHECK(v[1].dist == Approx(v[0].dist));
    CHECK(v[1].area_prof == Approx(v[0].area_prof));
    CHECK(v[1].perim_prof == Approx(v[0].perim_prof));
    CHECK(v[1].dist_port_prof == Approx(v[0].dist_port_prof));
  }
}

TEST_CASE("die validation") {
  DieDesign d;
  d.cavities.push_back({make_port("P", square(0, 0, 1), ProfileZone({square(2, 0, 1)})),
                        make_port("P", square(0, 5, 1), ProfileZone({square(2, 5, 1)}))});
  CHECK_THROWS_AS(validate(d), ValidationError);
  d.cavities[0][1].id = "Q";
  CHECK_NOTHROW(validate(d));
  d.cavities[0][1].depth = -1.0;
  CHECK_THROWS_AS(validate(d), ValidationError);
  CHECK_FALSE(is_standard_layout(d));
  CHECK(layout_warnings(d).size() == 2);
}
