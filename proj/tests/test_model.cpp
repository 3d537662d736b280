#include <doctest.h>

#include <cmath>
#include <numeric>

#include "diebal/error.hpp"
#include "diebal/model.hpp"
#include "support/oracles.hpp"

using namespace diebal;
using doctest::Approx;

namespace {

PortVariables random_vars(oracle::Rng& rng) {
  PortVariables v;
  v.port_id = "p";
  v.area = rng.uniform(200.0, 2000.0);
  v.dist = rng.uniform(40.0, 250.0);
  v.area_total = rng.uniform(8000.0, 20000.0);
  v.area_prof = rng.uniform(30.0, 300.0);
  v.perim_prof = rng.uniform(40.0, 200.0);
  v.dist_port_prof = rng.uniform(5.0, 40.0);
  v.perimeter = rng.uniform(100.0, 200.0);
  v.perim_total = v.perimeter * 16;
  return v;
}

// A 16-port set whose area_total is consistent with its port areas.
std::vector<PortVariables> random_die(oracle::Rng& rng) {
  std::vector<PortVariables> out;
  for (int i = 0; i < 16; ++i) {
    auto v = random_vars(rng);
    v.area = rng.uniform(500.0, 1200.0);
    v.port_id = std::to_string(i + 1);
    out.push_back(v);
  }
  double total = 0.0;
  for (const auto& v : out) total += v.area;
  for (auto& v : out) v.area_total = total;
  return out;
}

double oracle_value(const PortVariables& v) {
  return oracle::linear_formula(v.area, v.dist, v.area_total, v.area_prof, v.dist_port_prof, v.perim_prof);
}

// Damped fixed-point iteration A <- A + alpha * v(A), recomputing the total each sweep.
std::vector<double> fixed_point_deltas(std::vector<PortVariables> vars) {
  std::vector<double> start;
  for (const auto& v : vars) start.push_back(v.area);
  for (int it = 0; it < 2000; ++it) {
    std::vector<double> vals;
    for (const auto& v : vars) vals.push_back(oracle_value(v));
    double total = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      vars[i].area += 0.5 * vals[i];
      total += vars[i].area;
    }
    for (auto& v : vars) v.area_total = total;
  }
  std::vector<double> d;
  for (std::size_t i = 0; i < vars.size(); ++i) d.push_back(vars[i].area - start[i]);
  return d;
}

}  // namespace

TEST_CASE("default coefficients") {
  const auto l = ModelCoefficients::linear_default();
  CHECK(l.kind == ModelKind::linear);
  CHECK(l.intercept == -25.048);
  CHECK(l.coef_dist == 5.072);
  CHECK(l.coef_area_total == 0.012);
  CHECK(l.coef_area_prof == 0.593);
  CHECK(l.coef_dist_port_prof == 10.358);
  CHECK(l.coef_perim_prof == 1.211);
  CHECK(*l.std_error == 70.77);
  CHECK(*l.tolerance == 35.0);

  const auto g = ModelCoefficients::loglinear_default();
  CHECK(g.kind == ModelKind::loglinear);
  CHECK(g.intercept == 0.956);
  CHECK(g.coef_dist == 0.479);
  CHECK(g.coef_area_total == 0.304);
  CHECK(g.coef_perim_prof == 0.111);
  CHECK(g.coef_dist_port_prof == 0.120);
  CHECK(g.coef_area_prof == 0.0);
  CHECK_FALSE(g.tolerance.has_value());

  auto bad = l;
  bad.tolerance = 0.0;
  CHECK_THROWS_AS(validate(bad), ValidationError);
  CHECK(parse_model_kind("loglinear") == ModelKind::loglinear);
  CHECK_THROWS_AS(parse_model_kind("cubic"), UsageError);
}

TEST_CASE("eval_linear") {
  const auto c = ModelCoefficients::linear_default();
  PortVariables v;
  v.area = 500;
  v.dist = 60;
  v.area_total = 10000;
  v.area_prof = 100;
  v.dist_port_prof = 20;
  v.perim_prof = 100;
  CHECK(eval_linear(v, c) == Approx(286.832).epsilon(1e-12));
  CHECK(eval_linear(PortVariables{}, c) == Approx(-25.048).epsilon(1e-15));
  CHECK_THROWS_AS(eval_linear(v, ModelCoefficients::loglinear_default()), UsageError);

  oracle::Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_vars(rng);
    CHECK(std::abs(eval_linear(r, c) - oracle_value(r)) < 1e-9);
  }
}

TEST_CASE("eval_linear finite differences") {
  const auto c = ModelCoefficients::linear_default();
  oracle::Rng rng(3);
  auto vars = random_die(rng);
  std::vector<double> before;
  for (const auto& v : vars) before.push_back(eval_linear(v, c));

  // Area alone, total held fixed: slope -1.
  auto one = vars[0];
  one.area += 1.0;
  CHECK(eval_linear(one, c) - before[0] == Approx(-1.0).epsilon(1e-9));

  // Area with the total recomputed: own slope c_T - 1, others c_T.
  const double h = 2.5;
  std::vector<double> deltas(vars.size(), 0.0);
  deltas[4] = h;
  const auto after = apply_area_deltas(vars, deltas);
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const double slope = (eval_linear(after[i], c) - before[i]) / h;
    CHECK(slope == Approx(i == 4 ? c.coef_area_total - 1.0 : c.coef_area_total).epsilon(1e-9));
  }
}

TEST_CASE("eval_loglinear") {
  const auto c = ModelCoefficients::loglinear_default();
  PortVariables v;
  v.dist = v.area_total = v.perim_prof = v.dist_port_prof = 1.0;
  v.area_prof = 1.0;
  v.area = std::exp(0.956);
  CHECK(eval_loglinear(v, c) == Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(std::exp(0.956) - 2.6013) < 1e-4);

  oracle::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto r = random_vars(rng);
    const double lhs = eval_loglinear(r, c) * r.area;
    const double rhs = std::exp(oracle::loglinear_rhs(r.dist, r.area_total, r.perim_prof, r.dist_port_prof));
    CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
    CHECK(eval_loglinear(r, c) > 0.0);

    auto bigger = r;
    bigger.area *= 1.1;
    CHECK(eval_loglinear(bigger, c) < eval_loglinear(r, c));
    for (double PortVariables::*m : {&PortVariables::dist, &PortVariables::area_total,
                                     &PortVariables::perim_prof, &PortVariables::dist_port_prof}) {
      auto up = r;
      up.*m *= 1.1;
      CHECK(eval_loglinear(up, c) > eval_loglinear(r, c));
    }
  }

  auto bad = v;
  bad.dist_port_prof = 0.0;
  try {
    eval_loglinear(bad, c);
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("dist_port_prof") != std::string::npos);
  }
  // A zero exponent means the variable does not participate.
  bad = v;
  bad.area_prof = 0.0;
  CHECK_NOTHROW(eval_loglinear(bad, c));
  CHECK_THROWS_AS(eval_loglinear(v, ModelCoefficients::linear_default()), UsageError);
}

TEST_CASE("tolerance band") {
  const auto c = ModelCoefficients::linear_default();
  CHECK(in_tolerance(0.0, c));
  CHECK(in_tolerance(34.999, c));
  CHECK(in_tolerance(-34.999, c));
  CHECK_FALSE(in_tolerance(35.0, c));
  CHECK_FALSE(in_tolerance(-35.0, c));
  CHECK_FALSE(in_tolerance(-54.47, c));

  auto g = ModelCoefficients::loglinear_default();
  CHECK(in_tolerance(5.0, g));  // no tolerance: nothing flagged
  g.tolerance = 0.1;
  CHECK(in_tolerance(1.05, g));
  CHECK_FALSE(in_tolerance(1.1, g));
  CHECK_FALSE(in_tolerance(0.85, g));

  SUBCASE("monotone in the tolerance") {
    oracle::Rng rng(9);
    const auto vars = random_die(rng);
    for (double t1 : {5.0, 20.0, 35.0, 80.0}) {
      auto c1 = c, c2 = c;
      c1.tolerance = t1;
      c2.tolerance = t1 * 1.5;
      const auto r1 = check_ports(vars, c1);
      const auto r2 = check_ports(vars, c2);
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if (r1.ports[i].in_tolerance) CHECK(r2.ports[i].in_tolerance);
      }
    }
  }
}

TEST_CASE("suggest_adjustment") {
  const auto c = ModelCoefficients::linear_default();
  auto a = suggest_adjustment(-54.47, 838.0, c);
  CHECK(a.delta_area == Approx(-54.47));
  CHECK(round_half_percent(a.delta_percent) == 6.5);
  CHECK(std::abs(a.delta_percent - 6.5) < 0.1);

  a = suggest_adjustment(-66.73, 953.3, c);
  CHECK(a.delta_area == Approx(-66.73));
  CHECK(round_half_percent(a.delta_percent) == 7.0);
  CHECK(std::abs(a.delta_percent - 7.0) < 0.1);

  a = suggest_adjustment(0.0, 500.0, c);
  CHECK(a.delta_area == 0.0);
  CHECK(a.delta_percent == 0.0);

  a = suggest_adjustment(-54.47, 838.0, c, AdjustTarget::range_edge);
  CHECK(a.delta_area == Approx(-19.47));
  a = suggest_adjustment(50.0, 838.0, c, AdjustTarget::range_edge);
  CHECK(a.delta_area == Approx(15.0));
  a = suggest_adjustment(10.0, 838.0, c, AdjustTarget::range_edge);
  CHECK(a.delta_area == 0.0);

  CHECK_THROWS_AS(suggest_adjustment(1.0, 0.0, c), DomainError);

  // Log-linear: the balanced area is ratio * area.
  auto g = ModelCoefficients::loglinear_default();
  a = suggest_adjustment(1.2, 500.0, g);
  CHECK(a.delta_area == Approx(100.0));
  CHECK(a.delta_percent == Approx(20.0));

  SUBCASE("direction follows the sign of the value") {
    oracle::Rng rng(21);
    for (int i = 0; i < 200; ++i) {
      const double v = rng.uniform(-200.0, 200.0);
      const auto s = suggest_adjustment(v, 800.0, c);
      if (v < -35.0) CHECK(s.delta_area < 0.0);
      if (v > 35.0) CHECK(s.delta_area > 0.0);
    }
  }
}

TEST_CASE("check_ports") {
  const auto c = ModelCoefficients::linear_default();
  oracle::Rng rng(1);
  auto vars = random_die(rng);
  const auto deltas = solve_area_deltas(
      [&] {
        std::vector<double> v;
        for (const auto& x : vars) v.push_back(eval_linear(x, c));
        return v;
      }(),
      c.coef_area_total);
  const auto balanced = apply_area_deltas(vars, deltas);
  const auto r = check_ports(balanced, c);
  CHECK(r.all_in_tolerance);
  for (const auto& p : r.ports) CHECK(p.suggestion.delta_area == 0.0);

  auto shifted = balanced;
  shifted[0].area += 60.0;  // value -60 before the total moves
  const auto r2 = check_ports(shifted, c);
  CHECK_FALSE(r2.all_in_tolerance);
  CHECK_FALSE(r2.ports[0].in_tolerance);
  CHECK(r2.ports[0].suggestion.delta_area < 0.0);
  CHECK(r2.ports[1].in_tolerance);

  CHECK_THROWS_AS(check_ports(std::vector<PortVariables>{}, c), ValidationError);
}

TEST_CASE("solve_area_deltas") {
  const double ct = 0.012;
  CHECK(solve_area_deltas(std::vector<double>{-54.47}, ct)[0] == Approx(-54.47 / 0.988).epsilon(1e-12));
  CHECK(solve_area_deltas(std::vector<double>{-54.47}, ct)[0] == Approx(-55.1315789473684).epsilon(1e-12));
  for (double d : solve_area_deltas(std::vector<double>(16, 0.0), ct)) CHECK(d == 0.0);
  CHECK_THROWS_AS(solve_area_deltas(std::vector<double>{}, ct), DomainError);
  CHECK_THROWS_AS(solve_area_deltas(std::vector<double>(4, 1.0), 0.25), DomainError);

  SUBCASE("symmetric values give symmetric deltas") {
    std::vector<double> v;
    for (int k = 0; k < 4; ++k) {
      for (double x : {-40.0, 12.0, 3.0, 25.0}) v.push_back(x);
    }
    const auto d = solve_area_deltas(v, ct);
    for (int k = 1; k < 4; ++k) {
      for (int j = 0; j < 4; ++j) CHECK(d[4 * k + j] == Approx(d[j]).epsilon(1e-14));
    }
  }
}

TEST_CASE("rebalance against the fixed-point oracle") {
  const auto c = ModelCoefficients::linear_default();
  oracle::Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto vars = random_die(rng);
    const auto r = rebalance_ports(vars, c);
    const auto reference = fixed_point_deltas(vars);
    REQUIRE(r.ports.size() == vars.size());
    double total = 0.0;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      CHECK(std::abs(r.ports[i].predicted_value) < 1e-9);
      CHECK(std::abs(r.ports[i].delta_area - reference[i]) < 1e-6);
      CHECK(r.ports[i].new_area == Approx(vars[i].area + r.ports[i].delta_area));
      total += r.ports[i].new_area;
    }
    CHECK(r.area_total_after == Approx(total).epsilon(1e-12));

    // Independent re-evaluation with the arithmetic oracle.
    std::vector<double> deltas;
    for (const auto& p : r.ports) deltas.push_back(p.delta_area);
    for (const auto& v : apply_area_deltas(vars, deltas)) CHECK(std::abs(oracle_value(v)) < 1e-9);
  }
  CHECK_THROWS_AS(rebalance_ports(random_die(rng), ModelCoefficients::loglinear_default()), UsageError);
}
