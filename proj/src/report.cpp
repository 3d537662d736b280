#include "diebal/report.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace diebal::report {

using nlohmann::json;

namespace {

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string fmt_optional(const std::optional<double>& v, int width) {
  return v ? fmt::format("{:>{}.4f}", *v, width) : fmt::format("{:>{}}", "-", width);
}

// Values that round to zero at the displayed precision print as 0, not -0.
double shown(double v, int decimals) {
  return std::abs(v) < 0.5 * std::pow(10.0, -decimals) ? 0.0 : v;
}

std::string_view target_name(AdjustTarget t) { return t == AdjustTarget::zero ? "zero" : "range_edge"; }

}  // namespace

void print_variables(std::ostream& out, std::string_view die_name,
                     std::span<const PortVariables> vars) {
  if (!die_name.empty()) fmt::print(out, "die: {}\n", die_name);
  fmt::print(out, "{:<10}{:>12}{:>12}{:>10}{:>12}{:>12}{:>16}{:>10}\n", "port", "area", "perimeter",
             "dist", "area_prof", "perim_prof", "dist_port_prof", "depth");
  for (const auto& v : vars) {
    fmt::print(out, "{:<10}{:>12.2f}{:>12.2f}{:>10.2f}{:>12.2f}{:>12.2f}{:>16.2f}{:>10}\n",
               v.port_id, v.area, v.perimeter, v.dist, v.area_prof, v.perim_prof, v.dist_port_prof,
               v.depth ? fmt::format("{:.2f}", *v.depth) : "-");
  }
  if (!vars.empty()) {
    fmt::print(out, "area_total: {:.2f} mm2   perim_total: {:.2f} mm\n", vars.front().area_total,
               vars.front().perim_total);
  }
}

json variables_json(std::string_view die_name, std::span<const PortVariables> vars) {
  json ports = json::array();
  for (const auto& v : vars) {
    ports.push_back({{"port_id", v.port_id},
                     {"area", v.area},
                     {"perimeter", v.perimeter},
                     {"dist", v.dist},
                     {"area_prof", v.area_prof},
                     {"perim_prof", v.perim_prof},
                     {"dist_port_prof", v.dist_port_prof},
                     {"depth", optional_json(v.depth)}});
  }
  return {{"die", die_name},
          {"area_total", vars.empty() ? 0.0 : vars.front().area_total},
          {"perim_total", vars.empty() ? 0.0 : vars.front().perim_total},
          {"ports", ports}};
}

void print_verification(std::ostream& out, const VerificationReport& r) {
  for (const auto& w : r.warnings) fmt::print(out, "warning: {}\n", w);
  if (!r.die_name.empty()) fmt::print(out, "die: {}\n", r.die_name);
  const bool linear = r.kind == ModelKind::linear;
  fmt::print(out, "model: {}", to_string(r.kind));
  if (r.tolerance) {
    fmt::print(out, ", tolerance {}{}", linear ? "+/-" : "ratio 1 +/- ", *r.tolerance);
    if (linear) fmt::print(out, " mm2");
  }
  fmt::print(out, "\n{:<10}{:>12}{:>12}{:>8}{:>14}{:>10}\n", "port", "area", "value", "status",
             "delta_area", "delta_%");
  for (const auto& p : r.ports) {
    const auto& s = p.suggestion;
    fmt::print(out, "{:<10}{:>12.2f}{:>12.{}f}{:>8}", p.port_id, p.area, shown(p.value, linear ? 2 : 4), linear ? 2 : 4,
               p.in_tolerance ? "ok" : "OUT");
    if (p.in_tolerance) {
      fmt::print(out, "{:>14}{:>10}\n", "-", "-");
    } else {
      fmt::print(out, "{:>14.2f}{:>10.1f}\n", s.delta_area, round_half_percent(s.delta_percent));
    }
  }
  for (const auto& p : r.ports) {
    if (p.in_tolerance) continue;
    fmt::print(out, "port {}: {} area by about {:.2f} mm2 ({:.1f}%)\n", p.port_id,
               p.suggestion.delta_area < 0 ? "reduce" : "increase", std::abs(p.suggestion.delta_area),
               round_half_percent(p.suggestion.delta_percent));
  }
  if (r.all_in_tolerance) {
    if (r.tolerance) {
      fmt::print(out, "all ports within {}{}{}\n", linear ? "±" : "ratio 1 ± ", *r.tolerance,
                 linear ? " mm²" : "");
    } else {
      fmt::print(out, "no tolerance set; nothing flagged\n");
    }
  } else {
    const auto n = std::count_if(r.ports.begin(), r.ports.end(), [](const auto& p) { return !p.in_tolerance; });
    fmt::print(out, "{} port(s) out of tolerance\n", n);
  }
}

json verification_json(const VerificationReport& r) {
  json ports = json::array();
  for (const auto& p : r.ports) {
    ports.push_back({{"port_id", p.port_id},
                     {"area", p.area},
                     {"value", p.value},
                     {"in_tolerance", p.in_tolerance},
                     {"suggested_delta_area", p.suggestion.delta_area},
                     {"suggested_delta_percent", p.suggestion.delta_percent}});
  }
  return {{"die", r.die_name},
          {"model", to_string(r.kind)},
          {"tolerance", optional_json(r.tolerance)},
          {"target", target_name(r.target)},
          {"all_in_tolerance", r.all_in_tolerance},
          {"warnings", r.warnings},
          {"ports", ports}};
}

void print_rebalance(std::ostream& out, const RebalanceResult& r) {
  for (const auto& w : r.warnings) fmt::print(out, "warning: {}\n", w);
  if (!r.die_name.empty()) fmt::print(out, "die: {}\n", r.die_name);
  fmt::print(out, "{:<10}{:>12}{:>12}{:>14}{:>12}{:>12}\n", "port", "area", "value", "delta_area",
             "new_area", "new_value");
  for (const auto& p : r.ports) {
    fmt::print(out, "{:<10}{:>12.2f}{:>12.2f}{:>14.2f}{:>12.2f}{:>12.2f}\n", p.port_id, p.area,
               shown(p.value, 2), shown(p.delta_area, 2), p.new_area, shown(p.predicted_value, 2));
  }
  fmt::print(out, "area_total: {:.2f} -> {:.2f} mm2\n", r.area_total_before, r.area_total_after);
}

json rebalance_json(const RebalanceResult& r) {
  json ports = json::array();
  for (const auto& p : r.ports) {
    ports.push_back({{"port_id", p.port_id},
                     {"area", p.area},
                     {"value", p.value},
                     {"delta_area", p.delta_area},
                     {"new_area", p.new_area},
                     {"predicted_value", p.predicted_value}});
  }
  return {{"die", r.die_name},
          {"area_total_before", r.area_total_before},
          {"area_total_after", r.area_total_after},
          {"warnings", r.warnings},
          {"ports", ports}};
}

void print_regression(std::ostream& out, const RegressionReport& r) {
  fmt::print(out, "{} stepwise regression, {} observations (entry p < {}, removal p > {})\n",
             r.log_transformed ? "log-linear" : "linear", r.observations, r.entry_p, r.removal_p);
  for (const auto& s : r.step_trace) {
    fmt::print(out, "  step {}: {} {} (p = {:.4g})\n", s.step,
               s.action == StepAction::enter ? "enter " : "remove", s.variable, s.p);
  }
  fmt::print(out, "{:<20}{:>14}{:>12}{:>10}{:>10}{:>10}{:>10}{:>10}\n", "variable", "coef",
             "std_err", "t", "p", "beta", "partial", "semipart");
  auto row = [&](const CoefficientStats& c) {
    fmt::print(out, "{:<20}{:>14.6g}{:>12.4g}{:>10.3f}{:>10.4f}{}{}{}\n", c.name, c.estimate,
               c.std_error, c.t, c.p, fmt_optional(c.beta, 10), fmt_optional(c.partial, 10),
               fmt_optional(c.semipartial, 10));
  };
  row(r.intercept);
  for (const auto& c : r.coefficients) row(c);
  for (const auto& e : r.excluded) {
    fmt::print(out, "  excluded {:<20} entry p = {}\n", e.name,
               e.entry_p ? fmt::format("{:.4f}", *e.entry_p) : "collinear");
  }
  fmt::print(out, "R2 = {:.4f}   adjusted R2 = {:.4f}   std. error of estimate = {:.2f}\n", r.r2,
             r.adjusted_r2, r.std_error_estimate);
  if (r.log_transformed) {
    fmt::print(out, "multiplier exp(intercept) = {:.4f}\n", std::exp(r.intercept.estimate));
  }
}

json regression_json(const RegressionReport& r) {
  auto stats = [](const CoefficientStats& c) {
    return json{{"name", c.name},           {"estimate", c.estimate},
                {"std_error", c.std_error}, {"t", c.t},
                {"p", c.p},                 {"beta", optional_json(c.beta)},
                {"partial", optional_json(c.partial)},
                {"semipartial", optional_json(c.semipartial)}};
  };
  json coefs = json::array();
  for (const auto& c : r.coefficients) coefs.push_back(stats(c));
  json excluded = json::array();
  for (const auto& e : r.excluded) excluded.push_back({{"name", e.name}, {"entry_p", optional_json(e.entry_p)}});
  json trace = json::array();
  for (const auto& s : r.step_trace) {
    trace.push_back({{"step", s.step},
                     {"action", s.action == StepAction::enter ? "enter" : "remove"},
                     {"variable", s.variable},
                     {"p", s.p}});
  }
  return {{"log_transformed", r.log_transformed},
          {"observations", r.observations},
          {"residual_df", r.residual_df},
          {"included_variables", r.included_variables},
          {"intercept", stats(r.intercept)},
          {"coefficients", coefs},
          {"excluded", excluded},
          {"r2", r.r2},
          {"adjusted_r2", r.adjusted_r2},
          {"std_error_estimate", r.std_error_estimate},
          {"entry_p", r.entry_p},
          {"removal_p", r.removal_p},
          {"step_trace", trace}};
}

}  // namespace diebal::report
