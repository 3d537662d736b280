#include "diebal/model.hpp"

#include <cmath>

#include <fmt/format.h>

#include "diebal/error.hpp"

namespace diebal {

std::string_view to_string(ModelKind k) {
  return k == ModelKind::linear ? "linear" : "loglinear";
}

ModelKind parse_model_kind(std::string_view s) {
  if (s == "linear") return ModelKind::linear;
  if (s == "loglinear") return ModelKind::loglinear;
  throw UsageError(fmt::format("unknown model kind '{}' (expected linear or loglinear)", s));
}

ModelCoefficients ModelCoefficients::linear_default() {
  ModelCoefficients c;
  c.kind = ModelKind::linear;
  c.intercept = -25.048;
  c.coef_dist = 5.072;
  c.coef_area_total = 0.012;
  c.coef_area_prof = 0.593;
  c.coef_dist_port_prof = 10.358;
  c.coef_perim_prof = 1.211;
  c.std_error = 70.77;
  c.tolerance = 35.0;
  return c;
}

ModelCoefficients ModelCoefficients::loglinear_default() {
  ModelCoefficients c;
  c.kind = ModelKind::loglinear;
  c.intercept = 0.956;
  c.coef_dist = 0.479;
  c.coef_area_total = 0.304;
  c.coef_area_prof = 0.0;
  c.coef_dist_port_prof = 0.120;
  c.coef_perim_prof = 0.111;
  return c;
}

void validate(const ModelCoefficients& c) {
  if (c.tolerance && !(*c.tolerance > 0.0)) {
    throw ValidationError(fmt::format("tolerance must be positive, got {}", *c.tolerance));
  }
  for (double v : {c.intercept, c.coef_dist, c.coef_area_total, c.coef_area_prof,
                   c.coef_dist_port_prof, c.coef_perim_prof}) {
    if (!std::isfinite(v)) throw ValidationError("model coefficients must be finite");
  }
}

double eval_linear(const PortVariables& v, const ModelCoefficients& c) {
  if (c.kind != ModelKind::linear) {
    throw UsageError("eval_linear called with log-linear coefficients");
  }
  return c.intercept - v.area + c.coef_dist * v.dist + c.coef_area_total * v.area_total +
         c.coef_area_prof * v.area_prof + c.coef_dist_port_prof * v.dist_port_prof +
         c.coef_perim_prof * v.perim_prof;
}

double eval_loglinear(const PortVariables& v, const ModelCoefficients& c) {
  if (c.kind != ModelKind::loglinear) {
    throw UsageError("eval_loglinear called with linear coefficients");
  }
  if (!(v.area > 0.0)) {
    throw DomainError(fmt::format("port '{}': area must be positive, got {}", v.port_id, v.area));
  }
  struct Term {
    const char* name;
    double value;
    double exponent;
  };
  const Term terms[] = {
      {"dist", v.dist, c.coef_dist},
      {"area_total", v.area_total, c.coef_area_total},
      {"area_prof", v.area_prof, c.coef_area_prof},
      {"dist_port_prof", v.dist_port_prof, c.coef_dist_port_prof},
      {"perim_prof", v.perim_prof, c.coef_perim_prof},
  };
  double log_rhs = c.intercept;
  for (const auto& t : terms) {
    if (t.exponent == 0.0) continue;
    if (!(t.value > 0.0)) {
      throw DomainError(
          fmt::format("port '{}': {} must be positive, got {}", v.port_id, t.name, t.value));
    }
    log_rhs += t.exponent * std::log(t.value);
  }
  return std::exp(log_rhs - std::log(v.area));
}

double evaluate(const PortVariables& v, const ModelCoefficients& c) {
  return c.kind == ModelKind::linear ? eval_linear(v, c) : eval_loglinear(v, c);
}

bool in_tolerance(double value, const ModelCoefficients& c) {
  if (!c.tolerance) return true;
  const double centre = c.kind == ModelKind::linear ? 0.0 : 1.0;
  const double t = *c.tolerance;
  return centre - t < value && value < centre + t;
}

Adjustment suggest_adjustment(double value, double area, const ModelCoefficients& c,
                              AdjustTarget target) {
  if (!(area > 0.0)) {
    throw DomainError(fmt::format("port area must be positive, got {}", area));
  }
  const bool linear = c.kind == ModelKind::linear;
  const double centre = linear ? 0.0 : 1.0;
  double goal = centre;
  if (target == AdjustTarget::range_edge) {
    if (in_tolerance(value, c)) return {};
    if (c.tolerance) goal = value < centre ? centre - *c.tolerance : centre + *c.tolerance;
  }
  const double delta = linear ? value - goal : area * (value - goal);
  return {delta, 100.0 * std::abs(delta) / area};
}

double round_half_percent(double percent) { return std::round(percent * 2.0) / 2.0; }

VerificationReport check_ports(std::span<const PortVariables> vars, const ModelCoefficients& c,
                               AdjustTarget target) {
  if (vars.empty()) throw ValidationError("die has no ports");
  validate(c);
  VerificationReport r;
  r.kind = c.kind;
  r.tolerance = c.tolerance;
  r.target = target;
  for (const auto& v : vars) {
    PortCheck pc;
    pc.port_id = v.port_id;
    pc.area = v.area;
    pc.value = evaluate(v, c);
    pc.in_tolerance = in_tolerance(pc.value, c);
    if (!pc.in_tolerance) pc.suggestion = suggest_adjustment(pc.value, v.area, c, target);
    r.all_in_tolerance = r.all_in_tolerance && pc.in_tolerance;
    r.ports.push_back(std::move(pc));
  }
  return r;
}

VerificationReport check_die(const DieDesign& die, const ModelCoefficients& c,
                             AdjustTarget target) {
  if (die.port_count() == 0) throw ValidationError(fmt::format("die '{}' has no ports", die.name));
  auto r = check_ports(extract_port_variables(die), c, target);
  r.die_name = die.name;
  r.warnings = layout_warnings(die);
  return r;
}

std::vector<double> solve_area_deltas(std::span<const double> values, double coef_area_total) {
  const auto n = static_cast<double>(values.size());
  if (values.empty()) throw DomainError("no ports to rebalance");
  const double denom = coef_area_total * n - 1.0;
  if (std::abs(denom) < 1e-12) {
    throw DomainError(fmt::format(
        "singular area coupling: coef_area_total * port count = {} (must differ from 1)",
        coef_area_total * n));
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  const double shift = coef_area_total * sum / denom;
  std::vector<double> deltas;
  deltas.reserve(values.size());
  for (double v : values) deltas.push_back(v - shift);
  return deltas;
}

std::vector<PortVariables> apply_area_deltas(std::span<const PortVariables> vars,
                                             std::span<const double> deltas) {
  if (vars.size() != deltas.size()) {
    throw UsageError("apply_area_deltas: one delta per port required");
  }
  std::vector<PortVariables> out(vars.begin(), vars.end());
  double total = 0.0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].area += deltas[i];
    total += out[i].area;
  }
  for (auto& v : out) v.area_total = total;
  return out;
}

RebalanceResult rebalance_ports(std::span<const PortVariables> vars, const ModelCoefficients& c) {
  if (c.kind != ModelKind::linear) {
    throw UsageError("rebalance requires linear model coefficients");
  }
  std::vector<double> values;
  values.reserve(vars.size());
  for (const auto& v : vars) values.push_back(eval_linear(v, c));
  const auto deltas = solve_area_deltas(values, c.coef_area_total);
  const auto updated = apply_area_deltas(vars, deltas);

  RebalanceResult r;
  r.area_total_before = vars.front().area_total;
  r.area_total_after = updated.front().area_total;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    r.ports.push_back({vars[i].port_id, vars[i].area, values[i], deltas[i], updated[i].area,
                       eval_linear(updated[i], c)});
    if (!(updated[i].area > 0.0)) {
      r.warnings.push_back(
          fmt::format("port '{}': rebalanced area is not positive", vars[i].port_id));
    }
  }
  return r;
}

RebalanceResult rebalance(const DieDesign& die, const ModelCoefficients& c) {
  if (die.port_count() == 0) throw DomainError(fmt::format("die '{}' has no ports", die.name));
  auto r = rebalance_ports(extract_port_variables(die), c);
  r.die_name = die.name;
  auto w = layout_warnings(die);
  r.warnings.insert(r.warnings.begin(), w.begin(), w.end());
  return r;
}

}  // namespace diebal
