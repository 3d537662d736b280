#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "diebal/die.hpp"

namespace diebal {

enum class ModelKind { linear, loglinear };

std::string_view to_string(ModelKind k);
ModelKind parse_model_kind(std::string_view s);

/// Coefficients of a port-balancing model.
///
/// Linear kind: the verification value of a port is
///   intercept - area + sum(coef_x * x)
/// and a balanced port evaluates to 0 (mm^2).
///
/// Log-linear kind: coefficients are exponents and the verification value is
///   exp(intercept) * prod(x ^ coef_x) / area
/// which is 1 for a balanced port.
///
/// Absent coefficients are zero.
struct ModelCoefficients {
  ModelKind kind = ModelKind::linear;
  double intercept = 0.0;
  double coef_dist = 0.0;
  double coef_area_total = 0.0;
  double coef_area_prof = 0.0;
  double coef_dist_port_prof = 0.0;
  double coef_perim_prof = 0.0;
  /// Standard error of the area estimate, mm^2.
  std::optional<double> std_error;
  /// Half-width of the acceptance band. mm^2 for linear models; for
  /// log-linear models a band on the ratio around 1. Unset means nothing is flagged.
  std::optional<double> tolerance;

  /// The published linear model with its +/-35 mm^2 acceptance band.
  static ModelCoefficients linear_default();
  /// The published log-linear model. No tolerance is defined for it.
  static ModelCoefficients loglinear_default();
};

/// Throws ValidationError when the tolerance is not positive.
void validate(const ModelCoefficients& c);

/// Linear verification value, mm^2. Throws UsageError for a log-linear `c`.
double eval_linear(const PortVariables& v, const ModelCoefficients& c);

/// Log-linear verification ratio. Throws UsageError for a linear `c` and
/// DomainError naming the first nonpositive participating variable.
double eval_loglinear(const PortVariables& v, const ModelCoefficients& c);

/// Dispatches on `c.kind`.
double evaluate(const PortVariables& v, const ModelCoefficients& c);

/// True when the value lies strictly inside the acceptance band. Always true
/// when the coefficients carry no tolerance.
bool in_tolerance(double value, const ModelCoefficients& c);

enum class AdjustTarget {
  zero,        // drive the verification value to the centre of the band
  range_edge,  // minimal change that reaches the nearest band edge
};

struct Adjustment {
  /// Signed area change, mm^2. Negative means the port should shrink.
  double delta_area = 0.0;
  /// 100 * |delta_area| / area.
  double delta_percent = 0.0;
};

/// First-order estimate of the port area change that brings a verification
/// value back into balance. For linear models the value moves by roughly
/// -1 mm^2 per mm^2 of port area, so the change equals the distance from the
/// value to the target. For log-linear models the balanced area is `ratio * area`.
/// Throws DomainError for a nonpositive area.
Adjustment suggest_adjustment(double value, double area, const ModelCoefficients& c,
                              AdjustTarget target = AdjustTarget::zero);

/// Rounds a percentage to the nearest 0.5 for display.
double round_half_percent(double percent);

struct PortCheck {
  std::string port_id;
  double area = 0.0;
  double value = 0.0;
  bool in_tolerance = true;
  Adjustment suggestion;
};

struct VerificationReport {
  std::string die_name;
  ModelKind kind = ModelKind::linear;
  std::optional<double> tolerance;
  AdjustTarget target = AdjustTarget::zero;
  std::vector<PortCheck> ports;
  bool all_in_tolerance = true;
  std::vector<std::string> warnings;
};

/// Evaluates every port of the die. Ports inside the band get a zero
/// suggestion. Throws ValidationError for an empty die.
VerificationReport check_die(const DieDesign& die, const ModelCoefficients& c,
                             AdjustTarget target = AdjustTarget::zero);

/// Same as check_die, starting from already extracted variables.
VerificationReport check_ports(std::span<const PortVariables> vars, const ModelCoefficients& c,
                               AdjustTarget target = AdjustTarget::zero);

/// Exact area changes that zero every linear verification value when all
/// other variables are held fixed, accounting for the coupling through the
/// total port area:
///
///   (-I + c_T * 1 1^T) delta = -v   =>   delta_i = v_i - c_T * sum(v) / (c_T * n - 1)
///
/// Throws DomainError when c_T * n == 1 or when `values` is empty.
std::vector<double> solve_area_deltas(std::span<const double> values, double coef_area_total);

/// Returns a copy of `vars` with port areas shifted by `deltas` and the
/// die-level total area recomputed. Geometry-dependent variables are kept.
std::vector<PortVariables> apply_area_deltas(std::span<const PortVariables> vars,
                                             std::span<const double> deltas);

struct RebalanceEntry {
  std::string port_id;
  double area = 0.0;
  double value = 0.0;
  double delta_area = 0.0;
  double new_area = 0.0;
  double predicted_value = 0.0;
};

struct RebalanceResult {
  std::string die_name;
  std::vector<RebalanceEntry> ports;
  double area_total_before = 0.0;
  double area_total_after = 0.0;
  std::vector<std::string> warnings;
};

/// Computes the area deltas of `solve_area_deltas` for every port of the die
/// and the verification values predicted after applying them. Only linear
/// coefficients are accepted (UsageError otherwise). The die is not modified.
RebalanceResult rebalance(const DieDesign& die, const ModelCoefficients& c);
RebalanceResult rebalance_ports(std::span<const PortVariables> vars, const ModelCoefficients& c);

}  // namespace diebal
