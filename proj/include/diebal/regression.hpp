#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "diebal/model.hpp"

namespace diebal {

/// Port observations for re-deriving the balancing models. The response is
/// the port area; `candidates` holds one column per candidate regressor named
/// in `candidate_names` (canonical names: dist, area_total, area_prof,
/// perim_prof, dist_port_prof, perimeter, perim_total, depth,
/// container_diameter, max_pressure). Columns absent from the source file are
/// simply not present.
struct Dataset {
  std::vector<std::string> candidate_names;
  Eigen::MatrixXd candidates;
  Eigen::VectorXd response;
  std::vector<std::string> row_labels;

  Eigen::Index rows() const { return response.size(); }
  /// Column index of a candidate, or nullopt.
  std::optional<Eigen::Index> column(std::string_view name) const;
  /// Copy restricted to the named candidate columns, in the given order.
  Dataset select(const std::vector<std::string>& names) const;
};

/// Shape and value checks. `log_space` additionally demands strictly positive
/// values. Throws FitError (shape) or DomainError (values) naming row and column.
void validate(const Dataset& d, bool log_space = false);

/// Two-sided tail probability of Student's t with `df` degrees of freedom,
/// computed through the regularized incomplete beta function.
double student_t_two_sided_p(double t, double df);

struct CoefficientStats {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t = 0.0;
  double p = 1.0;
  // Not defined for the intercept.
  std::optional<double> beta;
  std::optional<double> partial;
  std::optional<double> semipartial;
};

enum class StepAction { enter, remove };

struct StepRecord {
  int step = 0;
  StepAction action = StepAction::enter;
  std::string variable;
  double p = 0.0;
};

struct ExcludedCandidate {
  std::string name;
  /// p value the candidate would have if entered next; nullopt when it is
  /// collinear with the included set.
  std::optional<double> entry_p;
};

struct RegressionReport {
  bool log_transformed = false;
  std::vector<std::string> included_variables;
  CoefficientStats intercept;
  std::vector<CoefficientStats> coefficients;  // same order as included_variables
  std::vector<ExcludedCandidate> excluded;
  double r2 = 0.0;
  double adjusted_r2 = 0.0;
  double std_error_estimate = 0.0;
  Eigen::Index observations = 0;
  Eigen::Index residual_df = 0;
  Eigen::VectorXd residuals;
  std::vector<StepRecord> step_trace;
  double entry_p = 0.05;
  double removal_p = 0.10;

  const CoefficientStats* find(std::string_view name) const;
};

/// Ordinary least squares with an intercept, solved through a column-pivoted
/// Householder QR of the centred and scaled design. `names` labels the
/// columns of `X`. Fills coefficients, standard errors, t and p values
/// (n - k - 1 degrees of freedom), betas, partial and semi-partial
/// correlations, r2, adjusted r2 and the standard error of the estimate.
///
/// Throws FitError on too few rows, a constant response or linearly dependent
/// columns; the message lists the dependent column set.
RegressionReport fit_ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         std::vector<std::string> names);

/// Standardized coefficients coef_j * sd(x_j) / sd(y); `X` holds the columns
/// of `report.included_variables` in order. Throws FitError for a constant column.
std::vector<double> beta_coefficients(const RegressionReport& report, const Eigen::MatrixXd& X,
                                      const Eigen::VectorXd& y);

/// Correlation of x_j and y after removing the linear effect of `others`
/// (plus an intercept) from both. nullopt when either residual is constant.
std::optional<double> partial_correlation(const Eigen::VectorXd& xj, const Eigen::VectorXd& y,
                                          const Eigen::MatrixXd& others);

/// Correlation of y with x_j after removing the effect of `others` from x_j only.
std::optional<double> semipartial_correlation(const Eigen::VectorXd& xj, const Eigen::VectorXd& y,
                                              const Eigen::MatrixXd& others);

struct StepwiseOptions {
  double entry_p = 0.05;
  double removal_p = 0.10;
};

/// Forward/backward stepwise selection. Each round enters the excluded
/// candidate with the smallest trial-fit p value when it is below `entry_p`
/// (ties: larger |t|, then column order), then removes the included variable
/// with the largest p value when it exceeds `removal_p`. A variable removed
/// from a given included set cannot re-enter that same set. The intercept is
/// always kept.
RegressionReport stepwise_fit(const Dataset& d, const StepwiseOptions& opts = {});

/// Stepwise fit on natural logs of the response and every candidate. The
/// coefficients are exponents of a power law and exp(intercept) is its multiplier.
RegressionReport fit_loglinear(const Dataset& d, const StepwiseOptions& opts = {});

/// Converts a report over the model variables into balancing coefficients.
/// Linear reports carry their standard error and a tolerance of half of it.
/// Throws UsageError when the report includes a variable the balancing model
/// does not use (e.g. depth).
ModelCoefficients to_model_coefficients(const RegressionReport& report);

}  // namespace diebal
