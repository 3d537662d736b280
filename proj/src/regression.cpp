#include "diebal/regression.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/special_functions/beta.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "diebal/error.hpp"

namespace diebal {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// Relative pivot threshold of the QR rank test on unit-norm columns.
constexpr double kRankThreshold = 1e-10;

// Residual sums of squares below this fraction of the total sum of squares are
// rounding noise. Inference uses the floor so that an exact fit does not turn
// rounding noise in the coefficients into spurious t statistics.
constexpr double kResidualFloor = 1e-20;

struct LeastSquares {
  VectorXd coef;        // intercept first
  MatrixXd xtx_inv;     // (A^T A)^-1 for A = [1 X]
  VectorXd residuals;
  double sse = 0.0;
  double sst = 0.0;
};

// Column indices are 0 for the intercept and j + 1 for X column j.
[[noreturn]] void throw_dependent(const MatrixXd& Z, const std::vector<std::string>& names) {
  Eigen::FullPivLU<MatrixXd> lu(Z);
  lu.setThreshold(kRankThreshold);
  const MatrixXd kernel = lu.kernel();
  std::vector<std::string> dependent;
  for (Index i = 0; i < Z.cols(); ++i) {
    bool involved = kernel.cols() == 0 || (kernel.rows() == Z.cols() && kernel.row(i).cwiseAbs().maxCoeff() > 1e-8);
    if (involved) dependent.push_back(i == 0 ? "(intercept)" : names[static_cast<std::size_t>(i - 1)]);
  }
  throw FitError(fmt::format("regressors are linearly dependent: {{{}}}", fmt::join(dependent, ", ")));
}

LeastSquares solve_least_squares(const MatrixXd& X, const VectorXd& y,
                                 const std::vector<std::string>& names) {
  const Index n = X.rows();
  const Index k = X.cols();
  if (y.size() != n) throw FitError("response length does not match regressor rows");
  if (n < k + 2) {
    throw FitError(fmt::format("need at least {} rows for {} regressors, got {}", k + 2, k, n));
  }

  // Centred, unit-norm columns; the intercept column is orthogonal to them.
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  MatrixXd Z(n, k + 1);
  VectorXd mean(k), scale(k);
  Z.col(0).setConstant(1.0 / sqrt_n);
  for (Index j = 0; j < k; ++j) {
    mean(j) = X.col(j).mean();
    Z.col(j + 1) = X.col(j).array() - mean(j);
    scale(j) = Z.col(j + 1).norm();
    const double magnitude = X.col(j).cwiseAbs().maxCoeff();
    if (!(scale(j) > 1e-14 * magnitude * sqrt_n) || scale(j) == 0.0) {
      throw FitError(fmt::format("regressors are linearly dependent: {{(intercept), {}}}",
                                 names[static_cast<std::size_t>(j)]));
    }
    Z.col(j + 1) /= scale(j);
  }

  Eigen::ColPivHouseholderQR<MatrixXd> qr(Z);
  qr.setThreshold(kRankThreshold);
  if (qr.rank() < k + 1) throw_dependent(Z, names);

  const VectorXd c = qr.solve(y);
  const MatrixXd R = qr.matrixR().topLeftCorner(k + 1, k + 1).triangularView<Eigen::Upper>();
  const MatrixXd r_inv =
      R.triangularView<Eigen::Upper>().solve(MatrixXd::Identity(k + 1, k + 1));
  const auto& perm = qr.colsPermutation();
  const MatrixXd ztz_inv = perm * (r_inv * r_inv.transpose()) * perm.transpose();

  // Map scaled coefficients back: b = T c.
  MatrixXd T = MatrixXd::Zero(k + 1, k + 1);
  T(0, 0) = 1.0 / sqrt_n;
  for (Index j = 0; j < k; ++j) {
    T(j + 1, j + 1) = 1.0 / scale(j);
    T(0, j + 1) = -mean(j) / scale(j);
  }

  LeastSquares ls;
  ls.coef = T * c;
  ls.xtx_inv = T * ztz_inv * T.transpose();
  ls.residuals = y - Z * c;
  ls.sse = ls.residuals.squaredNorm();
  ls.sst = (y.array() - y.mean()).matrix().squaredNorm();
  return ls;
}

struct Inference {
  VectorXd se;
  VectorXd t;
  VectorXd p;
};

Inference infer(const LeastSquares& ls, Index n) {
  const Index k1 = ls.coef.size();
  const double df = static_cast<double>(n - k1);
  const double sigma2 = std::max(ls.sse, kResidualFloor * ls.sst) / df;
  Inference inf;
  inf.se.resize(k1);
  inf.t.resize(k1);
  inf.p.resize(k1);
  for (Index i = 0; i < k1; ++i) {
    inf.se(i) = std::sqrt(sigma2 * std::max(ls.xtx_inv(i, i), 0.0));
    if (inf.se(i) > 0.0) {
      inf.t(i) = ls.coef(i) / inf.se(i);
    } else {
      inf.t(i) = ls.coef(i) == 0.0 ? 0.0 : std::copysign(INFINITY, ls.coef(i));
    }
    inf.p(i) = student_t_two_sided_p(inf.t(i), df);
  }
  return inf;
}

std::optional<double> correlation(const VectorXd& a, const VectorXd& b) {
  const VectorXd ac = a.array() - a.mean();
  const VectorXd bc = b.array() - b.mean();
  const double na = ac.norm();
  const double nb = bc.norm();
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  return std::clamp(ac.dot(bc) / (na * nb), -1.0, 1.0);
}

// Residual of v regressed on `others` plus intercept; nullopt when the
// residual is numerically zero.
std::optional<VectorXd> residualize(const VectorXd& v, const MatrixXd& others) {
  const double spread = (v.array() - v.mean()).matrix().squaredNorm();
  if (spread == 0.0) return std::nullopt;
  VectorXd e;
  if (others.cols() == 0) {
    e = v.array() - v.mean();
  } else {
    std::vector<std::string> names;
    for (Index j = 0; j < others.cols(); ++j) names.push_back(fmt::format("x{}", j));
    e = solve_least_squares(others, v, names).residuals;
  }
  if (e.squaredNorm() <= kResidualFloor * spread) return std::nullopt;
  return e;
}

MatrixXd drop_column(const MatrixXd& X, Index j) {
  MatrixXd out(X.rows(), X.cols() - 1);
  for (Index c = 0, o = 0; c < X.cols(); ++c) {
    if (c != j) out.col(o++) = X.col(c);
  }
  return out;
}

MatrixXd gather(const MatrixXd& X, const std::vector<Index>& cols) {
  MatrixXd out(X.rows(), static_cast<Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) out.col(static_cast<Index>(i)) = X.col(cols[i]);
  return out;
}

double sample_sd(const VectorXd& v) {
  return std::sqrt((v.array() - v.mean()).square().sum() / static_cast<double>(v.size() - 1));
}

struct Trial {
  double p = 1.0;
  double abs_t = 0.0;
};

// p and |t| of the last column when `cols` is fitted; nullopt if collinear.
std::optional<Trial> trial_fit(const Dataset& d, const std::vector<Index>& cols) {
  std::vector<std::string> names;
  for (Index c : cols) names.push_back(d.candidate_names[static_cast<std::size_t>(c)]);
  try {
    const auto ls = solve_least_squares(gather(d.candidates, cols), d.response, names);
    const auto inf = infer(ls, d.rows());
    const Index last = inf.p.size() - 1;
    return Trial{inf.p(last), std::abs(inf.t(last))};
  } catch (const FitError&) {
    return std::nullopt;
  }
}

}  // namespace

std::optional<Index> Dataset::column(std::string_view name) const {
  for (std::size_t i = 0; i < candidate_names.size(); ++i) {
    if (candidate_names[i] == name) return static_cast<Index>(i);
  }
  return std::nullopt;
}

Dataset Dataset::select(const std::vector<std::string>& names) const {
  Dataset out;
  out.response = response;
  out.row_labels = row_labels;
  out.candidates.resize(rows(), static_cast<Index>(names.size()));
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto c = column(names[i]);
    if (!c) throw UsageError(fmt::format("dataset has no column '{}'", names[i]));
    out.candidates.col(static_cast<Index>(i)) = candidates.col(*c);
    out.candidate_names.push_back(names[i]);
  }
  return out;
}

void validate(const Dataset& d, bool log_space) {
  const Index n = d.rows();
  const Index m = d.candidates.cols();
  if (d.candidates.rows() != n || static_cast<Index>(d.candidate_names.size()) != m) {
    throw FitError("dataset shape is inconsistent");
  }
  if (n < m + 2) {
    throw FitError(fmt::format("dataset has {} rows; {} candidate regressors need at least {}", n,
                               m, m + 2));
  }
  auto label = [&](Index r) {
    return static_cast<std::size_t>(r) < d.row_labels.size()
               ? fmt::format("row {} ({})", r + 1, d.row_labels[static_cast<std::size_t>(r)])
               : fmt::format("row {}", r + 1);
  };
  auto check = [&](Index r, std::string_view col, double v) {
    if (!std::isfinite(v)) throw DomainError(fmt::format("{}, column {}: value is not finite", label(r), col));
    if (log_space && !(v > 0.0)) {
      throw DomainError(fmt::format("{}, column {}: log transform needs a positive value, got {}",
                                    label(r), col, v));
    }
  };
  for (Index r = 0; r < n; ++r) {
    check(r, "area", d.response(r));
    for (Index c = 0; c < m; ++c) {
      check(r, d.candidate_names[static_cast<std::size_t>(c)], d.candidates(r, c));
    }
  }
}

double student_t_two_sided_p(double t, double df) {
  if (std::isnan(t)) return 1.0;
  if (std::isinf(t)) return 0.0;
  const double x = df / (df + t * t);
  return boost::math::ibeta(0.5 * df, 0.5, x);
}

const CoefficientStats* RegressionReport::find(std::string_view name) const {
  for (const auto& c : coefficients) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

RegressionReport fit_ols(const MatrixXd& X, const VectorXd& y, std::vector<std::string> names) {
  const Index n = X.rows();
  const Index k = X.cols();
  if (static_cast<Index>(names.size()) != k) throw UsageError("one name per regressor column required");
  const auto ls = solve_least_squares(X, y, names);
  if (ls.sst == 0.0) throw FitError("response has zero variance");
  const auto inf = infer(ls, n);

  RegressionReport r;
  r.observations = n;
  r.residual_df = n - k - 1;
  r.included_variables = names;
  r.residuals = ls.residuals;
  r.r2 = std::clamp(1.0 - ls.sse / ls.sst, 0.0, 1.0);
  r.adjusted_r2 = 1.0 - (1.0 - r.r2) * static_cast<double>(n - 1) / static_cast<double>(n - k - 1);
  r.std_error_estimate = std::sqrt(ls.sse / static_cast<double>(n - k - 1));
  r.intercept = {"(intercept)", ls.coef(0), inf.se(0), inf.t(0), inf.p(0), {}, {}, {}};
  for (Index j = 0; j < k; ++j) {
    CoefficientStats s{names[static_cast<std::size_t>(j)], ls.coef(j + 1), inf.se(j + 1),
                       inf.t(j + 1), inf.p(j + 1), {}, {}, {}};
    const MatrixXd others = drop_column(X, j);
    s.partial = partial_correlation(X.col(j), y, others);
    s.semipartial = semipartial_correlation(X.col(j), y, others);
    r.coefficients.push_back(std::move(s));
  }
  const auto betas = beta_coefficients(r, X, y);
  for (Index j = 0; j < k; ++j) r.coefficients[static_cast<std::size_t>(j)].beta = betas[static_cast<std::size_t>(j)];
  return r;
}

std::vector<double> beta_coefficients(const RegressionReport& report, const MatrixXd& X,
                                      const VectorXd& y) {
  if (static_cast<std::size_t>(X.cols()) != report.coefficients.size()) {
    throw UsageError("beta_coefficients: X must hold the included columns");
  }
  const double sy = sample_sd(y);
  if (sy == 0.0) throw FitError("response has zero variance");
  std::vector<double> out;
  for (Index j = 0; j < X.cols(); ++j) {
    const double sx = sample_sd(X.col(j));
    if (sx == 0.0) {
      throw FitError(fmt::format("column '{}' has zero variance",
                                 report.coefficients[static_cast<std::size_t>(j)].name));
    }
    out.push_back(report.coefficients[static_cast<std::size_t>(j)].estimate * sx / sy);
  }
  return out;
}

std::optional<double> partial_correlation(const VectorXd& xj, const VectorXd& y,
                                          const MatrixXd& others) {
  const auto ex = residualize(xj, others);
  const auto ey = residualize(y, others);
  if (!ex || !ey) return std::nullopt;
  return correlation(*ex, *ey);
}

std::optional<double> semipartial_correlation(const VectorXd& xj, const VectorXd& y,
                                              const MatrixXd& others) {
  const auto ex = residualize(xj, others);
  if (!ex) return std::nullopt;
  return correlation(y, *ex);
}

RegressionReport stepwise_fit(const Dataset& d, const StepwiseOptions& opts) {
  validate(d);
  const Index m = d.candidates.cols();
  std::vector<Index> included;
  std::set<std::pair<std::vector<Index>, Index>> forbidden;
  std::vector<StepRecord> trace;
  auto state = [&] {
    auto s = included;
    std::sort(s.begin(), s.end());
    return s;
  };
  auto is_included = [&](Index j) {
    return std::find(included.begin(), included.end(), j) != included.end();
  };

  const std::size_t max_actions = static_cast<std::size_t>(std::max<Index>(2 * m * m, 1));
  while (trace.size() < max_actions) {
    bool acted = false;

    std::optional<Index> best;
    Trial best_trial;
    const auto key = state();
    for (Index j = 0; j < m; ++j) {
      if (is_included(j) || forbidden.contains({key, j})) continue;
      auto cols = included;
      cols.push_back(j);
      const auto trial = trial_fit(d, cols);
      if (!trial) continue;
      if (!best || trial->p < best_trial.p ||
          (trial->p == best_trial.p && trial->abs_t > best_trial.abs_t)) {
        best = j;
        best_trial = *trial;
      }
    }
    if (best && best_trial.p < opts.entry_p) {
      included.push_back(*best);
      trace.push_back({static_cast<int>(trace.size()) + 1, StepAction::enter,
                       d.candidate_names[static_cast<std::size_t>(*best)], best_trial.p});
      acted = true;
    }

    if (!included.empty() && trace.size() < max_actions) {
      std::vector<std::string> names;
      for (Index c : included) names.push_back(d.candidate_names[static_cast<std::size_t>(c)]);
      const auto ls = solve_least_squares(gather(d.candidates, included), d.response, names);
      const auto inf = infer(ls, d.rows());
      Index worst = 0;
      for (Index i = 1; i < static_cast<Index>(included.size()); ++i) {
        if (inf.p(i + 1) > inf.p(worst + 1)) worst = i;
      }
      if (inf.p(worst + 1) > opts.removal_p) {
        const Index var = included[static_cast<std::size_t>(worst)];
        included.erase(included.begin() + worst);
        forbidden.insert({state(), var});
        trace.push_back({static_cast<int>(trace.size()) + 1, StepAction::remove,
                         d.candidate_names[static_cast<std::size_t>(var)], inf.p(worst + 1)});
        acted = true;
      }
    }
    if (!acted) break;
  }

  std::vector<std::string> names;
  for (Index c : included) names.push_back(d.candidate_names[static_cast<std::size_t>(c)]);
  RegressionReport r = fit_ols(gather(d.candidates, included), d.response, names);
  r.step_trace = std::move(trace);
  r.entry_p = opts.entry_p;
  r.removal_p = opts.removal_p;
  for (Index j = 0; j < m; ++j) {
    if (is_included(j)) continue;
    auto cols = included;
    cols.push_back(j);
    const auto trial = trial_fit(d, cols);
    r.excluded.push_back({d.candidate_names[static_cast<std::size_t>(j)],
                          trial ? std::optional<double>(trial->p) : std::nullopt});
  }
  return r;
}

RegressionReport fit_loglinear(const Dataset& d, const StepwiseOptions& opts) {
  validate(d, true);
  Dataset logged = d;
  logged.candidates = d.candidates.array().log();
  logged.response = d.response.array().log();
  auto r = stepwise_fit(logged, opts);
  r.log_transformed = true;
  return r;
}

ModelCoefficients to_model_coefficients(const RegressionReport& report) {
  ModelCoefficients c;
  c.kind = report.log_transformed ? ModelKind::loglinear : ModelKind::linear;
  c.intercept = report.intercept.estimate;
  for (const auto& s : report.coefficients) {
    if (s.name == "dist") {
      c.coef_dist = s.estimate;
    } else if (s.name == "area_total") {
      c.coef_area_total = s.estimate;
    } else if (s.name == "area_prof") {
      c.coef_area_prof = s.estimate;
    } else if (s.name == "dist_port_prof") {
      c.coef_dist_port_prof = s.estimate;
    } else if (s.name == "perim_prof") {
      c.coef_perim_prof = s.estimate;
    } else {
      throw UsageError(fmt::format(
          "variable '{}' is not part of the balancing model; refit without it", s.name));
    }
  }
  if (!report.log_transformed) {
    c.std_error = report.std_error_estimate;
    if (report.std_error_estimate > 0.0) c.tolerance = report.std_error_estimate / 2.0;
  }
  return c;
}

}  // namespace diebal
