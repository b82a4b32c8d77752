#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace btrob {

using SparseDesign = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// log(1 + exp(z)) without overflow.
inline double softplus(double z) { return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z))); }

inline double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// Sum over rows of the logistic negative log-likelihood plus
/// (lambda / 2) * |w|^2. The bias is not penalized. Works with dense and
/// sparse design matrices.
template <typename Design, typename Labels, typename Weights>
double logistic_objective(const Design& x, const Labels& y, const Weights& w, double bias, double lambda) {
  const Eigen::VectorXd z = (x * w).array() + bias;
  double nll = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) nll += softplus(z[i]) - y[i] * z[i];
  return nll + 0.5 * lambda * w.squaredNorm();
}

template <typename Design, typename Labels, typename Weights>
void logistic_gradient(const Design& x, const Labels& y, const Weights& w, double bias, double lambda,
                       Eigen::VectorXd& grad_w, double& grad_bias) {
  Eigen::VectorXd residual = (x * w).array() + bias;
  for (Eigen::Index i = 0; i < residual.size(); ++i) residual[i] = sigmoid(residual[i]) - y[i];
  grad_w = x.transpose() * residual + lambda * w;
  grad_bias = residual.sum();
}

struct SolverSettings {
  double lambda = 1.0;
  /// Stop once the Euclidean norm of the full gradient (weights and bias)
  /// drops to this value.
  double tolerance = 1e-6;
  std::size_t max_iterations = 100000;
};

struct SolverResult {
  Eigen::VectorXd weights;
  double bias = 0.0;
  std::size_t iterations = 0;
  double objective = 0.0;
  double gradient_norm = 0.0;
  bool converged = false;
};

/// Full-batch gradient descent from zero. Each step starts from the
/// Barzilai-Borwein length and halves it until the Armijo condition holds,
/// so the objective never increases across accepted steps.
template <typename Design, typename Labels>
SolverResult minimize_logistic(const Design& x, const Labels& y, const SolverSettings& settings) {
  SolverResult r;
  r.weights = Eigen::VectorXd::Zero(x.cols());
  Eigen::VectorXd gw;
  double gb = 0.0;
  logistic_gradient(x, y, r.weights, r.bias, settings.lambda, gw, gb);
  r.objective = logistic_objective(x, y, r.weights, r.bias, settings.lambda);
  r.gradient_norm = std::sqrt(gw.squaredNorm() + gb * gb);

  double step = 1.0 / std::max<double>(1.0, static_cast<double>(x.rows()));
  while (r.gradient_norm > settings.tolerance && r.iterations < settings.max_iterations) {
    const double g2 = r.gradient_norm * r.gradient_norm;
    Eigen::VectorXd w_next;
    double b_next = 0.0, f_next = 0.0;
    for (int halvings = 0;; ++halvings) {
      w_next = r.weights - step * gw;
      b_next = r.bias - step * gb;
      f_next = logistic_objective(x, y, w_next, b_next, settings.lambda);
      if (f_next <= r.objective - 1e-4 * step * g2) break;
      if (halvings == 60) return r;  // no descent possible at double precision
      step *= 0.5;
    }
    Eigen::VectorXd gw_next;
    double gb_next = 0.0;
    logistic_gradient(x, y, w_next, b_next, settings.lambda, gw_next, gb_next);

    const Eigen::VectorXd dw = w_next - r.weights, dg = gw_next - gw;
    const double db = b_next - r.bias, dgb = gb_next - gb;
    const double sy = dw.dot(dg) + db * dgb;
    const double ss = dw.squaredNorm() + db * db;
    if (sy > 0) step = ss / sy;

    r.weights = std::move(w_next);
    r.bias = b_next;
    r.objective = f_next;
    gw = std::move(gw_next);
    gb = gb_next;
    r.gradient_norm = std::sqrt(gw.squaredNorm() + gb * gb);
    ++r.iterations;
  }
  r.converged = r.gradient_norm <= settings.tolerance;
  return r;
}

}  // namespace btrob
