#pragma once

#include <Eigen/Dense>

namespace qwsnm {

enum class ShrinkMode { Wnnm, Wsnm };

// One weight per singular value, w_i = c / (sigma_i + eps), so dominant
// singular values are penalized less.
struct WeightVector {
  Eigen::VectorXd w;
  double c = 0.0;
  double eps = 0.0;
};

// Shrinkage configuration: mode selects weighted nuclear (p = 1 closed
// form) vs weighted Schatten-p (GST); gst_iters is the inner fixed-point
// iteration count.
struct ShrinkageSpec {
  ShrinkMode mode = ShrinkMode::Wsnm;
  double p = 0.95;
  int gst_iters = 3;
};

// Requires sigma non-ascending with non-negative entries, c > 0, eps > 0.
WeightVector make_weights(const Eigen::VectorXd& sigma, double c, double eps);

// Hard-zero threshold of the scalar problem min 0.5*(d - s)^2 + w*d^p:
// below it the minimizer is 0, above it the fixed point is strictly
// positive.
double gst_threshold(double w, double p);

// Generalized soft-thresholding: returns the minimizer of
// 0.5*(delta - sigma)^2 + w * delta^p over delta >= 0, computed as 0 when
// sigma <= tau_p(w) and as a j-step fixed-point iteration started at sigma
// otherwise. p within 1e-9 of 1 routes to the plain soft threshold
// max(sigma - w, 0).
double gst(double sigma, double w, double p, int j);

// Applies the per-singular-value proximal rule of the Z-subproblem. The
// quadratic coupling is beta/2, so the effective GST weight is w_i / beta;
// at p = 1 this reduces to max(sigma_i - w_i/beta, 0).
Eigen::VectorXd shrink_singular_values(const Eigen::VectorXd& sigma,
                                       const WeightVector& weights,
                                       const ShrinkageSpec& spec, double beta);

// Weighted Schatten p-norm raised to the p-th power: sum w_i * sigma_i^p.
double wsnorm(const Eigen::VectorXd& sigma, const WeightVector& weights,
              double p);

}  // namespace qwsnm
