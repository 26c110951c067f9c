#include "qwsnm/shrinkage.hpp"

#include <cmath>
#include <stdexcept>

namespace qwsnm {

namespace {
constexpr double kPOneTol = 1e-9;
}

WeightVector make_weights(const Eigen::VectorXd& sigma, double c, double eps) {
  if (c <= 0.0) throw std::invalid_argument("make_weights: c must be > 0");
  if (eps <= 0.0) throw std::invalid_argument("make_weights: eps must be > 0");
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) < 0.0)
      throw std::invalid_argument("make_weights: negative singular value");
    if (i > 0 && sigma(i) > sigma(i - 1))
      throw std::invalid_argument("make_weights: sigma must be non-ascending");
  }
  WeightVector wv;
  wv.c = c;
  wv.eps = eps;
  wv.w = c / (sigma.array() + eps);
  return wv;
}

double gst_threshold(double w, double p) {
  if (std::abs(p - 1.0) <= kPOneTol) return w;
  const double base = 2.0 * w * (1.0 - p);
  return std::pow(base, 1.0 / (2.0 - p)) +
         w * p * std::pow(base, (p - 1.0) / (2.0 - p));
}

double gst(double sigma, double w, double p, int j) {
  if (sigma < 0.0) throw std::invalid_argument("gst: sigma must be >= 0");
  if (w <= 0.0) throw std::invalid_argument("gst: w must be > 0");
  if (p <= 0.0 || p > 1.0) throw std::invalid_argument("gst: p not in (0,1]");
  if (j < 1) throw std::invalid_argument("gst: j must be >= 1");
  if (std::abs(p - 1.0) <= kPOneTol) return std::max(sigma - w, 0.0);
  if (sigma == 0.0) return 0.0;
  if (sigma <= gst_threshold(w, p)) return 0.0;
  double delta = sigma;
  for (int s = 0; s < j; ++s) delta = sigma - w * p * std::pow(delta, p - 1.0);
  return delta;
}

Eigen::VectorXd shrink_singular_values(const Eigen::VectorXd& sigma,
                                       const WeightVector& weights,
                                       const ShrinkageSpec& spec,
                                       double beta) {
  if (sigma.size() != weights.w.size())
    throw std::invalid_argument("shrink_singular_values: length mismatch");
  if (beta <= 0.0)
    throw std::invalid_argument("shrink_singular_values: beta must be > 0");
  Eigen::VectorXd out(sigma.size());
  if (spec.mode == ShrinkMode::Wnnm) {
    out = (sigma.array() - weights.w.array() / beta).max(0.0);
  } else {
    for (Eigen::Index i = 0; i < sigma.size(); ++i)
      out(i) = gst(sigma(i), weights.w(i) / beta, spec.p, spec.gst_iters);
  }
  return out;
}

double wsnorm(const Eigen::VectorXd& sigma, const WeightVector& weights,
              double p) {
  if (sigma.size() != weights.w.size())
    throw std::invalid_argument("wsnorm: length mismatch");
  double s = 0.0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i)
    s += weights.w(i) * std::pow(sigma(i), p);
  return s;
}

}  // namespace qwsnm
