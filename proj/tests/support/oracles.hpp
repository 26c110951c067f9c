#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qwsnm/degradation.hpp"
#include "qwsnm/patch.hpp"
#include "qwsnm/qmatrix.hpp"

// Independent reference implementations used to freeze expected values.
// They must stay decoupled from the library code paths they check.
namespace qwsnm::oracle {

// Scalar objective of the generalized thresholding problem.
inline double gst_objective(double delta, double sigma, double w, double p) {
  return 0.5 * (delta - sigma) * (delta - sigma) + w * std::pow(delta, p);
}

// Grid-search minimizer of gst_objective over delta in [0, sigma].
double gst_grid_argmin(double sigma, double w, double p, double step);

// Exhaustive block matcher: all fully-inside patches in the clipped window,
// sorted by (distance, row, col) with the key forced first, padded
// cyclically to group_size.
std::vector<Coord> brute_match(const PureQImage& img, Coord key,
                               const PatchParams& params);

// Dense circulant matrix of the periodic convolution operator.
Eigen::MatrixXd circulant_matrix(const Kernel& kernel, int m, int n);

// Per-plane dense solve of (lambda A^T A + beta I) x = lambda A^T y +
// beta z - eta with the explicit circulant A.
QMatrix dense_x_subproblem(const PureQImage& y, const QMatrix& z,
                           const QMatrix& eta, const Kernel& kernel,
                           double lambda, double beta);

// Direct spatial circular convolution (nested loops).
Eigen::MatrixXd spatial_circular_conv(const Eigen::MatrixXd& img,
                                      const Kernel& kernel);

// Textbook single-scale SSIM, windows evaluated by explicit nested loops.
double reference_ssim(const PureQImage& ref, const PureQImage& test);

// Complex adjoint [[A, B], [-conj B, conj A]] of a quaternion matrix.
Eigen::MatrixXcd complex_adjoint(const QMatrix& q);

}  // namespace qwsnm::oracle
