#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "qwsnm/qmatrix.hpp"

namespace qwsnm {

// Real 2D point-spread function, anchored at (rows/2, cols/2). Blur kernels
// are normalized to unit sum. The `identity` flag marks the exact no-blur
// operator, which skips the Fourier path entirely.
struct Kernel {
  Eigen::MatrixXd k;
  bool is_identity = false;

  static Kernel identity() { return {Eigen::MatrixXd::Ones(1, 1), true}; }

  int rows() const { return static_cast<int>(k.rows()); }
  int cols() const { return static_cast<int>(k.cols()); }
  int anchor_row() const { return rows() / 2; }
  int anchor_col() const { return cols() / 2; }
};

// Forward degradation y = A x + n: blur kernel plus Gaussian noise of
// standard deviation sigma on the [0, 255] intensity scale.
struct DegradationModel {
  Kernel kernel = Kernel::identity();
  double sigma = 0.0;
  std::uint64_t seed = 0;
};

// s x s uniform kernel, entries 1/s^2. s must be odd.
Kernel kernel_uniform(int s);

// s x s isotropic Gaussian sampled on the integer grid and normalized.
Kernel kernel_gaussian(int s, double std_dev);

// Line-segment motion kernel with perpendicular-distance anti-alias
// weighting, matching MATLAB's fspecial('motion', len, angle).
Kernel kernel_motion(double len, double angle_deg);

// Parses the CLI kernel spec strings:
//   identity | uniform:S | gaussian:S:STD | motion:LEN:ANGLE
Kernel parse_kernel_spec(const std::string& spec);

// Circular (periodic) convolution applied per color plane in the Fourier
// domain; the kernel is real, so each plane is convolved independently.
PureQImage blur_periodic(const PureQImage& img, const Kernel& kernel);

// Adds i.i.d. N(0, sigma^2) to each color plane from one seeded stream
// (plane by plane, row-major within a plane). No clipping.
PureQImage add_noise(const PureQImage& img, double sigma, std::uint64_t seed);

// Minimizer of (lambda/2)||A X - Y||^2 + (beta/2)||X - Z||^2 + <eta, X - Z>:
//   identity A:  X = (lambda Y + beta Z - eta) / (lambda + beta),
//   real PSF A:  per-plane FFT solve of
//                (lambda A^T A + beta I) X = lambda A^T Y + beta Z - eta.
QMatrix solve_x_subproblem(const PureQImage& y, const QMatrix& z,
                           const QMatrix& eta, const Kernel& kernel,
                           double lambda, double beta);

// 2D FFT of the kernel zero-padded to m x n and circularly shifted so its
// anchor sits at index (0, 0). Exposed for the solver and the tests.
Eigen::MatrixXcd kernel_otf(const Kernel& kernel, int m, int n);

// Fourier-domain circular convolution of one real plane with the given
// transfer function (conjugate it for the adjoint).
Eigen::MatrixXd convolve_plane(const Eigen::MatrixXd& plane,
                               const Eigen::MatrixXcd& otf);

}  // namespace qwsnm
