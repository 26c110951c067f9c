#include "qwsnm/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qwsnm {

namespace {

constexpr int kWin = 11;
constexpr double kWinSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;
constexpr double kRange = 255.0;

void check_shapes(const PureQImage& a, const PureQImage& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

Eigen::VectorXd gaussian_window_1d() {
  Eigen::VectorXd g(kWin);
  const double c = (kWin - 1) / 2.0;
  for (int i = 0; i < kWin; ++i)
    g(i) = std::exp(-(i - c) * (i - c) / (2.0 * kWinSigma * kWinSigma));
  return g / g.sum();
}

// Valid-region separable convolution with the (normalized) outer product
// g * g^T; output is (m-10) x (n-10).
Eigen::MatrixXd conv_valid(const Eigen::MatrixXd& img,
                           const Eigen::VectorXd& g) {
  const Eigen::Index m = img.rows(), n = img.cols();
  Eigen::MatrixXd rows(m - kWin + 1, n);
  for (Eigen::Index i = 0; i + kWin <= m; ++i)
    rows.row(i) = g.transpose() * img.middleRows(i, kWin);
  Eigen::MatrixXd out(m - kWin + 1, n - kWin + 1);
  for (Eigen::Index j = 0; j + kWin <= n; ++j)
    out.col(j) = rows.middleCols(j, kWin) * g;
  return out;
}

double ssim_channel(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                    const Eigen::VectorXd& g) {
  const double c1 = (kK1 * kRange) * (kK1 * kRange);
  const double c2 = (kK2 * kRange) * (kK2 * kRange);
  Eigen::MatrixXd mu_x = conv_valid(x, g);
  Eigen::MatrixXd mu_y = conv_valid(y, g);
  Eigen::MatrixXd var_x =
      conv_valid(x.cwiseProduct(x), g) - mu_x.cwiseProduct(mu_x);
  Eigen::MatrixXd var_y =
      conv_valid(y.cwiseProduct(y), g) - mu_y.cwiseProduct(mu_y);
  Eigen::MatrixXd cov =
      conv_valid(x.cwiseProduct(y), g) - mu_x.cwiseProduct(mu_y);
  Eigen::ArrayXXd num = (2.0 * mu_x.cwiseProduct(mu_y).array() + c1) *
                        (2.0 * cov.array() + c2);
  Eigen::ArrayXXd den =
      (mu_x.array().square() + mu_y.array().square() + c1) *
      (var_x.array() + var_y.array() + c2);
  return (num / den).mean();
}

}  // namespace

double psnr(const PureQImage& ref, const PureQImage& test) {
  check_shapes(ref, test, "psnr");
  double se = 0.0;
  for (int ch = 0; ch < 3; ++ch)
    se += (ref.channel(ch) - test.channel(ch)).squaredNorm();
  const double mse = se / (3.0 * ref.rows() * ref.cols());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(kRange * kRange / mse);
}

double ssim(const PureQImage& ref, const PureQImage& test) {
  check_shapes(ref, test, "ssim");
  if (ref.rows() < kWin || ref.cols() < kWin)
    throw std::invalid_argument("ssim: image smaller than 11x11");
  const Eigen::VectorXd g = gaussian_window_1d();
  double s = 0.0;
  for (int ch = 0; ch < 3; ++ch)
    s += ssim_channel(ref.channel(ch), test.channel(ch), g);
  return s / 3.0;
}

QualityReport quality(const PureQImage& ref, const PureQImage& test) {
  return {psnr(ref, test), ssim(ref, test)};
}

PureQImage quantize_8bit(const PureQImage& img) {
  PureQImage out = img;
  for (int ch = 0; ch < 3; ++ch)
    out.channel(ch) = out.channel(ch)
                          .cwiseMax(0.0)
                          .cwiseMin(255.0)
                          .array()
                          .round()
                          .matrix();
  return out;
}

}  // namespace qwsnm
