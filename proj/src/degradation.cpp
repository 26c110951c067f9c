#include "qwsnm/degradation.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qwsnm/rng.hpp"

namespace qwsnm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// FFTW planning is not thread-safe; execution is.
std::mutex g_fftw_mutex;

// Standard 2D DFT landing in Eigen's column-major layout: FFTW sees the
// buffer as a cols x rows row-major array, which is the same data.
Eigen::MatrixXcd dft2(const Eigen::MatrixXcd& in, int direction) {
  const int m = static_cast<int>(in.rows());
  const int n = static_cast<int>(in.cols());
  Eigen::MatrixXcd out(m, n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    plan = fftw_plan_dft_2d(
        n, m,
        reinterpret_cast<fftw_complex*>(
            const_cast<std::complex<double>*>(in.data())),
        reinterpret_cast<fftw_complex*>(out.data()), direction,
        FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  }
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_destroy_plan(plan);
  }
  if (direction == FFTW_BACKWARD) out /= static_cast<double>(m) * n;
  return out;
}

Eigen::MatrixXcd fft2(const Eigen::MatrixXd& in) {
  return dft2(in.cast<std::complex<double>>(), FFTW_FORWARD);
}

Eigen::MatrixXd ifft2_real(const Eigen::MatrixXcd& in) {
  return dft2(in, FFTW_BACKWARD).real();
}

void check_kernel(const Kernel& kernel) {
  if (!kernel.k.allFinite())
    throw std::invalid_argument("kernel: non-finite entries");
}

int imod(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

Kernel kernel_uniform(int s) {
  if (s < 1 || s % 2 == 0)
    throw std::invalid_argument("kernel_uniform: side must be odd and >= 1");
  return {Eigen::MatrixXd::Constant(s, s, 1.0 / (s * s)), false};
}

Kernel kernel_gaussian(int s, double std_dev) {
  if (s < 1 || s % 2 == 0)
    throw std::invalid_argument("kernel_gaussian: side must be odd and >= 1");
  if (std_dev <= 0.0)
    throw std::invalid_argument("kernel_gaussian: std must be > 0");
  const int c = (s - 1) / 2;
  Eigen::MatrixXd k(s, s);
  for (int u = 0; u < s; ++u)
    for (int v = 0; v < s; ++v) {
      const double du = u - c, dv = v - c;
      k(u, v) = std::exp(-(du * du + dv * dv) / (2.0 * std_dev * std_dev));
    }
  k /= k.sum();
  return {std::move(k), false};
}

// Port of MATLAB fspecial('motion', len, angle): a half-matrix of
// perpendicular distances to the motion line is built, clamped at the
// segment's end-point, converted to anti-alias weights and unfolded by a
// 180-degree rotation.
Kernel kernel_motion(double len, double angle_deg) {
  if (len < 1.0) throw std::invalid_argument("kernel_motion: len must be >= 1");
  const double half = (len - 1.0) / 2.0;
  const double phi = std::fmod(std::fmod(angle_deg, 180.0) + 180.0, 180.0) /
                     180.0 * std::numbers::pi;
  const double cosphi = std::cos(phi);
  const double sinphi = std::sin(phi);
  const double xsign = cosphi > 0 ? 1.0 : (cosphi < 0 ? -1.0 : 0.0);
  const double linewdt = 1.0;

  const double sx =
      std::trunc(half * cosphi + linewdt * xsign - len * kEps);
  const double sy = std::trunc(half * sinphi + linewdt - len * kEps);
  const int ncols = static_cast<int>(std::abs(sx)) + 1;
  const int nrows = static_cast<int>(sy) + 1;

  Eigen::MatrixXd dist(nrows, ncols);
  for (int yi = 0; yi < nrows; ++yi)
    for (int xi = 0; xi < ncols; ++xi) {
      const double x = (xsign < 0 ? -1.0 : 1.0) * xi;
      const double y = yi;
      double d = y * cosphi - x * sinphi;
      const double rad = std::sqrt(x * x + y * y);
      if (rad >= half && std::abs(d) <= linewdt) {
        const double x2last = half - std::abs((x + d * sinphi) / cosphi);
        d = std::sqrt(d * d + x2last * x2last);
      }
      d = linewdt + kEps - std::abs(d);
      dist(yi, xi) = d < 0 ? 0.0 : d;
    }

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * nrows - 1, 2 * ncols - 1);
  h.topLeftCorner(nrows, ncols) = dist.reverse();  // 180-degree rotation
  h.bottomRightCorner(nrows, ncols) = dist;
  h /= h.sum() + kEps * len * len;
  if (cosphi > 0) h = h.colwise().reverse().eval();  // flipud
  return {std::move(h), false};
}

Kernel parse_kernel_spec(const std::string& spec) {
  std::vector<std::string> parts;
  size_t start = 0;
  while (true) {
    size_t colon = spec.find(':', start);
    parts.push_back(spec.substr(start, colon - start));
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  try {
    if (parts[0] == "identity" && parts.size() == 1) return Kernel::identity();
    if (parts[0] == "uniform" && parts.size() == 2)
      return kernel_uniform(std::stoi(parts[1]));
    if (parts[0] == "gaussian" && parts.size() == 3)
      return kernel_gaussian(std::stoi(parts[1]), std::stod(parts[2]));
    if (parts[0] == "motion" && parts.size() == 3)
      return kernel_motion(std::stod(parts[1]), std::stod(parts[2]));
  } catch (const std::logic_error&) {
    throw std::invalid_argument("bad kernel spec: " + spec);
  }
  throw std::invalid_argument("bad kernel spec: " + spec);
}

Eigen::MatrixXcd kernel_otf(const Kernel& kernel, int m, int n) {
  check_kernel(kernel);
  Eigen::MatrixXd padded = Eigen::MatrixXd::Zero(m, n);
  const int ar = kernel.anchor_row(), ac = kernel.anchor_col();
  for (int u = 0; u < kernel.rows(); ++u)
    for (int v = 0; v < kernel.cols(); ++v)
      padded(imod(u - ar, m), imod(v - ac, n)) += kernel.k(u, v);
  return fft2(padded);
}

Eigen::MatrixXd convolve_plane(const Eigen::MatrixXd& plane,
                               const Eigen::MatrixXcd& otf) {
  return ifft2_real(fft2(plane).cwiseProduct(otf));
}

PureQImage blur_periodic(const PureQImage& img, const Kernel& kernel) {
  if (kernel.is_identity) return img;
  check_kernel(kernel);
  const int m = static_cast<int>(img.rows());
  const int n = static_cast<int>(img.cols());
  if (kernel.rows() > m || kernel.cols() > n)
    throw std::invalid_argument("blur_periodic: kernel larger than image");
  const Eigen::MatrixXcd otf = kernel_otf(kernel, m, n);
  PureQImage out(m, n);
  for (int ch = 0; ch < 3; ++ch)
    out.channel(ch) = convolve_plane(img.channel(ch), otf);
  out.purify();
  return out;
}

PureQImage add_noise(const PureQImage& img, double sigma, std::uint64_t seed) {
  if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
  if (sigma == 0.0) return img;
  PureQImage out = img;
  Rng rng(seed);
  for (int ch = 0; ch < 3; ++ch) {
    Eigen::MatrixXd& p = out.channel(ch);
    for (Eigen::Index i = 0; i < p.rows(); ++i)
      for (Eigen::Index j = 0; j < p.cols(); ++j)
        p(i, j) += sigma * rng.next_gaussian();
  }
  return out;
}

QMatrix solve_x_subproblem(const PureQImage& y, const QMatrix& z,
                           const QMatrix& eta, const Kernel& kernel,
                           double lambda, double beta) {
  const Eigen::Index m = y.rows(), n = y.cols();
  if (z.rows() != m || z.cols() != n || eta.rows() != m || eta.cols() != n)
    throw std::invalid_argument("solve_x_subproblem: shape mismatch");
  if (lambda <= 0.0 || beta <= 0.0)
    throw std::invalid_argument("solve_x_subproblem: lambda, beta must be > 0");

  QMatrix x(m, n);
  if (kernel.is_identity) {
    for (int l = 0; l < 4; ++l)
      x.plane(l) =
          (lambda * y.qmat().plane(l) + beta * z.plane(l) - eta.plane(l)) /
          (lambda + beta);
    return x;
  }

  const Eigen::MatrixXcd otf =
      kernel_otf(kernel, static_cast<int>(m), static_cast<int>(n));
  const Eigen::ArrayXXd denom =
      lambda * otf.array().abs2() + beta;  // lambda |K|^2 + beta
  const Eigen::MatrixXcd otf_conj = otf.conjugate();
  for (int l = 0; l < 4; ++l) {
    Eigen::MatrixXcd num =
        lambda * otf_conj.cwiseProduct(fft2(y.qmat().plane(l))) +
        beta * fft2(z.plane(l)) - fft2(eta.plane(l));
    x.plane(l) = ifft2_real((num.array() / denom).matrix());
  }
  return x;
}

}  // namespace qwsnm
