#include "synth_image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qwsnm/rng.hpp"

namespace qwsnm::testsupport {

PureQImage synth_image(int rows, int cols, std::uint64_t seed) {
  Rng rng(seed);
  PureQImage img(rows, cols);
  const double pi = std::numbers::pi;

  // Sky-like smooth background, per channel.
  double base[3], gx[3], gy[3], wave[3];
  for (int ch = 0; ch < 3; ++ch) {
    base[ch] = 90.0 + 110.0 * rng.next_double();
    gx[ch] = -40.0 + 80.0 * rng.next_double();
    gy[ch] = -40.0 + 80.0 * rng.next_double();
    wave[ch] = 8.0 + 10.0 * rng.next_double();
  }
  for (int ch = 0; ch < 3; ++ch) {
    Eigen::MatrixXd& p = img.channel(ch);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const double u = static_cast<double>(i) / rows;
        const double v = static_cast<double>(j) / cols;
        p(i, j) = base[ch] + gx[ch] * u + gy[ch] * v +
                  wave[ch] * std::sin(2.0 * pi * (1.5 * u + 2.5 * v));
      }
  }

  // A handful of solid ellipses (hard edges, distinct colors).
  const int shapes = 5;
  for (int s = 0; s < shapes; ++s) {
    const double cy = rows * (0.15 + 0.7 * rng.next_double());
    const double cx = cols * (0.15 + 0.7 * rng.next_double());
    const double ry = rows * (0.06 + 0.14 * rng.next_double());
    const double rx = cols * (0.06 + 0.14 * rng.next_double());
    double color[3];
    for (double& c : color) c = 30.0 + 200.0 * rng.next_double();
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) {
        const double dy = (i - cy) / ry, dx = (j - cx) / rx;
        if (dy * dy + dx * dx <= 1.0)
          for (int ch = 0; ch < 3; ++ch) img.channel(ch)(i, j) = color[ch];
      }
  }

  // Repeating stripe texture over the lower band.
  const double angle = pi * rng.next_double();
  const double freq = 0.25 + 0.25 * rng.next_double();
  const int band_top = rows * 2 / 3;
  for (int i = band_top; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double t =
          std::sin(freq * (i * std::cos(angle) + j * std::sin(angle)));
      const double mod = 28.0 * t;
      for (int ch = 0; ch < 3; ++ch) img.channel(ch)(i, j) += mod;
    }

  for (int ch = 0; ch < 3; ++ch) {
    Eigen::MatrixXd& p = img.channel(ch);
    p = p.cwiseMax(0.0).cwiseMin(255.0).array().round().matrix();
  }
  return img;
}

QMatrix random_qmatrix(int rows, int cols, std::uint64_t seed) {
  Rng rng(seed);
  QMatrix q(rows, cols);
  for (int l = 0; l < 4; ++l)
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) q.plane(l)(i, j) = rng.next_gaussian();
  return q;
}

PureQImage random_image(int rows, int cols, std::uint64_t seed, double lo,
                        double hi) {
  Rng rng(seed);
  PureQImage img(rows, cols);
  for (int ch = 0; ch < 3; ++ch)
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        img.channel(ch)(i, j) = lo + (hi - lo) * rng.next_double();
  return img;
}

}  // namespace qwsnm::testsupport
