#include "qwsnm/qmatrix.hpp"

#include <cmath>
#include <ostream>

namespace qwsnm {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  os << q.a0 << (q.a1 < 0 ? "" : "+") << q.a1 << "i" << (q.a2 < 0 ? "" : "+")
     << q.a2 << "j" << (q.a3 < 0 ? "" : "+") << q.a3 << "k";
  return os;
}

namespace {

void check_same_shape(const QMatrix& a, const QMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(op) + ": shape mismatch");
}

}  // namespace

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
  check_same_shape(a, b, "QMatrix+");
  QMatrix c(a.rows(), a.cols());
  for (int l = 0; l < 4; ++l) c.plane(l) = a.plane(l) + b.plane(l);
  return c;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) {
  check_same_shape(a, b, "QMatrix-");
  QMatrix c(a.rows(), a.cols());
  for (int l = 0; l < 4; ++l) c.plane(l) = a.plane(l) - b.plane(l);
  return c;
}

QMatrix operator*(double s, const QMatrix& a) {
  QMatrix c(a.rows(), a.cols());
  for (int l = 0; l < 4; ++l) c.plane(l) = s * a.plane(l);
  return c;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("QMatrix*: inner dimensions mismatch");
  const Eigen::MatrixXd& a0 = a.plane(0);
  const Eigen::MatrixXd& a1 = a.plane(1);
  const Eigen::MatrixXd& a2 = a.plane(2);
  const Eigen::MatrixXd& a3 = a.plane(3);
  const Eigen::MatrixXd& b0 = b.plane(0);
  const Eigen::MatrixXd& b1 = b.plane(1);
  const Eigen::MatrixXd& b2 = b.plane(2);
  const Eigen::MatrixXd& b3 = b.plane(3);
  QMatrix c(a.rows(), b.cols());
  c.plane(0) = a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3;
  c.plane(1) = a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2;
  c.plane(2) = a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1;
  c.plane(3) = a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0;
  return c;
}

QMatrix conj(const QMatrix& a) {
  QMatrix c(a.rows(), a.cols());
  c.plane(0) = a.plane(0);
  for (int l = 1; l < 4; ++l) c.plane(l) = -a.plane(l);
  return c;
}

QMatrix conj_transpose(const QMatrix& a) {
  QMatrix c(a.cols(), a.rows());
  c.plane(0) = a.plane(0).transpose();
  for (int l = 1; l < 4; ++l) c.plane(l) = -a.plane(l).transpose();
  return c;
}

QMatrix scale_cols(const QMatrix& a, const Eigen::VectorXd& d) {
  if (d.size() != a.cols())
    throw std::invalid_argument("scale_cols: length mismatch");
  QMatrix c(a.rows(), a.cols());
  for (int l = 0; l < 4; ++l) c.plane(l) = a.plane(l) * d.asDiagonal();
  return c;
}

double frobenius_sq(const QMatrix& a) {
  double s = 0.0;
  for (int l = 0; l < 4; ++l) s += a.plane(l).squaredNorm();
  return s;
}

double frobenius(const QMatrix& a) { return std::sqrt(frobenius_sq(a)); }

double inner_re(const QMatrix& a, const QMatrix& b) {
  check_same_shape(a, b, "inner_re");
  double s = 0.0;
  for (int l = 0; l < 4; ++l)
    s += a.plane(l).cwiseProduct(b.plane(l)).sum();
  return s;
}

PureQImage PureQImage::from_rgb(Eigen::MatrixXd r, Eigen::MatrixXd g,
                                Eigen::MatrixXd b) {
  if (r.rows() != g.rows() || r.rows() != b.rows() || r.cols() != g.cols() ||
      r.cols() != b.cols())
    throw std::invalid_argument("from_rgb: channel dimensions mismatch");
  Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(r.rows(), r.cols());
  return PureQImage(
      QMatrix(std::move(zero), std::move(r), std::move(g), std::move(b)));
}

}  // namespace qwsnm
