#pragma once

#include <Eigen/Dense>
#include <array>
#include <stdexcept>

#include "qwsnm/quaternion.hpp"

namespace qwsnm {

// Quaternion matrix stored as four real planes X0 + X1*i + X2*j + X3*k.
// Planar storage keeps per-plane FFTs and BLAS-style loops contiguous.
class QMatrix {
 public:
  QMatrix() = default;

  QMatrix(Eigen::Index rows, Eigen::Index cols) {
    for (auto& p : plane_) p = Eigen::MatrixXd::Zero(rows, cols);
  }

  QMatrix(Eigen::MatrixXd p0, Eigen::MatrixXd p1, Eigen::MatrixXd p2,
          Eigen::MatrixXd p3)
      : plane_{std::move(p0), std::move(p1), std::move(p2), std::move(p3)} {
    for (int l = 1; l < 4; ++l) {
      if (plane_[l].rows() != plane_[0].rows() ||
          plane_[l].cols() != plane_[0].cols())
        throw std::invalid_argument("QMatrix: planes must share dimensions");
    }
  }

  Eigen::Index rows() const { return plane_[0].rows(); }
  Eigen::Index cols() const { return plane_[0].cols(); }

  Eigen::MatrixXd& plane(int l) { return plane_[l]; }
  const Eigen::MatrixXd& plane(int l) const { return plane_[l]; }

  Quaternion operator()(Eigen::Index i, Eigen::Index j) const {
    return {plane_[0](i, j), plane_[1](i, j), plane_[2](i, j),
            plane_[3](i, j)};
  }

  void set(Eigen::Index i, Eigen::Index j, const Quaternion& q) {
    plane_[0](i, j) = q.a0;
    plane_[1](i, j) = q.a1;
    plane_[2](i, j) = q.a2;
    plane_[3](i, j) = q.a3;
  }

  static QMatrix identity(Eigen::Index n) {
    QMatrix I(n, n);
    I.plane_[0] = Eigen::MatrixXd::Identity(n, n);
    return I;
  }

 private:
  std::array<Eigen::MatrixXd, 4> plane_;
};

QMatrix operator+(const QMatrix& a, const QMatrix& b);
QMatrix operator-(const QMatrix& a, const QMatrix& b);
QMatrix operator*(double s, const QMatrix& a);
inline QMatrix operator*(const QMatrix& a, double s) { return s * a; }

// Hamilton matrix product; inner dimensions must match.
QMatrix operator*(const QMatrix& a, const QMatrix& b);

// Entrywise conjugate and conjugate transpose (A^<).
QMatrix conj(const QMatrix& a);
QMatrix conj_transpose(const QMatrix& a);

// Scale columns by real factors: A * diag(d).
QMatrix scale_cols(const QMatrix& a, const Eigen::VectorXd& d);

double frobenius(const QMatrix& a);
double frobenius_sq(const QMatrix& a);

// Real part of the quaternion inner product <A, B> = sum conj(a_ij) b_ij;
// this is the term used by the augmented Lagrangian.
double inner_re(const QMatrix& a, const QMatrix& b);

// Color image as a pure quaternion matrix: zero real plane, RGB in the
// i, j, k planes, intensities nominally in [0, 255].
class PureQImage {
 public:
  PureQImage() = default;
  PureQImage(Eigen::Index rows, Eigen::Index cols) : q_(rows, cols) {}

  // Adopts a QMatrix, projecting away whatever sits in the real plane.
  explicit PureQImage(QMatrix q) : q_(std::move(q)) { purify(); }

  static PureQImage from_rgb(Eigen::MatrixXd r, Eigen::MatrixXd g,
                             Eigen::MatrixXd b);

  Eigen::Index rows() const { return q_.rows(); }
  Eigen::Index cols() const { return q_.cols(); }

  const QMatrix& qmat() const { return q_; }
  QMatrix& qmat() { return q_; }

  const Eigen::MatrixXd& r() const { return q_.plane(1); }
  const Eigen::MatrixXd& g() const { return q_.plane(2); }
  const Eigen::MatrixXd& b() const { return q_.plane(3); }
  Eigen::MatrixXd& r() { return q_.plane(1); }
  Eigen::MatrixXd& g() { return q_.plane(2); }
  Eigen::MatrixXd& b() { return q_.plane(3); }

  const Eigen::MatrixXd& channel(int c) const { return q_.plane(c + 1); }
  Eigen::MatrixXd& channel(int c) { return q_.plane(c + 1); }

  // Zeroes the real plane; rounding in FFT round-trips and shrinkage can
  // leak a nonzero real part.
  void purify() { q_.plane(0).setZero(); }

  double max_real_residual() const {
    return q_.plane(0).size() == 0 ? 0.0
                                   : q_.plane(0).cwiseAbs().maxCoeff();
  }

 private:
  QMatrix q_;
};

}  // namespace qwsnm
