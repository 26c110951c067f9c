#include "qwsnm/qsvd.hpp"

#include <complex>
#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

#include <mutex>
#include <stdexcept>
#include <string>

extern "C" void openblas_set_num_threads(int);

namespace qwsnm {

namespace {

// Each zgesdd call must be single-threaded: group-level parallelism happens
// above this layer and results have to be independent of thread counts.
void pin_blas_threads() {
  static std::once_flag flag;
  std::call_once(flag, [] { openblas_set_num_threads(1); });
}

Quaternion col_dot(const QMatrix& a, Eigen::Index s, const QMatrix& b,
                   Eigen::Index t) {
  const auto& a0 = a.plane(0).col(s);
  const auto& a1 = a.plane(1).col(s);
  const auto& a2 = a.plane(2).col(s);
  const auto& a3 = a.plane(3).col(s);
  const auto& b0 = b.plane(0).col(t);
  const auto& b1 = b.plane(1).col(t);
  const auto& b2 = b.plane(2).col(t);
  const auto& b3 = b.plane(3).col(t);
  // sum of conj(a_k) * b_k
  return {a0.dot(b0) + a1.dot(b1) + a2.dot(b2) + a3.dot(b3),
          a0.dot(b1) - a1.dot(b0) - a2.dot(b3) + a3.dot(b2),
          a0.dot(b2) + a1.dot(b3) - a2.dot(b0) - a3.dot(b1),
          a0.dot(b3) - a1.dot(b2) + a2.dot(b1) - a3.dot(b0)};
}

// col t -= col s * c (right-module convention: the coefficient multiplies
// the column entries from the right, so M(v c) = (M v) c stays valid).
// Requires s != t; no aliasing then.
void col_sub_scaled(QMatrix& m, Eigen::Index t, Eigen::Index s,
                    const Quaternion& c) {
  const auto p0 = m.plane(0).col(s);
  const auto p1 = m.plane(1).col(s);
  const auto p2 = m.plane(2).col(s);
  const auto p3 = m.plane(3).col(s);
  m.plane(0).col(t) -= p0 * c.a0 - p1 * c.a1 - p2 * c.a2 - p3 * c.a3;
  m.plane(1).col(t) -= p0 * c.a1 + p1 * c.a0 + p2 * c.a3 - p3 * c.a2;
  m.plane(2).col(t) -= p0 * c.a2 - p1 * c.a3 + p2 * c.a0 + p3 * c.a1;
  m.plane(3).col(t) -= p0 * c.a3 + p1 * c.a2 - p2 * c.a1 + p3 * c.a0;
}

double col_norm(const QMatrix& m, Eigen::Index t) {
  double s = 0.0;
  for (int l = 0; l < 4; ++l) s += m.plane(l).col(t).squaredNorm();
  return std::sqrt(s);
}

void col_scale(QMatrix& m, Eigen::Index t, double s) {
  for (int l = 0; l < 4; ++l) m.plane(l).col(t) *= s;
}

void col_copy(QMatrix& dst, Eigen::Index t, const QMatrix& src,
              Eigen::Index s) {
  for (int l = 0; l < 4; ++l) dst.plane(l).col(t) = src.plane(l).col(s);
}

void col_set_zero(QMatrix& m, Eigen::Index t) {
  for (int l = 0; l < 4; ++l) m.plane(l).col(t).setZero();
}

// Writes chi column `src` of a 2d x r complex factor into quaternion column
// `t`: the top half is the complex part, the bottom half maps back through
// x = x_a - conj(x_bottom) * j.
void map_adjoint_column(const Eigen::MatrixXcd& factor, Eigen::Index src,
                        Eigen::Index d, QMatrix& out, Eigen::Index t) {
  const auto top = factor.col(src).head(d);
  const auto bot = factor.col(src).tail(d);
  out.plane(0).col(t) = top.real();
  out.plane(1).col(t) = top.imag();
  out.plane(2).col(t) = -bot.real();
  out.plane(3).col(t) = bot.imag();
}

// Orthogonalizes column t of `v` against columns [0, t); the same
// corrections are applied to `mirror` when given. Two projection sweeps.
void mgs_project(QMatrix& v, QMatrix* mirror, Eigen::Index t) {
  for (int sweep = 0; sweep < 2; ++sweep) {
    for (Eigen::Index s = 0; s < t; ++s) {
      Quaternion c = col_dot(v, s, v, t);
      col_sub_scaled(v, t, s, c);
      if (mirror) col_sub_scaled(*mirror, t, s, c);
    }
  }
}

// Replaces column t with a canonical basis column orthogonal to the
// previous ones. Only reachable for pathologically degenerate inputs.
void inject_basis_column(QMatrix& m, Eigen::Index t) {
  for (Eigen::Index b = 0; b < m.rows(); ++b) {
    col_set_zero(m, t);
    m.plane(0)(b, t) = 1.0;
    mgs_project(m, nullptr, t);
    double n = col_norm(m, t);
    if (n >= 0.5) {
      col_scale(m, t, 1.0 / n);
      return;
    }
  }
  throw std::runtime_error("qsvd: failed to complete orthonormal basis");
}

constexpr double kCollapse = 0.3;

}  // namespace

QSvdResult qsvd(const QMatrix& q) {
  const Eigen::Index m = q.rows(), n = q.cols();
  if (m < 1 || n < 1) throw std::invalid_argument("qsvd: empty matrix");
  for (int l = 0; l < 4; ++l)
    if (!q.plane(l).allFinite())
      throw std::invalid_argument("qsvd: non-finite input");
  pin_blas_threads();

  // chi(Q) = [[A, B], [-conj(B), conj(A)]] with Q = A + B j.
  Eigen::MatrixXcd a(m, n), b(m, n);
  a.real() = q.plane(0);
  a.imag() = q.plane(1);
  b.real() = q.plane(2);
  b.imag() = q.plane(3);
  Eigen::MatrixXcd chi(2 * m, 2 * n);
  chi.topLeftCorner(m, n) = a;
  chi.topRightCorner(m, n) = b;
  chi.bottomLeftCorner(m, n) = -b.conjugate();
  chi.bottomRightCorner(m, n) = a.conjugate();

  const Eigen::Index k = std::min(2 * m, 2 * n);
  Eigen::VectorXd sv(k);
  Eigen::MatrixXcd uc(2 * m, k), vt(k, 2 * n);
  lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'S', static_cast<lapack_int>(2 * m),
      static_cast<lapack_int>(2 * n), chi.data(),
      static_cast<lapack_int>(2 * m), sv.data(), uc.data(),
      static_cast<lapack_int>(2 * m), vt.data(), static_cast<lapack_int>(k));
  if (info != 0)
    throw std::runtime_error("qsvd: complex SVD (zgesdd) failed, info=" +
                             std::to_string(info));
  // Right singular vectors as columns.
  Eigen::MatrixXcd vc = vt.adjoint();

  const Eigen::Index r = std::min(m, n);
  QSvdResult res{QMatrix(m, r), Eigen::VectorXd(r), QMatrix(n, r)};
  QMatrix u_alt(m, r), v_alt(n, r);  // pair partners, kept as fallbacks
  for (Eigen::Index t = 0; t < r; ++t) {
    res.S(t) = sv(2 * t);
    map_adjoint_column(uc, 2 * t, m, res.U, t);
    map_adjoint_column(vc, 2 * t, n, res.V, t);
    map_adjoint_column(uc, 2 * t + 1, m, u_alt, t);
    map_adjoint_column(vc, 2 * t + 1, n, v_alt, t);
  }

  const double sigma0 = res.S.size() > 0 ? res.S(0) : 0.0;
  const double zero_tol = 1e-12 * sigma0;

  // Gram-Schmidt over V with mirrored updates on U. Away from degenerate
  // clusters the corrections vanish; inside a cluster they restore
  // quaternion orthonormality while keeping Q v_t = sigma_t u_t.
  for (Eigen::Index t = 0; t < r; ++t) {
    bool accepted = false;
    for (int cand = 0; cand < 2 && !accepted; ++cand) {
      if (cand == 1) {
        col_copy(res.V, t, v_alt, t);
        col_copy(res.U, t, u_alt, t);
      }
      mgs_project(res.V, &res.U, t);
      double nv = col_norm(res.V, t);
      if (nv >= kCollapse) {
        col_scale(res.V, t, 1.0 / nv);
        col_scale(res.U, t, 1.0 / nv);
        accepted = true;
      }
    }
    if (!accepted) {
      inject_basis_column(res.V, t);
      if (res.S(t) > zero_tol) {
        // u = Q v / sigma keeps the factor pair consistent.
        QMatrix vcol(n, 1);
        col_copy(vcol, 0, res.V, t);
        QMatrix ucol = q * vcol;
        for (int l = 0; l < 4; ++l)
          res.U.plane(l).col(t) = ucol.plane(l).col(0) / res.S(t);
      } else {
        col_set_zero(res.U, t);  // rebuilt below
      }
    }
  }

  // Left vectors in the numerically-zero block carry no pairing
  // information; orthonormalize them independently.
  for (Eigen::Index t = 0; t < r; ++t) {
    if (res.S(t) > zero_tol) continue;
    bool accepted = false;
    for (int cand = 0; cand < 2 && !accepted; ++cand) {
      if (cand == 1) col_copy(res.U, t, u_alt, t);
      mgs_project(res.U, nullptr, t);
      double nu = col_norm(res.U, t);
      if (nu >= kCollapse) {
        col_scale(res.U, t, 1.0 / nu);
        accepted = true;
      }
    }
    if (!accepted) inject_basis_column(res.U, t);
  }
  return res;
}

int q_rank(const QMatrix& q, double tol) {
  if (tol < 0) throw std::invalid_argument("q_rank: tol must be >= 0");
  QSvdResult svd = qsvd(q);
  if (svd.S.size() == 0) return 0;
  const double cut = tol * svd.S(0);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.S.size(); ++i)
    if (svd.S(i) > cut) ++rank;
  return rank;
}

}  // namespace qwsnm
