#pragma once

#include <Eigen/Dense>

#include "qwsnm/qmatrix.hpp"

namespace qwsnm {

// Thin quaternion SVD Q = U * diag(S) * V^< with r = min(m, n):
//   U is m x r with orthonormal quaternion columns,
//   S holds real singular values in non-ascending order,
//   V is n x r with orthonormal quaternion columns.
struct QSvdResult {
  QMatrix U;
  Eigen::VectorXd S;
  QMatrix V;
};

// Computes the thin QSVD via the complex adjoint embedding
//   chi(Q) = [[A, B], [-conj(B), conj(A)]],  Q = A + B*j,
// whose singular values occur in equal pairs; one value per pair is kept
// and the matched complex singular vectors are mapped back to quaternion
// columns. A quaternion modified Gram-Schmidt pass repairs the factor
// structure inside degenerate singular-value clusters.
//
// Throws std::invalid_argument on empty/non-finite input and
// std::runtime_error if the underlying complex SVD fails.
QSvdResult qsvd(const QMatrix& q);

// Number of singular values greater than tol * S[0].
int q_rank(const QMatrix& q, double tol);

}  // namespace qwsnm
