#include <doctest.h>

#include <cmath>

#include "qwsnm/qmatrix.hpp"
#include "qwsnm/rng.hpp"
#include "synth_image.hpp"

using namespace qwsnm;
using testsupport::random_qmatrix;

namespace {

bool q_close(const Quaternion& a, const Quaternion& b, double tol = 1e-12) {
  return modulus(a - b) <= tol;
}

}  // namespace

TEST_CASE("quaternion addition and scaling") {
  const Quaternion a{1, 1, 0, 0}, b{0, 0, 1, 1};
  CHECK(q_close(a + b, {1, 1, 1, 1}));
  CHECK(q_close(2.0 * Quaternion{1, 1, 1, 1}, {2, 2, 2, 2}));
  const Quaternion c{0.3, -1.7, 2.5, 0.9};
  CHECK(q_close(c + (-1.0) * c, {0, 0, 0, 0}));
}

TEST_CASE("hamilton product follows i j = k = -j i") {
  const Quaternion i{0, 1, 0, 0}, j{0, 0, 1, 0}, k{0, 0, 0, 1};
  CHECK(q_close(i * j, k));
  CHECK(q_close(j * i, -k));
  CHECK(q_close(j * k, i));
  CHECK(q_close(k * i, j));
  CHECK(q_close(i * i, {-1, 0, 0, 0}));
  // (1+i)(1-i) expands to 1 - i + i - i^2 = 2
  CHECK(q_close(Quaternion{1, 1, 0, 0} * Quaternion{1, -1, 0, 0},
                {2, 0, 0, 0}));
}

TEST_CASE("conjugate and modulus") {
  const Quaternion q{1, 1, 1, 1};
  CHECK(q_close(conj(q), {1, -1, -1, -1}));
  CHECK(modulus(q) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(modulus(Quaternion{}) == 0.0);
}

TEST_CASE("involutions flip the off-axis components") {
  const Quaternion q{1, 1, 1, 1};
  CHECK(q_close(involution(q, Axis::I), {1, 1, -1, -1}));
  CHECK(q_close(involution(q, Axis::J), {1, -1, 1, -1}));
  CHECK(q_close(involution(q, Axis::K), {1, -1, -1, 1}));
  CHECK(q_close(involution(involution(q, Axis::I), Axis::I), q));
  CHECK(q_close(involution(Quaternion::real(3.5), Axis::J), {3.5, 0, 0, 0}));
  // q^u = -u q u
  const Quaternion i{0, 1, 0, 0};
  CHECK(q_close(involution(q, Axis::I), (-1.0 * i) * q * i));
}

TEST_CASE("modulus is multiplicative") {
  Rng rng(7);
  auto rand_q = [&] {
    return Quaternion{rng.next_gaussian(), rng.next_gaussian(),
                      rng.next_gaussian(), rng.next_gaussian()};
  };
  for (int trial = 0; trial < 200; ++trial) {
    const Quaternion a = rand_q(), b = rand_q();
    const double lhs = modulus(a * b), rhs = modulus(a) * modulus(b);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    // q conj(q) is real and equals |q|^2
    const Quaternion qq = a * conj(a);
    CHECK(std::abs(qq.a0 - modulus_sq(a)) <= 1e-12 * std::max(1.0, qq.a0));
    CHECK(std::abs(qq.a1) <= 1e-12);
    CHECK(std::abs(qq.a2) <= 1e-12);
    CHECK(std::abs(qq.a3) <= 1e-12);
  }
}

TEST_CASE("qmatrix identity law and conjugate-transpose anti-homomorphism") {
  const QMatrix a = random_qmatrix(2, 3, 11);
  const QMatrix ia = QMatrix::identity(2) * a;
  CHECK(frobenius(ia - a) <= 1e-12);

  const QMatrix x = random_qmatrix(2, 2, 12), y = random_qmatrix(2, 2, 13);
  const QMatrix lhs = conj_transpose(x * y);
  const QMatrix rhs = conj_transpose(y) * conj_transpose(x);
  CHECK(frobenius(lhs - rhs) <= 1e-12 * std::max(1.0, frobenius(rhs)));
}

TEST_CASE("all-j matrix squared") {
  // Each entry of the square sums two j*j = -1 terms.
  QMatrix j2(2, 2);
  j2.plane(2).setOnes();
  const QMatrix sq = j2 * j2;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(q_close(sq(i, j), {-2, 0, 0, 0}));
}

TEST_CASE("qmatrix product is bilinear and associative") {
  const QMatrix a = random_qmatrix(3, 3, 21), b = random_qmatrix(3, 3, 22),
                c = random_qmatrix(3, 3, 23);
  const QMatrix assoc_l = (a * b) * c, assoc_r = a * (b * c);
  CHECK(frobenius(assoc_l - assoc_r) <=
        1e-10 * std::max(1.0, frobenius(assoc_r)));
  const QMatrix lin_l = a * (b + c), lin_r = a * b + a * c;
  CHECK(frobenius(lin_l - lin_r) <= 1e-10 * std::max(1.0, frobenius(lin_r)));
  const QMatrix sc_l = (2.5 * a) * b, sc_r = 2.5 * (a * b);
  CHECK(frobenius(sc_l - sc_r) <= 1e-10 * std::max(1.0, frobenius(sc_r)));
}

TEST_CASE("frobenius norm and inner product") {
  CHECK(frobenius(QMatrix::identity(2)) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(frobenius(QMatrix(3, 3)) == 0.0);
  const QMatrix a = random_qmatrix(4, 5, 31);
  CHECK(inner_re(a, a) ==
        doctest::Approx(frobenius_sq(a)).epsilon(1e-13));
}

TEST_CASE("shape errors") {
  const QMatrix a = random_qmatrix(2, 3, 41), b = random_qmatrix(2, 2, 42);
  CHECK_THROWS_AS((void)(a * a), std::invalid_argument);
  CHECK_THROWS_AS((void)(a + b), std::invalid_argument);
  CHECK_THROWS_AS((void)inner_re(a, b), std::invalid_argument);
}

TEST_CASE("pure image projects the real plane away") {
  QMatrix q = random_qmatrix(4, 4, 51);
  PureQImage img(q);
  CHECK(img.max_real_residual() == 0.0);
  CHECK(img.r() == q.plane(1));
}
