#include <doctest.h>

#include "spectral/toeplitz.hpp"
#include "spectral/sampling.hpp"
#include "test_util.hpp"

using namespace spectral;
namespace tt = spectral::testing;

TEST_SUITE_BEGIN("toeplitz");

TEST_CASE("toeplitz_build known values") {
  Vec u(3);
  u << 1.0, 0.0, 0.0;
  CHECK((toeplitz_build(u).mat() - Mat::Identity(3, 3)).norm() == 0.0);

  Vec u2(2);
  u2 << Complex(2, 0), Complex(1, 1);
  const Mat T = toeplitz_build(u2).mat();
  CHECK(T(0, 0) == Complex(2, 0));
  CHECK(T(0, 1) == Complex(1, 1));
  CHECK(T(1, 0) == Complex(1, -1));
  CHECK(T(1, 1) == Complex(2, 0));

  CHECK(toeplitz_build(Vec::Zero(4)).mat().norm() == 0.0);

  Vec bad(2);
  bad << Complex(0, 1), Complex(0, 0);
  CHECK_THROWS_AS(toeplitz_build(bad), std::invalid_argument);
}

TEST_CASE("toeplitz_adjoint diagonal sums") {
  const Vec a = toeplitz_adjoint(Mat(Mat::Identity(3, 3)));
  CHECK(a[0] == Complex(3, 0));
  CHECK(a[1] == Complex(0, 0));
  CHECK(a[2] == Complex(0, 0));

  const Vec b = toeplitz_adjoint(Mat(Mat::Ones(3, 3)));
  CHECK(b[0] == Complex(3, 0));
  CHECK(b[1] == Complex(2, 0));
  CHECK(b[2] == Complex(1, 0));
}

TEST_CASE("generator/adjoint pair is adjoint under the triangle pairing") {
  std::mt19937_64 eng(21);
  for (Eigen::Index n : {2, 4, 8, 16, 32}) {
    for (int trial = 0; trial < 200; ++trial) {
      Vec u = tt::rand_vec(eng, n);
      u[0] = u[0].real();
      const Mat H = tt::rand_mat(eng, n, n);
      const Complex lhs = tt::tri_inner(toeplitz_build(u).mat(), H);
      const Complex rhs = (u.adjoint() * toeplitz_adjoint(H)).value();
      CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + H.norm() * u.norm()));
    }
  }
}

TEST_CASE("compressed pair is adjoint on selection operators") {
  std::mt19937_64 eng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 4 + static_cast<Eigen::Index>(eng() % 20);
    const Eigen::Index m = 1 + static_cast<Eigen::Index>(eng() % n);
    const SamplingOperator M =
        selection_matrix(tt::random_selection_with_zero(eng, n, std::max<Eigen::Index>(m, 1)));
    // v drawn in the Hermitian-compatible domain: the coordinate pairing with
    // grid index 0 stays real, so the symmetrized operator coincides with the
    // raw composition (mirrors the real-u0 restriction on the generator side)
    Vec v = tt::rand_vec(eng, M.rows());
    v[0] = v[0].real();
    const Mat S = tt::rand_mat(eng, M.rows(), M.rows());
    const Complex lhs = tt::tri_inner(r_m_apply(M, v).mat(), S);
    const Complex rhs = (v.adjoint() * r_m_adjoint(M, S)).value();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (1.0 + S.norm() * v.norm()));
  }
}

TEST_CASE("r_m_apply structure") {
  std::mt19937_64 eng(23);
  // identity sampling reproduces the Toeplitz generator
  const SamplingOperator id = SamplingOperator::identity(6);
  Vec v = tt::rand_vec(eng, 6);
  v[0] = v[0].real();
  CHECK((r_m_apply(id, v).mat() - toeplitz_build(v).mat()).norm() < 1e-14);

  // single kept index: 1x1 matrix [v0]
  const SamplingOperator one = selection_matrix(SelectionPattern({0}, 4));
  Vec v1(1);
  v1 << Complex(3, 0);
  const Mat R = r_m_apply(one, v1).mat();
  REQUIRE(R.rows() == 1);
  CHECK(R(0, 0) == Complex(3, 0));
}

TEST_CASE("r_m_adjoint known values") {
  const SamplingOperator id = SamplingOperator::identity(5);
  const Vec a = r_m_adjoint(id, Mat(Mat::Identity(5, 5)));
  CHECK(std::abs(a[0] - Complex(5, 0)) < 1e-14);
  CHECK(a.tail(4).norm() < 1e-14);

  const SamplingOperator sel = selection_matrix(SelectionPattern({0, 1}, 2));
  const Vec b = r_m_adjoint(sel, Mat(Mat::Identity(2, 2)));
  CHECK(std::abs(b[0] - Complex(2, 0)) < 1e-14);
  CHECK(std::abs(b[1]) < 1e-14);
}

TEST_CASE("trace identity tr(T(u)) = n u0") {
  std::mt19937_64 eng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(eng() % 30);
    Vec u = tt::rand_vec(eng, n);
    u[0] = u[0].real();
    CHECK(toeplitz_build(u).mat().trace().real() ==
          doctest::Approx(n * u[0].real()).epsilon(1e-12));
  }
}

TEST_CASE("dense hermitian symmetrizes and reports asymmetry") {
  Mat raw(2, 2);
  raw << Complex(1, 0), Complex(2, 1), Complex(0, 0), Complex(3, 0);
  const DenseHermitian H(raw);
  CHECK((H.mat() - H.mat().adjoint()).norm() == 0.0);
  CHECK(H.asymmetry() > 0.0);
  CHECK_THROWS_AS(DenseHermitian(Mat::Zero(2, 3)), std::invalid_argument);
}

TEST_SUITE_END();
