#include "doctest.h"
#include "helpers.hpp"
#include "nilflow/errors.hpp"

using namespace nilflow;
using test::vec;

TEST_SUITE("lie-core") {

TEST_CASE("complex structure is the interleaved J") {
  const Matrix j = linalg::complex_structure(2);
  Matrix expected = Matrix::Zero(4, 4);
  expected << 0, -1, 0, 0, 1, 0, 0, 0, 0, 0, 0, -1, 0, 0, 1, 0;
  CHECK(j == expected);
  CHECK((j * j + Matrix::Identity(4, 4)).norm() == 0.0);
}

TEST_CASE("rank and kernel") {
  Matrix m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 0, 1, 1;
  CHECK(linalg::rank(m) == 2);
  const Matrix k = linalg::kernel(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).norm() < 1e-12);
  CHECK(linalg::rank(Matrix::Zero(2, 3)) == 0);
  CHECK(linalg::kernel(Matrix::Identity(3, 3)).cols() == 0);
}

TEST_CASE("expm matches closed-form rotations and nilpotent exponentials") {
  for (double t : {0.0, 0.1, 1.0, 3.0, 25.0}) {
    Matrix k(2, 2);
    k << 0, -t, t, 0;
    Matrix r(2, 2);
    r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    CHECK((linalg::expm(k) - r).cwiseAbs().maxCoeff() < 1e-13 * std::max(1.0, t));
  }
  Matrix n = Matrix::Zero(3, 3);
  n(0, 1) = 2.0;
  n(1, 2) = 3.0;
  Matrix expected = Matrix::Identity(3, 3) + n + 0.5 * n * n;
  CHECK((linalg::expm(n) - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("bracket examples") {
  const auto h1 = heisenberg_algebra(1);
  CHECK(h1.bracket(h1.basis(0), h1.basis(1)) == h1.basis(2));
  CHECK(h1.bracket(h1.basis(0), h1.basis(2)).norm() == 0.0);
  const auto h2 = heisenberg_algebra(2);
  CHECK(h2.bracket(h2.basis(0), h2.basis(2)).norm() == 0.0);
  CHECK(h2.bracket(h2.basis(2), h2.basis(3)) == h2.basis(4));
  CHECK_THROWS_AS(h1.bracket(vec({1, 2}), h1.basis(0)), InputError);
}

TEST_CASE("j_of examples") {
  const auto h2 = heisenberg_algebra(2);
  CHECK(h2.j_of(vec({1})) == linalg::complex_structure(2));
  CHECK(h2.j_of(vec({0})).norm() == 0.0);
  CHECK(h2.j_of(vec({2})) == 2.0 * linalg::complex_structure(2));
  CHECK_THROWS_AS(h2.j_of(vec({1, 1})), InputError);
}

TEST_CASE("ad_transpose examples") {
  const auto h1 = heisenberg_algebra(1);
  CHECK(h1.ad_transpose(h1.basis(0), h1.basis(2)) == h1.basis(1));
  CHECK(h1.ad_transpose(vec({1, 2, 0}), vec({3, 4, 0})).norm() == 0.0);
  CHECK(h1.ad_transpose(h1.basis(2), vec({1, 2, 3})).norm() == 0.0);
}

TEST_CASE("bracket, duality and Jacobi properties on random samples") {
  std::vector<Algebra2Step> algebras{heisenberg_algebra(1), heisenberg_algebra(3),
                                     test::free_three_step_two()};
  SampleRng mrng(5, 0);
  Matrix metric = Matrix::Identity(5, 5);
  metric.topLeftCorner(4, 4) = test::random_p_tilde(mrng, 2);
  metric(4, 4) = 0.7;
  algebras.emplace_back(4, 1,
                        std::vector<Matrix>{0.7 * metric.topLeftCorner(4, 4).inverse() *
                                            linalg::complex_structure(2)},
                        metric);
  for (const auto& a : algebras) {
    for (int i = 0; i < 200; ++i) {
      SampleRng rng(11, static_cast<std::uint64_t>(i));
      const Vector x = rng.normal_vector(a.dim());
      const Vector y = rng.normal_vector(a.dim());
      const Vector w = rng.normal_vector(a.dim());
      const Vector xy = a.bracket(x, y);
      CHECK(xy == -a.bracket(y, x));
      CHECK(a.v_part(xy).norm() == 0.0);
      double lhs = a.inner(xy, w);
      double rhs = a.inner_v(a.j_of(a.z_part(w)) * a.v_part(x), a.v_part(y));
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));
      CHECK(a.bracket(xy, w).norm() == 0.0);
      lhs = a.inner(a.ad_transpose(x, y), w);
      rhs = a.inner(y, a.bracket(x, w));
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1 + std::abs(lhs)));
    }
  }
}

TEST_CASE("center examples") {
  CHECK(heisenberg_algebra(2).center().cols() == 1);
  CHECK((heisenberg_algebra(2).center().col(0).cwiseAbs() - Vector::Unit(5, 4)).norm() < 1e-14);

  const Algebra2Step abelian(2, 1, {Matrix::Zero(2, 2)});
  CHECK(abelian.center().cols() == 3);

  Matrix j = Matrix::Zero(3, 3);
  j.topLeftCorner(2, 2) = linalg::complex_structure(1);
  const Algebra2Step h1_plus_r(3, 1, {j});
  const Matrix c = h1_plus_r.center();
  REQUIRE(c.cols() == 2);
  // Spans {X_3, Z_1}.
  Matrix expected = Matrix::Zero(4, 2);
  expected(2, 0) = 1.0;
  expected(3, 1) = 1.0;
  CHECK(linalg::rank((Matrix(4, 4) << c, expected).finished()) == 2);
}

TEST_CASE("is_nonsingular examples") {
  CHECK(heisenberg_algebra(3).is_nonsingular(10, 1).nonsingular);

  Matrix odd = Matrix::Zero(3, 3);
  odd(0, 1) = -1.0;
  odd(1, 0) = 1.0;
  odd(1, 2) = -2.0;
  odd(2, 1) = 2.0;
  CHECK_FALSE(Algebra2Step(3, 1, {odd}).is_nonsingular(10, 1).nonsingular);

  const Algebra2Step two(2, 2, {linalg::complex_structure(1), Matrix::Zero(2, 2)});
  const auto res = two.is_nonsingular(100, 3);
  CHECK_FALSE(res.nonsingular);
  REQUIRE(res.witness.has_value());
  CHECK(two.j_of(*res.witness).norm() < 1e-12);
  CHECK(std::abs((*res.witness)(0)) < 1e-12);
}

TEST_CASE("validation") {
  Matrix not_skew = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(Algebra2Step(2, 1, {not_skew}), InputError);
  CHECK_THROWS_AS(Algebra2Step(2, 2, {linalg::complex_structure(1)}), InputError);
  Matrix coupled = Matrix::Identity(3, 3);
  coupled(0, 2) = coupled(2, 0) = 0.1;
  CHECK_THROWS_AS(Algebra2Step(2, 1, {linalg::complex_structure(1)}, coupled), InputError);
  // J is skew for the identity but not for diag(1, 4).
  Matrix m = Matrix::Identity(3, 3);
  m(1, 1) = 4.0;
  CHECK_THROWS_AS(Algebra2Step(2, 1, {linalg::complex_structure(1)}, m), InputError);
}

}  // TEST_SUITE
