#include <doctest.h>

#include <cmath>

#include "mubchan/pauli_mub.hpp"
#include "test_util.hpp"

using namespace mubchan;
using namespace testutil;

namespace {

const cd omega3 = std::polar(1.0, 2 * kPi / 3);

}

TEST_SUITE("pauli_mub") {

TEST_CASE("weyl operators") {
  Matrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(max_abs(weyl(2, {1, 0}) - swap) == 0.0);

  Matrix z3 = Matrix::Zero(3, 3);
  z3(0, 0) = 1.0;
  z3(1, 1) = omega3;
  z3(2, 2) = omega3 * omega3;
  CHECK(max_abs(weyl(3, {0, 1}) - z3) < 1e-15);

  const Matrix x5 = weyl(5, {1, 0}), z5 = weyl(5, {0, 1});
  CHECK(max_abs(z5 * x5 - std::polar(1.0, 2 * kPi / 5) * x5 * z5) < 1e-15);

  CHECK_THROWS_AS(weyl(1, {0, 0}), Error);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK(is_prime(11));
  CHECK(is_prime(197));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_FALSE(is_prime(9));
  CHECK_FALSE(is_prime(91));
}

TEST_CASE("family sizes and generator choice") {
  const MubFamily f3 = mub_family(3);
  CHECK(f3.kappa == 4);
  int vectors = 0;
  for (const auto& b : f3.bases) vectors += static_cast<int>(b.cols());
  CHECK(vectors == 12);
  for (int J = 0; J < 4; ++J)
    for (int K = J + 1; K < 4; ++K)
      CHECK(((f3.bases[J].adjoint() * f3.bases[K]).cwiseAbs2().array() - 1.0 / 3).abs().maxCoeff() < 1e-12);
  // W_J = X Z^J for J = 1..d, last generator Z
  for (int J = 1; J <= 3; ++J) CHECK(max_abs(f3.generators[J - 1] - weyl(3, {1, 0}) * weyl(3, {0, J})) < 1e-15);
  CHECK(max_abs(f3.generators[3] - weyl(3, {0, 1})) < 1e-15);

  // qubit: bases of XZ (with phase, i.e. Y), X, Z
  const MubFamily f2 = mub_family(2);
  CHECK(f2.kappa == 3);
  CHECK(commutation_phase(f2.generators[0], weyl(2, {1, 1})).has_value());
  CHECK(max_abs(f2.generators[0] - cd(0, 1) * weyl(2, {1, 1})) < 1e-15);
  CHECK(max_abs(f2.generators[1] - weyl(2, {1, 0})) == 0.0);
  CHECK(max_abs(f2.generators[2] - weyl(2, {0, 1})) == 0.0);

  const MubFamily f6 = mub_family(6);
  CHECK(f6.kappa == 3);
  CHECK(max_abs(f6.generators[0] - weyl(6, {1, 0})) == 0.0);
  CHECK(max_abs(f6.generators[1] - weyl(6, {0, 1})) == 0.0);
  CHECK(verify_mub(f6).max_overlap_error < 1e-12);
}

TEST_CASE("verify_mub") {
  const MubReport r5 = verify_mub(mub_family(5));
  CHECK(r5.max_overlap_error <= 1e-12);
  CHECK(r5.max_orthogonality_error <= 1e-12);
  const MubReport r2 = verify_mub(mub_family(2));
  CHECK(r2.max_overlap_error <= 1e-14);
  CHECK(r2.max_orthogonality_error <= 1e-14);

  for (int d : {3, 5}) {
    MubFamily bad = mub_family(d);
    bad.bases[0].col(0) = basis_vector(d, 0);
    // e_0 belongs to the Z basis, so that overlap is 1 instead of 1/d
    CHECK(verify_mub(bad).max_overlap_error >= (1.0 / d) * (d - 1.0) / d);
  }
}

TEST_CASE("generator invariants for prime d") {
  for (int d : {2, 3, 5, 7, 11}) {
    CAPTURE(d);
    const MubFamily f = mub_family(d);
    const MubReport r = verify_mub(f);
    CHECK(r.max_overlap_error <= 1e-11);
    CHECK(r.max_orthogonality_error <= 1e-11);
    for (int J = 0; J < f.kappa; ++J) {
      const Matrix& w = f.generators[J];
      CHECK(is_unitary(w, 1e-11));
      Matrix power = Matrix::Identity(d, d);
      for (int m = 1; m < d; ++m) {
        power = power * w;
        CHECK(std::abs(power.trace()) <= 1e-11);
        CHECK(max_abs(power - f.generator_power(J, m)) <= 1e-11);
      }
      CHECK(max_abs(power * w - Matrix::Identity(d, d)) <= 1e-11);
      for (int n = 0; n < d; ++n)
        CHECK(max_abs(w * f.state(J, n) - root_of_unity(d, n) * f.state(J, n)) <= 1e-11);
    }
  }
}

TEST_CASE("basis phase convention: largest component real positive") {
  const MubFamily f = mub_family(5);
  for (int J = 0; J < f.kappa; ++J)
    for (int n = 0; n < 5; ++n) {
      const Vector v = f.state(J, n);
      Eigen::Index lead = 0;
      double best = -1;
      for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > best + 1e-12) {
          best = std::abs(v(i));
          lead = i;
        }
      CHECK(std::abs(v(lead).imag()) < 1e-14);
      CHECK(v(lead).real() > 0);
    }
}

TEST_CASE("bloch coordinates") {
  for (int d : {3, 5}) {
    const MubFamily f = mub_family(d);
    CHECK(max_abs(bloch_coords(Matrix::Identity(d, d) / double(d), f)) < 1e-15);

    for (int J = 0; J < f.kappa; ++J)
      for (int n = 0; n < d; ++n) {
        const Eigen::MatrixXcd v = bloch_coords(projector(f.state(J, n)), f);
        for (int K = 0; K < f.kappa; ++K)
          for (int j = 1; j < d; ++j) {
            const cd expect = K == J ? root_of_unity(d, -static_cast<long long>(n) * j) : cd(0);
            REQUIRE(std::abs(v(K, j - 1) - expect) < 1e-12);
          }
      }
  }
  CHECK_THROWS_AS(bloch_coords(Matrix::Identity(4, 4) / 4.0, mub_family(4)), Error);
}

TEST_CASE("bloch round trip and purity criterion") {
  std::mt19937_64 rng(101);
  for (int d : {3, 5}) {
    const MubFamily f = mub_family(d);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix rho = random_density(d, rng);
      REQUIRE(max_abs(reconstruct(bloch_coords(rho, f), f) - rho) <= 1e-12);

      const Vector psi = random_pure(d, rng);
      REQUIRE(bloch_coords(projector(psi), f).cwiseAbs2().sum() == doctest::Approx(d - 1.0).epsilon(1e-10));

      const Matrix mixed = 0.5 * rho + 0.5 * Matrix::Identity(d, d) / double(d);
      if (herm_eigenvalues(mixed).minCoeff() > 0.01) REQUIRE(bloch_coords(mixed, f).cwiseAbs2().sum() < d - 1 - 1e-6);
    }
  }
}

TEST_CASE("commutation phase") {
  const Matrix x = weyl(3, {1, 0}), z = weyl(3, {0, 1});
  const auto xi = commutation_phase(x, z);
  REQUIRE(xi.has_value());
  CHECK(std::abs(*xi - std::conj(omega3)) < 1e-15);
  CHECK(std::abs(*commutation_phase(x, x) - 1.0) < 1e-15);

  std::mt19937_64 rng(5);
  CHECK_FALSE(commutation_phase(random_unitary(3, rng), random_unitary(3, rng)).has_value());

  for (int d : {2, 3, 5, 7}) {
    const MubFamily f = mub_family(d);
    for (int J = 0; J < f.kappa; ++J)
      for (int K = 0; K < f.kappa; ++K) {
        const auto c = commutation_phase(f.generators[J], f.generators[K]);
        REQUIRE(c.has_value());
        REQUIRE(std::abs(std::abs(*c) - 1.0) < 1e-12);
      }
  }
}

}
