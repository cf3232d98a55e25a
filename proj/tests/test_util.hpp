#pragma once

#include <random>

#include "mubchan/linalg.hpp"

namespace testutil {

using namespace mubchan;

inline Matrix gaussian(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cd(g(rng), g(rng));
  return m;
}

inline Matrix random_hermitian(int n, std::mt19937_64& rng) {
  const Matrix a = gaussian(n, n, rng);
  return (a + a.adjoint()) * 0.5;
}

inline Matrix random_unitary(int n, std::mt19937_64& rng) {
  Eigen::HouseholderQR<Matrix> qr(gaussian(n, n, rng));
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

inline Vector random_pure(int n, std::mt19937_64& rng) {
  const Matrix v = gaussian(n, 1, rng);
  return v.col(0).normalized();
}

inline Matrix random_density(int n, std::mt19937_64& rng) {
  const Matrix a = gaussian(n, n, rng);
  const Matrix r = a * a.adjoint();
  return r / r.trace().real();
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace testutil
