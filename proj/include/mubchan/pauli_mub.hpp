#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "mubchan/linalg.hpp"

namespace mubchan {

struct PauliLabel {
  int j = 0;  // X power
  int k = 0;  // Z power
};

cd root_of_unity(int d, long long power = 1);

// X^j Z^k, X|e_k> = |e_{k+1}>, Z|e_k> = w^k |e_k>
Matrix weyl(int d, PauliLabel label);

bool is_prime(int d);

struct MubFamily {
  int d = 0;
  int kappa = 0;
  std::vector<Matrix> generators;
  std::vector<Matrix> bases;  // column n has eigenvalue w^n under the matching generator
  std::vector<PauliLabel> labels;
  std::vector<cd> phases;  // generator = phase * X^j Z^k, chosen so that generator^d = I

  bool complete() const { return kappa == d + 1; }
  // W_J^j for any integer j, exact entries (no repeated products)
  Matrix generator_power(int axis, long long power) const;
  Vector state(int axis, int n) const { return bases[axis].col(n); }
};

MubFamily mub_family(int d);
std::shared_ptr<const MubFamily> shared_mub_family(int d);

struct MubReport {
  double max_overlap_error = 0.0;
  double max_orthogonality_error = 0.0;
};

MubReport verify_mub(const MubFamily& family);

// rows: axis, cols: power j = 1..d-1
Eigen::MatrixXcd bloch_coords(const Matrix& rho, const MubFamily& family);
Matrix reconstruct(const Eigen::MatrixXcd& coords, const MubFamily& family);

// ABA^H B^H = xi I when the commutator is scalar
std::optional<cd> commutation_phase(const Matrix& a, const Matrix& b, double tol = 1e-10);

}  // namespace mubchan
