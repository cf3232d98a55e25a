#pragma once

#include <Eigen/Dense>
#include <complex>
#include <limits>

#include "mubchan/error.hpp"

namespace mubchan {

using cd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Spectrum {
  RealVector eigenvalues;  // descending
  Matrix eigenvectors;     // columns match eigenvalues
};

// Symmetrizes (M + M^H)/2 before solving. Throws NonSquare / NotHermitian (> 1e-8).
Spectrum herm_eig(const Matrix& m);
RealVector herm_eigenvalues(const Matrix& m);

RealVector singular_values(const Matrix& m);

template <typename A, typename B>
Matrix kron(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  const Eigen::Index ar = a.rows(), ac = a.cols(), br = b.rows(), bc = b.cols();
  Matrix out(ar * br, ac * bc);
  for (Eigen::Index i = 0; i < ar; ++i)
    for (Eigen::Index j = 0; j < ac; ++j)
      out.block(i * br, j * bc, br, bc) = cd(a(i, j)) * b.template cast<cd>();
  return out;
}

// subsystem is 1 or 2
Matrix partial_transpose(const Matrix& m, int d1, int d2, int subsystem);

double schatten_p_norm(const Matrix& rho, double p);
double schatten_p_norm_of_spectrum(const RealVector& eigenvalues, double p);

double von_neumann_entropy(const Matrix& rho);
double entropy_of_spectrum(const RealVector& eigenvalues);

double hermitian_deviation(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-10);
bool is_unitary(const Matrix& m, double tol = 1e-11);
bool is_psd(const Matrix& m, double tol = 1e-10);
bool is_density(const Matrix& m, double tol = 1e-10);

Vector basis_vector(int d, int k);
Matrix projector(const Vector& v);
// sum_k |k k> / sqrt(d)
Vector maximally_entangled(int d);
double max_abs(const Matrix& m);

}  // namespace mubchan
