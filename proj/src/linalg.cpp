#include "mubchan/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace mubchan {

namespace {

constexpr double kTieTol = 1e-12;
constexpr double kClip = 1e-10;

void canonicalize_phase(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  double best_mod = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > best_mod + kTieTol) {
      best_mod = m;
      best = i;
    }
  }
  if (best_mod > 0) v *= std::conj(v(best)) / best_mod;
}

void check_square(const Matrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0) throw Error(Errc::NonSquare, "matrix must be square");
}

}  // namespace

double hermitian_deviation(const Matrix& m) {
  check_square(m);
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Spectrum herm_eig(const Matrix& m) {
  check_square(m);
  if (hermitian_deviation(m) > 1e-8) throw Error(Errc::NotHermitian, "deviation exceeds 1e-8");
  const Matrix h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::Index n = h.rows();

  Matrix vecs = es.eigenvectors();
  for (Eigen::Index c = 0; c < n; ++c) canonicalize_phase(vecs.col(c));

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  const RealVector& ev = es.eigenvalues();
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(ev(a) - ev(b)) > kTieTol) return ev(a) > ev(b);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double ra = vecs(i, a).real(), rb = vecs(i, b).real();
      if (std::abs(ra - rb) > kTieTol) return ra > rb;
    }
    return false;
  });

  Spectrum out{RealVector(n), Matrix(n, n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = ev(order[k]);
    out.eigenvectors.col(k) = vecs.col(order[k]);
  }
  return out;
}

RealVector herm_eigenvalues(const Matrix& m) {
  check_square(m);
  if (hermitian_deviation(m) > 1e-8) throw Error(Errc::NotHermitian, "deviation exceeds 1e-8");
  const Matrix h = (m + m.adjoint()) * 0.5;
  RealVector ev = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
  return ev.reverse();
}

RealVector singular_values(const Matrix& m) {
  if (m.size() == 0) return RealVector();
  return Eigen::JacobiSVD<Matrix>(m).singularValues();
}

Matrix partial_transpose(const Matrix& m, int d1, int d2, int subsystem) {
  const Eigen::Index n = static_cast<Eigen::Index>(d1) * d2;
  if (d1 < 1 || d2 < 1 || m.rows() != n || m.cols() != n)
    throw Error(Errc::DimensionMismatch, "matrix is not (d1*d2)x(d1*d2)");
  if (subsystem != 1 && subsystem != 2) throw Error(Errc::DimensionMismatch, "subsystem must be 1 or 2");
  Matrix out(n, n);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int j1 = 0; j1 < d1; ++j1)
        for (int j2 = 0; j2 < d2; ++j2) {
          const cd v = m(i1 * d2 + i2, j1 * d2 + j2);
          if (subsystem == 1)
            out(j1 * d2 + i2, i1 * d2 + j2) = v;
          else
            out(i1 * d2 + j2, j1 * d2 + i2) = v;
        }
  return out;
}

double schatten_p_norm_of_spectrum(const RealVector& eigenvalues, double p) {
  if (!(p >= 1.0)) throw Error(Errc::BadP, "p must be >= 1");
  double mx = 0.0, acc = 0.0;
  for (double e : eigenvalues) {
    if (e < -kClip) throw Error(Errc::NotPSD, "eigenvalue " + std::to_string(e));
    if (e < 0) e = 0;
    mx = std::max(mx, e);
  }
  if (std::isinf(p)) return mx;
  if (mx == 0.0) return 0.0;
  // scale by the max for stability at large p
  for (double e : eigenvalues)
    if (e > 0) acc += std::pow(e / mx, p);
  return mx * std::pow(acc, 1.0 / p);
}

double schatten_p_norm(const Matrix& rho, double p) {
  if (!(p >= 1.0)) throw Error(Errc::BadP, "p must be >= 1");
  return schatten_p_norm_of_spectrum(herm_eigenvalues(rho), p);
}

double entropy_of_spectrum(const RealVector& eigenvalues) {
  double s = 0.0;
  for (double e : eigenvalues)
    if (e > 0) s -= e * std::log2(e);
  return s;
}

double von_neumann_entropy(const Matrix& rho) {
  if (!is_density(rho, 1e-8)) throw Error(Errc::NotDensity, "input is not a density matrix");
  return entropy_of_spectrum(herm_eigenvalues(rho));
}

bool is_hermitian(const Matrix& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const Matrix& m, double tol) {
  if (!is_hermitian(m, std::max(tol, 1e-8))) return false;
  return herm_eigenvalues(m).minCoeff() >= -tol;
}

bool is_density(const Matrix& m, double tol) {
  return is_psd(m, tol) && std::abs(m.trace() - cd(1.0)) <= tol;
}

Vector basis_vector(int d, int k) {
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

Vector maximally_entangled(int d) {
  Vector v = Vector::Zero(d * d);
  for (int k = 0; k < d; ++k) v(k * d + k) = 1.0;
  return v / std::sqrt(static_cast<double>(d));
}

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace mubchan
