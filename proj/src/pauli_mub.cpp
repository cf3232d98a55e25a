#include "mubchan/pauli_mub.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace mubchan {

namespace {

long long mod(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

Vector eigenvector_for(const MubFamily& f, int axis, int n) {
  const int d = f.d;
  Matrix p = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) p += root_of_unity(d, -static_cast<long long>(n) * j) * f.generator_power(axis, j);
  p /= static_cast<double>(d);
  Eigen::Index best = 0;
  p.colwise().norm().maxCoeff(&best);
  Vector v = p.col(best).normalized();

  Eigen::Index lead = 0;
  double lead_mod = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > lead_mod + 1e-12) {
      lead_mod = std::abs(v(i));
      lead = i;
    }
  }
  v *= std::conj(v(lead)) / lead_mod;
  return v;
}

}  // namespace

cd root_of_unity(int d, long long power) {
  const long long p = mod(power, d);
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(p) / d);
}

Matrix weyl(int d, PauliLabel label) {
  if (d < 2) throw Error(Errc::BadDimension, "d must be >= 2");
  const int j = static_cast<int>(mod(label.j, d)), k = static_cast<int>(mod(label.k, d));
  Matrix m = Matrix::Zero(d, d);
  // (X^j Z^k)|e_c> = w^{kc} |e_{c+j}>
  for (int c = 0; c < d; ++c) m((c + j) % d, c) = root_of_unity(d, static_cast<long long>(k) * c);
  return m;
}

bool is_prime(int d) {
  if (d < 2) return false;
  for (int q = 2; q * q <= d; ++q)
    if (d % q == 0) return false;
  return true;
}

Matrix MubFamily::generator_power(int axis, long long power) const {
  const long long p = mod(power, d);
  const PauliLabel l = labels[axis];
  // (X^a Z^b)^p = w^{ab p(p-1)/2} X^{ap} Z^{bp}
  const long long tri = static_cast<long long>(l.j) * l.k * (p * (p - 1) / 2);
  const cd c = std::pow(phases[axis], static_cast<double>(p)) * root_of_unity(d, tri);
  return c * weyl(d, {static_cast<int>(mod(l.j * p, d)), static_cast<int>(mod(l.k * p, d))});
}

MubFamily mub_family(int d) {
  if (d < 2) throw Error(Errc::BadDimension, "d must be >= 2");
  MubFamily f;
  f.d = d;
  if (is_prime(d)) {
    f.kappa = d + 1;
    for (int J = 1; J <= d; ++J) f.labels.push_back({1, J % d});
    f.labels.push_back({0, 1});
  } else {
    f.kappa = 3;
    f.labels = {{1, 0}, {0, 1}, {1, 1}};
  }
  for (const auto& l : f.labels) {
    const bool flip = d % 2 == 0 && (static_cast<long long>(l.j) * l.k) % 2 == 1;
    f.phases.push_back(flip ? std::polar(1.0, kPi / d) : cd(1.0));
  }
  for (int J = 0; J < f.kappa; ++J) f.generators.push_back(f.generator_power(J, 1));
  for (int J = 0; J < f.kappa; ++J) {
    Matrix b(d, d);
    for (int n = 0; n < d; ++n) b.col(n) = eigenvector_for(f, J, n);
    f.bases.push_back(std::move(b));
  }
  return f;
}

std::shared_ptr<const MubFamily> shared_mub_family(int d) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const MubFamily>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const MubFamily>(mub_family(d));
  cache.emplace(d, f);
  return f;
}

MubReport verify_mub(const MubFamily& f) {
  MubReport r;
  const int d = f.d;
  for (int J = 0; J < f.kappa; ++J) {
    const Matrix gram = f.bases[J].adjoint() * f.bases[J];
    r.max_orthogonality_error = std::max(r.max_orthogonality_error, max_abs(gram - Matrix::Identity(d, d)));
    for (int K = J + 1; K < f.kappa; ++K) {
      const Matrix ov = f.bases[J].adjoint() * f.bases[K];
      const double err = (ov.cwiseAbs2().array() - 1.0 / d).abs().maxCoeff();
      r.max_overlap_error = std::max(r.max_overlap_error, err);
    }
  }
  for (int J = 0; J < f.kappa; ++J)
    for (int m = 1; m < d; ++m) {
      const Matrix a = f.generator_power(J, -m);
      for (int K = 0; K < f.kappa; ++K)
        for (int n = 1; n < d; ++n) {
          const cd tr = (a * f.generator_power(K, n)).trace();
          const double expect = (J == K && m == n) ? d : 0.0;
          r.max_orthogonality_error = std::max(r.max_orthogonality_error, std::abs(tr - expect) / d);
        }
    }
  return r;
}

Eigen::MatrixXcd bloch_coords(const Matrix& rho, const MubFamily& f) {
  if (!f.complete()) throw Error(Errc::IncompleteFamily, "bloch expansion needs d+1 bases");
  if (rho.rows() != f.d || rho.cols() != f.d) throw Error(Errc::DimensionMismatch, "state dimension");
  Eigen::MatrixXcd v(f.kappa, f.d - 1);
  for (int J = 0; J < f.kappa; ++J)
    for (int j = 1; j < f.d; ++j)
      // Tr(A B) = sum A^T .* B
      v(J, j - 1) = (f.generator_power(J, -j).transpose().array() * rho.array()).sum();
  return v;
}

Matrix reconstruct(const Eigen::MatrixXcd& coords, const MubFamily& f) {
  if (!f.complete()) throw Error(Errc::IncompleteFamily, "bloch expansion needs d+1 bases");
  if (coords.rows() != f.kappa || coords.cols() != f.d - 1)
    throw Error(Errc::DimensionMismatch, "coefficient shape");
  Matrix rho = Matrix::Identity(f.d, f.d);
  for (int J = 0; J < f.kappa; ++J)
    for (int j = 1; j < f.d; ++j) rho += coords(J, j - 1) * f.generator_power(J, j);
  return rho / static_cast<double>(f.d);
}

std::optional<cd> commutation_phase(const Matrix& a, const Matrix& b, double tol) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error(Errc::DimensionMismatch, "operands must be square and equal size");
  const Matrix c = a * b * a.adjoint() * b.adjoint();
  const cd xi = c.trace() / static_cast<double>(c.rows());
  if (max_abs(c - xi * Matrix::Identity(c.rows(), c.cols())) > tol) return std::nullopt;
  if (std::abs(std::abs(xi) - 1.0) > tol) return std::nullopt;
  return xi;
}

}  // namespace mubchan
