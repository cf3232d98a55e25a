#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mubchan/pauli_mub.hpp"

namespace mubchan {

using Multipliers = std::vector<double>;

struct CpReport {
  bool cp = true;
  double lower_slack = 0.0;  // sum(lambda) + 1/(d-1), or min twirl weight for non-prime d
  double upper_slack = 0.0;  // 1 + d min(lambda) - sum(lambda)
  std::string failed;        // empty when cp
};

// Linear map on d x d matrices.
struct LinearMap {
  int dim = 0;
  std::function<Matrix(const Matrix&)> fn;
  Matrix operator()(const Matrix& rho) const { return fn(rho); }
};

// d^2 x d^2 matrix acting on row-major vec(rho)
Matrix superoperator(const LinearMap& map);

class AxisChannel {
 public:
  // Rejects non-CP multipliers (1e-12 slack). noise is the weight on the
  // completely depolarizing map and only applies when d is not prime.
  static AxisChannel checked(int d, Multipliers lambda, double noise = 0.0);
  static AxisChannel unchecked(int d, Multipliers lambda, double noise = 0.0);

  int d() const { return d_; }
  int kappa() const { return static_cast<int>(lambda_.size()); }
  const Multipliers& lambda() const { return lambda_; }
  double noise() const { return noise_; }
  const MubFamily& family() const { return *family_; }
  std::shared_ptr<const MubFamily> family_ptr() const { return family_; }

  double s() const;
  Multipliers t() const;
  double a00() const;
  Multipliers a() const;
  // Pauli-twirl probabilities indexed by X^j Z^k -> j*d + k
  RealVector twirl_weights() const;

  CpReport cp_report() const;
  bool is_cp() const { return cp_report().cp; }

  Matrix apply(const Matrix& rho) const;
  LinearMap as_map() const;

 private:
  AxisChannel(int d, Multipliers lambda, double noise);
  int d_;
  Multipliers lambda_;
  double noise_;
  std::shared_ptr<const MubFamily> family_;
};

CpReport cp_test(int d, const Multipliers& lambda, double noise = 0.0);

// Multipliers phi(L, j-1) on W_L^j; prime d only.
class DiagonalChannel {
 public:
  DiagonalChannel(int d, Eigen::MatrixXcd phi);
  static DiagonalChannel from_axis(const AxisChannel& ch);

  int d() const { return d_; }
  const Eigen::MatrixXcd& phi() const { return phi_; }
  const MubFamily& family() const { return *family_; }
  double hermiticity_error() const;

  Matrix apply(const Matrix& rho) const;
  LinearMap as_map() const;

 private:
  int d_;
  Eigen::MatrixXcd phi_;
  std::shared_ptr<const MubFamily> family_;
};

DiagonalChannel compose(const DiagonalChannel& outer, const DiagonalChannel& inner);
DiagonalChannel mix(double x, const DiagonalChannel& first, const DiagonalChannel& second);
// rho -> sum_j c_j W_J^j rho W_J^{-j}
DiagonalChannel single_axis_mixture(int d, int axis, const std::vector<double>& weights);

struct KrausSet {
  std::vector<Matrix> operators;
  double completeness_error() const;
};

KrausSet kraus(const AxisChannel& ch);
Matrix apply_kraus(const KrausSet& k, const Matrix& rho);

// Orthogonal basis of unitaries: I, W_1^1..W_1^{d-1}, W_2^1, ...
std::vector<Matrix> obu_from_family(const MubFamily& family);
// All X^j Z^k ordered by j*d + k
std::vector<Matrix> pauli_obu(int d);
// T_st = Tr(V_s^H map(V_t)) / d
Matrix transfer_matrix(const LinearMap& map, const std::vector<Matrix>& obu);

// b I + a QC + (1 - a - b) N, QC in the standard basis
struct OneAxisChannel {
  int d;
  double a;
  double b;
  Matrix apply(const Matrix& rho) const;
  LinearMap as_map() const;
  Multipliers multipliers() const;  // special axis first
  // Axis channel whose special axis is the Z axis (last generator) so it equals this map
  AxisChannel to_axis_channel() const;
};

struct OneAxisRegions {
  int d;
  bool is_cp(double a, double b, double tol = 1e-12) const;
  bool is_eb(double a, double b, double tol = 1e-12) const;
  bool is_fukuda_multiplicative(double a, double b, double tol = 1e-12) const;
  // a + b <= 1, (d-1) a - b >= -1, a + (d+1) b >= -1/(d-1): positive inside
  std::vector<double> cp_slacks(double a, double b) const;
  // slack of the active PPT/EB inequality (sign of b picks the branch)
  double eb_slack(double a, double b) const;
};

struct NamedPoint {
  std::string name;
  double a;
  double b;
};
std::vector<NamedPoint> one_axis_named_points(int d);

// (Tr(rho) I - rho^T) / (d-1)
LinearMap werner_holevo(int d);

namespace named {
AxisChannel identity(int d);
AxisChannel noise(int d);
AxisChannel qc(int d, int axis);
AxisChannel phase_damping(int d, int axis, double lambda);
AxisChannel extreme_x(int d, int axis);
AxisChannel xeb(int d, int axis);
AxisChannel yeb(int d, int axis);
AxisChannel depolarizing(int d, double lambda);
AxisChannel max_squashed(int d, int axis, double lambda);
AxisChannel depolarize_from_x(int d, int axis, double lambda);
AxisChannel one_axis(int d, double a, double b);
// kind(p1,p2,...) e.g. "yeb(0)", "depolarizing(0.5)", "one_axis(0.5,-0.25)"
AxisChannel parse(int d, const std::string& spec);
}  // namespace named

}  // namespace mubchan
