#include "mubchan/axis_channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mubchan {

namespace {

constexpr double kCpTol = 1e-12;

int expected_kappa(int d) { return is_prime(d) ? d + 1 : 3; }

double sum(const Multipliers& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(15);
  os << x;
  return os.str();
}

void check_dim(int d, const Matrix& rho) {
  if (rho.rows() != d || rho.cols() != d) throw Error(Errc::DimensionMismatch, "expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
}

Matrix qc_project(const MubFamily& f, int axis, const Matrix& rho) {
  // keep only the diagonal in the axis eigenbasis
  const Matrix& u = f.bases[axis];
  Matrix m = u.adjoint() * rho * u;
  const Vector diag = m.diagonal();
  return u * diag.asDiagonal() * u.adjoint();
}

}  // namespace

Matrix superoperator(const LinearMap& map) {
  const int d = map.dim;
  Matrix s(d * d, d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Matrix e = Matrix::Zero(d, d);
      e(i, j) = 1.0;
      const Matrix out = map(e);
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s(k * d + l, i * d + j) = out(k, l);
    }
  return s;
}

CpReport cp_test(int d, const Multipliers& lambda, double noise) {
  return AxisChannel::unchecked(d, lambda, noise).cp_report();
}

AxisChannel::AxisChannel(int d, Multipliers lambda, double noise)
    : d_(d), lambda_(std::move(lambda)), noise_(noise) {
  if (d < 2) throw Error(Errc::BadDimension, "d must be >= 2");
  if (static_cast<int>(lambda_.size()) != expected_kappa(d))
    throw Error(Errc::DimensionMismatch, "expected " + std::to_string(expected_kappa(d)) + " multipliers for d=" + std::to_string(d) + ", got " + std::to_string(lambda_.size()));
  if (is_prime(d) && noise_ != 0.0) throw Error(Errc::BadParams, "noise weight is only used for non-prime d");
  family_ = shared_mub_family(d);
}

AxisChannel AxisChannel::unchecked(int d, Multipliers lambda, double noise) {
  return AxisChannel(d, std::move(lambda), noise);
}

AxisChannel AxisChannel::checked(int d, Multipliers lambda, double noise) {
  AxisChannel ch(d, std::move(lambda), noise);
  const CpReport r = ch.cp_report();
  if (!r.cp) throw Error(Errc::NotCP, r.failed);
  return ch;
}

double AxisChannel::s() const { return (sum(lambda_) + noise_ - 1.0) / (kappa() - 1); }

Multipliers AxisChannel::t() const {
  Multipliers out(lambda_);
  const double sv = s();
  for (double& x : out) x -= sv;
  return out;
}

double AxisChannel::a00() const { return ((d_ - 1) * s() + 1.0) / d_; }

Multipliers AxisChannel::a() const {
  Multipliers out = t();
  for (double& x : out) x *= static_cast<double>(d_ - 1) / d_;
  return out;
}

RealVector AxisChannel::twirl_weights() const {
  const int d = d_;
  const double u = noise_ / (d * d);
  const Multipliers tv = t();
  RealVector w = RealVector::Constant(d * d, u);
  w(0) = s() + sum(tv) / d + u;
  for (int L = 0; L < kappa(); ++L) {
    const PauliLabel l = family_->labels[L];
    for (int m = 1; m < d; ++m) w(((l.j * m) % d) * d + (l.k * m) % d) = tv[L] / d + u;
  }
  return w;
}

CpReport AxisChannel::cp_report() const {
  CpReport r;
  if (is_prime(d_)) {
    const double total = sum(lambda_);
    const double mn = *std::min_element(lambda_.begin(), lambda_.end());
    r.lower_slack = total + 1.0 / (d_ - 1);
    r.upper_slack = 1.0 + d_ * mn - total;
    if (r.lower_slack < -kCpTol)
      r.failed = "sum(lambda) >= -1/(d-1) violated by " + fmt(-r.lower_slack);
    else if (r.upper_slack < -kCpTol)
      r.failed = "sum(lambda) <= 1 + d*min(lambda) violated by " + fmt(-r.upper_slack);
  } else {
    r.lower_slack = noise_;
    r.upper_slack = twirl_weights().minCoeff();
    if (r.lower_slack < -kCpTol)
      r.failed = "noise weight must be >= 0, got " + fmt(noise_);
    else if (r.upper_slack < -kCpTol)
      r.failed = "negative Pauli weight " + fmt(r.upper_slack);
  }
  r.cp = r.failed.empty();
  return r;
}

Matrix AxisChannel::apply(const Matrix& rho) const {
  check_dim(d_, rho);
  if (family_->complete()) {
    Eigen::MatrixXcd v = bloch_coords(rho, *family_);
    for (int J = 0; J < kappa(); ++J) v.row(J) *= lambda_[J];
    // keep the trace of non-normalized inputs
    return reconstruct(v, *family_) + (rho.trace() - 1.0) / static_cast<double>(d_) * Matrix::Identity(d_, d_);
  }
  const Multipliers tv = t();
  Matrix out = s() * rho + noise_ * rho.trace() / static_cast<double>(d_) * Matrix::Identity(d_, d_);
  for (int L = 0; L < kappa(); ++L) out += tv[L] * qc_project(*family_, L, rho);
  return out;
}

LinearMap AxisChannel::as_map() const {
  AxisChannel self = *this;
  return {d_, [self](const Matrix& r) { return self.apply(r); }};
}

DiagonalChannel::DiagonalChannel(int d, Eigen::MatrixXcd phi) : d_(d), phi_(std::move(phi)) {
  if (!is_prime(d)) throw Error(Errc::BadDimension, "diagonal channels need prime d");
  if (phi_.rows() != d + 1 || phi_.cols() != d - 1) throw Error(Errc::DimensionMismatch, "phi must be (d+1)x(d-1)");
  family_ = shared_mub_family(d);
}

DiagonalChannel DiagonalChannel::from_axis(const AxisChannel& ch) {
  Eigen::MatrixXcd phi(ch.kappa(), ch.d() - 1);
  for (int L = 0; L < ch.kappa(); ++L) phi.row(L).setConstant(ch.lambda()[L]);
  return DiagonalChannel(ch.d(), phi);
}

double DiagonalChannel::hermiticity_error() const {
  double e = 0.0;
  for (int L = 0; L < phi_.rows(); ++L)
    for (int j = 1; j < d_; ++j) e = std::max(e, std::abs(phi_(L, d_ - j - 1) - std::conj(phi_(L, j - 1))));
  return e;
}

Matrix DiagonalChannel::apply(const Matrix& rho) const {
  check_dim(d_, rho);
  Eigen::MatrixXcd v = bloch_coords(rho, *family_);
  v.array() *= phi_.array();
  return reconstruct(v, *family_) + (rho.trace() - 1.0) / static_cast<double>(d_) * Matrix::Identity(d_, d_);
}

LinearMap DiagonalChannel::as_map() const {
  DiagonalChannel self = *this;
  return {d_, [self](const Matrix& r) { return self.apply(r); }};
}

DiagonalChannel compose(const DiagonalChannel& outer, const DiagonalChannel& inner) {
  if (outer.d() != inner.d()) throw Error(Errc::DimensionMismatch, "compose: dimensions differ");
  return DiagonalChannel(outer.d(), outer.phi().cwiseProduct(inner.phi()));
}

DiagonalChannel mix(double x, const DiagonalChannel& first, const DiagonalChannel& second) {
  if (first.d() != second.d()) throw Error(Errc::DimensionMismatch, "mix: dimensions differ");
  if (x < 0.0 || x > 1.0) throw Error(Errc::BadWeights, "mixing weight outside [0,1]");
  return DiagonalChannel(first.d(), x * first.phi() + (1.0 - x) * second.phi());
}

DiagonalChannel single_axis_mixture(int d, int axis, const std::vector<double>& c) {
  if (!is_prime(d)) throw Error(Errc::BadDimension, "single-axis mixtures need prime d");
  if (axis < 0 || axis > d) throw Error(Errc::BadParams, "axis out of range");
  if (static_cast<int>(c.size()) != d) throw Error(Errc::BadWeights, "need d weights");
  for (double x : c)
    if (x < -1e-12) throw Error(Errc::BadWeights, "negative weight");
  if (std::abs(sum(c) - 1.0) > 1e-12) throw Error(Errc::BadWeights, "weights must sum to 1");

  const auto f = shared_mub_family(d);
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(d + 1, d - 1);
  for (int L = 0; L <= d; ++L)
    for (int k = 1; k < d; ++k) {
      const Matrix b = f->generator_power(L, k);
      for (int j = 0; j < d; ++j) {
        if (c[j] == 0.0) continue;
        const auto xi = commutation_phase(f->generator_power(axis, j), b);
        if (!xi) throw Error(Errc::BadParams, "generator powers do not commute up to a phase");
        phi(L, k - 1) += c[j] * *xi;
      }
    }
  return DiagonalChannel(d, phi);
}

double KrausSet::completeness_error() const {
  if (operators.empty()) return kInf;
  const Eigen::Index n = operators.front().cols();
  Matrix acc = Matrix::Zero(n, n);
  for (const auto& a : operators) acc += a.adjoint() * a;
  return max_abs(acc - Matrix::Identity(n, n));
}

KrausSet kraus(const AxisChannel& ch) {
  const CpReport r = ch.cp_report();
  if (!r.cp) throw Error(Errc::NotCP, r.failed);
  const int d = ch.d();
  const MubFamily& f = ch.family();
  RealVector w = ch.twirl_weights();
  KrausSet out;
  auto push = [&](double weight, const Matrix& u) {
    if (weight <= 1e-15) return;
    out.operators.push_back(std::sqrt(weight) * u);
  };
  push(w(0), Matrix::Identity(d, d));
  w(0) = 0.0;
  for (int L = 0; L < ch.kappa(); ++L)
    for (int m = 1; m < d; ++m) {
      const PauliLabel l = f.labels[L];
      const int idx = ((l.j * m) % d) * d + (l.k * m) % d;
      push(w(idx), f.generator_power(L, m));
      w(idx) = 0.0;
    }
  for (int idx = 1; idx < d * d; ++idx) push(w(idx), weyl(d, {idx / d, idx % d}));
  return out;
}

Matrix apply_kraus(const KrausSet& k, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& a : k.operators) out += a * rho * a.adjoint();
  return out;
}

std::vector<Matrix> obu_from_family(const MubFamily& f) {
  std::vector<Matrix> v{Matrix::Identity(f.d, f.d)};
  for (int J = 0; J < f.kappa; ++J)
    for (int j = 1; j < f.d; ++j) v.push_back(f.generator_power(J, j));
  return v;
}

std::vector<Matrix> pauli_obu(int d) {
  std::vector<Matrix> v;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) v.push_back(weyl(d, {j, k}));
  return v;
}

Matrix transfer_matrix(const LinearMap& map, const std::vector<Matrix>& obu) {
  const auto n = static_cast<Eigen::Index>(obu.size());
  std::vector<Matrix> images;
  images.reserve(obu.size());
  for (const auto& v : obu) images.push_back(map(v));
  Matrix t(n, n);
  for (Eigen::Index s = 0; s < n; ++s)
    for (Eigen::Index u = 0; u < n; ++u)
      t(s, u) = (obu[s].conjugate().array() * images[u].array()).sum() / static_cast<double>(map.dim);
  return t;
}

Matrix OneAxisChannel::apply(const Matrix& rho) const {
  check_dim(d, rho);
  Matrix out = b * rho;
  out.diagonal() += a * rho.diagonal();
  out.diagonal().array() += (1.0 - a - b) * rho.trace() / static_cast<double>(d);
  return out;
}

LinearMap OneAxisChannel::as_map() const {
  OneAxisChannel self = *this;
  return {d, [self](const Matrix& r) { return self.apply(r); }};
}

Multipliers OneAxisChannel::multipliers() const {
  Multipliers m(expected_kappa(d), b);
  m[0] = a + b;
  return m;
}

AxisChannel OneAxisChannel::to_axis_channel() const {
  if (is_prime(d)) {
    Multipliers m(d + 1, b);
    m[d] = a + b;
    return AxisChannel::unchecked(d, m);
  }
  return AxisChannel::unchecked(d, {b, a + b, b}, 1.0 - a - b);
}

std::vector<double> OneAxisRegions::cp_slacks(double a, double b) const {
  return {1.0 - a - b, (d - 1) * a - b + 1.0, a + (d + 1) * b + 1.0 / (d - 1)};
}

bool OneAxisRegions::is_cp(double a, double b, double tol) const {
  for (double s : cp_slacks(a, b))
    if (s < -tol) return false;
  return true;
}

double OneAxisRegions::eb_slack(double a, double b) const {
  const double pos = 1.0 - a - (d + 1) * b;
  const double neg = 1.0 - a + (d - 1) * b;
  if (b > 0) return pos;
  if (b < 0) return neg;
  return std::min(pos, neg);
}

bool OneAxisRegions::is_eb(double a, double b, double tol) const {
  return is_cp(a, b, tol) && eb_slack(a, b) >= -tol;
}

bool OneAxisRegions::is_fukuda_multiplicative(double a, double b, double tol) const {
  if (a > 0) return a + b * d >= -tol;
  if (a < 0) return -b - 1.0 / (static_cast<double>(d) * d - 1) <= a + tol && a <= -b * d + tol;
  return false;
}

std::vector<NamedPoint> one_axis_named_points(int d) {
  const double dd = d;
  return {
      {"A", 0.0, 1.0},
      {"B", dd / (dd - 1), -1.0 / (dd - 1)},
      {"E", -1.0 / (dd - 1), 0.0},
      {"Q", 1.0, 0.0},
      {"R", -1.0 / dd, 1.0 / dd},
      {"Y", 0.5, -1.0 / (2 * (dd - 1))},
      {"X", 1.0 / (dd * (dd - 1)), -1.0 / (dd * (dd - 1))},
      {"N", 0.0, 0.0},
      {"P", 0.0, 1.0 / (dd + 1)},
      {"D", 0.0, -1.0 / (dd * dd - 1)},
      {"T", dd / (2 * dd - 1), -1.0 / (2 * dd - 1)},
      {"Z", -dd / (dd * dd - dd + 1), 1.0 / (dd * dd - dd + 1)},
  };
}

LinearMap werner_holevo(int d) {
  if (d < 2) throw Error(Errc::BadDimension, "d must be >= 2");
  return {d, [d](const Matrix& r) {
            check_dim(d, r);
            return Matrix((r.trace() * Matrix::Identity(d, d) - r.transpose()) / static_cast<double>(d - 1));
          }};
}

namespace named {

namespace {

int kappa_for(int d) { return expected_kappa(d); }

void need_prime(int d, const char* what) {
  if (!is_prime(d)) throw Error(Errc::BadDimension, std::string(what) + " needs prime d");
}

void check_axis(int d, int axis) {
  if (axis < 0 || axis >= kappa_for(d)) throw Error(Errc::ParamOutOfRange, "axis index out of range");
}

AxisChannel make(int d, Multipliers m, double noise = 0.0) {
  AxisChannel ch = AxisChannel::unchecked(d, std::move(m), noise);
  const CpReport r = ch.cp_report();
  if (!r.cp) throw Error(Errc::ParamOutOfRange, r.failed);
  return ch;
}

Multipliers one_special(int d, int axis, double special, double rest) {
  check_axis(d, axis);
  Multipliers m(kappa_for(d), rest);
  m[axis] = special;
  return m;
}

}  // namespace

AxisChannel identity(int d) { return make(d, Multipliers(kappa_for(d), 1.0)); }

AxisChannel noise(int d) { return make(d, Multipliers(kappa_for(d), 0.0), is_prime(d) ? 0.0 : 1.0); }

AxisChannel qc(int d, int axis) { return make(d, one_special(d, axis, 1.0, 0.0)); }

AxisChannel phase_damping(int d, int axis, double lambda) {
  need_prime(d, "phase_damping");
  return make(d, one_special(d, axis, 1.0, lambda));
}

AxisChannel extreme_x(int d, int axis) {
  need_prime(d, "extreme_x");
  return make(d, one_special(d, axis, 1.0, -1.0 / (d - 1)));
}

AxisChannel xeb(int d, int axis) {
  need_prime(d, "xeb");
  return make(d, one_special(d, axis, -1.0 / (d - 1), 0.0));
}

AxisChannel yeb(int d, int axis) {
  need_prime(d, "yeb");
  return make(d, one_special(d, axis, (d - 2.0) / (2.0 * (d - 1)), -1.0 / (2.0 * (d - 1))));
}

AxisChannel depolarizing(int d, double lambda) {
  return make(d, Multipliers(kappa_for(d), lambda), is_prime(d) ? 0.0 : 1.0 - lambda);
}

AxisChannel max_squashed(int d, int axis, double lambda) {
  need_prime(d, "max_squashed");
  return make(d, one_special(d, axis, (d * lambda - 1.0) / (d - 1), lambda));
}

AxisChannel depolarize_from_x(int d, int axis, double lambda) {
  need_prime(d, "depolarize_from_x");
  return make(d, one_special(d, axis, lambda, -lambda / (d - 1)));
}

AxisChannel one_axis(int d, double a, double b) {
  need_prime(d, "one_axis");
  return make(d, one_special(d, 0, a + b, b));
}

AxisChannel parse(int d, const std::string& spec) {
  const auto open = spec.find('(');
  const std::string kind = spec.substr(0, open);
  std::vector<double> args;
  if (open != std::string::npos) {
    const auto close = spec.rfind(')');
    if (close == std::string::npos || close < open) throw Error(Errc::BadParams, "unbalanced parentheses in '" + spec + "'");
    std::stringstream ss(spec.substr(open + 1, close - open - 1));
    std::string tok;
    while (std::getline(ss, tok, ','))
      if (!tok.empty()) args.push_back(std::stod(tok));
  }
  auto need = [&](size_t n) {
    if (args.size() != n) throw Error(Errc::BadParams, kind + " expects " + std::to_string(n) + " argument(s)");
  };
  auto axis = [&](size_t i) { return static_cast<int>(args.at(i)); };
  if (kind == "identity") { need(0); return identity(d); }
  if (kind == "noise") { need(0); return noise(d); }
  if (kind == "qc") { need(1); return qc(d, axis(0)); }
  if (kind == "phase_damping") { need(2); return phase_damping(d, axis(0), args[1]); }
  if (kind == "extreme_x") { need(1); return extreme_x(d, axis(0)); }
  if (kind == "xeb") { need(1); return xeb(d, axis(0)); }
  if (kind == "yeb") { need(1); return yeb(d, axis(0)); }
  if (kind == "depolarizing") { need(1); return depolarizing(d, args[0]); }
  if (kind == "max_squashed") { need(2); return max_squashed(d, axis(0), args[1]); }
  if (kind == "depolarize_from_x") { need(2); return depolarize_from_x(d, axis(0), args[1]); }
  if (kind == "one_axis") { need(2); return one_axis(d, args[0], args[1]); }
  throw Error(Errc::BadParams, "unknown channel kind '" + kind + "'");
}

}  // namespace named

}  // namespace mubchan
