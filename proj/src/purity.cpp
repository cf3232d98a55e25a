#include "mubchan/purity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace mubchan {

namespace {

constexpr double kFdStep = 1e-6;
constexpr double kGradTol = 1e-9;
constexpr double kArmijo = 1e-4;

// Objective on output states: p-norm, or negative entropy when p is NaN.
struct Objective {
  double p;
  bool entropy() const { return std::isnan(p); }
  double operator()(const Matrix& out) const {
    if (entropy()) return -entropy_of_spectrum(herm_eigenvalues(out));
    if (p == 2.0) return out.norm();
    if (p == 1.0) return out.trace().real();
    return schatten_p_norm_of_spectrum(herm_eigenvalues(out), p);
  }
  double report(double v) const { return entropy() ? -v : v; }
};

using OutputFn = std::function<Matrix(const Vector&)>;

Vector normalized(const Vector& x) { return x / x.norm(); }

Vector canonical(Vector v) {
  Eigen::Index lead = 0;
  double best = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > best + 1e-12) {
      best = std::abs(v(i));
      lead = i;
    }
  if (best > 0) v *= std::conj(v(lead)) / best;
  return v;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

struct Seed {
  Vector state;
  std::string origin;
};

struct AscentResult {
  Vector state;
  double value;
  bool converged;
};

class Ascent {
 public:
  Ascent(OutputFn out, Objective obj, const OptimizerConfig& cfg) : out_(std::move(out)), obj_(obj), cfg_(cfg) {}

  double eval(const Vector& x) const { return obj_(out_(normalized(x))); }

  Vector gradient(const Vector& x) const {
    const Eigen::Index n = x.size();
    Vector g(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      double parts[2];
      for (int c = 0; c < 2; ++c) {
        Vector up = x, dn = x;
        const cd e = c == 0 ? cd(kFdStep, 0) : cd(0, kFdStep);
        up(k) += e;
        dn(k) -= e;
        parts[c] = (eval(up) - eval(dn)) / (2 * kFdStep);
      }
      g(k) = cd(parts[0], parts[1]);
    }
    // remove the norm and global-phase directions
    g -= x * (x.adjoint() * g)(0).real();
    const Vector ix = cd(0, 1) * x;
    g -= ix * (ix.adjoint() * g)(0).real();
    return g;
  }

  AscentResult run(const Vector& start) const {
    Vector x = normalized(start);
    double f = eval(x);
    double alpha = 1.0;
    int flat = 0;
    for (int it = 0; it < cfg_.max_iters; ++it) {
      const Vector g = gradient(x);
      const double gn = g.norm();
      if (gn < kGradTol) return {x, f, true};
      bool accepted = false;
      Vector y;
      double fy = f;
      for (int halvings = 0; halvings < 60; ++halvings) {
        y = normalized(x + alpha * g);
        fy = eval(y);
        if (fy >= f + kArmijo * alpha * gn * gn) {
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted) return {x, f, true};
      const double step = alpha * gn;
      const double gain = fy - f;
      x = y;
      f = fy;
      alpha = std::min(alpha * 2.0, 1e3);
      if (step < cfg_.step_tol) return {x, f, true};
      flat = gain < cfg_.value_tol ? flat + 1 : 0;
      if (flat >= 5) return {x, f, true};
    }
    return {x, f, false};
  }

 private:
  OutputFn out_;
  Objective obj_;
  OptimizerConfig cfg_;
};

PurityReport optimize(const OutputFn& out, int n, Objective obj, std::vector<Seed> seeds, const OptimizerConfig& cfg) {
  if (cfg.restarts < 1) throw Error(Errc::BadParams, "restarts must be >= 1");
  std::mt19937_64 rng(cfg.rng_seed);
  std::normal_distribution<double> gauss;
  for (int r = 0; r < cfg.restarts; ++r) {
    Vector v(n);
    for (int k = 0; k < n; ++k) v(k) = cd(gauss(rng), gauss(rng));
    seeds.push_back({v, "random"});
  }

  const Ascent ascent(out, obj, cfg);
  PurityReport rep;
  rep.p = obj.p;
  rep.method = "optimizer";
  rep.restarts_used = cfg.restarts;
  rep.seed = cfg.rng_seed;
  double best_axis = -kInf;
  double best = -kInf;
  for (const auto& s : seeds) {
    if (s.origin == "axis" || s.origin == "product") best_axis = std::max(best_axis, ascent.eval(s.state));
    const AscentResult r = ascent.run(s.state);
    const Vector st = canonical(r.state);
    const bool better = r.value > best + 1e-13 || (std::abs(r.value - best) <= 1e-13 && lex_less(st, rep.argmax_state));
    if (better) {
      best = std::max(best, r.value);
      rep.argmax_state = st;
      rep.converged = r.converged;
      rep.best_origin = s.origin;
    }
  }
  rep.value = obj.report(best);
  rep.best_axis_value = obj.report(best_axis);
  return rep;
}

std::vector<Seed> single_seeds(const ChannelView& ch) {
  std::vector<Seed> seeds;
  for (const auto& s : ch.axis_states) seeds.push_back({s, "axis"});
  return seeds;
}

std::vector<Seed> pair_seeds(const ChannelView& a, const ChannelView& b) {
  std::vector<Seed> seeds;
  for (const auto& u : a.axis_states)
    for (const auto& v : b.axis_states) seeds.push_back({kron(u, v), "product"});
  if (a.dim == b.dim && is_prime(a.dim)) {
    const auto f = shared_mub_family(a.dim);
    for (int J = 0; J < f->kappa; ++J)
      for (int K = 0; K < f->kappa; ++K) seeds.push_back({axis_paired_state(*f, J, K), "entangled"});
  }
  return seeds;
}

void check_p(double p) {
  if (!(p >= 1.0)) throw Error(Errc::BadP, "p must be >= 1 or inf");
}

std::vector<Vector> family_states(int d) {
  std::vector<Vector> out;
  const auto f = shared_mub_family(d);
  for (int J = 0; J < f->kappa; ++J)
    for (int n = 0; n < d; ++n) out.push_back(f->state(J, n));
  return out;
}

double entropy_bits(double x) { return x > 0 ? -x * std::log2(x) : 0.0; }

}  // namespace

ChannelView ChannelView::of(const AxisChannel& ch) {
  ChannelView v{ch.d(), superoperator(ch.as_map()), {}};
  const MubFamily& f = ch.family();
  for (int J = 0; J < f.kappa; ++J)
    for (int n = 0; n < f.d; ++n) v.axis_states.push_back(f.state(J, n));
  return v;
}

ChannelView ChannelView::of(const DiagonalChannel& ch) {
  return {ch.d(), superoperator(ch.as_map()), family_states(ch.d())};
}

ChannelView ChannelView::of(const OneAxisChannel& ch) {
  return {ch.d, superoperator(ch.as_map()), family_states(ch.d)};
}

ChannelView ChannelView::of(const LinearMap& map) {
  return {map.dim, superoperator(map), family_states(map.dim)};
}

Matrix ChannelView::apply(const Matrix& rho) const {
  Matrix rm = rho.transpose();  // column-major storage of the transpose is row-major vec
  const Eigen::Map<const Vector> v(rm.data(), dim * dim);
  const Vector out = superop * v;
  return Eigen::Map<const Matrix>(out.data(), dim, dim).transpose();
}

Matrix output_state(const ChannelView& view, const Vector& psi) { return view.apply(psi * psi.adjoint()); }

Matrix output_state(const ChannelView& a, const ChannelView& b, const Vector& psi) {
  const int d1 = a.dim, d2 = b.dim;
  Matrix r(d1 * d1, d2 * d2);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int j1 = 0; j1 < d1; ++j1)
      for (int i2 = 0; i2 < d2; ++i2)
        for (int j2 = 0; j2 < d2; ++j2)
          r(i1 * d1 + j1, i2 * d2 + j2) = psi(i1 * d2 + i2) * std::conj(psi(j1 * d2 + j2));
  const Matrix rp = a.superop * r * b.superop.transpose();
  Matrix out(d1 * d2, d1 * d2);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int j1 = 0; j1 < d1; ++j1)
      for (int i2 = 0; i2 < d2; ++i2)
        for (int j2 = 0; j2 < d2; ++j2) out(i1 * d2 + i2, j1 * d2 + j2) = rp(i1 * d1 + j1, i2 * d2 + j2);
  return out;
}

RealVector axis_output_spectrum(const AxisChannel& ch, int axis) {
  const int d = ch.d();
  const double l = ch.lambda().at(axis);
  RealVector e = RealVector::Constant(d, (1.0 - l) / d);
  e(0) = (1.0 + (d - 1) * l) / d;
  std::sort(e.data(), e.data() + d, std::greater<>());
  return e;
}

Nu2Exact nu2_exact(const AxisChannel& ch) {
  const auto& lam = ch.lambda();
  int arg = 0;
  for (int L = 1; L < ch.kappa(); ++L)
    if (std::abs(lam[L]) > std::abs(lam[arg])) arg = L;
  const int d = ch.d();
  return {std::sqrt((1.0 + (d - 1) * lam[arg] * lam[arg]) / d), arg};
}

double nu_inf_axis(const AxisChannel& ch) { return nu_p_axis(ch, kInf); }

double nu_p_axis(const AxisChannel& ch, double p) {
  check_p(p);
  double best = 0.0;
  for (int L = 0; L < ch.kappa(); ++L) best = std::max(best, schatten_p_norm_of_spectrum(axis_output_spectrum(ch, L), p));
  return best;
}

FhnBound fhn_bound(const DiagonalChannel& ch) {
  const int d = ch.d();
  const double sup = ch.phi().cwiseAbs().maxCoeff();
  FhnBound r{std::sqrt((1.0 + (d - 1) * sup * sup) / d), false, 0.0};
  const LinearMap m = ch.as_map();
  for (const auto& s : family_states(d)) r.best_axis_value = std::max(r.best_axis_value, m(s * s.adjoint()).norm());
  r.attained = std::abs(r.best_axis_value - r.bound) <= 1e-10;
  return r;
}

FhnBound fhn_bound(const LinearMap& map, const MubFamily& family) {
  if (!family.complete()) throw Error(Errc::IncompleteFamily, "nu_2 bound needs d+1 bases");
  const Matrix t = transfer_matrix(map, obu_from_family(family));
  const Matrix off = t - Matrix(t.diagonal().asDiagonal());
  if (max_abs(off) > 1e-10) throw Error(Errc::NotDiagonal, "transfer matrix has off-diagonal entries");
  const int d = family.d;
  double sup = 0.0;
  for (Eigen::Index s = 1; s < t.rows(); ++s) sup = std::max(sup, std::abs(t(s, s)));
  FhnBound r{std::sqrt((1.0 + (d - 1) * sup * sup) / d), false, 0.0};
  for (int J = 0; J < family.kappa; ++J)
    for (int n = 0; n < d; ++n) {
      const Vector s = family.state(J, n);
      r.best_axis_value = std::max(r.best_axis_value, map(s * s.adjoint()).norm());
    }
  r.attained = std::abs(r.best_axis_value - r.bound) <= 1e-10;
  return r;
}

PurityReport optimize_nu_p(const ChannelView& ch, double p, const OptimizerConfig& cfg) {
  check_p(p);
  return optimize([&](const Vector& x) { return output_state(ch, x); }, ch.dim, Objective{p}, single_seeds(ch), cfg);
}

PurityReport optimize_nu_p(const ChannelView& a, const ChannelView& b, double p, const OptimizerConfig& cfg) {
  check_p(p);
  if (a.dim * b.dim > 121) throw Error(Errc::BadDimension, "tensor dimension above 121");
  return optimize([&](const Vector& x) { return output_state(a, b, x); }, a.dim * b.dim, Objective{p},
                  pair_seeds(a, b), cfg);
}

PurityReport optimize_smin(const ChannelView& ch, const OptimizerConfig& cfg) {
  return optimize([&](const Vector& x) { return output_state(ch, x); }, ch.dim,
                  Objective{std::numeric_limits<double>::quiet_NaN()}, single_seeds(ch), cfg);
}

PurityReport optimize_smin(const ChannelView& a, const ChannelView& b, const OptimizerConfig& cfg) {
  if (a.dim * b.dim > 121) throw Error(Errc::BadDimension, "tensor dimension above 121");
  return optimize([&](const Vector& x) { return output_state(a, b, x); }, a.dim * b.dim,
                  Objective{std::numeric_limits<double>::quiet_NaN()}, pair_seeds(a, b), cfg);
}

namespace {

CriticalPointReport critical(const OutputFn& out, const Vector& base, double p, int directions, std::uint64_t seed) {
  check_p(p);
  constexpr double h = 1e-4;
  const Vector psi = normalized(base);
  const Objective norm{p};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  CriticalPointReport r;
  for (int k = 0; k < directions; ++k) {
    Vector delta(psi.size());
    for (Eigen::Index i = 0; i < delta.size(); ++i) delta(i) = cd(gauss(rng), gauss(rng));
    delta -= psi * (psi.adjoint() * delta)(0);
    delta.normalize();
    const Matrix up = out(std::cos(h) * psi + std::sin(h) * delta);
    const Matrix dn = out(std::cos(h) * psi - std::sin(h) * delta);
    r.max_norm_derivative = std::max(r.max_norm_derivative, std::abs(norm(up) - norm(dn)) / (2 * h));
    const double su = entropy_of_spectrum(herm_eigenvalues(up));
    const double sd = entropy_of_spectrum(herm_eigenvalues(dn));
    r.max_entropy_derivative = std::max(r.max_entropy_derivative, std::abs(su - sd) / (2 * h));
  }
  return r;
}

}  // namespace

CriticalPointReport critical_point_check(const ChannelView& ch, const Vector& base, double p, int directions,
                                         std::uint64_t seed) {
  if (base.size() != ch.dim) throw Error(Errc::DimensionMismatch, "base state dimension");
  return critical([&](const Vector& x) { return output_state(ch, x); }, base, p, directions, seed);
}

CriticalPointReport critical_point_check(const ChannelView& a, const ChannelView& b, const Vector& base, double p,
                                         int directions, std::uint64_t seed) {
  if (base.size() != a.dim * b.dim) throw Error(Errc::DimensionMismatch, "base state dimension");
  return critical([&](const Vector& x) { return output_state(a, b, x); }, base, p, directions, seed);
}

Vector axis_paired_state(const MubFamily& f, int axis_j, int axis_k) {
  Vector v = Vector::Zero(f.d * f.d);
  for (int n = 0; n < f.d; ++n) v += kron(f.state(axis_j, n), f.state(axis_k, n));
  return v / std::sqrt(static_cast<double>(f.d));
}

Mult2Report mult2_check(const AxisChannel& phi, const ChannelView& omega, const OptimizerConfig& cfg) {
  const ChannelView pv = ChannelView::of(phi);
  const PurityReport pair = optimize_nu_p(pv, omega, 2.0, cfg);
  const double rhs = nu2_exact(phi).value * optimize_nu_p(omega, 2.0, cfg).value;
  return {pair.value, rhs, pair.value - rhs, pair.best_axis_value};
}

Multipliers crossing_multipliers(double l) { return {l, 0.5 - l, -0.5, -0.5}; }

double crossing_root(double tol) {
  auto f = [](double l) {
    const double top = (1.0 + 2.0 * l) / 3.0, rest = (1.0 - l) / 3.0;
    return entropy_bits(top) + 2.0 * entropy_bits(rest) - 1.0;
  };
  double lo = 0.5, hi = 1.0;  // f(lo) > 0 > f(hi)
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double entangled_output_entropy(const AxisChannel& ch, int axis_j, int axis_k) {
  const ChannelView v = ChannelView::of(ch);
  const Vector psi = axis_paired_state(ch.family(), axis_j, axis_k);
  return entropy_of_spectrum(herm_eigenvalues(output_state(v, v, psi)));
}

std::vector<CrossingRow> crossing_experiment(const std::vector<double>& grid, const std::vector<double>& p_list,
                                             const OptimizerConfig& cfg) {
  for (double p : p_list) check_p(p);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<CrossingRow> rows;
  for (double l : grid) {
    CrossingRow row{l, false, nan, nan, nan, std::vector<double>(p_list.size(), nan), nan, nan};
    const AxisChannel ch = AxisChannel::unchecked(3, crossing_multipliers(l));
    row.cp = ch.is_cp();
    if (row.cp) {
      row.s_axis_plus = entropy_of_spectrum(axis_output_spectrum(ch, 0));
      row.s_axis_minus = entropy_of_spectrum(axis_output_spectrum(ch, 2));
      const ChannelView v = ChannelView::of(ch);
      row.s_min = optimize_smin(v, cfg).value;
      for (size_t i = 0; i < p_list.size(); ++i) row.nu_p[i] = optimize_nu_p(v, p_list[i], cfg).value;
      row.s_entangled = entangled_output_entropy(ch, 2, 3);
      row.s_entangled_first = entangled_output_entropy(ch, 0, 2);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace mubchan
