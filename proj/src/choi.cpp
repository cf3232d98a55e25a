#include "mubchan/choi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mubchan {

namespace {

void need_prime(int d, const char* what) {
  if (!is_prime(d)) throw Error(Errc::BadDimension, std::string(what) + " needs prime d");
}

}  // namespace

ChoiMatrix choi(const LinearMap& map) {
  const int d = map.dim;
  Matrix g = Matrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      Matrix e = Matrix::Zero(d, d);
      e(j, k) = 1.0;
      g.block(j * d, k * d, d, d) = map(e);
    }
  return {d, g / static_cast<double>(d)};
}

ChoiMatrix choi_from_kraus(const KrausSet& k) {
  if (k.operators.empty()) throw Error(Errc::BadParams, "empty Kraus set");
  const auto d = static_cast<int>(k.operators.front().rows());
  Matrix g = Matrix::Zero(d * d, d * d);
  for (const auto& a : k.operators) {
    // column-major storage stacks columns: entry k*d + i holds A(i, k)
    const Matrix col = a;
    const Eigen::Map<const Vector> x(col.data(), d * d);
    g += x * x.adjoint();
  }
  return {d, g / static_cast<double>(d)};
}

ChoiMatrix choi_closed_form(const AxisChannel& ch) {
  const int d = ch.d();
  need_prime(d, "closed-form Choi");
  const Multipliers& lam = ch.lambda();
  const double lz = lam[d];
  const double dd = static_cast<double>(d) * d;
  Matrix g = Matrix::Zero(d * d, d * d);
  for (int j = 0; j < d; ++j)
    for (int n = 0; n < d; ++n) g(j * d + n, j * d + n) = (n == j ? 1.0 + (d - 1) * lz : 1.0 - lz) / dd;
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      if (j == k) continue;
      for (int m = 0; m < d; ++m) {
        cd acc = 0.0;
        // lam[J-1] multiplies X Z^J
        for (int J = 1; J <= d; ++J)
          acc += root_of_unity(d, static_cast<long long>(m) * J * (j - k)) * lam[J - 1];
        g(j * d + (j + m) % d, k * d + (k + m) % d) = acc / dd;
      }
    }
  return {d, g};
}

ChoiMatrix choi_one_axis(int d, double a, double b) {
  const int n = d * d;
  Matrix g = (1.0 - a - b) * Matrix::Identity(n, n);
  for (int j = 0; j < d; ++j) {
    g(j * d + j, j * d + j) += a * d;
    for (int k = 0; k < d; ++k) g(j * d + j, k * d + k) += b * d;  // b d^2 |beta><beta|
  }
  return {d, g / static_cast<double>(n)};
}

PptResult ppt(const ChoiMatrix& c, double tol) {
  const Matrix pt = partial_transpose(c.matrix, c.d, c.d, 1);
  const double mn = herm_eigenvalues(pt).minCoeff();
  return {mn >= -tol, mn};
}

Ppt3Result ppt3_closed(const Multipliers& lambda, double tol) {
  if (lambda.size() != 4) throw Error(Errc::WrongDimension, "closed-form PPT test is for d = 3 (4 multipliers)");
  const double s = std::accumulate(lambda.begin(), lambda.end(), 0.0);
  double sq = 0.0;
  for (double x : lambda) sq += x * x;
  Ppt3Result r;
  r.slack_sum = 1.0 - s;
  r.slack_quadratic = 1.0 + s + s * s - 3.0 * sq;
  r.is_ppt = r.slack_sum >= -tol && r.slack_quadratic >= -tol;
  return r;
}

CcnResult ccn(const AxisChannel& ch, double tol) {
  if (!ch.family().complete()) return ccn(ch.as_map());
  CcnResult r;
  for (double x : ch.lambda()) r.t_value += std::abs(x);
  r.trace_norm = 1.0 + (ch.d() - 1) * r.t_value;
  r.is_ccn = r.t_value <= 1.0 + tol;
  return r;
}

CcnResult ccn(const LinearMap& map, double tol) {
  const int d = map.dim;
  const RealVector sv = singular_values(transfer_matrix(map, pauli_obu(d)));
  CcnResult r;
  r.trace_norm = sv.sum();
  r.t_value = (r.trace_norm - 1.0) / (d - 1);
  r.is_ccn = r.trace_norm <= d + tol;
  return r;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::EB: return "EB";
    case Verdict::NotEB: return "NotEB";
    case Verdict::BoundEntangled: return "BoundEntangled";
    case Verdict::UnknownPPT: return "UnknownPPT";
  }
  return "?";
}

EbClassification eb_classify(const AxisChannel& ch, bool numeric_ppt) {
  const CpReport cp = ch.cp_report();
  if (!cp.cp) throw Error(Errc::NotCP, cp.failed);
  constexpr double tol = 1e-12;
  const int d = ch.d();
  const Multipliers& lam = ch.lambda();

  EbClassification out;
  out.cp = true;
  const CcnResult c = ccn(ch);
  out.ccn_t = c.t_value;
  if (numeric_ppt || d != 3) {
    const PptResult numeric = ppt(choi(ch));
    out.ppt_min_eig = numeric.min_eigenvalue;
    out.ppt = numeric.is_ppt;
  } else {
    out.ppt_min_eig = std::numeric_limits<double>::quiet_NaN();
  }
  if (d == 3) out.ppt = ppt3_closed(lam).is_ppt;

  auto done = [&](Verdict v, std::string why) {
    out.verdict = v;
    out.evidence = std::move(why);
    return out;
  };

  if (!ch.family().complete()) {
    if (!out.ppt) return done(Verdict::NotEB, "partial transpose of the Choi matrix is not positive");
    if (!c.is_ccn) return done(Verdict::BoundEntangled, "PPT but cross-norm bound violated");
    return done(Verdict::UnknownPPT, "PPT and cross-norm bound hold; separability undecided");
  }

  const bool all_nonpos = std::all_of(lam.begin(), lam.end(), [](double x) { return x <= tol; });
  const bool all_nonneg = std::all_of(lam.begin(), lam.end(), [](double x) { return x >= -tol; });
  const double total = std::accumulate(lam.begin(), lam.end(), 0.0);

  if (all_nonpos) return done(Verdict::EB, "all multipliers <= 0");
  if (all_nonneg) {
    if (total <= 1.0 + tol) return done(Verdict::EB, "all multipliers >= 0 and sum <= 1");
    return done(Verdict::NotEB, "all multipliers >= 0 and sum > 1");
  }

  for (double v : lam) {
    const auto equal = std::count_if(lam.begin(), lam.end(), [&](double x) { return std::abs(x - v) <= tol; });
    if (equal >= d) {
      if (c.is_ccn) return done(Verdict::EB, "one symmetry axis and sum|lambda| <= 1");
      return done(Verdict::NotEB, "one symmetry axis and sum|lambda| > 1");
    }
  }

  if (!c.is_ccn && out.ppt) return done(Verdict::BoundEntangled, "PPT but sum|lambda| > 1");
  if (!c.is_ccn) return done(Verdict::NotEB, "sum|lambda| > 1");
  if (!out.ppt) return done(Verdict::NotEB, "partial transpose of the Choi matrix is not positive");

  double hull = 0.0;
  for (double x : lam) hull += x > 0 ? x : (d - 1) * -x;
  if (hull <= 1.0 + tol) return done(Verdict::EB, "inside the convex hull of QC, XEB and noise channels");
  return done(Verdict::UnknownPPT, "PPT and sum|lambda| <= 1 with mixed signs; separability undecided");
}

Matrix SeparableDecomposition::assemble() const {
  if (terms.empty()) return Matrix();
  const Eigen::Index n = terms.front().u.size() * terms.front().v.size();
  Matrix g = Matrix::Zero(n, n);
  for (const auto& t : terms) {
    const Matrix x = kron(t.u, t.v);
    g += t.weight * x * x.adjoint();
  }
  return g;
}

double SeparableDecomposition::total_weight() const {
  double w = 0.0;
  for (const auto& t : terms) w += t.weight;
  return w;
}

SeparableDecomposition separable_decomp_R(int d, int m) {
  if (d < 2 || m < 3) throw Error(Errc::BadParams, "need d >= 2 and m >= 3");
  long long count = 1;
  for (int i = 1; i < d; ++i) count *= m;
  SeparableDecomposition out;
  out.terms.reserve(static_cast<size_t>(count));
  const double w = 1.0 / static_cast<double>(count);
  std::vector<int> digits(d - 1, 0);
  for (long long idx = 0; idx < count; ++idx) {
    Vector phi(d);
    phi(0) = 1.0;
    for (int j = 1; j < d; ++j) phi(j) = root_of_unity(m, digits[j - 1]);
    phi /= std::sqrt(static_cast<double>(d));
    out.terms.push_back({w, phi, phi.conjugate()});
    for (int j = 0; j < d - 1 && ++digits[j] == m; ++j) digits[j] = 0;
  }
  return out;
}

SeparableDecomposition separable_decomp_Y(int d) {
  if (d < 2) throw Error(Errc::BadParams, "need d >= 2");
  const double w = 1.0 / (2.0 * d * (d - 1));
  const double r = 1.0 / std::sqrt(2.0);
  const cd i(0.0, 1.0);
  SeparableDecomposition out;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      const Vector ej = basis_vector(d, j), ek = basis_vector(d, k);
      const Vector plus = r * (ej + ek), minus = r * (ej - ek);
      const Vector c = r * (ej + i * ek);
      out.terms.push_back({w, plus, minus});
      out.terms.push_back({w, minus, plus});
      out.terms.push_back({w, c, c});
      out.terms.push_back({w, c.conjugate(), c.conjugate()});
    }
  return out;
}

AxisChannel face_channel(int d, const std::vector<double>& weights, int excluded_axis) {
  need_prime(d, "face channel");
  const int k = excluded_axis < 0 ? d : excluded_axis;
  if (k > d) throw Error(Errc::BadParams, "axis out of range");
  if (static_cast<int>(weights.size()) != d) throw Error(Errc::BadWeights, "need d weights");
  double total = 0.0;
  for (double a : weights) {
    if (a < -1e-12) throw Error(Errc::BadWeights, "negative weight");
    total += a;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::BadWeights, "weights must sum to 1");
  Multipliers lam(d + 1, -1.0 / (d - 1));
  for (int L = 0, w = 0; L <= d; ++L) {
    if (L == k) continue;
    lam[L] = weights[w] - (1.0 - weights[w]) / (d - 1);
    ++w;
  }
  return AxisChannel::checked(d, lam);
}

PptResult face_extremality_probe(int d, const std::vector<double>& weights, int excluded_axis) {
  return ppt(choi(face_channel(d, weights, excluded_axis)));
}

}  // namespace mubchan
