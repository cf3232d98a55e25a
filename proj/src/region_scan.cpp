#include "mubchan/region_scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

namespace mubchan {

namespace {

constexpr double kBand = 1e-8;

void check_resolution(int resolution) {
  if (resolution < 2) throw Error(Errc::BadParams, "resolution must be >= 2");
}

double min_slack(const CpReport& r) { return std::min(r.lower_slack, r.upper_slack); }

double sum_abs(const Multipliers& l) {
  double t = 0.0;
  for (double x : l) t += std::abs(x);
  return t;
}

std::vector<size_t> audit_sample(size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<size_t> out;
  for (size_t i = 0; i < n; ++i)
    if (u(rng) < 0.01) out.push_back(i);
  if (out.empty() && n > 0) out.push_back(std::uniform_int_distribution<size_t>(0, n - 1)(rng));
  return out;
}

bool as_bool(const Cell& c) { return std::get<bool>(c); }
double as_double(const Cell& c) { return std::get<double>(c); }

// Numeric recomputation of cp / ppt / ccn for an axis channel row.
struct NumericFlags {
  bool cp;
  bool ppt;
  bool ccn;
  double choi_min;
  double pt_min;
  double trace_norm;
};

NumericFlags numeric_flags(const AxisChannel& ch) {
  const ChoiMatrix c = choi(ch);
  const double cmin = herm_eigenvalues(c.matrix).minCoeff();
  const PptResult p = ppt(c);
  const CcnResult n = ccn(ch.as_map());
  return {cmin >= -1e-9, p.is_ppt, n.is_ccn, cmin, p.min_eigenvalue, n.trace_norm};
}

void audit_flag(AuditReport& a, size_t row, const char* what, bool stored, bool recomputed, double slack) {
  if (stored == recomputed || std::abs(slack) < kBand) return;
  ++a.mismatches;
  a.details.push_back("row " + std::to_string(row) + ": " + what + " stored " + (stored ? "true" : "false"));
}

nlohmann::json line(const std::string& name, double a, double b, double c, const std::string& note) {
  return {{"name", name}, {"equation", "a*x + b*y = c"}, {"a", a}, {"b", b}, {"c", c}, {"note", note}};
}

}  // namespace

int ScanResult::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw Error(Errc::BadParams, "no column " + name);
  return static_cast<int>(it - columns.begin());
}

double xxyy_triangle_margin(double x, double y) {
  const double r3 = std::sqrt(3.0);
  const double m = r3 - 2.0, c = (r3 - 1.0) / 2.0;
  const double cp = (1.0 - 2.0 * x - y) / std::sqrt(5.0);
  const double ccn = (x + y - 0.5) / std::sqrt(2.0);
  const double ppt = (c + m * x - y) / std::sqrt(1.0 + m * m);
  return std::min({cp, ccn, ppt});
}

ScanResult scan_xxyy(int resolution, std::uint64_t audit_seed) {
  check_resolution(resolution);
  ScanResult s;
  s.columns = {"x", "y", "cp", "ppt", "ccn", "verdict", "slack1", "slack2", "slack3"};
  for (int i = 0; i <= resolution; ++i)
    for (int j = 0; j <= resolution; ++j) {
      const double x = static_cast<double>(i) / resolution, y = static_cast<double>(j) / resolution;
      const Multipliers lam{x, x, -y, -y};
      const AxisChannel ch = AxisChannel::unchecked(3, lam);
      const CpReport cp = ch.cp_report();
      const Ppt3Result p = ppt3_closed(lam);
      const double t = sum_abs(lam);
      const std::string verdict = cp.cp ? to_string(eb_classify(ch, false).verdict) : "NotCP";
      s.rows.push_back({x, y, cp.cp, p.is_ppt, t <= 1.0 + 1e-12, verdict, min_slack(cp),
                        std::min(p.slack_sum, p.slack_quadratic), 1.0 - t});
    }
  const double r3 = std::sqrt(3.0);
  s.metadata = {
      {"family", "xxyy"},
      {"d", 3},
      {"resolution", resolution},
      {"step", 1.0 / resolution},
      {"multipliers", "[x, x, -y, -y]"},
      {"slacks", {{"slack1", "complete positivity"}, {"slack2", "positive partial transpose"}, {"slack3", "1 - sum|lambda|"}}},
      {"boundary_lines",
       {line("cp", 2, 1, 1, "complete positivity edge"), line("ccn", 1, 1, 0.5, "cross-norm edge"),
        line("ppt", 2 - r3, 1, (r3 - 1) / 2, "partial transpose edge")}},
  };
  for (size_t r : audit_sample(s.rows.size(), audit_seed)) {
    const Row& row = s.rows[r];
    const double x = as_double(row[0]), y = as_double(row[1]);
    const AxisChannel ch = AxisChannel::unchecked(3, {x, x, -y, -y});
    const NumericFlags n = numeric_flags(ch);
    ++s.audit.checked;
    audit_flag(s.audit, r, "cp", as_bool(row[2]), n.cp, as_double(row[6]));
    if (as_bool(row[2])) audit_flag(s.audit, r, "ppt", as_bool(row[3]), n.ppt, as_double(row[7]));
    audit_flag(s.audit, r, "ccn", as_bool(row[4]), n.ccn, as_double(row[8]));
  }
  s.metadata["audit"] = {{"checked", s.audit.checked}, {"mismatches", s.audit.mismatches}};
  return s;
}

ScanResult scan_one_axis(int d, int resolution, std::uint64_t audit_seed) {
  check_resolution(resolution);
  if (d < 2) throw Error(Errc::BadDimension, "d must be >= 2");
  const OneAxisRegions reg{d};
  const double a0 = -1.0 / (d - 1), a1 = static_cast<double>(d) / (d - 1);
  const double b0 = -1.0 / (d - 1), b1 = 1.0;
  ScanResult s;
  s.columns = {"a", "b", "cp", "ppt", "ccn", "eb", "fukuda_mult", "verdict", "slack_cp", "slack_eb", "ccn_T"};
  for (int i = 0; i <= resolution; ++i)
    for (int j = 0; j <= resolution; ++j) {
      const double a = a0 + (a1 - a0) * i / resolution, b = b0 + (b1 - b0) * j / resolution;
      const auto cps = reg.cp_slacks(a, b);
      const double slack_cp = *std::min_element(cps.begin(), cps.end());
      const bool cp = reg.is_cp(a, b);
      const double slack_eb = reg.eb_slack(a, b);
      const double t = std::abs(a + b) + d * std::abs(b);
      const bool eb = reg.is_eb(a, b);
      const std::string verdict = !cp ? "NotCP" : (eb ? "EB" : "NotEB");
      s.rows.push_back({a, b, cp, slack_eb >= -1e-12, t <= 1.0 + 1e-12, eb, reg.is_fukuda_multiplicative(a, b),
                        verdict, slack_cp, slack_eb, t});
    }
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : one_axis_named_points(d)) {
    const auto cps = reg.cp_slacks(p.a, p.b);
    const double cp_margin = *std::min_element(cps.begin(), cps.end());
    points.push_back({{"label", p.name},
                      {"a", p.a},
                      {"b", p.b},
                      {"cp", reg.is_cp(p.a, p.b, 1e-12)},
                      {"eb", reg.is_eb(p.a, p.b, 1e-12)},
                      {"fukuda_mult", reg.is_fukuda_multiplicative(p.a, p.b)},
                      {"slack_cp", cp_margin},
                      {"slack_eb", reg.eb_slack(p.a, p.b)}});
  }
  s.metadata = {
      {"family", "one_axis"},
      {"d", d},
      {"resolution", resolution},
      {"step_a", (a1 - a0) / resolution},
      {"step_b", (b1 - b0) / resolution},
      {"map", "b*I + a*QC + (1-a-b)*N"},
      {"named_points", points},
      {"boundary_lines",
       {line("cp_AB", 1, 1, 1, "a + b <= 1"), line("cp_AE", static_cast<double>(d - 1), -1, -1, "(d-1)a - b >= -1"),
        line("cp_BE", 1, static_cast<double>(d + 1), -1.0 / (d - 1), "a + (d+1)b >= -1/(d-1)"),
        line("eb_pos", 1, static_cast<double>(d + 1), 1, "a + (d+1)b <= 1 for b > 0"),
        line("eb_neg", 1, -static_cast<double>(d - 1), 1, "a - (d-1)b <= 1 for b < 0")}},
  };
  for (size_t r : audit_sample(s.rows.size(), audit_seed)) {
    const Row& row = s.rows[r];
    const double a = as_double(row[0]), b = as_double(row[1]);
    const ChoiMatrix c = choi_one_axis(d, a, b);
    const double cmin = herm_eigenvalues(c.matrix).minCoeff();
    const PptResult p = ppt(c);
    ++s.audit.checked;
    audit_flag(s.audit, r, "cp", as_bool(row[2]), cmin >= -1e-9, as_double(row[8]));
    if (as_bool(row[2])) audit_flag(s.audit, r, "eb", as_bool(row[5]), p.is_ppt, as_double(row[9]));
  }
  s.metadata["audit"] = {{"checked", s.audit.checked}, {"mismatches", s.audit.mismatches}};
  return s;
}

ScanResult scan_base_tetrahedron(int resolution, std::uint64_t audit_seed) {
  check_resolution(resolution);
  ScanResult s;
  s.columns = {"w1", "w2", "w3", "w4", "l1", "l2", "l3", "l4", "ppt", "ccn", "verdict", "ppt_slack", "ccn_T", "xeb", "yeb"};
  const int n = resolution;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      for (int k = 0; i + j + k <= n; ++k) {
        const int l = n - i - j - k;
        const double w[4] = {double(i) / n, double(j) / n, double(k) / n, double(l) / n};
        Multipliers lam(4);
        double sq = 0.0;
        for (int q = 0; q < 4; ++q) {
          lam[q] = (3.0 * w[q] - 1.0) / 2.0;
          sq += lam[q] * lam[q];
        }
        const double t = sum_abs(lam);
        const AxisChannel ch = AxisChannel::unchecked(3, lam);
        auto count_near = [&](double v) {
          return std::count_if(lam.begin(), lam.end(), [&](double x) { return std::abs(x - v) < 1e-12; });
        };
        const bool xeb = count_near(-0.5) == 1 && count_near(0.0) == 3;
        const bool yeb = count_near(0.25) == 1 && count_near(-0.25) == 3;
        const std::string verdict = ch.is_cp() ? to_string(eb_classify(ch, false).verdict) : "NotCP";
        s.rows.push_back({w[0], w[1], w[2], w[3], lam[0], lam[1], lam[2], lam[3], sq <= 0.25 + 1e-12, t <= 1.0 + 1e-12,
                          verdict, 0.25 - sq, t, xeb, yeb});
      }
  s.metadata = {
      {"family", "base_tetrahedron"},
      {"d", 3},
      {"resolution", resolution},
      {"multipliers", "lambda_L = (3 w_L - 1) / 2, sum lambda = -1/2"},
      {"ppt_sphere", {{"center", {-0.125, -0.125, -0.125, -0.125}}, {"condition", "sum lambda^2 <= 1/4"}}},
  };
  for (size_t r : audit_sample(s.rows.size(), audit_seed)) {
    const Row& row = s.rows[r];
    Multipliers lam(4);
    for (int q = 0; q < 4; ++q) lam[q] = as_double(row[4 + q]);
    const NumericFlags nf = numeric_flags(AxisChannel::unchecked(3, lam));
    ++s.audit.checked;
    // the PPT slack scale differs from the eigenvalue; use the closed-form slack as the band
    audit_flag(s.audit, r, "ppt", as_bool(row[8]), nf.ppt, as_double(row[11]));
    audit_flag(s.audit, r, "ccn", as_bool(row[9]), nf.ccn, 1.0 - as_double(row[12]));
  }
  s.metadata["audit"] = {{"checked", s.audit.checked}, {"mismatches", s.audit.mismatches}};
  return s;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
  return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_number(*d);
  }
  if (const auto* b = std::get_if<bool>(&c)) return *b;
  return std::get<std::string>(c);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::BadParams, "cannot open " + path + " for writing");
  return f;
}

}  // namespace

nlohmann::json to_json(const ScanResult& scan) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : scan.rows) {
    nlohmann::json o = nlohmann::json::object();
    for (size_t i = 0; i < r.size(); ++i) o[scan.columns[i]] = cell_json(r[i]);
    rows.push_back(std::move(o));
  }
  return {{"columns", scan.columns}, {"rows", rows}, {"metadata", scan.metadata}};
}

void write_csv(const ScanResult& scan, const std::string& path) {
  std::ofstream f = open_out(path);
  for (size_t i = 0; i < scan.columns.size(); ++i) f << (i ? "," : "") << scan.columns[i];
  f << '\n';
  for (const auto& r : scan.rows) {
    for (size_t i = 0; i < r.size(); ++i) f << (i ? "," : "") << cell_text(r[i]);
    f << '\n';
  }
  std::ofstream meta = open_out(path + ".meta.json");
  meta << scan.metadata.dump(2) << '\n';
}

void write_json(const ScanResult& scan, const std::string& path) {
  std::ofstream f = open_out(path);
  f << to_json(scan).dump(2) << '\n';
}

}  // namespace mubchan
