#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "mubchan/purity.hpp"
#include "mubchan/region_scan.hpp"

using namespace mubchan;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& tok) {
  const std::string t = trim(tok);
  if (t == "inf" || t == "Inf" || t == "infinity") return kInf;
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw Error(Errc::Usage, "not a number: '" + t + "'");
  }
  if (used != t.size()) throw Error(Errc::Usage, "not a number: '" + t + "'");
  return v;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!trim(tok).empty()) out.push_back(parse_number(tok));
  if (out.empty()) throw Error(Errc::Usage, "empty number list");
  return out;
}

// key = value lines; '#' starts a comment
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(Errc::Usage, "cannot read config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(Errc::Usage, path + ":" + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

struct Common {
  std::string config_path;
  std::optional<std::uint64_t> seed;
};

OptimizerConfig resolve_config(const Common& c, std::optional<int> restarts) {
  OptimizerConfig cfg;
  if (!c.config_path.empty()) {
    for (const auto& [k, v] : read_config(c.config_path)) {
      if (k == "restarts") cfg.restarts = static_cast<int>(parse_number(v));
      else if (k == "max_iters") cfg.max_iters = static_cast<int>(parse_number(v));
      else if (k == "step_tol") cfg.step_tol = parse_number(v);
      else if (k == "value_tol") cfg.value_tol = parse_number(v);
      else if (k == "seed") cfg.rng_seed = std::stoull(v);
      else throw Error(Errc::Usage, "unknown config key '" + k + "'");
    }
  }
  if (const char* env = std::getenv("MUBCHAN_SEED"); env && *env) {
    try {
      cfg.rng_seed = std::stoull(env);
    } catch (const std::exception&) {
      throw Error(Errc::Usage, "MUBCHAN_SEED is not an integer");
    }
  }
  if (c.seed) cfg.rng_seed = *c.seed;
  if (restarts) cfg.restarts = *restarts;
  if (cfg.restarts < 1) throw Error(Errc::Usage, "restarts must be >= 1");
  return cfg;
}

std::string num(double v) { return format_number(v); }

json num_json(double v) { return std::isfinite(v) ? json(v) : json(format_number(v)); }

// d from --d or from the multiplier count (prime d has d+1 axes)
AxisChannel channel_from(const std::string& lambda, std::optional<int> d_opt, double noise, bool checked) {
  const Multipliers lam = parse_list(lambda);
  const int d = d_opt ? *d_opt : static_cast<int>(lam.size()) - 1;
  return checked ? AxisChannel::checked(d, lam, noise) : AxisChannel::unchecked(d, lam, noise);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(r);
  }
  return rows;
}

json vector_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
  return a;
}

std::string dump(const json& j) {
  // 15 significant digits for every float
  std::function<json(const json&)> round = [&](const json& x) -> json {
    if (x.is_number_float()) return json::parse(format_number(x.get<double>()));
    if (x.is_array() || x.is_object()) {
      json y = x;
      for (auto it = y.begin(); it != y.end(); ++it) *it = round(*it);
      return y;
    }
    return x;
  };
  return round(j).dump(2);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(Errc::Usage, "cannot open " + path + " for writing");
  f << text;
}

bool is_prime_power(int d) {
  for (int p = 2; p <= d; ++p)
    if (d % p == 0) {
      while (d % p == 0) d /= p;
      return d == 1;
    }
  return false;
}

}  // namespace

int cli_main(int argc, char** argv) { return cli_main(argc, argv, std::cout, std::cerr); }

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Axis-channel toolkit: MUBs, channel classification, output purity and region scans"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "key = value file with optimizer defaults");
  app.add_option("--seed", common.seed, "RNG seed (overrides MUBCHAN_SEED and config)");

  // mub
  auto* mub = app.add_subcommand("mub", "Build and optionally verify the MUB family");
  int mub_d = 0;
  bool mub_verify = false;
  std::string mub_out;
  mub->add_option("--d", mub_d, "dimension")->required();
  mub->add_flag("--verify", mub_verify, "report unbiasedness/orthogonality errors");
  mub->add_option("--out", mub_out, "write JSON here instead of stdout");

  // shared channel options
  std::string lambda;
  std::optional<int> d_opt;
  double noise = 0.0;
  bool as_json = false;

  auto* chan = app.add_subcommand("channel", "Show CP status and parameterizations");
  chan->add_option("--lambda", lambda, "comma-separated multipliers")->required();
  chan->add_option("--d", d_opt, "dimension (default: number of multipliers - 1)");
  chan->add_option("--noise", noise, "depolarizing weight (non-prime d)");
  chan->add_flag("--json", as_json);

  auto* cls = app.add_subcommand("classify", "Entanglement-breaking classification");
  cls->add_option("--lambda", lambda, "comma-separated multipliers")->required();
  cls->add_option("--d", d_opt, "dimension");
  cls->add_option("--noise", noise, "depolarizing weight (non-prime d)");
  cls->add_flag("--json", as_json);

  auto* ch_cmd = app.add_subcommand("choi", "Write the Choi matrix as CSV");
  std::string choi_out;
  ch_cmd->add_option("--lambda", lambda, "comma-separated multipliers")->required();
  ch_cmd->add_option("--d", d_opt, "dimension");
  ch_cmd->add_option("--noise", noise, "depolarizing weight (non-prime d)");
  ch_cmd->add_option("--out", choi_out, "CSV path (row,col,re,im)")->required();

  auto* pur = app.add_subcommand("purity", "Maximal output p-norm or minimal output entropy");
  std::string p_text = "2";
  std::optional<int> restarts;
  std::string tensor_with;
  bool entropy = false;
  pur->add_option("--lambda", lambda, "comma-separated multipliers")->required();
  pur->add_option("--d", d_opt, "dimension");
  pur->add_option("--p", p_text, "Schatten p (>= 1 or inf)");
  pur->add_option("--restarts", restarts, "random restarts");
  pur->add_option("--tensor-with", tensor_with, "multipliers of a second axis channel");
  pur->add_flag("--entropy", entropy, "minimize output entropy instead");

  auto* exp = app.add_subcommand("experiment", "Numerical experiments");
  exp->require_subcommand(1);
  auto* cross = exp->add_subcommand("crossing", "Entropy crossing for [l, 0.5-l, -0.5, -0.5]");
  double from = 0.60, to = 0.70, step = 0.001;
  std::string cross_out, p_list = "1.5,2,inf";
  cross->add_option("--from", from);
  cross->add_option("--to", to);
  cross->add_option("--step", step);
  cross->add_option("--out", cross_out, "CSV path")->required();
  cross->add_option("--p-list", p_list, "comma-separated p values");
  cross->add_option("--restarts", restarts, "random restarts per point");

  auto* scan = app.add_subcommand("scan", "Parameter-region scans");
  std::string family, scan_out, format = "csv";
  int grid = 100;
  int scan_d = 3;
  scan->add_option("family", family, "xxyy | one_axis | base_tetrahedron")
      ->required()
      ->check(CLI::IsMember({"xxyy", "one_axis", "base_tetrahedron"}));
  scan->add_option("--grid", grid, "grid resolution (>= 2)");
  scan->add_option("--d", scan_d, "dimension (one_axis)");
  scan->add_option("--out", scan_out, "output path")->required();
  scan->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (mub->parsed()) {
      if (mub_d < 2) throw Error(Errc::BadDimension, "d must be >= 2");
      const MubFamily f = mub_family(mub_d);
      if (!is_prime(mub_d))
        err << "warning: d=" << mub_d << " is not prime; using kappa=3 bases from X, Z, XZ"
            << (is_prime_power(mub_d) ? " (full prime-power construction is out of scope)" : "") << "\n";
      json j{{"d", f.d}, {"kappa", f.kappa}};
      j["generators"] = json::array();
      j["bases"] = json::array();
      for (int J = 0; J < f.kappa; ++J) {
        j["generators"].push_back(matrix_json(f.generators[J]));
        j["bases"].push_back(matrix_json(f.bases[J].transpose()));  // one row per basis vector
        j["labels"].push_back({{"x_power", f.labels[J].j}, {"z_power", f.labels[J].k}});
      }
      if (mub_verify) {
        const MubReport r = verify_mub(f);
        j["verify"] = {{"max_overlap_error", r.max_overlap_error}, {"max_orthogonality_error", r.max_orthogonality_error}};
      }
      if (mub_out.empty())
        out << dump(j) << "\n";
      else
        write_text(mub_out, dump(j) + "\n");
      return 0;
    }

    if (chan->parsed()) {
      const AxisChannel ch = channel_from(lambda, d_opt, noise, false);
      const CpReport cp = ch.cp_report();
      json j{{"d", ch.d()}, {"kappa", ch.kappa()}, {"lambda", ch.lambda()}, {"cp", cp.cp},
             {"cp_lower_slack", cp.lower_slack}, {"cp_upper_slack", cp.upper_slack},
             {"s", ch.s()}, {"t", ch.t()}, {"a00", ch.a00()}, {"a", ch.a()}};
      if (!ch.family().complete()) j["noise"] = ch.noise();
      if (cp.cp)
        j["kraus_count"] = kraus(ch).operators.size();
      else
        j["cp_failure"] = cp.failed;
      if (as_json) {
        out << dump(j) << "\n";
      } else {
        out << "cp: " << (cp.cp ? "yes" : "no") << (cp.cp ? "" : " (" + cp.failed + ")") << "\n";
        out << "s: " << num(ch.s()) << "\nt:";
        for (double x : ch.t()) out << " " << num(x);
        out << "\na00: " << num(ch.a00()) << "\na:";
        for (double x : ch.a()) out << " " << num(x);
        out << "\n";
        if (cp.cp) out << "kraus operators: " << j["kraus_count"].get<size_t>() << "\n";
      }
      return 0;
    }

    if (cls->parsed()) {
      const AxisChannel ch = channel_from(lambda, d_opt, noise, true);
      const EbClassification c = eb_classify(ch);
      json j{{"cp", c.cp}, {"ppt", c.ppt}, {"ccn_T", c.ccn_t}, {"ppt_min_eigenvalue", num_json(c.ppt_min_eig)},
             {"verdict", to_string(c.verdict)}, {"evidence", c.evidence}};
      if (as_json)
        out << dump(j) << "\n";
      else
        out << "verdict: " << to_string(c.verdict) << "\nevidence: " << c.evidence << "\ncp: yes\nppt: "
            << (c.ppt ? "yes" : "no") << "\nccn_T: " << num(c.ccn_t) << "\n";
      return 0;
    }

    if (ch_cmd->parsed()) {
      const AxisChannel ch = channel_from(lambda, d_opt, noise, false);
      const Matrix g = choi(ch).matrix;
      std::ostringstream csv;
      csv << "row,col,re,im\n";
      for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index k = 0; k < g.cols(); ++k)
          csv << i << "," << k << "," << num(g(i, k).real()) << "," << num(g(i, k).imag()) << "\n";
      write_text(choi_out, csv.str());
      return 0;
    }

    if (pur->parsed()) {
      const OptimizerConfig cfg = resolve_config(common, restarts);
      const AxisChannel ch = channel_from(lambda, d_opt, noise, true);
      const ChannelView v = ChannelView::of(ch);
      const double p = parse_number(p_text);
      PurityReport r;
      if (tensor_with.empty()) {
        r = entropy ? optimize_smin(v, cfg) : optimize_nu_p(v, p, cfg);
      } else {
        const Multipliers other = parse_list(tensor_with);
        const ChannelView w = ChannelView::of(AxisChannel::checked(static_cast<int>(other.size()) - 1, other));
        r = entropy ? optimize_smin(v, w, cfg) : optimize_nu_p(v, w, p, cfg);
      }
      json j{{"quantity", entropy ? "S_min" : "nu_p"},
             {"p", entropy ? json(nullptr) : num_json(p)},
             {"value", r.value},
             {"best_axis_value", r.best_axis_value},
             {"best_origin", r.best_origin},
             {"method", r.method},
             {"restarts_used", r.restarts_used},
             {"converged", r.converged},
             {"seed", r.seed},
             {"argmax_state", vector_json(r.argmax_state)}};
      if (tensor_with.empty() && !entropy && ch.family().complete()) j["axis_closed_form"] = nu_p_axis(ch, p);
      out << dump(j) << "\n";
      return 0;
    }

    if (cross->parsed()) {
      const OptimizerConfig cfg = resolve_config(common, restarts);
      if (!(step > 0) || to < from) throw Error(Errc::Usage, "need step > 0 and to >= from");
      const std::vector<double> ps = parse_list(p_list);
      std::vector<double> grid_pts;
      const long n = std::lround(std::floor((to - from) / step + 1e-9));
      for (long i = 0; i <= n; ++i) grid_pts.push_back(from + i * step);
      const auto rows = crossing_experiment(grid_pts, ps, cfg);
      std::ostringstream csv;
      csv << "lambda1,cp,S_axis_plus,S_axis_minus,S_min";
      for (double p : ps) csv << ",nu_p_" << num(p);
      csv << ",S_entangled,S_entangled_first\n";
      for (const auto& r : rows) {
        csv << num(r.lambda1) << "," << (r.cp ? "true" : "false") << "," << num(r.s_axis_plus) << ","
            << num(r.s_axis_minus) << "," << num(r.s_min);
        for (double x : r.nu_p) csv << "," << num(x);
        csv << "," << num(r.s_entangled) << "," << num(r.s_entangled_first) << "\n";
      }
      write_text(cross_out, csv.str());
      const double root = crossing_root();
      json meta{{"multipliers", "[l, 0.5-l, -0.5, -0.5]"},
                {"d", 3},
                {"crossing_root", root},
                {"entropy_units", "bits"},
                {"S_entangled", "paired state over the two -0.5 axes (indices 2, 3)"},
                {"S_entangled_first", "paired state over axis 0 and axis 2"},
                {"seed", cfg.rng_seed},
                {"restarts", cfg.restarts}};
      write_text(cross_out + ".meta.json", dump(meta) + "\n");
      out << "crossing root: " << num(root) << "\n";
      return 0;
    }

    if (scan->parsed()) {
      const std::uint64_t seed = resolve_config(common, std::nullopt).rng_seed;
      ScanResult s;
      if (family == "xxyy") s = scan_xxyy(grid, seed);
      else if (family == "one_axis") s = scan_one_axis(scan_d, grid, seed);
      else s = scan_base_tetrahedron(grid, seed);
      s.metadata["seed"] = seed;
      if (format == "csv")
        write_csv(s, scan_out);
      else
        write_json(s, scan_out);
      out << s.rows.size() << " rows written to " << scan_out << " (audit " << s.audit.checked << " checked, "
          << s.audit.mismatches << " mismatches)\n";
      return s.audit.mismatches == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
