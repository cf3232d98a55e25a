#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mubchan/axis_channel.hpp"

namespace mubchan {

struct OptimizerConfig {
  int restarts = 64;
  int max_iters = 2000;
  double step_tol = 1e-12;
  double value_tol = 1e-11;
  std::uint64_t rng_seed = 42;
};

// A channel prepared for optimization: row-major superoperator plus seed states.
struct ChannelView {
  int dim = 0;
  Matrix superop;
  std::vector<Vector> axis_states;

  static ChannelView of(const AxisChannel& ch);
  static ChannelView of(const DiagonalChannel& ch);
  static ChannelView of(const OneAxisChannel& ch);
  // seeds default to the MUB family of the same dimension
  static ChannelView of(const LinearMap& map);

  Matrix apply(const Matrix& rho) const;
};

// Output state of view (x) other applied to |psi><psi|
Matrix output_state(const ChannelView& view, const Vector& psi);
Matrix output_state(const ChannelView& first, const ChannelView& second, const Vector& psi);

RealVector axis_output_spectrum(const AxisChannel& ch, int axis);

struct Nu2Exact {
  double value;
  int axis;
};
Nu2Exact nu2_exact(const AxisChannel& ch);
double nu_inf_axis(const AxisChannel& ch);
// max over axis states of the closed-form output p-norm
double nu_p_axis(const AxisChannel& ch, double p);

struct FhnBound {
  double bound;
  bool attained;
  double best_axis_value;
};
FhnBound fhn_bound(const DiagonalChannel& ch);
// Throws NotDiagonal when the transfer matrix in the family's unitary basis is not diagonal.
FhnBound fhn_bound(const LinearMap& map, const MubFamily& family);

struct PurityReport {
  double p = 2.0;  // NaN for entropy reports
  double value = 0.0;
  Vector argmax_state;
  std::string method;  // axis_closed_form or optimizer
  int restarts_used = 0;
  bool converged = false;
  std::uint64_t seed = 0;
  double best_axis_value = 0.0;  // best single-axis or product-of-axis seed
  std::string best_origin;       // axis, product, entangled, random
};

PurityReport optimize_nu_p(const ChannelView& ch, double p, const OptimizerConfig& cfg = {});
PurityReport optimize_nu_p(const ChannelView& first, const ChannelView& second, double p,
                           const OptimizerConfig& cfg = {});
PurityReport optimize_smin(const ChannelView& ch, const OptimizerConfig& cfg = {});
PurityReport optimize_smin(const ChannelView& first, const ChannelView& second, const OptimizerConfig& cfg = {});

struct CriticalPointReport {
  double max_norm_derivative = 0.0;
  double max_entropy_derivative = 0.0;
};
CriticalPointReport critical_point_check(const ChannelView& ch, const Vector& base, double p, int directions,
                                         std::uint64_t seed = 42);
CriticalPointReport critical_point_check(const ChannelView& first, const ChannelView& second, const Vector& base,
                                         double p, int directions, std::uint64_t seed = 42);

// sum_n psi_n^J (x) psi_n^K / sqrt(d)
Vector axis_paired_state(const MubFamily& family, int axis_j, int axis_k);

struct Mult2Report {
  double lhs;
  double rhs;
  double gap;
  double product_value;  // best product-of-axis-states value on the tensor channel
};
Mult2Report mult2_check(const AxisChannel& phi, const ChannelView& omega, const OptimizerConfig& cfg = {});

struct CrossingRow {
  double lambda1;
  bool cp;
  double s_axis_plus;
  double s_axis_minus;
  double s_min;
  std::vector<double> nu_p;
  double s_entangled;          // both -0.5 axes paired
  double s_entangled_first;    // first axis paired with a -0.5 axis
};

// multipliers [l, 0.5 - l, -0.5, -0.5] at d = 3
Multipliers crossing_multipliers(double lambda1);
double crossing_root(double tol = 1e-12);
double entangled_output_entropy(const AxisChannel& ch, int axis_j, int axis_k);
std::vector<CrossingRow> crossing_experiment(const std::vector<double>& lambda1_grid, const std::vector<double>& p_list,
                                             const OptimizerConfig& cfg = {});

}  // namespace mubchan
