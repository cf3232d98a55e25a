#pragma once

#include <string>
#include <vector>

#include "mubchan/axis_channel.hpp"

namespace mubchan {

// (I (x) map)|beta><beta|, trace 1, index (input row)*d + output row
struct ChoiMatrix {
  int d = 0;
  Matrix matrix;
};

ChoiMatrix choi(const LinearMap& map);
inline ChoiMatrix choi(const AxisChannel& ch) { return choi(ch.as_map()); }
ChoiMatrix choi_from_kraus(const KrausSet& k);
// prime d, assembled entrywise from the multipliers
ChoiMatrix choi_closed_form(const AxisChannel& ch);
ChoiMatrix choi_one_axis(int d, double a, double b);

struct PptResult {
  bool is_ppt = false;
  double min_eigenvalue = 0.0;
};
PptResult ppt(const ChoiMatrix& c, double tol = 1e-10);

struct Ppt3Result {
  bool is_ppt = false;
  double slack_sum = 0.0;        // 1 - sum(lambda)
  double slack_quadratic = 0.0;  // 1 + S + S^2 - 3 sum(lambda^2)
};
Ppt3Result ppt3_closed(const Multipliers& lambda, double tol = 1e-12);

struct CcnResult {
  double t_value = 0.0;  // sum |lambda| for axis channels, (trace norm - 1)/(d-1) otherwise
  double trace_norm = 0.0;
  bool is_ccn = false;
};
CcnResult ccn(const AxisChannel& ch, double tol = 1e-12);
CcnResult ccn(const LinearMap& map, double tol = 1e-10);

enum class Verdict { EB, NotEB, BoundEntangled, UnknownPPT };
std::string to_string(Verdict v);

struct EbClassification {
  Verdict verdict = Verdict::UnknownPPT;
  std::string evidence;
  bool cp = false;
  bool ppt = false;
  double ccn_t = 0.0;
  double ppt_min_eig = 0.0;
};
// numeric_ppt = false skips the Choi eigenvalue when a closed form decides PPT (d = 3)
EbClassification eb_classify(const AxisChannel& ch, bool numeric_ppt = true);

struct ProductTerm {
  double weight;
  Vector u;
  Vector v;
};

struct SeparableDecomposition {
  std::vector<ProductTerm> terms;
  Matrix assemble() const;
  double total_weight() const;
};

SeparableDecomposition separable_decomp_R(int d, int m);
SeparableDecomposition separable_decomp_Y(int d);

// sum_{J != K} a_J Psi^X_J with 'weights' listing the d coefficients of the other axes in order
AxisChannel face_channel(int d, const std::vector<double>& weights, int excluded_axis = -1);
// excluded_axis < 0 selects the last axis
PptResult face_extremality_probe(int d, const std::vector<double>& weights, int excluded_axis = -1);

}  // namespace mubchan
