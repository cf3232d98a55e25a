#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mubchan/choi.hpp"

namespace mubchan {

using Cell = std::variant<double, bool, std::string>;
using Row = std::vector<Cell>;

struct AuditReport {
  int checked = 0;
  int mismatches = 0;
  std::vector<std::string> details;
};

struct ScanResult {
  std::vector<std::string> columns;
  std::vector<Row> rows;
  nlohmann::json metadata;
  AuditReport audit;

  int column(const std::string& name) const;
};

// lambda = [x, x, -y, -y] at d = 3 on x, y in [0, 1] with step 1/resolution
ScanResult scan_xxyy(int resolution, std::uint64_t audit_seed = 42);
// (a, b) over the bounding box of the CP triangle
ScanResult scan_one_axis(int d, int resolution, std::uint64_t audit_seed = 42);
// barycentric grid over the four Psi^X vertices (sum lambda = -1/2) at d = 3
ScanResult scan_base_tetrahedron(int resolution, std::uint64_t audit_seed = 42);

// Analytic bound-entangled triangle for [x, x, -y, -y]; signed distance, positive inside.
double xxyy_triangle_margin(double x, double y);

std::string format_number(double v);
void write_csv(const ScanResult& scan, const std::string& path);
void write_json(const ScanResult& scan, const std::string& path);
nlohmann::json to_json(const ScanResult& scan);

}  // namespace mubchan
