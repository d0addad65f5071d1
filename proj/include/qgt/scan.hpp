#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "qgt/analytic.hpp"
#include "qgt/numeric.hpp"

namespace qgt {

inline constexpr const char* tool_version = "1.0.0";

enum class Component {
  g_kk,
  g0,
  g1,
  g2,
  g_tt,
  re_qkt,
  im_qkt,
  curvature,  // -2 Im Q_kt
  beta2,      // excitation probability |beta|^2
  tau,        // volatility timescale, +inf where the variance vanishes
};

Component component_from_name(const std::string& name);  // ConfigInvalid
std::string component_name(Component c);
const std::vector<Component>& all_components();

enum class Format { csv, json };
enum class Execution { serial, parallel };

// Grid scan over (k, t): k_points uniform over (-pi, pi] (gap-closing nodes
// auto-excluded), t_points uniform over [0, t_max] (a single t point means
// the slice t = t_max).
struct ScanConfig {
  QuenchProtocol proto;
  int k_points = 401;
  double t_max = 20.0;
  int t_points = 201;
  std::vector<Component> components = all_components();
  bool fd_verify = false;
  double fd_step = 3e-6;  // stencil step for the verification subsample
  std::uint64_t seed = 0;  // selects the verification subsample
  Format format = Format::csv;
  Execution exec = Execution::parallel;

  void validate() const;  // ConfigInvalid
};

struct FdReport {
  std::size_t samples = 0;
  double max_residual = 0.0;
};

// Rows are k-major then t, one row per usable grid cell; `rows` is row-major
// with columns.size() values per row.
struct ScanResult {
  QuenchProtocol proto;
  int k_points = 0;
  double t_max = 0.0;
  int t_points = 0;
  std::vector<double> k_grid;      // usable momenta, ascending
  std::vector<double> excluded_k;  // degenerate nodes dropped from the grid
  std::vector<double> t_grid;
  std::vector<std::string> columns;  // "k", "t", then component names
  std::vector<double> rows;
  FdReport fd;  // samples == 0 when no verification ran

  std::size_t row_count() const { return k_grid.size() * t_grid.size(); }
};

// Every cell evaluated through the closed forms; with fd_verify a seeded 1%
// subsample is recomputed by finite differences and the max residual
// recorded.  Row values are bitwise-deterministic for a fixed config
// regardless of worker count.
ScanResult run_scan(const ScanConfig& cfg);  // ConfigInvalid, DegenerateGrid

// Composite trapezoid of Im Q_kt over (-pi, pi] on a uniform grid with the
// periodic endpoint identified.  Grid nodes are built as exact +-pairs and
// accumulated pairwise, so the odd integrand cancels exactly; degenerate
// nodes are excluded symmetrically.  Requires k_points >= 64.
double bz_integral_im_qkt(const QuenchProtocol& q, double t, int k_points);

// Height and location of max_k g_tt per protocol, on a k_points-node grid
// (k_points >= 256).
struct PeakEntry {
  QuenchProtocol proto;
  double height;
  double k_at_max;
};
std::vector<PeakEntry> gtt_peak_report(const std::vector<QuenchProtocol>& qs,
                                       int k_points);  // ConfigInvalid

// CSV: header "k,t,<components...>", 17-significant-digit scientific, LF
// endings.  JSON: {metadata, columns, rows} with shortest round-trip
// numbers; infinities encoded as the strings "inf"/"-inf".
void write_csv(const ScanResult& r, std::ostream& os);
void write_csv(const ScanResult& r, const std::string& path);  // IoFailure
void write_json(const ScanResult& r, std::ostream& os);
void write_json(const ScanResult& r, const std::string& path);  // IoFailure
std::string to_csv(const ScanResult& r);
std::string to_json(const ScanResult& r);

// Rebuilds a ScanResult from a JSON export, bit-exactly.
ScanResult read_json(const std::string& path);  // IoFailure

}  // namespace qgt
