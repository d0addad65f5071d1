#include "qgt/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "json.hpp"

namespace qgt {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerateWindow = 0.05;

// Deterministic 64-bit stream, independent of the standard library's
// distribution implementations (exports must not vary across toolchains).
struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

// Uniform nodes over (-pi, pi] built as exact +-pairs: node j of N is
// (2j - N) pi / N, with the j = N endpoint pinned to the representable pi.
double grid_node(int j, int n) {
  if (j == n) return kPi;
  return (static_cast<double>(2 * j - n) * kPi) / static_cast<double>(n);
}

bool node_degenerate(const QuenchProtocol& q, double k) {
  return r_tilde(q.m_i, k) <= tau_gap || r_tilde(q.m_f, k) <= tau_gap;
}

}  // namespace

Component component_from_name(const std::string& name) {
  for (Component c : all_components()) {
    if (component_name(c) == name) return c;
  }
  throw ConfigInvalid("unknown component '" + name + "'");
}

std::string component_name(Component c) {
  switch (c) {
    case Component::g_kk: return "g_kk";
    case Component::g0: return "g0";
    case Component::g1: return "g1";
    case Component::g2: return "g2";
    case Component::g_tt: return "g_tt";
    case Component::re_qkt: return "re_qkt";
    case Component::im_qkt: return "im_qkt";
    case Component::curvature: return "curvature";
    case Component::beta2: return "beta2";
    case Component::tau: return "tau";
  }
  throw ConfigInvalid("unknown component id");
}

const std::vector<Component>& all_components() {
  static const std::vector<Component> all = {
      Component::g_kk,   Component::g0,     Component::g1,
      Component::g2,     Component::g_tt,   Component::re_qkt,
      Component::im_qkt, Component::curvature, Component::beta2,
      Component::tau};
  return all;
}

void ScanConfig::validate() const {
  proto.validate();
  if (k_points < 3) {
    throw ConfigInvalid("k_points must be >= 3");
  }
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) {
    throw ConfigInvalid("t_max must be finite and >= 0");
  }
  if (t_points < 1) {
    throw ConfigInvalid("t_points must be >= 1");
  }
  if (components.empty()) {
    throw ConfigInvalid("component list must not be empty");
  }
  if (!(fd_step >= fd_step_min) || !(fd_step <= fd_step_max)) {
    throw ConfigInvalid("fd_step outside the supported stencil range");
  }
}

namespace {

// One grid cell; pure, so rows are bitwise identical no matter which worker
// evaluates them.
void eval_row(const ScanConfig& cfg, double k, double t, double* out) {
  out[0] = k;
  out[1] = t;
  bool have_value = false;
  QgtValue v{};
  for (std::size_t i = 0; i < cfg.components.size(); ++i) {
    double x = 0.0;
    const Component c = cfg.components[i];
    switch (c) {
      case Component::beta2:
        x = excitation_probability(cfg.proto, k);
        break;
      case Component::tau:
        x = volatility_timescale(cfg.proto, k);
        break;
      default:
        if (!have_value) {
          v = qgt_value(cfg.proto, k, t);
          have_value = true;
        }
        switch (c) {
          case Component::g_kk: x = v.g_kk; break;
          case Component::g0: x = v.g0; break;
          case Component::g1: x = v.g1; break;
          case Component::g2: x = v.g2; break;
          case Component::g_tt: x = v.g_tt; break;
          case Component::re_qkt: x = v.re_qkt; break;
          case Component::im_qkt: x = v.im_qkt; break;
          case Component::curvature: x = -2.0 * v.im_qkt; break;
          default: break;
        }
        break;
    }
    out[2 + i] = x;
  }
}

void verify_subsample(const ScanConfig& cfg, ScanResult& res) {
  const double window = std::max(kDegenerateWindow, 2.0 * cfg.fd_step);
  std::vector<std::pair<double, double>> cells;
  cells.reserve(res.row_count());
  for (double k : res.k_grid) {
    if (near_degenerate(cfg.proto.m_i, k, window) ||
        near_degenerate(cfg.proto.m_f, k, window)) {
      continue;
    }
    for (double t : res.t_grid) cells.emplace_back(k, t);
  }
  if (cells.empty()) return;
  const std::size_t n = std::max<std::size_t>(1, res.row_count() / 100);
  SplitMix64 rng{cfg.seed ^ 0x51a9c4e1d0f2b873ull};
  const FdConfig fd{cfg.fd_step, cfg.fd_step, true};
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [k, t] = cells[rng.next() % cells.size()];
    const QgtMatrix num = numeric_qgt(cfg.proto, k, t, fd);
    const QgtValue ana = qgt_value(cfg.proto, k, t);
    const cplx aq(ana.re_qkt, ana.im_qkt);
    worst = std::max({worst, std::abs(num.q_kk - ana.g_kk),
                      std::abs(num.q_kt - aq),
                      std::abs(num.q_tk - std::conj(aq)),
                      std::abs(num.q_tt - ana.g_tt)});
  }
  res.fd.samples = n;
  res.fd.max_residual = worst;
}

}  // namespace

ScanResult run_scan(const ScanConfig& cfg) {
  cfg.validate();

  ScanResult res;
  res.proto = cfg.proto;
  res.k_points = cfg.k_points;
  res.t_max = cfg.t_max;
  res.t_points = cfg.t_points;

  for (int j = 1; j <= cfg.k_points; ++j) {
    const double k = grid_node(j, cfg.k_points);
    if (node_degenerate(cfg.proto, k)) {
      res.excluded_k.push_back(k);
    } else {
      res.k_grid.push_back(k);
    }
  }
  if (res.k_grid.empty()) {
    throw DegenerateGrid("every momentum node sits on a gap closing");
  }

  if (cfg.t_points == 1) {
    res.t_grid.push_back(cfg.t_max);
  } else {
    for (int l = 0; l < cfg.t_points; ++l) {
      res.t_grid.push_back(l == cfg.t_points - 1
                               ? cfg.t_max
                               : cfg.t_max * static_cast<double>(l) /
                                     static_cast<double>(cfg.t_points - 1));
    }
  }

  res.columns.reserve(2 + cfg.components.size());
  res.columns.push_back("k");
  res.columns.push_back("t");
  for (Component c : cfg.components) res.columns.push_back(component_name(c));

  const std::size_t ncols = res.columns.size();
  const std::size_t nk = res.k_grid.size();
  const std::size_t nt = res.t_grid.size();
  res.rows.assign(nk * nt * ncols, 0.0);

  if (cfg.exec == Execution::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t ki = 0; ki < static_cast<std::ptrdiff_t>(nk); ++ki) {
      for (std::size_t ti = 0; ti < nt; ++ti) {
        const std::size_t cell = static_cast<std::size_t>(ki) * nt + ti;
        eval_row(cfg, res.k_grid[static_cast<std::size_t>(ki)],
                 res.t_grid[ti], &res.rows[cell * ncols]);
      }
    }
  } else {
    for (std::size_t ki = 0; ki < nk; ++ki) {
      for (std::size_t ti = 0; ti < nt; ++ti) {
        eval_row(cfg, res.k_grid[ki], res.t_grid[ti],
                 &res.rows[(ki * nt + ti) * ncols]);
      }
    }
  }

  if (cfg.fd_verify) verify_subsample(cfg, res);
  return res;
}

double bz_integral_im_qkt(const QuenchProtocol& q, double t, int k_points) {
  q.validate();
  if (k_points < 64) {
    throw ConfigInvalid("BZ integral needs at least 64 momentum nodes");
  }
  const auto im_at = [&](double k) { return q_kt(q, k, t).imag(); };
  const double h = 2.0 * kPi / static_cast<double>(k_points);

  double sum = 0.0;
  // Exact +-pairs first; an odd integrand cancels node by node.
  for (int j = 1; 2 * j < k_points; ++j) {
    const double kp = grid_node(k_points - j, k_points);
    const double km = grid_node(j, k_points);
    if (node_degenerate(q, kp) || node_degenerate(q, km)) continue;
    sum += im_at(km) + im_at(kp);
  }
  if (k_points % 2 == 0) {
    const double k0 = grid_node(k_points / 2, k_points);  // k = 0
    if (!node_degenerate(q, k0)) sum += im_at(k0);
  }
  const double kpi = grid_node(k_points, k_points);  // k = pi, self-paired
  if (!node_degenerate(q, kpi)) sum += im_at(kpi);
  return h * sum;
}

std::vector<PeakEntry> gtt_peak_report(const std::vector<QuenchProtocol>& qs,
                                       int k_points) {
  if (k_points < 256) {
    throw ConfigInvalid("peak report needs at least 256 momentum nodes");
  }
  if (qs.empty()) {
    throw ConfigInvalid("peak report needs at least one protocol");
  }
  std::vector<PeakEntry> out;
  out.reserve(qs.size());
  for (const QuenchProtocol& q : qs) {
    q.validate();
    PeakEntry e{q, -1.0, 0.0};
    for (int j = 1; j <= k_points; ++j) {
      const double k = grid_node(j, k_points);
      if (node_degenerate(q, k)) continue;
      const double g = metric_tt(q, k);
      if (g > e.height) {
        e.height = g;
        e.k_at_max = k;
      }
    }
    out.push_back(e);
  }
  return out;
}

namespace {

void append_number(std::string& s, double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  s += buf;
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string& s = j.get_ref<const std::string&>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    throw IoFailure("unrecognized numeric token '" + s + "'");
  }
  return j.get<double>();
}

nlohmann::json json_array(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

}  // namespace

std::string to_csv(const ScanResult& r) {
  std::string out;
  const std::size_t ncols = r.columns.size();
  out.reserve(r.rows.size() * 25 + 64);
  for (std::size_t i = 0; i < ncols; ++i) {
    if (i) out += ',';
    out += r.columns[i];
  }
  out += '\n';
  for (std::size_t row = 0; row < r.row_count(); ++row) {
    for (std::size_t i = 0; i < ncols; ++i) {
      if (i) out += ',';
      append_number(out, r.rows[row * ncols + i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ScanResult& r) {
  nlohmann::json meta;
  meta["tool"] = "qgt";
  meta["version"] = tool_version;
  meta["protocol"] = {{"m_i", r.proto.m_i},
                      {"m_f", r.proto.m_f},
                      {"j2", r.proto.j2}};
  meta["grid"] = {{"k_points", r.k_points},
                  {"t_max", r.t_max},
                  {"t_points", r.t_points}};
  meta["k_grid"] = json_array(r.k_grid);
  meta["excluded_k"] = json_array(r.excluded_k);
  meta["t_grid"] = json_array(r.t_grid);
  if (r.fd.samples > 0) {
    meta["fd_verify"] = {{"samples", r.fd.samples},
                         {"max_residual", r.fd.max_residual}};
  }

  nlohmann::json doc;
  doc["metadata"] = std::move(meta);
  doc["columns"] = r.columns;
  nlohmann::json rows = nlohmann::json::array();
  const std::size_t ncols = r.columns.size();
  for (std::size_t row = 0; row < r.row_count(); ++row) {
    nlohmann::json jr = nlohmann::json::array();
    for (std::size_t i = 0; i < ncols; ++i) {
      jr.push_back(json_number(r.rows[row * ncols + i]));
    }
    rows.push_back(std::move(jr));
  }
  doc["rows"] = std::move(rows);
  return doc.dump();
}

void write_csv(const ScanResult& r, std::ostream& os) { os << to_csv(r); }

void write_json(const ScanResult& r, std::ostream& os) { os << to_json(r); }

namespace {

void write_file(const std::string& path, const std::string& body,
                const char* what) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoFailure(std::string("cannot open ") + what + " at " + path);
  f << body;
  f.flush();
  if (!f) throw IoFailure(std::string("write failed for ") + path);
}

}  // namespace

void write_csv(const ScanResult& r, const std::string& path) {
  write_file(path, to_csv(r), "CSV export");
}

void write_json(const ScanResult& r, const std::string& path) {
  write_file(path, to_json(r), "JSON export");
}

ScanResult read_json(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoFailure("cannot open JSON export at " + path);
  nlohmann::json doc;
  try {
    f >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure("malformed JSON export: " + std::string(e.what()));
  }
  try {
    ScanResult r;
    const auto& meta = doc.at("metadata");
    r.proto.m_i = meta.at("protocol").at("m_i").get<double>();
    r.proto.m_f = meta.at("protocol").at("m_f").get<double>();
    r.proto.j2 = meta.at("protocol").at("j2").get<double>();
    r.k_points = meta.at("grid").at("k_points").get<int>();
    r.t_max = meta.at("grid").at("t_max").get<double>();
    r.t_points = meta.at("grid").at("t_points").get<int>();
    for (const auto& v : meta.at("k_grid")) {
      r.k_grid.push_back(number_from_json(v));
    }
    for (const auto& v : meta.at("excluded_k")) {
      r.excluded_k.push_back(number_from_json(v));
    }
    for (const auto& v : meta.at("t_grid")) {
      r.t_grid.push_back(number_from_json(v));
    }
    if (meta.contains("fd_verify")) {
      r.fd.samples = meta.at("fd_verify").at("samples").get<std::size_t>();
      r.fd.max_residual =
          meta.at("fd_verify").at("max_residual").get<double>();
    }
    r.columns = doc.at("columns").get<std::vector<std::string>>();
    for (const auto& row : doc.at("rows")) {
      for (const auto& v : row) r.rows.push_back(number_from_json(v));
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw IoFailure("JSON export missing fields: " + std::string(e.what()));
  }
}

}  // namespace qgt
