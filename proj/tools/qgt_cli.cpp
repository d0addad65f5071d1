// qgt: scans, integrals, peak reports, sign diagnostics, and stencil
// verification for the post-quench quantum geometric tensor of the 1D SSH
// chain.
//
// Exit codes: 0 success; 2 malformed configuration; 3 degenerate grid or
// point; 4 verification residual over threshold; 5 I/O failure.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qgt/analytic.hpp"
#include "qgt/scan.hpp"

namespace {

constexpr double kVerifyThreshold = 1e-6;

struct Opts {
  double mi = 0.5;
  double mf = 0.5;
  double j2 = 1.0;
  int k_points = 401;
  double t_max = 20.0;
  int t_points = 201;
  std::vector<std::string> components;
  double fd_step = 3e-6;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string out;
  std::string config_path;
};

void add_protocol_flags(CLI::App* sub, Opts& o) {
  sub->add_option("--mi", o.mi, "initial dimerization ratio J1/J2");
  sub->add_option("--mf", o.mf, "final dimerization ratio J1/J2");
  sub->add_option("--j2", o.j2, "inter-cell hopping energy scale");
  sub->add_option("--config", o.config_path,
                  "flat key=value file with the same keys as the flags; "
                  "flags override the file");
}

void add_grid_flags(CLI::App* sub, Opts& o) {
  sub->add_option("--k-points", o.k_points,
                  "uniform momentum nodes over (-pi, pi]");
  sub->add_option("--t-max", o.t_max, "largest evolution time");
  sub->add_option("--t-points", o.t_points,
                  "time nodes over [0, t-max] (1 means the slice t = t-max)");
}

void add_output_flags(CLI::App* sub, Opts& o) {
  sub->add_option("--format", o.format, "export format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--out", o.out, "output path (default: stdout)");
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r\n";
  const std::size_t b = s.find_first_not_of(ws);
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double config_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw qgt::ConfigInvalid("config key '" + key + "' needs a real number, "
                           "got '" + value + "'");
}

int config_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(value, &pos);
    if (pos == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw qgt::ConfigInvalid("config key '" + key + "' needs an integer, "
                           "got '" + value + "'");
}

std::uint64_t config_seed(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    if (!value.empty() && value[0] != '-') {
      const unsigned long long v = std::stoull(value, &pos);
      if (pos == value.size()) return v;
    }
  } catch (const std::exception&) {
  }
  throw qgt::ConfigInvalid("config key '" + key + "' needs a non-negative "
                           "integer, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = value.find(',', start);
    parts.push_back(trim(value.substr(start, comma - start)));
    if (comma == std::string::npos) return parts;
    start = comma + 1;
  }
}

// Backfills Opts from a flat key=value file. A key is applied only when the
// matching flag was not given on the command line, so flags always win; keys
// whose flag does not exist on this subcommand are rejected like any other
// unknown key.
void apply_config_file(CLI::App* sub, Opts& o) {
  if (o.config_path.empty()) return;
  std::ifstream f(o.config_path);
  if (!f) throw qgt::IoFailure("cannot open config file at " + o.config_path);

  const auto known = [sub](const char* flag) {
    return sub->get_option_no_throw(flag) != nullptr;
  };
  const auto given = [sub, &known](const char* flag) {
    return known(flag) && sub->get_option_no_throw(flag)->count() > 0;
  };

  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw qgt::ConfigInvalid("config line " + std::to_string(line_no) +
                               " is not key=value: '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));

    const std::string flag = "--" + key;
    if (!known(flag.c_str())) {
      throw qgt::ConfigInvalid("config key '" + key + "' is not a flag of "
                               "this subcommand");
    }
    if (given(flag.c_str())) continue;

    if (key == "mi") {
      o.mi = config_double(key, value);
    } else if (key == "mf") {
      o.mf = config_double(key, value);
    } else if (key == "j2") {
      o.j2 = config_double(key, value);
    } else if (key == "k-points") {
      o.k_points = config_int(key, value);
    } else if (key == "t-max") {
      o.t_max = config_double(key, value);
    } else if (key == "t-points") {
      o.t_points = config_int(key, value);
    } else if (key == "components") {
      o.components = split_list(value);
    } else if (key == "fd-step") {
      o.fd_step = config_double(key, value);
    } else if (key == "seed") {
      o.seed = config_seed(key, value);
    } else if (key == "format") {
      if (value != "csv" && value != "json") {
        throw qgt::ConfigInvalid("config key 'format' must be csv or json, "
                                 "got '" + value + "'");
      }
      o.format = value;
    } else if (key == "out") {
      o.out = value;
    } else if (key == "config") {
      throw qgt::ConfigInvalid("config files cannot chain other config files");
    }
  }
}

qgt::ScanConfig make_scan_config(const Opts& o) {
  qgt::ScanConfig cfg;
  cfg.proto = {o.mi, o.mf, o.j2};
  cfg.k_points = o.k_points;
  cfg.t_max = o.t_max;
  cfg.t_points = o.t_points;
  if (!o.components.empty()) {
    cfg.components.clear();
    for (const std::string& name : o.components) {
      cfg.components.push_back(qgt::component_from_name(name));
    }
  }
  cfg.fd_step = o.fd_step;
  cfg.seed = o.seed;
  cfg.format = o.format == "json" ? qgt::Format::json : qgt::Format::csv;
  return cfg;
}

void emit(const std::string& body, const std::string& out, const char* what) {
  if (out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    throw qgt::IoFailure(std::string("cannot open ") + what + " at " + out);
  }
  f << body;
  f.flush();
  if (!f) throw qgt::IoFailure(std::string("write failed for ") + out);
}

void emit_scan(const qgt::ScanResult& r, const Opts& o) {
  const std::string body =
      o.format == "json" ? qgt::to_json(r) : qgt::to_csv(r);
  emit(body, o.out, "export");
}

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

int cmd_scan(const Opts& o) {
  emit_scan(qgt::run_scan(make_scan_config(o)), o);
  return 0;
}

int cmd_verify(const Opts& o) {
  qgt::ScanConfig cfg = make_scan_config(o);
  cfg.fd_verify = true;
  const qgt::ScanResult r = qgt::run_scan(cfg);
  if (!o.out.empty()) emit_scan(r, o);
  std::fprintf(stdout,
               "verified %zu of %zu cells: max residual %.3e (threshold "
               "%.0e)\n",
               r.fd.samples, r.row_count(), r.fd.max_residual,
               kVerifyThreshold);
  return r.fd.max_residual < kVerifyThreshold ? 0 : 4;
}

int cmd_integrate(const Opts& o) {
  const qgt::QuenchProtocol proto{o.mi, o.mf, o.j2};
  std::vector<double> times;
  if (o.t_points <= 1) {
    times.push_back(o.t_max);
  } else {
    for (int l = 0; l < o.t_points; ++l) {
      times.push_back(l == o.t_points - 1
                          ? o.t_max
                          : o.t_max * static_cast<double>(l) /
                                static_cast<double>(o.t_points - 1));
    }
  }
  std::string body;
  if (o.format == "json") {
    body = "{\"columns\":[\"t\",\"integral\"],\"rows\":[";
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double v = qgt::bz_integral_im_qkt(proto, times[i], o.k_points);
      if (i) body += ',';
      body += "[" + number(times[i]) + "," + number(v) + "]";
    }
    body += "]}";
  } else {
    body = "t,integral\n";
    for (double t : times) {
      const double v = qgt::bz_integral_im_qkt(proto, t, o.k_points);
      body += number(t) + "," + number(v) + "\n";
    }
  }
  emit(body, o.out, "integral report");
  return 0;
}

int cmd_peaks(const Opts& o) {
  const auto report =
      qgt::gtt_peak_report({qgt::QuenchProtocol{o.mi, o.mf, o.j2}}, o.k_points);
  const qgt::PeakEntry& e = report.front();
  std::string body;
  if (o.format == "json") {
    body = "{\"m_i\":" + number(e.proto.m_i) + ",\"m_f\":" +
           number(e.proto.m_f) + ",\"height\":" + number(e.height) +
           ",\"k_at_max\":" + number(e.k_at_max) + "}";
  } else {
    body = "m_i,m_f,height,k_at_max\n" + number(e.proto.m_i) + "," +
           number(e.proto.m_f) + "," + number(e.height) + "," +
           number(e.k_at_max) + "\n";
  }
  emit(body, o.out, "peak report");
  return 0;
}

const char* sign_name(qgt::SignClass s) {
  return s == qgt::SignClass::negative ? "negative" : "positive";
}

int cmd_diagnose(const Opts& o) {
  const qgt::SignDiagnostic sd =
      qgt::boundary_sign_diagnostic({o.mi, o.mf, o.j2});
  std::string body;
  if (o.format == "json") {
    body = std::string("{\"a_i_near_pi\":\"") + sign_name(sd.a_i_near_pi) +
           "\",\"d_negative_side\":\"" + sign_name(sd.d_negative_side) +
           "\",\"d_times_a_i\":\"" + sign_name(sd.d_times_a_i) +
           "\",\"initial_im_qkt_negative_side\":\"" +
           sign_name(sd.initial_im_qkt_negative_side) + "\"}";
  } else {
    body = std::string("a_i_near_pi: ") + sign_name(sd.a_i_near_pi) +
           "\nd_negative_side: " + sign_name(sd.d_negative_side) +
           "\nd_times_a_i: " + sign_name(sd.d_times_a_i) +
           "\ninitial_im_qkt_negative_side: " +
           sign_name(sd.initial_im_qkt_negative_side) + "\n";
  }
  emit(body, o.out, "sign diagnostic");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "post-quench quantum geometric tensor of the 1D SSH chain: grid "
      "scans, zone integrals, volatility peaks, sign diagnostics, and "
      "stencil verification"};
  app.set_version_flag("--version", qgt::tool_version);
  app.require_subcommand(1);

  Opts scan_o, verify_o, integrate_o, peaks_o, diagnose_o;

  CLI::App* scan = app.add_subcommand(
      "scan", "evaluate the closed-form tensor on a (k, t) grid");
  add_protocol_flags(scan, scan_o);
  add_grid_flags(scan, scan_o);
  scan->add_option("--components", scan_o.components,
                   "columns to export (default: all)")
      ->delimiter(',');
  add_output_flags(scan, scan_o);

  CLI::App* verify = app.add_subcommand(
      "verify",
      "scan plus a seeded finite-difference subsample; nonzero exit when the "
      "max residual reaches 1e-6");
  add_protocol_flags(verify, verify_o);
  add_grid_flags(verify, verify_o);
  verify->add_option("--components", verify_o.components,
                     "columns to export (default: all)")
      ->delimiter(',');
  verify->add_option("--fd-step", verify_o.fd_step,
                     "stencil step for the verification subsample");
  verify->add_option("--seed", verify_o.seed,
                     "selects the verification subsample");
  add_output_flags(verify, verify_o);

  CLI::App* integrate = app.add_subcommand(
      "integrate",
      "trapezoid integral of Im Q_kt over the zone at each time node");
  add_protocol_flags(integrate, integrate_o);
  add_grid_flags(integrate, integrate_o);
  add_output_flags(integrate, integrate_o);

  CLI::App* peaks = app.add_subcommand(
      "peaks", "height and location of the g_tt volatility peak");
  add_protocol_flags(peaks, peaks_o);
  peaks->add_option("--k-points", peaks_o.k_points,
                    "momentum nodes for the peak search");
  add_output_flags(peaks, peaks_o);

  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "sign structure of Im Q_kt near the zone boundary");
  add_protocol_flags(diagnose, diagnose_o);
  add_output_flags(diagnose, diagnose_o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (scan->parsed()) {
      apply_config_file(scan, scan_o);
      return cmd_scan(scan_o);
    }
    if (verify->parsed()) {
      apply_config_file(verify, verify_o);
      return cmd_verify(verify_o);
    }
    if (integrate->parsed()) {
      apply_config_file(integrate, integrate_o);
      return cmd_integrate(integrate_o);
    }
    if (peaks->parsed()) {
      apply_config_file(peaks, peaks_o);
      return cmd_peaks(peaks_o);
    }
    if (diagnose->parsed()) {
      apply_config_file(diagnose, diagnose_o);
      return cmd_diagnose(diagnose_o);
    }
  } catch (const qgt::ConfigInvalid& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const qgt::StepTooLarge& e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const qgt::GapClosed& e) {
    std::fprintf(stderr, "degenerate point: %s\n", e.what());
    return 3;
  } catch (const qgt::AtCriticalPoint& e) {
    std::fprintf(stderr, "degenerate point: %s\n", e.what());
    return 3;
  } catch (const qgt::DegenerateStencil& e) {
    std::fprintf(stderr, "degenerate point: %s\n", e.what());
    return 3;
  } catch (const qgt::DegenerateGrid& e) {
    std::fprintf(stderr, "degenerate grid: %s\n", e.what());
    return 3;
  } catch (const qgt::IoFailure& e) {
    std::fprintf(stderr, "i/o failure: %s\n", e.what());
    return 5;
  } catch (const qgt::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
