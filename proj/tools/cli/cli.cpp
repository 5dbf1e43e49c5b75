#include "cli.hpp"

#include <absolve/absolve.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace absolve_cli {
namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StatusError : std::runtime_error {
  absolve_status status;
  StatusError(absolve_status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

void check(absolve_status st) {
  if (st != ABSOLVE_OK) throw StatusError(st, absolve_last_error());
}

int exit_code_for(absolve_status st) {
  if (st == ABSOLVE_ERR_INVALID_ARGUMENT) return kExitUsage;
  return kExitFailure;
}

std::string fmt(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trim_plus(const std::string& s) {
  return (!s.empty() && s.front() == '+') ? s.substr(1) : s;
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string s = trim_plus(text);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v))
    throw UsageError(what + ": '" + text + "' is not a finite number");
  return v;
}

long long parse_integer(const std::string& text, const std::string& what) {
  const std::string s = trim_plus(text);
  long long v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw UsageError(what + ": '" + text + "' is not an integer");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

// "0,2,5", "-5..-1" or mixtures such as "0,3..5". Sorted, duplicates removed.
std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_integer(item, what)));
      continue;
    }
    const long long lo = parse_integer(item.substr(0, dots), what);
    const long long hi = parse_integer(item.substr(dots + 2), what);
    if (lo > hi) throw UsageError(what + ": empty range '" + item + "'");
    if (hi - lo > 100000) throw UsageError(what + ": range '" + item + "' is too long");
    for (long long v = lo; v <= hi; ++v) out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw UsageError(what + ": empty list");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> parse_spins(const std::string& text) {
  if (text == "both") return {-1, 1};
  auto spins = parse_int_list(text, "--spin");
  for (int s : spins)
    if (s != 1 && s != -1) throw UsageError("--spin: values must be +1, -1 or 'both'");
  return spins;
}

std::vector<absolve_branch> parse_branches(const std::string& text) {
  if (text == "regular") return {ABSOLVE_BRANCH_REGULAR};
  if (text == "irregular") return {ABSOLVE_BRANCH_IRREGULAR};
  if (text == "both") return {ABSOLVE_BRANCH_REGULAR, ABSOLVE_BRANCH_IRREGULAR};
  throw UsageError("--branch must be regular, irregular or both");
}

const char* branch_name(absolve_branch b) {
  return b == ABSOLVE_BRANCH_IRREGULAR ? "irregular" : "regular";
}

absolve_lambda parse_lambda(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "inf" || t == "+inf" || t == "infinity" || t == "+infinity") return {0.0, 1};
  return {parse_double(text, "--lambda"), 0};
}

std::string lambda_text(const absolve_lambda& l) {
  return l.is_infinite ? std::string("inf") : fmt(l.value);
}

struct ScanSpec {
  std::string var = "none";
  double start = 0.0;
  double stop = 0.0;
  int steps = 1;

  double value(int i) const {
    if (steps == 1) return start;
    if (i == steps - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
};

ScanSpec parse_scan(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 4) throw UsageError("--scan expects var:start:stop:steps");
  ScanSpec spec;
  spec.var = parts[0];
  if (spec.var != "flux" && spec.var != "omega" && spec.var != "m")
    throw UsageError("--scan variable must be flux, omega or m");
  spec.start = parse_double(parts[1], "--scan start");
  spec.stop = parse_double(parts[2], "--scan stop");
  const long long steps = parse_integer(parts[3], "--scan steps");
  if (steps < 2 || steps > 10000000) throw UsageError("--scan steps must be in [2, 1e7]");
  spec.steps = static_cast<int>(steps);
  if (!(spec.start < spec.stop)) throw UsageError("--scan needs start < stop");
  if (spec.var == "m") {
    if (spec.start != std::floor(spec.start) || spec.stop != std::floor(spec.stop))
      throw UsageError("--scan m needs integer start and stop");
    const double span = spec.stop - spec.start;
    if (std::fmod(span, static_cast<double>(spec.steps - 1)) != 0.0)
      throw UsageError("--scan m needs (stop - start) divisible by (steps - 1)");
  }
  return spec;
}

struct Physics {
  double mass = 1.0;
  double hbar = 1.0;
  double eta = 1.0;
  double omega = 0.0;
  double flux = 0.0;
};

void add_physics(CLI::App* cmd, Physics& p) {
  cmd->add_option("--mass", p.mass, "particle mass")->capture_default_str();
  cmd->add_option("--hbar", p.hbar, "reduced Planck constant")->capture_default_str();
  cmd->add_option("--eta", p.eta, "Coulomb strength, V = -eta/r")->capture_default_str();
  cmd->add_option("--omega", p.omega, "rotation frequency")->capture_default_str();
  cmd->add_option("--flux", p.flux, "Aharonov-Bohm flux in flux quanta")->capture_default_str();
}

class Model {
 public:
  explicit Model(const Physics& p) {
    const absolve_params params{p.mass, p.hbar, p.eta, p.omega};
    check(absolve_model_create(&params, p.flux, &handle_));
  }
  ~Model() { absolve_model_destroy(handle_); }
  Model(const Model&) = delete;
  Model& operator=(const Model&) = delete;
  const absolve_model* get() const { return handle_; }

 private:
  absolve_model* handle_ = nullptr;
};

struct ProfileHandle {
  absolve_profile* p = nullptr;
  ~ProfileHandle() { absolve_profile_destroy(p); }
};

std::string write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    out.flush();
    return {};
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return "cannot open '" + path + "' for writing";
  f << text;
  f.flush();
  if (!f) return "failed writing '" + path + "'";
  return {};
}

// spectrum / scan ----------------------------------------------------------

struct Row {
  double scan_value = 0.0;
  int n = 1;
  int m = 0;
  int s = 1;
  std::string branch;
  double energy = 0.0;
  double kappa = 0.0;
  bool exists = false;
};

struct PointResult {
  std::vector<Row> rows;
  std::size_t sector_rows = 0;
  absolve_status status = ABSOLVE_OK;
  std::string message;
};

struct SpectrumArgs {
  Physics phys;
  std::string m = "0";
  std::string n = "1";
  std::string spin = "+1";
  std::string branch = "regular";
  std::string scan;
  std::string out;
  std::string format = "csv";
  bool strict = false;
  unsigned threads = 0;
};

PointResult evaluate_point(const SpectrumArgs& args, const ScanSpec& scan, int index,
                           const std::vector<int>& ns, const std::vector<int>& ms,
                           const std::vector<int>& spins,
                           const std::vector<absolve_branch>& branches) {
  PointResult res;
  Physics phys = args.phys;
  const double value = scan.value(index);
  std::vector<int> point_ms = ms;
  if (scan.var == "flux") phys.flux = value;
  if (scan.var == "omega") phys.omega = value;
  if (scan.var == "m") point_ms = {static_cast<int>(value)};
  try {
    Model model(phys);
    for (int n : ns)
      for (int m : point_ms)
        for (int s : spins)
          for (absolve_branch b : branches) {
            Row row;
            row.scan_value = value;
            row.n = n;
            row.m = m;
            row.s = s;
            row.branch = branch_name(b);
            absolve_level level{};
            const absolve_status st = absolve_energy(model.get(), {n, m, s, b}, &level);
            if (st == ABSOLVE_ERR_SECTOR && !args.strict) {
              row.energy = std::numeric_limits<double>::quiet_NaN();
              row.kappa = std::numeric_limits<double>::quiet_NaN();
              row.exists = false;
              ++res.sector_rows;
            } else if (st != ABSOLVE_OK) {
              res.status = st;
              res.message = absolve_last_error();
              return res;
            } else {
              row.energy = level.energy;
              row.kappa = level.kappa;
              row.exists = level.exists != 0;
            }
            res.rows.push_back(std::move(row));
          }
  } catch (const StatusError& e) {
    res.status = e.status;
    res.message = e.what();
  }
  return res;
}

std::string render_rows(const std::vector<Row>& rows, const std::string& scan_var,
                        const std::string& format) {
  std::string text;
  if (format == "json") {
    nlohmann::ordered_json doc;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      doc["rows"].push_back({{"scan_var", scan_var},
                             {"scan_value", r.scan_value},
                             {"n", r.n},
                             {"m", r.m},
                             {"s", r.s},
                             {"branch", r.branch},
                             {"energy", r.energy},
                             {"kappa", r.kappa},
                             {"exists", r.exists}});
    return doc.dump(2) + "\n";
  }
  text = "scan_var,scan_value,n,m,s,branch,energy,kappa,exists\n";
  for (const auto& r : rows) {
    text += scan_var;
    text += ',' + fmt(r.scan_value) + ',' + std::to_string(r.n) + ',' + std::to_string(r.m) +
            ',' + std::to_string(r.s) + ',' + r.branch + ',' + fmt(r.energy) + ',' +
            fmt(r.kappa) + ',' + (r.exists ? "true" : "false") + '\n';
  }
  return text;
}

int run_spectrum(const SpectrumArgs& args, bool require_scan, std::ostream& out,
                 std::ostream& err) {
  if (require_scan && args.scan.empty()) throw UsageError("scan requires --scan var:start:stop:steps");
  if (args.format != "csv" && args.format != "json")
    throw UsageError("--format must be csv or json");
  const ScanSpec scan = args.scan.empty() ? ScanSpec{} : parse_scan(args.scan);
  const auto ns = parse_int_list(args.n, "--n");
  for (int n : ns)
    if (n < 1) throw UsageError("--n: principal quantum number must be >= 1");
  const auto ms = parse_int_list(args.m, "--m");
  const auto spins = parse_spins(args.spin);
  const auto branches = parse_branches(args.branch);

  std::vector<PointResult> results(static_cast<std::size_t>(scan.steps));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < scan.steps; i = next++)
      results[static_cast<std::size_t>(i)] =
          evaluate_point(args, scan, i, ns, ms, spins, branches);
  };
  unsigned threads = args.threads ? args.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(scan.steps));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<Row> rows;
  std::size_t sector_rows = 0;
  for (const auto& r : results) {
    if (r.status != ABSOLVE_OK) {
      err << "error: " << r.message << "\n";
      if (r.status == ABSOLVE_ERR_SECTOR) return kExitSector;
      return exit_code_for(r.status);
    }
    sector_rows += r.sector_rows;
    rows.insert(rows.end(), r.rows.begin(), r.rows.end());
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.scan_value, a.n, a.m, a.s, a.branch) <
           std::tie(b.scan_value, b.n, b.m, b.s, b.branch);
  });
  if (sector_rows > 0)
    err << "note: " << sector_rows
        << " irregular row(s) have |j| >= 1/2 and are reported with exists=false\n";

  const std::string problem = write_output(args.out, render_rows(rows, scan.var, args.format), out);
  if (!problem.empty()) {
    err << "error: " << problem << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// secular / wavefunction / oracle -----------------------------------------

struct SecularArgs {
  Physics phys;
  std::string m = "0";
  std::string spin = "+1";
  std::string lambda = "0";
  int count = 5;
  std::string out;
};

int run_secular(const SecularArgs& args, std::ostream& out, std::ostream& err) {
  const int m = static_cast<int>(parse_integer(args.m, "--m"));
  const auto spins = parse_spins(args.spin);
  if (spins.size() != 1) throw UsageError("secular takes a single --spin");
  if (args.count < 1 || args.count > 10000) throw UsageError("--count must be in [1, 10000]");
  const absolve_lambda lambda = parse_lambda(args.lambda);
  Model model(args.phys);
  std::vector<absolve_root> roots(static_cast<std::size_t>(args.count));
  std::size_t found = 0;
  check(absolve_solve_secular(model.get(), m, spins.front(), lambda, roots.size(), roots.data(),
                              &found));
  const double j = absolve_effective_j(m, args.phys.flux);
  std::string text = "index,lambda,j,kappa,energy,residual\n";
  for (std::size_t i = 0; i < found; ++i)
    text += std::to_string(roots[i].index) + ',' + lambda_text(lambda) + ',' + fmt(j) + ',' +
            fmt(roots[i].kappa) + ',' + fmt(roots[i].energy) + ',' + fmt(roots[i].residual) + '\n';
  if (found == 0) err << "note: no bound states for these parameters\n";
  const std::string problem = write_output(args.out, text, out);
  if (!problem.empty()) {
    err << "error: " << problem << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

struct WaveArgs {
  Physics phys;
  std::string m = "0";
  std::string lambda = "0";
  int index = 1;
  int points = 2000;
  std::string out;
};

int run_wavefunction(const WaveArgs& args, std::ostream& out, std::ostream& err) {
  const int m = static_cast<int>(parse_integer(args.m, "--m"));
  if (args.index < 1) throw UsageError("--index must be >= 1");
  if (args.points < 2) throw UsageError("--points must be >= 2");
  const absolve_lambda lambda = parse_lambda(args.lambda);
  Model model(args.phys);
  ProfileHandle prof;
  check(absolve_bound_state_profile(model.get(), m, lambda, args.index,
                                    static_cast<std::size_t>(args.points), &prof.p));
  const std::size_t size = absolve_profile_size(prof.p);
  std::vector<double> r(size), f(size);
  check(absolve_profile_samples(prof.p, r.data(), f.data(), size));
  double kappa = 0.0, norm = 0.0, residual = 0.0;
  int nodes = 0;
  check(absolve_profile_stats(prof.p, &kappa, &norm, &nodes));
  check(absolve_profile_boundary(prof.p, nullptr, nullptr, &residual));

  std::string text = "r,F\n";
  for (std::size_t i = 0; i < size; ++i) text += fmt(r[i]) + ',' + fmt(f[i]) + '\n';
  err << "kappa=" << fmt(kappa) << " norm=" << fmt(norm) << " nodes=" << nodes
      << " boundary_residual=" << fmt(residual) << "\n";
  const std::string problem = write_output(args.out, text, out);
  if (!problem.empty()) {
    err << "error: " << problem << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

struct OracleArgs {
  Physics phys;
  std::string m = "0";
  int n = 3;
  std::string out;
};

int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  const int m = static_cast<int>(parse_integer(args.m, "--m"));
  if (args.n < 1 || args.n > 50) throw UsageError("--n must be in [1, 50] for the oracle");
  Model model(args.phys);
  std::vector<double> kappas(static_cast<std::size_t>(args.n));
  std::size_t found = 0;
  check(absolve_oracle_regular(model.get(), m, kappas.size(), kappas.data(), &found));
  std::string text = "n,kappa,closed_form_kappa,rel_error\n";
  for (std::size_t i = 0; i < found; ++i) {
    absolve_level level{};
    const int n = static_cast<int>(i) + 1;
    check(absolve_energy(model.get(), {n, m, 1, ABSOLVE_BRANCH_REGULAR}, &level));
    const double rel = std::fabs(kappas[i] - level.kappa) / level.kappa;
    text += std::to_string(n) + ',' + fmt(kappas[i]) + ',' + fmt(level.kappa) + ',' + fmt(rel) +
            '\n';
  }
  const std::string problem = write_output(args.out, text, out);
  if (!problem.empty()) {
    err << "error: " << problem << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

// verify ------------------------------------------------------------------

struct VerifyArgs {
  std::string only;
  bool inject = false;
  double gamma_fault = 0.0;
  std::string out;
};

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const double fault = args.gamma_fault != 0.0 ? args.gamma_fault : (args.inject ? 1e-3 : 0.0);
  const char* only = args.only.empty() ? nullptr : args.only.c_str();
  std::vector<char> buf(1 << 16);
  std::size_t needed = 0;
  int all_pass = 0;
  absolve_status st = absolve_verify(only, fault, buf.data(), buf.size(), &needed, &all_pass);
  if (st == ABSOLVE_ERR_BUFFER_TOO_SMALL) {
    buf.resize(needed);
    st = absolve_verify(only, fault, buf.data(), buf.size(), &needed, &all_pass);
  }
  check(st);
  std::string text(buf.data());
  text += '\n';
  const auto report = nlohmann::json::parse(text);
  for (const auto& c : report["checks"])
    if (!c["pass"].get<bool>()) err << "FAIL " << c["name"].get<std::string>() << "\n";
  const std::string problem = write_output(args.out, text, out);
  if (!problem.empty()) {
    err << "error: " << problem << "\n";
    return kExitFailure;
  }
  return all_pass ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bound states in an Aharonov-Bohm flux with Coulomb potential in a rotating frame",
               "absolve-cli"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(absolve_version()));

  SpectrumArgs spec_args;
  SpectrumArgs scan_args;
  auto add_spectrum = [](CLI::App* cmd, SpectrumArgs& a) {
    add_physics(cmd, a.phys);
    cmd->add_option("--m", a.m, "azimuthal numbers: list or range, e.g. 0,1 or -5..-1")
        ->capture_default_str();
    cmd->add_option("--n", a.n, "principal numbers: list or range")->capture_default_str();
    cmd->add_option("--spin,--s", a.spin, "spin projection: +1, -1 or both")
        ->capture_default_str();
    cmd->add_option("--branch", a.branch, "regular, irregular or both")->capture_default_str();
    cmd->add_option("--scan", a.scan, "var:start:stop:steps with var in {flux, omega, m}");
    cmd->add_option("--out", a.out, "output file (default: standard output)");
    cmd->add_option("--format", a.format, "csv or json")->capture_default_str();
    cmd->add_flag("--strict", a.strict, "fail with exit code 3 on sector violations");
    cmd->add_option("--threads", a.threads, "worker threads (0 = hardware concurrency)");
  };
  auto* spectrum = app.add_subcommand("spectrum", "closed-form levels at one point or over a scan");
  add_spectrum(spectrum, spec_args);
  auto* scan = app.add_subcommand("scan", "closed-form levels over --scan, written as CSV or JSON");
  add_spectrum(scan, scan_args);

  SecularArgs sec_args;
  auto* secular = app.add_subcommand("secular", "roots of the secular equation for one m");
  add_physics(secular, sec_args.phys);
  secular->add_option("--m", sec_args.m)->capture_default_str();
  secular->add_option("--spin,--s", sec_args.spin, "spin used for the energy column")
      ->capture_default_str();
  secular->add_option("--lambda", sec_args.lambda, "extension parameter, a number or inf")
      ->capture_default_str();
  secular->add_option("--count", sec_args.count, "number of roots")->capture_default_str();
  secular->add_option("--out", sec_args.out);

  WaveArgs wave_args;
  auto* wave = app.add_subcommand("wavefunction", "sampled radial bound state F(r)");
  add_physics(wave, wave_args.phys);
  wave->add_option("--m", wave_args.m)->capture_default_str();
  wave->add_option("--lambda", wave_args.lambda)->capture_default_str();
  wave->add_option("--index", wave_args.index, "root index, 1 = most bound")
      ->capture_default_str();
  wave->add_option("--points", wave_args.points)->capture_default_str();
  wave->add_option("--out", wave_args.out);

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "finite-difference regular spectrum");
  add_physics(oracle, oracle_args.phys);
  oracle->add_option("--m", oracle_args.m)->capture_default_str();
  oracle->add_option("--n", oracle_args.n, "number of levels")->capture_default_str();
  oracle->add_option("--out", oracle_args.out);

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "invariant suite with a JSON report");
  verify->add_option("--only", verify_args.only,
                     "specfun, model, spectrum, secular, wavefunction or oracle");
  verify->add_flag("--inject-gamma-fault", verify_args.inject, "perturb Gamma by 1e-3");
  verify->add_option("--gamma-fault", verify_args.gamma_fault, "perturb Gamma by this amount");
  verify->add_option("--out", verify_args.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*spectrum) return run_spectrum(spec_args, false, out, err);
    if (*scan) return run_spectrum(scan_args, true, out, err);
    if (*secular) return run_secular(sec_args, out, err);
    if (*wave) return run_wavefunction(wave_args, out, err);
    if (*oracle) return run_oracle(oracle_args, out, err);
    if (*verify) return run_verify(verify_args, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const StatusError& e) {
    err << "error: " << absolve_status_string(e.status) << ": " << e.what() << "\n";
    if (e.status == ABSOLVE_ERR_SECTOR) return kExitSector;
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace absolve_cli
