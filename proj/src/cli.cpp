// Copyright 2026 The lfspec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lfs/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lfs/errors.hpp"
#include "lfs/operators.hpp"
#include "lfs/seminorms.hpp"
#include "lfs/spectrum_zeta.hpp"

namespace lfs {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr const char* kOutputDirEnv = "LFSPEC_OUTPUT_DIR";

using json = nlohmann::ordered_json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  int p = 2, e = 1, f = 1;
  FieldParams params;

  // spectrum
  int m_max = 3;
  int n_max = 5;
  double root_tol = 1e-10;

  // validate
  int N = 10;
  int k = 8;
  double tol = 1e-6;
  double drift_tol = 1e-8;
  int seminorm_N = 8;
  double eq_tol = 1e-8;
  double hs_tol = 1e-12;
  int hs_m_max = 10;
  int M = 4;
  int field_N = 8;
  double fcase_drift_tol = 0.05;
  double corrupt = 0.0;
  std::string input;
  std::vector<std::string> checks;

  // zeta
  int n_roots = 20;
  std::vector<double> s_list;
  std::string s_range;
  double s_im = 0.0;
  std::string which = "DR";

  std::uint64_t seed = 0x5eedULL;
  std::string format = "json";
  std::string out_path;
};

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json header(const RunConfig& c) {
  json j;
  j["params"] = {{"p", c.p}, {"e", c.e}, {"f", c.f}};
  j["command"] = c.command;
  j["results"] = json::array();
  return j;
}

json meta(const RunConfig& c, json tolerances) {
  return json{{"version", kVersion}, {"seed", c.seed}, {"tolerances", std::move(tolerances)}};
}

struct Emission {
  std::string text;
  int code = kExitOk;
};

void write_output(const RunConfig& c, const std::string& text, std::ostream& out) {
  std::filesystem::path path;
  if (!c.out_path.empty()) {
    path = c.out_path;
  } else if (const char* dir = std::getenv(kOutputDirEnv); dir != nullptr && *dir != '\0') {
    path = std::filesystem::path(dir) / (c.command + "." + c.format);
  } else {
    out << text;
    out.flush();
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot open output file " + path.string());
  os << text;
  if (!os) throw ConfigError("write failed: " + path.string());
}

// ---- spectrum ----

Emission cmd_spectrum(const RunConfig& c) {
  const RootTable roots = find_roots(QSeriesContext::make(c.params, c.root_tol), c.n_max + 1);
  const SpectrumTable t = full_spectrum(c.params, c.m_max, c.n_max, roots);
  Emission em;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "m,n,lambda,value,multiplicity\n";
    for (const auto& r : t.entries) {
      os << r.m << ',' << r.n << ',' << fmt17(r.lambda) << ',' << fmt17(r.value) << ',' << r.multiplicity << '\n';
    }
    em.text = os.str();
  } else {
    json j = header(c);
    for (const auto& r : t.entries) {
      j["results"].push_back(
          {{"m", r.m}, {"n", r.n}, {"lambda", r.lambda}, {"value", r.value}, {"multiplicity", r.multiplicity}});
    }
    j["meta"] = meta(c, {{"root_residual", c.root_tol}});
    j["meta"]["m_max"] = c.m_max;
    j["meta"]["n_max"] = c.n_max;
    em.text = j.dump(2) + "\n";
  }
  return em;
}

// ---- validate ----

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  json details = json::object();
};

void spectrum_checks(const RunConfig& c, std::vector<Check>& out, bool& numerical_failure) {
  ValidationOptions opt;
  opt.k = c.k;
  opt.tol = c.tol;
  opt.drift_tol = c.drift_tol;
  opt.corrupt = c.corrupt;
  opt.seed = c.seed;
  const SpectrumValidation v = validate_spectrum(c.params, c.N, opt);
  if (!v.converged && v.error.rfind("cutoff", 0) != 0) numerical_failure = true;

  Check values{"spectrum_values", v.max_rel_error, v.tol, v.values_ok()};
  values.details["N"] = v.N;
  values.details["k"] = v.k;
  values.details["cutoff"] = v.cutoff;
  if (!v.error.empty()) values.details["error"] = v.error;
  values.details["matrix"] = v.matrix_values;
  values.details["analytic"] = v.analytic_values;
  values.details["analytic_m"] = v.analytic_m;
  values.details["analytic_n"] = v.analytic_n;
  out.push_back(values);

  Check mult{"spectrum_multiplicities", v.multiplicity_match ? 0.0 : 1.0, 0.0, v.error.empty() && v.multiplicity_match};
  mult.details["matrix_clusters"] = v.matrix_clusters;
  mult.details["analytic_clusters"] = v.analytic_clusters;
  out.push_back(mult);

  if (v.drift_checked) {
    Check drift{"spectrum_drift_N_vs_N+2", v.drift, v.drift_tol, v.drift_ok()};
    drift.details["N"] = v.N;
    drift.details["lowest_at_N"] = v.matrix_values.empty() ? json(nullptr) : json(v.matrix_values.front());
    out.push_back(drift);
  }
}

void seminorm_checks(const RunConfig& c, std::vector<Check>& out) {
  const TreeWindow w = TreeWindow::ring(c.params, c.seminorm_N);
  for (const TestFunction& a : testfn_library(c.params, c.seed)) {
    const SeminormReport r = check_norm_comparison(a, w, c.eq_tol);
    Check ch{"seminorm:" + r.id, std::abs(r.LD_formula_depthN - r.commutator_norm_depthN), c.eq_tol, r.pass()};
    ch.details["N"] = r.N;
    ch.details["L1"] = r.L1_depthN;
    ch.details["LD"] = r.LD_formula_depthN;
    ch.details["LD_displayed"] = r.LD_displayed_depthN;
    ch.details["commutator_norm"] = r.commutator_norm_depthN;
    ch.details["lower_const"] = r.bounds.lower;
    ch.details["upper_const"] = r.bounds.upper;
    ch.details["lower_ok"] = r.lower_ok;
    ch.details["upper_ok"] = r.upper_ok;
    ch.details["equality_ok"] = r.equality_ok;
    out.push_back(std::move(ch));
  }
}

void hs_checks(const RunConfig& c, std::vector<Check>& out) {
  for (int m = 0; m <= c.hs_m_max; ++m) {
    const double closed = hs_norm_Dg_inverse(m, c.params);
    const double direct = hs_norm_Dg_inverse_direct(m, c.params);
    const double rel = std::abs(direct - closed) / closed;
    Check ch{"hs_block_m" + std::to_string(m), rel, c.hs_tol, rel <= c.hs_tol};
    ch.details["closed"] = closed;
    ch.details["direct"] = direct;
    out.push_back(std::move(ch));
  }
}

void fcase_checks(const RunConfig& c, std::vector<Check>& out) {
  TestFunction a;
  a.id = "inv_1p_abs_sq";
  const FieldParams pr = c.params;
  a.eval = [pr](const Center& x) { return 1.0 / (1.0 + std::pow(norm(pr, x), 2)); };
  a.decay_alpha = 2.0;
  a.decay_constant = 1.0;
  const TreeWindow w0 = TreeWindow::field(c.params, c.M, c.field_N);
  const TreeWindow w1 = TreeWindow::field(c.params, c.M + 1, c.field_N + 1);
  const double h0 = hs_norm(kernel_rho_a_DFinv(w0, a));
  const double h1 = hs_norm(kernel_rho_a_DFinv(w1, a));
  const double drift = std::abs(h1 - h0) / h1;
  Check ch{"fcase_hs_drift", drift, c.fcase_drift_tol, drift < c.fcase_drift_tol};
  ch.details["window"] = {c.M, c.field_N};
  ch.details["hs"] = h0;
  ch.details["hs_next"] = h1;
  out.push_back(std::move(ch));
}

void roundtrip_check(const RunConfig& c, std::vector<Check>& out) {
  std::ifstream is(c.input, std::ios::binary);
  if (!is) throw ConfigError("cannot read --input " + c.input);
  json in;
  try {
    in = json::parse(is);
  } catch (const json::exception& ex) {
    throw ConfigError("--input is not valid JSON: " + std::string(ex.what()));
  }
  if (!in.contains("command") || in["command"] != "spectrum" || !in.contains("params") || !in.contains("results")) {
    throw ConfigError("--input is not a spectrum JSON document");
  }
  const auto& ps = in["params"];
  const FieldParams pr = FieldParams::make(ps.at("p").get<int>(), ps.at("e").get<int>(), ps.at("f").get<int>());
  int m_max = 0, n_max = 0;
  for (const auto& r : in["results"]) {
    m_max = std::max(m_max, r.at("m").get<int>());
    n_max = std::max(n_max, r.at("n").get<int>());
  }
  const SpectrumTable t = full_spectrum(pr, m_max, n_max, find_roots(QSeriesContext::make(pr, c.root_tol), n_max + 1));
  double max_diff = 0.0;
  bool same = in["results"].size() == t.entries.size();
  for (std::size_t i = 0; same && i < t.entries.size(); ++i) {
    const auto& r = in["results"][i];
    const SpectrumEntry& s = t.entries[i];
    same = r.at("m").get<int>() == s.m && r.at("n").get<int>() == s.n &&
           r.at("multiplicity").get<std::uint64_t>() == s.multiplicity;
    max_diff = std::max({max_diff, std::abs(r.at("value").get<double>() - s.value),
                         std::abs(r.at("lambda").get<double>() - s.lambda)});
  }
  Check ch{"roundtrip_spectrum", max_diff, 0.0, same && max_diff == 0.0};
  ch.details["input"] = c.input;
  ch.details["rows"] = in["results"].size();
  out.push_back(std::move(ch));
}

Emission cmd_validate(const RunConfig& c) {
  std::vector<std::string> checks = c.checks;
  if (checks.empty()) {
    checks = {"spectrum", "seminorm", "hs"};
    if (!c.input.empty()) checks.push_back("roundtrip");
  }
  std::vector<Check> results;
  bool numerical_failure = false;
  for (const std::string& name : checks) {
    if (name == "spectrum") {
      spectrum_checks(c, results, numerical_failure);
    } else if (name == "seminorm") {
      seminorm_checks(c, results);
    } else if (name == "hs") {
      hs_checks(c, results);
    } else if (name == "fcase") {
      fcase_checks(c, results);
    } else if (name == "roundtrip") {
      if (c.input.empty()) throw ConfigError("check 'roundtrip' needs --input");
      roundtrip_check(c, results);
    }
  }
  const bool all = std::all_of(results.begin(), results.end(), [](const Check& ch) { return ch.pass; });

  Emission em;
  em.code = numerical_failure ? kExitNumerical : (all ? kExitOk : kExitValidation);
  if (c.format == "csv") {
    std::ostringstream os;
    os << "check,measured,tolerance,pass\n";
    for (const auto& ch : results) {
      os << ch.name << ',' << fmt17(ch.measured) << ',' << fmt17(ch.tolerance) << ',' << (ch.pass ? 1 : 0) << '\n';
    }
    em.text = os.str();
  } else {
    json j = header(c);
    for (const auto& ch : results) {
      j["results"].push_back({{"check", ch.name},
                              {"measured", num(ch.measured)},
                              {"tolerance", ch.tolerance},
                              {"pass", ch.pass},
                              {"details", ch.details}});
    }
    j["meta"] = meta(c, {{"spectrum_rel", c.tol},
                         {"drift", c.drift_tol},
                         {"seminorm_equality", c.eq_tol},
                         {"hs_block", c.hs_tol},
                         {"fcase_drift", c.fcase_drift_tol}});
    j["meta"]["all_pass"] = all;
    em.text = j.dump(2) + "\n";
  }
  return em;
}

// ---- zeta ----

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("--s-re-range expects a:b:step, got '" + text + "'");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw ConfigError("--s-re-range expects a:b:step with a <= b and step > 0, got '" + text + "'");
  }
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
  if (count > 100000) throw ConfigError("--s-re-range produces too many points");
  for (long i = 0; i <= count; ++i) out.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return out;
}

Emission cmd_zeta(const RunConfig& c) {
  std::vector<double> re = c.s_list;
  if (!c.s_range.empty()) {
    const std::vector<double> r = parse_range(c.s_range);
    re.insert(re.end(), r.begin(), r.end());
  }
  if (re.empty()) re = {1, 2, 3, 4, 5, 6, 7, 8};
  for (double x : re) {
    if (!(x > 0.0)) throw ConfigError("zeta: Re(s) > 0 required, got " + fmt17(x));
  }
  const RootTable roots = find_roots(QSeriesContext::make(c.params, c.root_tol), c.n_roots);

  std::vector<ZetaValue> rows;
  for (double x : re) {
    const std::complex<double> s(x, c.s_im);
    rows.push_back(c.which == "D0" ? zeta_D0(c.params, s, roots, c.n_roots) : zeta_DR(c.params, s, roots, c.n_roots));
  }

  Emission em;
  if (c.format == "csv") {
    std::ostringstream os;
    os << "re_s,im_s,re_zeta,im_zeta,tail_bound,n_roots_used,pole\n";
    for (const auto& z : rows) {
      os << fmt17(z.s.real()) << ',' << fmt17(z.s.imag()) << ',' << fmt17(z.value.real()) << ','
         << fmt17(z.value.imag()) << ',' << fmt17(z.tail_bound) << ',' << z.n_roots_used << ','
         << (z.pole ? "pole" : "") << '\n';
    }
    em.text = os.str();
  } else {
    json j = header(c);
    for (const auto& z : rows) {
      j["results"].push_back({{"re_s", z.s.real()},
                              {"im_s", z.s.imag()},
                              {"re_zeta", num(z.value.real())},
                              {"im_zeta", num(z.value.imag())},
                              {"tail_bound", num(z.tail_bound)},
                              {"n_roots_used", z.n_roots_used},
                              {"pole", z.pole}});
    }
    j["meta"] = meta(c, {{"root_residual", c.root_tol}, {"pole_detection", 1e-12}});
    j["meta"]["which"] = c.which;
    em.text = j.dump(2) + "\n";
  }
  return em;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--p", c.p, "residue characteristic (prime)")->capture_default_str();
  sub->add_option("--e", c.e, "ramification index")->capture_default_str();
  sub->add_option("--f", c.f, "residue degree")->capture_default_str();
  sub->add_option("--seed", c.seed, "RNG seed")->capture_default_str();
  sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  sub->add_option("--out", c.out_path, "output file (default: $" + std::string(kOutputDirEnv) + "/<command>.<ext> or stdout)");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"lfspec: spectra, seminorms and zeta functions of tree derivative operators on local fields"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CLI::App* spectrum = app.add_subcommand("spectrum", "eigenvalue table p^(2m/e) lambda_n with multiplicities");
  add_common(spectrum, c);
  spectrum->add_option("--m-max", c.m_max)->check(CLI::NonNegativeNumber)->capture_default_str();
  spectrum->add_option("--n-max", c.n_max)->check(CLI::Range(0, 200))->capture_default_str();
  spectrum->add_option("--tol", c.root_tol, "root residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  CLI::App* validate = app.add_subcommand("validate", "cross-checks of operators against closed forms");
  add_common(validate, c);
  validate->add_option("--N", c.N, "ring depth for the spectrum check")->check(CLI::Range(1, 40))->capture_default_str();
  validate->add_option("--k", c.k, "number of lowest eigenvalues")->check(CLI::Range(1, 200))->capture_default_str();
  validate->add_option("--tol", c.tol, "relative eigenvalue tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  validate->add_option("--drift-tol", c.drift_tol)->check(CLI::PositiveNumber)->capture_default_str();
  validate->add_option("--seminorm-N", c.seminorm_N)->check(CLI::Range(1, 40))->capture_default_str();
  validate->add_option("--hs-tol", c.hs_tol)->check(CLI::PositiveNumber)->capture_default_str();
  validate->add_option("--M", c.M, "field window lower depth (fcase check)")->check(CLI::Range(0, 20))->capture_default_str();
  validate->add_option("--field-N", c.field_N, "field window upper depth (fcase check)")
      ->check(CLI::Range(0, 30))
      ->capture_default_str();
  validate->add_option("--checks", c.checks, "subset of spectrum,seminorm,hs,fcase,roundtrip")
      ->delimiter(',')
      ->check(CLI::IsMember({"spectrum", "seminorm", "hs", "fcase", "roundtrip"}));
  validate->add_option("--input", c.input, "spectrum JSON to re-derive and compare");
  validate->add_option("--corrupt", c.corrupt, "relative perturbation of the lowest eigenvalue (test mode)");

  CLI::App* zeta = app.add_subcommand("zeta", "zeta function of D^R on an s-grid");
  add_common(zeta, c);
  zeta->add_option("--n-roots", c.n_roots)->check(CLI::Range(1, 200))->capture_default_str();
  zeta->add_option("--s", c.s_list, "real parts, comma separated")->delimiter(',');
  zeta->add_option("--s-re-range", c.s_range, "real parts a:b:step");
  zeta->add_option("--s-im", c.s_im, "imaginary part of every grid point")->capture_default_str();
  zeta->add_option("--which", c.which, "DR or D0")->check(CLI::IsMember({"DR", "D0"}))->capture_default_str();
  zeta->add_option("--tol", c.root_tol, "root residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "lfspec: " << ex.what() << '\n';
    return kExitConfig;
  }

  try {
    c.params = FieldParams::make(c.p, c.e, c.f);
    Emission em;
    if (spectrum->parsed()) {
      c.command = "spectrum";
      em = cmd_spectrum(c);
    } else if (validate->parsed()) {
      c.command = "validate";
      em = cmd_validate(c);
    } else {
      c.command = "zeta";
      em = cmd_zeta(c);
    }
    write_output(c, em.text, out);
    return em.code;
  } catch (const ConfigError& ex) {
    err << "lfspec: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& ex) {
    err << "lfspec: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& ex) {
    err << "lfspec: numerical failure: " << ex.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& ex) {
    err << "lfspec: numerical failure: " << ex.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace lfs
