// critgap command-line front end.
//
// Exit codes: 0 success, 1 failed check or numerical failure, 2 usage error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "critgap/critgap.hpp"
#include "critgap/io.hpp"
#include "critgap/validation.hpp"

using namespace critgap;
using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

// "v", "v1,v2,..." or "start:stop:n" (n points, both ends included).
std::vector<double> parse_values(const std::string& spec, const std::string& flag) {
  std::vector<double> out;
  try {
    if (spec.find(':') != std::string::npos) {
      std::vector<std::string> parts;
      std::stringstream ss(spec);
      std::string p;
      while (std::getline(ss, p, ':')) parts.push_back(p);
      if (parts.size() != 3) throw UsageError(flag + ": expected start:stop:n");
      const double lo = std::stod(parts[0]);
      const double hi = std::stod(parts[1]);
      const int n = std::stoi(parts[2]);
      if (n < 1) throw UsageError(flag + ": n must be >= 1");
      for (int i = 0; i < n; ++i) out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
      return out;
    }
    std::stringstream ss(spec);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      out.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw UsageError(flag + ": bad number '" + cell + "'");
    }
  } catch (const std::invalid_argument&) {
    throw UsageError(flag + ": bad value list '" + spec + "'");
  } catch (const std::out_of_range&) {
    throw UsageError(flag + ": value out of range in '" + spec + "'");
  }
  if (out.empty()) throw UsageError(flag + ": empty value list");
  return out;
}

Resolution resolution_preset(const std::string& name) {
  Resolution r;
  if (name == "coarse") return r.halved();
  if (name == "fine") {
    r.gamma_panels = 24;
    r.halfline_panels = 12;
    r.line_scale = 3.0;
  }
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << text;
}

// ---------------------------------------------------------------------------

struct KernelArgs {
  double alpha = 1.0;
  std::string x = "0", y = "0";
  bool grid = false;
  std::vector<int> finite;
  bool centered = false;
  std::string resolution = "default";
  std::string format = "csv";
  std::string output;
};

int run_kernel(const KernelArgs& k) {
  const std::vector<double> xs = parse_values(k.x, "--x");
  const std::vector<double> ys = parse_values(k.y, "--y");
  const bool finite = !k.finite.empty();
  if (k.centered && !finite) throw UsageError("--centered requires --finite N M");
  if (!finite) check_alpha(k.alpha);
  if (finite && (k.finite[0] < 1 || k.finite[1] < 1)) throw UsageError("--finite: N, M >= 1");

  std::vector<std::pair<double, double>> pts;
  if (k.grid) {
    for (double x : xs)
      for (double y : ys) pts.emplace_back(x, y);
  } else if (xs.size() == ys.size() || xs.size() == 1 || ys.size() == 1) {
    const std::size_t n = std::max(xs.size(), ys.size());
    for (std::size_t i = 0; i < n; ++i)
      pts.emplace_back(xs[xs.size() == 1 ? 0 : i], ys[ys.size() == 1 ? 0 : i]);
  } else {
    throw UsageError("--x and --y lengths differ; use --grid for a tensor grid");
  }

  const Resolution res = resolution_preset(k.resolution);
  const double shift = k.centered ? center_aN(k.finite[0], k.finite[1]) : 0.0;
  std::vector<double> px, py;
  for (const auto& [x, y] : pts) {
    px.push_back(x + shift);
    py.push_back(y + shift);
  }

  auto evaluate = [&](const Resolution& r) {
    std::vector<cplx> v;
    if (finite) {
      const ContourPair pair = finite_contours({k.finite[0], k.finite[1]}, r.gamma_panels, r.order);
      const FiniteModelParams fp{k.finite[0], k.finite[1]};
      for (std::size_t i = 0; i < px.size(); ++i) v.push_back(kernel_finite(px[i], py[i], fp, pair));
    } else {
      const ContourPair pair = route_contours(k.alpha, 1.0, r);
      for (std::size_t i = 0; i < px.size(); ++i)
        v.push_back(kernel_crit(px[i], py[i], k.alpha, pair));
    }
    return v;
  };
  const std::vector<cplx> fine = evaluate(res);
  const std::vector<cplx> coarse = evaluate(res.halved());

  RunManifest m;
  m.command = "kernel";
  if (finite) {
    m.add("N", std::to_string(k.finite[0]));
    m.add("M", std::to_string(k.finite[1]));
    m.add("centered", k.centered ? "true" : "false");
    m.add("a_N", shift);
  } else {
    m.add("alpha", k.alpha);
  }
  m.add("x", k.x);
  m.add("y", k.y);
  m.add("grid", k.grid ? "true" : "false");
  m.add("resolution", k.resolution);
  m.add("gamma_panels", std::to_string(res.gamma_panels));
  m.add("order", std::to_string(res.order));

  std::string text;
  if (k.format == "json") {
    json j = m.to_json(false);
    json rows = json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      rows.push_back({{"x", pts[i].first},
                      {"y", pts[i].second},
                      {"re", fine[i].real()},
                      {"im", fine[i].imag()},
                      {"err", std::abs(fine[i] - coarse[i])}});
    }
    j["rows"] = rows;
    text = j.dump(2) + "\n";
  } else {
    text = m.csv_header() + "x,y,re,im,err\n";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      text += csv_row({pts[i].first, pts[i].second, fine[i].real(), fine[i].imag(),
                       std::abs(fine[i] - coarse[i])}) +
              "\n";
    }
  }
  write_text(k.output, text);
  if (!k.output.empty() && k.output != "-") m.write_sidecar(k.output);
  return 0;
}

// ---------------------------------------------------------------------------

struct GapArgs {
  double alpha = 1.0;
  double a_min = 1.0, a_max = 4.0;
  int steps = 7;
  std::vector<std::string> routes{"halfline", "contour-Q", "contour-H"};
  std::string resolution = "default";
  bool no_u = false;
  std::string output;
};

int run_gap(const GapArgs& g) {
  check_alpha(g.alpha);
  if (!(g.a_min > 0.0)) throw UsageError("--a-min must be > 0");
  if (!(g.a_max >= g.a_min)) throw UsageError("--a-max must be >= --a-min");
  if (g.steps < 1) throw UsageError("--steps must be >= 1");
  std::vector<Route> routes;
  for (const auto& r : g.routes) {
    try {
      const Route parsed = parse_route(r);
      if (std::find(routes.begin(), routes.end(), parsed) == routes.end()) routes.push_back(parsed);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  std::sort(routes.begin(), routes.end());
  const Resolution res = resolution_preset(g.resolution);

  RunManifest m;
  m.command = "gap";
  m.add("alpha", g.alpha);
  m.add("a_min", g.a_min);
  m.add("a_max", g.a_max);
  m.add("steps", std::to_string(g.steps));
  std::string rl;
  for (Route r : routes) rl += (rl.empty() ? "" : ",") + std::string(to_string(r));
  m.add("routes", rl);
  m.add("resolution", g.resolution);
  m.add("gamma_panels", std::to_string(res.gamma_panels));
  m.add("halfline_panels", std::to_string(res.halfline_panels));
  m.add("order", std::to_string(res.order));

  std::string text = m.csv_header() + "a";
  for (Route r : routes) {
    text += r == Route::halfline ? ",P_halfline" : r == Route::contour_Q ? ",P_contourQ" : ",P_contourH";
  }
  text += g.no_u ? ",logP,err\n" : ",logP,u,u_asym,err\n";

  for (int i = 0; i < g.steps; ++i) {
    const double a = g.steps == 1 ? g.a_min : g.a_min + (g.a_max - g.a_min) * i / (g.steps - 1);
    std::vector<double> row{a};
    double err = 0.0;
    double logP = 0.0;
    for (std::size_t k = 0; k < routes.size(); ++k) {
      const GapResult r = gap_probability(a, g.alpha, routes[k], res);
      row.push_back(r.P);
      if (k == 0) logP = r.logP;
      err = std::max(err, r.err);
    }
    row.push_back(logP);
    if (!g.no_u) {
      row.push_back(u_of_x(a, g.alpha, res));
      row.push_back(u_asymptotic(a, g.alpha));
    }
    row.push_back(err);
    text += csv_row(row) + "\n";
  }
  write_text(g.output, text);
  if (!g.output.empty() && g.output != "-") m.write_sidecar(g.output);
  return 0;
}

// ---------------------------------------------------------------------------

int run_validate(const std::string& fault, const std::string& output) {
  ValidationOptions opt;
  if (fault == "qa-sign") {
    opt.inject_qa_sign_fault = true;
  } else if (!fault.empty()) {
    throw UsageError("--inject-fault: unknown fault '" + fault + "'");
  }
  const std::vector<CheckResult> checks = run_validation(opt);
  bool ok = true;
  json arr = json::array();
  for (const auto& c : checks) {
    if (c.hard && !c.passed) ok = false;
    json j{{"name", c.name},   {"anchor", c.anchor}, {"measured", c.measured},
           {"tolerance", c.tolerance}, {"passed", c.passed}, {"hard", c.hard}};
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(j);
  }
  RunManifest m;
  m.command = "validate";
  m.add("inject_fault", fault.empty() ? "none" : fault);
  json report = m.to_json(false);
  report["checks"] = arr;
  report["all_hard_passed"] = ok;
  write_text(output, report.dump(2) + "\n");
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct McArgs {
  int N = 1, M = 1;
  long trials = 1000;
  std::uint64_t seed = 1;
  bool compare = false;
  double alpha = 1.0;
  std::string compare_a = "1,2,3";
  std::string output = "mc";
  int threads = 0;
};

double quantile(const std::vector<double>& sorted, double p) {
  const double pos = p * (sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const std::size_t j = std::min(i + 1, sorted.size() - 1);
  return sorted[i] + (pos - i) * (sorted[j] - sorted[i]);
}

int run_mc(const McArgs& a) {
  if (a.N < 1 || a.M < 1 || a.N > 256 || a.M > 256) throw UsageError("--N, --M must be in [1, 256]");
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  if (a.threads < 0) throw UsageError("--threads must be >= 0");
  std::vector<double> as;
  if (a.compare) {
    as = parse_values(a.compare_a, "--compare-a");
    check_alpha(a.alpha);
  }

  McConfig cfg;
  cfg.N = a.N;
  cfg.M = a.M;
  cfg.trials = a.trials;
  cfg.seed = a.seed;
  cfg.alpha_label = a.alpha;
  cfg.threads = a.threads;
  const McResult r = sample_rightmost(cfg);

  RunManifest m;
  m.command = "mc";
  m.add("N", std::to_string(a.N));
  m.add("M", std::to_string(a.M));
  m.add("trials", std::to_string(a.trials));
  m.add("seed", std::to_string(a.seed));
  m.add("a_N", r.a_N);

  std::string csv = m.csv_header() + "x\n";
  for (double v : r.samples) csv += fmt17(v) + "\n";
  const std::string csv_path = a.output + ".csv";
  write_text(csv_path, csv);
  m.write_sidecar(csv_path);

  json s = m.to_json(false);
  double mean = 0.0;
  for (double v : r.samples) mean += v;
  mean /= r.samples.size();
  double var = 0.0;
  for (double v : r.samples) var += (v - mean) * (v - mean);
  s["mean"] = mean;
  s["sd"] = r.samples.size() > 1 ? std::sqrt(var / (r.samples.size() - 1)) : 0.0;
  json q = json::object();
  for (int pct : {1, 5, 25, 50, 75, 95, 99})
    q["q" + std::to_string(pct)] = quantile(r.samples, pct / 100.0);
  s["quantiles"] = q;
  if (a.N == 1 && a.M == 1) {
    // |z|^2 is Exp(1) for a standard complex Gaussian z; samples are shifted by a_1.
    const double ks = ks_distance(r.samples, [&](double v) {
      return 1.0 - std::exp(-std::exp(v + r.a_N));
    });
    s["ks_log_exponential"] = ks;
    s["ks_critical_1pct"] = 1.628 / std::sqrt(static_cast<double>(r.samples.size()));
  }
  if (a.compare) {
    json table = json::array();
    for (double x : as) {
      const EmpiricalGap e = empirical_gap(r, x);
      const GapResult g = gap_probability(x, a.alpha, Route::contour_H);
      const double diff = e.phat - g.P;
      table.push_back({{"a", x},
                       {"P_hat", e.phat},
                       {"ci95", e.ci95},
                       {"P", g.P},
                       {"diff", diff},
                       {"within_ci_plus_0.03", std::abs(diff) <= e.ci95 + 0.03}});
    }
    s["alpha"] = a.alpha;
    s["comparison"] = table;
  }
  write_text(a.output + ".summary.json", s.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap probability of the critical product-Ginibre process"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  KernelArgs ka;
  auto* kc = app.add_subcommand("kernel", "Evaluate the critical or finite-N kernel");
  kc->add_option("--alpha", ka.alpha, "alpha > 0");
  kc->add_option("--x", ka.x, "x values: v, v1,v2,... or start:stop:n");
  kc->add_option("--y", ka.y, "y values, same syntax");
  kc->add_flag("--grid", ka.grid, "tensor grid instead of paired points");
  kc->add_option("--finite", ka.finite, "finite-N kernel with N M")->expected(2);
  kc->add_flag("--centered", ka.centered, "shift x and y by a_N (with --finite)");
  kc->add_option("--resolution", ka.resolution)->check(CLI::IsMember({"coarse", "default", "fine"}));
  kc->add_option("--format", ka.format)->check(CLI::IsMember({"csv", "json"}));
  kc->add_option("-o,--output", ka.output, "output file (default stdout)");

  GapArgs ga;
  auto* gc = app.add_subcommand("gap", "Tabulate P(a) on an a-grid");
  gc->add_option("--alpha", ga.alpha);
  gc->add_option("--a-min", ga.a_min);
  gc->add_option("--a-max", ga.a_max);
  gc->add_option("--steps", ga.steps);
  gc->add_option("--routes", ga.routes, "halfline, contour-Q, contour-H")->delimiter(',');
  gc->add_option("--resolution", ga.resolution)->check(CLI::IsMember({"coarse", "default", "fine"}));
  gc->add_flag("--no-u", ga.no_u, "skip the u and u_asym columns");
  gc->add_option("-o,--output", ga.output, "output file (default stdout)");

  std::string fault, vout;
  auto* vc = app.add_subcommand("validate", "Run the identity suite, JSON report");
  vc->add_option("--inject-fault", fault, "qa-sign");
  vc->add_option("-o,--output", vout, "output file (default stdout)");

  McArgs ma;
  auto* mc = app.add_subcommand("mc", "Monte-Carlo sampling of the rightmost log singular value");
  mc->add_option("--N", ma.N);
  mc->add_option("--M", ma.M);
  mc->add_option("--trials", ma.trials);
  mc->add_option("--seed", ma.seed);
  mc->add_flag("--compare", ma.compare, "compare P_hat(a) with P(a)");
  mc->add_option("--alpha", ma.alpha, "alpha for --compare");
  mc->add_option("--compare-a", ma.compare_a, "a values for --compare");
  mc->add_option("-o,--output", ma.output, "output prefix (PREFIX.csv, PREFIX.summary.json)");
  mc->add_option("--threads", ma.threads, "0: CRITGAP_THREADS or hardware");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*kc) return run_kernel(ka);
    if (*gc) return run_gap(ga);
    if (*vc) return run_validate(fault, vout);
    if (*mc) return run_mc(ma);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
