// stochord: classify iterated-failure-rate ageing, decide s-IFR orderings,
// export tail/rate/c_s/V_s curves, and run the built-in self test.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "stochord/ageing.hpp"
#include "stochord/distributions.hpp"
#include "stochord/errors.hpp"
#include "stochord/iterated_tail.hpp"
#include "stochord/mc_oracle.hpp"
#include "stochord/ordering.hpp"
#include "stochord/sign_variation.hpp"

using nlohmann::json;
using namespace stochord;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftestFailure = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInconclusive = 3;

// Write-to-temp then rename, so readers never observe a partial file.
void write_atomic(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file " + tmp);
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json pattern_json(const SignPattern& p) {
  json j;
  j["pattern"] = p.to_string();
  j["band"] = p.band;
  json crossings = json::array();
  for (const auto& c : p.crossings) crossings.push_back({{"lo", c.lo}, {"hi", c.hi}});
  j["crossings"] = crossings;
  return j;
}

json verdict_json(const OrderVerdict& v, const std::string& x_spec,
                  const std::string& y_spec) {
  json j;
  j["x"] = x_spec;
  j["y"] = y_spec;
  j["s"] = v.s;
  j["direction"] = direction_name(v.direction);
  j["method"] = method_name(v.method);
  j["detail"] = v.detail;
  j["probes_scanned"] = v.probes_scanned;
  auto violation = [](const ViolationEvidence& e) {
    json vj = pattern_json(e.pattern);
    vj["a"] = e.probe.a;
    vj["b"] = e.probe.b;
    return vj;
  };
  if (v.violation_against_x) j["violation_against_x"] = violation(*v.violation_against_x);
  if (v.violation_against_y) j["violation_against_y"] = violation(*v.violation_against_y);
  return j;
}

json report_json(const AgeingReport& r) {
  json j;
  j["s"] = r.s;
  j["s_ifr"] = r.is_s_ifr;
  j["s_dfr"] = r.is_s_dfr;
  j["s_ifra"] = r.is_s_ifra;
  j["s_nbu"] = r.is_s_nbu;
  j["s_nbufr"] = r.is_s_nbufr;
  j["s_nbafr"] = r.is_s_nbafr;
  j["hierarchy_ok"] = hierarchy_check(r);
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    json wj{{"notion", w.notion}, {"x", w.x}};
    if (w.t) wj["t"] = *w.t;
    witnesses.push_back(wj);
  }
  j["witnesses"] = witnesses;
  j["grid_meta"] = {{"n_points", r.grid_meta.n_points},
                    {"x_origin", r.grid_meta.x_origin},
                    {"x_max", r.grid_meta.x_max},
                    {"nbu_extent", r.grid_meta.nbu_extent},
                    {"nbu_steps", r.grid_meta.nbu_steps}};
  return j;
}

int run_classify(const std::string& dist, int s, int points, const std::string& out) {
  json j;
  try {
    const DistributionSpec spec = DistributionSpec::parse(dist);
    IteratedTailEvaluator ev(spec, s);
    ClassifyOptions opt;
    opt.n_points = points;
    const AgeingReport report = classify_ageing(ev, opt);
    j = report_json(report);
    j["dist"] = spec.to_string();
  } catch (const MomentUndefinedError& e) {
    j["error"] = e.what();
    j["error_moment_order"] = e.order();
  }
  write_atomic(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_compare(const std::string& x, const std::string& y, int s, int scan_points,
                const std::string& out) {
  const DistributionSpec specX = DistributionSpec::parse(x);
  const DistributionSpec specY = DistributionSpec::parse(y);
  json j;
  Direction direction = Direction::inconclusive;
  try {
    CompareConfig config;
    config.scan.n_points = scan_points;
    const OrderVerdict v = compare_sifr(specX, specY, s, config);
    direction = v.direction;
    j = verdict_json(v, specX.to_string(), specY.to_string());
  } catch (const MomentUndefinedError& e) {
    j["error"] = e.what();
    j["error_moment_order"] = e.order();
  }
  write_atomic(out, j.dump(2) + "\n");
  return (direction == Direction::inconclusive) ? kExitInconclusive : kExitOk;
}

int run_scan(const std::string& x, const std::string& y, int s, int scan_points,
             const std::string& out) {
  const DistributionSpec specX = DistributionSpec::parse(x);
  const DistributionSpec specY = DistributionSpec::parse(y);
  json j;
  try {
    IteratedTailEvaluator evX(specX, s), evY(specY, s);
    ScanOptions opt;
    opt.n_points = scan_points;
    const OrderVerdict v = v_s_scan(evX, evY, opt);
    j = verdict_json(v, specX.to_string(), specY.to_string());
  } catch (const MomentUndefinedError& e) {
    j["error"] = e.what();
    j["error_moment_order"] = e.order();
  }
  write_atomic(out, j.dump(2) + "\n");
  return kExitOk;
}

int run_curve(const std::string& kind, const std::string& dist, const std::string& x,
              const std::string& y, int s, int points, double a, double b,
              const std::string& out) {
  std::ostringstream csv;
  if (kind == "tail" || kind == "rate") {
    if (dist.empty()) throw CLI::ValidationError("--dist is required for kind " + kind);
    const DistributionSpec spec = DistributionSpec::parse(dist);
    IteratedTailEvaluator ev(spec, s);
    GridConfig grid;
    grid.n_points = points;
    grid.x_min = (kind == "rate") ? spec.quantile(1e-6) : 0.0;
    grid.x_max = spec.quantile(1.0 - 1e-6);
    csv << "x,value\n";
    for (double t : grid.points()) {
      const double v = (kind == "rate") ? failure_rate(ev, t) : ev.tail(t);
      csv << full_precision(t) << "," << full_precision(v) << "\n";
    }
  } else if (kind == "c_s") {
    if (x.empty() || y.empty()) throw CLI::ValidationError("--x and --y required for c_s");
    const DistributionSpec specX = DistributionSpec::parse(x);
    const DistributionSpec specY = DistributionSpec::parse(y);
    IteratedTailEvaluator evX(specX, s), evY(specY, s);
    GridConfig grid;
    grid.n_points = points;
    grid.x_min = 0.0;
    grid.x_max = specX.quantile(1.0 - 1e-6);
    const SampledCurve curve = c_s_curve(evX, evY, grid);
    csv << "x,value\n";
    for (std::size_t i = 0; i < curve.x.size(); ++i) {
      csv << full_precision(curve.x[i]) << "," << full_precision(curve.y[i]) << "\n";
    }
  } else if (kind == "v_s") {
    if (x.empty() || y.empty()) throw CLI::ValidationError("--x and --y required for v_s");
    const DistributionSpec specX = DistributionSpec::parse(x);
    const DistributionSpec specY = DistributionSpec::parse(y);
    IteratedTailEvaluator evX(specX, s), evY(specY, s);
    ComparisonProbe probe{a, b};
    GridConfig grid;
    grid.n_points = points;
    grid.x_min = 0.0;
    grid.x_max = std::max(specY.quantile(1.0 - 1e-10),
                          (specX.quantile(1.0 - 1e-10) - b) / a);
    csv << "x,value,a,b\n";
    for (double t : grid.points()) {
      csv << full_precision(t) << "," << full_precision(v_s(evX, evY, probe, t)) << ","
          << full_precision(a) << "," << full_precision(b) << "\n";
    }
  } else {
    throw CLI::ValidationError("unknown curve kind " + kind);
  }
  write_atomic(out, csv.str());
  return kExitOk;
}

struct SelftestRunner {
  bool all_ok = true;
  void check(const std::string& name, bool ok) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", name.c_str());
    all_ok = all_ok && ok;
  }
};

int run_selftest(bool quick, std::uint64_t seed, bool inject_fault) {
  SelftestRunner t;
  const double moment_tol = inject_fault ? 0.0 : 1e-8;
  const std::vector<DistributionSpec> specs = {
      DistributionSpec::exponential(1.0),    DistributionSpec::gamma(0.7, 2.0),
      DistributionSpec::gamma(2.0, 1.0),     DistributionSpec::gamma(3.5, 0.5),
      DistributionSpec::weibull(0.6, 1.0),   DistributionSpec::weibull(2.0, 1.5),
      DistributionSpec::inverse_gamma(6.0, 1.0)};

  for (const auto& spec : specs) {
    // Moment identity E X^(s-1) = (s-1)! prod mu~_j.
    bool ok = true;
    for (int s = 2; s <= 4 && ok; ++s) {
      if (!spec.moment_exists(s - 1)) break;
      IteratedTailEvaluator ev(spec, s);
      double prod = 1.0;
      for (double m : ev.mu_ladder()) prod *= m;
      const double lhs = spec.raw_moment(s - 1);
      const double rhs = std::tgamma(static_cast<double>(s)) * prod;
      ok = std::abs(lhs - rhs) <= moment_tol * std::abs(lhs);
    }
    t.check("moment identity: " + spec.to_string(), ok);
  }

  {
    IteratedTailEvaluator ev(DistributionSpec::exponential(0.5), 3);
    bool ok = true;
    for (double x : {0.1, 0.7, 2.0}) {
      ok = ok && std::abs(ev.tail(x) - std::exp(-2.0 * x)) < 1e-12;
      ok = ok && std::abs(ev.tail_via_quadrature(x) - std::exp(-2.0 * x)) < 1e-9;
    }
    t.check("exponential tail fixed point", ok);
  }

  {
    IteratedTailEvaluator ev(DistributionSpec::gamma(3.0, 1.0), 3);
    bool ok = true;
    for (int k = 1; k <= 3; ++k) {
      for (double x : {0.3, 1.0, 2.5}) {
        ok = ok && std::abs(ev.tail_via_recursion(x, k) - ev.tail(x)) < 1e-7;
      }
    }
    t.check("representation consistency (gamma, s=3)", ok);
  }

  {
    bool ok = true;
    for (const auto& spec : specs) {
      IteratedTailEvaluator ev(spec, 2);
      IteratedTailEvaluator scaled_ev(spec.scaled(3.0), 2);
      for (double x : {0.2, 1.0, 4.0}) {
        ok = ok && std::abs(scaled_ev.tail(3.0 * x) - ev.tail(x)) < 1e-9;
      }
    }
    t.check("scale equivariance of iterated tails", ok);
  }

  {
    bool ok = true;
    for (const auto& spec : specs) {
      for (double p : {0.01, 0.3, 0.9, 0.999}) {
        const double q = spec.quantile(p);
        ok = ok && std::abs(spec.survival(q) - (1.0 - p)) < 1e-8;
      }
    }
    t.check("survival(quantile(p)) = 1 - p", ok);
  }

  {
    bool ok = true;
    McConfig cfg;
    cfg.n_samples = quick ? 10'000 : 100'000;
    cfg.seed = seed;
    for (const auto& spec : {DistributionSpec::exponential(1.0),
                             DistributionSpec::gamma(2.0, 1.0),
                             DistributionSpec::weibull(2.0, 1.0)}) {
      IteratedTailEvaluator ev(spec, 2);
      for (double x : {0.5, 1.5}) {
        const McEstimate est = mc_iterated_tail(spec, 2, x, cfg);
        ok = ok && std::abs(est.estimate - ev.tail(x)) <= 4.0 * est.std_error;
      }
    }
    t.check("monte carlo cross-check (s=2)", ok);
  }

  {
    IteratedTailEvaluator g(DistributionSpec::gamma(2.0, 1.0), 1);
    IteratedTailEvaluator w(DistributionSpec::weibull(0.5, 1.0), 1);
    const AgeingReport rg = classify_ageing(g);
    const AgeingReport rw = classify_ageing(w);
    t.check("gamma(2,1) s=1 classified IFR", rg.is_s_ifr && !rg.is_s_dfr);
    t.check("weibull(0.5,1) s=1 classified DFR", rw.is_s_dfr && !rw.is_s_ifr);
    t.check("hierarchy holds on spot reports", hierarchy_check(rg) && hierarchy_check(rw));
  }

  {
    const OrderVerdict v = compare_sifr(DistributionSpec::gamma(3.0, 1.0),
                                        DistributionSpec::gamma(2.0, 1.0), 2);
    t.check("gamma(3,1) more s-IFR than gamma(2,1), proven",
            v.direction == Direction::x_more_sifr && v.method == Method::proven_by_theorem);
  }

  {
    GridConfig grid;
    grid.x_min = 0.0;
    grid.x_max = 4.0;
    grid.n_points = 256;
    grid.spacing = GridConfig::Spacing::linear;
    const SignPattern p =
        sign_pattern([](double x) { return (x - 1.0) * (x - 2.0) * (x - 3.0); }, grid);
    t.check("sign pattern of cubic is -,+,-,+", p.to_string() == "-,+,-,+");
    const SignPattern z = sign_pattern([](double) { return 1e-15; }, grid);
    t.check("tiny function is identically zero", z.identically_zero());
  }

  return t.all_ok ? kExitOk : kExitSelftestFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iterated failure rate classification and s-IFR ordering"};
  app.require_subcommand(1);

  std::string dist, x, y, out = "-", kind = "tail";
  int s = 1;
  int points = 4096;
  int scan_points = 512;
  double probe_a = 1.0, probe_b = 0.0;
  std::uint64_t seed = 0x5743'4f52'4448'4f54ULL;
  bool quick = false, inject_fault = false;

  auto* classify = app.add_subcommand("classify", "ageing classification report");
  classify->add_option("--dist", dist, "distribution family:shape:scale")->required();
  classify->add_option("--s", s, "iteration level");
  classify->add_option("--points", points, "grid resolution");
  classify->add_option("--out", out, "output path (default stdout)");

  auto* compare = app.add_subcommand("compare", "decide the s-IFR order between two specs");
  compare->add_option("--x", x, "left distribution")->required();
  compare->add_option("--y", y, "right distribution")->required();
  compare->add_option("--s", s, "iteration level");
  compare->add_option("--scan-points", scan_points, "pattern grid per probe");
  compare->add_option("--out", out, "output path (default stdout)");

  auto* scan = app.add_subcommand("scan", "raw V_s probe scan in both directions");
  scan->add_option("--x", x, "left distribution")->required();
  scan->add_option("--y", y, "right distribution")->required();
  scan->add_option("--s", s, "iteration level");
  scan->add_option("--scan-points", scan_points, "pattern grid per probe");
  scan->add_option("--out", out, "output path (default stdout)");

  auto* curve = app.add_subcommand("curve", "export tail/rate/c_s/v_s samples as CSV");
  curve->add_option("--kind", kind, "tail | rate | c_s | v_s")->required();
  curve->add_option("--dist", dist, "distribution (tail, rate)");
  curve->add_option("--x", x, "left distribution (c_s, v_s)");
  curve->add_option("--y", y, "right distribution (c_s, v_s)");
  curve->add_option("--s", s, "iteration level");
  curve->add_option("--points", points, "number of rows");
  curve->add_option("--a", probe_a, "probe slope (v_s)");
  curve->add_option("--b", probe_b, "probe shift (v_s)");
  curve->add_option("--out", out, "output path (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suites");
  selftest->add_flag("--quick", quick, "reduce monte carlo sample counts");
  selftest->add_option("--seed", seed, "random seed");
  selftest->add_flag("--inject-fault", inject_fault, "force a failure (harness check)");

  try {
    app.parse(argc, argv);
    if (s < 1) throw CLI::ValidationError("--s must be >= 1");
    if (classify->parsed()) return run_classify(dist, s, points, out);
    if (compare->parsed()) return run_compare(x, y, s, scan_points, out);
    if (scan->parsed()) return run_scan(x, y, s, scan_points, out);
    if (curve->parsed()) return run_curve(kind, dist, x, y, s, points, probe_a, probe_b, out);
    if (selftest->parsed()) return run_selftest(quick, seed, inject_fault);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSelftestFailure;
  }
  return kExitBadInput;
}
