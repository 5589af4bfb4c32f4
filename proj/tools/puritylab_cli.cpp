// puritylab command-line front end: channel-spec ingestion, purity / bound
// computation, verification suites, parameter sweeps, and machine-readable
// result emission with embedded replay configuration.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "puritylab/puritylab.hpp"
#include "puritylab/suites.hpp"

namespace pl = puritylab;

namespace {

constexpr const char* kAllCommands[] = {"norm", "choi",  "bound", "verify",
                                        "scan", "hunt",  "lsc"};

struct RunConfig {
  std::string command;
  std::string channel_path;
  nlohmann::json channel_spec;  // resolved spec, null when not applicable
  double q = 1.0;
  double p = 2.0;
  std::string method = "auto";
  int restarts = 32;
  int samples = 2000;
  int max_iter = 500;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  int n_max = 2;
  int omegas_per_n = 2;
  std::string suite = "thm3";
  int trials = 50;
  long long dim = 3;
  std::string lambda_range;
  std::string q_range;
  std::string p_range;
  std::string format = "json";
  std::string out_path;
  std::string thm = "thm1";
};

std::string run_config_json(const RunConfig& c) {
  pl::JsonWriter w;
  w.begin_object();
  w.key("command").value(c.command);
  if (!c.channel_path.empty()) w.key("channel").value(c.channel_path);
  if (!c.channel_spec.is_null()) w.key("channel_spec").raw(c.channel_spec.dump());
  w.key("q").value(c.q);
  w.key("p").value(c.p);
  w.key("method").value(c.method);
  w.key("restarts").value(c.restarts);
  w.key("samples").value(c.samples);
  w.key("max_iter").value(c.max_iter);
  w.key("tol").value(c.tol);
  w.key("seed").value(c.seed);
  w.key("n_max").value(c.n_max);
  w.key("omegas_per_n").value(c.omegas_per_n);
  if (c.command == "verify") {
    w.key("suite").value(c.suite);
    w.key("trials").value(c.trials);
  }
  if (c.command == "hunt" || c.command == "lsc") w.key("d").value(c.dim);
  if (c.command == "hunt") w.key("trials").value(c.trials);
  if (!c.lambda_range.empty()) w.key("lambda").value(c.lambda_range);
  if (!c.q_range.empty()) w.key("q_range").value(c.q_range);
  if (!c.p_range.empty()) w.key("p_range").value(c.p_range);
  w.key("format").value(c.format);
  if (!c.out_path.empty()) w.key("out").value(c.out_path);
  w.end_object();
  return w.str();
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(c.out_path);
  if (!out) throw pl::InvalidInput("cannot open output file " + c.out_path);
  out << text << "\n";
}

pl::PurityConfig purity_config_of(const RunConfig& c) {
  pl::PurityConfig cfg;
  cfg.restarts = c.restarts;
  cfg.max_iterations = c.max_iter;
  cfg.tolerance = c.tol;
  cfg.oracle_samples = c.samples;
  cfg.dispatch_oracle_samples = std::min(c.samples, 200);
  cfg.seed = c.seed;
  return cfg;
}

nlohmann::json load_spec_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw pl::InvalidInput("cannot open channel spec " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return pl::parse_spec_text(ss.str(), path);
}

/// "a:b:s" inclusive sweep, or a single value.
std::vector<double> parse_range(const std::string& text, const char* what) {
  std::vector<double> out;
  if (text.empty()) return out;
  const auto c1 = text.find(':');
  try {
    if (c1 == std::string::npos) {
      out.push_back(std::stod(text));
      return out;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw pl::InvalidInput(std::string(what) + ": expected START:END:STEP");
    const double start = std::stod(text.substr(0, c1));
    const double end = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    const double step = std::stod(text.substr(c2 + 1));
    if (!(step > 0)) throw pl::InvalidInput(std::string(what) + ": step must be > 0");
    for (long i = 0;; ++i) {  // index-based so grid points stay exact
      const double v = start + i * step;
      if (v > end + 1e-12) break;
      out.push_back(v);
    }
    if (out.empty())
      throw pl::InvalidInput(std::string(what) + ": empty range \"" + text + "\"");
    return out;
  } catch (const std::invalid_argument&) {
    throw pl::InvalidInput(std::string(what) + ": cannot parse \"" + text + "\"");
  }
}

int summarize_exit(const std::vector<pl::BoundReport>& reports) {
  for (const auto& r : reports)
    if (r.verdict == pl::Verdict::violated) return 2;
  return 0;
}

int cmd_norm(RunConfig& c) {
  const pl::CpMap phi = pl::build_channel(c.channel_spec, c.channel_path);
  const pl::NormParams np(c.q, c.p);
  const pl::PurityConfig cfg = purity_config_of(c);
  pl::PurityEstimate est;
  if (c.method == "auto") {
    est = pl::purity(phi, np, cfg);
  } else if (c.method == "oracle") {
    est = pl::purity_oracle(phi, np, c.samples, c.seed);
  } else if (c.method == "gradient") {
    est = pl::purity_gradient(phi, np, c.restarts, c.tol, c.max_iter, c.seed);
  } else if (c.method == "fixed_point") {
    est = pl::purity_fixed_point(phi, np, c.restarts, c.tol, c.seed, c.max_iter);
  } else if (c.method == "analytic") {
    auto a = pl::purity_analytic(phi, np);
    if (!a)
      throw pl::InvalidInput("analytic method not applicable to this channel/exponents");
    est = *a;
  } else {
    throw pl::InvalidInput("unknown method \"" + c.method + "\"");
  }

  if (c.format == "text") {
    std::string text = "||Phi||_{" + pl::format_double(c.q) + "->" +
                       pl::format_double(c.p) + "} >= " +
                       pl::format_double(est.value) +
                       "  (method=" + pl::method_name(est.method) +
                       ", converged=" + (est.converged ? "yes" : "no") + ")";
    emit(c, text);
  } else {
    pl::JsonWriter w;
    w.begin_object();
    w.key("schema").value(pl::kSchemaEstimate);
    w.key("config").raw(run_config_json(c));
    w.key("estimate");
    pl::write_estimate(w, est);
    w.end_object();
    emit(c, w.str());
  }
  return 0;
}

int cmd_choi(RunConfig& c) {
  const pl::CpMap phi = pl::build_channel(c.channel_spec, c.channel_path);
  pl::JsonWriter w;
  w.begin_object();
  w.key("schema").value(pl::kSchemaMatrix);
  w.key("config").raw(run_config_json(c));
  w.key("d_in").value(static_cast<long long>(phi.input_dim()));
  w.key("d_out").value(static_cast<long long>(phi.output_dim()));
  w.key("trace_preserving").value(phi.is_trace_preserving());
  w.key("unital").value(phi.is_unital());
  w.key("choi_frobenius").value(pl::choi_frobenius(phi));
  w.key("choi").raw(pl::matrix_json(phi.choi()));
  w.end_object();
  emit(c, w.str());
  return 0;
}

int cmd_bound(RunConfig& c) {
  const pl::CpMap phi = pl::build_channel(c.channel_spec, c.channel_path);
  const pl::NormParams np(c.q, c.p);
  const pl::PurityConfig cfg = purity_config_of(c);
  const pl::PotentialEstimate pot =
      pl::potential_lower(phi, np, c.n_max, c.omegas_per_n, cfg);
  std::vector<pl::BoundReport> reports;
  if (c.thm == "thm1" || c.thm == "both") {
    if (np.q < np.p)
      reports.push_back(pl::check_thm1(phi, np, pot, 1e-6, c.seed, c.seed));
  }
  if (c.thm == "thm2" || c.thm == "both") {
    if (np.q <= 2.0 && np.p >= 2.0)
      reports.push_back(pl::check_thm2(phi, np, pot, cfg, 1e-6, c.seed, c.seed));
  }
  if (reports.empty())
    throw pl::InvalidInput("no applicable bound for these exponents (q >= p "
                           "is the multiplicative regime; use verify --suite mult)");
  emit(c, pl::report_list_json(reports, run_config_json(c)));
  return summarize_exit(reports);
}

int cmd_verify(RunConfig& c) {
  std::vector<pl::BoundReport> reports;
  if (c.suite == "all") {
    for (const auto& name : pl::suite_names()) {
      auto batch = pl::run_suite(name, c.trials, c.seed);
      reports.insert(reports.end(), batch.begin(), batch.end());
    }
  } else {
    reports = pl::run_suite(c.suite, c.trials, c.seed);
  }
  if (c.format == "text") {
    int violated = 0, inconclusive = 0;
    for (const auto& r : reports) {
      if (r.verdict == pl::Verdict::violated) ++violated;
      if (r.verdict == pl::Verdict::inconclusive) ++inconclusive;
    }
    emit(c, "suite " + c.suite + ": " + std::to_string(reports.size()) +
                " reports, " + std::to_string(violated) + " violated, " +
                std::to_string(inconclusive) + " inconclusive");
  } else {
    emit(c, pl::report_list_json(reports, run_config_json(c)));
  }
  return summarize_exit(reports);
}

int cmd_scan(RunConfig& c) {
  const pl::PurityConfig cfg = purity_config_of(c);
  std::vector<double> lambdas = parse_range(c.lambda_range, "--lambda");
  std::vector<double> qs = parse_range(c.q_range, "--q");
  std::vector<double> ps = parse_range(c.p_range, "--p");
  if (qs.empty()) qs.push_back(c.q);
  if (ps.empty()) ps.push_back(c.p);
  if (!lambdas.empty()) {
    if (c.channel_spec.value("kind", "") != "depolarizing")
      throw pl::InvalidInput("--lambda sweeps require a depolarizing channel spec");
  } else {
    lambdas.push_back(c.channel_spec.value("lambda", 0.0));
  }

  std::string csv = "# schema=" + std::string(pl::kSchemaScanCsv) + "\n";
  csv += "# config=" + run_config_json(c) + "\n";
  csv += "lambda,q,p,estimate,thm1_bound,thm2_bound,slack,verdict\n";
  int exit_code = 0;
  std::size_t point = 0;
  for (double lambda : lambdas) {
    nlohmann::json spec = c.channel_spec;
    if (!c.lambda_range.empty()) spec["lambda"] = lambda;
    const pl::CpMap phi = pl::build_channel(spec, c.channel_path);
    for (double q : qs) {
      for (double p : ps) {
        const pl::NormParams np(q, p);
        const pl::PurityEstimate est = pl::purity(
            phi, np, pl::with_seed(cfg, pl::split_seed(c.seed, point++)));
        std::string thm1_text, thm2_text;
        double bound = pl::kInf;
        if (np.q < np.p) {
          const double b1 = pl::alpha_factor(np, phi.input_dim(),
                                             phi.output_dim()) *
                            pl::choi_frobenius(phi);
          bound = std::min(bound, b1);
          thm1_text = pl::format_double(b1);
        }
        if (np.q <= 2.0 && np.p >= 2.0 && np.q < np.p) {
          const pl::NormParams pp(p, p);
          const pl::PurityEstimate est_pp = pl::purity(
              phi, pp, pl::with_seed(cfg, pl::split_seed(c.seed, point++)));
          const double b2 =
              std::min(est_pp.value + std::max(1e-4 * est_pp.value,
                                               est_pp.spread),
                       pl::choi_frobenius(phi));
          bound = std::min(bound, b2);
          thm2_text = pl::format_double(b2);
        }
        const double slack = std::isinf(bound) ? 0.0 : bound - est.value;
        const char* verdict = slack < -1e-6 ? "violated" : "holds";
        if (slack < -1e-6) exit_code = 2;
        csv += pl::format_double(lambda) + "," + pl::format_double(q) + "," +
               pl::format_double(p) + "," + pl::format_double(est.value) + "," +
               thm1_text + "," + thm2_text + "," +
               (std::isinf(bound) ? "" : pl::format_double(slack)) + "," +
               verdict + "\n";
      }
    }
  }
  if (!csv.empty() && csv.back() == '\n') csv.pop_back();
  emit(c, csv);
  return exit_code;
}

int cmd_hunt(RunConfig& c) {
  const pl::PurityConfig cfg = purity_config_of(c);
  const auto findings =
      pl::hunt_gap(static_cast<pl::Index>(c.dim), c.p, c.trials, c.seed, cfg);
  emit(c, pl::report_list_json(findings, run_config_json(c)));
  return findings.empty() ? 0 : 2;
}

int cmd_lsc(RunConfig& c) {
  pl::PurityConfig cfg = pl::suite_purity_config(c.seed);
  const pl::LscReport rep =
      pl::lsc_report(static_cast<pl::Index>(c.dim), cfg, c.seed);
  if (c.format == "text") {
    emit(c, "d=" + std::to_string(c.dim) +
                "  alpha2=" + pl::format_double(rep.alpha2_single) +
                "  product_bound=" + pl::format_double(rep.alpha2_product_bound) +
                "  multiplicativity=" +
                pl::verdict_name(rep.multiplicativity_check.verdict));
  } else {
    emit(c, pl::lsc_report_json(rep, run_config_json(c)));
  }
  return rep.sound ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"puritylab: Schatten q->p output purity of completely positive "
               "maps, with numerical verification of the bound catalog"};
  app.require_subcommand(1);
  RunConfig c;

  auto add_common = [&](CLI::App* sub, bool needs_channel) {
    if (needs_channel)
      sub->add_option("--channel", c.channel_path, "channel spec JSON file")
          ->required();
    sub->add_option("--seed", c.seed, "master seed (all randomness derives from it)");
    sub->add_option("--format", c.format, "json|csv|text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", c.out_path, "write output to file instead of stdout");
    sub->add_option("--restarts", c.restarts, "optimizer restarts");
    sub->add_option("--samples", c.samples, "oracle sample budget");
    sub->add_option("--max-iter", c.max_iter, "iteration cap");
    sub->add_option("--tol", c.tol, "convergence tolerance");
  };

  CLI::App* norm = app.add_subcommand("norm", "estimate ||Phi||_{q->p}");
  add_common(norm, true);
  norm->add_option("--q", c.q, "input Schatten exponent")->required();
  norm->add_option("--p", c.p, "output Schatten exponent")->required();
  norm->add_option("--method", c.method,
                   "auto|oracle|gradient|fixed_point|analytic")
      ->check(CLI::IsMember(
          {"auto", "oracle", "gradient", "fixed_point", "analytic"}));

  CLI::App* choi = app.add_subcommand("choi", "emit the Choi matrix and predicates");
  add_common(choi, true);

  CLI::App* bound = app.add_subcommand(
      "bound", "potential-purity lower bound vs the Choi-norm bounds");
  add_common(bound, true);
  bound->add_option("--q", c.q)->required();
  bound->add_option("--p", c.p)->required();
  bound->add_option("--thm", c.thm, "thm1|thm2|both")
      ->check(CLI::IsMember({"thm1", "thm2", "both"}));
  bound->add_option("--n-max", c.n_max, "largest ancilla dimension");
  bound->add_option("--omegas-per-n", c.omegas_per_n, "random ancillas per dimension");

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, false);
  verify->add_option("--suite", c.suite, "suite name or 'all'")->required();
  verify->add_option("--trials", c.trials, "instances (or cases) to run");

  CLI::App* scan = app.add_subcommand("scan", "sweep lambda and/or (q,p); CSV rows");
  add_common(scan, true);
  scan->add_option("--lambda", c.lambda_range, "single value or START:END:STEP");
  scan->add_option("--q", c.q_range, "single value or START:END:STEP")->required();
  scan->add_option("--p", c.p_range, "single value or START:END:STEP")->required();

  CLI::App* hunt = app.add_subcommand(
      "hunt", "search for purity multiplicativity gaps at q = 1");
  add_common(hunt, false);
  hunt->add_option("--d", c.dim, "channel dimension")->required();
  hunt->add_option("--p", c.p, "output exponent")->required();
  hunt->add_option("--trials", c.trials, "random channels to test");

  CLI::App* lsc = app.add_subcommand(
      "lsc", "depolarizing log-Sobolev constants and product bound");
  add_common(lsc, false);
  lsc->add_option("--d", c.dim, "dimension (>= 3)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;  // usage errors exit 1 per the contract
  }

  try {
    for (const char* name : kAllCommands) {
      if (app.got_subcommand(name)) {
        c.command = name;
        break;
      }
    }
    if (!c.channel_path.empty()) c.channel_spec = load_spec_json(c.channel_path);
    if (c.command == "norm") return cmd_norm(c);
    if (c.command == "choi") return cmd_choi(c);
    if (c.command == "bound") return cmd_bound(c);
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "scan") return cmd_scan(c);
    if (c.command == "hunt") return cmd_hunt(c);
    if (c.command == "lsc") return cmd_lsc(c);
    std::cerr << "error: no command selected\n";
    return 1;
  } catch (const pl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
