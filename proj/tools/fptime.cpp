// fptime: first level-crossing time of a compound renewal process net of
// linear drift.
//
//   fptime eval     --method type1 --lam-t 2 --lam-y 1 --c 2 --u 10 --t 200
//   fptime sweep    --methods type1,ig --lam-t 2 --lam-y 1 --u 30 --t 100
//                   --c-min 0.5 --c-max 4 --n-points 50 --output sweep.csv
//   fptime mc       --lam-t 2 --lam-y 1 --c 2 --u 10 --t 200 --n-paths 1000000
//   fptime capital  --backend exact --lam-t 2 --lam-y 1 --alpha 0.1348 --t 100 --c 2
//   fptime selftest
//
// Exit codes: 0 ok, 2 invalid parameters, 3 no bracket, 1 anything else.
// FPTIME_WORKERS sets the default worker count; --workers overrides it.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "fptime/capital.hpp"
#include "fptime/errors.hpp"
#include "fptime/exact_exp.hpp"
#include "fptime/ig_approx.hpp"
#include "fptime/mc_oracle.hpp"
#include "fptime/sweep.hpp"

namespace {

using namespace fptime;

constexpr int kExitInvalid = 2;
constexpr int kExitNoBracket = 3;

struct ModelFlags {
  std::optional<double> lam_t, lam_y, big_m, d2;

  void attach(CLI::App* app) {
    app->add_option("--lam-t", lam_t, "rate of the exponential inter-renewal times");
    app->add_option("--lam-y", lam_y, "rate of the exponential jump sizes");
    app->add_option("--big-m", big_m, "M = E T / E Y");
    app->add_option("--d2", d2, "D^2 = ((E T)^2 Var Y + (E Y)^2 Var T) / (E Y)^3");
  }

  // Exactly one of the two forms; `optional_ok` lets mc run from laws alone.
  std::optional<ModelInput> model(bool optional_ok = false) const {
    const bool rates = lam_t || lam_y;
    const bool moments = big_m || d2;
    if (rates && moments) throw DomainError("give either --lam-t/--lam-y or --big-m/--d2, not both");
    if (rates) {
      if (!lam_t || !lam_y) throw DomainError("--lam-t and --lam-y must be given together");
      return ModelInput::exponential(*lam_t, *lam_y);
    }
    if (moments) {
      if (!big_m || !d2) throw DomainError("--big-m and --d2 must be given together");
      return ModelInput::renewal(RenewalMoments(*big_m, *d2));
    }
    if (optional_ok) return std::nullopt;
    throw DomainError("a model is required: --lam-t/--lam-y or --big-m/--d2");
  }
};

struct McFlags {
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 42;
  int workers = 0;
  std::string t1_law, t_law, y_law;

  void attach(CLI::App* app, std::uint64_t default_paths) {
    n_paths = default_paths;
    app->add_option("--n-paths", n_paths, "Monte Carlo paths")->capture_default_str();
    app->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
    app->add_option("--workers", workers, "worker threads (default: FPTIME_WORKERS or all processors)");
    app->add_option("--t1-law", t1_law, "law of T1, e.g. gamma(2,4); defaults to the law of T");
    app->add_option("--t-law", t_law, "law of T, e.g. exponential(2)");
    app->add_option("--y-law", y_law, "law of Y, e.g. pareto(2.5,0.6)");
  }

  McOptions options() const {
    if (n_paths == 0) throw DomainError("--n-paths must be >= 1");
    if (workers < 0) throw DomainError("--workers must be >= 1");
    McOptions o;
    o.n_paths = n_paths;
    o.seed = seed;
    o.workers = workers;
    if (!t1_law.empty()) o.t1_law = LawSpec::parse(t1_law);
    if (!t_law.empty()) o.t_law = LawSpec::parse(t_law);
    if (!y_law.empty()) o.y_law = LawSpec::parse(y_law);
    return o;
  }
};

double parse_horizon(const std::string& text) {
  if (text == "inf" || text == "infinity") return kInfiniteHorizon;
  char* end = nullptr;
  const double t = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0' || std::isnan(t)) throw DomainError("--t must be a number or 'inf'");
  if (!(t >= 0.0)) throw DomainError("--t must be >= 0");
  return t;
}

std::string format_probability(double p) {
  if (p == 0.0) return "0.000000";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", p);
  return buf;
}

int run_selftest() {
  struct Check {
    const char* name;
    double value, expected, tol;
  };
  const RenewalMoments level15(1.0, 6.0);
  const Check checks[] = {
      {"type1 (2,1) c=2 u=10 t=200", type1_cdf(ExpModel(2, 1, 2), {10, 200}), 0.699, 0.002},
      {"type1 (2,1) c=2 u=30 t=100", type1_cdf(ExpModel(2, 1, 2), {30, 100}), 0.1348, 0.001},
      {"type1 (2,1) c=2 u=20 t=200", type1_cdf(ExpModel(2, 1, 2), {20, 200}), 0.463, 0.002},
      {"ig infinity M=1 D2=6 u=15 c=0", ig_kernel_infty(level15, 15, 0), 0.943, 0.001},
      {"ig at c* M=1 D2=6 u=15 t=inf", kernel_at_critical_rate(level15, 15, kInfiniteHorizon), 0.886, 0.001},
      {"ig at c* M=1 D2=6 u=15 t=100", kernel_at_critical_rate(level15, 15, 100), 0.454, 0.001},
      {"ruin (2,1) c=4 u=10", ruin_prob(ExpModel(2, 1, 4), 10), 0.5 * std::exp(-5.0), 1e-12},
  };
  bool all = true;
  for (const Check& c : checks) {
    const bool ok = std::abs(c.value - c.expected) <= c.tol;
    all = all && ok;
    std::printf("%s  %-32s %.6f (expected %.6g +- %g)\n", ok ? "ok  " : "FAIL", c.name, c.value, c.expected, c.tol);
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"First level-crossing time of a compound renewal process net of linear drift"};
  app.require_subcommand(1);

  ModelFlags eval_model, sweep_model, mc_model, cap_model;
  McFlags eval_mc, sweep_mc, mc_mc;

  // eval
  std::string eval_method, eval_t;
  double eval_u = 0.0, eval_c = 0.0;
  CLI::App* eval = app.add_subcommand("eval", "evaluate one method at one point");
  eval->add_option("--method", eval_method, "type1|type2|type3|normal|diffusion|ig|teugels|mc")->required();
  eval_model.attach(eval);
  eval->add_option("--c", eval_c, "drift (premium rate)")->required();
  eval->add_option("--u", eval_u, "level")->required();
  eval->add_option("--t", eval_t, "horizon, or 'inf'")->required();
  eval_mc.attach(eval, 1000000);

  // sweep
  std::string sweep_methods, sweep_t, sweep_out;
  double sweep_u = 0.0, c_min = 0.0, c_max = 0.0;
  int n_points = 50;
  CLI::App* sweep = app.add_subcommand("sweep", "evaluate methods over a grid of c and write CSV");
  sweep->add_option("--methods", sweep_methods, "comma separated method names")->required();
  sweep_model.attach(sweep);
  sweep->add_option("--u", sweep_u, "level")->required();
  sweep->add_option("--t", sweep_t, "horizon, or 'inf'")->required();
  sweep->add_option("--c-min", c_min, "first c")->required();
  sweep->add_option("--c-max", c_max, "last c")->required();
  sweep->add_option("--n-points", n_points, "number of c values")->capture_default_str();
  sweep->add_option("--output", sweep_out, "CSV path (default: standard output)");
  sweep_mc.attach(sweep, 100000);

  // mc
  double mc_u = 0.0, mc_c = 0.0, mc_t = 0.0;
  std::optional<double> mc_v;
  CLI::App* mc = app.add_subcommand("mc", "Monte Carlo estimate of P{tau <= t}, printed as CSV");
  mc_model.attach(mc);
  mc->add_option("--c", mc_c, "drift (premium rate)")->required();
  mc->add_option("--u", mc_u, "level")->required();
  mc->add_option("--t", mc_t, "finite horizon")->required();
  mc->add_option("--v", mc_v, "condition on T1 = v and estimate P{v < tau <= t | T1 = v}");
  mc_mc.attach(mc, 1000000);

  // capital
  std::string backend_name, cap_t;
  double alpha = 0.0, cap_c = 0.0;
  CLI::App* capital = app.add_subcommand("capital", "solve P{tau(u, c) <= t} = alpha for u");
  capital->add_option("--backend", backend_name, "exact|ig")->required();
  cap_model.attach(capital);
  capital->add_option("--alpha", alpha, "target probability in (0, 1)")->required();
  capital->add_option("--t", cap_t, "horizon, or 'inf' (ig only)")->required();
  capital->add_option("--c", cap_c, "drift (premium rate)")->required();

  CLI::App* selftest = app.add_subcommand("selftest", "check the anchor values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    if (*eval) {
      const Method method = parse_method(eval_method);
      const McOptions opts = eval_mc.options();
      const std::optional<ModelInput> model = eval_model.model(method == Method::mc && opts.t_law && opts.y_law);
      const Evaluation e = evaluate(method, model.value_or(ModelInput{}), eval_u, eval_c, parse_horizon(eval_t), opts);
      if (e.std_err) {
        std::printf("%s std_err=%s\n", format_probability(e.value).c_str(), format_probability(*e.std_err).c_str());
      } else {
        std::printf("%s\n", format_probability(e.value).c_str());
      }
    } else if (*sweep) {
      SweepConfig cfg;
      cfg.c_min = c_min;
      cfg.c_max = c_max;
      cfg.n_points = n_points;
      cfg.methods = parse_methods(sweep_methods);
      cfg.mc = sweep_mc.options();
      cfg.model = *sweep_model.model();
      cfg.u = sweep_u;
      cfg.t = parse_horizon(sweep_t);
      (void)FirstPassageQuery(cfg.u, cfg.t);
      cfg.output_path = sweep_out;
      const std::vector<SweepRow> rows = sweep_rows(cfg);
      if (sweep_out.empty()) {
        std::fputs(format_sweep_csv(rows).c_str(), stdout);
      } else {
        write_sweep_csv(sweep_out, rows);
      }
    } else if (*mc) {
      const McOptions opts = mc_mc.options();
      const std::optional<ModelInput> model = mc_model.model(opts.t_law && opts.y_law);
      auto law = [&](const std::optional<LawSpec>& given, std::optional<double> rate, const char* flag) {
        if (given) return *given;
        if (!model || !rate) throw DomainError(std::string("give ") + flag + " or --lam-t/--lam-y");
        return LawSpec::exponential(*rate);
      };
      const LawSpec t_law = law(opts.t_law, model ? model->lam_t : std::nullopt, "--t-law");
      const LawSpec y_law = law(opts.y_law, model ? model->lam_y : std::nullopt, "--y-law");
      const McSetup setup(t_law, y_law, mc_c, mc_u, mc_t, opts.n_paths, opts.seed);
      const EstimateCI e = mc_v ? simulate_conditional(*mc_v, setup, opts.workers)
                                : simulate_first_passage(opts.t1_law.value_or(t_law), setup, opts.workers);
      std::printf("%s\n%s\n", EstimateCI::csv_header().c_str(), e.csv_row().c_str());
    } else if (*capital) {
      Backend backend;
      if (backend_name == "exact") {
        backend = Backend::exact_exponential;
      } else if (backend_name == "ig") {
        backend = Backend::ig_kernel;
      } else {
        throw DomainError("--backend must be 'exact' or 'ig'");
      }
      const CapitalQuery q(alpha, parse_horizon(cap_t), cap_c, backend);
      const double u = solve_u(q, *cap_model.model());
      std::printf("%#.4g\n", u);
    } else if (*selftest) {
      return run_selftest();
    }
  } catch (const NoBracketError& e) {
    std::fprintf(stderr, "fptime: %s\n", e.what());
    return kExitNoBracket;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "fptime: invalid parameters: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fptime: %s\n", e.what());
    return 1;
  }
  return 0;
}
