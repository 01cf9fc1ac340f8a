// Serial reference vs OpenMP kernels. Usage: bench_parallel [n_paths] [workers]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#include "fptime/mc_oracle.hpp"
#include "fptime/sweep.hpp"

using namespace fptime;

namespace {

template <typename F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 400000;
  const int workers = argc > 2 ? std::atoi(argv[2]) : default_workers();
  std::printf("workers %d\n", workers);

  const LawSpec t_law = LawSpec::exponential(2), y_law = LawSpec::exponential(1);
  const McSetup s(t_law, y_law, 2.0, 10.0, 200.0, n, 42);
  EstimateCI a, b;
  const double ts = seconds([&] { a = reference::simulate_first_passage(t_law, s); });
  const double tp = seconds([&] { b = simulate_first_passage(t_law, s, workers); });
  std::printf("mc      n=%llu  serial %.3fs  parallel %.3fs  speedup %.2f  same=%s\n",
              static_cast<unsigned long long>(n), ts, tp, ts / tp, a.p_hat == b.p_hat ? "yes" : "no");

  SweepConfig cfg;
  cfg.c_min = 0.5;
  cfg.c_max = 4.0;
  cfg.n_points = 100;
  cfg.methods = parse_methods("type1,type2,type3,ig,teugels,diffusion,normal");
  cfg.model = ModelInput::exponential(2, 1);
  cfg.u = 20.0;
  cfg.t = 200.0;
  cfg.mc.workers = workers;
  std::vector<SweepRow> ra, rb;
  const double ss = seconds([&] { ra = reference::sweep_rows(cfg); });
  const double sp = seconds([&] { rb = sweep_rows(cfg); });
  std::printf("sweep   rows=%zu  serial %.3fs  parallel %.3fs  speedup %.2f\n", ra.size(), ss, sp, ss / sp);
  return 0;
}
