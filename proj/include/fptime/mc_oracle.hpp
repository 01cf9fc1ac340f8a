#ifndef FPTIME_MC_ORACLE_HPP_
#define FPTIME_MC_ORACLE_HPP_

// Monte Carlo estimates of P{tau(u, c) <= t} for arbitrary positive laws of
// T1, T and Y.
//
// Each path is simulated jump by jump; between jumps u + c s - V_s only
// grows, so checking V - c s > u at the jump epochs is exact. Path i draws
// from PathRng(seed, i), and the hit count is an integer sum, so estimates
// are bit-identical for any number of workers.

#include <cstdint>
#include <string>

#include "fptime/laws.hpp"

namespace fptime {

struct EstimateCI {
  double p_hat = 0.0;
  double std_err = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t seed = 0;

  static EstimateCI from_hits(std::uint64_t hits, std::uint64_t n_paths, std::uint64_t seed);
  static std::string csv_header();  // "p_hat,std_err,n_paths,seed"
  std::string csv_row() const;
};

struct McSetup {
  LawSpec t_law;
  LawSpec y_law;
  double c;
  double u;
  double t;  // finite
  std::uint64_t n_paths;
  std::uint64_t seed;
  McSetup(LawSpec t_law_, LawSpec y_law_, double c_, double u_, double t_, std::uint64_t n_paths_,
          std::uint64_t seed_);
};

// Worker count from FPTIME_WORKERS when it holds a positive integer,
// otherwise the number of available processors.
int default_workers();

// workers <= 0 means default_workers().
EstimateCI simulate_first_passage(const LawSpec& t1, const McSetup& s, int workers = 0);

// P{v < tau <= t | T1 = v}. A crossing by the first jump itself happens at
// time v and is not counted. Returns p_hat = 0 for v >= t.
EstimateCI simulate_conditional(double v, const McSetup& s, int workers = 0);

// Single-threaded versions, kept as the baseline for tests and benchmarks.
namespace reference {
EstimateCI simulate_first_passage(const LawSpec& t1, const McSetup& s);
EstimateCI simulate_conditional(double v, const McSetup& s);
}  // namespace reference

}  // namespace fptime

#endif  // FPTIME_MC_ORACLE_HPP_
