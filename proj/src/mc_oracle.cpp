#include "fptime/mc_oracle.hpp"

#include <omp.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>

#include "fptime/errors.hpp"

namespace fptime {

namespace {

// Runs one path and reports whether the level is crossed in (start, t].
// When `first` is set the first jump happens at that time and a crossing by
// it is ignored.
bool path_crosses(const LawSpec& t1, const McSetup& s, std::optional<double> first, std::uint64_t index) {
  PathRng rng(s.seed, index);
  double now = first ? *first : t1.sample(rng);
  double claims = 0.0;
  bool skip = first.has_value();
  while (now <= s.t) {
    claims += s.y_law.sample(rng);
    if (claims - s.c * now > s.u && !skip) return true;
    skip = false;
    now += s.t_law.sample(rng);
  }
  return false;
}

std::uint64_t count_serial(const LawSpec& t1, const McSetup& s, std::optional<double> first) {
  std::uint64_t hits = 0;
  for (std::uint64_t i = 0; i < s.n_paths; ++i) hits += path_crosses(t1, s, first, i);
  return hits;
}

std::uint64_t count_parallel(const LawSpec& t1, const McSetup& s, std::optional<double> first, int workers) {
  if (workers <= 0) workers = default_workers();
  const auto n = static_cast<std::int64_t>(s.n_paths);
  std::uint64_t hits = 0;
#pragma omp parallel for num_threads(workers) schedule(dynamic, 4096) reduction(+ : hits)
  for (std::int64_t i = 0; i < n; ++i) hits += path_crosses(t1, s, first, static_cast<std::uint64_t>(i));
  return hits;
}

void check_conditional(double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("conditioning time v must be finite and >= 0");
}

}  // namespace

EstimateCI EstimateCI::from_hits(std::uint64_t hits, std::uint64_t n_paths, std::uint64_t seed) {
  EstimateCI e;
  e.n_paths = n_paths;
  e.seed = seed;
  if (n_paths == 0) return e;
  e.p_hat = static_cast<double>(hits) / static_cast<double>(n_paths);
  e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n_paths));
  return e;
}

std::string EstimateCI::csv_header() { return "p_hat,std_err,n_paths,seed"; }

std::string EstimateCI::csv_row() const {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.10g,%.10g,%llu,%llu", p_hat, std_err, static_cast<unsigned long long>(n_paths),
                static_cast<unsigned long long>(seed));
  return buf;
}

McSetup::McSetup(LawSpec t_law_, LawSpec y_law_, double c_, double u_, double t_, std::uint64_t n_paths_,
                 std::uint64_t seed_)
    : t_law(t_law_), y_law(y_law_), c(c_), u(u_), t(t_), n_paths(n_paths_), seed(seed_) {
  if (t_law.is_point_mass() && t_law.param(0) == 0.0) throw DomainError("inter-renewal time T must not be 0");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("rate c must be finite and >= 0");
  if (!(u >= 0.0) || !std::isfinite(u)) throw DomainError("level u must be finite and >= 0");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("horizon t must be finite and >= 0");
  if (n_paths == 0) throw DomainError("n_paths must be >= 1");
}

int default_workers() {
  if (const char* env = std::getenv("FPTIME_WORKERS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0 && n <= 4096) return static_cast<int>(n);
  }
  return omp_get_num_procs();
}

EstimateCI simulate_first_passage(const LawSpec& t1, const McSetup& s, int workers) {
  return EstimateCI::from_hits(count_parallel(t1, s, std::nullopt, workers), s.n_paths, s.seed);
}

EstimateCI simulate_conditional(double v, const McSetup& s, int workers) {
  check_conditional(v);
  if (v >= s.t) return EstimateCI::from_hits(0, s.n_paths, s.seed);
  return EstimateCI::from_hits(count_parallel(s.t_law, s, v, workers), s.n_paths, s.seed);
}

namespace reference {

EstimateCI simulate_first_passage(const LawSpec& t1, const McSetup& s) {
  return EstimateCI::from_hits(count_serial(t1, s, std::nullopt), s.n_paths, s.seed);
}

EstimateCI simulate_conditional(double v, const McSetup& s) {
  check_conditional(v);
  if (v >= s.t) return EstimateCI::from_hits(0, s.n_paths, s.seed);
  return EstimateCI::from_hits(count_serial(s.t_law, s, v), s.n_paths, s.seed);
}

}  // namespace reference

}  // namespace fptime
