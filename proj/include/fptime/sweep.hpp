#ifndef FPTIME_SWEEP_HPP_
#define FPTIME_SWEEP_HPP_

// Evaluation of any method at one point, and sweeps over the rate c written
// as CSV with header "c,method,value,std_err".

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fptime/laws.hpp"
#include "fptime/model_input.hpp"

namespace fptime {

enum class Method { type1, type2, type3, normal, diffusion, ig, teugels, mc };

std::string_view method_name(Method m);
// Throws DomainError for unknown names.
Method parse_method(std::string_view name);
// Comma separated list, e.g. "type1,ig,teugels".
std::vector<Method> parse_methods(std::string_view list);

struct McOptions {
  std::uint64_t n_paths = 100000;
  std::uint64_t seed = 42;
  int workers = 0;  // 0: default_workers()
  // Laws used by the mc method; exponentials from the model rates when unset.
  std::optional<LawSpec> t1_law;
  std::optional<LawSpec> t_law;
  std::optional<LawSpec> y_law;
};

struct Evaluation {
  double value;
  std::optional<double> std_err;  // mc only
};

// Throws DomainError (or CriticalRateError) when the method is not defined
// at the point, and the numerical errors of the underlying routine.
Evaluation evaluate(Method method, const ModelInput& model, double u, double c, double t,
                    const McOptions& mc = {});

struct SweepConfig {
  double c_min = 0.0;
  double c_max = 0.0;
  int n_points = 2;
  std::vector<Method> methods;
  ModelInput model;
  double u = 0.0;
  double t = 0.0;
  McOptions mc;
  std::string output_path;
  // Throws DomainError unless c_min < c_max and n_points >= 2.
  void validate() const;
  double c_at(int i) const;
};

struct SweepRow {
  double c;
  Method method;
  std::optional<double> value;  // empty where the method is undefined
  std::optional<double> std_err;
};

// Rows sorted by (c, method name). The analytic points run concurrently.
std::vector<SweepRow> sweep_rows(const SweepConfig& cfg);

namespace reference {
std::vector<SweepRow> sweep_rows(const SweepConfig& cfg);
}  // namespace reference

std::string format_sweep_csv(const std::vector<SweepRow>& rows);
// Throws Error naming the path when the file cannot be written.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
// Inverse of format_sweep_csv; throws DomainError on malformed input.
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

}  // namespace fptime

#endif  // FPTIME_SWEEP_HPP_
