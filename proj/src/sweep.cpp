#include "fptime/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <sstream>

#include "fptime/classic_approx.hpp"
#include "fptime/errors.hpp"
#include "fptime/exact_exp.hpp"
#include "fptime/ig_approx.hpp"
#include "fptime/mc_oracle.hpp"

namespace fptime {

namespace {

constexpr std::string_view kHeader = "c,method,value,std_err";

constexpr Method kAllMethods[] = {Method::type1,     Method::type2, Method::type3,   Method::normal,
                                  Method::diffusion, Method::ig,    Method::teugels, Method::mc};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::optional<double> parse_cell(std::string_view s) {
  if (s.empty()) return std::nullopt;
  const std::string str(s);
  char* end = nullptr;
  const double v = std::strtod(str.c_str(), &end);
  if (end != str.c_str() + str.size() || !std::isfinite(v)) throw DomainError("bad numeric cell '" + str + "'");
  return v;
}

SweepRow evaluate_row(const SweepConfig& cfg, double c, Method method) {
  SweepRow row{c, method, std::nullopt, std::nullopt};
  try {
    const Evaluation e = evaluate(method, cfg.model, cfg.u, c, cfg.t, cfg.mc);
    if (std::isfinite(e.value)) {
      row.value = e.value;
      row.std_err = e.std_err;
    }
  } catch (const Error&) {
    // undefined at this point: empty cells
  }
  return row;
}

void sort_rows(std::vector<SweepRow>& rows) {
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.c != b.c) return a.c < b.c;
    return method_name(a.method) < method_name(b.method);
  });
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::type1: return "type1";
    case Method::type2: return "type2";
    case Method::type3: return "type3";
    case Method::normal: return "normal";
    case Method::diffusion: return "diffusion";
    case Method::ig: return "ig";
    case Method::teugels: return "teugels";
    case Method::mc: return "mc";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  for (Method m : kAllMethods) {
    if (method_name(m) == name) return m;
  }
  throw DomainError("unknown method '" + std::string(name) +
                    "' (expected type1, type2, type3, normal, diffusion, ig, teugels or mc)");
}

std::vector<Method> parse_methods(std::string_view list) {
  std::vector<Method> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view item = list.substr(0, comma);
    if (!item.empty()) out.push_back(parse_method(item));
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw DomainError("method list is empty");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Evaluation evaluate(Method method, const ModelInput& model, double u, double c, double t, const McOptions& mc) {
  const FirstPassageQuery q(u, t);
  switch (method) {
    case Method::type1: return {type1_cdf(model.exp_model(c), q), std::nullopt};
    case Method::type2: return {type2_cdf(model.exp_model(c), q), std::nullopt};
    case Method::type3: return {type3_cdf(model.exp_model(c), q), std::nullopt};
    case Method::normal: {
      const ExpModel m = model.exp_model(c);
      if (c == m.critical_rate()) throw CriticalRateError("the normal approximation is undefined at c = c*");
      return {c < m.critical_rate() ? normal_below(m, q) : normal_above(m, q), std::nullopt};
    }
    case Method::diffusion: return {diffusion_approx_exp(model.exp_model(c), q), std::nullopt};
    case Method::ig: {
      const RenewalMoments rm = model.renewal_moments();
      return {std::isinf(t) ? ig_kernel_infty(rm, u, c) : ig_kernel(rm, u, c, t, 0.0), std::nullopt};
    }
    case Method::teugels: return {teugels_type_cdf(model.renewal_moments(), u, c, t), std::nullopt};
    case Method::mc: {
      auto law = [&](const std::optional<LawSpec>& given, const std::optional<double>& rate) {
        if (given) return *given;
        if (!rate) throw DomainError("the mc method needs laws or exponential rates");
        return LawSpec::exponential(*rate);
      };
      const LawSpec t_law = law(mc.t_law, model.lam_t);
      const LawSpec t1 = mc.t1_law ? *mc.t1_law : t_law;
      const McSetup setup(t_law, law(mc.y_law, model.lam_y), c, u, t, mc.n_paths, mc.seed);
      const EstimateCI e = simulate_first_passage(t1, setup, mc.workers);
      return {e.p_hat, e.std_err};
    }
  }
  throw DomainError("unknown method");
}

void SweepConfig::validate() const {
  if (!(c_min < c_max) || !std::isfinite(c_min) || !std::isfinite(c_max)) {
    throw DomainError("sweep needs finite c_min < c_max");
  }
  if (n_points < 2) throw DomainError("sweep needs n_points >= 2");
  if (methods.empty()) throw DomainError("sweep needs at least one method");
}

double SweepConfig::c_at(int i) const {
  if (i == n_points - 1) return c_max;
  return c_min + (c_max - c_min) * i / (n_points - 1);
}

std::vector<SweepRow> sweep_rows(const SweepConfig& cfg) {
  cfg.validate();
  struct Task {
    int point;
    Method method;
  };
  std::vector<Task> analytic, simulated;
  for (int i = 0; i < cfg.n_points; ++i) {
    for (Method m : cfg.methods) (m == Method::mc ? simulated : analytic).push_back({i, m});
  }
  std::vector<SweepRow> rows(analytic.size());
  std::exception_ptr failure;
  const int workers = cfg.mc.workers > 0 ? cfg.mc.workers : default_workers();
#pragma omp parallel for num_threads(workers) schedule(dynamic, 1)
  for (std::size_t k = 0; k < analytic.size(); ++k) {
    try {
      rows[k] = evaluate_row(cfg, cfg.c_at(analytic[k].point), analytic[k].method);
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  // each mc point is parallel inside
  for (const Task& task : simulated) rows.push_back(evaluate_row(cfg, cfg.c_at(task.point), task.method));
  sort_rows(rows);
  return rows;
}

namespace reference {

std::vector<SweepRow> sweep_rows(const SweepConfig& cfg) {
  cfg.validate();
  std::vector<SweepRow> rows;
  for (int i = 0; i < cfg.n_points; ++i) {
    for (Method m : cfg.methods) rows.push_back(evaluate_row(cfg, cfg.c_at(i), m));
  }
  sort_rows(rows);
  return rows;
}

}  // namespace reference

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kHeader);
  out += '\n';
  for (const SweepRow& r : rows) {
    out += fmt(r.c);
    out += ',';
    out += method_name(r.method);
    out += ',';
    if (r.value) out += fmt(*r.value);
    out += ',';
    if (r.std_err) out += fmt(*r.std_err);
    out += '\n';
  }
  return out;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << format_sweep_csv(rows);
  f.close();
  if (!f) throw Error("failed writing '" + path + "'");
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  std::vector<SweepRow> rows;
  bool header = true;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (header) {
      if (line != kHeader) throw DomainError("sweep CSV must start with '" + std::string(kHeader) + "'");
      header = false;
      continue;
    }
    if (line.empty()) continue;
    std::string_view cells[4];
    for (int i = 0; i < 4; ++i) {
      const auto comma = line.find(',');
      if ((comma == std::string_view::npos) != (i == 3)) throw DomainError("sweep CSV rows need 4 cells");
      cells[i] = line.substr(0, comma);
      if (comma != std::string_view::npos) line.remove_prefix(comma + 1);
    }
    const std::optional<double> c = parse_cell(cells[0]);
    if (!c) throw DomainError("sweep CSV row without c");
    rows.push_back({*c, parse_method(cells[1]), parse_cell(cells[2]), parse_cell(cells[3])});
  }
  if (header) throw DomainError("empty sweep CSV");
  return rows;
}

}  // namespace fptime
