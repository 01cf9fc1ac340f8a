#include "fptime/laws.hpp"

#include <cctype>
#include <algorithm>
#include <charconv>
#include <cstdio>
#include <limits>
#include <vector>

#include "fptime/errors.hpp"

namespace fptime {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError("cannot parse law parameter '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

LawSpec::LawSpec(LawFamily f, double a, double b) : family_(f), params_{a, b} {
  const int arity = (f == LawFamily::gamma || f == LawFamily::pareto) ? 2 : 1;
  for (int i = 0; i < arity; ++i) {
    // A point mass at 0 is allowed; it stands for "no delay" in the T1 role.
    const bool ok = f == LawFamily::deterministic ? params_[i] >= 0.0 : params_[i] > 0.0;
    if (!ok || !std::isfinite(params_[i])) {
      throw DomainError("law parameters must be finite and > 0: " + to_string());
    }
  }
}

LawSpec LawSpec::exponential(double rate) { return {LawFamily::exponential, rate, 0.0}; }
LawSpec LawSpec::gamma(double shape, double rate) { return {LawFamily::gamma, shape, rate}; }
LawSpec LawSpec::pareto(double index, double scale) { return {LawFamily::pareto, index, scale}; }
LawSpec LawSpec::deterministic(double value) { return {LawFamily::deterministic, value, 0.0}; }

LawSpec LawSpec::parse(std::string_view text) {
  text = trim(text);
  const auto open = text.find('(');
  if (open == std::string_view::npos || text.back() != ')') {
    throw DomainError("law spec must look like family(p1[,p2]): '" + std::string(text) + "'");
  }
  const std::string_view name = trim(text.substr(0, open));
  std::string_view body = text.substr(open + 1, text.size() - open - 2);
  std::vector<double> values;
  while (true) {
    const auto comma = body.find(',');
    values.push_back(parse_number(body.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  auto expect = [&](std::size_t n) {
    if (values.size() != n) {
      throw DomainError(std::string(name) + " takes " + std::to_string(n) + " parameter(s)");
    }
  };
  if (name == "exponential" || name == "exp") {
    expect(1);
    return exponential(values[0]);
  }
  if (name == "gamma") {
    expect(2);
    return gamma(values[0], values[1]);
  }
  if (name == "pareto") {
    expect(2);
    return pareto(values[0], values[1]);
  }
  if (name == "deterministic" || name == "det") {
    expect(1);
    return deterministic(values[0]);
  }
  throw DomainError("unknown law family '" + std::string(name) + "'");
}

double LawSpec::pdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  const double a = params_[0], b = params_[1];
  switch (family_) {
    case LawFamily::exponential:
      return a * std::exp(-a * x);
    case LawFamily::gamma:
      return std::exp((a - 1.0) * std::log(x) - b * x + a * std::log(b) - std::lgamma(a));
    case LawFamily::pareto:
      return x < b ? 0.0 : a / b * std::pow(x / b, -a - 1.0);
    case LawFamily::deterministic:
      return 0.0;
  }
  return 0.0;
}

double LawSpec::survival(double x) const {
  if (x < 0.0) return 1.0;
  const double a = params_[0], b = params_[1];
  switch (family_) {
    case LawFamily::exponential:
      return std::exp(-a * x);
    case LawFamily::gamma: {
      // Regularized upper incomplete gamma by series / continued fraction.
      const double z = b * x;
      if (z == 0.0) return 1.0;
      const double log_pref = a * std::log(z) - z - std::lgamma(a);
      if (z < a + 1.0) {
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 10000; ++n) {
          term *= z / (a + n);
          sum += term;
          if (term < sum * 1e-16) break;
        }
        return std::max(0.0, 1.0 - std::exp(log_pref) * sum);
      }
      constexpr double kTiny = 1e-300;
      double bb = z + 1.0 - a, c = 1.0 / kTiny, d = 1.0 / bb, h = d;
      for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        bb += 2.0;
        d = an * d + bb;
        if (std::abs(d) < kTiny) d = kTiny;
        c = bb + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
      }
      return std::exp(log_pref) * h;
    }
    case LawFamily::pareto:
      return x < b ? 1.0 : std::pow(x / b, -a);
    case LawFamily::deterministic:
      return x < a ? 1.0 : 0.0;
  }
  return 0.0;
}

std::string LawSpec::to_string() const {
  auto fmt = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  switch (family_) {
    case LawFamily::exponential:
      return "exponential(" + fmt(params_[0]) + ")";
    case LawFamily::gamma:
      return "gamma(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
    case LawFamily::pareto:
      return "pareto(" + fmt(params_[0]) + "," + fmt(params_[1]) + ")";
    case LawFamily::deterministic:
      return "deterministic(" + fmt(params_[0]) + ")";
  }
  return "?";
}

LawMoments moments_of_law(const LawSpec& spec) {
  const double a = spec.param(0), b = spec.param(1);
  switch (spec.family()) {
    case LawFamily::exponential:
      return {1.0 / a, 1.0 / (a * a), 6.0 / (a * a * a)};
    case LawFamily::gamma:
      return {a / b, a / (b * b), a * (a + 1.0) * (a + 2.0) / (b * b * b)};
    case LawFamily::pareto: {
      const double mean = a > 1.0 ? a * b / (a - 1.0) : kInf;
      const double var = a > 2.0 ? a * b * b / (a - 2.0) - mean * mean : kInf;
      std::optional<double> third;
      if (a > 3.0) third = a * b * b * b / (a - 3.0);
      return {mean, var, third};
    }
    case LawFamily::deterministic:
      return {a, 0.0, a * a * a};
  }
  return {kInf, kInf, std::nullopt};
}

PathRng::PathRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ splitmix64(stream);
  for (auto& w : s_) w = splitmix64(x);
}

PathRng::result_type PathRng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

}  // namespace fptime
