#ifndef FPTIME_LAWS_HPP_
#define FPTIME_LAWS_HPP_

// Positive laws for inter-renewal times and jump sizes.
//
// Text form, as accepted by LawSpec::parse and printed by to_string():
//   exponential(rate)
//   gamma(shape, rate)
//   pareto(index, scale)      survival (x/scale)^{-index} for x >= scale
//   deterministic(value)

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace fptime {

enum class LawFamily { exponential, gamma, pareto, deterministic };

class LawSpec {
 public:
  static LawSpec exponential(double rate);
  static LawSpec gamma(double shape, double rate);
  static LawSpec pareto(double index, double scale);
  static LawSpec deterministic(double value);
  // Throws DomainError on unknown families, wrong arity or bad values.
  static LawSpec parse(std::string_view text);

  LawFamily family() const { return family_; }
  double param(int i) const { return params_[i]; }
  bool is_point_mass() const { return family_ == LawFamily::deterministic; }

  // Density; zero everywhere for the point mass.
  double pdf(double x) const;
  // P{X > x}.
  double survival(double x) const;
  std::string to_string() const;

  template <typename Urbg>
  double sample(Urbg& g) const {
    switch (family_) {
      case LawFamily::exponential:
        return -std::log(open_unit(g)) / params_[0];
      case LawFamily::gamma:
        return std::gamma_distribution<double>(params_[0], 1.0 / params_[1])(g);
      case LawFamily::pareto:
        return params_[1] * std::pow(open_unit(g), -1.0 / params_[0]);
      case LawFamily::deterministic:
        return params_[0];
    }
    return 0.0;
  }

 private:
  LawSpec(LawFamily f, double a, double b);

  // Uniform on (0, 1] from the top 53 bits.
  template <typename Urbg>
  static double open_unit(Urbg& g) {
    return (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;
  }

  LawFamily family_;
  std::array<double, 2> params_;
};

// Raw moments; mean/variance are +inf when they do not exist.
struct LawMoments {
  double mean;
  double variance;
  std::optional<double> third;  // E X^3, absent when infinite
};

LawMoments moments_of_law(const LawSpec& spec);

// xoshiro256** seeded through splitmix64 from (seed, stream). Path i of a
// simulation always draws from stream i, so results do not depend on how
// paths are scheduled across workers.
class PathRng {
 public:
  using result_type = std::uint64_t;
  PathRng(std::uint64_t seed, std::uint64_t stream);
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace fptime

#endif  // FPTIME_LAWS_HPP_
