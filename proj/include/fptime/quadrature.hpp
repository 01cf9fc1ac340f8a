#ifndef FPTIME_QUADRATURE_HPP_
#define FPTIME_QUADRATURE_HPP_

// Globally adaptive Gauss-Kronrod (7/15) quadrature.
//
// The panel with the largest error estimate is bisected until the summed
// estimate falls below max(abs_tol, rel_tol * |I|) or the panel budget is
// exhausted. Error estimates follow QUADPACK's qk15.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "fptime/errors.hpp"

namespace fptime::quad {

struct Options {
  double abs_tol = 1e-9;
  double rel_tol = 0.0;
  int max_panels = 10000;
  // Number of equal panels the interval is split into before adapting.
  int initial_panels = 1;
};

struct Result {
  double value = 0.0;
  double error = 0.0;
  int panels = 0;
  bool converged = false;
};

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

template <typename F>
Panel gk15(F& f, double a, double b) {
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = std::numeric_limits<double>::min();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double res_g = fc * kWg[3];
  double res_k = fc * kWgk[7];
  double res_abs = std::abs(res_k);
  std::array<double, 7> fv1{}, fv2{};
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double dx = half * kXgk[jtw];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    res_g += kWg[j] * (f1 + f2);
    res_k += kWgk[jtw] * (f1 + f2);
    res_abs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double dx = half * kXgk[jtwm1];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    res_k += kWgk[jtwm1] * (f1 + f2);
    res_abs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double mean = 0.5 * res_k;
  double res_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    res_asc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  const double h = std::abs(half);
  const double value = res_k * half;
  res_abs *= h;
  res_asc *= h;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) {
    err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  }
  if (res_abs > kTiny / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * res_abs, err);
  }
  return {a, b, value, err};
}

}  // namespace detail

// Integrates f over [a, b]. Never throws; check Result::converged.
template <typename F>
Result integrate_adaptive(F&& f, double a, double b, const Options& opts = {}) {
  Result out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Panel> heap;
  const int n0 = std::max(1, opts.initial_panels);
  double total = 0.0, total_err = 0.0;
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    detail::Panel p = detail::gk15(f, lo, hi);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  int panels = n0;
  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (total_err > tolerance() && panels < opts.max_panels) {
    detail::Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    // Panel cannot be split further in double precision.
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
    heap.pop();
    detail::Panel left = detail::gk15(f, worst.a, mid);
    detail::Panel right = detail::gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  out.panels = panels;
  out.converged = total_err <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total));
  return out;
}

// Integrates f over [a, b] and throws QuadratureError when the tolerance
// is not reached.
template <typename F>
double integrate(F&& f, double a, double b, const Options& opts = {}) {
  Result r = integrate_adaptive(f, a, b, opts);
  if (!r.converged) {
    throw QuadratureError("adaptive quadrature did not converge on [" + std::to_string(a) + ", " +
                              std::to_string(b) + "]",
                          r.error);
  }
  return r.value;
}

// Sorted breakpoints on [a, b]. Integrands whose mass sits in a narrow peak
// far from the endpoints are split around the peak, so the first Kronrod
// panel cannot step over it.
class Breaks {
 public:
  Breaks(double a, double b) : a_(a), b_(b) { points_ = {a, b}; }

  Breaks& add(double x) {
    if (x > a_ && x < b_ && std::isfinite(x)) points_.push_back(x);
    return *this;
  }
  // a + h, a + 2h, a + 4h, ... below b.
  Breaks& ladder(double h) {
    if (!(h > 0.0)) return *this;
    for (double x = a_ + h; x < b_; x = a_ + 2.0 * (x - a_)) add(x);
    return *this;
  }
  // center +- sigma * {1, 2, 4, ..., 2^k}, plus center itself.
  Breaks& peak(double center, double sigma, int levels = 5) {
    add(center);
    double w = sigma;
    for (int i = 0; i < levels && sigma > 0.0; ++i, w *= 2.0) {
      add(center - w);
      add(center + w);
    }
    return *this;
  }

  std::vector<double> points() const {
    std::vector<double> p = points_;
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    return p;
  }

 private:
  double a_, b_;
  std::vector<double> points_;
};

// Integrates piecewise over consecutive breakpoints; the absolute tolerance
// is shared equally between the pieces.
template <typename F>
double integrate(F&& f, const Breaks& breaks, const Options& opts = {}) {
  const std::vector<double> p = breaks.points();
  Options piece = opts;
  const int pieces = static_cast<int>(p.size()) - 1;
  piece.abs_tol = opts.abs_tol / std::max(1, pieces);
  double total = 0.0;
  for (int i = 0; i < pieces; ++i) total += integrate(f, p[i], p[i + 1], piece);
  return total;
}

}  // namespace fptime::quad

#endif  // FPTIME_QUADRATURE_HPP_
