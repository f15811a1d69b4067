#include "cone/lambert.hpp"

#include <cmath>
#include <stdexcept>

namespace cone {

namespace {

// Root of g(u) = u - ln(u) = s on [1, inf) for s >= 1. g is strictly
// increasing there with g(1) = 1. Safeguarded Newton: bisection whenever
// the Newton step leaves the bracket (g'(u) -> 0 at the branch point).
double solve_u_minus_log_u(double s) {
  if (s <= 1.0) return 1.0;

  double lo = 1.0;
  double hi = s + std::log1p(s) + 1.0;  // g(hi) >= s for every s >= 1

  // Initial guess: sqrt expansion near the branch point, u ~ s + ln(s) far out.
  double u;
  const double h = s - 1.0;
  if (h < 0.5) {
    const double x = std::sqrt(2.0 * h);
    u = 1.0 + x + 2.0 * h / 3.0;
  } else {
    u = s + std::log(s);
  }
  if (u <= lo || u >= hi) u = 0.5 * (lo + hi);

  const double tol = 1e-14 * std::max(1.0, s);
  for (int it = 0; it < 200; ++it) {
    const double f = u - std::log(u) - s;
    if (std::abs(f) <= tol) return u;
    if (f > 0.0) {
      hi = u;
    } else {
      lo = u;
    }
    const double fp = 1.0 - 1.0 / u;
    double next = (fp > 0.0) ? u - f / fp : lo;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == u) break;  // converged to rounding
    u = next;
  }
  return u;
}

constexpr double kInvE = 0.36787944117144232159552377016146;  // 1/e

}  // namespace

double lambert_w_minus1(double z) {
  // Accept arguments a few ulps past the branch point; they round to it.
  if (!(z < 0.0) || z < -kInvE * (1.0 + 4e-16)) {
    throw std::domain_error("lambert_w_minus1: argument must lie in [-1/e, 0)");
  }
  // With u = -w: u e^{-u} = -z, i.e. u - ln(u) = -ln(-z).
  double s = -std::log(-z);
  if (s < 1.0) s = 1.0;
  return -solve_u_minus_log_u(s);
}

double neg_w_factor(double zeta) {
  if (!(zeta >= 0.0)) {
    throw std::domain_error("neg_w_factor: zeta must be >= 0");
  }
  return solve_u_minus_log_u(zeta + 1.0);
}

}  // namespace cone
