#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>

namespace rlws {

/// One Dormand-Prince 5(4) step for a fixed-size autonomous system.
template <std::size_t N>
struct Dopri5Step {
  using State = std::array<double, N>;

  State y;        // fifth-order solution
  double error;   // scaled error norm; accept when <= 1
};

template <std::size_t N, class Rhs>
Dopri5Step<N> dopri5_step(const Rhs& rhs, const std::array<double, N>& y0, double h,
                          double rtol, double atol) {
  using State = std::array<double, N>;
  constexpr double a21 = 1.0 / 5.0;
  constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
  constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
  constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                   a54 = -212.0 / 729.0;
  constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                   a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
  constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                   b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
  constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                   e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

  auto combine = [&](auto... terms) {
    State out = y0;
    for (std::size_t i = 0; i < N; ++i) out[i] += h * (0.0 + ... + (terms.first * (*terms.second)[i]));
    return out;
  };
  auto term = [](double c, const State& k) { return std::pair<double, const State*>{c, &k}; };

  const State k1 = rhs(y0);
  const State k2 = rhs(combine(term(a21, k1)));
  const State k3 = rhs(combine(term(a31, k1), term(a32, k2)));
  const State k4 = rhs(combine(term(a41, k1), term(a42, k2), term(a43, k3)));
  const State k5 = rhs(combine(term(a51, k1), term(a52, k2), term(a53, k3), term(a54, k4)));
  const State k6 =
      rhs(combine(term(a61, k1), term(a62, k2), term(a63, k3), term(a64, k4), term(a65, k5)));
  const State y1 =
      combine(term(b1, k1), term(b3, k3), term(b4, k4), term(b5, k5), term(b6, k6));
  const State k7 = rhs(y1);

  double err = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * k7[i]);
    const double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    err = std::max(err, std::abs(e) / scale);
  }
  if (!std::isfinite(err)) err = HUGE_VAL;
  return {y1, err};
}

/// Standard step-size update factor for an order-5 method.
inline double dopri5_step_factor(double error) {
  if (error <= 0.0) return 5.0;
  return std::clamp(0.9 * std::pow(error, -0.2), 0.2, 5.0);
}

}  // namespace rlws
