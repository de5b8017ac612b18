#include "wm/asymptotics.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace wm {

MomentState1D steady_classical_state(const Potential1D& pot, int order, double x) {
  if (order < 3) {
    throw std::invalid_argument("steady_classical_state: order must be >= 3");
  }
  MomentState1D state;
  state.order = order;
  state.rho = std::exp(-pot.derivative(0, x));
  state.u = 0.0;
  state.half_pressure = 0.5 * state.rho;  // P = rho, i.e. T = 1
  state.coeffs.assign(static_cast<std::size_t>(order - 2), 0.0);
  return state;
}

AsymptoticPrediction predict(const Potential1D& pot, double x, double t, double hbar) {
  const std::vector<double> dv = potential_derivs(pot, x, 5);
  const double rho0 = std::exp(-dv[0]);

  // (V''' rho_0)'  = (V'''' - V''' V') rho_0
  // (V''' rho_0)'' = (V''''' - 2 V'''' V' + V''' (V'^2 - V'')) rho_0
  const double d1 = (dv[4] - dv[3] * dv[1]) * rho0;
  const double d2 = (dv[5] - 2.0 * dv[4] * dv[1] + dv[3] * (dv[1] * dv[1] - dv[2])) * rho0;

  const double h2 = hbar * hbar;
  AsymptoticPrediction out;
  out.f3 = h2 / 24.0 * dv[3] * rho0 * t;
  out.pressure = rho0 - h2 / 8.0 * d1 * t * t;
  out.u = h2 / 24.0 * d2 * t * t * t;
  out.rho = rho0 + h2 * t * t * t * t / 96.0 * g_of_x(pot, x);
  return out;
}

double g_of_x(const Potential1D& pot, double x) {
  const std::vector<double> dv = potential_derivs(pot, x, 6);
  const double w = std::exp(-2.0 * dv[0]);

  // Derivatives of W = e^{-2V}.
  const double w1 = -2.0 * dv[1] * w;
  const double w2 = (4.0 * dv[1] * dv[1] - 2.0 * dv[2]) * w;
  const double w3 = (-2.0 * dv[3] + 12.0 * dv[1] * dv[2] - 8.0 * dv[1] * dv[1] * dv[1]) * w;

  // g = -(V''' W)''' by the Leibniz rule.
  return -(dv[6] * w + 3.0 * dv[5] * w1 + 3.0 * dv[4] * w2 + dv[3] * w3);
}

}  // namespace wm
