#pragma once

#include "wm/potential.hpp"
#include "wm/state.hpp"

namespace wm {

/// Short-time behavior of the order-3 moment system started from the
/// classical steady state rho = P = e^{-V}, u = f_3 = 0. Each field carries
/// its leading quantum correction; the truncation order in t is 1 for f_3,
/// 2 for P, 3 for u and 4 for rho. The formulas neglect relaxation and are
/// quantitative only for tau >= kAsymptoticsMinTau.
struct AsymptoticPrediction {
  double rho = 0.0;
  double u = 0.0;
  double pressure = 0.0;
  double f3 = 0.0;

  static constexpr int kRhoOrder = 4;
  static constexpr int kUOrder = 3;
  static constexpr int kPressureOrder = 2;
  static constexpr int kF3Order = 1;
};

inline constexpr double kAsymptoticsMinTau = 1e3;

/// The classical steady state of the potential: rho = P = e^{-V(x)},
/// u = f_3 = ... = f_M = 0.
MomentState1D steady_classical_state(const Potential1D& pot, int order, double x);

/// Leading-order short-time solution from the classical steady state:
///   f_3 = (hbar^2/24) V''' rho_0 t,
///   P   = P_0 - (hbar^2/8) (V''' rho_0)' t^2,
///   u   = (hbar^2/24) (V''' rho_0)'' t^3,
///   rho = rho_0 + (hbar^2 t^4 / 96) g(x),
/// with rho_0 = P_0 = e^{-V}. Needs potential derivatives up to order 6.
AsymptoticPrediction predict(const Potential1D& pot, double x, double t, double hbar);

/// Sign field of the leading density redistribution:
/// g(x) = -(V''' e^{-2V})''', expanded with the Leibniz rule over the
/// potential's closed-form derivatives (orders 3..6 required).
double g_of_x(const Potential1D& pot, double x);

}  // namespace wm
