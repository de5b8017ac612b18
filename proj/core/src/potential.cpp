#include "wm/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace wm {

namespace {

constexpr int kBumpMaxOrder = 13;

// Dense polynomial helpers; coefficient k multiplies x^k. All bump-recurrence
// coefficients are integers below 2^53, so double arithmetic stays exact.
using Poly = std::vector<double>;

Poly poly_mul(const Poly& p, const Poly& q) {
  Poly r(p.size() + q.size() - 1, 0.0);
  for (size_t i = 0; i < p.size(); ++i) {
    for (size_t j = 0; j < q.size(); ++j) r[i + j] += p[i] * q[j];
  }
  return r;
}

Poly poly_add(const Poly& p, const Poly& q) {
  Poly r(std::max(p.size(), q.size()), 0.0);
  for (size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (size_t i = 0; i < q.size(); ++i) r[i] += q[i];
  return r;
}

Poly poly_diff(const Poly& p) {
  if (p.size() <= 1) return {0.0};
  Poly r(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) r[i - 1] = static_cast<double>(i) * p[i];
  return r;
}

double poly_eval(const Poly& p, double x) {
  double acc = 0.0;
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

// P_n in V^{(n)}(x) = P_n(x) / (1-x^2)^{2n} * V(x), via
// P_{n+1} = P_n' D^2 + 4 n x P_n D - 2 x P_n with D = 1 - x^2.
const std::vector<Poly>& bump_numerators() {
  static const std::vector<Poly> table = [] {
    const Poly d{1.0, 0.0, -1.0};
    const Poly d2 = poly_mul(d, d);
    std::vector<Poly> polys;
    polys.push_back({1.0});
    for (int n = 0; n < kBumpMaxOrder; ++n) {
      const Poly& p = polys.back();
      Poly next = poly_mul(poly_diff(p), d2);
      next = poly_add(next, poly_mul(Poly{0.0, 4.0 * n}, poly_mul(p, d)));
      next = poly_add(next, poly_mul(Poly{0.0, -2.0}, p));
      polys.push_back(std::move(next));
    }
    return polys;
  }();
  return table;
}

double bump_derivative(double amplitude, int order, double x) {
  if (order > kBumpMaxOrder) {
    throw std::out_of_range("Potential1D: bump derivatives available only up to order 13");
  }
  if (std::abs(x) >= 1.0) return 0.0;
  const double d = (1.0 - x) * (1.0 + x);
  const double envelope = std::exp(-1.0 / d);
  // Once the envelope underflows, so does the whole derivative; bail out
  // before 1/d^{2n} can overflow.
  if (envelope == 0.0) return 0.0;
  const double numer = poly_eval(bump_numerators()[static_cast<size_t>(order)], x);
  return amplitude * numer / std::pow(d, 2 * order) * envelope;
}

double polynomial_derivative(const std::vector<double>& coeffs, int order, double x) {
  double acc = 0.0;
  for (size_t k = coeffs.size(); k-- > static_cast<size_t>(order);) {
    double fall = 1.0;
    for (int j = 0; j < order; ++j) fall *= static_cast<double>(k - static_cast<size_t>(j));
    acc = acc * x + coeffs[k] * fall;
  }
  return acc;
}

}  // namespace

std::string to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::kZero: return "zero";
    case PotentialKind::kLinear: return "linear";
    case PotentialKind::kHarmonic: return "harmonic";
    case PotentialKind::kPolynomial: return "polynomial";
    case PotentialKind::kBump: return "bump";
  }
  return "unknown";
}

Potential1D Potential1D::zero() { return {PotentialKind::kZero, {}}; }

Potential1D Potential1D::linear(double slope) {
  return {PotentialKind::kLinear, {slope}};
}

Potential1D Potential1D::harmonic(double stiffness) {
  return {PotentialKind::kHarmonic, {stiffness}};
}

Potential1D Potential1D::polynomial(std::vector<double> coeffs) {
  return {PotentialKind::kPolynomial, std::move(coeffs)};
}

Potential1D Potential1D::bump(double amplitude) {
  return {PotentialKind::kBump, {amplitude}};
}

double Potential1D::derivative(int order, double x) const {
  if (order < 0) throw std::invalid_argument("Potential1D: negative derivative order");
  switch (kind_) {
    case PotentialKind::kZero:
      return 0.0;
    case PotentialKind::kLinear:
      if (order == 0) return params_[0] * x;
      return order == 1 ? params_[0] : 0.0;
    case PotentialKind::kHarmonic:
      if (order == 0) return 0.5 * params_[0] * x * x;
      if (order == 1) return params_[0] * x;
      return order == 2 ? params_[0] : 0.0;
    case PotentialKind::kPolynomial:
      return polynomial_derivative(params_, order, x);
    case PotentialKind::kBump:
      return bump_derivative(params_[0], order, x);
  }
  return 0.0;
}

int Potential1D::max_derivative_order() const {
  return kind_ == PotentialKind::kBump ? kBumpMaxOrder : 1000;
}

std::vector<double> potential_derivs(const Potential1D& pot, double x, int max_order) {
  if (max_order < 0) throw std::invalid_argument("potential_derivs: negative order");
  std::vector<double> out(static_cast<size_t>(max_order) + 1);
  for (int k = 0; k <= max_order; ++k) out[static_cast<size_t>(k)] = pot.derivative(k, x);
  return out;
}

Potential3D Potential3D::zero() { return {PotentialKind::kZero, {}}; }

Potential3D Potential3D::linear(const std::array<double, 3>& gradient) {
  std::vector<std::pair<MultiIndex, double>> terms;
  for (int d = 0; d < 3; ++d) {
    if (gradient[static_cast<size_t>(d)] != 0.0) {
      terms.emplace_back(unit_index(d), gradient[static_cast<size_t>(d)]);
    }
  }
  return {PotentialKind::kLinear, std::move(terms)};
}

Potential3D Potential3D::harmonic(const std::array<double, 3>& stiffness) {
  std::vector<std::pair<MultiIndex, double>> terms;
  for (int d = 0; d < 3; ++d) {
    if (stiffness[static_cast<size_t>(d)] != 0.0) {
      terms.emplace_back(unit_index(d).plus(d), 0.5 * stiffness[static_cast<size_t>(d)]);
    }
  }
  return {PotentialKind::kHarmonic, std::move(terms)};
}

Potential3D Potential3D::polynomial(std::vector<std::pair<MultiIndex, double>> terms) {
  for (const auto& [beta, coeff] : terms) {
    if (!beta.valid()) {
      throw std::invalid_argument("Potential3D: polynomial exponent has a negative component");
    }
  }
  return {PotentialKind::kPolynomial, std::move(terms)};
}

double Potential3D::derivative(const MultiIndex& lambda, const std::array<double, 3>& x) const {
  if (!lambda.valid()) {
    throw std::invalid_argument("Potential3D: negative derivative order");
  }
  double acc = 0.0;
  for (const auto& [beta, coeff] : terms_) {
    double term = coeff;
    for (int d = 0; d < 3 && term != 0.0; ++d) {
      const int b = beta[d];
      const int l = lambda[d];
      if (l > b) {
        term = 0.0;
        break;
      }
      for (int j = 0; j < l; ++j) term *= static_cast<double>(b - j);
      const int rem = b - l;
      for (int j = 0; j < rem; ++j) term *= x[static_cast<size_t>(d)];
    }
    acc += term;
  }
  return acc;
}

}  // namespace wm
