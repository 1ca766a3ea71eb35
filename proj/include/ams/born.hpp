#pragma once

#include <map>

#include "ams/coupling.hpp"

namespace ams {

// Polynomial in lambda with lattice-function coefficients. Negative
// exponents are allowed (the probe smearing carries one power of 1/lambda);
// exactly-zero coefficients are dropped.
struct LambdaPoly {
  std::map<int, LatticeFunction<double>> coeff;

  void add(int p, const LatticeFunction<double>& c, double scale = 1.0) {
    if (c.is_zero() || scale == 0.0) return;
    auto it = coeff.find(p);
    if (it == coeff.end()) {
      auto& slot = coeff.emplace(p, c).first->second;
      if (scale != 1.0) slot.scale(scale);
    } else {
      it->second.add_scaled(scale, c);
    }
  }

  bool has(int p) const { return coeff.count(p) != 0; }
  double coeff_norm(int p) const {
    auto it = coeff.find(p);
    return it == coeff.end() ? 0.0 : it->second.inf_norm();
  }
  int min_exponent() const { return coeff.empty() ? 0 : coeff.begin()->first; }
  int max_exponent() const { return coeff.empty() ? 0 : coeff.rbegin()->first; }

  LatticeFunction<double> coefficient(int p, const SpacetimeGrid& shape) const {
    auto it = coeff.find(p);
    return it == coeff.end() ? LatticeFunction<double>(shape) : it->second;
  }

  LatticeFunction<double> evaluate(double lambda, const SpacetimeGrid& shape) const {
    LatticeFunction<double> out(shape);
    for (const auto& [p, c] : coeff) out.add_scaled(std::pow(lambda, p), c);
    return out;
  }

  void drop_above(int p_max) {
    for (auto it = coeff.begin(); it != coeff.end();)
      it = it->first > p_max ? coeff.erase(it) : std::next(it);
  }
};

// Exact Born (Neumann) expansion of the induced observable: coefficient
// functions of pr1 theta_lambda (0; h_lambda) and of the probe components,
// collected from the alternating series E^-_{T_lambda} = sum_n
// (-E^-_{T_0} V)^n E^-_{T_0} with V the off-diagonal multiplication block.
struct BornExpansion {
  LambdaPoly f;  // 1-component coefficients
  LambdaPoly g;  // k-component coefficients
  int max_order = 0;
};

BornExpansion born_expand_induced(const CoupledOperatorSpec& spec,
                                  const LatticeFunction<double>& h, int max_order);

}  // namespace ams
