#pragma once

#include "ams/coupling.hpp"
#include "ams/measure.hpp"

// Plain serial implementations of the hot kernels, kept as the comparison
// baseline for the OpenMP paths. Tests assert exact agreement; the bench
// target compares speed.
namespace ams::reference {

LatticeFunction<double> retarded_green(const FieldOperatorSpec& spec,
                                       const LatticeFunction<double>& f);
LatticeFunction<double> advanced_green(const FieldOperatorSpec& spec,
                                       const LatticeFunction<double>& f);
LatticeFunction<double> coupled_advanced_green(const CoupledOperatorSpec& spec, double lambda,
                                               const LatticeFunction<double>& F);
double batch_mean(const OutcomeLaw& law, long long n, std::uint64_t seed,
                  std::uint64_t stream);

}  // namespace ams::reference
