#pragma once

#include <cstdint>

#include "ams/gaussian.hpp"

namespace ams {

// Everything needed to run the estimation experiment at one coupling.
struct MeasurementPlan {
  double epsilon = 0.0;
  double delta = 0.0;
  double lambda = 0.0;
  long long n_trials = 0;
  double bias_constant = 0.0;  // C, the exact lambda^2 coefficient of the mean
  double bias_actual = 0.0;    // |mean(lambda) - target|, for the record
  std::uint64_t seed = 0;
};

struct OutcomeLaw {
  double mean = 0.0;
  double variance = 0.0;
};

// Law of the rescaled outcome Y_lambda: mean <u, f_lambda>, variance
// beta_S(f_lambda,f_lambda)/2 + beta_P(g_lambda,g_lambda)/2.
OutcomeLaw outcome_distribution(const SchemeSpec& scheme, double lambda,
                                const GaussianState& system_state,
                                const GaussianState& probe_state);

// n independent draws, reproducible bit-exactly from (seed, stream).
std::vector<double> sample_outcomes(const SchemeSpec& scheme, double lambda,
                                    const GaussianState& system_state,
                                    const GaussianState& probe_state, long long n,
                                    std::uint64_t seed, std::uint64_t stream = 0);

// Sample mean of n draws without materializing them; chunked summation makes
// the value independent of thread count.
double batch_mean(const OutcomeLaw& law, long long n, std::uint64_t seed,
                  std::uint64_t stream);

// N_lambda from the Chebyshev bound with the exact variance and the exact
// lambda^2 bias coefficient taken from the Born expansion.
MeasurementPlan plan_confidence(const SchemeSpec& scheme, double epsilon, double delta,
                                double lambda, const GaussianState& system_state,
                                const GaussianState& probe_state, std::uint64_t seed = 0);

struct CoverageResult {
  double coverage = 0.0;
  double mean_of_means = 0.0;
  double target = 0.0;
  OutcomeLaw law;
};

// `replications` independent batches of N_lambda draws; coverage is the
// fraction whose sample mean lies within epsilon of the true one-point
// value.
CoverageResult coverage_experiment(const MeasurementPlan& plan, const SchemeSpec& scheme,
                                   const GaussianState& system_state,
                                   const GaussianState& probe_state, int replications);

}  // namespace ams
