#include "ams/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ams/rng.hpp"

namespace ams {

OutcomeLaw outcome_distribution(const SchemeSpec& scheme, double lambda,
                                const GaussianState& system_state,
                                const GaussianState& probe_state) {
  require(lambda > 0.0, ErrorKind::invalid, "outcome_distribution: lambda > 0");
  require(!probe_state.shifted(), ErrorKind::invalid,
          "outcome_distribution: probe state must be unshifted");
  ScatteringResult sc = induced_classical(scheme, lambda);
  OutcomeLaw law;
  law.mean = system_state.one_point(sc.f_lambda);
  law.variance = 0.5 * system_state.beta(sc.f_lambda, sc.f_lambda) +
                 0.5 * probe_state.beta(sc.g_lambda, sc.g_lambda);
  return law;
}

std::vector<double> sample_outcomes(const SchemeSpec& scheme, double lambda,
                                    const GaussianState& system_state,
                                    const GaussianState& probe_state, long long n,
                                    std::uint64_t seed, std::uint64_t stream) {
  require(n >= 1, ErrorKind::invalid, "sample_outcomes: n >= 1");
  OutcomeLaw law = outcome_distribution(scheme, lambda, system_state, probe_state);
  const double sd = std::sqrt(law.variance);
  std::vector<double> out(static_cast<std::size_t>(n), 0.0);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < n; ++i)
    out[std::size_t(i)] = law.mean + sd * rng::normal(seed, stream, std::uint64_t(i));
  return out;
}

double batch_mean(const OutcomeLaw& law, long long n, std::uint64_t seed,
                  std::uint64_t stream) {
  const double sd = std::sqrt(law.variance);
  const long long nchunks = (n + (long long)kSumChunk - 1) / (long long)kSumChunk;
  std::vector<double> partial(std::size_t(nchunks), 0.0);
#pragma omp parallel for schedule(static)
  for (long long c = 0; c < nchunks; ++c) {
    const long long lo = c * (long long)kSumChunk;
    const long long hi = std::min(n, lo + (long long)kSumChunk);
    double s = 0.0;
    for (long long i = lo; i < hi; ++i) s += rng::normal(seed, stream, std::uint64_t(i));
    partial[std::size_t(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return law.mean + sd * total / double(n);
}

MeasurementPlan plan_confidence(const SchemeSpec& scheme, double epsilon, double delta,
                                double lambda, const GaussianState& system_state,
                                const GaussianState& probe_state, std::uint64_t seed) {
  require(epsilon > 0.0, ErrorKind::invalid, "plan_confidence: epsilon > 0");
  require(delta > 0.0 && delta < 1.0, ErrorKind::invalid, "plan_confidence: delta in (0,1)");
  require(lambda > 0.0, ErrorKind::invalid, "plan_confidence: lambda > 0");

  // Exact lambda^2 coefficient of the mean, from the Born expansion.
  BornExpansion born = born_expand_induced(scheme, 2);
  LatticeFunction<double> c2 = born.f.coefficient(2, scheme.grid().with_components(1));
  const double C = std::abs(system_state.one_point(c2));
  const double lambda0 = C > 0.0 ? std::sqrt(epsilon / C)
                                 : std::numeric_limits<double>::infinity();
  require(lambda < lambda0, ErrorKind::statistical,
          "plan_confidence: bias C lambda^2 reaches the tolerance, no N suffices");

  OutcomeLaw law = outcome_distribution(scheme, lambda, system_state, probe_state);
  const double target = system_state.one_point(scheme.f_tilde);
  const double bias_actual = std::abs(law.mean - target);
  require(bias_actual < epsilon, ErrorKind::statistical,
          "plan_confidence: actual bias exceeds the tolerance");

  const double margin = epsilon - C * lambda * lambda;
  MeasurementPlan plan;
  plan.epsilon = epsilon;
  plan.delta = delta;
  plan.lambda = lambda;
  plan.bias_constant = C;
  plan.bias_actual = bias_actual;
  plan.seed = seed;
  plan.n_trials = (long long)std::ceil(law.variance / (delta * margin * margin));
  return plan;
}

CoverageResult coverage_experiment(const MeasurementPlan& plan, const SchemeSpec& scheme,
                                   const GaussianState& system_state,
                                   const GaussianState& probe_state, int replications) {
  require(replications >= 100, ErrorKind::invalid,
          "coverage_experiment: need >= 100 replications");
  OutcomeLaw law = outcome_distribution(scheme, plan.lambda, system_state, probe_state);
  CoverageResult out;
  out.law = law;
  out.target = system_state.one_point(scheme.f_tilde);
  std::vector<double> means(static_cast<std::size_t>(replications), 0.0);
  for (int rep = 0; rep < replications; ++rep)
    means[std::size_t(rep)] = batch_mean(law, plan.n_trials, plan.seed, std::uint64_t(rep));
  long long hits = 0;
  for (double m : means)
    if (std::abs(m - out.target) < plan.epsilon) ++hits;
  out.coverage = double(hits) / double(replications);
  out.mean_of_means = chunked_sum(means) / double(replications);
  return out;
}

}  // namespace ams
