// Batch front-end: synthesize measurement schemes and run the convergence,
// quantum, statistical and swap experiments from a key-value config.

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "ams/csv.hpp"
#include "ams/experiment.hpp"
#include "ams/scheme_json.hpp"

namespace {

using namespace ams;

ExperimentConfig load_config(const std::string& config_path, const std::string& out_dir,
                             long long seed_override) {
  KeyValueConfig kv =
      config_path.empty() ? KeyValueConfig::from_string("") : KeyValueConfig::from_file(config_path);
  ExperimentConfig cfg = ExperimentConfig::from_config(kv);
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  if (seed_override >= 0) cfg.seed = std::uint64_t(seed_override);
  std::filesystem::create_directories(cfg.out_dir);
  return cfg;
}

// lambda^{s_j-1} h_j, the scaled probe smearing entering effort columns.
LatticeFunction<double> scaled_smearing(const SchemeSpec& scheme, double lambda) {
  LatticeFunction<double> h = scheme.h;
  const SpacetimeGrid& g = scheme.grid();
  for (int j = 0; j < scheme.coupled.probes(); ++j) {
    double c = std::pow(lambda, scheme.coupled.smearing_exponents[j] - 1);
    for (int t = 0; t < g.nt; ++t)
      for (int x = 0; x < g.nx; ++x) h.at(j, t, x) *= c;
  }
  return h;
}

int cmd_synth(const ExperimentConfig& cfg) {
  ExperimentSetup setup = make_setup(cfg);
  SchemeSpec scheme = make_scheme(cfg);
  std::string path = cfg.out_dir + "/scheme.json";
  save_scheme(scheme, path);

  // Exact identities of the construction.
  FieldOperatorSpec probe1 = setup.probe_single;
  LatticeFunction<double> h1 = scheme.h.component(0);
  LatticeFunction<double> phi1 = scheme.probe_solution_phi.component(0);
  double dev_equiv = max_abs_diff(pauli_jordan(setup.system, scheme.f_tilde),
                                  pauli_jordan(setup.system, scheme.target_f));
  double dev_smear = max_abs_diff(pauli_jordan(probe1, h1), phi1);
  LatticeFunction<double> eh = advanced_green(probe1, h1);
  LatticeFunction<double> recon(scheme.grid().with_components(1));
  for (int t = 0; t < scheme.grid().nt; ++t)
    for (int x = 0; x < scheme.grid().nx; ++x)
      recon.at(0, t, x) = -scheme.coupled.couplings[0].at(0, t, x) * eh.at(0, t, x);
  double dev_defining = max_abs_diff(recon, scheme.f_tilde);

  std::printf("scheme written to %s\n", path.c_str());
  std::printf("identity E_S f_tilde = E_S f     max dev %.3e\n", dev_equiv);
  std::printf("identity E_P h = phi             max dev %.3e\n", dev_smear);
  std::printf("identity -rho E-_P h = f_tilde   max dev %.3e\n", dev_defining);
  bool ok = dev_equiv <= 1e-10 && dev_smear <= 1e-10 && dev_defining <= 1e-10;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_order_scan(const ExperimentConfig& cfg) {
  SchemeSpec scheme = make_scheme(cfg);
  GaussianState probe = make_probe_state(cfg, scheme);
  CsvWriter csv(cfg.out_dir + "/order_scan.csv", {"lambda", "residual_sup", "eff_value"});
  std::vector<double> residuals;
  for (double l : cfg.lambda_grid) {
    ScatteringResult r = induced_classical(scheme, l);
    double res = max_abs_diff(r.f_lambda, scheme.f_tilde);
    residuals.push_back(res);
    csv.row({fmt_g17(l), fmt_g17(res), fmt_g17(effort_smeared(probe, scaled_smearing(scheme, l)))});
  }
  FitResult fit = fit_loglog(cfg.lambda_grid, residuals);
  csv.comment("fitted_slope = " + fmt_g17(fit.slope));
  std::printf("order-scan: k = %d, fitted slope %.4f\n", cfg.order_k, fit.slope);
  return 0;
}

int cmd_quantum_scan(const ExperimentConfig& cfg) {
  SchemeSpec scheme = make_scheme(cfg);
  GaussianState sys0 = make_system_vacuum(cfg);
  GaussianState sys_shift = make_system_state(cfg);
  GaussianState probe = make_probe_state(cfg, scheme);

  std::complex<double> weyl_target = sys0.weyl_expectation(scheme.f_tilde);
  double m1_target = sys_shift.one_point(scheme.f_tilde);
  double m2_target = sys0.field_moment(scheme.f_tilde, 2);
  double m4_target = sys0.field_moment(scheme.f_tilde, 4);

  CsvWriter csv(cfg.out_dir + "/quantum_scan.csv",
                {"lambda", "weyl_err", "m1_err", "m2_err", "m3_abs", "m4_err", "eff_smeared",
                 "eff_weyl"});
  std::vector<double> weyl_errs, m1_errs, m2_errs, m4_errs;
  for (double l : cfg.lambda_grid) {
    InducedWeylExpectation w = induced_weyl_expectation(scheme, l, sys0, probe);
    double weyl_err = std::abs(w.rescaled - weyl_target);
    double m1_err = std::abs(induced_power_expectation(scheme, l, 1, sys_shift, probe) - m1_target);
    double m2_err = std::abs(induced_power_expectation(scheme, l, 2, sys0, probe) - m2_target);
    double m3_abs = std::abs(induced_power_expectation(scheme, l, 3, sys0, probe));
    double m4_err = std::abs(induced_power_expectation(scheme, l, 4, sys0, probe) - m4_target);
    double eff_s = effort_smeared(probe, scaled_smearing(scheme, l));
    double eff_w = effort_rescaled_weyl(probe, w.scattering.g_lambda);
    weyl_errs.push_back(weyl_err);
    m1_errs.push_back(m1_err);
    m2_errs.push_back(m2_err);
    m4_errs.push_back(m4_err);
    csv.row({fmt_g17(l), fmt_g17(weyl_err), fmt_g17(m1_err), fmt_g17(m2_err), fmt_g17(m3_abs),
             fmt_g17(m4_err), fmt_g17(eff_s), fmt_g17(eff_w)});
  }
  FitResult fw = fit_loglog(cfg.lambda_grid, weyl_errs);
  FitResult f1 = fit_loglog(cfg.lambda_grid, m1_errs);
  FitResult f2 = fit_loglog(cfg.lambda_grid, m2_errs);
  FitResult f4 = fit_loglog(cfg.lambda_grid, m4_errs);
  csv.comment("weyl_slope = " + fmt_g17(fw.slope));
  csv.comment("m1_slope = " + fmt_g17(f1.slope));
  csv.comment("m2_slope = " + fmt_g17(f2.slope));
  csv.comment("m4_slope = " + fmt_g17(f4.slope));
  std::printf("quantum-scan: slopes weyl %.3f, m1 %.3f, m2 %.3f, m4 %.3f\n", fw.slope, f1.slope,
              f2.slope, f4.slope);
  return 0;
}

int cmd_measure(const ExperimentConfig& cfg) {
  SchemeSpec scheme = make_scheme(cfg);
  GaussianState sys = make_system_state(cfg);
  GaussianState probe = make_probe_state(cfg, scheme);
  MeasurementPlan plan = plan_confidence(scheme, cfg.epsilon, cfg.delta, cfg.coverage_lambda,
                                         sys, probe, cfg.seed);
  CoverageResult cov = coverage_experiment(plan, scheme, sys, probe, cfg.replications);
  CsvWriter csv(cfg.out_dir + "/measure.csv",
                {"lambda", "n_trials", "epsilon", "delta", "bias_constant",
                 "empirical_coverage", "mean_of_means", "analytic_mean", "analytic_variance"});
  csv.row({fmt_g17(plan.lambda), std::to_string(plan.n_trials), fmt_g17(plan.epsilon),
           fmt_g17(plan.delta), fmt_g17(plan.bias_constant), fmt_g17(cov.coverage),
           fmt_g17(cov.mean_of_means), fmt_g17(cov.law.mean), fmt_g17(cov.law.variance)});
  double stderr_bound = 3.0 * std::sqrt(cfg.delta * (1.0 - cfg.delta) / cfg.replications);
  double threshold = 1.0 - cfg.delta - stderr_bound;
  std::printf("measure: N = %lld, coverage %.4f (threshold %.4f)\n", plan.n_trials,
              cov.coverage, threshold);
  if (cov.coverage < threshold) {
    std::fprintf(stderr, "coverage below threshold\n");
    return 4;
  }
  return 0;
}

int cmd_swap_demo(const ExperimentConfig& cfg) {
  require(cfg.mass_system == cfg.mass_probe, ErrorKind::geometry,
          "swap-demo: system and probe masses must be equal");
  SpacetimeGrid g = cfg.grid();
  FieldOperatorSpec P(g, {cfg.mass_system}, "swap field");
  GaugeProfile quarter = GaugeProfile::rotation(g, cfg.swap_sigma_minus, cfg.swap_sigma_plus,
                                                std::numbers::pi / 2);
  GaugeProfile full = GaugeProfile::rotation(g, cfg.swap_sigma_minus, cfg.swap_sigma_plus,
                                             std::numbers::pi);
  ComplexField F = make_swap_source(cfg);

  double dev_swap = swap_scatter_check(P, quarter, F);
  double dev_double = swap_scatter_check(P, full, F);

  GaussianState sys = GaussianState::vacuum(P, cfg.reference_slice);
  LatticeFunction<double> h = make_box_bump(
      g, cfg.swap_source_t_lo, cfg.swap_source_t_hi,
      {cfg.swap_source_x_start, cfg.swap_source_x_len}, 1.0);
  SwapInducedWeyl iw = swap_induced_weyl(P, quarter, h, sys);
  std::complex<double> direct = sys.weyl_expectation(h);
  double dev_weyl = std::abs(iw.value - direct);

  std::printf("swap identity |E_Q F + i E_P F|      max dev %.3e\n", dev_swap);
  std::printf("double rotation |E_Q F + E_P F|      max dev %.3e\n", dev_double);
  std::printf("induced Weyl vs omega(W_S(h))        dev %.3e (cross-check %.3e)\n", dev_weyl,
              iw.cross_check_dev);
  bool ok = dev_swap <= 1e-10 && dev_double <= 1e-10 && dev_weyl <= 1e-10 &&
            iw.cross_check_dev <= 1e-10;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asymptotic local measurement schemes on a lattice cylinder"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  long long seed_override = -1;
  int threads = 0;
  app.add_option("--config", config_path, "key-value config file");
  app.add_option("--out", out_dir, "output directory (overrides config)");
  app.add_option("--seed", seed_override, "seed override");
  app.add_option("--threads", threads, "OpenMP thread count (speed only, never results)");

  auto* synth = app.add_subcommand("synth", "synthesize a scheme and check its identities");
  auto* order = app.add_subcommand("order-scan", "classical convergence order scan");
  auto* quantum = app.add_subcommand("quantum-scan", "Weyl/moment convergence scan");
  auto* measure = app.add_subcommand("measure", "confidence-interval coverage experiment");
  auto* swap = app.add_subcommand("swap-demo", "equal-mass swap proof of principle");

  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#endif

  try {
    ams::ExperimentConfig cfg = load_config(config_path, out_dir, seed_override);
    if (synth->parsed()) return cmd_synth(cfg);
    if (order->parsed()) return cmd_order_scan(cfg);
    if (quantum->parsed()) return cmd_quantum_scan(cfg);
    if (measure->parsed()) return cmd_measure(cfg);
    if (swap->parsed()) return cmd_swap_demo(cfg);
  } catch (const ams::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.exit_code();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
