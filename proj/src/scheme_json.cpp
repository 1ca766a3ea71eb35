#include "ams/scheme_json.hpp"

#include <fstream>

namespace ams {

namespace {

using nlohmann::json;

json arr(const LatticeFunction<double>& f) { return json(f.data()); }

LatticeFunction<double> unarr(const json& j, const SpacetimeGrid& g) {
  LatticeFunction<double> f(g);
  auto v = j.get<std::vector<double>>();
  require(v.size() == f.data().size(), ErrorKind::invalid, "scheme json: array size mismatch");
  f.data() = std::move(v);
  return f;
}

json region_to_json(const Region& r) {
  return json{{"kind", r.kind == Region::Kind::slab ? "slab" : "box"},
              {"t_lo", r.t_lo},
              {"t_hi", r.t_hi},
              {"arc_start", r.arc.start},
              {"arc_len", r.arc.len}};
}

Region region_from_json(const json& j) {
  Region r;
  r.kind = j.at("kind").get<std::string>() == "slab" ? Region::Kind::slab : Region::Kind::box;
  r.t_lo = j.at("t_lo").get<int>();
  r.t_hi = j.at("t_hi").get<int>();
  r.arc.start = j.at("arc_start").get<int>();
  r.arc.len = j.at("arc_len").get<int>();
  return r;
}

}  // namespace

nlohmann::json scheme_to_json(const SchemeSpec& s) {
  const SpacetimeGrid& g = s.grid();
  json j;
  j["grid"] = {{"nt", g.nt}, {"nx", g.nx}, {"dt", g.dt}, {"dx", g.dx}};
  j["system"] = {{"masses", s.coupled.system.masses}, {"label", s.coupled.system.label}};
  j["probe"] = {{"masses", s.coupled.probe.masses}, {"label", s.coupled.probe.label}};
  json couplings = json::array();
  for (const auto& rho : s.coupled.couplings) couplings.push_back(arr(rho));
  j["couplings"] = couplings;
  j["weight_exponents"] = s.coupled.weight_exponents;
  j["smearing_exponents"] = s.coupled.smearing_exponents;
  j["target_f"] = arr(s.target_f);
  j["f_tilde"] = arr(s.f_tilde);
  j["probe_solution_phi"] = arr(s.probe_solution_phi);
  j["h"] = arr(s.h);
  j["N"] = region_to_json(s.N);
  j["N_tilde"] = region_to_json(s.N_tilde);
  j["L"] = region_to_json(s.L);
  j["order_k"] = s.order_k;
  j["phi_min"] = s.phi_min;
  j["cutoff_t0"] = s.cutoff_t0;
  j["band"] = {s.band_lo, s.band_hi};
  return j;
}

SchemeSpec scheme_from_json(const nlohmann::json& j) {
  SpacetimeGrid g;
  g.nt = j.at("grid").at("nt").get<int>();
  g.nx = j.at("grid").at("nx").get<int>();
  g.dt = j.at("grid").at("dt").get<double>();
  g.dx = j.at("grid").at("dx").get<double>();
  g.components = 1;

  SchemeSpec s;
  auto sys_masses = j.at("system").at("masses").get<std::vector<double>>();
  auto probe_masses = j.at("probe").at("masses").get<std::vector<double>>();
  int k = int(probe_masses.size());
  FieldOperatorSpec system(g, sys_masses, j.at("system").at("label").get<std::string>());
  FieldOperatorSpec probe(g.with_components(k), probe_masses,
                          j.at("probe").at("label").get<std::string>());
  std::vector<LatticeFunction<double>> couplings;
  for (const auto& c : j.at("couplings")) couplings.push_back(unarr(c, g));
  s.coupled = CoupledOperatorSpec::make(system, probe, std::move(couplings),
                                        j.at("weight_exponents").get<std::vector<int>>(),
                                        j.at("smearing_exponents").get<std::vector<int>>());
  s.target_f = unarr(j.at("target_f"), g);
  s.f_tilde = unarr(j.at("f_tilde"), g);
  s.probe_solution_phi = unarr(j.at("probe_solution_phi"), g.with_components(k));
  s.h = unarr(j.at("h"), g.with_components(k));
  s.N = region_from_json(j.at("N"));
  s.N_tilde = region_from_json(j.at("N_tilde"));
  s.L = region_from_json(j.at("L"));
  s.order_k = j.at("order_k").get<int>();
  s.phi_min = j.at("phi_min").get<double>();
  s.cutoff_t0 = j.at("cutoff_t0").get<int>();
  s.band_lo = j.at("band")[0].get<int>();
  s.band_hi = j.at("band")[1].get<int>();
  s.validate();
  return s;
}

void save_scheme(const SchemeSpec& scheme, const std::string& path) {
  std::ofstream out(path);
  require(bool(out), ErrorKind::invalid, "save_scheme: cannot open " + path);
  out << scheme_to_json(scheme).dump(1) << "\n";
}

SchemeSpec load_scheme(const std::string& path) {
  std::ifstream in(path);
  require(bool(in), ErrorKind::invalid, "load_scheme: cannot open " + path);
  nlohmann::json j;
  in >> j;
  return scheme_from_json(j);
}

}  // namespace ams
