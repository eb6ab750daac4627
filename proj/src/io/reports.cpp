#include "io/reports.hpp"

#include <algorithm>
#include <cstdlib>

#include "common/errors.hpp"
#include "complex/homology.hpp"
#include "knot/knot_complex.hpp"

namespace knotfilt::io {

using nlohmann::json;

namespace {

constexpr std::size_t kListedViolations = 100;
constexpr std::size_t kListedWitnessGenerators = 16;

json grid_json(const grid::GridDiagram& g) { return {{"n", g.n}, {"O", g.o}, {"X", g.x}}; }

json laurent_json(const knot::Laurent& p) {
  json terms = json::array();
  if (!p.is_zero()) {
    for (int e = p.high(); e >= p.low(); --e) {
      if (p.coeff(e) != 0) terms.push_back({{"exponent", e}, {"coefficient", p.coeff(e)}});
    }
  }
  return {{"text", p.to_string()}, {"terms", terms}};
}

json witness_json(const FilteredComplex& c, const TauResult& r) {
  json ids = json::array();
  const auto& support = r.witness.support();
  for (std::size_t k = 0; k < support.size() && k < kListedWitnessGenerators; ++k) {
    ids.push_back(c.generator(support[k]).id);
  }
  return {{"level", r.tau},
          {"size", support.size()},
          {"generators", ids},
          {"truncated", support.size() > kListedWitnessGenerators}};
}

// A knot-like input reduced to what the commands need.
struct HatData {
  FilteredComplex hat;
  int auxiliary_factors = 0;
  bool knot = false;  // genus and hfk are meaningful
};

HatData hat_of(const ComplexData& data) {
  if (const auto* d = std::get_if<knot::KnotComplex>(&data)) {
    knot::require_valid(*d);
    return {knot::hat_filtered(*d), d->auxiliary_factors(), true};
  }
  const auto& c = std::get<FilteredComplex>(data);
  require_valid(c);
  return {c, 0, false};
}

HatData hat_of(const grid::GridDiagram& g, const grid::GridOptions& options) {
  return {grid::to_hat_complex(g, options), g.n - 1, true};
}

bool hfk_symmetric(const knot::BigradedRanks& ranks) {
  for (const auto& [key, r] : ranks) {
    auto it = ranks.find({-key.first, key.second - 2 * key.first});
    if (it == ranks.end() || it->second != r) return false;
  }
  return true;
}

Report hfk_of(const HatData& data) {
  Report rep;
  auto result = knot::hfk_of_hat(data.hat, data.auxiliary_factors);
  json table = json::array();
  std::size_t total = 0;
  for (const auto& [key, r] : result.reduced) {
    table.push_back({{"alexander", key.first}, {"maslov", key.second}, {"rank", r}});
    total += r;
  }
  std::size_t raw_total = 0;
  for (const auto& [key, r] : result.raw) raw_total += r;
  auto poly = knot::euler_characteristic(result.reduced).normalized();
  rep.results["table"] = table;
  rep.results["total_rank"] = total;
  rep.results["raw_total_rank"] = raw_total;
  rep.results["auxiliary_factors"] = data.auxiliary_factors;
  rep.results["alexander_polynomial"] = laurent_json(poly);
  rep.results["genus_upper_support"] = knot::genus_upper_support(result);
  bool symmetric = hfk_symmetric(result.reduced);
  rep.results["symmetric"] = symmetric;
  if (data.knot && !symmetric) {
    rep.warnings.push_back("knot Floer table is not symmetric under (A, M) -> (-A, M - 2A)");
  }
  if (data.knot && poly.at_one() != 1) {
    rep.warnings.push_back("Alexander polynomial does not satisfy |P(1)| = 1");
  }
  return rep;
}

Report tau_of(const HatData& data) {
  Report rep;
  auto h = homology(data.hat);
  auto z = top_class(data.hat, h);
  auto r = tau_class(data.hat, z);
  rep.results["class"] = "top";
  if (z.maslov) {
    rep.results["maslov"] = *z.maslov;
  } else {
    rep.results["maslov"] = nullptr;
  }
  rep.results["tau"] = r.tau;
  rep.results["witness"] = witness_json(data.hat, r);
  rep.results["homology_rank"] = h.total_rank();
  if (data.knot) {
    int g = knot::genus_upper_support(knot::hfk_of_hat(data.hat, data.auxiliary_factors));
    bool ok = std::abs(r.tau) <= g;
    rep.results["genus_upper_support"] = g;
    rep.results["adjunction_bound_holds"] = ok;
    if (!ok) rep.theorem_violated = true;
  }
  return rep;
}

}  // namespace

Report validate_grid_report(const grid::GridDiagram& g) {
  Report rep;
  auto report = grid::validate_grid(g);
  rep.results["kind"] = "grid";
  rep.results["grid"] = grid_json(g);
  rep.results["valid"] = report.valid();
  rep.results["knot"] = report.is_knot();
  rep.results["components"] = report.components;
  rep.results["violations"] = report.violations;
  if (!report.valid()) {
    rep.input_invalid = true;
  } else if (!report.is_knot()) {
    rep.input_invalid = true;
    rep.warnings.push_back("grid presents a link; only knots are supported");
  }
  return rep;
}

Report validate_complex_report(const ComplexData& data) {
  Report rep;
  json violations = json::array();
  std::size_t count = 0;
  if (const auto* d = std::get_if<knot::KnotComplex>(&data)) {
    auto report = knot::validate(*d);
    count = report.violations.size();
    for (std::size_t k = 0; k < count && k < kListedViolations; ++k) {
      const auto& v = report.violations[k];
      violations.push_back({{"kind", knot::to_string(v.kind)},
                            {"from", d->generator(v.from).id},
                            {"to", d->generator(v.to).id},
                            {"nw", v.nw},
                            {"nz", v.nz}});
    }
    rep.results["kind"] = "knot";
    rep.results["generators"] = d->size();
    rep.results["arrows"] = d->arrows().size();
    rep.results["auxiliary_factors"] = d->auxiliary_factors();
  } else {
    const auto& c = std::get<FilteredComplex>(data);
    auto report = validate(c);
    count = report.violations.size();
    for (std::size_t k = 0; k < count && k < kListedViolations; ++k) {
      const auto& v = report.violations[k];
      violations.push_back({{"kind", to_string(v.kind)},
                            {"from", c.generator(v.from).id},
                            {"to", c.generator(v.to).id}});
    }
    rep.results["kind"] = "filtered";
    rep.results["graded"] = c.graded();
    rep.results["generators"] = c.size();
    rep.results["arrows"] = c.arrows().size();
  }
  rep.results["valid"] = count == 0;
  rep.results["violation_count"] = count;
  rep.results["violations"] = violations;
  rep.input_invalid = count != 0;
  return rep;
}

Report hfk_report(const grid::GridDiagram& g, const grid::GridOptions& options) {
  Report rep = hfk_of(hat_of(g, options));
  rep.results["grid"] = grid_json(g);
  return rep;
}

Report hfk_report(const ComplexData& data) {
  auto hat = hat_of(data);
  if (!hat.hat.empty() && !hat.hat.graded()) throw InputError("hfk needs a maslov grading");
  return hfk_of(hat);
}

Report tau_report(const grid::GridDiagram& g, const grid::GridOptions& options) {
  Report rep = tau_of(hat_of(g, options));
  rep.results["grid"] = grid_json(g);
  return rep;
}

Report tau_report(const ComplexData& data) { return tau_of(hat_of(data)); }

Report mirror_check_report(const grid::GridDiagram& g, const grid::GridOptions& options) {
  Report rep;
  auto tau_of_grid = [&](const grid::GridDiagram& d) {
    auto hat = grid::to_hat_complex(d, options);
    return tau_class(hat, top_class(hat)).tau;
  };
  auto m = grid::mirror(g);
  int t = tau_of_grid(g);
  int tm = tau_of_grid(m);
  rep.results["grid"] = grid_json(g);
  rep.results["mirror"] = grid_json(m);
  rep.results["tau"] = t;
  rep.results["tau_mirror"] = tm;
  rep.results["negation_holds"] = tm == -t;
  rep.theorem_violated = tm != -t;
  return rep;
}

Report connect_sum_report(const ComplexData& a, const ComplexData& b) {
  if (a.index() != b.index()) {
    throw InputError("connect-sum needs two inputs of the same kind (both abstract or both knot data)");
  }
  Report rep;
  auto ha = hat_of(a);
  auto hb = hat_of(b);
  auto za = top_class(ha.hat);
  auto zb = top_class(hb.hat);
  int ta = tau_class(ha.hat, za).tau;
  int tb = tau_class(hb.hat, zb).tau;
  FilteredComplex sum = tensor(ha.hat, hb.hat);
  auto z = make_class(sum, tensor_vectors(za.representative, zb.representative));
  auto r = tau_class(sum, z);
  rep.results["tau_a"] = ta;
  rep.results["tau_b"] = tb;
  rep.results["tau_sum"] = r.tau;
  rep.results["generators"] = sum.size();
  rep.results["witness"] = witness_json(sum, r);
  bool additive = r.tau == ta + tb;
  rep.results["additive"] = additive;
  rep.theorem_violated = !additive;
  if (ha.knot) {
    const auto& da = std::get<knot::KnotComplex>(a);
    const auto& db = std::get<knot::KnotComplex>(b);
    auto pa = knot::alexander_polynomial(da);
    auto pb = knot::alexander_polynomial(db);
    auto psum = knot::euler_characteristic(knot::hfk_of_hat(sum, da.auxiliary_factors() + db.auxiliary_factors()).reduced)
                    .normalized();
    bool multiplicative = psum == (pa * pb).normalized();
    rep.results["alexander_a"] = laurent_json(pa);
    rep.results["alexander_b"] = laurent_json(pb);
    rep.results["alexander_sum"] = laurent_json(psum);
    rep.results["alexander_multiplicative"] = multiplicative;
    if (!multiplicative) rep.theorem_violated = true;
  }
  return rep;
}

Report surgery_check_report(const ComplexData& data, std::optional<int> m) {
  knot::KnotComplex d = std::holds_alternative<knot::KnotComplex>(data)
                            ? std::get<knot::KnotComplex>(data)
                            : knot::from_filtered(std::get<FilteredComplex>(data));
  knot::require_valid(d);
  FilteredComplex hat = knot::hat_filtered(d);
  auto z = top_class(hat);
  std::vector<knot::DichotomyResult> rows;
  if (m) {
    rows.push_back(knot::surgery_dichotomy(d, z, *m));
  } else {
    rows = knot::surgery_sweep(d, z);
  }
  Report rep;
  rep.results["class"] = "top";
  rep.results["tau"] = tau_class(hat, z).tau;
  json out = json::array();
  std::size_t contradictions = 0;
  for (const auto& r : rows) {
    out.push_back({{"m", r.m},
                   {"verdict", knot::to_string(r.verdict)},
                   {"computed_nonzero", r.computed_nonzero},
                   {"contradiction", r.contradiction}});
    if (r.contradiction) ++contradictions;
  }
  rep.results["rows"] = out;
  rep.results["contradictions"] = contradictions;
  rep.theorem_violated = contradictions != 0;
  return rep;
}

Report bennequin_report(const contact::LegendrianData& l, int tau) {
  Report rep;
  auto v = contact::bennequin_verdict(l, tau);
  rep.results["tb"] = l.tb;
  rep.results["rot"] = l.rot;
  rep.results["tau"] = tau;
  rep.results["lhs"] = v.tau.lhs;
  rep.results["rhs"] = v.tau.rhs;
  rep.results["status"] = contact::to_string(v.tau.status);
  if (v.genus) {
    rep.results["genus"] = {{"genus", *l.genus},
                            {"rhs", v.genus->rhs},
                            {"status", contact::to_string(v.genus->status, true)},
                            {"tau_bound_stronger", v.tau_bound_stronger}};
  } else {
    rep.results["genus"] = nullptr;
  }
  rep.theorem_violated = v.tau.status == contact::BoundStatus::violates;
  return rep;
}

Report cable_bound_report(long long p, long long q, long long genus) {
  Report rep;
  auto b = contact::cable_tau_upper_bound(p, q, genus);
  rep.results["p"] = p;
  rep.results["q"] = q;
  rep.results["genus"] = genus;
  rep.results["bound"] = b.bound;
  rep.results["half_integer"] = b.half_integer;
  rep.results["twice_exact_bound"] = b.twice_exact;
  if (b.half_integer) rep.warnings.push_back("exact bound is a half-integer; reporting its floor");
  return rep;
}

Report cable_min_report(long long n, long long p, long long genus) {
  Report rep;
  long long q = contact::min_cabling_parameter(n, p, genus);
  auto at = contact::cable_tau_upper_bound(p, q, genus);
  rep.results["N"] = n;
  rep.results["p"] = p;
  rep.results["genus"] = genus;
  rep.results["q"] = q;
  rep.results["twice_exact_bound_at_q"] = at.twice_exact;
  if (q > 1) {
    rep.results["twice_exact_bound_at_q_minus_1"] = contact::cable_tau_upper_bound(p, q - 1, genus).twice_exact;
  } else {
    rep.results["twice_exact_bound_at_q_minus_1"] = nullptr;
  }
  return rep;
}

Report fibered_report(const std::vector<contact::LegendrianData>& structures, int genus) {
  if (structures.empty()) throw InputError("fibered needs at least one (tb, rot) pair");
  Report rep;
  std::vector<contact::FiberedVerdict> verdicts;
  json out = json::array();
  for (const auto& l : structures) {
    auto v = contact::fibered_verdict(l, genus);
    json entry{{"tb", l.tb},
               {"rot", l.rot},
               {"lhs", v.lhs},
               {"rhs", v.rhs},
               {"realizes_bound", v.realizes_bound},
               {"conclusion", v.conclusion}};
    entry["tau_forced"] = v.tau_forced ? json(*v.tau_forced) : json(nullptr);
    out.push_back(entry);
    verdicts.push_back(v);
  }
  auto check = contact::at_most_one_realizes(verdicts);
  rep.results["genus"] = genus;
  rep.results["verdicts"] = out;
  rep.results["realizing"] = check.realizing;
  rep.results["exclusivity_conflict"] = check.conflict;
  rep.results["assumption"] = contact::kFiberedAssumption;
  rep.warnings.push_back(contact::kFiberedAssumption);
  rep.theorem_violated = check.conflict;
  return rep;
}

}  // namespace knotfilt::io
