#include "holonomy/pipelines.hpp"

#include "holonomy/estimates.hpp"
#include "holonomy/forms.hpp"
#include "holonomy/orbifold.hpp"
#include "holonomy/resolution.hpp"
#include "holonomy/spin7.hpp"
#include "holonomy/wps.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

#ifndef HOLONOMY_DEFAULT_ASSET_DIR
#define HOLONOMY_DEFAULT_ASSET_DIR "assets"
#endif

namespace holonomy::pipelines {

using report::Json;
using report::RunReport;

namespace {

std::string q(const Rational& r) { return to_string(r); }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t k = 0; k < parts.size(); ++k) out += (k ? sep : "") + parts[k];
  return out;
}

std::string tuple_text(const std::vector<std::int64_t>& v) {
  std::vector<std::string> parts;
  for (auto x : v) parts.push_back(std::to_string(x));
  return "(" + join(parts, ",") + ")";
}

std::string model_text(const resolution::LocalModel& m) {
  if (m.kind == resolution::ModelKind::C2_quotient && m.group_order == 2) return "C^2/{±1}";
  return m.label();
}

Json form_json(const forms::KForm& f) {
  Json lines = Json::array();
  std::istringstream in(forms::to_text(f));
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

Json subtorus_json(const orbifold::Subtorus& s) { return s.to_string(); }

orbifold::FiniteIsomGroup build_group(const specfile::OrbifoldSpec& spec) {
  return orbifold::generate_group(spec.dim, spec.generators, 1024, spec.names);
}

std::string digest_of(std::initializer_list<std::string_view> parts) {
  report::Digest d;
  for (auto p : parts) d.add(p);
  return d.hex();
}

}  // namespace

std::filesystem::path asset_dir() {
  if (const char* env = std::getenv("HOLONOMY_FORGE_ASSETS"); env && *env) return env;
  return HOLONOMY_DEFAULT_ASSET_DIR;
}

std::string read_asset(const std::string& name) { return specfile::read_file(asset_dir() / name); }

std::vector<std::vector<long>> parse_reference_table(std::string_view text, std::size_t width) {
  std::vector<std::vector<long>> rows;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    std::istringstream fields(line);
    std::vector<long> row;
    for (long v; fields >> v;) row.push_back(v);
    if (!fields.eof()) throw ParseError("expected integers", line_no, 1);
    if (row.empty()) continue;
    if (row.size() != width)
      throw ParseError("expected " + std::to_string(width) + " integers per row", line_no, 1);
    rows.push_back(std::move(row));
  }
  return rows;
}

RunReport verify_structures() {
  RunReport r;
  r.command = "verify-structures";
  r.digest = digest_of({r.command});
  using forms::Structure;

  const forms::KForm phi = forms::canonical(Structure::g2_phi);
  const forms::KForm star_phi = forms::canonical(Structure::g2_star_phi);
  const forms::KForm omega = forms::canonical(Structure::spin7_omega);

  r.add("phi0 on R^7 has 7 terms", phi.size() == 7, "flat G2 3-form phi0 = dx123 + dx145 + dx167 + dx246 - dx257 - dx347 - dx356",
        {{"terms", form_json(phi)}});
  r.add("*phi0 on R^7 has 7 terms", star_phi.size() == 7, "flat G2 4-form *phi0, the Hodge dual of phi0",
        {{"terms", form_json(star_phi)}});
  r.add("Omega0 on R^8 has 14 terms", omega.size() == 14, "flat Spin(7) 4-form Omega0", {{"terms", form_json(omega)}});

  const forms::KForm star = forms::hodge_star(phi);
  r.add("hodge_star(phi0) = *phi0", star == star_phi, "the 4-form *phi0 is the Hodge dual of phi0 for g0",
        {{"discrepancy", form_json(star - star_phi)}});
  r.add("Omega0 is self-dual", forms::hodge_star(omega) == omega, "Omega0 is a self-dual 4-form on R^8", {});

  for (auto id : forms::all_identities()) {
    const forms::IdentityCheck c = forms::verify_identity(id);
    std::string cite;
    switch (id) {
      case forms::Identity::g2_from_su3: cite = "R x C^3: phi0 = dx1 ^ omega0 + Re theta0"; break;
      case forms::Identity::g2_dual_from_su3: cite = "R x C^3: *phi0 = 1/2 omega0 ^ omega0 - dx1 ^ Im theta0"; break;
      case forms::Identity::g2_from_su2: cite = "R^3 x C^2: phi0 = dx123 + dx1 ^ omega0 + dx2 ^ Re theta0 - dx3 ^ Im theta0"; break;
      case forms::Identity::g2_dual_from_su2:
        cite = "R^3 x C^2: *phi0 = 1/2 omega0^2 + dx23 ^ omega0 - dx13 ^ Re theta0 - dx12 ^ Im theta0";
        break;
      case forms::Identity::spin7_from_su4: cite = "C^4: Omega0 = 1/2 omega0 ^ omega0 + Re theta0"; break;
    }
    r.add(std::string("identity ") + forms::identity_name(id) + " holds", c.holds, cite,
          {{"discrepancy", form_json(c.discrepancy)}});
  }
  return r;
}

RunReport orbifold_analyze(std::string_view orbifold_text) {
  const specfile::OrbifoldSpec spec = specfile::parse_orbifold_spec(orbifold_text);
  RunReport r;
  r.command = "orbifold-analyze";
  r.digest = digest_of({r.command, orbifold_text});

  const orbifold::FiniteIsomGroup group = build_group(spec);
  r.add("group of order " + std::to_string(group.order()) + (group.is_abelian() ? ", abelian" : ", nonabelian"), true,
        "finite group of isometries of T^n generated by the listed maps",
        {{"order", group.order()}, {"abelian", group.is_abelian()}, {"elements", group.names}});

  const forms::KForm structure = specfile::structure_form(spec.structure);
  std::vector<std::string> violators;
  for (std::size_t k = 0; k < group.order(); ++k)
    if (!orbifold::preserves(group.elements[k], structure)) violators.push_back(group.names[k]);
  r.add(std::string("every element preserves the flat ") + specfile::structure_name(spec.structure) + " form",
        violators.empty(), "the group must preserve the flat structure for T^n/Γ to inherit it",
        {{"violators", violators}});
  if (!violators.empty()) return r;

  Json loci = Json::array();
  bool loci_ok = true;
  std::vector<std::string> summary;
  for (std::size_t k = 1; k < group.order(); ++k) {
    const orbifold::FixedLocus fl = orbifold::fixed_locus(group.elements[k]);
    for (const auto& c : fl.components) {
      RationalVector moved = fl.owner.apply(c.offset());
      for (std::size_t i = 0; i < moved.size(); ++i)
        if (denominator(moved[i] - c.offset()[i]) != 1) loci_ok = false;
      if (static_cast<int>(c.dim()) != fl.component_dim) loci_ok = false;
    }
    Json e;
    e["element"] = group.names[k];
    e["components"] = fl.components.size();
    e["component_dim"] = fl.component_dim;
    loci.push_back(std::move(e));
    summary.push_back(group.names[k] + ": " +
                      (fl.empty() ? std::string("empty")
                                  : std::to_string(fl.components.size()) + " x T^" + std::to_string(fl.component_dim)));
  }
  r.add("fixed loci: " + join(summary, "; "), loci_ok, "fixed loci of the non-identity elements via Smith normal form",
        {{"loci", loci}});

  const orbifold::SingularSet ss = orbifold::singular_set(group, structure);
  std::size_t orbit_total = 0;
  std::set<std::size_t> dims;
  std::set<std::string> models;
  Json comps = Json::array();
  std::vector<std::string> unsupported;
  for (const auto& c : ss.components) {
    orbit_total += c.orbit_size;
    dims.insert(c.dim);
    const resolution::LocalModel m = resolution::classify_local_model(group, c);
    models.insert(model_text(m));
    if (m.kind == resolution::ModelKind::unsupported) unsupported.push_back(c.representative.to_string() + ": " + m.reason);
    std::vector<std::string> sources;
    for (auto s : c.sources) sources.push_back(group.names[s]);
    Json e;
    e["representative"] = subtorus_json(c.representative);
    e["dim"] = c.dim;
    e["orbit_size"] = c.orbit_size;
    e["stabilizer_order"] = c.stabilizer.size();
    e["isotropy_order"] = c.isotropy.size();
    e["sources"] = sources;
    e["model"] = model_text(m);
    comps.push_back(std::move(e));
  }
  std::string claim = "singular set: ";
  if (ss.components.empty()) {
    claim += "empty";
  } else {
    std::vector<std::string> dim_text, model_list(models.begin(), models.end());
    for (auto d : dims) dim_text.push_back("T^" + std::to_string(d));
    claim += std::to_string(ss.components.size()) + " components, " + join(dim_text, " and ") + ", model " +
             join(model_list, " and ");
  }
  r.add(claim, orbit_total == ss.total_components,
        "singular set of T^n/Γ as a union of orbits of fixed subtori, each with its normal quotient model",
        {{"components", ss.components.size()}, {"components_before_quotient", ss.total_components}, {"orbits", comps}});

  Json meets = Json::array();
  for (const auto& m : ss.intersections) meets.push_back({m.first.to_string(), m.second.to_string()});
  r.add("singular components are pairwise disjoint", ss.intersections.empty(),
        "disjoint singular components allow each to be resolved separately", {{"intersections", meets}});

  r.add("every local model is supported", unsupported.empty(),
        "resolution data exists for C^2/Z_k and cyclic C^3/G in SU(3)", {{"unsupported", unsupported}});
  if (!unsupported.empty()) r.unsupported = unsupported.front();
  return r;
}

RunReport orbifold_betti(std::string_view orbifold_text, std::string_view ade_text, std::string_view pairs_text) {
  const specfile::OrbifoldSpec spec = specfile::parse_orbifold_spec(orbifold_text);
  const resolution::AdeTable table = resolution::parse_ade_table(ade_text);
  const auto figure = parse_reference_table(pairs_text, 2);
  RunReport r;
  r.command = "orbifold-betti";
  r.digest = digest_of({r.command, orbifold_text, ade_text, pairs_text});

  const orbifold::FiniteIsomGroup group = build_group(spec);
  const resolution::BettiVector base = resolution::orbifold_betti(group);
  const std::size_t n = base.b.size() - 1;
  bool symmetric = base.b.front() == 1;
  for (std::size_t k = 0; k <= n; ++k) symmetric = symmetric && base.b[k] == base.b[n - k];
  r.add("orbifold Betti numbers " + tuple_text(base.b), symmetric,
        "Betti numbers of T^n/Γ are the Γ-invariant parts of the cohomology of T^n", {{"betti", base.b}});
  if (spec.structure == specfile::StructureTag::g2)
    r.add("b^1(T^7/Γ) = 0", n >= 1 && base.b[1] == 0, "a compact G2-manifold has holonomy exactly G2 only if b^1 = 0",
          {{"b1", n >= 1 ? base.b[1] : 0}});

  const orbifold::SingularSet ss = orbifold::singular_set(group, specfile::structure_form(spec.structure));
  std::vector<std::pair<orbifold::SingularComponent, resolution::ResolutionData>> resolved;
  Json contributions = Json::array();
  try {
    for (const auto& c : ss.components) {
      const resolution::LocalModel m = resolution::classify_local_model(group, c);
      resolution::ResolutionData d = resolution::resolution_data(m, table);
      Json e;
      e["representative"] = c.representative.to_string();
      e["model"] = model_text(m);
      e["b2_exceptional"] = d.b2_exceptional;
      e["b3_exceptional"] = d.b3_exceptional;
      e["citation"] = d.citation;
      contributions.push_back(std::move(e));
      resolved.emplace_back(c, std::move(d));
    }
    const resolution::ResolvedBetti rb = resolution::resolved_betti(base, resolved);
    const bool plotted = std::find(figure.begin(), figure.end(), std::vector<long>{static_cast<long>(rb.b2),
                                                                                   static_cast<long>(rb.b3)}) != figure.end();
    r.add("resolved (b^2, b^3) = (" + std::to_string(rb.b2) + ", " + std::to_string(rb.b3) + ")",
          rb.b2 >= 0 && rb.b3 >= 0,
          "each resolved component of dimension d adds its exceptional b^2 to b^2 and d times it plus its b^3 to b^3",
          {{"b2", rb.b2}, {"b3", rb.b3}, {"among_reference_g2_pairs", plotted}, {"components", contributions}});
  } catch (const UnsupportedModel& e) {
    r.unsupported = e.what();
  } catch (const resolution::NonFreeMonodromy& e) {
    r.unsupported = e.what();
  }
  return r;
}

RunReport estimates_check(std::string_view estimates_text) {
  const estimates::EstimateSpec spec = estimates::parse_estimates(estimates_text);
  RunReport r;
  r.command = "estimates-check";
  r.digest = digest_of({r.command, estimates_text});

  const estimates::HypothesesReport hyp = estimates::check_hypotheses(spec.profile, spec.hypotheses);
  for (const auto& c : hyp.checks) {
    r.add(c.quantity + ": " + c.established.to_string() + (c.kind == estimates::BoundKind::lower ? " >= " : " <= ") +
              c.required.to_string() + ", margin " + q(c.margin),
          c.passed, "hypothesis of the G2 perturbation theorem on " + c.quantity,
          {{"established", c.established.to_string()},
           {"required", c.required.to_string()},
           {"kind", c.kind == estimates::BoundKind::lower ? "lower" : "upper"},
           {"margin", q(c.margin)}});
  }
  r.add("hypotheses: " + std::to_string(hyp.passed_count()) + "/" + std::to_string(hyp.checks.size()) + " pass",
        hyp.all_pass(), "the glued G2-structures satisfy the hypotheses of the perturbation theorem",
        {{"passed", hyp.passed_count()}, {"total", hyp.checks.size()}});

  const estimates::ClosureReport cl = estimates::check_induction_closure(spec.system, spec.hypotheses);
  Json constraints = Json::array();
  for (const auto& c : cl.constraints)
    constraints.push_back({{"rule", c.rule}, {"term", c.term.to_string()}, {"at_most", c.bound}});
  Json margins = Json::array();
  for (const auto& m : cl.t_margins) margins.push_back({{"rule", m.rule}, {"term", m.term.to_string()}, {"margin", q(m.margin)}});
  Json failures = Json::array();
  for (const auto& m : cl.failures) failures.push_back({{"rule", m.rule}, {"term", m.term.to_string()}, {"margin", q(m.margin)}});

  std::string claim;
  if (cl.closes) {
    claim = "induction closes";
    if (cl.min_positive_margin) claim += ", min margin t^{" + q(*cl.min_positive_margin) + "}";
  } else if (!cl.exponents_close) {
    claim = "induction does not close: " + std::to_string(cl.failures.size()) + " term(s) with negative t-margin";
  } else {
    claim = "induction does not close: constants not solvable (" + cl.unsolvable_reason + ")";
  }
  r.add(claim, cl.closes, "inductive bounds on d eta_j in the existence proof reproduce themselves for small t",
        {{"exponents_close", cl.exponents_close},
         {"constants_solvable", cl.constants_solvable},
         {"min_positive_margin", cl.min_positive_margin ? Json(q(*cl.min_positive_margin)) : Json(nullptr)},
         {"constant_constraints", constraints},
         {"solve_order", cl.solve_order},
         {"positive_margins", margins},
         {"failures", failures},
         {"deviations_from_defaults", estimates::reference_deviations(spec.system)}});
  return r;
}

RunReport spin7_demo(std::string_view wps_text) {
  const specfile::WpsSpec ws = specfile::parse_wps_spec(wps_text);
  RunReport r;
  r.command = "spin7-demo";
  r.digest = digest_of({r.command, wps_text});

  const spin7::GroupReport g = spin7::build_group_G();
  const char* gcite = "G = <alpha, beta> in Spin(7) acting on R^8";
  r.add("|G| = 8 and G is nonabelian", g.order_eight && g.nonabelian, gcite,
        {{"order", g.group.order()}, {"elements", g.group.names}});
  r.add("alpha^4 = beta^4 = 1, alpha^2 = beta^2, alpha*beta = beta*alpha^3",
        g.alpha_order_four && g.beta_order_four && g.squares_agree && g.twisted_commutation, gcite,
        {{"alpha_order_four", g.alpha_order_four},
         {"beta_order_four", g.beta_order_four},
         {"squares_agree", g.squares_agree},
         {"twisted_commutation", g.twisted_commutation}});
  r.add("G acts freely on R^8 \\ {0}", g.free_action, gcite, {});
  const auto preserved = std::count(g.preserves_omega.begin(), g.preserves_omega.end(), true);
  r.add("every element of G preserves Omega0", preserved == static_cast<long>(g.preserves_omega.size()), gcite,
        {{"preserving", preserved}});

  std::map<std::string, std::string> acting_as_i;
  for (const auto& frame : {spin7::z_frame(), spin7::w_frame()}) {
    try {
      const spin7::FrameReport fr = spin7::frame_report(frame);
      r.add("Omega0 = 1/2 omega0^2 + Re theta0 in " + fr.frame, true,
            "Omega0 written through the SU(4) forms of a complex frame on R^8",
            {{"alpha", spin7::action_name(fr.alpha)}, {"beta", spin7::action_name(fr.beta)}});
      acting_as_i[fr.frame] = fr.complex_structure;
    } catch (const spin7::FrameIdentityFails& e) {
      r.add("Omega0 = 1/2 omega0^2 + Re theta0 in " + frame.name, false,
            "Omega0 written through the SU(4) forms of a complex frame on R^8",
            {{"discrepancy", form_json(e.discrepancy)}});
    }
  }
  r.add("alpha is complex-linear in z_frame and beta in w_frame",
        acting_as_i["z_frame"] == "alpha" && acting_as_i["w_frame"] == "beta",
        "the roles of alpha and beta swap between the two complex frames",
        {{"z_frame", acting_as_i["z_frame"]}, {"w_frame", acting_as_i["w_frame"]}});

  int su4 = 0, full = 0;
  for (int mask = 0; mask < 8; ++mask) {
    std::vector<int> choices;
    for (int j = 0; j < 3; ++j) choices.push_back((mask >> j) & 1 ? 2 : 1);
    (spin7::holonomy_outcome(choices) == spin7::HolonomyOutcome::Z2_ltimes_SU4 ? su4 : full)++;
  }
  r.add("k = 3: " + std::to_string(su4) + " choice gives Z2 x| SU(4), " + std::to_string(full) + " give Spin(7)",
        su4 == 1 && full == 7, spin7::outcome_rationale(spin7::HolonomyOutcome::Spin7),
        {{"Z2_ltimes_SU4", su4}, {"Spin7", full}});

  const wps::WpsHypersurface& y = ws.hypersurface;
  r.add("degree equals the sum of the weights", wps::canonical_degree_check(y),
        "a degree-d hypersurface in CP^m_{a} has trivial canonical bundle when d = a0 + ... + am",
        {{"degree", y.degree()}, {"weights", y.weights()}});

  const char* pcite = "singular points of Y on the weighted strata, modelled on C^4/<i>";
  try {
    const auto sing = wps::singular_points(y);
    Json found = Json::array();
    for (const auto& s : sing) found.push_back({{"point", s.point.to_string()}, {"order", s.order}});
    bool match = sing.size() == ws.points.size();
    for (const auto& p : ws.points)
      match = match && std::any_of(sing.begin(), sing.end(),
                                   [&](const wps::SingularPoint& s) { return wps::same_point(y.weights(), s.point, p); });
    std::set<int> orders;
    for (const auto& s : sing) orders.insert(s.order);
    std::string order_text;
    for (int o : orders) order_text += (order_text.empty() ? "" : ",") + std::to_string(o);
    r.add("singular points: " + std::to_string(sing.size()) + " of order " + order_text + ", matching the listed points",
          match, pcite, {{"found", found}});
  } catch (const wps::PositiveDimensionalSingularLocus& e) {
    r.add("singular locus is finite", false, pcite, {{"error", e.what()}});
  } catch (const wps::DegenerateSingularPoint& e) {
    r.add("affine cone is smooth over the singular points", false, pcite, {{"point", e.point.to_string()}});
  } catch (const UnsupportedModel& e) {
    r.unsupported = e.what();
  }

  if (ws.sigma) {
    const char* scite = "antiholomorphic involution sigma of Y whose fixed points are the orbifold points";
    try {
      const wps::InvolutionReport ir = wps::verify_involution(y, *ws.sigma, ws.points);
      std::vector<std::string> mult;
      for (const auto& m : ir.multipliers) mult.push_back(m.to_string());
      r.add("sigma maps Y to Y", true, scite, {{"sigma", ws.sigma->to_string()}, {"scale", ir.scale.to_string()}});
      r.add("sigma^2 = 1 on the weighted projective space", true, scite,
            {{"multipliers", mult}, {"unit", ir.unit ? Json(ir.unit->to_string()) : Json(nullptr)}});
      std::vector<bool> fixed = ir.listed_fixed;
      r.add("sigma fixes every listed point", ir.listed_all_fixed(), scite, {{"fixed", fixed}});
      r.add("no sampled point of Y is fixed", ir.samples_fixed == 0, scite,
            {{"tested", ir.samples_tested}, {"fixed", ir.samples_fixed}, {"note", ir.sample_note}});
    } catch (const wps::NotWellDefined& e) {
      r.add("sigma maps Y to Y", false, scite, {{"error", e.what()}, {"monomial", e.monomial}});
    } catch (const wps::NotInvolutive& e) {
      r.add("sigma^2 = 1 on the weighted projective space", false, scite, {{"error", e.what()}, {"witness", e.witness}});
    }
  }
  return r;
}

RunReport reference_tables(std::string_view pairs_text, std::string_view triples_text) {
  const auto figure = parse_reference_table(pairs_text, 2);
  const auto table = parse_reference_table(triples_text, 3);
  RunReport r;
  r.command = "reference-tables";
  r.digest = digest_of({r.command, pairs_text, triples_text});

  const std::set<std::vector<long>> pairs(figure.begin(), figure.end());
  r.add("G2 reference data: " + std::to_string(pairs.size()) + " distinct (b^2, b^3) pairs", pairs.size() == 252,
        "plotted Betti numbers of compact G2-manifolds from resolved T^7 orbifolds; caption states 252 sets",
        {{"rows", figure.size()}, {"distinct", pairs.size()}});
  const std::set<std::vector<long>> triples(table.begin(), table.end());
  r.add("Spin(7) reference data: " + std::to_string(triples.size()) + " distinct (b^2, b^3, b^4) triples",
        triples.size() == 14, "Betti numbers of compact Spin(7)-manifolds from Calabi-Yau 4-orbifolds; 14 sets",
        {{"rows", table.size()}, {"max_b4", table.empty() ? 0 : std::max_element(table.begin(), table.end(), [](auto& a, auto& b) {
                                                                   return a[2] < b[2];
                                                                 })->at(2)}});
  return r;
}

report::Bundle full_report() {
  const std::string orb = read_asset("t7_z2cubed.orb");
  const std::string ade = read_asset("ade_table");
  const std::string fig = read_asset("g2_betti_pairs.txt");
  const std::string tab = read_asset("spin7_betti_triples.txt");
  report::Bundle b;
  b.command = "report";
  b.runs.push_back(verify_structures());
  b.runs.push_back(orbifold_analyze(orb));
  b.runs.push_back(orbifold_betti(orb, ade, fig));
  b.runs.push_back(estimates_check(read_asset("estimates_default.est")));
  b.runs.push_back(spin7_demo(read_asset("wps_degree12.ywp")));
  b.runs.push_back(reference_tables(fig, tab));
  return b;
}

}  // namespace holonomy::pipelines
