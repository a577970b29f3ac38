#include "conflab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <ostream>
#include <random>

#include "conflab/algebra.hpp"
#include "conflab/cochain.hpp"
#include "conflab/deformation.hpp"
#include "conflab/derivations.hpp"
#include "conflab/format.hpp"
#include "conflab/generalized.hpp"

namespace conflab {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string format = "json";
  unsigned degree_bound = 2;
  std::uint64_t seed = kDefaultSeed;
  std::string file;
  std::string module = "adjoint";
  std::string endo;
  std::string phi;
  int k = 0;
  std::size_t n = 1;
  bool reduced = false;
  bool check_closure = false;
  bool search = false;
  bool decompose = false;
  bool closures = false;
  bool center_checks = false;
};

// Report under construction: checks feed the pass/fail verdict.
struct Report {
  json doc = json::object();
  bool passed = true;

  void check(const std::string& name, bool ok) {
    doc["checks"][name] = ok;
    passed = passed && ok;
  }
  void check(const std::string& name, const IdentityCheck& c, const std::vector<std::string>& names) {
    json j = {{"holds", c.holds}};
    if (c.failure) {
      j["indices"] = c.failure->indices;
      j["residual"] = c.failure->value.to_string(names);
    }
    doc["checks"][name] = j;
    passed = passed && c.holds;
  }
};

json map_json(const ConformalMap& m, const std::vector<std::string>& names) {
  json images = json::object();
  for (std::size_t i = 0; i < m.rank(); ++i) images[names[i]] = m.image(i).to_string(names);
  return json{{"rule", to_string(m.rule())}, {"level", m.level()}, {"parameter", m.slot().name()}, {"images", images}};
}

ConformalModule pick_module(const DefinitionFile& def, const std::string& spec) {
  if (spec == "adjoint") return adjoint_module(def.algebra);
  if (spec.rfind("alpha^", 0) == 0) return alpha_power_adjoint(def.algebra, std::stoi(spec.substr(6)));
  for (const auto& m : def.modules)
    if (m.name() == spec) return m;
  throw PreconditionFailed("no module named '" + spec + "'");
}

void render_text(const json& j, std::ostream& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) {
      out << pad << it.key() << ":\n";
      render_text(v, out, indent + 2);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
      out << pad << it.key() << ":\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out << pad << "  [" << i << "]\n";
        render_text(v[i], out, indent + 4);
      }
    } else {
      out << pad << it.key() << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

void cmd_validate(const DefinitionFile& def, const Options&, Report& r) {
  const auto& A = def.algebra;
  const AlgebraReport rep = check_algebra(A);
  r.check("skew", rep.skew, A.basis_names());
  r.check("hom_jacobi", rep.hom_jacobi, A.basis_names());
  r.check("multiplicative", rep.multiplicative, A.basis_names());
  r.doc["regular"] = rep.regular;
  r.doc["alpha_determinant"] = rep.alpha_determinant.to_string();
}

void cmd_check_module(const DefinitionFile& def, const Options& o, Report& r) {
  const ConformalModule M = pick_module(def, o.module);
  const ModuleReport rep = check_module(def.algebra, M);
  r.doc["module"] = M.name();
  r.check("compatibility", rep.compatibility, M.basis_names());
  r.check("sesquilinear", rep.sesquilinear, M.basis_names());
  r.check("twist", rep.twist, M.basis_names());
}

void cmd_semidirect(const DefinitionFile& def, const Options& o, Report& r) {
  const ConformalModule M = pick_module(def, o.module);
  const HomConformalAlgebra S = semidirect_sum(def.algebra, M);
  const AlgebraReport rep = check_algebra(S);
  r.doc["module"] = M.name();
  r.check("skew", rep.skew, S.basis_names());
  r.check("hom_jacobi", rep.hom_jacobi, S.basis_names());
  r.check("multiplicative", rep.multiplicative, S.basis_names());
  r.doc["definition"] = print_algebra(S);
}

void cmd_cohomology(const DefinitionFile& def, const Options& o, Report& r) {
  const auto& A = def.algebra;
  const ConformalModule M = pick_module(def, o.module);
  const CohomologyDims dims = cohomology_dims(A, M, o.n, o.degree_bound, o.reduced);
  r.doc["module"] = M.name();
  r.doc["n"] = o.n;
  r.doc["reduced"] = o.reduced;
  r.doc["dimensions"] = {{"cochains", dims.dim_cochains},
                         {"kernel", dims.dim_kernel},
                         {"image_from_below", dims.dim_image_from_below},
                         {"cohomology", dims.dim_h}};
  r.doc["truncation"] = dims.truncation;
  const auto basis = cochain_space_basis(A, M, o.n, o.degree_bound);
  bool d2 = true, dpartial = true;
  for (const auto& g : basis) {
    const Cochain dg = differential(A, M, g);
    if (!differential(A, M, dg).is_zero()) d2 = false;
    if (!(differential(A, M, partial_action(g)) == partial_action(dg))) dpartial = false;
  }
  std::mt19937_64 rng(o.seed);
  const Cochain g = random_cochain(basis, rng, o.n, A.rank(), M.rank());
  r.check("d_squared_zero", d2 && differential(A, M, differential(A, M, g)).is_zero());
  r.check("d_commutes_with_partial", dpartial);
}

void cmd_derive(const DefinitionFile& def, const Options& o, Report& r) {
  const auto& A = def.algebra;
  const auto& names = A.basis_names();
  const auto basis = solve_derivations(A, o.k, o.degree_bound);
  r.doc["k"] = o.k;
  r.doc["dimension"] = basis.size();
  json maps = json::array();
  for (const auto& D : basis) maps.push_back(map_json(D, names));
  r.doc["basis"] = maps;
  if (!o.endo.empty()) {
    const EndoFile e = parse_endo(read_file(o.endo), names);
    const DerivationReport rep = check_derivation(A, e.map, o.k);
    r.check("commutes_with_alpha", rep.commutes_with_alpha, names);
    r.check("derivation_identity", rep.identity, names);
  }
  if (o.check_closure) {
    bool ok = true, skew = true;
    for (const auto& D : basis)
      for (const auto& E : basis) {
        const ConformalMap c = commutator(D, E);
        for (const auto& res : derivation_residuals(A, c, 2 * o.k))
          if (!res.is_zero()) ok = false;
        if (!commutator_skew_residual(D, E).is_zero()) skew = false;
      }
    r.check("commutator_closure", ok);
    r.check("commutator_skew", skew);
  }
}

void cmd_nijenhuis(const DefinitionFile& def, const Options& o, Report& r) {
  const auto& A = def.algebra;
  const auto& names = A.basis_names();
  if (!o.endo.empty()) {
    const EndoFile e = parse_endo(read_file(o.endo), names);
    const NijenhuisReport rep = check_nijenhuis(A, e.map);
    r.check("commutes_with_alpha", rep.commutes_with_alpha, names);
    r.check("nijenhuis_condition", rep.condition, names);
    r.check("specialized_condition", rep.specialized, names);
    json table = json::object();
    const StructureTable N = nijenhuis_table(A, e.map);
    for (std::size_t i = 0; i < A.rank(); ++i)
      for (std::size_t j = 0; j < A.rank(); ++j) table[names[i] + " " + names[j]] = N[i][j].to_string(names);
    r.doc["nijenhuis_bracket"] = table;
  }
  if (o.search) {
    const auto found = nijenhuis_candidates(A, o.degree_bound, o.seed);
    json maps = json::array();
    bool ok = true;
    for (const auto& f : found) {
      maps.push_back(map_json(f, names));
      ok = ok && is_nijenhuis(A, f);
    }
    r.doc["candidates"] = maps;
    r.check("candidates_verified", ok);
  }
}

void cmd_deform(const DefinitionFile& def, const Options& o, Report& r) {
  const auto& A = def.algebra;
  const auto& names = A.basis_names();
  if (o.endo.empty()) throw PreconditionFailed("deform needs --endo");
  const EndoFile e = parse_endo(read_file(o.endo), names);
  const ConformalMap f = e.map.with_rule(ExtensionRule::CochainAntilinear);
  r.check("nijenhuis", is_nijenhuis(A, f));
  const Cochain psi = d_minus1_of_endo(A, f);
  const StructureTable P = specialize(psi);
  json table = json::object();
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) table[names[i] + " " + names[j]] = P[i][j].to_string(names);
  r.doc["psi"] = table;
  const DeformationReport rep = check_deformation(A, psi);
  r.check("psi_is_cochain", rep.psi_is_cochain);
  r.check("cocycle", rep.cocycle);
  r.check("quadratic", rep.quadratic, names);
  for (unsigned p = 0; p < 3; ++p) r.check("jacobi_t" + std::to_string(p), rep.jacobi[p], names);
  r.doc["t1_matches_linear_condition"] = rep.t1_matches_linear;
  const TrivialityReport tr = check_trivial_deformation(A, f);
  for (unsigned p = 0; p < 3; ++p) r.check("trivial_t" + std::to_string(p), tr.per_t[p], names);
}

bool contained(const SolvedSpace& small, const SolvedSpace& big) {
  return std::all_of(small.maps.begin(), small.maps.end(),
                     [&](const ConformalMap& m) { return map_in_span(big.maps, m); });
}

void cmd_gder(const DefinitionFile& def, const Options& o, Report& r) {
  const auto& A = def.algebra;
  const auto& names = A.basis_names();
  r.doc["k"] = o.k;
  std::map<SpaceKind, SolvedSpace> sp;
  json dims = json::object();
  for (SpaceKind kind : {SpaceKind::GDer, SpaceKind::QDer, SpaceKind::Der, SpaceKind::Centroid,
                         SpaceKind::QuasiCentroid, SpaceKind::CentralDer}) {
    sp[kind] = solve_space(A, kind, o.k, o.degree_bound);
    dims[to_string(kind)] = sp[kind].dimension();
  }
  r.doc["dimensions"] = dims;
  r.check("tower_ZDer_Der", contained(sp[SpaceKind::CentralDer], sp[SpaceKind::Der]));
  r.check("tower_Der_QDer", contained(sp[SpaceKind::Der], sp[SpaceKind::QDer]));
  r.check("tower_QDer_GDer", contained(sp[SpaceKind::QDer], sp[SpaceKind::GDer]));
  r.check("tower_C_QC", contained(sp[SpaceKind::Centroid], sp[SpaceKind::QuasiCentroid]));
  r.check("tower_QC_GDer", contained(sp[SpaceKind::QuasiCentroid], sp[SpaceKind::GDer]));
  if (!o.endo.empty()) {
    const EndoFile e = parse_endo(read_file(o.endo), names);
    const GenDerTriple T{e.map, e.witness.value_or(e.map), e.witness2.value_or(e.map)};
    const MembershipReport rep = check_generalized_derivation(A, T, o.k);
    r.check("omega", rep.omega, names);
    r.check("generalized_derivation", rep.identity, names);
  }
  if (o.decompose) {
    const SolvedSpace& G = sp[SpaceKind::GDer];
    json parts = json::array();
    bool ok = true;
    for (std::size_t i = 0; i < G.dimension(); ++i) {
      const Decomposition d = decompose_gder(A, GenDerTriple{G.maps[i], G.witness1[i], G.witness2[i]}, o.k);
      ok = ok && d.passes();
      parts.push_back({{"quasiderivation", map_json(d.quasi, names)}, {"quasicentroid", map_json(d.qc, names)}});
    }
    r.doc["decompositions"] = parts;
    r.check("decomposition", ok);
  }
  if (o.closures) {
    const ClosureReport cr = bracket_closure_checks(A, o.k, o.k, o.degree_bound);
    for (const auto& c : cr.checks) r.check("closure: " + c.name, c.result, names);
  }
  if (o.center_checks) {
    const CenterReport cr = centroid_qc_center_check(A, o.k, o.k, o.degree_bound);
    r.doc["center_dimension"] = cr.center_dimension;
    r.check("centroid_qc_central", cr.passes());
    if (cr.center_dimension == 0) {
      const QcBracketReport q = qc_bracket_vanishing(A, o.k, o.k, o.degree_bound);
      r.check("qc_bracket_vanishing", q.passes());
    }
  }
}

void cmd_breve(const DefinitionFile& def, const Options& o, Report& r) {
  const auto& A = def.algebra;
  const HomConformalAlgebra B = breve_extension(A);
  const AlgebraReport rep = check_algebra(B);
  r.check("skew", rep.skew, B.basis_names());
  r.check("hom_jacobi", rep.hom_jacobi, B.basis_names());
  r.check("multiplicative", rep.multiplicative, B.basis_names());
  const Complement comp = compute_complement(A, o.degree_bound);
  json derived = json::array(), complement = json::array();
  for (const auto& x : comp.derived) derived.push_back(x.to_string(A.basis_names()));
  for (const auto& x : comp.complement) complement.push_back(x.to_string(A.basis_names()));
  r.doc["derived_slice"] = derived;
  r.doc["complement"] = complement;
  r.doc["complement_rule"] = "greedy against d^a e_i ordered by basis index then degree";
  if (!o.phi.empty()) {
    const EndoFile e = parse_endo(read_file(o.phi), A.basis_names());
    const ConformalMap D = e.map.with_rule(ExtensionRule::ConformalLinear);
    const ConformalMap D1 = e.witness.value_or(e.map).with_rule(ExtensionRule::ConformalLinear);
    const bool qder = is_quasiderivation(A, D, D1, e.map.level());
    r.check("quasiderivation", qder);
    if (qder) {
      const ConformalMap phi = phi_embedding(A, D, D1, comp, e.map.level());
      r.doc["phi"] = map_json(phi, B.basis_names());
      const DerivationReport dr = check_derivation(B, phi, e.map.level());
      r.check("phi_commutes_with_alpha", dr.commutes_with_alpha, B.basis_names());
      r.check("phi_derivation", dr.identity, B.basis_names());
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with finite-rank Hom-Lie conformal algebras", "conflab"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--degree-bound", o.degree_bound, "Truncation bound for solution spaces");
  app.add_option("--seed", o.seed, "Seed for randomized data");

  using Handler = void (*)(const DefinitionFile&, const Options&, Report&);
  std::vector<std::pair<CLI::App*, Handler>> subs;
  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("file", o.file, "Algebra definition file");
    s->add_option("--algebra", o.file, "Algebra definition file");
    subs.emplace_back(s, h);
    return s;
  };
  add("validate", "Check the algebra axioms", cmd_validate);
  auto* cm = add("check-module", "Check the module axioms", cmd_check_module);
  cm->add_option("--module", o.module, "adjoint, alpha^s or a module name from the file");
  auto* sd = add("semidirect", "Build and check a semidirect sum", cmd_semidirect);
  sd->add_option("--module", o.module, "adjoint, alpha^s or a module name from the file");
  auto* co = add("cohomology", "Truncated cohomology dimensions", cmd_cohomology);
  co->add_option("--module", o.module, "adjoint, alpha^s or a module name from the file");
  co->add_option("--n", o.n, "Cochain degree");
  co->add_flag("--reduced", o.reduced, "Reduced complex");
  auto* de = add("derive", "Solve and check alpha^k-derivations", cmd_derive);
  de->add_option("--k", o.k, "Twist level");
  de->add_flag("--check-closure", o.check_closure, "Check commutator closure on the solved basis");
  de->add_option("--endo", o.endo, "Map file to check");
  auto* ni = add("nijenhuis", "Check or search Hom-Nijenhuis operators", cmd_nijenhuis);
  ni->add_option("--endo", o.endo, "Map file to check");
  ni->add_flag("--search", o.search, "Search the degree-bounded slice");
  auto* df = add("deform", "Deformation generated by a Nijenhuis operator", cmd_deform);
  df->add_option("--endo", o.endo, "Map file");
  auto* gd = add("gder", "Generalized derivation spaces", cmd_gder);
  gd->add_option("--k", o.k, "Twist level");
  gd->add_option("--endo", o.endo, "Triple to check ([map], [witness], [witness2])");
  gd->add_flag("--decompose", o.decompose, "Decompose every solved GDer element");
  gd->add_flag("--closures", o.closures, "Bracket closure checks");
  gd->add_flag("--center-checks", o.center_checks, "Centroid/quasicentroid center checks");
  auto* br = add("breve", "The t^3-truncated extension and the phi embedding", cmd_breve);
  br->add_option("--phi", o.phi, "Quasiderivation file ([map], [witness])");

  std::vector<const char*> argv{"conflab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  for (const auto& [sub, handler] : subs) {
    if (!sub->parsed()) continue;
    if (o.file.empty()) {
      err << "missing algebra file\n";
      return 2;
    }
    Report r;
    try {
      const DefinitionFile def = parse_definition(read_file(o.file));
      r.doc["command"] = sub->get_name();
      r.doc["algebra"] = def.algebra.name();
      r.doc["degree_bound"] = o.degree_bound;
      r.doc["seed"] = o.seed;
      r.doc["checks"] = json::object();
      handler(def, o, r);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    r.doc["passed"] = r.passed;
    if (o.format == "json")
      out << r.doc.dump(2) << "\n";
    else
      render_text(r.doc, out, 0);
    return r.passed ? 0 : 1;
  }
  return 2;
}

}  // namespace conflab
