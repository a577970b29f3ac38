#include "conflab/generalized.hpp"

#include <algorithm>
#include <functional>

#include "conflab/derivations.hpp"
#include "conflab/errors.hpp"
#include "conflab/system.hpp"

namespace conflab {

namespace {

std::vector<LambdaExpr> alpha_power_basis(const HomConformalAlgebra& A, int k) {
  const PolyMatrix ak = A.alpha().power(k);
  std::vector<LambdaExpr> out;
  for (std::size_t i = 0; i < A.rank(); ++i) out.push_back(ak.apply(A.basis_element(i)));
  return out;
}

void check_rank(const HomConformalAlgebra& A, const ConformalMap& D) {
  if (D.rank() != A.rank()) throw RankMismatch("map rank does not match the algebra");
}

// Shared parameter mu, fresh lambda.
struct Slots {
  VarId mu;
  MultiPoly lam;
};

Slots slots_for(const std::vector<const ConformalMap*>& maps) {
  return Slots{maps.front()->slot(), xpoly(fresh_slot(maps))};
}

void record_all(IdentityCheck& chk, const std::vector<LambdaExpr>& res, std::size_t tag = 0) {
  for (std::size_t i = 0; i < res.size(); ++i) chk.record({tag, i}, res[i]);
}

void record_omega(IdentityCheck& chk, const HomConformalAlgebra& A, const std::vector<const ConformalMap*>& maps) {
  for (std::size_t m = 0; m < maps.size(); ++m) record_all(chk, alpha_commutation_residuals(A, *maps[m]), m);
}

void require_regular(const HomConformalAlgebra& A) {
  if (!A.alpha().is_unimodular()) throw NonSurjectiveAlpha();
}

}  // namespace

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::GDer: return "GDer";
    case SpaceKind::QDer: return "QDer";
    case SpaceKind::Der: return "Der";
    case SpaceKind::Centroid: return "C";
    case SpaceKind::QuasiCentroid: return "QC";
    case SpaceKind::CentralDer: return "ZDer";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& s) {
  for (SpaceKind k : {SpaceKind::GDer, SpaceKind::QDer, SpaceKind::Der, SpaceKind::Centroid, SpaceKind::QuasiCentroid,
                      SpaceKind::CentralDer})
    if (to_string(k) == s) return k;
  throw PreconditionFailed("unknown space '" + s + "'");
}

std::vector<LambdaExpr> gder_residuals(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1,
                                       const ConformalMap& D2, int k) {
  check_rank(A, D);
  const ConformalMap d1 = D1.with_slot(D.slot()), d2 = D2.with_slot(D.slot());
  const auto [mu_v, lam] = slots_for({&D, &d1, &d2});
  const MultiPoly mu = MultiPoly::var(mu_v);
  const std::vector<LambdaExpr> ak = alpha_power_basis(A, k);
  std::vector<LambdaExpr> out;
  for (std::size_t a = 0; a < A.rank(); ++a)
    for (std::size_t b = 0; b < A.rank(); ++b) {
      LambdaExpr r = extend_bracket(A, apply(D, A.basis_element(a), mu), ak[b], lam + mu);
      r += extend_bracket(A, ak[a], apply(d1, A.basis_element(b), mu), lam);
      r -= apply(d2, A.structure(a, b).substitute(VarId::slot(0), lam), mu);
      out.push_back(std::move(r));
    }
  return out;
}

std::vector<LambdaExpr> qc_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  check_rank(A, D);
  const auto [mu_v, lam] = slots_for({&D});
  const MultiPoly mu = MultiPoly::var(mu_v);
  const std::vector<LambdaExpr> ak = alpha_power_basis(A, k);
  std::vector<LambdaExpr> out;
  for (std::size_t a = 0; a < A.rank(); ++a)
    for (std::size_t b = 0; b < A.rank(); ++b)
      out.push_back(extend_bracket(A, apply(D, A.basis_element(a), mu), ak[b], lam + mu) -
                    extend_bracket(A, ak[a], apply(D, A.basis_element(b), mu), lam));
  return out;
}

std::vector<LambdaExpr> centroid_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  check_rank(A, D);
  const auto [mu_v, lam] = slots_for({&D});
  const MultiPoly mu = MultiPoly::var(mu_v);
  const std::vector<LambdaExpr> ak = alpha_power_basis(A, k);
  std::vector<LambdaExpr> first, second;
  for (std::size_t a = 0; a < A.rank(); ++a)
    for (std::size_t b = 0; b < A.rank(); ++b) {
      const LambdaExpr rhs = apply(D, A.structure(a, b).substitute(VarId::slot(0), lam), mu);
      first.push_back(extend_bracket(A, apply(D, A.basis_element(a), mu), ak[b], lam + mu) - rhs);
      second.push_back(extend_bracket(A, ak[a], apply(D, A.basis_element(b), mu), lam) - rhs);
    }
  for (auto& r : second) first.push_back(std::move(r));
  return first;
}

std::vector<LambdaExpr> zder_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  check_rank(A, D);
  const auto [mu_v, lam] = slots_for({&D});
  const MultiPoly mu = MultiPoly::var(mu_v);
  const std::vector<LambdaExpr> ak = alpha_power_basis(A, k);
  std::vector<LambdaExpr> first, second;
  for (std::size_t a = 0; a < A.rank(); ++a)
    for (std::size_t b = 0; b < A.rank(); ++b) {
      first.push_back(extend_bracket(A, apply(D, A.basis_element(a), mu), ak[b], lam + mu));
      second.push_back(apply(D, A.structure(a, b).substitute(VarId::slot(0), lam), mu));
    }
  for (auto& r : second) first.push_back(std::move(r));
  return first;
}

MembershipReport check_generalized_derivation(const HomConformalAlgebra& A, const GenDerTriple& T, int k) {
  MembershipReport rep;
  record_omega(rep.omega, A, {&T.D, &T.D1, &T.D2});
  record_all(rep.identity, gder_residuals(A, T.D, T.D1, T.D2, k));
  return rep;
}

MembershipReport check_quasiderivation(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1,
                                       int k) {
  MembershipReport rep;
  record_omega(rep.omega, A, {&D, &D1});
  record_all(rep.identity, gder_residuals(A, D, D, D1, k));
  return rep;
}

MembershipReport check_centroid(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  MembershipReport rep;
  record_omega(rep.omega, A, {&D});
  record_all(rep.identity, centroid_residuals(A, D, k));
  return rep;
}

MembershipReport check_quasicentroid(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  MembershipReport rep;
  record_omega(rep.omega, A, {&D});
  record_all(rep.identity, qc_residuals(A, D, k));
  return rep;
}

MembershipReport check_central_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  MembershipReport rep;
  record_omega(rep.omega, A, {&D});
  record_all(rep.identity, zder_residuals(A, D, k));
  return rep;
}

bool is_generalized_derivation(const HomConformalAlgebra& A, const GenDerTriple& T, int k) {
  return check_generalized_derivation(A, T, k).passes();
}
bool is_quasiderivation(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1, int k) {
  return check_quasiderivation(A, D, D1, k).passes();
}
bool is_centroid(const HomConformalAlgebra& A, const ConformalMap& D, int k) { return check_centroid(A, D, k).passes(); }
bool is_quasicentroid(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  return check_quasicentroid(A, D, k).passes();
}
bool is_central_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  return check_central_derivation(A, D, k).passes();
}

bool is_member(const HomConformalAlgebra& A, SpaceKind kind, const ConformalMap& D, const ConformalMap* D1,
               const ConformalMap* D2, int k) {
  switch (kind) {
    case SpaceKind::GDer:
      if (!D1 || !D2) throw PreconditionFailed("GDer membership needs both witnesses");
      return is_generalized_derivation(A, GenDerTriple{D, *D1, *D2}, k);
    case SpaceKind::QDer:
      if (!D1) throw PreconditionFailed("QDer membership needs a witness");
      return is_quasiderivation(A, D, *D1, k);
    case SpaceKind::Der: return is_quasiderivation(A, D, D, k);
    case SpaceKind::Centroid: return is_centroid(A, D, k);
    case SpaceKind::QuasiCentroid: return is_quasicentroid(A, D, k);
    case SpaceKind::CentralDer: return is_central_derivation(A, D, k);
  }
  return false;
}

namespace {

using JointResidual = std::function<std::vector<LambdaExpr>(const std::vector<ConformalMap>&)>;

// Kernel of a residual that is linear in `copies` maps jointly; each kernel
// vector is returned as its list of component maps.
std::vector<std::vector<ConformalMap>> solve_joint(const HomConformalAlgebra& A, int k, unsigned bound,
                                                   std::size_t copies, const JointResidual& residual) {
  const MapCoordinates mc(A.rank(), bound);
  const ConformalMap zero = ConformalMap::zero(A.rank(), ExtensionRule::ConformalLinear, k);
  const auto kernel = solve_homogeneous(copies * mc.size(), [&](std::size_t u) {
    std::vector<ConformalMap> maps(copies, zero);
    maps[u / mc.size()] = mc.unit(u % mc.size(), k);
    std::vector<LambdaExpr> parts;
    for (const auto& m : maps)
      for (auto& r : alpha_commutation_residuals(A, m)) parts.push_back(std::move(r));
    for (auto& r : residual(maps)) parts.push_back(std::move(r));
    return parts;
  });
  std::vector<std::vector<ConformalMap>> out;
  for (const auto& v : kernel) {
    std::vector<ConformalMap> comps;
    for (std::size_t c = 0; c < copies; ++c) comps.push_back(mc.combine(v, c * mc.size(), k));
    out.push_back(std::move(comps));
  }
  return out;
}

std::vector<std::size_t> independent_maps(const std::vector<ConformalMap>& maps) {
  Flattener f;
  std::vector<SparseVec> vecs;
  for (const auto& m : maps) vecs.push_back(f.flatten(m.with_slot(VarId::slot(0)).images()));
  return independent_subset(vecs);
}

}  // namespace

SolvedSpace solve_space(const HomConformalAlgebra& A, SpaceKind kind, int k, unsigned degree_bound) {
  SolvedSpace sp;
  sp.kind = kind;
  sp.k = k;
  sp.degree_bound = degree_bound;
  const ConformalMap zero = ConformalMap::zero(A.rank(), ExtensionRule::ConformalLinear, k);
  std::size_t copies = 1;
  JointResidual res;
  switch (kind) {
    case SpaceKind::GDer:
      copies = 3;
      res = [&](const std::vector<ConformalMap>& m) { return gder_residuals(A, m[0], m[1], m[2], k); };
      break;
    case SpaceKind::QDer:
      copies = 2;
      res = [&](const std::vector<ConformalMap>& m) { return gder_residuals(A, m[0], m[0], m[1], k); };
      break;
    case SpaceKind::Der:
      res = [&](const std::vector<ConformalMap>& m) { return gder_residuals(A, m[0], m[0], m[0], k); };
      break;
    case SpaceKind::Centroid:
      res = [&](const std::vector<ConformalMap>& m) { return centroid_residuals(A, m[0], k); };
      break;
    case SpaceKind::QuasiCentroid:
      res = [&](const std::vector<ConformalMap>& m) { return qc_residuals(A, m[0], k); };
      break;
    case SpaceKind::CentralDer:
      res = [&](const std::vector<ConformalMap>& m) { return zder_residuals(A, m[0], k); };
      break;
  }
  const auto sols = solve_joint(A, k, degree_bound, copies, res);
  std::vector<ConformalMap> heads;
  for (const auto& s : sols) heads.push_back(s[0]);
  for (std::size_t idx : independent_maps(heads)) {
    sp.maps.push_back(sols[idx][0]);
    if (copies > 1) sp.witness1.push_back(sols[idx][1]);
    if (copies > 2) sp.witness2.push_back(sols[idx][2]);
  }
  if (kind == SpaceKind::GDer) {
    for (const auto& s : solve_joint(A, k, degree_bound, 2, [&](const std::vector<ConformalMap>& m) {
           return gder_residuals(A, zero, m[0], m[1], k);
         })) {
      sp.freedom1.push_back(s[0]);
      sp.freedom2.push_back(s[1]);
    }
  } else if (kind == SpaceKind::QDer) {
    for (const auto& s : solve_joint(A, k, degree_bound, 1, [&](const std::vector<ConformalMap>& m) {
           return gder_residuals(A, zero, zero, m[0], k);
         }))
      sp.freedom1.push_back(s[0]);
  }
  return sp;
}

Decomposition decompose_gder(const HomConformalAlgebra& A, const GenDerTriple& T, int k) {
  if (!is_generalized_derivation(A, T, k)) throw InvalidTriple("triple is not a generalized derivation");
  const ConformalMap d1 = T.D1.with_slot(T.D.slot());
  const MultiPoly half(Rational(1, 2));
  Decomposition out;
  out.quasi = T.D + d1;
  out.quasi *= half;
  out.qc = T.D - d1;
  out.qc *= half;
  out.quasi_witness = T.D2;
  out.quasi_ok = is_quasiderivation(A, out.quasi, out.quasi_witness, k);
  out.qc_ok = is_quasicentroid(A, out.qc, k);
  out.sums_to_d = (out.quasi + out.qc) == T.D;
  return out;
}

bool ClosureReport::passes() const {
  return std::all_of(checks.begin(), checks.end(), [](const ClosureCheck& c) { return c.result.holds; });
}

namespace {

void record_pair(ClosureCheck& chk, std::size_t i, std::size_t j, const std::vector<LambdaExpr>& res) {
  ++chk.pairs;
  for (std::size_t r = 0; r < res.size(); ++r) chk.result.record({i, j, r}, res[r]);
}

using PairResidual = std::function<std::vector<LambdaExpr>(std::size_t, std::size_t)>;

ClosureCheck run_pairs(std::string name, std::size_t n1, std::size_t n2, const PairResidual& f) {
  ClosureCheck chk;
  chk.name = std::move(name);
  std::vector<std::vector<LambdaExpr>> res(n1 * n2);
  parallel_for(n1 * n2, [&](std::size_t u) { res[u] = f(u / n2, u % n2); });
  for (std::size_t u = 0; u < res.size(); ++u) record_pair(chk, u / n2, u % n2, res[u]);
  return chk;
}

std::vector<LambdaExpr> membership_residuals(const HomConformalAlgebra& A, SpaceKind kind, const ConformalMap& D,
                                             const ConformalMap* D1, const ConformalMap* D2, int k) {
  std::vector<LambdaExpr> out = alpha_commutation_residuals(A, D);
  auto add = [&out](std::vector<LambdaExpr> r) {
    for (auto& x : r) out.push_back(std::move(x));
  };
  switch (kind) {
    case SpaceKind::GDer:
      add(alpha_commutation_residuals(A, *D1));
      add(alpha_commutation_residuals(A, *D2));
      add(gder_residuals(A, D, *D1, *D2, k));
      break;
    case SpaceKind::QDer:
      add(alpha_commutation_residuals(A, *D1));
      add(gder_residuals(A, D, D, *D1, k));
      break;
    case SpaceKind::Der: add(gder_residuals(A, D, D, D, k)); break;
    case SpaceKind::Centroid: add(centroid_residuals(A, D, k)); break;
    case SpaceKind::QuasiCentroid: add(qc_residuals(A, D, k)); break;
    case SpaceKind::CentralDer: add(zder_residuals(A, D, k)); break;
  }
  return out;
}

}  // namespace

ClosureReport bracket_closure_checks(const HomConformalAlgebra& A, int k, int s, unsigned degree_bound) {
  const int ks = k + s;
  auto solve = [&](SpaceKind kind, int level) { return solve_space(A, kind, level, degree_bound); };
  const SolvedSpace gk = solve(SpaceKind::GDer, k), gs = solve(SpaceKind::GDer, s);
  const SolvedSpace qk = solve(SpaceKind::QDer, k), qs = solve(SpaceKind::QDer, s);
  const SolvedSpace dk = solve(SpaceKind::Der, k), ds = solve(SpaceKind::Der, s);
  const SolvedSpace ck = solve(SpaceKind::Centroid, k), cs = solve(SpaceKind::Centroid, s);
  const SolvedSpace qck = solve(SpaceKind::QuasiCentroid, k), qcs = solve(SpaceKind::QuasiCentroid, s);
  const SolvedSpace zk = solve(SpaceKind::CentralDer, k);

  ClosureReport rep;
  rep.checks.push_back(run_pairs("GDer subalgebra", gk.dimension(), gs.dimension(), [&](std::size_t i, std::size_t j) {
    const ConformalMap c = commutator(gk.maps[i], gs.maps[j]);
    const ConformalMap c1 = commutator(gk.witness1[i], gs.witness1[j]);
    const ConformalMap c2 = commutator(gk.witness2[i], gs.witness2[j]);
    return membership_residuals(A, SpaceKind::GDer, c, &c1, &c2, ks);
  }));
  rep.checks.push_back(run_pairs("QDer subalgebra", qk.dimension(), qs.dimension(), [&](std::size_t i, std::size_t j) {
    const ConformalMap c = commutator(qk.maps[i], qs.maps[j]);
    const ConformalMap c1 = commutator(qk.witness1[i], qs.witness1[j]);
    return membership_residuals(A, SpaceKind::QDer, c, &c1, nullptr, ks);
  }));
  rep.checks.push_back(run_pairs("C subalgebra", ck.dimension(), cs.dimension(), [&](std::size_t i, std::size_t j) {
    return membership_residuals(A, SpaceKind::Centroid, commutator(ck.maps[i], cs.maps[j]), nullptr, nullptr, ks);
  }));
  rep.checks.push_back(run_pairs("ZDer ideal of Der", zk.dimension(), ds.dimension(), [&](std::size_t i, std::size_t j) {
    return membership_residuals(A, SpaceKind::CentralDer, commutator(zk.maps[i], ds.maps[j]), nullptr, nullptr, ks);
  }));
  rep.checks.push_back(run_pairs("[Der, C] in C", dk.dimension(), cs.dimension(), [&](std::size_t i, std::size_t j) {
    return membership_residuals(A, SpaceKind::Centroid, commutator(dk.maps[i], cs.maps[j]), nullptr, nullptr, ks);
  }));
  rep.checks.push_back(run_pairs("[QDer, QC] in QC", qk.dimension(), qcs.dimension(), [&](std::size_t i, std::size_t j) {
    return membership_residuals(A, SpaceKind::QuasiCentroid, commutator(qk.maps[i], qcs.maps[j]), nullptr, nullptr,
                                ks);
  }));
  rep.checks.push_back(run_pairs("[QC, QC] in QDer", qck.dimension(), qcs.dimension(), [&](std::size_t i, std::size_t j) {
    const ConformalMap c = commutator(qck.maps[i], qcs.maps[j]);
    const ConformalMap w = ConformalMap::zero(A.rank(), ExtensionRule::ConformalLinear, ks).with_slot(c.slot());
    return membership_residuals(A, SpaceKind::QDer, c, &w, nullptr, ks);
  }));

  ClosureCheck shift;
  shift.name = "alpha shift";
  for (const SolvedSpace* sp : {&gk, &qk, &dk, &ck, &qck, &zk}) {
    for (std::size_t i = 0; i < sp->dimension(); ++i) {
      const ConformalMap d = compose_alpha(A, sp->maps[i]);
      std::optional<ConformalMap> w1, w2;
      if (!sp->witness1.empty()) w1 = compose_alpha(A, sp->witness1[i]);
      if (!sp->witness2.empty()) w2 = compose_alpha(A, sp->witness2[i]);
      record_pair(shift, static_cast<std::size_t>(sp->kind), i,
                  membership_residuals(A, sp->kind, d, w1 ? &*w1 : nullptr, w2 ? &*w2 : nullptr, k + 1));
    }
  }
  rep.checks.push_back(std::move(shift));
  return rep;
}

namespace {

// Every image of the two-slot map is central: [value _x e_j] = 0 with x a slot
// not used by the map.
std::optional<LambdaExpr> non_central_value(const HomConformalAlgebra& A, const ConformalMap& M) {
  const VarId x = VarId::slot(fresh_slot({&M}));
  for (std::size_t i = 0; i < M.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) {
      LambdaExpr b = extend_bracket(A, M.image(i), A.basis_element(j), x);
      if (!b.is_zero()) return b;
    }
  return std::nullopt;
}

}  // namespace

CenterReport centroid_qc_center_check(const HomConformalAlgebra& A, int k, int s, unsigned degree_bound) {
  require_regular(A);
  const SolvedSpace C = solve_space(A, SpaceKind::Centroid, k, degree_bound);
  const SolvedSpace QC = solve_space(A, SpaceKind::QuasiCentroid, s, degree_bound);
  CenterReport rep;
  rep.center_dimension = center(A, degree_bound).size();
  for (std::size_t i = 0; i < C.dimension(); ++i)
    for (std::size_t j = 0; j < QC.dimension(); ++j) {
      ++rep.pairs;
      const ConformalMap c = commutator(C.maps[i], QC.maps[j]);
      if (!c.is_zero()) rep.all_zero = false;
      if (auto bad = non_central_value(A, c)) {
        if (rep.values_central) rep.failure = Residual{{i, j}, *bad};
        rep.values_central = false;
      }
    }
  return rep;
}

QcBracketReport qc_bracket_vanishing(const HomConformalAlgebra& A, int k, int s, unsigned degree_bound) {
  require_regular(A);
  if (!center(A, degree_bound).empty()) throw PreconditionFailed("center slice is nonzero");
  const SolvedSpace Q1 = solve_space(A, SpaceKind::QuasiCentroid, k, degree_bound);
  const SolvedSpace Q2 = solve_space(A, SpaceKind::QuasiCentroid, s, degree_bound);
  QcBracketReport rep;
  for (std::size_t i = 0; i < Q1.dimension(); ++i)
    for (std::size_t j = 0; j < Q2.dimension(); ++j) {
      ++rep.pairs;
      const ConformalMap c = commutator(Q1.maps[i], Q2.maps[j]);
      if (!c.is_zero()) rep.all_zero = false;
      if (!is_quasicentroid(A, c, k + s)) rep.closure_hypothesis = false;
    }
  rep.converse_holds = is_quasicentroid(A, ConformalMap::zero(A.rank(), ExtensionRule::ConformalLinear, k + s), k + s);
  return rep;
}

HomConformalAlgebra breve_extension(const HomConformalAlgebra& A) {
  const std::size_t r = A.rank();
  const std::size_t n = 2 * r;
  StructureTable t(n, std::vector<LambdaExpr>(n, LambdaExpr(n)));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t c = 0; c < r; ++c) t[i][j][r + c] = A.structure(i, j)[c];
  std::vector<std::string> names;
  for (const auto& nm : A.basis_names()) names.push_back(nm + "t");
  for (const auto& nm : A.basis_names()) names.push_back(nm + "t2");
  return HomConformalAlgebra(A.name() + "_breve", std::move(names), std::move(t),
                             PolyMatrix::block_diagonal(A.alpha(), A.alpha()));
}

namespace {

// Coordinates of a slot-free element; columns above the bound come first.
SparseVec element_coords(const LambdaExpr& x, std::size_t offset_low, unsigned bound, std::size_t high_width) {
  SparseVec v;
  for (std::size_t c = 0; c < x.rank(); ++c)
    for (const auto& [m, q] : x[c].terms()) {
      const unsigned a = m.exponent(kPartial);
      const std::size_t key = a <= bound ? offset_low + c * (bound + 1) + a : c * high_width + (a - bound - 1);
      v.emplace(key, q);
    }
  return v;
}

LambdaExpr coords_to_element(const std::map<std::size_t, mpz_class>& row, std::size_t rank, std::size_t offset_low,
                             unsigned bound) {
  LambdaExpr x(rank);
  for (const auto& [key, z] : row) {
    const std::size_t u = key - offset_low;
    x[u / (bound + 1)] += MultiPoly::term(Rational(z), Monomial::var(kPartial, static_cast<unsigned>(u % (bound + 1))));
  }
  return x;
}

}  // namespace

Complement compute_complement(const HomConformalAlgebra& A, unsigned degree_bound) {
  const std::size_t r = A.rank();
  Complement comp;
  comp.degree_bound = degree_bound;
  comp.slice = element_slice_basis(r, degree_bound);

  std::vector<LambdaExpr> coeffs;
  unsigned maxdeg = degree_bound;
  for (const auto& x : comp.slice)
    for (const auto& y : comp.slice) {
      const LambdaExpr b = extend_bracket(A, x, y, VarId::slot(0));
      const int top = b.degree_in(VarId::slot(0));
      for (int p = 0; p <= top; ++p) {
        LambdaExpr c = b.coefficient_of(VarId::slot(0), static_cast<unsigned>(p));
        if (c.is_zero()) continue;
        maxdeg = std::max(maxdeg, static_cast<unsigned>(std::max(0, c.degree_in(kPartial))));
        coeffs.push_back(std::move(c));
      }
    }
  // High-degree columns come first so rows pivoting on low columns span the
  // intersection with the slice.
  const std::size_t high_width = maxdeg - degree_bound;
  const std::size_t offset_low = r * high_width;
  EchelonForm ef;
  for (const auto& c : coeffs) ef.insert(element_coords(c, offset_low, degree_bound, high_width));
  EchelonForm low;
  for (const auto& [pivot, row] : ef.rows()) {
    if (pivot < offset_low) continue;
    comp.derived.push_back(coords_to_element(row, r, offset_low, degree_bound));
    low.insert(element_coords(comp.derived.back(), offset_low, degree_bound, high_width));
  }
  for (const auto& x : comp.slice)
    if (low.insert(element_coords(x, offset_low, degree_bound, high_width))) comp.complement.push_back(x);

  for (std::size_t i = 0; i < r; ++i) {
    std::vector<SparseVec> cols;
    for (const auto& u : comp.complement) cols.push_back(element_coords(u, offset_low, degree_bound, high_width));
    for (const auto& d : comp.derived) cols.push_back(element_coords(d, offset_low, degree_bound, high_width));
    cols.push_back(element_coords(A.basis_element(i), offset_low, degree_bound, high_width));
    const auto ker = nullspace(cols);
    LambdaExpr proj(r);
    const std::size_t last = cols.size() - 1;
    for (const auto& v : ker) {
      auto it = v.find(last);
      if (it == v.end()) continue;
      const Rational scale = -1 / it->second;
      for (const auto& [j, q] : v)
        if (j >= comp.complement.size() && j < last)
          proj += comp.derived[j - comp.complement.size()] * MultiPoly(Rational(q * scale));
      break;
    }
    comp.projection.push_back(std::move(proj));
  }
  return comp;
}

ConformalMap phi_embedding(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1,
                           const Complement& comp, int k) {
  if (!is_quasiderivation(A, D, D1, k)) throw NotQuasiderivation("pair is not a quasiderivation");
  const std::size_t r = A.rank();
  const ConformalMap d = D.with_slot(VarId::slot(0)), d1 = D1.with_slot(VarId::slot(0));
  std::vector<LambdaExpr> im(2 * r, LambdaExpr(2 * r));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t c = 0; c < r; ++c) im[i][c] = d.image(i)[c];
    const LambdaExpr t2 = apply(d1, comp.projection[i], xpoly(0));
    for (std::size_t c = 0; c < r; ++c) im[r + i][r + c] = t2[c];
  }
  return ConformalMap(std::move(im), ExtensionRule::ConformalLinear, k);
}

PhiReport check_phi(const HomConformalAlgebra& A, int k, unsigned degree_bound) {
  const SolvedSpace Q = solve_space(A, SpaceKind::QDer, k, degree_bound);
  const Complement comp = compute_complement(A, degree_bound);
  const HomConformalAlgebra B = breve_extension(A);
  PhiReport rep;
  rep.qder_dimension = Q.dimension();
  std::vector<ConformalMap> images;
  for (std::size_t i = 0; i < Q.dimension(); ++i) {
    const ConformalMap phi = phi_embedding(A, Q.maps[i], Q.witness1[i], comp, k);
    if (!is_alpha_k_derivation(B, phi, k)) rep.all_derivations = false;
    images.push_back(phi);
    for (const auto& w : Q.freedom1) {
      const ConformalMap other = Q.witness1[i] + w;
      for (const auto& b : comp.derived)
        if (!(apply(Q.witness1[i], b, xpoly(0)) == apply(other, b, xpoly(0)))) rep.witness_independent = false;
    }
  }
  rep.image_rank = images.empty() ? 0 : map_rank(images);
  return rep;
}

}  // namespace conflab
