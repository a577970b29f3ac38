#include "conflab/deformation.hpp"

#include <random>

#include "conflab/errors.hpp"
#include "conflab/parallel.hpp"

namespace conflab {

namespace {

ConformalMap as_endo(const ConformalMap& f) {
  ConformalMap m = f.with_slot(VarId::slot(0)).with_rule(ExtensionRule::CochainAntilinear);
  if (m.max_slot() > 0) throw PreconditionFailed("endo cochain carries passive parameters");
  return m;
}

void require_regular(const HomConformalAlgebra& A) {
  if (!A.alpha().is_unimodular()) throw NonInvertibleAlpha();
}

}  // namespace

Cochain endo_to_cochain(const ConformalMap& f) {
  const ConformalMap m = as_endo(f);
  Cochain c(1, m.rank(), m.rank());
  for (std::size_t i = 0; i < m.rank(); ++i) c.entry(i) = m.image(i);
  return c;
}

ConformalMap cochain_to_endo(const Cochain& gamma) {
  if (gamma.arity() != 1 || gamma.algebra_rank() != gamma.module_rank())
    throw ModuleMismatch("endo cochain must be a 1-cochain with values in the algebra");
  return ConformalMap(gamma.entries(), ExtensionRule::CochainAntilinear, 0);
}

LambdaExpr nijenhuis_bracket(const HomConformalAlgebra& A, const ConformalMap& f, std::size_t i, std::size_t j) {
  const ConformalMap m = as_endo(f);
  LambdaExpr out = extend_bracket(A, m.image(i), A.basis_element(j), VarId::slot(0));
  out += extend_bracket(A, A.basis_element(i), apply_at_minus_d(m, A.basis_element(j)), VarId::slot(0));
  out -= apply_at_minus_d(m, A.structure(i, j));
  return out;
}

StructureTable nijenhuis_table(const HomConformalAlgebra& A, const ConformalMap& f) {
  StructureTable t(A.rank(), std::vector<LambdaExpr>(A.rank()));
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) t[i][j] = nijenhuis_bracket(A, f, i, j);
  return t;
}

NijenhuisReport check_nijenhuis(const HomConformalAlgebra& A, const ConformalMap& f) {
  if (f.rank() != A.rank()) throw RankMismatch("endo rank does not match the algebra");
  const ConformalMap m = as_endo(f);
  NijenhuisReport rep;
  const auto comm = alpha_commutation_residuals(A, m);
  for (std::size_t i = 0; i < comm.size(); ++i) rep.commutes_with_alpha.record({i}, comm[i]);
  const StructureTable N = nijenhuis_table(A, m);
  const MultiPoly lam = xpoly(0), mu = xpoly(1);
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) {
      const LambdaExpr lhs = extend_bracket(A, m.image(i), apply(m, A.basis_element(j), mu), lam);
      rep.condition.record({i, j}, lhs - apply(m, N[i][j], lam + mu));
      const LambdaExpr lhs2 = extend_bracket(A, m.image(i), apply_at_minus_d(m, A.basis_element(j)), lam);
      rep.specialized.record({i, j}, lhs2 - apply_at_minus_d(m, N[i][j]));
    }
  return rep;
}

bool is_nijenhuis(const HomConformalAlgebra& A, const ConformalMap& f) { return check_nijenhuis(A, f).passes(); }

Cochain d_minus1_of_endo(const HomConformalAlgebra& A, const ConformalMap& f) {
  require_regular(A);
  return differential_s(A, endo_to_cochain(f), -1);
}

StructureTable specialize(const Cochain& psi) {
  if (psi.arity() != 2) throw ModuleMismatch("specialization needs a 2-cochain");
  const std::size_t r = psi.algebra_rank();
  StructureTable t(r, std::vector<LambdaExpr>(r));
  const MultiPoly reflected = -dpoly() - xpoly(0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) t[i][j] = psi.at({i, j}).substitute(VarId::slot(1), reflected);
  return t;
}

HomConformalAlgebra deform(const HomConformalAlgebra& A, const Cochain& psi) {
  if (psi.algebra_rank() != A.rank() || psi.module_rank() != A.rank())
    throw ModuleMismatch("psi must take values in the algebra");
  const StructureTable P = specialize(psi);
  StructureTable t = A.table();
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) t[i][j] += tpoly() * P[i][j];
  return HomConformalAlgebra(A.name() + "_t", A.basis_names(), std::move(t), A.alpha());
}

DeformationReport check_deformation(const HomConformalAlgebra& A, const Cochain& psi) {
  require_regular(A);
  DeformationReport rep;
  const ConformalModule Rm1 = alpha_power_adjoint(A, -1);
  rep.psi_is_cochain = check_cochain(A, Rm1, psi).passes();
  rep.cocycle = differential_s(A, psi, -1).is_zero();

  const StructureTable P = specialize(psi);
  const HomConformalAlgebra Palg(A.name() + "_psi", A.basis_names(), P, A.alpha());
  const HomConformalAlgebra D = deform(A, psi);
  const std::size_t r = A.rank();
  const MultiPoly lam = xpoly(0), mu = xpoly(1);
  std::vector<LambdaExpr> alpha1(r);
  for (std::size_t i = 0; i < r; ++i) alpha1[i] = A.alpha_apply(A.basis_element(i));

  bool t1_ok = true, t2_ok = true;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b)
      for (std::size_t c = 0; c < r; ++c) {
        const std::vector<std::size_t> idx{a, b, c};
        const LambdaExpr quad = hom_jacobi_residual(Palg, a, b, c);
        rep.quadratic.record(idx, quad);
        const LambdaExpr full = hom_jacobi_residual(D, a, b, c);
        for (unsigned p = 0; p < 3; ++p) rep.jacobi[p].record(idx, full.coefficient_of(kDefParam, p));
        if (full.degree_in(kDefParam) > 2) rep.jacobi[2].record(idx, full);

        // [alpha a _l P(b,c)_m] + P(alpha a, [b_m c])_l - P([a_l b], alpha c)_{l+m}
        //   - [alpha b _m P(a,c)_l] - P(alpha b, [a_l c])_m - [P(a,b)_l _{l+m} alpha c]
        const LambdaExpr bc = A.structure(b, c).substitute(VarId::slot(0), mu);
        const LambdaExpr Pbc = P[b][c].substitute(VarId::slot(0), mu);
        LambdaExpr lin = extend_bracket(A, alpha1[a], Pbc, lam);
        lin += sesquilinear_extend(P, r, alpha1[a], bc, lam);
        lin -= sesquilinear_extend(P, r, A.structure(a, b), alpha1[c], lam + mu);
        lin -= extend_bracket(A, alpha1[b], P[a][c], mu);
        lin -= sesquilinear_extend(P, r, alpha1[b], A.structure(a, c), mu);
        lin -= extend_bracket(A, P[a][b], alpha1[c], lam + mu);
        rep.linear_condition.record(idx, lin);
        if (!(lin == full.coefficient_of(kDefParam, 1))) t1_ok = false;
        if (!(quad == full.coefficient_of(kDefParam, 2))) t2_ok = false;
      }
  rep.t1_matches_linear = t1_ok;
  rep.t2_matches_quadratic = t2_ok;
  return rep;
}

TrivialityReport check_trivial_deformation(const HomConformalAlgebra& A, const ConformalMap& f) {
  const ConformalMap m = as_endo(f);
  const Cochain psi = d_minus1_of_endo(A, m);
  const StructureTable P = specialize(psi);
  TrivialityReport rep;
  const MultiPoly t = tpoly();
  for (std::size_t i = 0; i < A.rank(); ++i)
    for (std::size_t j = 0; j < A.rank(); ++j) {
      const LambdaExpr bt = A.structure(i, j) + t * P[i][j];
      const LambdaExpr lhs = bt + t * apply_at_minus_d(m, bt);
      const LambdaExpr left = A.basis_element(i) + t * m.image(i);
      const LambdaExpr right = A.basis_element(j) + t * apply_at_minus_d(m, A.basis_element(j));
      const LambdaExpr diff = lhs - extend_bracket(A, left, right, VarId::slot(0));
      for (unsigned p = 0; p < 3; ++p) rep.per_t[p].record({i, j}, diff.coefficient_of(kDefParam, p));
      if (diff.degree_in(kDefParam) > 2) rep.per_t[2].record({i, j}, diff);
    }
  return rep;
}

bool is_trivial_deformation(const HomConformalAlgebra& A, const ConformalMap& f) {
  return check_trivial_deformation(A, f).passes();
}

std::vector<ConformalMap> endo_cochain_basis(const HomConformalAlgebra& A, unsigned degree_bound) {
  require_regular(A);
  const ConformalModule Rm1 = alpha_power_adjoint(A, -1);
  std::vector<ConformalMap> out;
  for (const auto& c : cochain_space_basis(A, Rm1, 1, degree_bound)) out.push_back(cochain_to_endo(c));
  return out;
}

std::vector<ConformalMap> nijenhuis_candidates(const HomConformalAlgebra& A, unsigned degree_bound,
                                               std::uint64_t seed) {
  const std::vector<ConformalMap> B = endo_cochain_basis(A, degree_bound);
  std::mt19937_64 rng(seed);
  static constexpr int kGrid[] = {-2, -1, 1, 2};
  std::uniform_int_distribution<int> pick(0, 3);
  std::vector<ConformalMap> trial;
  for (const auto& b : B) trial.push_back(b);
  for (std::size_t k = 0; k < B.size(); ++k)
    for (std::size_t l = k + 1; l < B.size(); ++l) {
      ConformalMap m = B[l];
      m *= MultiPoly(static_cast<long>(kGrid[pick(rng)]));
      trial.push_back(B[k] + m);
    }
  std::vector<char> ok(trial.size(), 0);
  parallel_for(trial.size(), [&](std::size_t u) { ok[u] = is_nijenhuis(A, trial[u]) ? 1 : 0; });
  std::vector<ConformalMap> out;
  for (std::size_t u = 0; u < trial.size(); ++u)
    if (ok[u] && !trial[u].is_zero()) out.push_back(trial[u]);
  return out;
}

}  // namespace conflab
