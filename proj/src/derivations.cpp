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

ConformalMap plain(const ConformalMap& D) {
  const ConformalMap m = D.with_slot(VarId::slot(0));
  if (m.max_slot() > 0) throw PreconditionFailed("map carries passive parameters");
  return m;
}

}  // namespace

std::vector<LambdaExpr> derivation_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  if (D.rank() != A.rank()) throw RankMismatch("map rank does not match the algebra");
  const std::size_t r = A.rank();
  const MultiPoly mu = MultiPoly::var(D.slot());
  const MultiPoly lam = xpoly(fresh_slot({&D}));
  const std::vector<LambdaExpr> ak = alpha_power_basis(A, k);
  std::vector<LambdaExpr> dimg(r);
  for (std::size_t i = 0; i < r; ++i) dimg[i] = apply(D, A.basis_element(i), mu);
  std::vector<LambdaExpr> out;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      LambdaExpr res = apply(D, A.structure(a, b).substitute(VarId::slot(0), lam), mu);
      res -= extend_bracket(A, dimg[a], ak[b], lam + mu);
      res -= extend_bracket(A, ak[a], dimg[b], lam);
      out.push_back(std::move(res));
    }
  return out;
}

DerivationReport check_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  DerivationReport rep;
  const auto comm = alpha_commutation_residuals(A, D);
  for (std::size_t i = 0; i < comm.size(); ++i) rep.commutes_with_alpha.record({i}, comm[i]);
  const auto res = derivation_residuals(A, D, k);
  for (std::size_t idx = 0; idx < res.size(); ++idx) rep.identity.record({idx / A.rank(), idx % A.rank()}, res[idx]);
  return rep;
}

bool is_alpha_k_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k) {
  return check_derivation(A, D, k).passes();
}

ConformalMap inner_derivation(const HomConformalAlgebra& A, const LambdaExpr& a, int k) {
  if (a.rank() != A.rank()) throw RankMismatch("element rank does not match the algebra");
  if (!(A.alpha_apply(a) == a)) throw NotAlphaFixed("inner derivation needs alpha(a) = a");
  const std::vector<LambdaExpr> ak = alpha_power_basis(A, k);
  std::vector<LambdaExpr> im;
  for (std::size_t j = 0; j < A.rank(); ++j) im.push_back(extend_bracket(A, a, ak[j], VarId::slot(0)));
  return ConformalMap(std::move(im), ExtensionRule::ConformalLinear, k + 1);
}

std::vector<ConformalMap> solve_derivations(const HomConformalAlgebra& A, int k, unsigned degree_bound) {
  const MapCoordinates mc(A.rank(), degree_bound);
  const auto kernel = solve_homogeneous(mc.size(), [&](std::size_t u) {
    const ConformalMap D = mc.unit(u, k);
    std::vector<LambdaExpr> parts = alpha_commutation_residuals(A, D);
    for (auto& r : derivation_residuals(A, D, k)) parts.push_back(std::move(r));
    return parts;
  });
  std::vector<ConformalMap> out;
  for (const auto& v : kernel) out.push_back(mc.combine(v, 0, k));
  return out;
}

HomConformalAlgebra derivation_extension(const HomConformalAlgebra& A, const ConformalMap& D) {
  const ConformalMap m = plain(D);
  const std::size_t r = A.rank();
  const std::size_t n = r + 1;
  auto embed = [n](const LambdaExpr& x) {
    LambdaExpr out(n);
    for (std::size_t k = 0; k < x.rank(); ++k) out[k] = x[k];
    return out;
  };
  StructureTable t(n, std::vector<LambdaExpr>(n, LambdaExpr(n)));
  const MultiPoly reflected = -dpoly() - xpoly(0);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) t[i][j] = embed(A.structure(i, j));
    t[r][i] = embed(m.image(i));
    t[i][r] = -embed(m.image(i).substitute(VarId::slot(0), reflected));
  }
  std::vector<std::string> names = A.basis_names();
  names.push_back("E");
  PolyMatrix one(1, 1);
  one(0, 0) = MultiPoly(1L);
  return HomConformalAlgebra(A.name() + "+E", std::move(names), std::move(t),
                             PolyMatrix::block_diagonal(A.alpha(), one));
}

ConformalMap commutator_jacobi_residual(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& E,
                                        const ConformalMap& F) {
  const ConformalMap d = plain(D), e = plain(E), f = plain(F);
  const VarId tmp = VarId::slot(3);
  const VarId theta = VarId::slot(2);
  ConformalMap lhs = commutator_at(compose_alpha(A, d), commutator_at(e, f, xpoly(1), tmp), xpoly(0), theta);
  lhs -= commutator_at(compose_alpha(A, e), commutator_at(d, f, xpoly(0), tmp), xpoly(1), theta);
  lhs -= commutator_at(commutator_at(d, e, xpoly(0), tmp), compose_alpha(A, f), xpoly(0) + xpoly(1), theta);
  return lhs;
}

ConformalMap commutator_skew_residual(const ConformalMap& D, const ConformalMap& E) {
  ConformalMap lhs = commutator(D, E);
  ConformalMap rhs = commutator(E, D);
  for (std::size_t i = 0; i < rhs.rank(); ++i)
    rhs.image(i) = rhs.image(i).substitute(VarId::slot(0), xpoly(1) - xpoly(0));
  lhs += rhs;
  return lhs;
}

}  // namespace conflab
