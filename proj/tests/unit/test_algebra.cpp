#include "doctest.h"

#include "conflab/algebra.hpp"
#include "fixtures.hpp"
#include "oracle_values.hpp"

using namespace conflab;
using fixtures::elem;

TEST_CASE("extension of the bracket by sesquilinearity") {
  const auto V = fixtures::algebra("virasoro.alg");
  const LambdaExpr L = V.basis_element(0);
  const LambdaExpr dL = V.basis_element(0, dpoly());
  CHECK(extend_bracket(V, L, L, VarId::slot(0)) == elem("(d + 2*x0)*L", V));
  // [dL_l L] = -l [L_l L]
  CHECK(extend_bracket(V, dL, L, VarId::slot(0)) == elem("-x0*(d + 2*x0)*L", V));
  // [L_l dL] = (d + l) [L_l L]
  CHECK(extend_bracket(V, L, dL, VarId::slot(0)) == elem("(d + x0)*(d + 2*x0)*L", V));
  // slot variables in the arguments are carried as scalars
  CHECK(extend_bracket(V, elem("x1*L", V), L, VarId::slot(0)) == elem("x1*(d + 2*x0)*L", V));
}

TEST_CASE("skew-symmetry substitution") {
  const auto V = fixtures::algebra("virasoro.alg");
  CHECK(substitute_skew(V, 0, 0, VarId::slot(0)) == V.structure(0, 0));
  for (const auto& [x, y] : {std::pair{"L", "d*L"}, std::pair{"d^2*L", "(d + 1)*L"}}) {
    const auto a = elem(x, V), b = elem(y, V);
    const auto lhs = extend_bracket(V, a, b, VarId::slot(0));
    const auto rhs = -extend_bracket(V, b, a, VarId::slot(1)).substitute(VarId::slot(1), parse_poly("-d - x0"));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("axiom checks on the fixtures") {
  CHECK(check_algebra(fixtures::algebra("virasoro.alg")).passes() == oracle::kVirasoroAxioms);
  const auto R = check_algebra(fixtures::algebra("rank2.alg"));
  CHECK(R.passes() == oracle::kRank2Axioms);
  CHECK(R.regular);
  for (const char* f : {"abelian1.alg", "abelian2.alg", "abelian3.alg"}) {
    const auto rep = check_algebra(fixtures::algebra(f));
    CHECK(rep.passes());
    CHECK(rep.regular);
  }
}

TEST_CASE("broken bracket reports residuals") {
  const auto B = fixtures::algebra("broken.alg");
  const auto rep = check_algebra(B);
  REQUIRE_FALSE(rep.passes());
  REQUIRE(rep.skew.failure);
  CHECK(rep.skew.failure->value == elem(oracle::kBrokenSkewResidual, B));
  REQUIRE(rep.hom_jacobi.failure);
  CHECK(rep.hom_jacobi.failure->value == elem(oracle::kBrokenJacobiResidual, B));
  CHECK(hom_jacobi_residual(B, 0, 0, 0) == elem(oracle::kBrokenJacobiResidual, B));
}

TEST_CASE("non-constant determinant is not regular") {
  auto V = fixtures::algebra("virasoro.alg");
  PolyMatrix a(1, 1);
  a(0, 0) = dpoly();
  CHECK_FALSE(check_algebra(V.with_alpha(a)).regular);
}

TEST_CASE("modules") {
  const auto V = fixtures::algebra("virasoro.alg");
  const auto adV = adjoint_module(V);
  CHECK(adV.action(0, 0) == elem("(d + 2*x0)*L", V));
  CHECK(check_module(V, adV).passes());

  const auto R = fixtures::algebra("rank2.alg");
  CHECK(check_module(R, adjoint_module(R)).passes());
  const auto R1 = alpha_power_adjoint(R, 1);
  CHECK(R1.action(0, 1) == elem(oracle::kRank2Alpha1Action12, R));
  CHECK(check_module(R, R1).passes());
  CHECK(check_module(R, alpha_power_adjoint(R, -1)).passes());
  CHECK(alpha_power_adjoint(V, 0) == adV);

  const auto def = fixtures::load("rank2.alg");
  REQUIRE(def.modules.size() == 1);
  CHECK(check_module(R, def.modules[0]).passes());

  auto bad = fixtures::load("broken_module.alg");
  REQUIRE(bad.modules.size() == 1);
  CHECK_FALSE(check_module(bad.algebra, bad.modules[0]).passes());
}

TEST_CASE("beta = 0 on a nonabelian action breaks the module axioms") {
  const auto V = fixtures::algebra("virasoro.alg");
  const auto adV = adjoint_module(V);
  const ConformalModule M("zero_beta", adV.basis_names(), adV.table(), PolyMatrix(1, 1));
  const auto rep = check_module(V, M);
  CHECK_FALSE(rep.passes());
  CHECK_FALSE(rep.compatibility.holds);
}

TEST_CASE("alpha^-1 needs a regular algebra") {
  auto V = fixtures::algebra("virasoro.alg");
  PolyMatrix a(1, 1);
  a(0, 0) = dpoly();
  CHECK_THROWS_AS(alpha_power_adjoint(V.with_alpha(a), -1), NonInvertibleAlpha);
  const auto A1 = fixtures::algebra("abelian1.alg");
  const auto M = alpha_power_adjoint(A1, -1);
  CHECK(M.beta() == A1.alpha());
  CHECK(M.action(0, 0).is_zero());
}

TEST_CASE("semidirect sums") {
  const auto V = fixtures::algebra("virasoro.alg");
  const auto S = semidirect_sum(V, adjoint_module(V));
  CHECK(S.rank() == 2);
  CHECK(check_algebra(S).passes());
  const auto R = fixtures::algebra("rank2.alg");
  CHECK(check_algebra(semidirect_sum(R, alpha_power_adjoint(R, 1))).passes());
  const auto A3 = fixtures::load("abelian3.alg");
  const auto Z = semidirect_sum(A3.algebra, A3.modules.at(0));
  CHECK(Z.rank() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(Z.structure(i, j).is_zero());
}

TEST_CASE("n-products") {
  const auto V = fixtures::algebra("virasoro.alg");
  const auto L = V.basis_element(0);
  const auto p = n_products(V, L, L, 3);
  REQUIRE(p.size() == 4);
  CHECK(p[0] == elem("d*L", V));
  CHECK(p[1] == elem("2*L", V));
  CHECK(p[2].is_zero());
  CHECK(p[3].is_zero());
  const auto R = fixtures::algebra("rank2.alg");
  const auto q = n_products(R, R.basis_element(0), R.basis_element(1), 2);
  CHECK(q[0] == elem(oracle::kRank2NProduct0, R));
  CHECK(q[1].is_zero());
  const auto A = fixtures::algebra("abelian2.alg");
  for (const auto& x : n_products(A, A.basis_element(0), A.basis_element(1), 2)) CHECK(x.is_zero());
}

TEST_CASE("center") {
  CHECK(center(fixtures::algebra("virasoro.alg"), 3).size() == oracle::kVirasoroCenterBound3);
  CHECK(center(fixtures::algebra("rank2.alg"), 2).size() == oracle::kRank2CenterBound2);
  const auto A = HomConformalAlgebra::abelian("ab", {"a", "b"}, PolyMatrix::identity(2));
  CHECK(center(A, 1).size() == oracle::kAbelian2CenterBound1);
}
