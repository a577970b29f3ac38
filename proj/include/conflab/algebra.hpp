#pragma once

// Finite-rank Hom-Lie conformal algebras and their modules.
//
// An algebra of rank r is the free C[d]-module on e_1..e_r together with a
// structure table c[i][j] = [e_i _x0 e_j] (an element of R[x0]) and a twist
// alpha given as an r x r matrix over Q[d]. Brackets of arbitrary elements
// follow from conformal sesquilinearity:
//
//   [p(d) e_i _s q(d) e_j] = p(-s) q(d + s) c[i][j](d, s)
//
// where any slot variables already present in p and q are carried along as
// scalars. Modules are stored the same way with an action table and beta.

#include <optional>
#include <string>
#include <vector>

#include "conflab/element.hpp"
#include "conflab/poly.hpp"

namespace conflab {

using StructureTable = std::vector<std::vector<LambdaExpr>>;

// First failing index tuple and its nonzero residual.
struct Residual {
  std::vector<std::size_t> indices;
  LambdaExpr value;
};

struct IdentityCheck {
  bool holds = true;
  std::optional<Residual> failure;

  // Records value as the residual at idx; only the first failure is kept.
  void record(std::vector<std::size_t> idx, const LambdaExpr& value) {
    if (value.is_zero() || !holds) {
      if (!value.is_zero()) holds = false;
      return;
    }
    holds = false;
    failure = Residual{std::move(idx), value};
  }
};

class HomConformalAlgebra {
 public:
  HomConformalAlgebra() = default;
  HomConformalAlgebra(std::string name, std::vector<std::string> basis_names, StructureTable bracket,
                      PolyMatrix alpha);
  // All brackets zero.
  static HomConformalAlgebra abelian(std::string name, std::vector<std::string> basis_names, PolyMatrix alpha);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return basis_names_.size(); }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const StructureTable& table() const { return bracket_; }
  const LambdaExpr& structure(std::size_t i, std::size_t j) const { return bracket_[i][j]; }
  const PolyMatrix& alpha() const { return alpha_; }

  LambdaExpr basis_element(std::size_t i, const MultiPoly& coeff = MultiPoly(1L)) const {
    return LambdaExpr::basis(rank(), i, coeff);
  }
  // alpha^power(x); negative powers require a unimodular alpha.
  LambdaExpr alpha_apply(const LambdaExpr& x, int power = 1) const;

  HomConformalAlgebra with_structure(std::size_t i, std::size_t j, LambdaExpr value) const;
  HomConformalAlgebra with_name(std::string name) const;
  HomConformalAlgebra with_alpha(PolyMatrix alpha) const;

  bool operator==(const HomConformalAlgebra&) const = default;

 private:
  std::string name_;
  std::vector<std::string> basis_names_;
  StructureTable bracket_;
  PolyMatrix alpha_;
};

class ConformalModule {
 public:
  ConformalModule() = default;
  // action[i][j] = e_i _x0 f_j, an element of M[x0].
  ConformalModule(std::string name, std::vector<std::string> basis_names, StructureTable action, PolyMatrix beta);

  const std::string& name() const { return name_; }
  std::size_t rank() const { return basis_names_.size(); }
  std::size_t algebra_rank() const { return action_.size(); }
  const std::vector<std::string>& basis_names() const { return basis_names_; }
  const StructureTable& table() const { return action_; }
  const LambdaExpr& action(std::size_t i, std::size_t j) const { return action_[i][j]; }
  const PolyMatrix& beta() const { return beta_; }
  LambdaExpr beta_apply(const LambdaExpr& v, int power = 1) const;

  bool operator==(const ConformalModule&) const = default;

 private:
  std::string name_;
  std::vector<std::string> basis_names_;
  StructureTable action_;
  PolyMatrix beta_;
};

// Sesquilinear extension of a structure table: sum over i, j of
// x_i(d -> -s) * y_j(d -> d + s) * table[i][j](x0 -> s).
LambdaExpr sesquilinear_extend(const StructureTable& table, std::size_t out_rank, const LambdaExpr& x,
                               const LambdaExpr& y, const MultiPoly& slot);

LambdaExpr extend_bracket(const HomConformalAlgebra& A, const LambdaExpr& x, const LambdaExpr& y,
                          const MultiPoly& slot);
inline LambdaExpr extend_bracket(const HomConformalAlgebra& A, const LambdaExpr& x, const LambdaExpr& y,
                                 VarId slot) {
  return extend_bracket(A, x, y, MultiPoly::var(slot));
}

// a _s v for a in R[...] and v in M[...].
LambdaExpr module_act(const ConformalModule& M, const LambdaExpr& a, const LambdaExpr& v, const MultiPoly& slot);

// -[e_j _mu e_i] with mu -> -d - lambda; equals c[i][j] iff skew-symmetry
// holds for the pair.
LambdaExpr substitute_skew(const HomConformalAlgebra& A, std::size_t i, std::size_t j, VarId lambda);

// LHS - RHS of the Hom-Jacobi identity on (e_i, e_j, e_k) in slots x0, x1.
LambdaExpr hom_jacobi_residual(const HomConformalAlgebra& A, std::size_t i, std::size_t j, std::size_t k);

struct AlgebraReport {
  IdentityCheck skew;
  IdentityCheck hom_jacobi;
  IdentityCheck multiplicative;
  bool regular = false;
  MultiPoly alpha_determinant;

  // Skew-symmetry, Hom-Jacobi and multiplicativity; regularity is reported
  // separately.
  bool passes() const { return skew.holds && hom_jacobi.holds && multiplicative.holds; }
};

AlgebraReport check_algebra(const HomConformalAlgebra& A);

struct ModuleReport {
  IdentityCheck compatibility;   // alpha(a)_l (b_m v) - alpha(b)_m (a_l v) = [a_l b]_{l+m} beta(v)
  IdentityCheck sesquilinear;    // sesquilinearity of the action
  IdentityCheck twist;           // beta(a_l v) = alpha(a)_l beta(v), beta commutes with d
  bool passes() const { return compatibility.holds && sesquilinear.holds && twist.holds; }
};

ModuleReport check_module(const HomConformalAlgebra& A, const ConformalModule& M);

ConformalModule adjoint_module(const HomConformalAlgebra& A);
// a _l b = [alpha^s(a) _l b] with beta = alpha.
ConformalModule alpha_power_adjoint(const HomConformalAlgebra& A, int s);
// R + M with [(a+u)_l (b+v)] = [a_l b] + a_l v - b_{-d-l} u and alpha + beta.
HomConformalAlgebra semidirect_sum(const HomConformalAlgebra& A, const ConformalModule& M);

// Coefficients of lambda^n / n! of [x _lambda y], n = 0..N.
std::vector<LambdaExpr> n_products(const HomConformalAlgebra& A, const LambdaExpr& x, const LambdaExpr& y,
                                   unsigned N);

// Q-basis of {a : deg_d(a) <= degree_bound, [a _l e_j] = 0 for all j}.
std::vector<LambdaExpr> center(const HomConformalAlgebra& A, unsigned degree_bound);

// Q-basis of the slice of R with d-degree <= degree_bound: d^a e_i, ordered
// by basis index, then by degree.
std::vector<LambdaExpr> element_slice_basis(std::size_t rank, unsigned degree_bound);

}  // namespace conflab
