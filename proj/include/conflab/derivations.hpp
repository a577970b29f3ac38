#pragma once

// alpha^k-derivations, inner derivations, solvers and the derivation
// extension R + C[d]E.

#include <vector>

#include "conflab/algebra.hpp"
#include "conflab/maps.hpp"

namespace conflab {

struct DerivationReport {
  IdentityCheck commutes_with_alpha;
  IdentityCheck identity;
  bool passes() const { return commutes_with_alpha.holds && identity.holds; }
};

// D_mu([a_lam b]) - [D_mu(a) _{lam+mu} alpha^k(b)] - [alpha^k(a) _lam D_mu(b)]
// on every basis pair (a, b), with mu the map parameter and lam a fresh slot.
std::vector<LambdaExpr> derivation_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k);

DerivationReport check_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k);
bool is_alpha_k_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k);

// D_l(b) = [a _l alpha^k(b)]; requires alpha(a) = a. The result is tagged
// with level k + 1.
ConformalMap inner_derivation(const HomConformalAlgebra& A, const LambdaExpr& a, int k);

// Q-basis of the alpha^k-derivations with entries of total degree
// <= degree_bound in d and the parameter.
std::vector<ConformalMap> solve_derivations(const HomConformalAlgebra& A, int k, unsigned degree_bound);

// R + C[d]E with [E_l e_i] = D_l(e_i), [e_i _l E] = -D_{-l-d}(e_i),
// [E_l E] = 0 and alpha extended by E -> E.
HomConformalAlgebra derivation_extension(const HomConformalAlgebra& A, const ConformalMap& D);

// [alpha'(D)_x0 [E_x1 F]] - [alpha'(E)_x1 [D_x0 F]] - [[D_x0 E]_{x0+x1} alpha'(F)]
// as a map in x2, with alpha'(X) = X o alpha.
ConformalMap commutator_jacobi_residual(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& E,
                                        const ConformalMap& F);

// [D_l E] + [E_{-d-l} D] with d acting on maps by (d X)_s = -s X_s.
ConformalMap commutator_skew_residual(const ConformalMap& D, const ConformalMap& E);

}  // namespace conflab
