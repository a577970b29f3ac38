#pragma once

// Hom-Nijenhuis operators and the deformations they generate.
//
// An endo cochain f is a 1-cochain with values in R_{-1}, stored as a
// ConformalMap with the antilinear rule: f_s(p(d) e_i) = p(-s) f_s(e_i).

#include <array>
#include <cstdint>
#include <vector>

#include "conflab/algebra.hpp"
#include "conflab/cochain.hpp"
#include "conflab/maps.hpp"

namespace conflab {

Cochain endo_to_cochain(const ConformalMap& f);
ConformalMap cochain_to_endo(const Cochain& gamma);

// [e_i _x0 e_j]_N = [f_x0(e_i) _x0 e_j] + [e_i _x0 f_{-d}(e_j)] - f_{-d}([e_i _x0 e_j]).
LambdaExpr nijenhuis_bracket(const HomConformalAlgebra& A, const ConformalMap& f, std::size_t i, std::size_t j);
StructureTable nijenhuis_table(const HomConformalAlgebra& A, const ConformalMap& f);

struct NijenhuisReport {
  IdentityCheck commutes_with_alpha;  // alpha(f_l(a)) = f_l(alpha(a))
  IdentityCheck condition;            // [f_l(a) _l f_m(b)] = f_{l+m}([a_l b]_N)
  IdentityCheck specialized;          // [f_l(a) _l f_{-d}(b)] = f_{-d}([a_l b]_N)
  bool passes() const { return commutes_with_alpha.holds && condition.holds; }
};

NijenhuisReport check_nijenhuis(const HomConformalAlgebra& A, const ConformalMap& f);
bool is_nijenhuis(const HomConformalAlgebra& A, const ConformalMap& f);

// psi = d_{-1} f as a 2-cochain with values in R_{-1}. Needs a regular algebra.
Cochain d_minus1_of_endo(const HomConformalAlgebra& A, const ConformalMap& f);

// Table of psi_{x0, -d-x0}(e_i, e_j).
StructureTable specialize(const Cochain& psi);

// Bracket table c + t * psi_{x0,-d-x0}.
HomConformalAlgebra deform(const HomConformalAlgebra& A, const Cochain& psi);

struct DeformationReport {
  bool psi_is_cochain = false;
  bool cocycle = false;
  IdentityCheck quadratic;              // Hom-Jacobi of the psi-bracket
  std::array<IdentityCheck, 3> jacobi;  // Hom-Jacobi of the deformed bracket at t^0, t^1, t^2
  IdentityCheck linear_condition;       // the linear condition on psi
  bool t1_matches_linear = false;       // t^1 residual equals the linear-condition defect
  bool t2_matches_quadratic = false;    // t^2 residual equals the quadratic defect
  bool jacobi_per_t() const { return jacobi[0].holds && jacobi[1].holds && jacobi[2].holds; }
  bool passes() const { return cocycle && quadratic.holds && jacobi_per_t(); }
};

DeformationReport check_deformation(const HomConformalAlgebra& A, const Cochain& psi);

struct TrivialityReport {
  // T_{t,-d}([a_l b]_t) - [(T_{t,l} a) _l T_{t,-d} b] at t^0, t^1, t^2.
  std::array<IdentityCheck, 3> per_t;
  bool passes() const { return per_t[0].holds && per_t[1].holds && per_t[2].holds; }
};

TrivialityReport check_trivial_deformation(const HomConformalAlgebra& A, const ConformalMap& f);
bool is_trivial_deformation(const HomConformalAlgebra& A, const ConformalMap& f);

// Endo cochains with entries of total degree <= degree_bound.
std::vector<ConformalMap> endo_cochain_basis(const HomConformalAlgebra& A, unsigned degree_bound);

// Nonzero Hom-Nijenhuis operators found among basis elements and seeded
// pairwise combinations b_k + c b_l of the endo-cochain basis; every returned
// map passes is_nijenhuis exactly.
std::vector<ConformalMap> nijenhuis_candidates(const HomConformalAlgebra& A, unsigned degree_bound,
                                               std::uint64_t seed);

}  // namespace conflab
