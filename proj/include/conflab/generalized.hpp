#pragma once

// Generalized derivations, quasiderivations, centroids, quasicentroids and
// central derivations; the decomposition GDer = QDer + QC; the extension
// R[t]/(t^3) and the embedding of quasiderivations into its derivations.
//
// Maps are conformal-linear with parameter mu; identities are checked on
// basis pairs with lambda a fresh slot.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conflab/algebra.hpp"
#include "conflab/maps.hpp"

namespace conflab {

struct GenDerTriple {
  ConformalMap D, D1, D2;  // D, D', D''
};

enum class SpaceKind { GDer, QDer, Der, Centroid, QuasiCentroid, CentralDer };
std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& s);

struct MembershipReport {
  IdentityCheck omega;     // every map commutes with alpha
  IdentityCheck identity;  // the defining identity on basis pairs
  bool passes() const { return omega.holds && identity.holds; }
};

// [D_mu(a) _{lam+mu} alpha^k b] + [alpha^k a _lam D'_mu(b)] - D''_mu([a_lam b])
std::vector<LambdaExpr> gder_residuals(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1,
                                       const ConformalMap& D2, int k);
// [D_mu(a) _{lam+mu} alpha^k b] - [alpha^k a _lam D_mu(b)]
std::vector<LambdaExpr> qc_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k);
// both equalities of the centroid identity, first all pairs of one, then the other
std::vector<LambdaExpr> centroid_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k);
// [D_mu(a) _{lam+mu} alpha^k b] and D_mu([a_lam b])
std::vector<LambdaExpr> zder_residuals(const HomConformalAlgebra& A, const ConformalMap& D, int k);

MembershipReport check_generalized_derivation(const HomConformalAlgebra& A, const GenDerTriple& T, int k);
MembershipReport check_quasiderivation(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1,
                                       int k);
MembershipReport check_centroid(const HomConformalAlgebra& A, const ConformalMap& D, int k);
MembershipReport check_quasicentroid(const HomConformalAlgebra& A, const ConformalMap& D, int k);
MembershipReport check_central_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k);

bool is_generalized_derivation(const HomConformalAlgebra& A, const GenDerTriple& T, int k);
bool is_quasiderivation(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1, int k);
bool is_centroid(const HomConformalAlgebra& A, const ConformalMap& D, int k);
bool is_quasicentroid(const HomConformalAlgebra& A, const ConformalMap& D, int k);
bool is_central_derivation(const HomConformalAlgebra& A, const ConformalMap& D, int k);

// Membership of D in the given space, using the supplied witnesses for GDer
// (D', D'') and QDer (D').
bool is_member(const HomConformalAlgebra& A, SpaceKind kind, const ConformalMap& D, const ConformalMap* D1,
               const ConformalMap* D2, int k);

struct SolvedSpace {
  SpaceKind kind = SpaceKind::Der;
  int k = 0;
  unsigned degree_bound = 0;
  std::vector<ConformalMap> maps;      // independent D-components
  std::vector<ConformalMap> witness1;  // D' per map (GDer, QDer)
  std::vector<ConformalMap> witness2;  // D'' per map (GDer)
  // Witness ambiguity: (W', W'') with (0, W', W'') a solution (GDer), or W'
  // with (0, W') a solution (QDer).
  std::vector<ConformalMap> freedom1;
  std::vector<ConformalMap> freedom2;
  std::size_t dimension() const { return maps.size(); }
};

// Slice of the space with map entries of total degree <= degree_bound in d
// and the parameter.
SolvedSpace solve_space(const HomConformalAlgebra& A, SpaceKind kind, int k, unsigned degree_bound);

struct Decomposition {
  ConformalMap quasi;          // (D + D') / 2
  ConformalMap quasi_witness;  // D''
  ConformalMap qc;             // (D - D') / 2
  bool quasi_ok = false;
  bool qc_ok = false;
  bool sums_to_d = false;
  bool passes() const { return quasi_ok && qc_ok && sums_to_d; }
};

Decomposition decompose_gder(const HomConformalAlgebra& A, const GenDerTriple& T, int k);

struct ClosureCheck {
  std::string name;
  std::size_t pairs = 0;
  IdentityCheck result;
};

struct ClosureReport {
  std::vector<ClosureCheck> checks;
  bool passes() const;
};

// Commutators of solved bases at levels k and s satisfy the target identity
// at level k + s; D o alpha stays in every space at level k + 1.
ClosureReport bracket_closure_checks(const HomConformalAlgebra& A, int k, int s, unsigned degree_bound);

struct CenterReport {
  std::size_t pairs = 0;
  std::size_t center_dimension = 0;
  bool values_central = true;
  bool all_zero = true;
  std::optional<Residual> failure;
  bool passes() const { return values_central && (center_dimension != 0 || all_zero); }
};

// [C_k , QC_s] takes values in the center; zero when the center slice is empty.
CenterReport centroid_qc_center_check(const HomConformalAlgebra& A, int k, int s, unsigned degree_bound);

struct QcBracketReport {
  std::size_t pairs = 0;
  bool closure_hypothesis = true;  // every commutator satisfies the QC identity
  bool all_zero = true;
  bool implication_holds() const { return !closure_hypothesis || all_zero; }
  bool converse_holds = true;
  bool passes() const { return implication_holds() && converse_holds; }
};

QcBracketReport qc_bracket_vanishing(const HomConformalAlgebra& A, int k, int s, unsigned degree_bound);

// Rank 2r on e_i t, e_i t^2 with [(x t^i)_l (y t^j)] = [x_l y] t^(i+j), t^3 = 0.
HomConformalAlgebra breve_extension(const HomConformalAlgebra& A);

struct Complement {
  unsigned degree_bound = 0;
  std::vector<LambdaExpr> slice;       // d^a e_i, a <= bound
  std::vector<LambdaExpr> derived;     // basis of the [R,R] slice
  std::vector<LambdaExpr> complement;  // basis of U
  std::vector<LambdaExpr> projection;  // [R,R]-component of each e_i
};

Complement compute_complement(const HomConformalAlgebra& A, unsigned degree_bound);

// e_i t -> D(e_i) t, e_i t^2 -> D'(p(e_i)) t^2 with p the projection onto [R,R].
ConformalMap phi_embedding(const HomConformalAlgebra& A, const ConformalMap& D, const ConformalMap& D1,
                           const Complement& comp, int k);

struct PhiReport {
  std::size_t qder_dimension = 0;
  std::size_t image_rank = 0;
  bool all_derivations = true;
  bool witness_independent = true;
  bool full_rank() const { return image_rank == qder_dimension; }
  bool passes() const { return all_derivations && witness_independent && full_rank(); }
};

PhiReport check_phi(const HomConformalAlgebra& A, int k, unsigned degree_bound);

}  // namespace conflab
