#pragma once

// n-cochains of a Hom-Lie conformal algebra with values in a module, the
// differential d (and its alpha^s-adjoint variant d_s), the d-action on
// cochains and degree-truncated cohomology.
//
// A cochain is stored by its values on basis tuples: entry (i_1..i_n) holds
// gamma_{x0..x_{n-1}}(e_{i_1}, ..., e_{i_n}) as an element of M[x0..x_{n-1}].
// Values on other arguments follow from conformal antilinearity.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "conflab/algebra.hpp"
#include "conflab/element.hpp"

namespace conflab {

class Cochain {
 public:
  Cochain() = default;
  Cochain(std::size_t arity, std::size_t algebra_rank, std::size_t module_rank);
  // A 0-cochain is an element of the module.
  static Cochain from_element(std::size_t algebra_rank, const LambdaExpr& v);

  std::size_t arity() const { return arity_; }
  std::size_t algebra_rank() const { return algebra_rank_; }
  std::size_t module_rank() const { return module_rank_; }
  std::size_t num_tuples() const { return entries_.size(); }

  LambdaExpr& at(const std::vector<std::size_t>& tuple) { return entries_[index_of(tuple)]; }
  const LambdaExpr& at(const std::vector<std::size_t>& tuple) const { return entries_[index_of(tuple)]; }
  LambdaExpr& entry(std::size_t flat) { return entries_[flat]; }
  const LambdaExpr& entry(std::size_t flat) const { return entries_[flat]; }
  const std::vector<LambdaExpr>& entries() const { return entries_; }

  std::size_t index_of(const std::vector<std::size_t>& tuple) const;
  std::vector<std::size_t> tuple_of(std::size_t flat) const;

  bool is_zero() const;
  int total_degree() const;

  Cochain& operator+=(const Cochain& o);
  Cochain& operator-=(const Cochain& o);
  Cochain& operator*=(const MultiPoly& p);
  Cochain operator-() const;
  friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
  friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
  bool operator==(const Cochain& o) const = default;

 private:
  std::size_t arity_ = 0;
  std::size_t algebra_rank_ = 0;
  std::size_t module_rank_ = 0;
  std::vector<LambdaExpr> entries_;
};

// gamma_{slots}(args): every argument's d is replaced by -slot_q, entry slots
// x_q by slot_q. Other slot variables in args are carried as scalars.
LambdaExpr evaluate(const Cochain& gamma, const std::vector<LambdaExpr>& args, const std::vector<MultiPoly>& slots);
// Slots x0..x_{n-1}.
LambdaExpr evaluate(const Cochain& gamma, const std::vector<LambdaExpr>& args);

struct CochainReport {
  IdentityCheck skew;
  IdentityCheck commutativity;
  bool passes() const { return skew.holds && commutativity.holds; }
};

CochainReport check_cochain(const HomConformalAlgebra& A, const ConformalModule& M, const Cochain& gamma);

Cochain differential(const HomConformalAlgebra& A, const ConformalModule& M, const Cochain& gamma);
// Differential with coefficients in R_s, using [alpha^{n+s}(a_i) _l ...].
Cochain differential_s(const HomConformalAlgebra& A, const Cochain& gamma, int s);
// (d_M + x0 + ... + x_{n-1}) gamma.
Cochain partial_action(const Cochain& gamma);

// Q-basis of the cochains whose entries have total degree <= degree_bound in
// d and the slots.
std::vector<Cochain> cochain_space_basis(const HomConformalAlgebra& A, const ConformalModule& M, std::size_t n,
                                         unsigned degree_bound);

// Integer combination of basis elements with coordinates in [-3, 3].
Cochain random_cochain(const std::vector<Cochain>& basis, std::mt19937_64& rng, std::size_t arity,
                       std::size_t algebra_rank, std::size_t module_rank);

struct CohomologyDims {
  std::size_t n = 0;
  unsigned degree_bound = 0;
  bool reduced = false;
  std::size_t dim_cochains = 0;
  std::size_t dim_kernel = 0;
  std::size_t dim_image_from_below = 0;
  std::size_t dim_h = 0;
  std::string truncation;
};

CohomologyDims cohomology_dims(const HomConformalAlgebra& A, const ConformalModule& M, std::size_t n,
                               unsigned degree_bound, bool reduced);

}  // namespace conflab
