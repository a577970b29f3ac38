#pragma once

// Conformal linear maps R -> R[x] stored by their values on the basis.
//
// images[i] is the value on e_i as an element of R[slot, ...]; the slot
// variable is the map's own parameter, any other slot variable in the images
// is a passive parameter (e.g. the outer lambda of a commutator). The
// extension rule fixes how d in an argument is handled:
//   ConformalLinear:    D_s(p(d) e_i) = p(d + s) D_s(e_i)
//   CochainAntilinear:  f_s(p(d) e_i) = p(-s) f_s(e_i)

#include <string>
#include <vector>

#include "conflab/algebra.hpp"
#include "conflab/element.hpp"
#include "conflab/linalg.hpp"

namespace conflab {

enum class ExtensionRule { CochainAntilinear, ConformalLinear };

std::string to_string(ExtensionRule rule);

class ConformalMap {
 public:
  ConformalMap() = default;
  explicit ConformalMap(std::vector<LambdaExpr> images, ExtensionRule rule = ExtensionRule::ConformalLinear,
                        int level = 0, VarId slot = VarId::slot(0));
  static ConformalMap zero(std::size_t rank, ExtensionRule rule = ExtensionRule::ConformalLinear, int level = 0);
  static ConformalMap identity(std::size_t rank, ExtensionRule rule = ExtensionRule::ConformalLinear, int level = 0);

  std::size_t rank() const { return images_.size(); }
  const std::vector<LambdaExpr>& images() const { return images_; }
  const LambdaExpr& image(std::size_t i) const { return images_[i]; }
  LambdaExpr& image(std::size_t i) { return images_[i]; }
  VarId slot() const { return slot_; }
  ExtensionRule rule() const { return rule_; }
  int level() const { return level_; }

  ConformalMap with_level(int level) const;
  ConformalMap with_rule(ExtensionRule rule) const;
  // Same map with its parameter renamed to v (v must not occur in the images).
  ConformalMap with_slot(VarId v) const;
  // Largest slot index used in the images or as the parameter.
  int max_slot() const;

  bool is_zero() const;
  ConformalMap& operator+=(const ConformalMap& o);
  ConformalMap& operator-=(const ConformalMap& o);
  ConformalMap& operator*=(const MultiPoly& p);
  ConformalMap operator-() const;
  friend ConformalMap operator+(ConformalMap a, const ConformalMap& b) { return a += b; }
  friend ConformalMap operator-(ConformalMap a, const ConformalMap& b) { return a -= b; }
  bool operator==(const ConformalMap& o) const { return images_ == o.images_ && slot_ == o.slot_; }

 private:
  std::vector<LambdaExpr> images_;
  ExtensionRule rule_ = ExtensionRule::ConformalLinear;
  int level_ = 0;
  VarId slot_ = VarId::slot(0);
};

// D_slot(x) under the map's extension rule.
LambdaExpr apply(const ConformalMap& D, const LambdaExpr& x, const MultiPoly& slot);
inline LambdaExpr apply(const ConformalMap& D, const LambdaExpr& x, VarId slot) {
  return apply(D, x, MultiPoly::var(slot));
}

// f_{-d}(x): f evaluated with its parameter replaced by -d acting on the
// result. Only meaningful for the antilinear rule.
LambdaExpr apply_at_minus_d(const ConformalMap& f, const LambdaExpr& x);

// (d D)_s = -s D_s.
ConformalMap partial_of(const ConformalMap& D);
// D o alpha, one level up.
ConformalMap compose_alpha(const HomConformalAlgebra& A, const ConformalMap& D);

// [D_lam E]_nu(a) = D_lam(E_{nu - lam} a) - E_{nu - lam}(D_lam a), returned as
// a map with parameter nu. Passive parameters of D and E must not clash with
// the variables of lam and nu.
ConformalMap commutator_at(const ConformalMap& D, const ConformalMap& E, const MultiPoly& lam, VarId nu);
// [D_x0 E]_x1 for maps without passive parameters.
ConformalMap commutator(const ConformalMap& D, const ConformalMap& E);

// First slot index not used by any of the maps.
unsigned fresh_slot(const std::vector<const ConformalMap*>& maps);

// alpha o D - D o alpha on every basis element, in the map's parameter.
std::vector<LambdaExpr> alpha_commutation_residuals(const HomConformalAlgebra& A, const ConformalMap& D);

// Linear coordinates for maps whose entries are polynomials in d and x0 of
// total degree <= bound: unknown u is (basis i, component c, monomial m).
class MapCoordinates {
 public:
  MapCoordinates(std::size_t rank, unsigned degree_bound);
  std::size_t size() const { return rank_ * rank_ * monos_.size(); }
  ConformalMap unit(std::size_t u, int level = 0) const;
  // sum_u coords[u - offset] * unit(u) over offset <= u < offset + size().
  ConformalMap combine(const SparseVec& coords, std::size_t offset = 0, int level = 0) const;

 private:
  std::size_t rank_;
  std::vector<Monomial> monos_;
};

// Span-membership of target in the Q-span of maps, by flattening images.
bool map_in_span(const std::vector<ConformalMap>& maps, const ConformalMap& target);
std::size_t map_rank(const std::vector<ConformalMap>& maps);

}  // namespace conflab
