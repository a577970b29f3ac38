#include "conflab/maps.hpp"

#include <algorithm>

#include "conflab/errors.hpp"
#include "conflab/system.hpp"

namespace conflab {

std::string to_string(ExtensionRule rule) {
  return rule == ExtensionRule::ConformalLinear ? "linear" : "antilinear";
}

ConformalMap::ConformalMap(std::vector<LambdaExpr> images, ExtensionRule rule, int level, VarId slot)
    : images_(std::move(images)), rule_(rule), level_(level), slot_(slot) {
  for (const auto& im : images_)
    if (im.rank() != images_.size()) throw RankMismatch("conformal map image has wrong rank");
}

ConformalMap ConformalMap::zero(std::size_t rank, ExtensionRule rule, int level) {
  return ConformalMap(std::vector<LambdaExpr>(rank, LambdaExpr(rank)), rule, level);
}

ConformalMap ConformalMap::identity(std::size_t rank, ExtensionRule rule, int level) {
  std::vector<LambdaExpr> im;
  for (std::size_t i = 0; i < rank; ++i) im.push_back(LambdaExpr::basis(rank, i));
  return ConformalMap(std::move(im), rule, level);
}

ConformalMap ConformalMap::with_level(int level) const {
  ConformalMap m = *this;
  m.level_ = level;
  return m;
}

ConformalMap ConformalMap::with_rule(ExtensionRule rule) const {
  ConformalMap m = *this;
  m.rule_ = rule;
  return m;
}

ConformalMap ConformalMap::with_slot(VarId v) const {
  if (v == slot_) return *this;
  for (const auto& im : images_)
    if (im.contains(v)) throw PreconditionFailed("renaming a map parameter onto a variable already in use");
  ConformalMap m = *this;
  for (auto& im : m.images_) im = im.substitute(slot_, MultiPoly::var(v));
  m.slot_ = v;
  return m;
}

int ConformalMap::max_slot() const {
  int s = static_cast<int>(slot_.slot_index());
  for (const auto& im : images_) s = std::max(s, im.max_slot());
  return s;
}

bool ConformalMap::is_zero() const {
  return std::all_of(images_.begin(), images_.end(), [](const LambdaExpr& e) { return e.is_zero(); });
}

ConformalMap& ConformalMap::operator+=(const ConformalMap& o) {
  if (rank() != o.rank()) throw RankMismatch("adding maps of different rank");
  const ConformalMap rhs = o.with_slot(slot_);
  for (std::size_t i = 0; i < rank(); ++i) images_[i] += rhs.images_[i];
  return *this;
}

ConformalMap& ConformalMap::operator-=(const ConformalMap& o) {
  return *this += -o;
}

ConformalMap& ConformalMap::operator*=(const MultiPoly& p) {
  for (auto& im : images_) im *= p;
  return *this;
}

ConformalMap ConformalMap::operator-() const {
  ConformalMap m = *this;
  for (auto& im : m.images_) im = -im;
  return m;
}

LambdaExpr apply(const ConformalMap& D, const LambdaExpr& x, const MultiPoly& slot) {
  if (x.rank() != D.rank()) throw RankMismatch("map applied to an element of wrong rank");
  const MultiPoly shift = D.rule() == ExtensionRule::ConformalLinear ? dpoly() + slot : -slot;
  const bool same_slot = slot == MultiPoly::var(D.slot());
  LambdaExpr out(D.rank());
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (x[i].is_zero() || D.image(i).is_zero()) continue;
    const MultiPoly c = x[i].substitute(kPartial, shift);
    out += c * (same_slot ? D.image(i) : D.image(i).substitute(D.slot(), slot));
  }
  return out;
}

LambdaExpr apply_at_minus_d(const ConformalMap& f, const LambdaExpr& x) {
  if (x.rank() != f.rank()) throw RankMismatch("map applied to an element of wrong rank");
  const MultiPoly minus_d = -dpoly();
  LambdaExpr out(f.rank());
  for (std::size_t i = 0; i < x.rank(); ++i) {
    if (x[i].is_zero() || f.image(i).is_zero()) continue;
    // f_s(p(d) e_i) = p(-s) f_s(e_i), then s -> -d.
    out += x[i] * f.image(i).substitute(f.slot(), minus_d);
  }
  return out;
}

ConformalMap partial_of(const ConformalMap& D) {
  ConformalMap m = D;
  m *= -MultiPoly::var(D.slot());
  return m;
}

ConformalMap compose_alpha(const HomConformalAlgebra& A, const ConformalMap& D) {
  std::vector<LambdaExpr> im;
  for (std::size_t i = 0; i < D.rank(); ++i) im.push_back(apply(D, A.alpha_apply(A.basis_element(i)), D.slot()));
  return ConformalMap(std::move(im), D.rule(), D.level() + 1, D.slot());
}

ConformalMap commutator_at(const ConformalMap& D, const ConformalMap& E, const MultiPoly& lam, VarId nu) {
  if (D.rank() != E.rank()) throw RankMismatch("commutator of maps of different rank");
  const MultiPoly shifted = MultiPoly::var(nu) - lam;
  std::vector<LambdaExpr> im;
  for (std::size_t a = 0; a < D.rank(); ++a) {
    const LambdaExpr ea = LambdaExpr::basis(D.rank(), a);
    LambdaExpr v = apply(D, apply(E, ea, shifted), lam);
    v -= apply(E, apply(D, ea, lam), shifted);
    im.push_back(std::move(v));
  }
  return ConformalMap(std::move(im), ExtensionRule::ConformalLinear, D.level() + E.level(), nu);
}

ConformalMap commutator(const ConformalMap& D, const ConformalMap& E) {
  return commutator_at(D.with_slot(VarId::slot(0)), E.with_slot(VarId::slot(0)), xpoly(0), VarId::slot(1));
}

unsigned fresh_slot(const std::vector<const ConformalMap*>& maps) {
  int s = -1;
  for (const auto* m : maps) s = std::max(s, m->max_slot());
  return static_cast<unsigned>(s + 1);
}

std::vector<LambdaExpr> alpha_commutation_residuals(const HomConformalAlgebra& A, const ConformalMap& D) {
  std::vector<LambdaExpr> out;
  for (std::size_t i = 0; i < D.rank(); ++i)
    out.push_back(A.alpha_apply(D.image(i)) - apply(D, A.alpha_apply(A.basis_element(i)), D.slot()));
  return out;
}

MapCoordinates::MapCoordinates(std::size_t rank, unsigned degree_bound)
    : rank_(rank), monos_(monomials_up_to({kPartial, VarId::slot(0)}, degree_bound)) {}

ConformalMap MapCoordinates::unit(std::size_t u, int level) const {
  ConformalMap m = ConformalMap::zero(rank_, ExtensionRule::ConformalLinear, level);
  const std::size_t per_basis = rank_ * monos_.size();
  const std::size_t i = u / per_basis;
  const std::size_t c = (u % per_basis) / monos_.size();
  m.image(i)[c] = MultiPoly::term(Rational(1), monos_[u % monos_.size()]);
  return m;
}

ConformalMap MapCoordinates::combine(const SparseVec& coords, std::size_t offset, int level) const {
  ConformalMap m = ConformalMap::zero(rank_, ExtensionRule::ConformalLinear, level);
  const std::size_t per_basis = rank_ * monos_.size();
  for (const auto& [key, q] : coords) {
    if (key < offset || key >= offset + size()) continue;
    const std::size_t u = key - offset;
    m.image(u / per_basis)[(u % per_basis) / monos_.size()] += MultiPoly::term(q, monos_[u % monos_.size()]);
  }
  return m;
}

namespace {

std::vector<SparseVec> flatten_maps(const std::vector<ConformalMap>& maps, const ConformalMap* extra,
                                    SparseVec* extra_out) {
  Flattener f;
  std::vector<SparseVec> out;
  const VarId common = !maps.empty() ? maps.front().slot() : extra ? extra->slot() : VarId::slot(0);
  for (const auto& m : maps) out.push_back(f.flatten(m.with_slot(common).images()));
  if (extra) *extra_out = f.flatten(extra->with_slot(common).images());
  return out;
}

}  // namespace

bool map_in_span(const std::vector<ConformalMap>& maps, const ConformalMap& target) {
  SparseVec t;
  const auto vecs = flatten_maps(maps, &target, &t);
  return in_span(vecs, t);
}

std::size_t map_rank(const std::vector<ConformalMap>& maps) { return rank_of(flatten_maps(maps, nullptr, nullptr)); }

}  // namespace conflab
