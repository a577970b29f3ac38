#pragma once

// Assembly of homogeneous linear systems whose unknowns are coordinates of
// polynomial objects and whose equations are "every coefficient of every
// residual vanishes".

#include <vector>

#include "conflab/element.hpp"
#include "conflab/linalg.hpp"
#include "conflab/parallel.hpp"

namespace conflab {

struct FlatKey {
  std::size_t part = 0;
  std::size_t comp = 0;
  Monomial mono;

  bool operator<(const FlatKey& o) const {
    if (part != o.part) return part < o.part;
    if (comp != o.comp) return comp < o.comp;
    return MonomialLess{}(mono, o.mono);
  }
};

class Flattener {
 public:
  SparseVec flatten(const std::vector<LambdaExpr>& parts) {
    SparseVec v;
    for (std::size_t p = 0; p < parts.size(); ++p)
      for (std::size_t c = 0; c < parts[p].rank(); ++c)
        for (const auto& [m, q] : parts[p][c].terms()) v.emplace(index_(FlatKey{p, c, m}), q);
    return v;
  }
  std::size_t size() const { return index_.size(); }

 private:
  KeyIndex<FlatKey> index_;
};

// Null space of the linear operator sending unknown j to image_of(j), a list
// of residual vectors. Images are computed in parallel.
template <class ImageOf>
std::vector<SparseVec> solve_homogeneous(std::size_t num_unknowns, ImageOf&& image_of) {
  std::vector<std::vector<LambdaExpr>> images(num_unknowns);
  parallel_for(num_unknowns, [&](std::size_t j) { images[j] = image_of(j); });
  Flattener flat;
  std::vector<SparseVec> columns;
  columns.reserve(num_unknowns);
  for (const auto& img : images) columns.push_back(flat.flatten(img));
  return nullspace(columns);
}

// sum_j coords[j] * objects[j] for any type with += and scalar *.
template <class T>
T combine(const std::vector<T>& objects, const SparseVec& coords, T zero) {
  for (const auto& [j, q] : coords) {
    T term = objects[j];
    term *= MultiPoly(q);
    zero += term;
  }
  return zero;
}

}  // namespace conflab
