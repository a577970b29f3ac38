#pragma once

// Exact sparse linear algebra over the rationals.
//
// Rows are reduced fraction-free: every stored row has integer entries with
// content 1 and a positive pivot, and the row set is kept in reduced echelon
// form. Pivots are always chosen at the smallest column index, so results are
// deterministic for a fixed column ordering.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <vector>

#include "conflab/poly.hpp"

namespace conflab {

using SparseVec = std::map<std::size_t, Rational>;

class EchelonForm {
 public:
  // Adds v to the row space. Returns true if v was independent of the rows
  // already present.
  bool insert(const SparseVec& v);
  // Remainder of v after reduction by the current rows (zero iff v lies in
  // the span), scaled to primitive integer form.
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  std::size_t rank() const { return rows_.size(); }
  // Pivot column -> row.
  const std::map<std::size_t, std::map<std::size_t, mpz_class>>& rows() const { return rows_; }
  std::vector<std::size_t> pivots() const;

  // Basis of {x : row . x = 0 for all rows} over columns [0, num_columns).
  std::vector<SparseVec> kernel(std::size_t num_columns) const;

 private:
  std::map<std::size_t, std::map<std::size_t, mpz_class>> rows_;
};

// Null space of the map sending unknown j to columns[j]. The returned vectors
// are indexed by unknown.
std::vector<SparseVec> nullspace(const std::vector<SparseVec>& columns);

std::size_t rank_of(const std::vector<SparseVec>& vectors);
bool in_span(const std::vector<SparseVec>& basis, const SparseVec& v);
// Maximal independent subset, in input order.
std::vector<std::size_t> independent_subset(const std::vector<SparseVec>& vectors);

SparseVec axpy(const SparseVec& y, const Rational& a, const SparseVec& x);

// Assigns dense row indices to arbitrary ordered keys.
template <class Key>
class KeyIndex {
 public:
  std::size_t operator()(const Key& k) {
    auto [it, inserted] = ids_.try_emplace(k, ids_.size());
    return it->second;
  }
  std::size_t size() const { return ids_.size(); }

 private:
  std::map<Key, std::size_t> ids_;
};

}  // namespace conflab
