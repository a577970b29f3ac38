#include "conflab/linalg.hpp"

namespace conflab {

namespace {

using IntRow = std::map<std::size_t, mpz_class>;

IntRow to_primitive(const SparseVec& v) {
  mpz_class lcm = 1;
  for (const auto& [i, q] : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  IntRow row;
  for (const auto& [i, q] : v) {
    if (q == 0) continue;
    mpz_class num = q.get_num() * (lcm / q.get_den());
    row.emplace(i, std::move(num));
  }
  return row;
}

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  mpz_class g = 0;
  for (const auto& [i, c] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (row.begin()->second < 0) g = -g;
  if (g != 1)
    for (auto& [i, c] : row) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

// row <- a*row - b*other
void combine(IntRow& row, const mpz_class& a, const mpz_class& b, const IntRow& other) {
  if (a != 1)
    for (auto& [i, c] : row) c *= a;
  for (const auto& [i, c] : other) {
    auto [it, inserted] = row.try_emplace(i, 0);
    it->second -= b * c;
    if (it->second == 0) row.erase(it);
  }
}

// Clears the entry of row at column col using pivot row prow (pivot at col).
void eliminate(IntRow& row, std::size_t col, const IntRow& prow) {
  auto it = row.find(col);
  if (it == row.end()) return;
  const mpz_class& p = prow.at(col);
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), it->second.get_mpz_t());
  mpz_class a = p / g;
  mpz_class b = it->second / g;
  combine(row, a, b, prow);
}

}  // namespace

SparseVec EchelonForm::reduce(const SparseVec& v) const {
  IntRow row = to_primitive(v);
  for (const auto& [col, prow] : rows_) eliminate(row, col, prow);
  make_primitive(row);
  SparseVec out;
  for (auto& [i, c] : row) out.emplace(i, Rational(c));
  return out;
}

bool EchelonForm::insert(const SparseVec& v) {
  IntRow row = to_primitive(v);
  for (const auto& [col, prow] : rows_) eliminate(row, col, prow);
  if (row.empty()) return false;
  make_primitive(row);
  const std::size_t pivot = row.begin()->first;
  for (auto& [col, prow] : rows_) {
    eliminate(prow, pivot, row);
    make_primitive(prow);
  }
  rows_.emplace(pivot, std::move(row));
  return true;
}

std::vector<std::size_t> EchelonForm::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(rows_.size());
  for (const auto& [col, row] : rows_) out.push_back(col);
  return out;
}

std::vector<SparseVec> EchelonForm::kernel(std::size_t num_columns) const {
  std::vector<SparseVec> basis;
  for (std::size_t f = 0; f < num_columns; ++f) {
    if (rows_.count(f)) continue;
    SparseVec x;
    x.emplace(f, Rational(1));
    for (const auto& [col, row] : rows_) {
      auto it = row.find(f);
      if (it == row.end()) continue;
      Rational val(-it->second, row.at(col));
      val.canonicalize();
      x.emplace(col, val);
    }
    basis.push_back(std::move(x));
  }
  return basis;
}

std::vector<SparseVec> nullspace(const std::vector<SparseVec>& columns) {
  // transpose: row index -> (unknown -> value)
  std::map<std::size_t, SparseVec> rows;
  for (std::size_t j = 0; j < columns.size(); ++j)
    for (const auto& [i, q] : columns[j])
      if (q != 0) rows[i].emplace(j, q);
  EchelonForm ef;
  for (const auto& [i, r] : rows) ef.insert(r);
  return ef.kernel(columns.size());
}

std::size_t rank_of(const std::vector<SparseVec>& vectors) {
  EchelonForm ef;
  for (const auto& v : vectors) ef.insert(v);
  return ef.rank();
}

bool in_span(const std::vector<SparseVec>& basis, const SparseVec& v) {
  EchelonForm ef;
  for (const auto& b : basis) ef.insert(b);
  return ef.contains(v);
}

std::vector<std::size_t> independent_subset(const std::vector<SparseVec>& vectors) {
  EchelonForm ef;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < vectors.size(); ++i)
    if (ef.insert(vectors[i])) out.push_back(i);
  return out;
}

SparseVec axpy(const SparseVec& y, const Rational& a, const SparseVec& x) {
  SparseVec r = y;
  if (a == 0) return r;
  for (const auto& [i, q] : x) {
    auto [it, inserted] = r.try_emplace(i, 0);
    it->second += a * q;
    if (it->second == 0) r.erase(it);
  }
  return r;
}

}  // namespace conflab
