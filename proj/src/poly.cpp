#include "conflab/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace conflab {

std::string VarId::name() const {
  switch (kind()) {
    case Kind::Partial:
      return "d";
    case Kind::DefParam:
      return "t";
    case Kind::Slot:
      break;
  }
  return "x" + std::to_string(slot_index());
}

Monomial Monomial::var(VarId v, unsigned power) {
  Monomial m;
  if (power == 0) return m;
  m.exps_.assign(v.flat() + 1, 0);
  m.exps_[v.flat()] = power;
  return m;
}

unsigned Monomial::total_degree() const {
  return std::accumulate(exps_.begin(), exps_.end(), 0u);
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.exps_.resize(std::max(exps_.size(), other.exps_.size()), 0);
  for (std::size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += exps_[i];
  for (std::size_t i = 0; i < other.exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  return r;
}

Monomial Monomial::without(VarId v) const {
  Monomial r = *this;
  if (v.flat() < r.exps_.size()) {
    r.exps_[v.flat()] = 0;
    r.trim();
  }
  return r;
}

void Monomial::trim() {
  while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  const unsigned da = a.total_degree();
  const unsigned db = b.total_degree();
  if (da != db) return da < db;
  const auto& ea = a.exponents();
  const auto& eb = b.exponents();
  const std::size_t n = std::max(ea.size(), eb.size());
  for (std::size_t i = 0; i < n; ++i) {
    const unsigned x = i < ea.size() ? ea[i] : 0;
    const unsigned y = i < eb.size() ? eb[i] : 0;
    if (x != y) return x < y;
  }
  return false;
}

MultiPoly::MultiPoly(long c) : MultiPoly(Rational(c)) {}

MultiPoly::MultiPoly(const Rational& c) {
  if (c != 0) terms_.emplace(Monomial{}, c);
}

MultiPoly MultiPoly::var(VarId v, unsigned power) {
  return term(Rational(1), Monomial::var(v, power));
}

MultiPoly MultiPoly::term(const Rational& c, Monomial m) {
  MultiPoly p;
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

bool MultiPoly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational MultiPoly::constant_term() const { return coefficient(Monomial{}); }

Rational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.total_degree());
}

int MultiPoly::degree_in(VarId v) const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.exponent(v)));
  return d;
}

bool MultiPoly::contains(VarId v) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) > 0) return true;
  return false;
}

int MultiPoly::max_slot() const {
  int best = -1;
  for (const auto& [m, c] : terms_) {
    const auto& e = m.exponents();
    for (std::size_t i = e.size(); i-- > 2;) {
      if (e[i] > 0) {
        best = std::max(best, static_cast<int>(i) - 2);
        break;
      }
    }
  }
  return best;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
  *this = *this * o;
  return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

MultiPoly MultiPoly::pow(unsigned n) const {
  MultiPoly result(1L);
  MultiPoly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return result;
}

MultiPoly MultiPoly::substitute(VarId v, const MultiPoly& r) const {
  return substitute(std::map<VarId, MultiPoly>{{v, r}});
}

MultiPoly MultiPoly::substitute(const std::map<VarId, MultiPoly>& subs) const {
  if (subs.empty()) return *this;
  // powers[v][k] = r_v^k, grown on demand
  std::map<VarId, std::vector<MultiPoly>> powers;
  auto power_of = [&](VarId v, const MultiPoly& r, unsigned k) -> const MultiPoly& {
    auto& cache = powers[v];
    if (cache.empty()) cache.emplace_back(1L);
    while (cache.size() <= k) cache.push_back(cache.back() * r);
    return cache[k];
  };

  MultiPoly result;
  for (const auto& [m, c] : terms_) {
    Monomial rest = m;
    MultiPoly factor(c);
    for (const auto& [v, r] : subs) {
      const unsigned e = m.exponent(v);
      if (e == 0) continue;
      rest = rest.without(v);
      factor *= power_of(v, r, e);
    }
    for (const auto& [fm, fc] : factor.terms_) result.add_term(fm * rest, fc);
  }
  return result;
}

std::vector<std::pair<unsigned, MultiPoly>> MultiPoly::expand_in(VarId v) const {
  std::map<unsigned, MultiPoly> by_power;
  for (const auto& [m, c] : terms_) by_power[m.exponent(v)].add_term(m.without(v), c);
  std::vector<std::pair<unsigned, MultiPoly>> out;
  for (auto& [k, p] : by_power)
    if (!p.is_zero()) out.emplace_back(k, std::move(p));
  return out;
}

MultiPoly MultiPoly::coefficient_of(VarId v, unsigned k) const {
  MultiPoly r;
  for (const auto& [m, c] : terms_)
    if (m.exponent(v) == k) r.add_term(m.without(v), c);
  return r;
}

std::string rational_to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

namespace {

std::string monomial_to_string(const Monomial& m) {
  std::string out;
  const auto& e = m.exponents();
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += VarId::from_flat(static_cast<unsigned>(i)).name();
    if (e[i] > 1) out += '^' + std::to_string(e[i]);
  }
  return out;
}

}  // namespace

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << rational_to_string(mag);
    } else if (mag == 1) {
      os << monomial_to_string(m);
    } else {
      os << rational_to_string(mag) << '*' << monomial_to_string(m);
    }
  }
  return os.str();
}

MultiPoly add(const MultiPoly& p, const MultiPoly& q) { return p + q; }
MultiPoly mul(const MultiPoly& p, const MultiPoly& q) { return p * q; }
MultiPoly substitute(const MultiPoly& p, VarId v, const MultiPoly& r) { return p.substitute(v, r); }
std::vector<std::pair<unsigned, MultiPoly>> expand_in_variable(const MultiPoly& p, VarId v) {
  return p.expand_in(v);
}

std::vector<Monomial> monomials_up_to(const std::vector<VarId>& vars, unsigned max_degree) {
  std::vector<Monomial> out;
  // enumerate exponent tuples recursively
  std::vector<unsigned> exps(vars.size(), 0);
  auto rec = [&](auto&& self, std::size_t idx, unsigned budget) -> void {
    if (idx == vars.size()) {
      Monomial m;
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (exps[i] > 0) m = m * Monomial::var(vars[i], exps[i]);
      out.push_back(std::move(m));
      return;
    }
    for (unsigned e = 0; e <= budget; ++e) {
      exps[idx] = e;
      self(self, idx + 1, budget - e);
    }
    exps[idx] = 0;
  };
  rec(rec, 0, max_degree);
  std::sort(out.begin(), out.end(), MonomialLess{});
  return out;
}

}  // namespace conflab
