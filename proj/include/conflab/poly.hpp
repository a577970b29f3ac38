#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Variables are the derivation symbol d (written `d`), the deformation
// parameter t, and an open-ended family of lambda-slots x0, x1, ...
// All variables commute. Terms are kept in a graded lexicographic order
// with d < t < x0 < x1 < ... as the variable sequence; printing lists terms
// from the largest monomial down, e.g. `d^2 + 2*d*x0 + x0^2`.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace conflab {

using Rational = mpq_class;

class VarId {
 public:
  enum class Kind : std::uint8_t { Partial, DefParam, Slot };

  static constexpr VarId partial() { return VarId(0); }
  static constexpr VarId def_param() { return VarId(1); }
  static constexpr VarId slot(unsigned i) { return VarId(i + 2); }
  static constexpr VarId from_flat(unsigned flat) { return VarId(flat); }

  constexpr Kind kind() const {
    return flat_ == 0 ? Kind::Partial : flat_ == 1 ? Kind::DefParam : Kind::Slot;
  }
  constexpr bool is_slot() const { return flat_ >= 2; }
  constexpr unsigned slot_index() const { return flat_ - 2; }
  constexpr unsigned flat() const { return flat_; }

  std::string name() const;

  constexpr auto operator<=>(const VarId&) const = default;

 private:
  constexpr explicit VarId(unsigned flat) : flat_(flat) {}
  unsigned flat_;
};

inline constexpr VarId kPartial = VarId::partial();
inline constexpr VarId kDefParam = VarId::def_param();

// Exponent vector indexed by VarId::flat(); trailing zeros are trimmed so the
// representation of every monomial is unique.
class Monomial {
 public:
  Monomial() = default;
  static Monomial var(VarId v, unsigned power = 1);

  unsigned exponent(VarId v) const {
    return v.flat() < exps_.size() ? exps_[v.flat()] : 0;
  }
  unsigned total_degree() const;
  bool is_one() const { return exps_.empty(); }
  std::size_t width() const { return exps_.size(); }
  const std::vector<unsigned>& exponents() const { return exps_; }

  Monomial operator*(const Monomial& other) const;
  // Same monomial with variable v removed.
  Monomial without(VarId v) const;

  bool operator==(const Monomial&) const = default;

 private:
  void trim();
  std::vector<unsigned> exps_;
};

// Graded lexicographic order: total degree first, then the exponent of d,
// then t, x0, x1, ... (a larger exponent of an earlier variable is larger).
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Rational, MonomialLess>;

  MultiPoly() = default;
  MultiPoly(long c);  // NOLINT(google-explicit-constructor): constants read naturally
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  static MultiPoly var(VarId v, unsigned power = 1);
  static MultiPoly term(const Rational& c, Monomial m);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term (coefficient of the empty monomial).
  Rational constant_term() const;
  Rational coefficient(const Monomial& m) const;
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  int total_degree() const;
  int degree_in(VarId v) const;
  bool contains(VarId v) const;
  // Largest slot index occurring, or -1.
  int max_slot() const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o);
  MultiPoly& operator*=(const Rational& c);
  MultiPoly operator-() const;

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
  friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }

  bool operator==(const MultiPoly& o) const { return terms_ == o.terms_; }

  MultiPoly pow(unsigned n) const;

  // Replace every occurrence of v by r.
  MultiPoly substitute(VarId v, const MultiPoly& r) const;
  // Simultaneous substitution: all replacements read the original polynomial.
  MultiPoly substitute(const std::map<VarId, MultiPoly>& subs) const;

  // Pairs (k, c_k) with p = sum_k v^k * c_k, ascending in k, zero c_k omitted.
  std::vector<std::pair<unsigned, MultiPoly>> expand_in(VarId v) const;
  // Coefficient of v^k (a polynomial free of v).
  MultiPoly coefficient_of(VarId v, unsigned k) const;

  std::string to_string() const;

 private:
  void add_term(const Monomial& m, const Rational& c);
  TermMap terms_;
};

// Free-function spellings of the ring operations.
MultiPoly add(const MultiPoly& p, const MultiPoly& q);
MultiPoly mul(const MultiPoly& p, const MultiPoly& q);
MultiPoly substitute(const MultiPoly& p, VarId v, const MultiPoly& r);
std::vector<std::pair<unsigned, MultiPoly>> expand_in_variable(const MultiPoly& p, VarId v);
inline int total_degree(const MultiPoly& p) { return p.total_degree(); }
inline int degree_in(const MultiPoly& p, VarId v) { return p.degree_in(v); }

// Shorthands used throughout the library.
inline MultiPoly dpoly() { return MultiPoly::var(kPartial); }
inline MultiPoly tpoly() { return MultiPoly::var(kDefParam); }
inline MultiPoly xpoly(unsigned i) { return MultiPoly::var(VarId::slot(i)); }

std::string rational_to_string(const Rational& q);

// All monomials in the given variables of total degree <= max_degree, in
// ascending monomial order.
std::vector<Monomial> monomials_up_to(const std::vector<VarId>& vars, unsigned max_degree);

}  // namespace conflab
