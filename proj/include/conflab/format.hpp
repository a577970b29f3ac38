#pragma once

// Text definition files for algebras, modules and conformal maps.
//
//   [algebra]
//   name = Virasoro
//   basis = L
//
//   [alpha]
//   L -> L
//
//   [bracket]
//   L L -> (d + 2*x0)*L
//
//   [module M]
//   basis = f
//   [beta]
//   f -> f
//   [action]
//   L f -> (d + x0)*f
//
// Omitted [alpha]/[beta] rows are the identity, omitted brackets and
// actions are 0. Indices may be basis names or 1-based integers. Map files:
//
//   [endo]
//   extension = antilinear
//   level = 0
//   [map]
//   L -> x0*L
//   [witness]        (optional, D')
//   [witness2]       (optional, D'')

#include <optional>
#include <string>
#include <vector>

#include "conflab/algebra.hpp"
#include "conflab/errors.hpp"
#include "conflab/maps.hpp"

namespace conflab {

class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& found, std::vector<std::string> expected);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_, column_;
  std::vector<std::string> expected_;
};

class RankError : public Error {
 public:
  using Error::Error;
};

class UndeclaredBasis : public Error {
 public:
  using Error::Error;
};

// Polynomial in d, t, x0, x1, ...
MultiPoly parse_poly(const std::string& text);
// Combination of the given basis names with polynomial coefficients; `0` is
// the zero element.
LambdaExpr parse_element(const std::string& text, const std::vector<std::string>& basis);

struct DefinitionFile {
  HomConformalAlgebra algebra;
  std::vector<ConformalModule> modules;
  bool operator==(const DefinitionFile&) const = default;
};

DefinitionFile parse_definition(const std::string& text);
std::string print_definition(const DefinitionFile& def);
std::string print_algebra(const HomConformalAlgebra& A);

struct EndoFile {
  ConformalMap map;
  std::optional<ConformalMap> witness;
  std::optional<ConformalMap> witness2;
};

EndoFile parse_endo(const std::string& text, const std::vector<std::string>& basis);
std::string print_endo(const EndoFile& e, const std::vector<std::string>& basis);

std::string read_file(const std::string& path);

}  // namespace conflab
