#pragma once

#include <string>

#include "conflab/format.hpp"

#ifndef CONFLAB_DATA_DIR
#define CONFLAB_DATA_DIR "data"
#endif

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(CONFLAB_DATA_DIR) + "/" + name; }

inline conflab::DefinitionFile load(const std::string& name) {
  return conflab::parse_definition(conflab::read_file(path(name)));
}

inline conflab::HomConformalAlgebra algebra(const std::string& name) { return load(name).algebra; }

inline conflab::EndoFile endo(const std::string& name, const conflab::HomConformalAlgebra& A) {
  return conflab::parse_endo(conflab::read_file(path(name)), A.basis_names());
}

inline conflab::LambdaExpr elem(const std::string& text, const conflab::HomConformalAlgebra& A) {
  return conflab::parse_element(text, A.basis_names());
}

}  // namespace fixtures
