#pragma once

#include <map>
#include <string>
#include <vector>

#include "lve/syntax.hpp"

namespace lve {

// A let-term together with the matrices it refers to.
struct Program {
  std::vector<MatrixRef> matrices;
  LetTerm term;
};

// Matrices referenced anywhere in the term, in order of first use.
std::vector<MatrixRef> matrices_of(const LetTerm& l);

}  // namespace lve
