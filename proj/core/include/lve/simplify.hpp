#pragma once

#include "lve/syntax.hpp"

namespace lve {

// Removes administrative lets left behind by the rewriting:
//   let p = e in p                      ~> e
//   let p = (let q = e0 in e1) in s     ~> let q = e0 in let p = e1 in s
//   let (p1, p2) = (e1, e2) in s        ~> let p1 = e1 in let p2 = e2 in s
//   let x = y in s                      ~> s[y/x]
// Only bound expressions are rewritten; the top-level definitions keep
// their binders, so the factors of the term are unchanged.
Expr simplify(const Expr& e);
LetTerm simplify(const LetTerm& l);

}  // namespace lve
