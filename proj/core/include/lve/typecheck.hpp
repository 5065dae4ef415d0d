#pragma once

#include "lve/syntax.hpp"
#include "lve/types.hpp"

namespace lve {

// Full type derivation; throws lve::Error with the violated rule.
Type typecheck(const Expr& e);
Type typecheck(const LetTerm& l);

// Type read off the syntax without checking side conditions. Only
// meaningful for terms that typecheck.
Type type_of(const Expr& e);

// Rejects a name used with two different types anywhere in the term.
void check_name_consistency(const Expr& e);

}  // namespace lve
