#pragma once

#include <vector>

#include "lve/denote.hpp"
#include "lve/factor.hpp"
#include "lve/syntax.hpp"

namespace lve {

// Factor of a definition v = e: Web(FV(e) + vars(v)) -> R, read off the
// denotation of e.
Factor factor_of_def(const Pattern& binder, const Expr& bound, Denoter& denoter);
Factor factor_of_def(const Pattern& binder, const Expr& bound);

// Factors of a let-term. Arrow binders not in the output are summed out
// together with the factors mentioning them.
FactorSet facts(const LetTerm& l, Denoter& denoter);
FactorSet facts(const LetTerm& l);

// Variable sets of facts(l), computed without evaluating anything.
std::vector<VarSet> fact_scopes(const LetTerm& l);

// vars(facts(l)) is the disjoint union of FV(l), the output arrows not
// free in l, and the positive binders.
bool facts_varset_check(const LetTerm& l);

// The denotation of l rebuilt from its factors.
WeightedRelation semantics_from_facts(const LetTerm& l, CostCounter* cost = nullptr);

// Throws NotCanonicalized unless l has distinct top-level definitions.
void require_distinct_definitions(const LetTerm& l);

}  // namespace lve
