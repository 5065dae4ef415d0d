#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lve/syntax.hpp"

namespace lve {

enum class Rule { Swap1, Swap2, Swap3, Mult, Elim };

std::string_view to_string(Rule r);
bool is_swap(Rule r);

struct RewriteStep {
  Rule rule;
  std::size_t position;    // index of the first definition involved
  std::string eliminated;  // Elim only
  LetTerm before;
  LetTerm after;
};

struct Trace {
  std::vector<RewriteStep> steps;

  std::size_t count(Rule r) const;
  // One record per step: index, rule, position and the resulting term.
  std::string serialize() const;
};

// Stable 64-bit hash of the printed form of a let-term.
std::uint64_t term_hash(const LetTerm& l);

// Applies one rule at definition `position` (Swap and Mult also involve the
// next definition). Throws SideConditionViolated when the rule does not apply.
LetTerm apply_rule(const LetTerm& l, Rule rule, std::size_t position,
                   const std::string& eliminated = {});

// Swaps or gathers the first two definitions.
LetTerm sd(const LetTerm& l, Trace* trace = nullptr);

// Gathers into the first definition everything depending on v.
LetTerm va(const LetTerm& l, const VarSet& v, Trace* trace = nullptr);

// Makes x local to a single definition, moved to the front.
LetTerm vel(const LetTerm& l, const std::string& x, Trace* trace = nullptr);

struct VelResult {
  LetTerm term;
  Trace trace;
};

VelResult vel_seq(const LetTerm& l, std::span<const std::string> order);

// s(l) + 4 * |vars(facts(l)_x) \ FV(l)|
std::size_t size_bound(const LetTerm& l, const std::string& x);
bool size_bound_check(const LetTerm& l, const std::string& x);

// Defined positive variables that do not occur in the output.
std::vector<std::string> eliminable_variables(const LetTerm& l);

}  // namespace lve
