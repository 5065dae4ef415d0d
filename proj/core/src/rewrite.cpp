#include "lve/rewrite.hpp"

#include <sstream>

#include "lve/error.hpp"
#include "lve/facts.hpp"
#include "lve/printer.hpp"
#include "lve/typecheck.hpp"

namespace lve {

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Swap1: return "Swap1";
    case Rule::Swap2: return "Swap2";
    case Rule::Swap3: return "Swap3";
    case Rule::Mult: return "Mult";
    case Rule::Elim: return "Elim";
  }
  return "?";
}

bool is_swap(Rule r) { return r == Rule::Swap1 || r == Rule::Swap2 || r == Rule::Swap3; }

std::size_t Trace::count(Rule r) const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.rule == r ? 1 : 0;
  return n;
}

std::string Trace::serialize() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    os << "step " << (i + 1) << ": " << to_string(s.rule);
    if (s.rule == Rule::Elim) os << "[" << s.eliminated << "]";
    os << " at " << s.position << "  #" << std::hex << term_hash(s.after) << std::dec << "\n";
    os << pretty_print(s.after) << "\n";
  }
  return os.str();
}

std::uint64_t term_hash(const LetTerm& l) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : pretty_print(l)) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

[[noreturn]] void violated(Rule r, std::size_t k, const std::string& why) {
  fail(ErrorKind::SideConditionViolated,
       std::string(to_string(r)) + " at " + std::to_string(k) + ": " + why);
}

Pattern pair_pattern(const std::optional<Pattern>& a, const Pattern& b) {
  return a ? Pattern::pair(*a, b) : b;
}

Expr pair_expr(const std::optional<Pattern>& a, const Expr& b) {
  return a ? Expr::pair(pattern_expr(*a), b) : b;
}

LetTerm replace(const LetTerm& l, std::size_t k, std::size_t count, std::vector<Definition> with) {
  LetTerm out{{}, l.output};
  out.defs.insert(out.defs.end(), l.defs.begin(), l.defs.begin() + k);
  for (auto& d : with) out.defs.push_back(std::move(d));
  out.defs.insert(out.defs.end(), l.defs.begin() + k + count, l.defs.end());
  return out;
}

}  // namespace

LetTerm apply_rule(const LetTerm& l, Rule rule, std::size_t k, const std::string& x) {
  if (rule == Rule::Elim) {
    if (k >= l.defs.size()) violated(rule, k, "no such definition");
    const auto& d = l.defs[k];
    const Variable* v = d.binder.vars().find(x);
    if (!v) violated(rule, k, x + " is not bound here");
    if (!v->is_positive()) violated(rule, k, x + " is not positive");
    if (l.suffix_free_vars(k + 1).contains(x)) violated(rule, k, x + " is used later");
    auto rest = remove_var(d.binder, x);
    if (!rest) violated(rule, k, "nothing left after removing " + x);
    return replace(l, k, 1, {{*rest, Expr::let(d.binder, d.bound, pattern_expr(*rest))}});
  }

  if (k + 1 >= l.defs.size()) violated(rule, k, "needs two definitions");
  const auto& d1 = l.defs[k];
  const auto& d2 = l.defs[k + 1];
  const VarSet v1 = d1.binder.vars();
  const VarSet v2 = d2.binder.vars();
  if (v1.intersects(v2)) violated(rule, k, "binders overlap");
  const VarSet shared = v1 & d2.bound.free_vars();

  switch (rule) {
    case Rule::Swap1: {
      if (!shared.empty()) violated(rule, k, "second definition uses " + shared.str());
      if (v2.intersects(d1.bound.free_vars())) violated(rule, k, "swap would capture");
      return replace(l, k, 2, {d2, d1});
    }

    case Rule::Swap2: {
      if (shared.empty()) violated(rule, k, "no shared variables");
      if (!shared.arrows().empty()) violated(rule, k, "shared arrow " + shared.arrows().str());
      std::vector<Variable> xs;
      for (const auto& v : d1.binder.leaves()) {
        if (shared.contains(v.name)) xs.push_back(v);
      }
      NameSupply names(all_names(l));
      std::map<std::string, Variable> renaming;
      std::vector<Variable> zs;
      std::vector<Type> types;
      for (const auto& v : xs) {
        Variable z(names.fresh(v.name), v.type);
        renaming.emplace(v.name, z);
        zs.push_back(z);
        types.push_back(v.type);
      }
      auto body = rename_free(d2.bound, renaming);
      if (!body) violated(rule, k, "renaming captured a variable");
      Variable g(names.fresh("g"), Type::arrow(tensor_of(types), type_of(d2.bound)));
      Definition dg{Pattern::leaf(g), Expr::lam(Pattern::of(zs), *body)};
      Definition dv2{d2.binder, Expr::arrow_app(g, Pattern::of(xs))};
      return replace(l, k, 2, {dg, d1, dv2});
    }

    case Rule::Swap3: {
      auto split = pattern_split(d1.binder);
      if (!split.arrow) violated(rule, k, "first binder has no arrow");
      if (!d2.bound.free_vars().contains(split.arrow->name)) {
        violated(rule, k, split.arrow->name + " is not used by the second definition");
      }
      Pattern binder = pair_pattern(split.positive, d2.binder);
      Expr bound = Expr::let(d1.binder, d1.bound, pair_expr(split.positive, d2.bound));
      return replace(l, k, 2, {{binder, bound}});
    }

    case Rule::Mult: {
      if (!d1.binder.is_positive()) violated(rule, k, "first binder is not positive");
      Pattern binder = Pattern::pair(d1.binder, d2.binder);
      Expr bound = Expr::let(d1.binder, d1.bound, Expr::pair(pattern_expr(d1.binder), d2.bound));
      return replace(l, k, 2, {{binder, bound}});
    }

    case Rule::Elim:
      break;
  }
  violated(rule, k, "unknown rule");
}

namespace {

// Applies the strategies in place on a whole term, addressing suffixes by
// definition index.
class Rewriter {
 public:
  Rewriter(LetTerm l, Trace* trace) : term_(std::move(l)), trace_(trace) {}

  const LetTerm& term() const { return term_; }

  void step(Rule r, std::size_t k, const std::string& x = {}) {
    LetTerm next = apply_rule(term_, r, k, x);
    if (trace_) trace_->steps.push_back({r, k, x, term_, next});
    term_ = std::move(next);
  }

  void sd_at(std::size_t k) {
    if (k + 1 >= term_.defs.size()) violated(Rule::Swap1, k, "SD needs two definitions");
    const auto& d1 = term_.defs[k];
    const VarSet shared = d1.binder.vars() & term_.defs[k + 1].bound.free_vars();
    if (shared.empty()) {
      step(Rule::Swap1, k);
    } else if (shared.arrows().empty()) {
      step(Rule::Swap2, k);
    } else {
      step(Rule::Swap3, k);
    }
  }

  void va_at(std::size_t k, VarSet v) {
    if (v.empty()) return;
    if (k >= term_.defs.size()) {
      fail(ErrorKind::SideConditionViolated, "anticipated variables " + v.str() + " are not used");
    }
    const auto& d = term_.defs[k];
    if (!v.intersects(d.bound.free_vars())) {
      va_at(k + 1, v);
      sd_at(k);
      return;
    }
    auto split = pattern_split(d.binder);
    VarSet rest = v & term_.suffix_free_vars(k + 1);
    if (!split.arrow) {
      if (rest.empty()) return;
      va_at(k + 1, rest);
      step(Rule::Mult, k);
    } else {
      rest.insert(*split.arrow);
      va_at(k + 1, rest);
      step(Rule::Swap3, k);
    }
  }

  void vel_at(std::size_t k, const std::string& x) {
    if (k >= term_.defs.size()) fail(ErrorKind::NotDefined, x + " is not defined");
    const auto& d = term_.defs[k];
    if (!d.binder.vars().contains(x)) {
      vel_at(k + 1, x);
      sd_at(k);
      return;
    }
    const bool used = term_.suffix_free_vars(k + 1).contains(x);
    if (!used) {
      if (!remove_var(d.binder, x)) {
        fail(ErrorKind::BarrenDefinition, x + " is defined alone and never used");
      }
      step(Rule::Elim, k, x);
      return;
    }
    auto split = pattern_split(d.binder);
    VarSet v{*d.binder.vars().find(x)};
    if (split.arrow) v.insert(*split.arrow);
    va_at(k + 1, v);
    step(split.arrow ? Rule::Swap3 : Rule::Mult, k);
    step(Rule::Elim, k, x);
  }

 private:
  LetTerm term_;
  Trace* trace_;
};

void require_positive(const LetTerm& l) {
  if (!l.is_positive()) fail(ErrorKind::NotPositive, "let-term output is not positive");
}

}  // namespace

LetTerm sd(const LetTerm& l, Trace* trace) {
  if (l.defs.size() < 2) fail(ErrorKind::TooFewDefinitions, "sd needs two definitions");
  Rewriter r(l, trace);
  r.sd_at(0);
  return r.term();
}

LetTerm va(const LetTerm& l, const VarSet& v, Trace* trace) {
  require_positive(l);
  if (l.defs.empty()) fail(ErrorKind::NotDefined, "let-term has no definitions");
  if (!v.subset_of(l.free_vars())) {
    fail(ErrorKind::UnknownVariable, v.str() + " is not contained in the free variables");
  }
  if (v.intersects(l.output.vars())) fail(ErrorKind::OutputOverlap, v.str() + " meets the output");
  Rewriter r(l, trace);
  r.va_at(0, v);
  return r.term();
}

LetTerm vel(const LetTerm& l, const std::string& x, Trace* trace) {
  require_positive(l);
  auto k = l.definition_of(x);
  if (!k) fail(ErrorKind::NotDefined, x + " is not defined at top level");
  if (l.output.vars().contains(x)) fail(ErrorKind::InOutput, x + " occurs in the output");
  const Variable* v = l.defs[*k].binder.vars().find(x);
  if (!v->is_positive()) fail(ErrorKind::NotPositive, x + " is not positive");
  Rewriter r(l, trace);
  r.vel_at(0, x);
  return r.term();
}

VelResult vel_seq(const LetTerm& l, std::span<const std::string> order) {
  require_distinct_definitions(l);
  VelResult out{l, {}};
  for (const auto& x : order) out.term = vel(out.term, x, &out.trace);
  return out;
}

std::size_t size_bound(const LetTerm& l, const std::string& x) {
  VarSet touched;
  for (const auto& s : fact_scopes(l)) {
    if (s.contains(x)) touched = touched | s;
  }
  return l.size() + 4 * (touched - l.free_vars()).size();
}

bool size_bound_check(const LetTerm& l, const std::string& x) {
  return vel(l, x).size() <= size_bound(l, x);
}

std::vector<std::string> eliminable_variables(const LetTerm& l) {
  std::vector<std::string> out;
  VarSet output = l.output.vars();
  for (const auto& d : l.defs) {
    for (const auto& v : d.binder.leaves()) {
      if (v.is_positive() && !output.contains(v.name)) out.push_back(v.name);
    }
  }
  return out;
}

}  // namespace lve
