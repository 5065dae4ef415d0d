#include "lve/facts.hpp"

#include "lve/error.hpp"
#include "lve/typecheck.hpp"

namespace lve {

Factor factor_of_def(const Pattern& binder, const Expr& bound, Denoter& denoter) {
  VarSet bv = binder.vars();
  if (bv.intersects(bound.free_vars())) {
    fail(ErrorKind::BinderCapture, "binder " + bv.str() + " is free in its own definition");
  }
  auto rel = denoter.denote(bound);
  VarSet vars = rel->rows | bv;
  const Layout lay = layout_of(vars);
  auto ri = partial_index(layout_of(rel->rows), lay);
  auto ci = partial_index(layout_of(binder), lay);
  std::vector<double> table(lay.total, 0.0);
  const std::size_t C = rel->col_count();
  for (std::size_t r = 0; r < rel->row_count(); ++r) {
    for (std::size_t c = 0; c < C; ++c) table[ri[r] + ci[c]] = rel->at(r, c);
  }
  return Factor(std::move(vars), std::move(table));
}

Factor factor_of_def(const Pattern& binder, const Expr& bound) {
  Denoter d;
  return factor_of_def(binder, bound, d);
}

void require_distinct_definitions(const LetTerm& l) {
  if (!has_distinct_definitions(l)) {
    fail(ErrorKind::NotCanonicalized, "top-level binders must be distinct and not free elsewhere");
  }
}

namespace {

// Shared recursion for tables and bare scopes.
template <class Item, class MakeDef, class MakeConst, class Merge>
std::vector<Item> facts_rec(const LetTerm& l, MakeDef make_def, MakeConst make_const, Merge merge,
                            const VarSet& (*scope)(const Item&)) {
  const VarSet out_vars = l.output.vars();
  std::vector<Item> acc{make_const(out_vars)};
  for (std::size_t i = l.defs.size(); i-- > 0;) {
    const auto& d = l.defs[i];
    Item fact = make_def(d);
    auto split = pattern_split(d.binder);
    std::vector<Item> next;
    if (split.arrow && !out_vars.contains(split.arrow->name)) {
      std::vector<Item> with{fact};
      std::vector<Item> rest;
      for (auto& item : acc) {
        (scope(item).contains(split.arrow->name) ? with : rest).push_back(std::move(item));
      }
      next.push_back(merge(with, VarSet{*split.arrow}));
      for (auto& item : rest) next.push_back(std::move(item));
    } else {
      next.push_back(std::move(fact));
      for (auto& item : acc) next.push_back(std::move(item));
    }
    acc = std::move(next);
  }
  return acc;
}

const VarSet& factor_scope(const Factor& f) { return f.vars(); }
const VarSet& plain_scope(const VarSet& v) { return v; }

}  // namespace

FactorSet facts(const LetTerm& l, Denoter& denoter) {
  require_distinct_definitions(l);
  FactorSet out;
  CostCounter* cost = &out.cost;
  out.items = facts_rec<Factor>(
      l, [&](const Definition& d) { return factor_of_def(d.binder, d.bound, denoter); },
      [](const VarSet& v) { return Factor::constant(v, 1.0); },
      [&](const std::vector<Factor>& with, const VarSet& f) {
        return sum_out(big_product(with, cost), f, cost);
      },
      &factor_scope);
  return out;
}

FactorSet facts(const LetTerm& l) {
  Denoter d;
  return facts(l, d);
}

std::vector<VarSet> fact_scopes(const LetTerm& l) {
  require_distinct_definitions(l);
  return facts_rec<VarSet>(
      l, [](const Definition& d) { return d.bound.free_vars() | d.binder.vars(); },
      [](const VarSet& v) { return v; },
      [](const std::vector<VarSet>& with, const VarSet& f) {
        VarSet u;
        for (const auto& s : with) u = u | s;
        return u - f;
      },
      &plain_scope);
}

bool facts_varset_check(const LetTerm& l) {
  VarSet actual;
  for (const auto& s : fact_scopes(l)) actual = actual | s;
  const VarSet fv = l.free_vars();
  const VarSet out_arrows = l.output.vars().arrows() - fv;
  std::vector<VarSet> parts{fv, out_arrows};
  for (const auto& d : l.defs) parts.push_back(d.binder.vars().positive());
  VarSet expected;
  std::size_t total = 0;
  for (const auto& p : parts) {
    expected = expected | p;
    total += p.size();
  }
  return total == expected.size() && actual == expected;
}

WeightedRelation semantics_from_facts(const LetTerm& l, CostCounter* cost) {
  typecheck(l);
  FactorSet g = facts(l);
  const VarSet fv = l.free_vars();
  const VarSet out_vars = l.output.vars();
  Factor q = marginal(g, fv | out_vars, cost);

  WeightedRelation rel;
  rel.rows = fv;
  rel.type = l.output.type();
  const std::size_t R = rel.row_count();
  const std::size_t C = rel.col_count();
  rel.entries.assign(R * C, 0.0);
  const Layout qlay = layout_of(q.vars());
  const Layout rlay = layout_of(fv);
  const Layout olay = layout_of(l.output);
  auto qr = partial_index(rlay, qlay, &out_vars);
  auto qc = partial_index(olay, qlay);
  // Variables both free and in the output must agree between row and column.
  const VarSet shared = fv & out_vars;
  Layout slay = layout_of(shared);
  auto sr = partial_index(rlay, slay);
  auto sc = partial_index(olay, slay);
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) {
      if (sr[r] != sc[c]) continue;
      rel.entries[r * C + c] = q.at(qr[r] + qc[c]);
    }
  }
  return rel;
}

}  // namespace lve
