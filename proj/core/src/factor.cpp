#include "lve/factor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lve/error.hpp"

namespace lve {

Factor::Factor() : table_{1.0} {}

Factor::Factor(VarSet vars, std::vector<double> table)
    : vars_(std::move(vars)), table_(std::move(table)) {
  if (table_.size() != vars_.web_size()) {
    fail(ErrorKind::CptShapeMismatch, "factor over " + vars_.str() + " needs " +
                                          std::to_string(vars_.web_size()) + " entries, got " +
                                          std::to_string(table_.size()));
  }
}

Factor Factor::constant(VarSet vars, double value) {
  std::size_t n = vars.web_size();
  return Factor(std::move(vars), std::vector<double>(n, value));
}

std::size_t Factor::base() const {
  std::size_t b = 1;
  for (const auto& v : vars_) b = std::max(b, v.type.web_size());
  return b;
}

double Factor::at(const Assignment& a) const {
  std::size_t idx = 0;
  for (const auto& v : vars_) {
    auto it = a.find(v.name);
    if (it == a.end()) fail(ErrorKind::UnknownVariable, "assignment misses " + v.name);
    idx = idx * v.type.web_size() + web_index(v.type, it->second);
  }
  return table_[idx];
}

std::string Factor::str() const {
  std::ostringstream os;
  os.precision(12);
  os << vars_.str() << " [";
  for (std::size_t i = 0; i < table_.size(); ++i) os << (i ? " " : "") << table_[i];
  os << "]";
  return os.str();
}

Factor sum_out(const Factor& f, const VarSet& v, CostCounter* cost) {
  VarSet keep = f.vars() - v;
  std::vector<double> out(keep.web_size(), 0.0);
  auto idx = partial_index(layout_of(f.vars()), layout_of(keep));
  for (std::size_t i = 0; i < f.size(); ++i) out[idx[i]] += f.at(i);
  if (cost) cost->multiply_adds += f.size();
  return Factor(std::move(keep), std::move(out));
}

Factor product(const Factor& f, const Factor& g, CostCounter* cost) {
  VarSet u;
  try {
    u = f.vars() | g.vars();
  } catch (const Error& e) {
    fail(ErrorKind::SharedVarTypeMismatch, e.what());
  }
  const Layout lu = layout_of(u);
  auto fi = partial_index(lu, layout_of(f.vars()));
  auto gi = partial_index(lu, layout_of(g.vars()));
  std::vector<double> out(lu.total);
  for (std::size_t i = 0; i < lu.total; ++i) out[i] = f.at(fi[i]) * g.at(gi[i]);
  if (cost) {
    cost->multiply_adds += lu.total;
    cost->table(lu.total);
  }
  return Factor(std::move(u), std::move(out));
}

Factor big_product(std::span<const Factor> fs, CostCounter* cost) {
  if (fs.empty()) return Factor();
  Factor acc = fs.front();
  if (cost) cost->table(acc.size());
  for (std::size_t i = 1; i < fs.size(); ++i) acc = product(acc, fs[i], cost);
  return acc;
}

bool factors_equal(const Factor& a, const Factor& b, double tol) {
  if (a.vars() != b.vars()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.at(i) - b.at(i)) > tol) return false;
  }
  return true;
}

VarSet FactorSet::vars() const {
  VarSet out;
  for (const auto& f : items) out = out | f.vars();
  return out;
}

std::pair<FactorSet, FactorSet> partition(const FactorSet& g, const VarSet& v) {
  std::pair<FactorSet, FactorSet> out;
  for (const auto& f : g.items) {
    (f.vars().intersects(v) ? out.first : out.second).items.push_back(f);
  }
  return out;
}

bool factor_sets_equal(const FactorSet& a, const FactorSet& b, double tol, std::string* why) {
  auto explain = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  if (a.size() != b.size()) {
    return explain("sizes differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  std::vector<bool> used(b.size(), false);
  for (const auto& f : a.items) {
    bool matched = false;
    bool same_scope = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j] || f.vars() != b.items[j].vars()) continue;
      same_scope = true;
      if (factors_equal(f, b.items[j], tol)) {
        used[j] = true;
        matched = true;
        break;
      }
    }
    if (!matched) {
      return explain((same_scope ? "tables differ for factor " : "no factor over ") +
                     f.vars().str());
    }
  }
  return true;
}

FactorSet vef(const FactorSet& g, std::span<const std::string> order,
              std::vector<VefStep>* steps) {
  FactorSet cur = g;
  for (const auto& name : order) {
    VarSet all = cur.vars();
    const Variable* v = all.find(name);
    if (!v) fail(ErrorKind::UnknownVariable, name + " is not a variable of the factor set");
    VefStep step;
    step.var = *v;
    VarSet single{*v};
    auto [with, without] = partition(cur, single);
    CostCounter local;
    Factor prod = big_product(with.items, &local);
    Factor summed = sum_out(prod, single, &local);
    step.factors = with.size();
    step.scope = prod.vars();
    step.table = prod.size();
    step.multiply_adds = local.multiply_adds;
    std::uint64_t power = 1;
    for (std::size_t i = 0; i < prod.degree(); ++i) power *= prod.base();
    step.bound = step.factors * power;

    FactorSet next;
    next.items.push_back(std::move(summed));
    for (auto& f : without.items) next.items.push_back(std::move(f));
    next.cost = cur.cost;
    next.cost.multiply_adds += local.multiply_adds;
    next.cost.table(local.max_table);
    cur = std::move(next);
    if (steps) steps->push_back(std::move(step));
  }
  return cur;
}

Factor marginal(const FactorSet& g, const VarSet& keep, CostCounter* cost) {
  Factor prod = big_product(g.items, cost);
  return sum_out(prod, prod.vars() - keep, cost);
}

}  // namespace lve
