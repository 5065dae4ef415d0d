#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lve/denote.hpp"
#include "lve/types.hpp"
#include "lve/web.hpp"

namespace lve {

// A function Web(vars) -> R, stored densely in the canonical order of the
// variable set.
class Factor {
 public:
  Factor();  // the unit: no variables, value 1
  Factor(VarSet vars, std::vector<double> table);

  static Factor constant(VarSet vars, double value);

  const VarSet& vars() const noexcept { return vars_; }
  const std::vector<double>& table() const noexcept { return table_; }
  std::size_t size() const noexcept { return table_.size(); }
  std::size_t degree() const noexcept { return vars_.size(); }
  // Largest web among the variables (1 when there are none).
  std::size_t base() const;

  double at(std::size_t i) const { return table_[i]; }
  double at(const Assignment& a) const;

  std::string str() const;

 private:
  VarSet vars_;
  std::vector<double> table_;
};

// Sums out every variable of v present in f.
Factor sum_out(const Factor& f, const VarSet& v, CostCounter* cost = nullptr);
// Pointwise product over the union of the variables.
Factor product(const Factor& f, const Factor& g, CostCounter* cost = nullptr);
Factor big_product(std::span<const Factor> fs, CostCounter* cost = nullptr);

bool factors_equal(const Factor& a, const Factor& b, double tol = kTolerance);

// A multiset of factors.
struct FactorSet {
  std::vector<Factor> items;
  CostCounter cost;

  VarSet vars() const;
  std::size_t size() const { return items.size(); }
};

// Splits into the factors mentioning some variable of v and the rest.
std::pair<FactorSet, FactorSet> partition(const FactorSet& g, const VarSet& v);

// Multiset equality: factors matched by variable set, tables within tol.
bool factor_sets_equal(const FactorSet& a, const FactorSet& b, double tol = kTolerance,
                       std::string* why = nullptr);

struct VefStep {
  Variable var;
  std::size_t factors = 0;  // |G_v|
  VarSet scope;             // variables of the product
  std::size_t table = 0;    // size of the product table
  std::uint64_t multiply_adds = 0;
  std::uint64_t bound = 0;  // |G_v| * base^degree
};

// Eliminates the variables in order. Throws UnknownVariable when a name is
// not a variable of the current set.
FactorSet vef(const FactorSet& g, std::span<const std::string> order,
              std::vector<VefStep>* steps = nullptr);

// Product of all factors with every variable outside keep summed out.
Factor marginal(const FactorSet& g, const VarSet& keep, CostCounter* cost = nullptr);

}  // namespace lve
