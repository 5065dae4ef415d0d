#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "lve/syntax.hpp"
#include "lve/web.hpp"

namespace lve {

inline constexpr std::size_t kDefaultWebCap = std::size_t{1} << 20;
inline constexpr double kTolerance = 1e-9;

struct CostCounter {
  std::uint64_t multiply_adds = 0;
  std::size_t max_table = 0;

  void table(std::size_t n) {
    if (n > max_table) max_table = n;
  }
};

// A matrix with rows indexed by Web(FV) (variables sorted by name) and
// columns by Web(type).
struct WeightedRelation {
  VarSet rows;
  Type type;
  std::vector<double> entries;

  std::size_t row_count() const { return rows.web_size(); }
  std::size_t col_count() const { return type.web_size(); }
  double at(std::size_t r, std::size_t c) const { return entries[r * col_count() + c]; }
  double at(const Assignment& a, const WebElement& b) const;
  double total_mass() const;
};

// Largest absolute entry difference, or +inf if the shapes differ.
double max_difference(const WeightedRelation& a, const WeightedRelation& b);
bool approx_equal(const WeightedRelation& a, const WeightedRelation& b, double tol = kTolerance);

// Memoising evaluator. Subterms are cached by node identity, so terms
// sharing unchanged subexpressions reuse earlier results.
class Denoter {
 public:
  explicit Denoter(std::size_t web_cap = kDefaultWebCap) : web_cap_(web_cap) {}

  std::shared_ptr<const WeightedRelation> denote(const Expr& e);

  const CostCounter& cost() const noexcept { return cost_; }
  void reset_cost() { cost_ = {}; }
  std::size_t web_cap() const noexcept { return web_cap_; }

 private:
  std::shared_ptr<const WeightedRelation> compute(const Expr& e);
  void check_cap(std::size_t rows, std::size_t cols) const;

  std::size_t web_cap_;
  CostCounter cost_;
  std::unordered_map<const void*,
                     std::pair<std::shared_ptr<const void>, std::shared_ptr<const WeightedRelation>>>
      memo_;
};

// Typechecks, then evaluates.
WeightedRelation denote(const Expr& e, CostCounter* cost = nullptr,
                        std::size_t web_cap = kDefaultWebCap);
WeightedRelation denote(const LetTerm& l, CostCounter* cost = nullptr,
                        std::size_t web_cap = kDefaultWebCap);

struct MassCheck {
  double mass = 0;
  double expected = 0;
  bool ok = false;
};

// For a closed term, the sum of all entries equals ht of its type.
MassCheck total_mass_check(const Expr& e, double tol = kTolerance);

}  // namespace lve
