#include "lve/ordering.hpp"

#include <map>
#include <set>

#include "lve/facts.hpp"
#include "lve/rewrite.hpp"

namespace lve {

std::vector<std::string> min_degree_order(const LetTerm& l) {
  std::map<std::string, std::set<std::string>> adj;
  for (const auto& scope : fact_scopes(l)) {
    for (const auto& a : scope) {
      auto& n = adj[a.name];
      for (const auto& b : scope) {
        if (a.name != b.name) n.insert(b.name);
      }
    }
  }
  auto candidates = eliminable_variables(l);
  std::set<std::string> left(candidates.begin(), candidates.end());
  std::vector<std::string> order;
  while (!left.empty()) {
    std::string best;
    std::size_t best_degree = 0;
    for (const auto& x : left) {
      std::size_t d = adj[x].size();
      if (best.empty() || d < best_degree) {
        best = x;
        best_degree = d;
      }
    }
    const auto neighbours = adj[best];
    for (const auto& a : neighbours) {
      adj[a].erase(best);
      for (const auto& b : neighbours) {
        if (a != b) adj[a].insert(b);
      }
    }
    adj.erase(best);
    left.erase(best);
    order.push_back(best);
  }
  return order;
}

}  // namespace lve
