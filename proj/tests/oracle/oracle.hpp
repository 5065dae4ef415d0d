#pragma once

// Reference implementations used by the tests. Nothing here calls into the
// library's evaluation code: factors are maps from explicit assignments to
// weights, and network joints are computed straight from the CPT numbers.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "lve/factor.hpp"
#include "lve/network.hpp"

namespace oracle {

// A factor as a sorted list of (name, arity) and a map keyed by the value
// of each variable (0 for t, 1 for f on booleans).
struct MapFactor {
  std::vector<std::pair<std::string, int>> vars;
  std::map<std::vector<int>, double> table;
};

inline void for_each_assignment(const std::vector<std::pair<std::string, int>>& vars,
                                const auto& fn) {
  std::vector<int> a(vars.size(), 0);
  while (true) {
    fn(a);
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++a[i] < vars[i].second) break;
      a[i] = 0;
      if (i == 0) return;
    }
    if (vars.empty()) return;
  }
}

inline int position(const MapFactor& f, const std::string& name) {
  for (std::size_t i = 0; i < f.vars.size(); ++i)
    if (f.vars[i].first == name) return static_cast<int>(i);
  return -1;
}

inline std::vector<int> restrict_to(const MapFactor& from_vars, const std::vector<int>& a,
                                    const MapFactor& to) {
  std::vector<int> out;
  for (const auto& [name, arity] : to.vars) out.push_back(a[position(from_vars, name)]);
  return out;
}

inline MapFactor product(const MapFactor& f, const MapFactor& g) {
  MapFactor r;
  r.vars = f.vars;
  for (const auto& v : g.vars)
    if (position(r, v.first) < 0) r.vars.push_back(v);
  std::sort(r.vars.begin(), r.vars.end());
  for_each_assignment(r.vars, [&](const std::vector<int>& a) {
    r.table[a] = f.table.at(restrict_to(r, a, f)) * g.table.at(restrict_to(r, a, g));
  });
  return r;
}

inline MapFactor sum_out(const MapFactor& f, const std::vector<std::string>& names) {
  MapFactor r;
  for (const auto& v : f.vars)
    if (std::find(names.begin(), names.end(), v.first) == names.end()) r.vars.push_back(v);
  for_each_assignment(r.vars, [&](const std::vector<int>& a) { r.table[a] = 0.0; });
  for (const auto& [a, w] : f.table) r.table[restrict_to(f, a, r)] += w;
  return r;
}

// Reads a library factor entry by entry through its assignment accessor.
inline MapFactor from_factor(const lve::Factor& f) {
  MapFactor r;
  for (const auto& v : f.vars()) r.vars.emplace_back(v.name, static_cast<int>(v.type.web_size()));
  std::size_t i = 0;
  for_each_assignment(r.vars, [&](const std::vector<int>& a) { r.table[a] = f.at(i++); });
  return r;
}

inline double max_difference(const MapFactor& a, const MapFactor& b) {
  if (a.vars != b.vars || a.table.size() != b.table.size()) return 1e300;
  double m = 0;
  for (const auto& [k, w] : a.table) m = std::max(m, std::abs(w - b.table.at(k)));
  return m;
}

inline MapFactor random_factor(std::mt19937_64& rng, const std::vector<std::string>& pool) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  MapFactor f;
  for (const auto& n : pool)
    if (u(rng) < 0.5) f.vars.emplace_back(n, 2);
  for_each_assignment(f.vars, [&](const std::vector<int>& a) { f.table[a] = u(rng); });
  return f;
}

// Joint distribution of the query, computed from the CPTs of the file by
// enumerating every assignment of all nodes. Entries are ordered with the
// first query variable most significant, t before f.
inline std::vector<double> network_joint(const lve::NetworkFile& net) {
  std::map<std::string, std::size_t> pos;
  std::vector<std::pair<std::string, int>> vars;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    pos[net.nodes[i].var] = i;
    vars.emplace_back(net.nodes[i].var, 2);
  }
  std::vector<double> out(std::size_t{1} << net.query.size(), 0.0);
  for_each_assignment(vars, [&](const std::vector<int>& a) {
    double w = 1.0;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
      const auto& n = net.nodes[i];
      std::size_t row = 0;
      for (const auto& p : n.parents) row = row * 2 + static_cast<std::size_t>(a[pos.at(p)]);
      w *= n.cpt[row * 2 + static_cast<std::size_t>(a[i])];
    }
    std::size_t q = 0;
    for (const auto& name : net.query) q = q * 2 + static_cast<std::size_t>(a[pos.at(name)]);
    out[q] += w;
  });
  return out;
}

}  // namespace oracle
