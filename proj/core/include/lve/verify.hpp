#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lve/factor.hpp"
#include "lve/network.hpp"
#include "lve/program.hpp"

namespace lve {

struct GeneratorConfig {
  std::uint64_t seed = 1;
  std::size_t nodes = 6;
  std::size_t max_parents = 2;
  double p_extra_edge = 0.3;
  std::size_t query_size = 2;
  double dirichlet_alpha = 1.0;
};

// Deterministic in the seed. Nodes are x1..xn in topological order, CPT rows
// are Dirichlet draws rounded to 6 decimals and renormalised. The query
// contains every sink, padded with random nodes up to query_size.
NetworkFile random_network(const GeneratorConfig& cfg);

// Distribution of the output of a closed let-term whose definitions all
// bind positive patterns to matrix applications or to other patterns, by
// enumerating every assignment of the defined variables. Entries follow the output pattern.
std::vector<double> brute_force_joint(const LetTerm& l, std::size_t cap = 4096);

// Entries of a factor over the output variables, laid out along the output
// pattern.
std::vector<double> output_distribution(const Factor& f, const Pattern& output);

struct PathReport {
  std::string name;
  std::vector<double> distribution;
  double max_error = 0;  // against the denote path
  std::size_t max_table = 0;
  std::uint64_t multiply_adds = 0;
};

struct Comparison {
  std::vector<PathReport> paths;
  double max_discrepancy = 0;
  bool ok = false;

  const PathReport& path(const std::string& name) const;
  std::string text() const;
};

// Runs denote, semantics_from_facts, vef and vel on the same closed term.
Comparison compare_paths(const LetTerm& l, std::span<const std::string> order,
                         std::size_t web_cap = kDefaultWebCap);

struct CheckResult {
  std::uint64_t seed = 0;
  std::string check;
  bool ok = false;
  double max_error = 0;
  std::string detail;
};

struct SuiteReport {
  std::vector<CheckResult> results;
  std::size_t instances = 0;

  std::size_t failures() const;
  // One line per result: seed, check, status, max error.
  std::string lines() const;
};

// Every check for one closed positive term: semantic agreement, Facts
// invariants along vel traces, bounds, total mass, order independence.
std::vector<CheckResult> verify_program(const LetTerm& l, std::uint64_t seed);

SuiteReport run_suite(std::span<const GeneratorConfig> configs);

// The elimination orders exercised by the suite, keyed by a label:
// identity, reverse, random, min-degree, subset.
std::vector<std::pair<std::string, std::vector<std::string>>> suite_orders(const LetTerm& l,
                                                                            std::uint64_t seed);

}  // namespace lve
