#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lve/program.hpp"

namespace lve {

// A Bayesian network over boolean variables. Each node's table has one row
// per assignment of its parents (first parent most significant, t before
// f) and two columns (t, f).
struct NetworkNode {
  std::string var;
  std::vector<std::string> parents;
  std::vector<double> cpt;  // row-major
  std::string matrix;       // name of the generated matrix; empty means M_<var>
};

struct NetworkFile {
  std::vector<std::string> variables;
  std::vector<NetworkNode> nodes;
  std::vector<std::string> query;
};

NetworkFile parse_network_json(std::string_view text);
std::string to_json(const NetworkFile& net);

// One definition x = M_x(parents) per node in topological order, output the
// right-nested tuple of the query variables.
Program ingest_network(const NetworkFile& net, bool stochastic_check = true);

// Node order such that parents come first (stable with respect to the file).
std::vector<std::size_t> topological_order(const NetworkFile& net);

}  // namespace lve
