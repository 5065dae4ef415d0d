#include "lve/network.hpp"

#include <map>
#include <set>

#include "json.hpp"

#include "lve/error.hpp"

namespace lve {

using nlohmann::json;

namespace {

std::vector<double> flatten_cpt(const json& j, const std::string& var) {
  std::vector<double> out;
  if (!j.is_array()) fail(ErrorKind::CptShapeMismatch, "cpt of " + var + " is not an array");
  for (const auto& row : j) {
    if (row.is_array()) {
      for (const auto& x : row) {
        if (!x.is_number()) fail(ErrorKind::CptShapeMismatch, "cpt of " + var + " has a non-number");
        out.push_back(x.get<double>());
      }
    } else if (row.is_number()) {
      out.push_back(row.get<double>());
    } else {
      fail(ErrorKind::CptShapeMismatch, "cpt of " + var + " has a non-number");
    }
  }
  return out;
}

}  // namespace

NetworkFile parse_network_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidNetwork, e.what());
  }
  NetworkFile net;
  try {
    if (doc.contains("variables")) {
      for (const auto& v : doc.at("variables")) {
        if (v.is_string()) {
          net.variables.push_back(v.get<std::string>());
          continue;
        }
        net.variables.push_back(v.at("name").get<std::string>());
        if (v.contains("states") && v.at("states").get<int>() != 2) {
          fail(ErrorKind::InvalidNetwork,
               "variable " + net.variables.back() + " is not boolean; only two states are supported");
        }
      }
    }
    for (const auto& n : doc.at("nodes")) {
      NetworkNode node;
      node.var = n.at("var").get<std::string>();
      if (n.contains("parents")) node.parents = n.at("parents").get<std::vector<std::string>>();
      node.cpt = flatten_cpt(n.at("cpt"), node.var);
      if (n.contains("matrix")) node.matrix = n.at("matrix").get<std::string>();
      net.nodes.push_back(std::move(node));
    }
    if (doc.contains("query")) net.query = doc.at("query").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    fail(ErrorKind::InvalidNetwork, e.what());
  }
  if (net.variables.empty()) {
    for (const auto& n : net.nodes) net.variables.push_back(n.var);
  }
  return net;
}

std::string to_json(const NetworkFile& net) {
  json doc;
  doc["variables"] = json::array();
  for (const auto& v : net.variables) doc["variables"].push_back({{"name", v}});
  doc["nodes"] = json::array();
  for (const auto& n : net.nodes) {
    json node{{"var", n.var}, {"parents", n.parents}};
    json rows = json::array();
    for (std::size_t i = 0; i + 1 < n.cpt.size(); i += 2) rows.push_back({n.cpt[i], n.cpt[i + 1]});
    node["cpt"] = rows;
    if (!n.matrix.empty()) node["matrix"] = n.matrix;
    doc["nodes"].push_back(node);
  }
  doc["query"] = net.query;
  return doc.dump(2) + "\n";
}

std::vector<std::size_t> topological_order(const NetworkFile& net) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < net.nodes.size(); ++i) {
    if (!index.emplace(net.nodes[i].var, i).second) {
      fail(ErrorKind::InvalidNetwork, "variable " + net.nodes[i].var + " has two nodes");
    }
  }
  std::vector<std::size_t> order;
  std::vector<bool> placed(net.nodes.size(), false);
  while (order.size() < net.nodes.size()) {
    bool progress = false;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (const auto& p : net.nodes[i].parents) {
        auto it = index.find(p);
        if (it == index.end()) fail(ErrorKind::InvalidNetwork, "unknown parent " + p);
        if (!placed[it->second]) ready = false;
      }
      if (ready) {
        placed[i] = true;
        order.push_back(i);
        progress = true;
        break;
      }
    }
    if (!progress) fail(ErrorKind::CyclicNetwork, "the parent relation has a cycle");
  }
  return order;
}

Program ingest_network(const NetworkFile& net, bool stochastic_check) {
  std::set<std::string> declared(net.variables.begin(), net.variables.end());
  for (const auto& n : net.nodes) {
    if (!declared.count(n.var)) fail(ErrorKind::InvalidNetwork, "node " + n.var + " is not declared");
  }
  Program prog{{}, {{}, Pattern::leaf(Variable("_"))}};
  for (std::size_t i : topological_order(net)) {
    const auto& n = net.nodes[i];
    std::set<std::string> seen;
    for (const auto& p : n.parents) {
      if (!seen.insert(p).second) fail(ErrorKind::InvalidNetwork, "parent " + p + " repeated");
    }
    std::size_t rows = std::size_t{1} << n.parents.size();
    if (n.cpt.size() != rows * 2) {
      fail(ErrorKind::CptShapeMismatch, "cpt of " + n.var + " needs " + std::to_string(rows * 2) +
                                            " entries, has " + std::to_string(n.cpt.size()));
    }
    std::string name = n.matrix.empty() ? "M_" + n.var : n.matrix;
    auto m = make_matrix(name, std::vector<Type>(n.parents.size(), Type::boolean()),
                         Type::boolean(), n.cpt);
    if (stochastic_check) check_stochastic(*m);
    prog.matrices.push_back(m);
    std::vector<Variable> args;
    for (const auto& p : n.parents) args.emplace_back(p);
    prog.term.defs.push_back({Pattern::leaf(Variable(n.var)), Expr::mat_app(m, args)});
  }
  if (net.query.empty()) fail(ErrorKind::UnknownQueryVariable, "the query is empty");
  std::vector<Variable> q;
  for (const auto& x : net.query) {
    bool found = false;
    for (const auto& n : net.nodes) found = found || n.var == x;
    if (!found) fail(ErrorKind::UnknownQueryVariable, x + " is not a node of the network");
    q.emplace_back(x);
  }
  prog.term.output = Pattern::of(q);
  return prog;
}

}  // namespace lve
