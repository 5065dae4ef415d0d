#include "cli.hpp"

#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lve/denote.hpp"
#include "lve/error.hpp"
#include "lve/facts.hpp"
#include "lve/ordering.hpp"
#include "lve/parser.hpp"
#include "lve/printer.hpp"
#include "lve/rewrite.hpp"
#include "lve/simplify.hpp"
#include "lve/typecheck.hpp"
#include "lve/verify.hpp"

namespace lve::cli {

namespace {

struct Options {
  std::string file;
  std::string order;
  bool no_stochastic_check = false;
  std::uint64_t seed = 1;
  std::size_t web_cap = kDefaultWebCap;
  bool json = false;
  bool emit_term = false;
  bool trace = false;
  bool simplify = false;
  std::string heuristic = "min-degree";
  std::size_t instances = 100;
  std::size_t nodes = 6;
  std::size_t min_nodes = 3;
  std::size_t max_parents = 2;
  std::size_t query_size = 2;
};

// Raised when a verification fails, to exit with kMismatch.
struct Mismatch {
  std::string what;
};

std::vector<std::string> split_order(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Program load(const Options& o) {
  ParseOptions po;
  po.stochastic_check = !o.no_stochastic_check;
  Program p = load_program(o.file, po);
  typecheck(p.term);
  return p;
}

void print_factor(std::ostream& out, std::size_t i, const Factor& f) {
  out << "factor " << i << " over " << f.vars().str() << "\n";
  for (std::size_t k = 0; k < f.size(); ++k) {
    Assignment a = assignment_at(f.vars(), k);
    out << "  ";
    bool first = true;
    for (const auto& v : f.vars()) {
      out << (first ? "" : " ") << v.name << "=" << a.at(v.name).str();
      first = false;
    }
    out << (f.vars().empty() ? "" : "  ") << format_number(f.at(k)) << "\n";
  }
}

void print_factors(std::ostream& out, const FactorSet& g) {
  for (std::size_t i = 0; i < g.size(); ++i) print_factor(out, i + 1, g.items[i]);
}

int cmd_check(const Options& o, std::ostream& out) {
  Program p = load(o);
  const LetTerm& l = p.term;
  out << "type: " << typecheck(l).str() << "\n";
  out << "free variables: " << l.free_vars().str() << "\n";
  out << "definitions: " << l.defs.size() << "\n";
  out << "size: " << l.size() << "\n";
  out << "positive: " << (l.is_positive() ? "yes" : "no") << "\n";
  return kOk;
}

int cmd_denote(const Options& o, std::ostream& out) {
  Program p = load(o);
  CostCounter cost;
  WeightedRelation r = denote(p.term, &cost, o.web_cap);
  auto cols = enumerate_web(r.type);
  if (o.json) {
    nlohmann::json doc;
    doc["type"] = r.type.str();
    doc["rows"] = r.rows.names();
    doc["columns"] = nlohmann::json::array();
    for (const auto& c : cols) doc["columns"].push_back(c.str());
    doc["entries"] = nlohmann::json::array();
    for (std::size_t i = 0; i < r.row_count(); ++i) {
      nlohmann::json row = nlohmann::json::array();
      for (std::size_t c = 0; c < r.col_count(); ++c) row.push_back(r.at(i, c));
      doc["entries"].push_back(row);
    }
    out << doc.dump(2) << "\n";
    return kOk;
  }
  out << "type: " << r.type.str() << "\n";
  for (std::size_t i = 0; i < r.row_count(); ++i) {
    if (!r.rows.empty()) {
      Assignment a = assignment_at(r.rows, i);
      out << "row";
      for (const auto& v : r.rows) out << " " << v.name << "=" << a.at(v.name).str();
      out << "\n";
    }
    for (std::size_t c = 0; c < r.col_count(); ++c) {
      out << "  " << cols[c].str() << "  " << format_number(r.at(i, c)) << "\n";
    }
  }
  return kOk;
}

int cmd_facts(const Options& o, std::ostream& out) {
  Program p = load(o);
  Denoter d(o.web_cap);
  FactorSet g = facts(p.term, d);
  print_factors(out, g);
  if (!facts_varset_check(p.term)) throw Mismatch{"factor variables do not match the term"};
  return kOk;
}

std::vector<std::string> require_order(const Options& o) {
  auto order = split_order(o.order);
  if (o.order.empty()) fail(ErrorKind::UnknownVariable, "--order is required");
  return order;
}

int cmd_vef(const Options& o, std::ostream& out) {
  Program p = load(o);
  auto order = require_order(o);
  Denoter d(o.web_cap);
  FactorSet g = facts(p.term, d);
  g.cost = {};
  std::vector<VefStep> steps;
  FactorSet r = vef(g, order, &steps);
  print_factors(out, r);
  out << "cost\n";
  for (const auto& s : steps) {
    out << "  eliminate " << s.var.name << ": " << s.factors << " factors, product over "
        << s.scope.str() << " (" << s.table << " entries), " << s.multiply_adds
        << " multiply-adds\n";
  }
  out << "max table " << r.cost.max_table << ", multiply-adds " << r.cost.multiply_adds << "\n";
  return kOk;
}

int cmd_vel(const Options& o, std::ostream& out) {
  Program p = load(o);
  auto order = require_order(o);
  VelResult res = vel_seq(p.term, order);
  LetTerm result = o.simplify ? simplify(res.term) : res.term;
  if (o.trace) out << res.trace.serialize();
  if (o.emit_term) {
    out << print_program(Program{p.matrices, result});
  } else {
    out << "steps: " << res.trace.steps.size() << "\n";
    out << "size: " << p.term.size() << " -> " << result.size() << "\n";
    out << "definitions: " << p.term.defs.size() << " -> " << result.defs.size() << "\n";
  }
  return kOk;
}

int cmd_compare(const Options& o, std::ostream& out) {
  Program p = load(o);
  auto order = require_order(o);
  Comparison c = compare_paths(p.term, order, o.web_cap);
  out << c.text();
  if (!c.ok) throw Mismatch{"paths disagree"};
  return kOk;
}

int cmd_cost(const Options& o, std::ostream& out) {
  Program p = load(o);
  auto order = require_order(o);
  FactorSet g = facts(p.term);
  g.cost = {};
  std::vector<VefStep> steps;
  FactorSet r = vef(g, order, &steps);
  out << "variable  factors  table  multiply-adds  bound  term-size\n";
  LetTerm cur = p.term;
  for (const auto& s : steps) {
    cur = vel(cur, s.var.name);
    out << s.var.name << "  " << s.factors << "  " << s.table << "  " << s.multiply_adds << "  "
        << s.bound << "  " << cur.size() << "\n";
  }
  out << "total: max table " << r.cost.max_table << ", multiply-adds " << r.cost.multiply_adds
      << ", term size " << p.term.size() << " -> " << cur.size() << "\n";
  return kOk;
}

int cmd_orderings(const Options& o, std::ostream& out) {
  Program p = load(o);
  auto order = min_degree_order(p.term);
  out << "min-degree (heuristic): ";
  for (std::size_t i = 0; i < order.size(); ++i) out << (i ? "," : "") << order[i];
  out << "\n";
  return kOk;
}

int cmd_suite(const Options& o, std::ostream& out) {
  std::vector<GeneratorConfig> configs;
  for (std::size_t i = 0; i < o.instances; ++i) {
    GeneratorConfig c;
    c.seed = o.seed + i;
    std::size_t span = o.nodes >= o.min_nodes ? o.nodes - o.min_nodes + 1 : 1;
    c.nodes = o.min_nodes + (c.seed % span);
    c.max_parents = o.max_parents;
    c.query_size = o.query_size;
    configs.push_back(c);
  }
  SuiteReport r = run_suite(configs);
  out << r.lines();
  out << r.instances << " instances, " << r.results.size() << " checks, " << r.failures()
      << " failures\n";
  if (r.failures()) throw Mismatch{"suite failures"};
  return kOk;
}

int cmd_generate(const Options& o, std::ostream& out) {
  GeneratorConfig c;
  c.seed = o.seed;
  c.nodes = o.nodes;
  c.max_parents = o.max_parents;
  c.query_size = o.query_size;
  out << to_json(random_network(c));
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact inference on discrete Bayesian networks written as linear let-terms", "lve"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--no-stochastic-check", o.no_stochastic_check,
               "Accept matrices whose rows do not sum to 1");
  app.add_option("--seed", o.seed, "Seed for random orders and generated networks");
  app.add_option("--web-cap", o.web_cap, "Largest relation or factor table allowed");

  auto file_cmd = [&](const std::string& name, const std::string& help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", o.file, "A .lve program or a .json network")->required();
    return c;
  };
  auto* check = file_cmd("check", "Typecheck a program");
  auto* den = file_cmd("denote", "Print the denotation");
  den->add_flag("--json", o.json, "JSON output");
  auto* fac = file_cmd("facts", "Print the factors of the term");
  auto* vefc = file_cmd("vef", "Variable elimination over factors");
  vefc->add_option("--order", o.order, "Comma-separated elimination order")->required();
  auto* velc = file_cmd("vel", "Variable elimination by rewriting the term");
  velc->add_option("--order", o.order, "Comma-separated elimination order")->required();
  velc->add_flag("--emit-term", o.emit_term, "Print the rewritten program");
  velc->add_flag("--trace", o.trace, "Print every rewrite step");
  velc->add_flag("--simplify", o.simplify, "Remove administrative lets from the result");
  auto* cmp = file_cmd("compare", "Cross-check all inference paths");
  cmp->add_option("--order", o.order, "Comma-separated elimination order")->required();
  auto* cost = file_cmd("cost", "Per-variable cost of an elimination order");
  cost->add_option("--order", o.order, "Comma-separated elimination order")->required();
  auto* ord = file_cmd("orderings", "Suggest an elimination order");
  ord->add_option("--heuristic", o.heuristic, "Ordering heuristic")
      ->check(CLI::IsMember({"min-degree"}));
  auto* suite = app.add_subcommand("suite", "Run the randomized verification suite");
  suite->add_option("--instances", o.instances, "Number of random networks");
  suite->add_option("--nodes", o.nodes, "Largest number of nodes");
  suite->add_option("--min-nodes", o.min_nodes, "Smallest number of nodes");
  suite->add_option("--max-parents", o.max_parents, "Parents per node");
  suite->add_option("--query-size", o.query_size, "Minimum query size");
  auto* gen = app.add_subcommand("generate", "Print a random network as JSON");
  gen->add_option("--nodes", o.nodes, "Number of nodes");
  gen->add_option("--max-parents", o.max_parents, "Parents per node");
  gen->add_option("--query-size", o.query_size, "Minimum query size");

  std::vector<std::string> argv_store{"lve"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (den->parsed()) return cmd_denote(o, out);
    if (fac->parsed()) return cmd_facts(o, out);
    if (vefc->parsed()) return cmd_vef(o, out);
    if (velc->parsed()) return cmd_vel(o, out);
    if (cmp->parsed()) return cmd_compare(o, out);
    if (cost->parsed()) return cmd_cost(o, out);
    if (ord->parsed()) return cmd_orderings(o, out);
    if (suite->parsed()) return cmd_suite(o, out);
    if (gen->parsed()) return cmd_generate(o, out);
  } catch (const Mismatch& m) {
    err << "verification failed: " << m.what << "\n";
    return kMismatch;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace lve::cli
