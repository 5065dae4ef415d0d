#include "lve/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "lve/denote.hpp"
#include "lve/error.hpp"
#include "lve/facts.hpp"
#include "lve/ordering.hpp"
#include "lve/rewrite.hpp"
#include "lve/simplify.hpp"
#include "lve/typecheck.hpp"

namespace lve {

// ---------------------------------------------------------------- generator

NetworkFile random_network(const GeneratorConfig& cfg) {
  if (cfg.nodes == 0) fail(ErrorKind::InvalidNetwork, "a network needs at least one node");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::gamma_distribution<double> gamma(cfg.dirichlet_alpha, 1.0);

  NetworkFile net;
  const std::size_t n = cfg.nodes;
  std::vector<std::vector<std::size_t>> parents(n);
  std::vector<bool> has_child(n, false);
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::size_t> ps;
    if (cfg.max_parents > 0 && unit(rng) < 0.85) {
      ps.push_back(std::uniform_int_distribution<std::size_t>(0, i - 1)(rng));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (ps.size() >= cfg.max_parents) break;
      if (std::find(ps.begin(), ps.end(), j) != ps.end()) continue;
      if (unit(rng) < cfg.p_extra_edge) ps.push_back(j);
    }
    std::sort(ps.begin(), ps.end());
    for (auto p : ps) has_child[p] = true;
    parents[i] = std::move(ps);
  }

  for (std::size_t i = 0; i < n; ++i) {
    NetworkNode node;
    node.var = "x" + std::to_string(i + 1);
    node.matrix = "M" + std::to_string(i + 1);
    for (auto p : parents[i]) node.parents.push_back("x" + std::to_string(p + 1));
    const std::size_t rows = std::size_t{1} << parents[i].size();
    for (std::size_t r = 0; r < rows; ++r) {
      double a = gamma(rng), b = gamma(rng);
      double t = std::round(a / (a + b) * 1e6) / 1e6;
      double f = std::round(b / (a + b) * 1e6) / 1e6;
      double s = t + f;
      node.cpt.push_back(t / s);
      node.cpt.push_back(f / s);
    }
    net.variables.push_back(node.var);
    net.nodes.push_back(std::move(node));
  }

  std::vector<bool> in_query(n, false);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!has_child[i]) {
      in_query[i] = true;
      ++count;
    }
  }
  std::vector<std::size_t> others;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_query[i]) others.push_back(i);
  }
  std::shuffle(others.begin(), others.end(), rng);
  for (std::size_t k = 0; k < others.size() && count < cfg.query_size; ++k, ++count) {
    in_query[others[k]] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (in_query[i]) net.query.push_back("x" + std::to_string(i + 1));
  }
  return net;
}

// --------------------------------------------------------------- brute force

std::vector<double> brute_force_joint(const LetTerm& l, std::size_t cap) {
  if (!l.free_vars().empty()) fail(ErrorKind::NotClosed, "brute force needs a closed term");
  VarSet defined;
  std::vector<std::optional<Pattern>> alias;
  for (const auto& d : l.defs) {
    alias.push_back(as_pattern(d.bound));
    bool ok = d.binder.is_positive() &&
              (d.bound.kind() == Expr::Kind::MatApp || (alias.back() && alias.back()->is_positive()));
    if (!ok) fail(ErrorKind::NotLetTerm, "brute force needs definitions p = M(args) or p = q");
    defined = defined | d.binder.vars();
  }
  if (defined.web_size() > cap) {
    fail(ErrorKind::WebCapExceeded, "joint over " + defined.str() + " is too large");
  }
  const Layout all = layout_of(defined);
  std::vector<std::vector<std::size_t>> arg_index, val_index;
  for (std::size_t k = 0; k < l.defs.size(); ++k) {
    const auto& d = l.defs[k];
    if (alias[k]) {
      arg_index.push_back(partial_index(all, layout_of(*alias[k])));
    } else {
      Layout slots;
      for (const auto& a : d.bound.args()) slots.push(a.name, a.type.web_size());
      slots.finish();
      arg_index.push_back(partial_index(all, slots));
    }
    val_index.push_back(partial_index(all, layout_of(d.binder)));
  }
  auto out_index = partial_index(all, layout_of(l.output));
  std::vector<double> out(l.output.type().web_size(), 0.0);
  for (std::size_t i = 0; i < all.total; ++i) {
    double w = 1.0;
    for (std::size_t k = 0; k < l.defs.size() && w != 0.0; ++k) {
      if (alias[k]) {
        w = arg_index[k][i] == val_index[k][i] ? w : 0.0;
      } else {
        w *= l.defs[k].bound.matrix()->at(arg_index[k][i], val_index[k][i]);
      }
    }
    out[out_index[i]] += w;
  }
  return out;
}

std::vector<double> output_distribution(const Factor& f, const Pattern& output) {
  const Layout olay = layout_of(output);
  auto idx = partial_index(olay, layout_of(f.vars()));
  std::vector<double> out(olay.total);
  for (std::size_t i = 0; i < olay.total; ++i) out[i] = f.at(idx[i]);
  return out;
}

// ------------------------------------------------------------------ compare

namespace {

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace

const PathReport& Comparison::path(const std::string& name) const {
  for (const auto& p : paths) {
    if (p.name == name) return p;
  }
  fail(ErrorKind::UnknownVariable, "no path named " + name);
}

std::string Comparison::text() const {
  std::ostringstream os;
  for (const auto& p : paths) {
    os << "path " << p.name << ": max_error " << fmt(p.max_error) << ", max_table " << p.max_table
       << ", multiply_adds " << p.multiply_adds << "\n";
  }
  os << "max discrepancy " << fmt(max_discrepancy) << (ok ? " (agree)" : " (MISMATCH)") << "\n";
  return os.str();
}

Comparison compare_paths(const LetTerm& l, std::span<const std::string> order,
                         std::size_t web_cap) {
  typecheck(l);
  if (!l.free_vars().empty()) fail(ErrorKind::NotClosed, "compare needs a closed term");
  Comparison cmp;
  const VarSet out_vars = l.output.vars();

  {
    Denoter d(web_cap);
    auto rel = d.denote(l.to_expr());
    cmp.paths.push_back({"denote", rel->entries, 0, d.cost().max_table, d.cost().multiply_adds});
  }
  {
    CostCounter cost;
    auto rel = semantics_from_facts(l, &cost);
    cmp.paths.push_back({"facts", rel.entries, 0, cost.max_table, cost.multiply_adds});
  }
  {
    FactorSet g = facts(l);
    g.cost = {};
    FactorSet r = vef(g, order);
    CostCounter cost = r.cost;
    Factor m = marginal(r, out_vars, &cost);
    cmp.paths.push_back(
        {"vef", output_distribution(m, l.output), 0, cost.max_table, cost.multiply_adds});
  }
  {
    auto res = vel_seq(l, order);
    Denoter d(web_cap);
    FactorSet g = facts(res.term, d);
    CostCounter cost = d.cost();
    cost.multiply_adds += g.cost.multiply_adds;
    cost.table(g.cost.max_table);
    Factor m = marginal(g, out_vars, &cost);
    cmp.paths.push_back(
        {"vel", output_distribution(m, l.output), 0, cost.max_table, cost.multiply_adds});
  }
  const auto& ref = cmp.paths.front().distribution;
  for (auto& p : cmp.paths) {
    p.max_error = max_abs_diff(p.distribution, ref);
    cmp.max_discrepancy = std::max(cmp.max_discrepancy, p.max_error);
  }
  cmp.ok = cmp.max_discrepancy <= kTolerance;
  return cmp;
}

// -------------------------------------------------------------------- suite

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& r : results) n += r.ok ? 0 : 1;
  return n;
}

std::string SuiteReport::lines() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << "seed=" << r.seed << " check=" << r.check << " status=" << (r.ok ? "PASS" : "FAIL")
       << " max_error=" << fmt(r.max_error);
    if (!r.ok && !r.detail.empty()) os << " detail=\"" << r.detail << "\"";
    os << "\n";
  }
  return os.str();
}

std::vector<std::pair<std::string, std::vector<std::string>>> suite_orders(const LetTerm& l,
                                                                            std::uint64_t seed) {
  auto identity = eliminable_variables(l);
  auto reverse = identity;
  std::reverse(reverse.begin(), reverse.end());
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 17);
  auto random = identity;
  std::shuffle(random.begin(), random.end(), rng);
  auto subset = identity;
  std::shuffle(subset.begin(), subset.end(), rng);
  if (!subset.empty()) {
    subset.resize(std::uniform_int_distribution<std::size_t>(1, subset.size())(rng));
  }
  return {{"identity", identity},
          {"reverse", reverse},
          {"random", random},
          {"min-degree", min_degree_order(l)},
          {"subset", subset}};
}

namespace {

struct Checker {
  std::uint64_t seed;
  std::vector<CheckResult> out;

  void add(const std::string& name, bool ok, double err = 0, const std::string& detail = {}) {
    out.push_back({seed, name, ok, err, detail});
  }

  template <class F>
  void guarded(const std::string& name, F body) {
    try {
      body();
    } catch (const std::exception& e) {
      add(name, false, 0, e.what());
    }
  }
};

std::vector<double> marginal_of(const FactorSet& g, const Pattern& output) {
  return output_distribution(marginal(g, output.vars()), output);
}

// Checks along one vel_seq run. Returns the output distribution from the
// factors of the final term.
std::vector<double> check_order(Checker& c, const LetTerm& l, const std::string& label,
                                const std::vector<std::string>& order,
                                const std::vector<double>& expected, Denoter& den) {
  const Type type = typecheck(l);
  const VarSet fv = l.free_vars();
  const auto reference = den.denote(l.to_expr());

  bool steps_ok = true, swap_ok = true, thm_ok = true, step_bound_ok = true, size_ok = true;
  double sem_err = 0, swap_err = 0;
  std::string detail;
  LetTerm cur = l;
  FactorSet cur_facts = facts(cur, den);
  for (const auto& x : order) {
    Trace trace;
    const std::size_t bound = size_bound(cur, x);
    LetTerm next = vel(cur, x, &trace);
    if (trace.steps.size() > cur.defs.size()) {
      step_bound_ok = false;
      detail = "vel " + x + " took " + std::to_string(trace.steps.size()) + " steps";
    }
    if (next.size() > bound) {
      size_ok = false;
      detail = "vel " + x + " has size " + std::to_string(next.size()) + " > " +
               std::to_string(bound);
    }
    for (const auto& s : trace.steps) {
      if (typecheck(s.after) != type || s.after.free_vars() != fv) steps_ok = false;
      double e = max_difference(*den.denote(s.after.to_expr()), *reference);
      sem_err = std::max(sem_err, e);
      if (e > kTolerance) steps_ok = false;
      if (is_swap(s.rule)) {
        std::string why;
        if (!factor_sets_equal(facts(s.before, den), facts(s.after, den), kTolerance, &why)) {
          swap_ok = false;
          detail = std::string(to_string(s.rule)) + ": " + why;
        }
      }
    }
    FactorSet next_facts = facts(next, den);
    std::vector<std::string> one{x};
    std::string why;
    if (!factor_sets_equal(next_facts, vef(cur_facts, one), kTolerance, &why)) {
      thm_ok = false;
      detail = "eliminating " + x + ": " + why;
    }
    cur = std::move(next);
    cur_facts = std::move(next_facts);
  }
  c.add("steps-typed-and-sound/" + label, steps_ok, sem_err, detail);
  c.add("swap-facts-invariant/" + label, swap_ok, swap_err, detail);
  c.add("single-elimination-facts/" + label, thm_ok, 0, detail);
  c.add("step-bound/" + label, step_bound_ok, 0, detail);
  c.add("size-bound/" + label, size_ok, 0, detail);

  std::string why;
  const FactorSet via_vef = vef(facts(l, den), order);
  c.add("sequence-facts/" + label, factor_sets_equal(cur_facts, via_vef, kTolerance, &why), 0, why);
  c.add("varset/" + label, facts_varset_check(cur));

  auto vel_dist = marginal_of(cur_facts, l.output);
  double err = max_abs_diff(vel_dist, expected);
  c.add("vel-marginal/" + label, err <= kTolerance, err);
  auto vef_dist = marginal_of(via_vef, l.output);
  err = max_abs_diff(vef_dist, expected);
  c.add("vef-marginal/" + label, err <= kTolerance, err);

  bool mass_ok = true;
  double mass_err = 0;
  for (const auto& d : cur.defs) {
    if (!d.bound.free_vars().empty()) continue;
    auto m = total_mass_check(d.bound);
    mass_err = std::max(mass_err, std::abs(m.mass - m.expected));
    mass_ok = mass_ok && m.ok;
  }
  c.add("definition-mass/" + label, mass_ok, mass_err);

  LetTerm simple = simplify(cur);
  typecheck(simple);
  err = max_difference(*den.denote(simple.to_expr()), *reference);
  c.add("simplify-sound/" + label, err <= kTolerance, err);
  return vel_dist;
}

}  // namespace

std::vector<CheckResult> verify_program(const LetTerm& l, std::uint64_t seed) {
  Checker c{seed, {}};
  Denoter den;
  std::vector<double> expected;
  bool ready = false;
  c.guarded("semantics", [&] {
    typecheck(l);
    expected = brute_force_joint(l);
    auto d = den.denote(l.to_expr())->entries;
    double err = max_abs_diff(d, expected);
    c.add("denote=brute-force", err <= kTolerance, err);
    auto f = semantics_from_facts(l).entries;
    double err2 = max_abs_diff(f, expected);
    c.add("facts-semantics=brute-force", err2 <= kTolerance, err2);
    auto m = total_mass_check(l.to_expr());
    c.add("total-mass", m.ok, std::abs(m.mass - m.expected));
    c.add("varset", facts_varset_check(l));
    ready = true;
  });
  if (!ready) return c.out;

  std::vector<std::vector<double>> full;
  for (const auto& [label, order] : suite_orders(l, seed)) {
    c.guarded("order/" + label, [&, label = label, order = order] {
      auto dist = check_order(c, l, label, order, expected, den);
      if (label != "subset") full.push_back(std::move(dist));
    });
  }
  double spread = 0;
  for (const auto& d : full) spread = std::max(spread, max_abs_diff(d, full.front()));
  c.add("order-independence", spread <= kTolerance, spread);
  return c.out;
}

SuiteReport run_suite(std::span<const GeneratorConfig> configs) {
  SuiteReport report;
  for (const auto& cfg : configs) {
    Program p = ingest_network(random_network(cfg));
    auto rs = verify_program(p.term, cfg.seed);
    report.results.insert(report.results.end(), rs.begin(), rs.end());
    ++report.instances;
  }
  std::stable_sort(report.results.begin(), report.results.end(),
                   [](const CheckResult& a, const CheckResult& b) { return a.seed < b.seed; });
  return report;
}

}  // namespace lve
