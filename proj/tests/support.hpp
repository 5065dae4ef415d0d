#pragma once

#include <cmath>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "lve/error.hpp"
#include "lve/parser.hpp"
#include "lve/program.hpp"

namespace support {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(LVE_FIXTURES_DIR) / name;
}

// Six-node network x1..x6 queried on (x3, x6).
inline lve::Program chain6() { return lve::load_program(fixture("chain6.lve")); }

// The term reached after eliminating x1, x2, x4, x5 in turn. These files
// only declare their arrow variables; matrices come from chain6.lve.
inline lve::LetTerm chain6_after(const std::string& var) {
  lve::ParseOptions opt;
  opt.matrices = chain6().matrices;
  return lve::parse_program(lve::read_file(fixture("chain6_elim_" + var + ".lve")), opt).term;
}

inline lve::MatrixRef matrix(const lve::Program& p, const std::string& name) {
  for (const auto& m : p.matrices)
    if (m->name == name) return m;
  return nullptr;
}

inline lve::Program parse(const std::string& text) { return lve::parse_program(text); }

// Kind of the lve::Error thrown by fn, or nothing if it returns.
inline std::string error_kind(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const lve::Error& e) {
    return std::string(lve::to_string(e.kind()));
  }
  return "none";
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) return 1e300;
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace support
