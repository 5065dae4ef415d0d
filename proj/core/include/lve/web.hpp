#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "lve/syntax.hpp"
#include "lve/types.hpp"

namespace lve {

// An element of a web: a boolean (true is t) or a pair of elements.
// Arrow webs are pairs (input, output).
struct WebElement {
  bool is_pair = false;
  bool value = true;
  std::vector<WebElement> parts;  // two entries for pairs

  static WebElement boolean(bool b) { return WebElement{false, b, {}}; }
  static WebElement pair(WebElement l, WebElement r) {
    return WebElement{true, true, {std::move(l), std::move(r)}};
  }

  std::string str() const;
  friend bool operator==(const WebElement& a, const WebElement& b);
};

// Canonical enumeration: t before f, pairs left-major.
std::vector<WebElement> enumerate_web(const Type& t);
WebElement web_element(const Type& t, std::size_t index);
std::size_t web_index(const Type& t, const WebElement& e);

using Assignment = std::map<std::string, WebElement>;

// Assignments of a variable set, ordered lexicographically with the
// first variable (by name) most significant.
std::vector<Assignment> enumerate_web(const VarSet& vars);
Assignment assignment_at(const VarSet& vars, std::size_t index);

// A mixed-radix layout: an ordered list of named digits.
struct Layout {
  std::vector<std::string> names;
  std::vector<std::size_t> radix;
  std::vector<std::size_t> stride;
  std::size_t total = 1;

  void push(const std::string& name, std::size_t r);
  void finish();
  // Position of name, or npos.
  std::size_t find(const std::string& name) const;
};

Layout layout_of(const VarSet& vars);
// Leaves of a pattern, left to right.
Layout layout_of(const Pattern& p);

// For each index i of src, the sum over names present in both layouts (and
// not listed in skip) of digit_src(i, name) * stride_dst(name).
std::vector<std::size_t> partial_index(const Layout& src, const Layout& dst,
                                       const VarSet* skip = nullptr);

}  // namespace lve
