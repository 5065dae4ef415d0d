#include "lve/web.hpp"

#include "lve/error.hpp"

namespace lve {

std::string WebElement::str() const {
  if (!is_pair) return value ? "t" : "f";
  return "(" + parts[0].str() + ", " + parts[1].str() + ")";
}

bool operator==(const WebElement& a, const WebElement& b) {
  if (a.is_pair != b.is_pair) return false;
  if (!a.is_pair) return a.value == b.value;
  return a.parts == b.parts;
}

WebElement web_element(const Type& t, std::size_t index) {
  if (index >= t.web_size()) fail(ErrorKind::InvalidType, "web index out of range for " + t.str());
  if (t.is_bool()) return WebElement::boolean(index == 0);
  std::size_t r = t.right().web_size();
  return WebElement::pair(web_element(t.left(), index / r), web_element(t.right(), index % r));
}

std::size_t web_index(const Type& t, const WebElement& e) {
  if (t.is_bool()) {
    if (e.is_pair) fail(ErrorKind::InvalidType, "pair given for Bool");
    return e.value ? 0 : 1;
  }
  if (!e.is_pair) fail(ErrorKind::InvalidType, "boolean given for " + t.str());
  return web_index(t.left(), e.parts[0]) * t.right().web_size() + web_index(t.right(), e.parts[1]);
}

std::vector<WebElement> enumerate_web(const Type& t) {
  std::vector<WebElement> out;
  out.reserve(t.web_size());
  for (std::size_t i = 0; i < t.web_size(); ++i) out.push_back(web_element(t, i));
  return out;
}

Assignment assignment_at(const VarSet& vars, std::size_t index) {
  Assignment a;
  for (std::size_t i = vars.size(); i-- > 0;) {
    std::size_t r = vars[i].type.web_size();
    a.emplace(vars[i].name, web_element(vars[i].type, index % r));
    index /= r;
  }
  return a;
}

std::vector<Assignment> enumerate_web(const VarSet& vars) {
  std::vector<Assignment> out;
  std::size_t n = vars.web_size();
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(assignment_at(vars, i));
  return out;
}

void Layout::push(const std::string& name, std::size_t r) {
  names.push_back(name);
  radix.push_back(r);
}

void Layout::finish() {
  stride.assign(names.size(), 1);
  total = 1;
  for (std::size_t i = names.size(); i-- > 0;) {
    stride[i] = total;
    total *= radix[i];
  }
}

std::size_t Layout::find(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  return static_cast<std::size_t>(-1);
}

Layout layout_of(const VarSet& vars) {
  Layout l;
  for (const auto& v : vars) l.push(v.name, v.type.web_size());
  l.finish();
  return l;
}

Layout layout_of(const Pattern& p) {
  Layout l;
  for (const auto& v : p.leaves()) l.push(v.name, v.type.web_size());
  l.finish();
  return l;
}

std::vector<std::size_t> partial_index(const Layout& src, const Layout& dst, const VarSet* skip) {
  const std::size_t k = src.names.size();
  std::vector<std::size_t> weight(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (skip && skip->contains(src.names[i])) continue;
    std::size_t j = dst.find(src.names[i]);
    if (j != static_cast<std::size_t>(-1)) weight[i] = dst.stride[j];
  }
  std::vector<std::size_t> out(src.total, 0);
  std::vector<std::size_t> digit(k, 0);
  std::size_t acc = 0;
  for (std::size_t idx = 0; idx < src.total; ++idx) {
    out[idx] = acc;
    // odometer increment, last digit fastest
    for (std::size_t d = k; d-- > 0;) {
      acc += weight[d];
      if (++digit[d] < src.radix[d]) break;
      acc -= weight[d] * digit[d];
      digit[d] = 0;
    }
  }
  return out;
}

}  // namespace lve
