#include "lve/types.hpp"

#include <algorithm>

#include "lve/error.hpp"

namespace lve {

struct Type::Node {
  Kind kind;
  std::vector<Type> children;  // empty for Bool, two entries otherwise
  bool positive;
  std::size_t web;
};

Type::Type() : Type(boolean()) {}

Type::Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Type Type::boolean() {
  static const std::shared_ptr<const Node> node =
      std::make_shared<const Node>(Node{Kind::Bool, {}, true, 2});
  return Type(node);
}

Type Type::tensor(Type left, Type right) {
  if (!left.is_positive()) {
    fail(ErrorKind::InvalidType, "left side of a tensor must be positive: " + left.str());
  }
  bool positive = right.is_positive();
  std::size_t web = left.web_size() * right.web_size();
  return Type(std::make_shared<const Node>(
      Node{Kind::Tensor, {std::move(left), std::move(right)}, positive, web}));
}

Type Type::arrow(Type input, Type result) {
  if (!input.is_positive()) {
    fail(ErrorKind::InvalidType, "input of an arrow must be positive: " + input.str());
  }
  std::size_t web = input.web_size() * result.web_size();
  return Type(std::make_shared<const Node>(
      Node{Kind::Arrow, {std::move(input), std::move(result)}, false, web}));
}

Type::Kind Type::kind() const noexcept { return node_->kind; }

const Type& Type::left() const {
  if (is_bool()) fail(ErrorKind::InvalidType, "Bool has no components");
  return node_->children[0];
}

const Type& Type::right() const {
  if (is_bool()) fail(ErrorKind::InvalidType, "Bool has no components");
  return node_->children[1];
}

bool Type::is_positive() const noexcept { return node_->positive; }

std::size_t Type::web_size() const noexcept { return node_->web; }

std::string Type::str() const {
  switch (kind()) {
    case Kind::Bool:
      return "Bool";
    case Kind::Tensor: {
      std::string l = left().str();
      std::string r = right().str();
      if (left().is_tensor()) l = "(" + l + ")";
      if (right().is_arrow()) r = "(" + r + ")";
      return l + " * " + r;
    }
    case Kind::Arrow: {
      std::string in = left().str();
      if (left().is_tensor()) in = "(" + in + ")";
      return in + " -o " + right().str();
    }
  }
  return {};
}

bool operator==(const Type& a, const Type& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.web_size() != b.web_size()) return false;
  if (a.is_bool()) return true;
  return a.left() == b.left() && a.right() == b.right();
}

std::size_t dim(const Type& t) {
  if (!t.is_positive()) fail(ErrorKind::InvalidType, "dim of a non-positive type " + t.str());
  return t.web_size();
}

std::size_t ht(const Type& t) {
  switch (t.kind()) {
    case Type::Kind::Bool:
      return 1;
    case Type::Kind::Tensor:
      return t.is_positive() ? 1 : ht(t.right());
    case Type::Kind::Arrow:
      return dim(t.left()) * ht(t.right());
  }
  return 1;
}

Type tensor_of(const std::vector<Type>& parts) {
  if (parts.empty()) fail(ErrorKind::InvalidType, "empty tensor");
  Type acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Type::tensor(parts[i], acc);
  return acc;
}

namespace {

bool by_name(const Variable& a, const Variable& b) { return a.name < b.name; }

void conflict(const Variable& a, const Variable& b) {
  fail(ErrorKind::InconsistentVariableType,
       "variable " + a.name + " used at types " + a.type.str() + " and " + b.type.str());
}

}  // namespace

VarSet::VarSet(std::initializer_list<Variable> vars) : VarSet(std::vector<Variable>(vars)) {}

VarSet::VarSet(const std::vector<Variable>& vars) {
  for (const auto& v : vars) insert(v);
}

const Variable* VarSet::find(std::string_view name) const {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), name,
                             [](const Variable& v, std::string_view n) { return v.name < n; });
  if (it != vars_.end() && it->name == name) return &*it;
  return nullptr;
}

bool VarSet::contains(std::string_view name) const { return find(name) != nullptr; }

void VarSet::insert(const Variable& v) {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), v, by_name);
  if (it != vars_.end() && it->name == v.name) {
    if (it->type != v.type) conflict(*it, v);
    return;
  }
  vars_.insert(it, v);
}

void VarSet::erase(std::string_view name) {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), name,
                             [](const Variable& v, std::string_view n) { return v.name < n; });
  if (it != vars_.end() && it->name == name) vars_.erase(it);
}

bool VarSet::intersects(const VarSet& other) const {
  for (const auto& v : vars_) {
    if (other.contains(v.name)) return true;
  }
  return false;
}

bool VarSet::subset_of(const VarSet& other) const {
  for (const auto& v : vars_) {
    if (!other.contains(v.name)) return false;
  }
  return true;
}

VarSet VarSet::positive() const {
  VarSet out;
  for (const auto& v : vars_) {
    if (v.is_positive()) out.vars_.push_back(v);
  }
  return out;
}

VarSet VarSet::arrows() const {
  VarSet out;
  for (const auto& v : vars_) {
    if (!v.is_positive()) out.vars_.push_back(v);
  }
  return out;
}

std::vector<std::string> VarSet::names() const {
  std::vector<std::string> out;
  out.reserve(vars_.size());
  for (const auto& v : vars_) out.push_back(v.name);
  return out;
}

std::size_t VarSet::web_size() const {
  std::size_t n = 1;
  for (const auto& v : vars_) n *= v.type.web_size();
  return n;
}

std::string VarSet::str() const {
  std::string out = "{";
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += ", ";
    out += vars_[i].name;
  }
  return out + "}";
}

VarSet operator|(const VarSet& a, const VarSet& b) {
  VarSet out;
  out.vars_.reserve(a.size() + b.size());
  auto i = a.vars_.begin();
  auto j = b.vars_.begin();
  while (i != a.vars_.end() || j != b.vars_.end()) {
    if (j == b.vars_.end() || (i != a.vars_.end() && i->name < j->name)) {
      out.vars_.push_back(*i++);
    } else if (i == a.vars_.end() || j->name < i->name) {
      out.vars_.push_back(*j++);
    } else {
      if (i->type != j->type) conflict(*i, *j);
      out.vars_.push_back(*i++);
      ++j;
    }
  }
  return out;
}

VarSet operator&(const VarSet& a, const VarSet& b) {
  VarSet out;
  for (const auto& v : a.vars_) {
    if (b.contains(v.name)) out.vars_.push_back(v);
  }
  return out;
}

VarSet operator-(const VarSet& a, const VarSet& b) {
  VarSet out;
  for (const auto& v : a.vars_) {
    if (!b.contains(v.name)) out.vars_.push_back(v);
  }
  return out;
}

}  // namespace lve
