#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace lve {

// Types of the calculus: Bool, P * T (left side positive) and P -o T.
// A type is positive when it contains no arrow.
class Type {
 public:
  enum class Kind { Bool, Tensor, Arrow };

  Type();  // Bool

  static Type boolean();
  static Type tensor(Type left, Type right);
  static Type arrow(Type input, Type result);

  Kind kind() const noexcept;
  bool is_bool() const noexcept { return kind() == Kind::Bool; }
  bool is_tensor() const noexcept { return kind() == Kind::Tensor; }
  bool is_arrow() const noexcept { return kind() == Kind::Arrow; }

  // Tensor: left component. Arrow: input type.
  const Type& left() const;
  // Tensor: right component. Arrow: result type.
  const Type& right() const;

  bool is_positive() const noexcept;

  // Cardinality of the web. Bool has web {t, f}; pairs and arrows are
  // products, enumerated left-major.
  std::size_t web_size() const noexcept;

  std::string str() const;

  friend bool operator==(const Type& a, const Type& b);
  friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// dim(P) for positive P: the web size.
std::size_t dim(const Type& t);
// ht(T): 1 for positive, dim(P) * ht(T') for P -o T', ht(T') for P * T'.
std::size_t ht(const Type& t);

// Right-nested tensor of the given types; a single type is returned as is.
Type tensor_of(const std::vector<Type>& parts);

struct Variable {
  std::string name;
  Type type;

  Variable() = default;
  Variable(std::string n, Type t = Type::boolean()) : name(std::move(n)), type(std::move(t)) {}

  bool is_positive() const { return type.is_positive(); }

  friend bool operator==(const Variable& a, const Variable& b) {
    return a.name == b.name && a.type == b.type;
  }
  friend bool operator!=(const Variable& a, const Variable& b) { return !(a == b); }
};

// A set of variables ordered by name. Two variables of the same name but
// different types cannot coexist.
class VarSet {
 public:
  VarSet() = default;
  VarSet(std::initializer_list<Variable> vars);
  explicit VarSet(const std::vector<Variable>& vars);

  bool contains(std::string_view name) const;
  const Variable* find(std::string_view name) const;
  void insert(const Variable& v);
  void erase(std::string_view name);

  std::size_t size() const noexcept { return vars_.size(); }
  bool empty() const noexcept { return vars_.empty(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  auto begin() const { return vars_.begin(); }
  auto end() const { return vars_.end(); }
  const std::vector<Variable>& items() const noexcept { return vars_; }

  bool intersects(const VarSet& other) const;
  bool subset_of(const VarSet& other) const;
  VarSet positive() const;
  VarSet arrows() const;
  std::vector<std::string> names() const;

  // Product of the web sizes (1 for the empty set).
  std::size_t web_size() const;

  std::string str() const;

  friend VarSet operator|(const VarSet& a, const VarSet& b);
  friend VarSet operator&(const VarSet& a, const VarSet& b);
  friend VarSet operator-(const VarSet& a, const VarSet& b);
  friend bool operator==(const VarSet& a, const VarSet& b) { return a.vars_ == b.vars_; }
  friend bool operator!=(const VarSet& a, const VarSet& b) { return !(a == b); }

 private:
  std::vector<Variable> vars_;
};

}  // namespace lve
