#include "lve/parser.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "lve/error.hpp"
#include "lve/network.hpp"

namespace lve {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#' || (c == '/' && peek(1) == '/')) {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        return;
      }
    }
  }

  char peek(std::size_t k) const { return pos_ + k < src_.size() ? src_[pos_ + k] : '\0'; }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token next() {
    const int line = line_, col = col_;
    const char c = src_[pos_];
    auto is_digit = [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)) != 0; };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_' ||
              src_[pos_] == '\'')) {
        s += src_[pos_];
        advance();
      }
      return {Tok::Ident, s, line, col};
    }
    if (is_digit(c) || (c == '.' && is_digit(peek(1))) ||
        ((c == '-' || c == '+') && (is_digit(peek(1)) || peek(1) == '.'))) {
      std::string s;
      s += c;
      advance();
      while (pos_ < src_.size()) {
        char d = src_[pos_];
        if (is_digit(d) || d == '.') {
          s += d;
          advance();
        } else if ((d == 'e' || d == 'E') &&
                   (is_digit(peek(1)) || ((peek(1) == '-' || peek(1) == '+') && is_digit(peek(2))))) {
          s += d;
          advance();
          s += src_[pos_];
          advance();
        } else {
          break;
        }
      }
      return {Tok::Number, s, line, col};
    }
    if (c == '-' && (peek(1) == '>' || peek(1) == 'o')) {
      std::string s{c, peek(1)};
      advance();
      advance();
      return {Tok::Punct, s, line, col};
    }
    if (std::string_view("()[],;=:*\\.").find(c) != std::string_view::npos) {
      advance();
      return {Tok::Punct, std::string(1, c), line, col};
    }
    throw SourceError(ErrorKind::SyntaxError, std::string("unexpected character '") + c + "'", line,
                      col);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const ParseOptions& opts) : toks_(std::move(toks)), opts_(opts) {
    for (const auto& m : opts.matrices) matrices_[m->name] = m;
    vars_ = opts.variables;
  }

  Program program() {
    std::vector<MatrixRef> declared;
    for (;;) {
      if (is_ident("matrix")) {
        declared.push_back(matrix_decl());
      } else if (is_ident("var")) {
        var_decl();
      } else {
        break;
      }
    }
    LetTerm term = let_term();
    expect_end();
    return Program{std::move(declared), std::move(term)};
  }

  Type type_only() {
    Type t = type();
    expect_end();
    return t;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& ahead(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  [[noreturn]] void error(const std::string& msg, ErrorKind kind = ErrorKind::SyntaxError) const {
    throw SourceError(kind, msg, cur().line, cur().column);
  }

  std::string describe() const {
    return cur().kind == Tok::End ? "end of input" : "'" + cur().text + "'";
  }

  bool is_punct(std::string_view p) const { return cur().kind == Tok::Punct && cur().text == p; }
  bool is_ident(std::string_view s) const { return cur().kind == Tok::Ident && cur().text == s; }

  bool accept(std::string_view p) {
    if (!is_punct(p)) return false;
    ++pos_;
    return true;
  }

  void expect(std::string_view p) {
    if (!accept(p)) error("expected '" + std::string(p) + "', found " + describe());
  }

  void expect_end() {
    if (cur().kind != Tok::End) error("unexpected " + describe());
  }

  std::string ident() {
    if (cur().kind != Tok::Ident) error("expected an identifier, found " + describe());
    if (cur().text == "let" || cur().text == "in" || cur().text == "matrix" || cur().text == "var") {
      error("unexpected keyword '" + cur().text + "'");
    }
    return toks_[pos_++].text;
  }

  double number() {
    if (cur().kind != Tok::Number) error("expected a number, found " + describe());
    return std::stod(toks_[pos_++].text);
  }

  // type := tensor ('-o' type)?   tensor := atom ('*' tensor)?
  Type type() {
    Type left = tensor();
    if (accept("-o")) {
      const Token at = cur();
      Type right = type();
      if (!left.is_positive()) {
        throw SourceError(ErrorKind::InvalidType, "arrow input must be positive", at.line,
                          at.column);
      }
      return Type::arrow(left, right);
    }
    return left;
  }

  Type tensor() {
    const Token at = cur();
    Type left = atom_type();
    if (accept("*")) {
      Type right = tensor();
      if (!left.is_positive()) {
        throw SourceError(ErrorKind::InvalidType, "left side of a tensor must be positive",
                          at.line, at.column);
      }
      return Type::tensor(left, right);
    }
    return left;
  }

  Type atom_type() {
    if (accept("(")) {
      Type t = type();
      expect(")");
      return t;
    }
    if (is_ident("Bool")) {
      ++pos_;
      return Type::boolean();
    }
    error("expected a type, found " + describe());
  }

  // Index of the ')' matching the '(' at the current position.
  std::size_t matching_paren() const {
    int depth = 0;
    for (std::size_t i = pos_; i < toks_.size(); ++i) {
      if (toks_[i].kind != Tok::Punct) continue;
      if (toks_[i].text == "(") ++depth;
      if (toks_[i].text == ")" && --depth == 0) return i;
    }
    return toks_.size() - 1;
  }

  std::vector<Type> slot_list() {
    std::vector<Type> slots;
    if (is_punct("->") || is_punct(")")) return slots;
    slots.push_back(atom_type());
    while (accept("*")) slots.push_back(atom_type());
    return slots;
  }

  MatrixRef matrix_decl() {
    const Token at = cur();
    ++pos_;  // matrix
    std::string name = ident();
    if (matrices_.count(name)) error("matrix " + name + " declared twice");
    expect(":");
    std::vector<Type> slots;
    if (is_punct("(")) {
      std::size_t close = matching_paren();
      if (close + 1 < toks_.size() && toks_[close + 1].kind == Tok::Punct &&
          toks_[close + 1].text == "->") {
        ++pos_;
        slots = slot_list();
        expect(")");
      } else {
        slots = slot_list();
      }
    } else {
      slots = slot_list();
    }
    expect("->");
    Type out = type();
    expect("=");
    expect("[");
    std::vector<double> entries;
    if (!is_punct("]")) {
      entries.push_back(number());
      while (accept(",") || accept(";")) entries.push_back(number());
    }
    expect("]");
    expect(";");
    MatrixRef m;
    try {
      m = make_matrix(name, slots, out, std::move(entries));
      if (opts_.stochastic_check) check_stochastic(*m);
    } catch (const Error& e) {
      throw SourceError(e.kind(), e.what(), at.line, at.column);
    }
    matrices_[name] = m;
    return m;
  }

  void var_decl() {
    ++pos_;  // var
    std::vector<std::string> names{ident()};
    while (accept(",")) names.push_back(ident());
    expect(":");
    Type t = type();
    expect(";");
    for (const auto& n : names) vars_[n] = t;
  }

  Variable variable(const std::string& name) const {
    auto it = vars_.find(name);
    return Variable(name, it == vars_.end() ? Type::boolean() : it->second);
  }

  // pattern := ident | '(' pattern (',' pattern)+ ')'
  Pattern pattern() {
    const Token at = cur();
    try {
      if (accept("(")) {
        std::vector<Pattern> parts{pattern()};
        while (accept(",")) parts.push_back(pattern());
        expect(")");
        if (parts.size() == 1) return parts[0];
        return nest(parts);
      }
      return Pattern::leaf(variable(ident()));
    } catch (const SourceError&) {
      throw;
    } catch (const Error& e) {
      throw SourceError(e.kind(), e.what(), at.line, at.column);
    }
  }

  static Pattern nest(const std::vector<Pattern>& parts) {
    Pattern acc = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Pattern::pair(parts[i], acc);
    return acc;
  }

  // let_term := (def ';')* [def] 'in' pattern | pattern
  // def := pattern '=' expr | 'let' pattern '=' expr
  LetTerm let_term() {
    LetTerm t{{}, Pattern::leaf(Variable("_"))};
    for (;;) {
      if (is_ident("let")) ++pos_;
      Pattern p = pattern();
      if (!accept("=")) {
        if (!t.defs.empty()) error("expected '=' or 'in', found " + describe());
        t.output = p;
        return t;
      }
      Expr e = expr();
      t.defs.push_back({p, e});
      if (accept(";")) {
        if (is_ident("in")) {
          ++pos_;
          t.output = pattern();
          return t;
        }
        continue;
      }
      if (is_ident("in")) {
        ++pos_;
        if (is_ident("let")) continue;
        t.output = pattern();
        return t;
      }
      error("expected ';' or 'in', found " + describe());
    }
  }

  Expr expr() {
    const Token at = cur();
    try {
      if (is_ident("let")) {
        ++pos_;
        Pattern p = pattern();
        expect("=");
        Expr bound = expr();
        if (!is_ident("in")) error("expected 'in', found " + describe());
        ++pos_;
        Expr body = expr();
        return Expr::let(p, bound, body);
      }
      if (accept("\\")) {
        Pattern p = pattern();
        expect(".");
        return Expr::lam(p, expr());
      }
      return primary();
    } catch (const SourceError&) {
      throw;
    } catch (const Error& e) {
      throw SourceError(e.kind(), e.what(), at.line, at.column);
    }
  }

  Expr primary() {
    if (accept("(")) {
      std::vector<Expr> parts{expr()};
      while (accept(",")) parts.push_back(expr());
      expect(")");
      Expr acc = parts.back();
      for (std::size_t i = parts.size() - 1; i-- > 0;) acc = Expr::pair(parts[i], acc);
      return acc;
    }
    const Token at = cur();
    std::string name = ident();
    auto m = matrices_.find(name);
    if (m != matrices_.end()) {
      std::vector<Variable> args;
      if (accept("(")) {
        if (!is_punct(")")) {
          args.push_back(variable(ident()));
          while (accept(",")) args.push_back(variable(ident()));
        }
        expect(")");
      }
      return Expr::mat_app(m->second, std::move(args));
    }
    if (is_punct("(")) {
      auto v = vars_.find(name);
      if (v == vars_.end()) {
        bool upper = std::isupper(static_cast<unsigned char>(name[0])) != 0;
        throw SourceError(upper ? ErrorKind::UndeclaredMatrix : ErrorKind::UndeclaredArrowVariable,
                          name + " is not declared", at.line, at.column);
      }
      ++pos_;
      std::vector<Pattern> parts{pattern()};
      while (accept(",")) parts.push_back(pattern());
      expect(")");
      return Expr::arrow_app(Variable(name, v->second), nest(parts));
    }
    return Expr::var(variable(name));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ParseOptions& opts_;
  std::map<std::string, MatrixRef> matrices_;
  std::map<std::string, Type> vars_;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

Program parse_program(std::string_view text, const ParseOptions& options) {
  Parser p(Lexer(text).run(), options);
  return p.program();
}

Type parse_type(std::string_view text) {
  ParseOptions opts;
  Parser p(Lexer(text).run(), opts);
  return p.type_only();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Program load_program(const std::filesystem::path& path, const ParseOptions& options) {
  std::string text = read_file(path);
  if (ends_with(path.string(), ".json")) {
    return ingest_network(parse_network_json(text), options.stochastic_check);
  }
  return parse_program(text, options);
}

}  // namespace lve
