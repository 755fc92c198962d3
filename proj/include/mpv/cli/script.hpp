#ifndef MPV_CLI_SCRIPT_HPP
#define MPV_CLI_SCRIPT_HPP

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "mpv/error.hpp"

namespace mpv::cli {

struct Expr {
  enum class Kind { Name, Int, Call, Tuple, Equal };
  Kind kind = Kind::Name;
  std::string text;  // name, digits, or function name
  std::vector<Expr> args;
  int line = 0, col = 0;

  std::string render() const {
    switch (kind) {
      case Kind::Name:
      case Kind::Int: return text;
      case Kind::Equal: return args[0].render() + " == " + args[1].render();
      case Kind::Call:
      case Kind::Tuple: {
        std::string s = kind == Kind::Call ? text + "(" : "(";
        for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + args[i].render();
        return s + ")";
      }
    }
    return {};
  }
};

struct Statement {
  enum class Kind { Field, Space, Variety, Map, MultiMap, Let, Print, Describe, Assert };
  Kind kind = Kind::Print;
  int line = 0;
  std::vector<std::string> names;  // bound names; for MultiMap also the component maps
  std::string base;                // space of a variety, source of a map
  std::uint64_t prime = 0;         // field GF p; 0 means QQ
  std::vector<int> dims;
  std::vector<std::string> vars;
  std::vector<std::vector<std::string>> polys;  // one list per target factor
  Expr expr;

  std::string render() const {
    auto join = [](const std::vector<std::string>& v, const char* sep) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
      return s;
    };
    auto pp = [&] {
      std::vector<std::string> d;
      for (int x : dims) d.push_back(std::to_string(x));
      return "PP(" + join(d, ", ") + ")";
    };
    switch (kind) {
      case Kind::Field: return prime ? "field GF " + std::to_string(prime) : "field QQ";
      case Kind::Space: return "space " + names[0] + " = " + pp() + (vars.empty() ? "" : " vars " + join(vars, ", "));
      case Kind::Variety: return "variety " + names[0] + " = V(" + base + "; " + join(polys[0], ", ") + ")";
      case Kind::Map: {
        std::vector<std::string> f;
        for (const auto& p : polys) f.push_back(join(p, ", "));
        return "map " + names[0] + " : " + base + " -> " + pp() + " = [" + join(f, "; ") + "]";
      }
      case Kind::MultiMap:
        return "mmap " + names[0] + " = (" + join(std::vector<std::string>(names.begin() + 1, names.end()), ", ") + ")";
      case Kind::Let:
        return "let " + (names.size() == 1 ? names[0] : "(" + join(names, ", ") + ")") + " = " + expr.render();
      case Kind::Print: return "print " + expr.render();
      case Kind::Describe: return "describe " + expr.render();
      case Kind::Assert: return "assert " + expr.render();
    }
    return {};
  }
};

using Script = std::vector<Statement>;

inline std::string render(const Script& s) {
  std::string out;
  for (const auto& st : s) out += st.render() + "\n";
  return out;
}

namespace detail {

struct Token {
  enum class Kind { Ident, Int, Sym, Newline, End };
  Kind kind;
  std::string text;
  std::size_t begin, end;  // byte offsets into the source
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : s_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    int depth = 0;
    while (true) {
      skip_blank();
      if (i_ >= s_.size()) break;
      char c = s_[i_];
      if (c == '\n') {
        if (depth == 0 && !out.empty() && out.back().kind != Token::Kind::Newline)
          out.push_back({Token::Kind::Newline, "\n", i_, i_ + 1, line_, col()});
        advance();
        continue;
      }
      std::size_t b = i_;
      int l = line_, cc = col();
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) advance();
        out.push_back({Token::Kind::Ident, s_.substr(b, i_ - b), b, i_, l, cc});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) advance();
        out.push_back({Token::Kind::Int, s_.substr(b, i_ - b), b, i_, l, cc});
      } else {
        std::string sym(1, c);
        if ((c == '=' || c == '-') && i_ + 1 < s_.size() && s_[i_ + 1] == (c == '=' ? '=' : '>')) sym += s_[i_ + 1];
        if (std::string("()[],;:=+-*^/").find(c) == std::string::npos)
          throw Error(Errc::ParseError, at(l, cc) + "unexpected character '" + sym + "'");
        for (std::size_t k = 0; k < sym.size(); ++k) advance();
        if (sym == "(" || sym == "[") ++depth;
        if ((sym == ")" || sym == "]") && depth > 0) --depth;
        out.push_back({Token::Kind::Sym, sym, b, i_, l, cc});
      }
    }
    out.push_back({Token::Kind::End, "", s_.size(), s_.size(), line_, col()});
    return out;
  }

  static std::string at(int line, int col) {
    return "line " + std::to_string(line) + ", column " + std::to_string(col) + ": ";
  }

 private:
  void skip_blank() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r') {
        advance();
      } else {
        break;
      }
    }
  }
  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      line_start_ = i_ + 1;
    }
    ++i_;
  }
  int col() const { return static_cast<int>(i_ - line_start_) + 1; }

  const std::string& s_;
  std::size_t i_ = 0, line_start_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  Parser(const std::string& src, std::vector<Token> toks) : src_(src), t_(std::move(toks)) {}

  Script run() {
    Script out;
    while (peek().kind != Token::Kind::End) {
      if (peek().kind == Token::Kind::Newline) {
        ++p_;
        continue;
      }
      out.push_back(statement());
      if (peek().kind != Token::Kind::End) expect_kind(Token::Kind::Newline, "end of statement");
    }
    return out;
  }

 private:
  using K = Token::Kind;
  using SK = Statement::Kind;

  const Token& peek() const { return t_[p_]; }
  const Token& next() { return t_[p_++]; }
  bool is_sym(const char* s) const { return peek().kind == K::Sym && peek().text == s; }

  [[noreturn]] void fail(const std::string& what) const {
    const auto& t = peek();
    std::string found = t.kind == K::End ? "end of input" : t.kind == K::Newline ? "end of line" : "'" + t.text + "'";
    throw Error(Errc::ParseError, Lexer::at(t.line, t.col) + "expected " + what + ", found " + found);
  }
  void expect(const char* s) {
    if (!is_sym(s)) fail(std::string("'") + s + "'");
    ++p_;
  }
  void expect_kind(K k, const char* what) {
    if (peek().kind != k) fail(what);
    ++p_;
  }
  std::string ident(const char* what = "a name") {
    if (peek().kind != K::Ident) fail(what);
    return next().text;
  }
  void keyword(const char* kw) {
    if (peek().kind != K::Ident || peek().text != kw) fail(std::string("'") + kw + "'");
    ++p_;
  }
  long long integer() {
    if (peek().kind != K::Int) fail("an integer");
    const auto& t = next();
    if (t.text.size() > 18) throw Error(Errc::ParseError, Lexer::at(t.line, t.col) + "integer too large");
    return std::stoll(t.text);
  }

  std::vector<int> dims() {
    keyword("PP");
    expect("(");
    std::vector<int> d;
    do {
      d.push_back(static_cast<int>(integer()));
    } while (is_sym(",") && (++p_, true));
    expect(")");
    return d;
  }

  // Raw polynomial text up to ',' ';' or a closing bracket at depth zero.
  std::string poly() {
    int depth = 0;
    std::size_t b = peek().begin, e = b;
    while (true) {
      const auto& t = peek();
      if (t.kind == K::End) fail("a closing bracket");
      if (t.kind == K::Sym) {
        if (depth == 0 && (t.text == "," || t.text == ";" || t.text == ")" || t.text == "]")) break;
        if (t.text == "(" || t.text == "[") ++depth;
        if (t.text == ")" || t.text == "]") --depth;
      }
      e = t.end;
      ++p_;
    }
    if (e == b) fail("a polynomial");
    std::string out;
    for (std::size_t i = b; i < e; ++i) {
      char c = src_[i];
      if (c == '#') {
        while (i < e && src_[i] != '\n') ++i;
        c = ' ';
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        if (!out.empty() && out.back() != ' ') out += ' ';
      } else {
        out += c;
      }
    }
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
  }

  std::vector<std::string> poly_list() {
    std::vector<std::string> v{poly()};
    while (is_sym(",")) {
      ++p_;
      v.push_back(poly());
    }
    return v;
  }

  Expr primary() {
    const auto& t = peek();
    Expr e;
    e.line = t.line;
    e.col = t.col;
    if (t.kind == K::Int) {
      e.kind = Expr::Kind::Int;
      e.text = next().text;
    } else if (t.kind == K::Ident) {
      e.text = next().text;
      if (is_sym("(")) {
        e.kind = Expr::Kind::Call;
        e.args = arguments();
      }
    } else if (is_sym("(")) {
      e.kind = Expr::Kind::Tuple;
      e.args = arguments();
      if (e.args.size() == 1) return e.args[0];
    } else {
      fail("an expression");
    }
    return e;
  }

  std::vector<Expr> arguments() {
    expect("(");
    std::vector<Expr> v;
    if (!is_sym(")")) {
      v.push_back(expression());
      while (is_sym(",")) {
        ++p_;
        v.push_back(expression());
      }
    }
    expect(")");
    return v;
  }

  Expr expression() {
    Expr a = primary();
    if (!is_sym("==")) return a;
    Expr e;
    e.kind = Expr::Kind::Equal;
    e.line = a.line;
    e.col = a.col;
    ++p_;
    e.args = {std::move(a), primary()};
    return e;
  }

  Statement statement() {
    Statement s;
    s.line = peek().line;
    const std::string kw = ident("a statement keyword");
    if (kw == "field") {
      s.kind = SK::Field;
      std::string f = ident("QQ or GF");
      if (f == "GF") {
        long long p = integer();
        if (p < 2) throw Error(Errc::ParseError, Lexer::at(s.line, 1) + "field characteristic must be a prime");
        s.prime = static_cast<std::uint64_t>(p);
      } else if (f != "QQ") {
        --p_;
        fail("QQ or GF");
      }
    } else if (kw == "space") {
      s.kind = SK::Space;
      s.names = {ident()};
      expect("=");
      s.dims = dims();
      if (peek().kind == K::Ident && peek().text == "vars") {
        ++p_;
        s.vars.push_back(ident("a variable name"));
        while (is_sym(",")) {
          ++p_;
          s.vars.push_back(ident("a variable name"));
        }
      }
    } else if (kw == "variety") {
      s.kind = SK::Variety;
      s.names = {ident()};
      expect("=");
      keyword("V");
      expect("(");
      s.base = ident("a space");
      expect(";");
      s.polys = {poly_list()};
      expect(")");
    } else if (kw == "map") {
      s.kind = SK::Map;
      s.names = {ident()};
      expect(":");
      s.base = ident("a space or variety");
      expect("->");
      s.dims = dims();
      expect("=");
      expect("[");
      s.polys.push_back(poly_list());
      while (is_sym(";")) {
        ++p_;
        s.polys.push_back(poly_list());
      }
      expect("]");
    } else if (kw == "mmap") {
      s.kind = SK::MultiMap;
      s.names = {ident()};
      expect("=");
      expect("(");
      s.names.push_back(ident("a map"));
      while (is_sym(",")) {
        ++p_;
        s.names.push_back(ident("a map"));
      }
      expect(")");
    } else if (kw == "let") {
      s.kind = SK::Let;
      if (is_sym("(")) {
        ++p_;
        s.names.push_back(ident());
        while (is_sym(",")) {
          ++p_;
          s.names.push_back(ident());
        }
        expect(")");
      } else {
        s.names.push_back(ident());
      }
      expect("=");
      s.expr = expression();
    } else if (kw == "print" || kw == "describe" || kw == "assert") {
      s.kind = kw == "print" ? SK::Print : kw == "describe" ? SK::Describe : SK::Assert;
      s.expr = expression();
    } else {
      --p_;
      fail("a statement keyword");
    }
    return s;
  }

  const std::string& src_;
  std::vector<Token> t_;
  std::size_t p_ = 0;
};

}  // namespace detail

/// Statements of a script; newlines end statements except inside brackets.
inline Script parse_script(const std::string& text) {
  detail::Lexer lx(text);
  return detail::Parser(text, lx.run()).run();
}

}  // namespace mpv::cli

#endif
