#ifndef MPV_POLY_HPP
#define MPV_POLY_HPP

#include <algorithm>
#include <cctype>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mpv/ring.hpp"

namespace mpv {

template <class F>
struct Term {
  Monomial m;
  typename F::Elem c;
};

template <class F>
using Terms = std::vector<Term<F>>;

/// Sparse polynomial; terms are kept strictly decreasing in the ring's
/// grevlex order with no zero coefficients.
template <class F>
class Poly {
 public:
  using Elem = typename F::Elem;
  using TermT = Term<F>;

  Poly() = default;
  explicit Poly(RingPtr<F> r) : ring_(std::move(r)) {}

  /// Normalizing constructor: sorts, merges equal monomials, drops zeros.
  Poly(RingPtr<F> r, Terms<F> terms) : ring_(std::move(r)), terms_(std::move(terms)) { normalize(); }

  static Poly constant(RingPtr<F> r, Elem c) {
    Poly p(std::move(r));
    if (!p.field().is_zero(c)) p.terms_.push_back({Monomial{}, std::move(c)});
    return p;
  }
  static Poly integer(RingPtr<F> r, long long c) {
    auto e = r->field().from_int(c);
    return constant(std::move(r), std::move(e));
  }
  static Poly variable(RingPtr<F> r, std::size_t i) {
    Poly p(std::move(r));
    p.terms_.push_back({Monomial::variable(i), p.field().one()});
    return p;
  }
  static Poly monomial(RingPtr<F> r, const Monomial& m, Elem c) {
    Poly p(std::move(r));
    if (!p.field().is_zero(c)) p.terms_.push_back({m, std::move(c)});
    return p;
  }
  /// Terms already strictly decreasing in the ring order.
  static Poly from_sorted(RingPtr<F> r, Terms<F> terms) {
    Poly p(std::move(r));
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Terms<F>& terms() const { return terms_; }
  const TermT& lead() const { return terms_.front(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

  /// Total degree of the highest term (0 for the zero polynomial).
  long total_degree() const {
    long d = 0;
    for (const auto& t : terms_) d = std::max<long>(d, t.m.degree());
    return d;
  }

  bool operator==(const Poly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      if (!(terms_[i].m == o.terms_[i].m) || !field().equal(terms_[i].c, o.terms_[i].c)) return false;
    }
    return true;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = field().neg(t.c);
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return merge(a, b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return merge(a, b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    check_same(a, b);
    if (a.is_zero() || b.is_zero()) return Poly(a.ring_);
    const F& f = a.field();
    if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].m, b.terms_[0].c);
    if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].m, a.terms_[0].c);
    std::unordered_map<Monomial, Elem, MonomialHash> acc;
    acc.reserve(a.size() * b.size());
    for (const auto& s : a.terms_) {
      for (const auto& t : b.terms_) {
        Monomial m = s.m * t.m;
        auto it = acc.find(m);
        if (it == acc.end()) {
          acc.emplace(m, f.mul(s.c, t.c));
        } else {
          it->second = f.add(it->second, f.mul(s.c, t.c));
        }
      }
    }
    Terms<F> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!f.is_zero(c)) out.push_back({m, std::move(c)});
    const auto& ord = a.ring_->order();
    std::sort(out.begin(), out.end(), [&](const TermT& x, const TermT& y) { return ord.greater(x.m, y.m); });
    return from_sorted(a.ring_, std::move(out));
  }

  Poly& operator+=(const Poly& b) { return *this = *this + b; }
  Poly& operator-=(const Poly& b) { return *this = *this - b; }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  Poly scale(const Elem& c) const {
    if (field().is_zero(c)) return Poly(ring_);
    Poly r = *this;
    for (auto& t : r.terms_) t.c = field().mul(t.c, c);
    return r;
  }

  Poly mul_term(const Monomial& m, const Elem& c) const {
    if (field().is_zero(c)) return Poly(ring_);
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.m * m, field().mul(t.c, c)});
    return r;
  }

  Poly pow(unsigned e) const {
    Poly result = constant(ring_, field().one());
    Poly base = *this;
    while (e) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Leading coefficient made 1.
  Poly monic() const {
    if (is_zero() || field().is_one(lead().c)) return *this;
    return scale(field().inv(lead().c));
  }

  /// Common Z^r-degree of all terms, or nullopt when inhomogeneous.
  std::optional<std::vector<int>> multidegree() const {
    if (is_zero()) throw Error(Errc::ZeroPolynomial, "multidegree of the zero polynomial");
    auto d = ring_->multidegree(terms_[0].m);
    for (std::size_t i = 1; i < terms_.size(); ++i)
      if (ring_->multidegree(terms_[i].m) != d) return std::nullopt;
    return d;
  }

  bool is_homogeneous() const {
    if (is_zero()) return true;
    return multidegree().has_value();
  }

  Elem evaluate(std::span<const Elem> point) const {
    if (point.size() != ring_->nvars()) {
      throw Error(Errc::BadArity, "evaluation point has " + std::to_string(point.size()) + " coordinates, ring has " +
                                      std::to_string(ring_->nvars()) + " variables");
    }
    const F& f = field();
    Elem acc = f.zero();
    for (const auto& t : terms_) {
      Elem v = t.c;
      for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        for (unsigned k = 0; k < t.m[i]; ++k) v = f.mul(v, point[i]);
      }
      acc = f.add(acc, v);
    }
    return acc;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    const F& f = field();
    std::string s;
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      const auto& t = terms_[k];
      std::string c = f.to_string(t.c);
      bool neg = !c.empty() && c[0] == '-';
      if (neg) c = c.substr(1);
      if (k == 0) {
        if (neg) s += "-";
      } else {
        s += neg ? " - " : " + ";
      }
      std::string mono;
      for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        if (!t.m[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += ring_->name(i);
        if (t.m[i] > 1) mono += "^" + std::to_string(t.m[i]);
      }
      if (mono.empty()) {
        s += c;
      } else if (c == "1") {
        s += mono;
      } else {
        s += (c.find('/') != std::string::npos ? "(" + c + ")" : c) + "*" + mono;
      }
    }
    return s;
  }

 private:
  static void check_same(const Poly& a, const Poly& b) {
    if (a.ring_ != b.ring_ && !(a.ring_ && b.ring_ && a.ring_->compatible(*b.ring_))) {
      throw Error(Errc::MixedRings, "polynomials from different rings");
    }
  }

  static Poly merge(const Poly& a, const Poly& b, bool subtract) {
    check_same(a, b);
    const F& f = a.field();
    const auto& ord = a.ring_->order();
    Poly r(a.ring_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      int c = i == a.size() ? -1 : j == b.size() ? 1 : ord.cmp(a.terms_[i].m, b.terms_[j].m);
      if (c > 0) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        const auto& t = b.terms_[j++];
        r.terms_.push_back({t.m, subtract ? f.neg(t.c) : t.c});
      } else {
        Elem v = subtract ? f.sub(a.terms_[i].c, b.terms_[j].c) : f.add(a.terms_[i].c, b.terms_[j].c);
        if (!f.is_zero(v)) r.terms_.push_back({a.terms_[i].m, std::move(v)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void normalize() {
    const F& f = field();
    const auto& ord = ring_->order();
    std::sort(terms_.begin(), terms_.end(), [&](const TermT& x, const TermT& y) { return ord.greater(x.m, y.m); });
    Terms<F> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().m == t.m) {
        out.back().c = f.add(out.back().c, t.c);
        if (f.is_zero(out.back().c)) out.pop_back();
      } else if (!f.is_zero(t.c)) {
        out.push_back(std::move(t));
      }
    }
    terms_ = std::move(out);
  }

  RingPtr<F> ring_;
  Terms<F> terms_;
};

/// Renames variables: variable i of f's ring becomes variable var_map[i] of target.
template <class F>
Poly<F> map_vars(const Poly<F>& f, const RingPtr<F>& target, const std::vector<int>& var_map) {
  Terms<F> out;
  out.reserve(f.size());
  const std::size_t n = f.ring()->nvars();
  for (const auto& t : f.terms()) {
    Monomial m;
    for (std::size_t i = 0; i < n; ++i) {
      if (!t.m[i]) continue;
      if (var_map[i] < 0) throw Error(Errc::BadArity, "variable has no image under the ring embedding");
      m.set(static_cast<std::size_t>(var_map[i]), m[static_cast<std::size_t>(var_map[i])] + t.m[i]);
    }
    out.push_back({m, t.c});
  }
  return Poly<F>(target, std::move(out));
}

/// f with each variable replaced by its image (a polynomial ring map).
template <class F>
Poly<F> substitute(const Poly<F>& f, const std::vector<Poly<F>>& images, const RingPtr<F>& target) {
  const auto& src = *f.ring();
  if (images.size() != src.nvars()) {
    throw Error(Errc::BadArity, "substitution needs " + std::to_string(src.nvars()) + " images, got " +
                                    std::to_string(images.size()));
  }
  for (std::size_t j = 0; j < src.ngroups(); ++j) {
    std::optional<std::vector<int>> d;
    for (auto i : src.group_vars(j)) {
      if (images[i].is_zero()) continue;
      auto di = images[i].multidegree();
      if (!di) throw Error(Errc::InhomogeneousImages, "image of " + src.name(i) + " is not homogeneous");
      if (d && *d != *di) throw Error(Errc::InhomogeneousImages, "images within one factor differ in multidegree");
      d = di;
    }
  }
  const F& fld = f.field();
  std::vector<std::vector<Poly<F>>> powers(src.nvars());
  auto power = [&](std::size_t i, unsigned e) -> const Poly<F>& {
    auto& v = powers[i];
    if (v.empty()) v.push_back(Poly<F>::constant(target, fld.one()));
    while (v.size() <= e) v.push_back(v.back() * images[i]);
    return v[e];
  };
  Poly<F> acc(target);
  for (const auto& t : f.terms()) {
    Poly<F> term = Poly<F>::constant(target, t.c);
    for (std::size_t i = 0; i < src.nvars() && !term.is_zero(); ++i)
      if (t.m[i]) term = term * power(i, t.m[i]);
    acc += term;
  }
  return acc;
}

/// Copy of f's terms sorted decreasingly under `ord`.
template <class F>
Terms<F> to_terms(const Poly<F>& f, const MonomialOrder& ord) {
  Terms<F> t = f.terms();
  std::sort(t.begin(), t.end(), [&](const Term<F>& a, const Term<F>& b) { return ord.greater(a.m, b.m); });
  return t;
}

template <class F>
Poly<F> from_terms(const RingPtr<F>& ring, Terms<F> t) {
  for (auto& x : t) x.m.set_comp(0);
  return Poly<F>(ring, std::move(t));
}

namespace detail {

template <class F>
class PolyParser {
 public:
  PolyParser(const RingPtr<F>& ring, const std::string& text) : ring_(ring), s_(text) {}

  Poly<F> parse() {
    Poly<F> p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Errc::ParseError, "column " + std::to_string(pos_ + 1) + ": " + what + " in polynomial '" + s_ + "'");
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly<F> expr() {
    Poly<F> acc(ring_);
    bool first = true;
    for (;;) {
      bool neg = false;
      if (eat('-')) {
        neg = true;
      } else if (!first && !eat('+')) {
        break;
      } else if (first) {
        eat('+');
      }
      Poly<F> t = term();
      acc = neg ? acc - t : acc + t;
      first = false;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '+' && s_[pos_] != '-')) break;
    }
    return acc;
  }

  Poly<F> term() {
    Poly<F> acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly<F> factor() {
    Poly<F> b = base();
    if (eat('^')) {
      skip();
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (st == pos_) fail("expected exponent");
      unsigned long e = std::stoul(s_.substr(st, pos_ - st));
      if (e > 255) throw Error(Errc::ExponentOverflow, "exponent " + std::to_string(e) + " above 255");
      b = b.pow(static_cast<unsigned>(e));
    }
    return b;
  }

  Poly<F> base() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly<F> e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      mpz_class num(s_.substr(st, pos_ - st));
      mpz_class den(1);
      std::size_t save = pos_;
      if (eat('/')) {
        skip();
        std::size_t d0 = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (d0 == pos_) {
          pos_ = save;
        } else {
          den = mpz_class(s_.substr(d0, pos_ - d0));
          if (den == 0) throw Error(Errc::DivisionByZero, "zero denominator in '" + s_ + "'");
        }
      }
      mpq_class q(num, den);
      q.canonicalize();
      return Poly<F>::constant(ring_, ring_->field().from_rational(q));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name = s_.substr(st, pos_ - st);
      long idx = ring_->var_index(name);
      if (idx < 0) {
        pos_ = st;
        fail("unknown variable '" + name + "'");
      }
      return Poly<F>::variable(ring_, static_cast<std::size_t>(idx));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const RingPtr<F>& ring_;
  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses integer/rational coefficients, variable names, `+ - * ^` and parentheses.
template <class F>
Poly<F> parse_poly(const RingPtr<F>& ring, const std::string& text) {
  return detail::PolyParser<F>(ring, text).parse();
}

}  // namespace mpv

#endif  // MPV_POLY_HPP
