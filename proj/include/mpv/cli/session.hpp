#ifndef MPV_CLI_SESSION_HPP
#define MPV_CLI_SESSION_HPP

#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "mpv/cli/script.hpp"
#include "mpv/ratmap.hpp"

namespace mpv::cli {

using QQ = RationalField;
using GF = PrimeField;
using json = nlohmann::json;

struct Value;
using Tuple = std::vector<Value>;
using DegreeList = std::vector<long long>;

struct Value {
  std::variant<bool, long long, DegreeList, IntPoly, Tuple, RingPtr<QQ>, RingPtr<GF>, Variety<QQ>, Variety<GF>,
               MultiMap<QQ>, MultiMap<GF>>
      v;

  template <class T>
    requires(!std::is_same_v<std::decay_t<T>, Value>)
  Value(T x) : v(std::move(x)) {}

  template <class T>
  const T* get() const {
    return std::get_if<T>(&v);
  }
};

struct Options {
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> field;  // forced field: 0 for QQ, else p
  double timeout = 0;                  // seconds per statement, 0 for none
};

struct Record {
  int index = 0;  // statement number, printed as o<index>
  int line = 0;
  std::string kind;
  std::string name;
  std::string text;
  json value;
};

enum class Outcome { Ok = 0, AssertFailed = 1, Error = 2 };

namespace detail {

template <class F>
const char* field_label() {
  return std::is_same_v<F, QQ> ? "QQ" : "GF";
}

[[noreturn]] inline void type_error(const std::string& what) { throw Error(Errc::TypeError, what); }

template <class F>
std::optional<Variety<F>> as_variety(const Value& x) {
  if (auto r = x.get<RingPtr<F>>()) return ambient_variety(*r);
  if (auto v = x.get<Variety<F>>()) return *v;
  return std::nullopt;
}

// 0 for QQ objects, 1 for GF objects, -1 for plain values
inline int field_index(const Value& x) {
  if (x.get<RingPtr<QQ>>() || x.get<Variety<QQ>>() || x.get<MultiMap<QQ>>()) return 0;
  if (x.get<RingPtr<GF>>() || x.get<Variety<GF>>() || x.get<MultiMap<GF>>()) return 1;
  return -1;
}

template <class Fn>
Value on_field(const std::vector<Value>& args, Fn&& fn) {
  int k = -1;
  for (const auto& a : args) {
    int j = field_index(a);
    if (j < 0) continue;
    if (k >= 0 && j != k) throw Error(Errc::MixedFields, "arguments live over different fields");
    k = j;
  }
  if (k < 0) type_error("expected a space, variety or map argument");
  return k == 0 ? fn(std::type_identity<QQ>{}) : fn(std::type_identity<GF>{});
}

template <class F>
Variety<F> need_variety(const Value& x, const char* fn) {
  auto v = as_variety<F>(x);
  if (!v) type_error(std::string(fn) + ": expected a variety");
  return *v;
}

template <class F>
MultiMap<F> need_map(const Value& x, const char* fn) {
  auto m = x.get<MultiMap<F>>();
  if (!m) type_error(std::string(fn) + ": expected a map");
  return *m;
}

template <class F>
std::string variety_summary(const Variety<F>& X) {
  const auto amb = X.ambient_string();
  if (X.raw().is_zero()) return amb;
  if (X.is_empty()) return "empty subvariety of " + amb;
  int d = X.dim();
  if (d == 0 && X.degree() == 1) return "a point in " + amb;
  if (X.codim() == 1) return "hypersurface in " + amb;
  return std::to_string(d) + "-dimensional subvariety of " + amb;
}

template <class F>
std::string map_summary(const MultiMap<F>& m) {
  std::string kind = m.state().birational == Tri::Yes ? "birational map" : "rational map";
  return kind + " from " + variety_summary(m.source()) + " to " + variety_summary(m.target());
}

inline json multidegree_json(const IntPoly& p) {
  json terms = json::array();
  int codim = 0;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    json e = json::array();
    codim = 0;
    for (int x : it->first) {
      e.push_back(x);
      codim += x;
    }
    terms.push_back({{"exponents", e}, {"coefficient", it->second}});
  }
  return {{"codim", codim}, {"terms", terms}};
}

inline std::string render_text(const Value& x);

inline std::string render_list(const DegreeList& d) {
  std::string s = "{";
  for (std::size_t i = 0; i < d.size(); ++i) s += (i ? ", " : "") + std::to_string(d[i]);
  return s + "}";
}

inline std::string render_text(const Value& x) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, long long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, DegreeList>) {
          return render_list(v);
        } else if constexpr (std::is_same_v<T, IntPoly>) {
          return v.to_string();
        } else if constexpr (std::is_same_v<T, Tuple>) {
          std::string s = "(";
          for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + render_text(v[i]);
          return s + ")";
        } else if constexpr (std::is_same_v<T, RingPtr<QQ>> || std::is_same_v<T, RingPtr<GF>>) {
          return v->ambient_string();
        } else if constexpr (std::is_same_v<T, Variety<QQ>> || std::is_same_v<T, Variety<GF>>) {
          return variety_summary(v);
        } else {
          return map_summary(v);
        }
      },
      x.v);
}

inline json render_json(const Value& x) {
  return std::visit(
      [&](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool> || std::is_same_v<T, long long> || std::is_same_v<T, DegreeList>) {
          return v;
        } else if constexpr (std::is_same_v<T, IntPoly>) {
          return multidegree_json(v);
        } else if constexpr (std::is_same_v<T, Tuple>) {
          json a = json::array();
          for (const auto& y : v) a.push_back(render_json(y));
          return a;
        } else {
          return render_text(x);
        }
      },
      x.v);
}

inline const char* type_name(const Value& x) {
  static const char* names[] = {"boolean", "integer", "list", "multidegree", "tuple", "space", "space",
                                "variety", "variety", "map",   "map"};
  return names[x.v.index()];
}

template <class F>
json description_json(const Variety<F>& X, const Description& d) {
  json out = {{"ambient", d.ambient}, {"dim", d.dim}, {"codim", d.codim}, {"degree", d.degree},
              {"generators", d.generators}, {"purity", nullptr}, {"sing_dim", d.sing_dim}};
  out["multidegree"] = X.is_empty() ? json(nullptr) : multidegree_json(X.multidegree());
  return out;
}

}  // namespace detail

/// Evaluates a parsed script statement by statement.
class Session {
 public:
  explicit Session(Options opt = {}) : opt_(opt), rng_(opt.seed) {
    if (opt_.field) prime_ = *opt_.field;
  }

  const std::vector<Record>& records() const { return records_; }
  const std::optional<Record>& error() const { return error_; }

  Outcome run(const Script& script) {
    for (std::size_t i = 0; i < script.size(); ++i) {
      const auto& st = script[i];
      try {
        if (opt_.timeout > 0) Deadline::set(opt_.timeout);
        bool ok = step(st, static_cast<int>(i) + 1);
        Deadline::clear();
        if (!ok) return Outcome::AssertFailed;
      } catch (const Error& e) {
        Deadline::clear();
        fail(st, i, errc_name(e.code()), e.what());
        return Outcome::Error;
      } catch (const std::exception& e) {
        Deadline::clear();
        fail(st, i, "InternalError", e.what());
        return Outcome::Error;
      }
    }
    return Outcome::Ok;
  }

  /// Text form: "o<N> = value", describe blocks indented under the first line.
  std::string text() const {
    std::string out;
    for (const auto& r : records_) {
      if (r.kind == "let" || r.kind == "assert") continue;
      std::string head = "o" + std::to_string(r.index) + " = ";
      std::string body = r.text, pad(head.size(), ' ');
      std::string s = head;
      for (char c : body) {
        s += c;
        if (c == '\n') s += pad;
      }
      out += s + "\n";
    }
    return out;
  }

  json to_json() const {
    json out = json::array();
    for (const auto& r : records_) {
      json j = {{"line", r.line}, {"kind", r.kind}, {"value", r.value}};
      if (!r.name.empty()) j["name"] = r.name;
      out.push_back(j);
    }
    if (error_) out.push_back({{"line", error_->line}, {"kind", "error"}, {"value", error_->value}});
    return out;
  }

  std::string error_message() const {
    if (!error_) return {};
    return "line " + std::to_string(error_->line) + ": " + error_->text;
  }

 private:
  using SK = Statement::Kind;

  void fail(const Statement& st, std::size_t i, const std::string& code, const std::string& msg) {
    Record r;
    r.index = static_cast<int>(i) + 1;
    r.line = st.line;
    r.kind = "error";
    r.text = msg;
    std::string bare = msg.rfind(code + ": ", 0) == 0 ? msg.substr(code.size() + 2) : msg;
    r.value = {{"code", code}, {"message", bare}};
    error_ = r;
  }

  void bind(const std::string& name, Value v, bool rebind) {
    if (!rebind && env_.count(name)) throw Error(Errc::DuplicateName, "'" + name + "' is already bound");
    env_.insert_or_assign(name, std::move(v));
  }

  const Value& lookup(const std::string& name) const {
    auto it = env_.find(name);
    if (it == env_.end()) throw Error(Errc::TypeError, "unknown name '" + name + "'");
    return it->second;
  }

  Record record(const Statement& st, int index, const char* kind) {
    Record r;
    r.index = index;
    r.line = st.line;
    r.kind = kind;
    return r;
  }

  bool step(const Statement& st, int index) {
    switch (st.kind) {
      case SK::Field:
        if (st.prime) GF check(st.prime);
        if (!opt_.field) prime_ = st.prime;
        return true;
      case SK::Space: {
        if (prime_) {
          bind(st.names[0], make_ring(GF(prime_), st.dims, st.vars), false);
        } else {
          bind(st.names[0], make_ring(QQ(), st.dims, st.vars), false);
        }
        return true;
      }
      case SK::Variety: {
        const Value& base = lookup(st.base);
        bind(st.names[0], detail::on_field({base}, [&](auto tag) -> Value {
               using F = typename decltype(tag)::type;
               auto r = base.get<RingPtr<F>>();
               if (!r) detail::type_error("V(...) expects a space");
               std::vector<Poly<F>> gens;
               for (const auto& p : st.polys[0]) gens.push_back(parse_poly(*r, p));
               return make_variety(*r, gens);
             }),
             false);
        return true;
      }
      case SK::Map: {
        const Value& base = lookup(st.base);
        bind(st.names[0], detail::on_field({base}, [&](auto tag) -> Value {
               using F = typename decltype(tag)::type;
               auto X = detail::need_variety<F>(base, "map");
               auto T = make_ring(X.field(), st.dims);
               std::vector<Vec<F>> forms;
               for (const auto& list : st.polys) {
                 Vec<F> v;
                 for (const auto& p : list) v.push_back(parse_poly(X.ring(), p));
                 forms.push_back(std::move(v));
               }
               return make_map(X, ambient_variety(T), std::move(forms));
             }),
             false);
        return true;
      }
      case SK::MultiMap: {
        std::vector<Value> parts;
        for (std::size_t i = 1; i < st.names.size(); ++i) parts.push_back(lookup(st.names[i]));
        bind(st.names[0], detail::on_field(parts, [&](auto tag) -> Value {
               using F = typename decltype(tag)::type;
               std::vector<MultiMap<F>> ms;
               for (const auto& p : parts) ms.push_back(detail::need_map<F>(p, "mmap"));
               return join_maps(ms);
             }),
             false);
        return true;
      }
      case SK::Let: {
        Value v = eval(st.expr);
        auto r = record(st, index, "let");
        if (st.names.size() == 1) {
          r.name = st.names[0];
          r.value = detail::type_name(v);
          bind(st.names[0], std::move(v), true);
        } else {
          auto t = v.get<Tuple>();
          if (!t || t->size() != st.names.size())
            throw Error(Errc::BadArity, "cannot unpack into " + std::to_string(st.names.size()) + " names");
          json kinds = json::array();
          std::string names;
          for (std::size_t i = 0; i < t->size(); ++i) {
            kinds.push_back(detail::type_name((*t)[i]));
            names += (i ? "," : "") + st.names[i];
            bind(st.names[i], (*t)[i], true);
          }
          r.name = names;
          r.value = kinds;
        }
        records_.push_back(std::move(r));
        return true;
      }
      case SK::Print: {
        Value v = eval(st.expr);
        auto r = record(st, index, "print");
        r.text = detail::render_text(v);
        r.value = detail::render_json(v);
        records_.push_back(std::move(r));
        return true;
      }
      case SK::Describe: {
        Value v = eval(st.expr);
        auto r = record(st, index, "describe");
        detail::on_field({v}, [&](auto tag) -> Value {
          using F = typename decltype(tag)::type;
          auto X = detail::need_variety<F>(v, "describe");
          auto d = describe(X);
          r.text = d.to_string();
          r.value = detail::description_json(X, d);
          return true;
        });
        records_.push_back(std::move(r));
        return true;
      }
      case SK::Assert: {
        Value v = eval(st.expr);
        auto b = v.get<bool>();
        if (!b) detail::type_error("assert needs a boolean");
        auto r = record(st, index, "assert");
        r.value = *b;
        r.text = *b ? "true" : "assertion failed: " + st.expr.render();
        if (!*b) {
          r.value = false;
          error_ = r;
          error_->value = {{"code", "AssertionFailed"}, {"message", r.text}};
        }
        records_.push_back(std::move(r));
        return *b;
      }
    }
    return true;
  }

  template <class F>
  static MultiMap<F> join_maps(const std::vector<MultiMap<F>>& ms) {
    const auto& X = ms[0].source();
    std::vector<int> dims;
    std::vector<Vec<F>> forms;
    for (const auto& m : ms) {
      if (!(m.source() == X)) throw Error(Errc::ShapeMismatch, "mmap components need a common source");
      if (!m.target().raw().is_zero()) throw Error(Errc::TargetMismatch, "mmap components must map to full spaces");
      for (int d : m.target().ring()->dims()) dims.push_back(d);
      for (const auto& f : m.primary()) {
        Vec<F> g;
        for (const auto& x : f) g.push_back(map_vars(x, X.ring(), mpv::detail::identity_map<F>(X.ring()->nvars())));
        forms.push_back(std::move(g));
      }
    }
    return make_map(X, ambient_variety(make_ring(X.field(), dims)), std::move(forms));
  }

  static bool equal(const Value& a, const Value& b) {
    if (a.v.index() != b.v.index()) {
      if (detail::field_index(a) >= 0 && detail::field_index(a) == detail::field_index(b)) {
        // a space against a variety
        return detail::on_field({a, b}, [&](auto tag) -> Value {
                 using F = typename decltype(tag)::type;
                 auto x = detail::as_variety<F>(a), y = detail::as_variety<F>(b);
                 if (!x || !y) detail::type_error("cannot compare a " + std::string(detail::type_name(a)) + " and a " +
                                                  detail::type_name(b));
                 return *x == *y;
               }).get<bool>()[0];
      }
      detail::type_error(std::string("cannot compare a ") + detail::type_name(a) + " and a " + detail::type_name(b));
    }
    return std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const T& y = *b.get<T>();
          if constexpr (std::is_same_v<T, Tuple>) {
            if (x.size() != y.size()) return false;
            for (std::size_t i = 0; i < x.size(); ++i)
              if (!equal(x[i], y[i])) return false;
            return true;
          } else if constexpr (std::is_same_v<T, RingPtr<QQ>> || std::is_same_v<T, RingPtr<GF>>) {
            return x == y || x->compatible(*y);
          } else if constexpr (std::is_same_v<T, MultiMap<QQ>> || std::is_same_v<T, MultiMap<GF>>) {
            if (!(x.source() == y.source()) || !(x.target() == y.target())) return false;
            return maps_equal(x, y);
          } else {
            return x == y;
          }
        },
        a.v);
  }

  Value eval(const Expr& e) {
    using EK = Expr::Kind;
    switch (e.kind) {
      case EK::Int: {
        if (e.text.size() > 18) throw Error(Errc::ParseError, "integer too large");
        return std::stoll(e.text);
      }
      case EK::Name: return lookup(e.text);
      case EK::Equal: return equal(eval(e.args[0]), eval(e.args[1]));
      case EK::Tuple: {
        Tuple t;
        for (const auto& a : e.args) t.push_back(eval(a));
        return t;
      }
      case EK::Call: break;
    }
    std::vector<Value> args;
    for (const auto& a : e.args) args.push_back(eval(a));
    return call(e.text, args);
  }

  static void arity(const std::string& fn, const std::vector<Value>& args, std::size_t n) {
    if (args.size() != n)
      throw Error(Errc::BadArity, fn + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s"));
  }

  static long long need_int(const Value& v, const std::string& fn) {
    auto x = v.get<long long>();
    if (!x) detail::type_error(fn + ": expected an integer");
    return *x;
  }

  Value call(const std::string& fn, const std::vector<Value>& args) {
    const char* f = fn.c_str();
    if (fn == "first" || fn == "second") {
      arity(fn, args, 1);
      auto t = args[0].get<Tuple>();
      std::size_t k = fn == "first" ? 0 : 1;
      if (!t || t->size() <= k) detail::type_error(fn + ": expected a pair");
      return (*t)[k];
    }
    if (fn == "basechange") {
      arity(fn, args, 2);
      long long p = need_int(args[1], fn);
      if (p < 2) throw Error(Errc::BadReduction, "basechange needs a prime");
      if (detail::field_index(args[0]) == 1)
        throw Error(Errc::BadReduction, "already defined over a finite field");
      if (auto m = args[0].get<MultiMap<QQ>>()) return base_change(*m, static_cast<std::uint64_t>(p));
      if (auto X = detail::as_variety<QQ>(args[0])) return base_change(*X, static_cast<std::uint64_t>(p));
      detail::type_error("basechange: expected a map or variety");
    }
    return detail::on_field(args, [&](auto tag) -> Value {
      using F = typename decltype(tag)::type;
      auto map = [&](std::size_t i) { return detail::need_map<F>(args.at(i), f); };
      auto var = [&](std::size_t i) { return detail::need_variety<F>(args.at(i), f); };
      auto is_map = [&](std::size_t i) { return args.at(i).template get<MultiMap<F>>() != nullptr; };
      static const std::map<std::string, std::size_t> arities = {
          {"restrict", 2},      {"graph", 1},         {"inverse", 1},     {"compose", 2},      {"image", 1},
          {"baselocus", 1},     {"preimage", 2},      {"pushforward", 2}, {"point", 1},        {"fiber", 2},
          {"dim", 1},           {"codim", 1},         {"degree", 1},      {"multidegree", 1},  {"projdegrees", 1},
          {"randprojdegrees", 1}, {"mapdegree", 1},   {"ismorphism", 1},  {"isisomorphism", 1}, {"isbirational", 1},
          {"isdominant", 1},    {"source", 1},        {"target", 1},      {"singularlocus", 1}, {"segre", 1},
          {"identity", 1},      {"ambient", 1}};
      auto it = arities.find(fn);
      if (it == arities.end()) detail::type_error("unknown function '" + fn + "'");
      arity(fn, args, it->second);

      if (fn == "restrict") return restrict(map(0), var(1));
      if (fn == "graph") {
        auto g = graph(map(0));
        return Tuple{g.first, g.second};
      }
      if (fn == "inverse") return inverse(map(0));
      if (fn == "compose") return compose(map(0), map(1));
      if (fn == "image") return image(map(0));
      if (fn == "baselocus") return base_locus(map(0));
      if (fn == "preimage") return inverse_image(map(0), var(1));
      if (fn == "pushforward") return direct_image(map(0), var(1));
      if (fn == "point") {
        auto X = var(0);
        return point_to_variety(X.ring(), sample_point(X, rng_));
      }
      if (fn == "fiber") return fiber(map(0), var(1));
      if (fn == "dim") return static_cast<long long>(is_map(0) ? map(0).source().dim() : var(0).dim());
      if (fn == "codim") return static_cast<long long>(var(0).codim());
      if (fn == "degree") return is_map(0) ? map_degree(map(0)) : var(0).degree();
      if (fn == "multidegree") {
        if (is_map(0)) return DegreeList(projective_degrees(map(0)));
        return var(0).multidegree();
      }
      if (fn == "projdegrees") return DegreeList(projective_degrees(map(0)));
      if (fn == "randprojdegrees") return DegreeList(projective_degrees_probabilistic(map(0), rng_));
      if (fn == "mapdegree") return map_degree(map(0));
      if (fn == "ismorphism") return is_morphism(map(0));
      if (fn == "isisomorphism") return is_isomorphism(map(0));
      if (fn == "isbirational") return is_birational(map(0));
      if (fn == "isdominant") return is_dominant(map(0));
      if (fn == "source") return map(0).source();
      if (fn == "target") return map(0).target();
      if (fn == "singularlocus") return singular_locus(var(0));
      if (fn == "identity") return identity_map(var(0));
      if (fn == "ambient") return var(0).ring();
      // segre
      if (is_map(0)) return to_segre_map(map(0));
      auto X = var(0);
      return segre_map(X.field(), X.ring()->dims());
    });
  }

  Options opt_;
  Rng rng_;
  std::uint64_t prime_ = 0;
  std::map<std::string, Value> env_;
  std::vector<Record> records_;
  std::optional<Record> error_;
};

}  // namespace mpv::cli

#endif
