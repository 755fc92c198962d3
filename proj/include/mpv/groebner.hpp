#ifndef MPV_GROEBNER_HPP
#define MPV_GROEBNER_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "mpv/poly.hpp"

namespace mpv {

namespace detail {

/// h[hpos..] - c * m * g[gpos..], both inputs decreasing under `ord`.
template <class F>
Terms<F> sub_mul(const F& f, const MonomialOrder& ord, const Terms<F>& h, std::size_t hpos, const Terms<F>& g,
                 std::size_t gpos, const Monomial& m, const typename F::Elem& c) {
  Terms<F> r;
  r.reserve(h.size() - hpos + g.size() - gpos);
  std::size_t i = hpos, j = gpos;
  bool have = false;
  Monomial gm;
  while (i < h.size() || j < g.size()) {
    if (j < g.size() && !have) {
      gm = g[j].m * m;
      have = true;
    }
    int cmp = i == h.size() ? -1 : j == g.size() ? 1 : ord.cmp(h[i].m, gm);
    if (cmp > 0) {
      r.push_back(h[i++]);
    } else if (cmp < 0) {
      r.push_back({gm, f.neg(f.mul(c, g[j].c))});
      ++j;
      have = false;
    } else {
      auto v = f.sub(h[i].c, f.mul(c, g[j].c));
      if (!f.is_zero(v)) r.push_back({gm, std::move(v)});
      ++i;
      ++j;
      have = false;
    }
  }
  return r;
}

template <class F>
void make_monic(const F& f, Terms<F>& t) {
  if (t.empty() || f.is_one(t[0].c)) return;
  auto inv = f.inv(t[0].c);
  for (auto& x : t) x.c = f.mul(x.c, inv);
}

template <class F>
void sort_terms(Terms<F>& t, const MonomialOrder& ord) {
  std::sort(t.begin(), t.end(), [&](const Term<F>& a, const Term<F>& b) { return ord.greater(a.m, b.m); });
}

}  // namespace detail

/// Monic polynomials (or module vectors) used as reducers under a fixed order.
template <class F>
class Reducer {
 public:
  using Elem = typename F::Elem;

  Reducer(const F& field, MonomialOrder order, std::vector<long> shifts = {})
      : field_(field), order_(std::move(order)), shifts_(std::move(shifts)) {}

  const F& field() const { return field_; }
  const MonomialOrder& order() const { return order_; }

  long shift(std::uint16_t comp) const { return comp < shifts_.size() ? shifts_[comp] : 0; }

  long sugar_of(const Terms<F>& t) const {
    long s = 0;
    for (const auto& x : t) s = std::max(s, order_.wdeg(x.m) + shift(x.m.comp()));
    return s;
  }

  /// Adds a monic element; returns its index.
  std::size_t add(Terms<F> t, long sugar) {
    Slot s;
    s.lm = t[0].m;
    s.len = t.size();
    s.sugar = sugar;
    s.terms = std::move(t);
    slots_.push_back(std::move(s));
    return slots_.size() - 1;
  }

  void set_active(std::size_t i, bool a) { slots_[i].active = a; }
  bool active(std::size_t i) const { return slots_[i].active; }
  std::size_t size() const { return slots_.size(); }
  const Terms<F>& terms(std::size_t i) const { return slots_[i].terms; }
  const Monomial& lm(std::size_t i) const { return slots_[i].lm; }
  long sugar(std::size_t i) const { return slots_[i].sugar; }
  void replace_terms(std::size_t i, Terms<F> t) {
    slots_[i].len = t.size();
    slots_[i].terms = std::move(t);
  }

  /// Shortest active element whose leading monomial divides m, or -1.
  long find(const Monomial& m, long skip = -1) const {
    long best = -1;
    std::size_t best_len = 0;
    const std::uint64_t mask = m.mask();
    for (std::size_t i = 0; i < slots_.size(); ++i) {
      const Slot& s = slots_[i];
      if (!s.active || static_cast<long>(i) == skip) continue;
      if ((s.lm.mask() & ~mask) || s.lm.degree() > m.degree() || s.lm.comp() != m.comp()) continue;
      if (!s.lm.divides(m)) continue;
      if (best < 0 || s.len < best_len) {
        best = static_cast<long>(i);
        best_len = s.len;
      }
    }
    return best;
  }

  /// Full reduction. When `sugar` is given it is raised as multiples are subtracted.
  Terms<F> reduce(Terms<F> h, long* sugar = nullptr, bool top_only = false, long skip = -1) const {
    Terms<F> out;
    std::size_t pos = 0;
    unsigned steps = 0;
    while (pos < h.size()) {
      if ((++steps & 255) == 0) Deadline::check();
      long r = find(h[pos].m, skip);
      if (r < 0) {
        if (top_only) {
          out.insert(out.end(), std::make_move_iterator(h.begin() + pos), std::make_move_iterator(h.end()));
          break;
        }
        out.push_back(std::move(h[pos]));
        ++pos;
        continue;
      }
      const Slot& g = slots_[r];
      Monomial q = quotient(h[pos].m, g.lm);
      if (sugar) *sugar = std::max(*sugar, order_.wdeg(q) + g.sugar);
      Elem c = h[pos].c;
      h = detail::sub_mul(field_, order_, h, pos + 1, g.terms, 1, q, c);
      pos = 0;
    }
    return out;
  }

 private:
  struct Slot {
    Terms<F> terms;
    Monomial lm;
    std::size_t len = 0;
    long sugar = 0;
    bool active = true;
  };

  F field_;
  MonomialOrder order_;
  std::vector<long> shifts_;
  std::vector<Slot> slots_;
};

/// Buchberger's algorithm with the Gebauer-Moeller criteria and the sugar
/// strategy. Inputs may be flagged as candidates; for homogeneous input the
/// candidates that are not in the span of earlier material are recorded, which
/// yields minimal generators modulo the non-candidate inputs.
template <class F>
class GroebnerEngine {
 public:
  using Elem = typename F::Elem;

  GroebnerEngine(const F& field, MonomialOrder order, std::vector<long> shifts = {})
      : red_(field, std::move(order), std::move(shifts)) {}

  void add_input(Terms<F> t, bool candidate = false) {
    if (t.empty()) return;
    detail::sort_terms(t, red_.order());
    long s = red_.sugar_of(t);
    inputs_.push_back({std::move(t), candidate});
    Pair p;
    p.kind = candidate ? 2 : 1;
    p.i = inputs_.size() - 1;
    p.sugar = s;
    p.lcm = inputs_.back().terms[0].m;
    push(std::move(p));
  }

  /// Stops after all pairs of sugar <= limit when limit >= 0.
  void run(long limit = -1) {
    while (!queue_.empty()) {
      auto it = queue_.begin();
      if (limit >= 0 && it->first > limit) break;
      std::vector<Pair> batch = std::move(it->second);
      queue_.erase(it);
      const auto& ord = red_.order();
      std::stable_sort(batch.begin(), batch.end(), [&](const Pair& a, const Pair& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.kind == 0) return ord.greater(b.lcm, a.lcm);
        return a.i < b.i;
      });
      for (auto& p : batch) {
        if (p.kind == 0 && dead(p)) continue;
        Deadline::check();
        process(p);
      }
    }
  }

  /// Reduced basis (monic, interreduced), sorted by increasing leading monomial.
  std::vector<Terms<F>> reduced_basis() const {
    std::vector<std::size_t> act;
    for (std::size_t i = 0; i < red_.size(); ++i)
      if (red_.active(i)) act.push_back(i);
    std::vector<Terms<F>> out;
    out.reserve(act.size());
    for (auto i : act) {
      const Terms<F>& t = red_.terms(i);
      Terms<F> tail(t.begin() + 1, t.end());
      Terms<F> r = red_.reduce(std::move(tail), nullptr, false, static_cast<long>(i));
      Terms<F> full;
      full.reserve(r.size() + 1);
      full.push_back(t[0]);
      full.insert(full.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
      out.push_back(std::move(full));
    }
    const auto& ord = red_.order();
    std::sort(out.begin(), out.end(), [&](const Terms<F>& a, const Terms<F>& b) { return ord.greater(b[0].m, a[0].m); });
    return out;
  }

  /// Reduced forms of the candidate inputs found to be minimal, in processing order.
  const std::vector<Terms<F>>& minimal() const { return minimal_; }
  /// Indices (into the input list) of those candidates.
  const std::vector<std::size_t>& minimal_inputs() const { return minimal_idx_; }

  const Reducer<F>& reducer() const { return red_; }

 private:
  struct Pair {
    int kind = 0;  // 0 = S-pair, 1 = plain input, 2 = candidate input
    std::size_t i = 0, j = 0;
    long sugar = 0;
    Monomial lcm;
  };
  struct Input {
    Terms<F> terms;
    bool candidate;
  };

  bool dead(const Pair& p) const { return !pair_alive_[p.i]; }

  void push(Pair p) {
    long s = p.sugar;
    queue_[s].push_back(std::move(p));
  }

  void process(const Pair& p) {
    const F& f = red_.field();
    Terms<F> h;
    long sugar = p.sugar;
    if (p.kind == 0) {
      std::size_t a = pair_a_[p.i], b = pair_b_[p.i];
      const Terms<F>& ga = red_.terms(a);
      const Terms<F>& gb = red_.terms(b);
      Monomial qa = quotient(p.lcm, red_.lm(a));
      Monomial qb = quotient(p.lcm, red_.lm(b));
      Terms<F> left;
      left.reserve(ga.size() - 1);
      for (std::size_t k = 1; k < ga.size(); ++k) left.push_back({ga[k].m * qa, ga[k].c});
      h = detail::sub_mul(f, red_.order(), left, 0, gb, 1, qb, f.one());
    } else {
      h = inputs_[p.i].terms;
    }
    h = red_.reduce(std::move(h), &sugar);
    if (h.empty()) return;
    detail::make_monic(f, h);
    if (p.kind == 2) {
      minimal_.push_back(h);
      minimal_idx_.push_back(p.i);
    }
    insert(std::move(h), sugar);
  }

  void insert(Terms<F> h, long sugar) {
    const auto& ord = red_.order();
    const Monomial hm = h[0].m;
    const std::size_t k = red_.add(std::move(h), sugar);

    // Criterion B on queued pairs.
    for (auto& [s, vec] : queue_) {
      for (auto& p : vec) {
        if (p.kind != 0 || !pair_alive_[p.i]) continue;
        if (p.lcm.comp() != hm.comp() || !hm.divides(p.lcm)) continue;
        std::size_t a = pair_a_[p.i], b = pair_b_[p.i];
        if (lcm(red_.lm(a), hm) == p.lcm || lcm(red_.lm(b), hm) == p.lcm) continue;
        pair_alive_[p.i] = false;
      }
    }

    // New pairs with the chain and product criteria.
    struct Cand {
      std::size_t i;
      Monomial lcm;
      bool coprime;
      bool keep;
    };
    std::vector<Cand> cands;
    for (std::size_t i = 0; i < k; ++i) {
      if (!red_.active(i) || red_.lm(i).comp() != hm.comp()) continue;
      Monomial l = lcm(red_.lm(i), hm);
      bool cop = module_mode() ? false : red_.lm(i).coprime(hm);
      cands.push_back({i, l, cop, true});
    }
    // Chain criterion: drop (i,k) if some (j,k) has lcm properly dividing it.
    for (auto& c : cands) {
      for (const auto& d : cands) {
        if (&c == &d) continue;
        if (d.lcm.divides(c.lcm) && !(d.lcm == c.lcm)) {
          c.keep = false;
          break;
        }
      }
    }
    // Among equal lcms keep one; drop the whole class if any member is coprime.
    std::sort(cands.begin(), cands.end(), [&](const Cand& a, const Cand& b) {
      int c = ord.cmp(a.lcm, b.lcm);
      if (c != 0) return c < 0;
      return a.i < b.i;
    });
    for (std::size_t s = 0; s < cands.size();) {
      std::size_t e = s;
      bool any_cop = false;
      while (e < cands.size() && cands[e].lcm == cands[s].lcm) {
        any_cop = any_cop || cands[e].coprime;
        ++e;
      }
      bool first = true;
      for (std::size_t t = s; t < e; ++t) {
        if (!cands[t].keep) continue;
        if (any_cop || !first) {
          cands[t].keep = false;
        } else {
          first = false;
        }
      }
      s = e;
    }
    for (const auto& c : cands) {
      if (!c.keep) continue;
      Pair p;
      p.kind = 0;
      p.i = pair_a_.size();
      pair_a_.push_back(c.i);
      pair_b_.push_back(k);
      pair_alive_.push_back(true);
      long sa = red_.sugar(c.i) + ord.wdeg(quotient(c.lcm, red_.lm(c.i)));
      long sb = sugar + ord.wdeg(quotient(c.lcm, hm));
      p.sugar = std::max(sa, sb);
      p.lcm = c.lcm;
      push(std::move(p));
    }

    // Older elements whose leading monomial is a multiple of the new one leave the basis.
    for (std::size_t i = 0; i < k; ++i)
      if (red_.active(i) && hm.divides(red_.lm(i))) red_.set_active(i, false);
  }

  bool module_mode() const { return true_module_; }

 public:
  /// Module computations must not use the product criterion.
  void set_module_mode(bool m) { true_module_ = m; }

 private:
  Reducer<F> red_;
  std::vector<Input> inputs_;
  std::map<long, std::vector<Pair>> queue_;
  std::vector<std::size_t> pair_a_, pair_b_;
  std::vector<char> pair_alive_;
  std::vector<Terms<F>> minimal_;
  std::vector<std::size_t> minimal_idx_;
  bool true_module_ = false;
};

/// Reduced Groebner basis of an ideal (or submodule) under a fixed order.
template <class F>
class GroebnerBasis {
 public:
  using Elem = typename F::Elem;

  GroebnerBasis() = default;
  GroebnerBasis(RingPtr<F> ring, MonomialOrder order, std::vector<Terms<F>> elems)
      : ring_(std::move(ring)), order_(std::move(order)), elems_(std::move(elems)) {}

  const RingPtr<F>& ring() const { return ring_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<Terms<F>>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  bool is_unit() const { return elems_.size() == 1 && elems_[0].size() == 1 && elems_[0][0].m.is_one(); }
  bool is_zero() const { return elems_.empty(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> v;
    for (const auto& e : elems_) v.push_back(e[0].m);
    return v;
  }

  std::vector<Poly<F>> polys() const {
    std::vector<Poly<F>> v;
    for (const auto& e : elems_) v.push_back(from_terms(ring_, e));
    return v;
  }

  Poly<F> normal_form(const Poly<F>& f) const {
    if (f.ring() != ring_ && !f.ring()->compatible(*ring_)) throw Error(Errc::MixedRings, "normal form across rings");
    return from_terms(ring_, reduce_terms(to_terms(f, order_)));
  }

  Terms<F> reduce_terms(Terms<F> t) const {
    const Reducer<F>& r = reducer();
    return r.reduce(std::move(t));
  }

  bool contains(const Poly<F>& f) const { return normal_form(f).is_zero(); }

  bool operator==(const GroebnerBasis& o) const {
    if (elems_.size() != o.elems_.size()) return false;
    const F& f = ring_->field();
    for (std::size_t i = 0; i < elems_.size(); ++i) {
      if (elems_[i].size() != o.elems_[i].size()) return false;
      for (std::size_t k = 0; k < elems_[i].size(); ++k)
        if (!(elems_[i][k].m == o.elems_[i][k].m) || !f.equal(elems_[i][k].c, o.elems_[i][k].c)) return false;
    }
    return true;
  }

 private:
  const Reducer<F>& reducer() const {
    if (!red_) {
      red_.emplace(ring_->field(), order_);
      for (const auto& e : elems_) red_->add(e, 0);
    }
    return *red_;
  }

  RingPtr<F> ring_;
  MonomialOrder order_;
  std::vector<Terms<F>> elems_;
  mutable std::optional<Reducer<F>> red_;
};

namespace detail {

template <class F>
void sort_inputs(std::vector<Terms<F>>& in, const MonomialOrder& ord) {
  for (auto& t : in) sort_terms(t, ord);
  std::stable_sort(in.begin(), in.end(), [&](const Terms<F>& a, const Terms<F>& b) {
    long da = 0, db = 0;
    for (const auto& x : a) da = std::max(da, ord.wdeg(x.m));
    for (const auto& x : b) db = std::max(db, ord.wdeg(x.m));
    if (da != db) return da < db;
    return ord.greater(b[0].m, a[0].m);
  });
}

template <class F>
std::vector<Terms<F>> nonzero_terms(const std::vector<Poly<F>>& gens, const MonomialOrder& ord) {
  std::vector<Terms<F>> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(to_terms(g, ord));
  return in;
}

/// Applies a variable permutation (index i -> perm[i]) to terms.
template <class F>
Terms<F> permute(const Terms<F>& t, const std::vector<int>& perm) {
  Terms<F> out;
  out.reserve(t.size());
  for (const auto& x : t) {
    Monomial m;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if (x.m[i]) m.set(static_cast<std::size_t>(perm[i]), x.m[i]);
    m.set_comp(x.m.comp());
    out.push_back({m, x.c});
  }
  return out;
}

}  // namespace detail

/// Reduced Groebner basis of raw term lists.
template <class F>
std::vector<Terms<F>> groebner_terms(const F& field, std::vector<Terms<F>> gens, const MonomialOrder& ord) {
  detail::sort_inputs(gens, ord);
  GroebnerEngine<F> eng(field, ord);
  for (auto& g : gens) eng.add_input(std::move(g));
  eng.run();
  return eng.reduced_basis();
}

template <class F>
GroebnerBasis<F> buchberger(const std::vector<Poly<F>>& gens, const MonomialOrder& ord) {
  if (gens.empty()) return {};
  const RingPtr<F>& ring = gens[0].ring();
  for (const auto& g : gens)
    if (g.ring() != ring && !g.ring()->compatible(*ring)) throw Error(Errc::MixedRings, "generators from different rings");
  return GroebnerBasis<F>(ring, ord, groebner_terms(ring->field(), detail::nonzero_terms(gens, ord), ord));
}

template <class F>
GroebnerBasis<F> buchberger(const RingPtr<F>& ring, const std::vector<Poly<F>>& gens) {
  const MonomialOrder& ord = ring->order();
  for (const auto& g : gens)
    if (g.ring() != ring && !g.ring()->compatible(*ring)) throw Error(Errc::MixedRings, "generators from different rings");
  return GroebnerBasis<F>(ring, ord, groebner_terms(ring->field(), detail::nonzero_terms(gens, ord), ord));
}

template <class F>
Poly<F> normal_form(const Poly<F>& f, const GroebnerBasis<F>& gb) {
  if (gb.is_zero()) return f;
  return gb.normal_form(f);
}

/// Generators of (gens) intersected with the subring without `drop` variables.
template <class F>
std::vector<Poly<F>> eliminate(const RingPtr<F>& ring, const std::vector<Poly<F>>& gens, const std::vector<std::size_t>& drop,
                               const std::vector<int>& weights = {}) {
  const std::size_t n = ring->nvars();
  if (drop.empty()) return buchberger(ring, gens).polys();
  std::vector<char> is_drop(n, 0);
  for (auto d : drop) is_drop[d] = 1;
  std::vector<int> perm(n), inv(n);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (is_drop[i]) perm[i] = static_cast<int>(pos++);
  for (std::size_t i = 0; i < n; ++i)
    if (!is_drop[i]) perm[i] = static_cast<int>(pos++);
  for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = static_cast<int>(i);
  std::vector<int> w;
  if (!weights.empty()) {
    w.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) w[perm[i]] = weights[i];
  }
  auto ord = MonomialOrder::elimination(n, drop.size(), w);
  std::vector<Terms<F>> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(detail::permute(g.terms(), perm));
  auto basis = groebner_terms(ring->field(), std::move(in), ord);
  std::uint64_t dmask = 0;
  for (std::size_t i = 0; i < drop.size(); ++i) dmask |= 1ull << i;
  std::vector<Poly<F>> out;
  for (const auto& b : basis) {
    bool free = true;
    for (const auto& t : b)
      if (t.m.mask() & dmask) {
        free = false;
        break;
      }
    if (free) out.push_back(Poly<F>(ring, detail::permute(b, inv)));
  }
  return out;
}

/// Saturation by a variable via the reverse-lex trick: with the variable last
/// in a degree reverse lexicographic order, dividing a Groebner basis of a
/// homogeneous ideal by the variable's powers gives one of the saturation.
template <class F>
std::vector<Poly<F>> saturate_by_variable(const RingPtr<F>& ring, const std::vector<Poly<F>>& gens, std::size_t var,
                                          const std::vector<int>& weights = {}) {
  const std::size_t n = ring->nvars();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::swap(perm[var], perm[n - 1]);
  std::vector<int> w;
  if (!weights.empty()) {
    w.assign(weights.begin(), weights.end());
    std::swap(w[var], w[n - 1]);
  }
  auto ord = w.empty() ? MonomialOrder::grevlex(n) : MonomialOrder::weighted(w);
  std::vector<Terms<F>> in;
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back(detail::permute(g.terms(), perm));
  auto basis = groebner_terms(ring->field(), std::move(in), ord);
  std::vector<Poly<F>> out;
  for (auto& b : basis) {
    unsigned e = 255;
    for (const auto& t : b) e = std::min(e, t.m[n - 1]);
    if (e) {
      for (auto& t : b) t.m.set(n - 1, t.m[n - 1] - e);
    }
    out.push_back(Poly<F>(ring, detail::permute(b, perm)));
  }
  return out;
}

/// Free-module element: one polynomial per coordinate.
template <class F>
using Vec = std::vector<Poly<F>>;

template <class F>
std::vector<Vec<F>> minimal_module_generators(const RingPtr<F>& ring, const std::vector<Vec<F>>& vecs, std::size_t m1,
                                              const std::vector<Poly<F>>& ideal = {});

namespace detail {

template <class F>
Terms<F> vec_terms(const Vec<F>& v, std::uint16_t offset) {
  Terms<F> t;
  for (std::size_t k = 0; k < v.size(); ++k) {
    for (const auto& x : v[k].terms()) {
      Monomial m = x.m;
      m.set_comp(static_cast<std::uint16_t>(offset + k));
      t.push_back({m, x.c});
    }
  }
  return t;
}

template <class F>
Vec<F> terms_vec(const RingPtr<F>& ring, const Terms<F>& t, std::uint16_t offset, std::size_t len) {
  std::vector<Terms<F>> parts(len);
  for (const auto& x : t) {
    if (x.m.comp() < offset) continue;
    Monomial m = x.m;
    std::size_t k = m.comp() - offset;
    m.set_comp(0);
    parts[k].push_back({m, x.c});
  }
  Vec<F> v;
  for (auto& p : parts) v.push_back(Poly<F>(ring, std::move(p)));
  return v;
}

template <class F>
long poly_degree(const Poly<F>& p) {
  return p.is_zero() ? 0 : static_cast<long>(p.lead().m.degree());
}

}  // namespace detail

/// Homogeneous generators of {H : sum H_i F_i in I}, I given by generators
/// (preferably a Groebner basis) in the same ring.
template <class F>
std::vector<Vec<F>> syzygies(const Vec<F>& fv, const std::vector<Poly<F>>& ideal = {}) {
  bool all_zero = true;
  for (const auto& x : fv) all_zero = all_zero && x.is_zero();
  if (fv.empty() || all_zero) throw Error(Errc::ZeroVector, "syzygies of the zero vector");
  RingPtr<F> ring;
  for (const auto& x : fv)
    if (!x.is_zero()) ring = x.ring();
  const std::size_t m1 = fv.size();
  std::vector<long> shifts(m1 + 1, 0);
  long d = 0;
  for (const auto& x : fv)
    if (!x.is_zero()) d = detail::poly_degree(x);
  for (std::size_t i = 0; i < m1; ++i) shifts[i + 1] = d;
  auto ord = ring->order();
  GroebnerEngine<F> eng(ring->field(), ord, shifts);
  eng.set_module_mode(true);
  std::vector<Terms<F>> in;
  for (const auto& g : ideal)
    if (!g.is_zero()) in.push_back(detail::vec_terms<F>({g}, 0));
  for (std::size_t i = 0; i < m1; ++i) {
    Terms<F> t = detail::vec_terms<F>({fv[i]}, 0);
    Monomial e;
    e.set_comp(static_cast<std::uint16_t>(i + 1));
    t.push_back({e, ring->field().one()});
    in.push_back(std::move(t));
  }
  for (auto& t : in) detail::sort_terms(t, ord);
  for (auto& t : in) eng.add_input(std::move(t));
  eng.run();
  std::vector<Vec<F>> out;
  for (const auto& b : eng.reduced_basis()) {
    if (b[0].m.comp() >= 1) out.push_back(detail::terms_vec(ring, b, 1, m1));
  }
  return out;
}

/// Minimal homogeneous generators of ker(M^t) in (R/I)^{m+1}, where the
/// columns of M (each of length m+1) are given.
template <class F>
std::vector<Vec<F>> kernel_transpose(const RingPtr<F>& ring, const std::vector<Vec<F>>& cols, std::size_t m1,
                                     const std::vector<Poly<F>>& ideal = {}) {
  const F& f = ring->field();
  const auto& ord = ring->order();
  const std::size_t k = cols.size();
  std::vector<long> shifts(k + m1, 0);
  for (std::size_t c = 0; c < k; ++c) {
    long delta = 0;
    for (const auto& x : cols[c])
      if (!x.is_zero()) delta = detail::poly_degree(x);
    shifts[c] = -delta;
  }
  GroebnerEngine<F> eng(f, ord, shifts);
  eng.set_module_mode(true);
  std::vector<Terms<F>> in;
  for (std::size_t i = 0; i < m1; ++i) {
    Terms<F> t;
    for (std::size_t c = 0; c < k; ++c) {
      for (const auto& x : cols[c][i].terms()) {
        Monomial m = x.m;
        m.set_comp(static_cast<std::uint16_t>(c));
        t.push_back({m, x.c});
      }
    }
    Monomial e;
    e.set_comp(static_cast<std::uint16_t>(k + i));
    t.push_back({e, f.one()});
    in.push_back(std::move(t));
  }
  for (const auto& g : ideal) {
    if (g.is_zero()) continue;
    for (std::size_t c = 0; c < k; ++c) {
      Terms<F> t;
      for (const auto& x : g.terms()) {
        Monomial m = x.m;
        m.set_comp(static_cast<std::uint16_t>(c));
        t.push_back({m, x.c});
      }
      in.push_back(std::move(t));
    }
  }
  for (auto& t : in) detail::sort_terms(t, ord);
  for (auto& t : in) eng.add_input(std::move(t));
  eng.run();
  std::vector<Vec<F>> kern;
  for (const auto& b : eng.reduced_basis())
    if (b[0].m.comp() >= k) kern.push_back(detail::terms_vec(ring, b, static_cast<std::uint16_t>(k), m1));
  return minimal_module_generators(ring, kern, m1, ideal);
}

/// Minimal generators of the submodule of (R/I)^{m1} spanned by `vecs`
/// (homogeneous, each of uniform degree).
template <class F>
std::vector<Vec<F>> minimal_module_generators(const RingPtr<F>& ring, const std::vector<Vec<F>>& vecs, std::size_t m1,
                                              const std::vector<Poly<F>>& ideal) {
  const auto& ord = ring->order();
  GroebnerEngine<F> eng(ring->field(), ord, std::vector<long>(m1, 0));
  eng.set_module_mode(true);
  std::vector<std::pair<Terms<F>, bool>> in;
  for (const auto& g : ideal) {
    if (g.is_zero()) continue;
    for (std::size_t i = 0; i < m1; ++i) {
      Vec<F> v(m1, Poly<F>(ring));
      v[i] = g;
      in.push_back({detail::vec_terms(v, 0), false});
    }
  }
  for (const auto& v : vecs) {
    Terms<F> t = detail::vec_terms(v, 0);
    if (!t.empty()) in.push_back({std::move(t), true});
  }
  for (auto& [t, c] : in) detail::sort_terms(t, ord);
  std::stable_sort(in.begin(), in.end(), [&](const auto& a, const auto& b) {
    long da = eng.reducer().sugar_of(a.first), db = eng.reducer().sugar_of(b.first);
    if (da != db) return da < db;
    return ord.greater(b.first[0].m, a.first[0].m);
  });
  for (auto& [t, c] : in) eng.add_input(std::move(t), c);
  eng.run();
  std::vector<Vec<F>> out;
  for (const auto& t : eng.minimal()) out.push_back(detail::terms_vec(ring, t, 0, m1));
  return out;
}

/// Minimal homogeneous generators of (gens) modulo the ideal I.
template <class F>
std::vector<Poly<F>> minimal_generators(const RingPtr<F>& ring, const std::vector<Poly<F>>& gens,
                                        const std::vector<Poly<F>>& ideal = {}) {
  const auto& ord = ring->order();
  GroebnerEngine<F> eng(ring->field(), ord);
  std::vector<std::pair<Terms<F>, bool>> in;
  for (const auto& g : ideal)
    if (!g.is_zero()) in.push_back({to_terms(g, ord), false});
  for (const auto& g : gens)
    if (!g.is_zero()) in.push_back({to_terms(g, ord), true});
  std::stable_sort(in.begin(), in.end(), [&](const auto& a, const auto& b) {
    long da = eng.reducer().sugar_of(a.first), db = eng.reducer().sugar_of(b.first);
    if (da != db) return da < db;
    return ord.greater(b.first[0].m, a.first[0].m);
  });
  for (auto& [t, c] : in) eng.add_input(std::move(t), c);
  eng.run();
  std::vector<Poly<F>> out;
  for (const auto& t : eng.minimal()) out.push_back(from_terms(ring, t));
  return out;
}

}  // namespace mpv

#endif  // MPV_GROEBNER_HPP
