#ifndef MPV_IDEAL_HPP
#define MPV_IDEAL_HPP

#include <memory>
#include <optional>
#include <vector>

#include "mpv/groebner.hpp"

namespace mpv {

enum class Tri { Unknown, Yes, No };

/// Homogeneous ideal with a lazily computed grevlex Groebner basis.
/// Copies share the cache.
template <class F>
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr<F> ring, std::vector<Poly<F>> gens, Tri saturated = Tri::Unknown)
      : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : gens) {
      if (g.is_zero()) continue;
      if (!g.is_homogeneous()) throw Error(Errc::NotHomogeneous, "generator " + g.to_string() + " is not multihomogeneous");
      gens_.push_back(std::move(g));
    }
    cache_->saturated = saturated;
  }

  static Ideal unit(const RingPtr<F>& r) { return Ideal(r, {Poly<F>::constant(r, r->field().one())}, Tri::Yes); }
  static Ideal zero(const RingPtr<F>& r) { return Ideal(r, {}, Tri::Yes); }

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Poly<F>>& gens() const { return gens_; }

  const GroebnerBasis<F>& gb() const {
    if (!cache_->gb) cache_->gb = buchberger(ring_, gens_);
    return *cache_->gb;
  }
  /// Installs a basis known to be the reduced grevlex basis of this ideal.
  void set_gb(GroebnerBasis<F> g) const { cache_->gb = std::move(g); }
  bool has_gb() const { return cache_->gb.has_value(); }

  bool is_unit() const { return gb().is_unit(); }
  bool is_zero() const { return gens_.empty(); }
  bool contains(const Poly<F>& f) const { return gens_.empty() ? f.is_zero() : gb().contains(f); }
  bool contains(const Ideal& o) const {
    for (const auto& g : o.gens_)
      if (!contains(g)) return false;
    return true;
  }
  /// Equality of ideals (not of schemes).
  bool operator==(const Ideal& o) const { return gb() == o.gb(); }

  Tri saturated() const { return cache_->saturated; }
  void set_saturated(Tri t) const { cache_->saturated = t; }

  /// Minimal homogeneous generators (cached).
  const std::vector<Poly<F>>& mingens() const {
    if (!cache_->mingens) cache_->mingens = minimal_generators<F>(ring_, has_gb() ? gb().polys() : gens_);
    return *cache_->mingens;
  }

  std::optional<Ideal>& saturation_cache() const { return cache_->sat; }

 private:
  struct Cache {
    std::optional<GroebnerBasis<F>> gb;
    std::optional<std::vector<Poly<F>>> mingens;
    std::optional<Ideal> sat;
    Tri saturated = Tri::Unknown;
  };

  RingPtr<F> ring_;
  std::vector<Poly<F>> gens_;
  std::shared_ptr<Cache> cache_;
};

namespace detail {

template <class F>
void check_rings(const Ideal<F>& a, const Ideal<F>& b) {
  if (a.ring() != b.ring() && !a.ring()->compatible(*b.ring())) throw Error(Errc::MixedRings, "ideals in different rings");
}

/// Ring with one extra ungraded variable appended.
template <class F>
RingPtr<F> extend_ring(const RingPtr<F>& r, std::size_t extra, const std::string& stem = "_aux") {
  std::vector<int> groups = r->groups();
  std::vector<std::string> names = r->names();
  for (std::size_t k = 0; k < extra; ++k) {
    groups.push_back(-1);
    names.push_back(stem + std::to_string(k));
  }
  return std::make_shared<const Ring<F>>(r->field(), r->dims(), std::move(groups), std::move(names));
}

template <class F>
std::vector<int> identity_map(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

/// q with q*f == h; the division must be exact.
template <class F>
Poly<F> divide_exact(Poly<F> h, const Poly<F>& f) {
  const F& fld = f.field();
  Poly<F> q(f.ring());
  auto inv = fld.inv(f.lead().c);
  while (!h.is_zero()) {
    if (!f.lead().m.divides(h.lead().m)) throw Error(Errc::BadArity, "inexact polynomial division");
    auto m = quotient(h.lead().m, f.lead().m);
    auto c = fld.mul(h.lead().c, inv);
    q += Poly<F>::monomial(f.ring(), m, c);
    h -= f.mul_term(m, c);
  }
  return q;
}

template <class F>
bool homogeneous_gens(const std::vector<Poly<F>>& v) {
  for (const auto& g : v) {
    if (g.is_zero()) continue;
    long d = g.lead().m.degree();
    for (const auto& t : g.terms())
      if (static_cast<long>(t.m.degree()) != d) return false;
  }
  return true;
}

template <class F>
std::vector<Poly<F>> basis_or_gens(const Ideal<F>& a) {
  return a.has_gb() ? a.gb().polys() : a.gens();
}

}  // namespace detail

template <class F>
Ideal<F> ideal_sum(const Ideal<F>& a, const Ideal<F>& b) {
  detail::check_rings(a, b);
  auto g = a.gens();
  g.insert(g.end(), b.gens().begin(), b.gens().end());
  return Ideal<F>(a.ring(), std::move(g));
}

template <class F>
Ideal<F> ideal_product(const Ideal<F>& a, const Ideal<F>& b) {
  detail::check_rings(a, b);
  std::vector<Poly<F>> g;
  for (const auto& x : a.gens())
    for (const auto& y : b.gens()) g.push_back(x * y);
  return Ideal<F>(a.ring(), std::move(g));
}

/// Intersection of ideals given by generators. Homogeneous input uses the
/// module formulation (kernel of R -> R/a + R/b); otherwise t*a + (1-t)*b.
template <class F>
std::vector<Poly<F>> intersect_gens(const RingPtr<F>& ring, const std::vector<Poly<F>>& a, const std::vector<Poly<F>>& b) {
  const F& f = ring->field();
  if (a.empty() || b.empty()) return {};
  if (detail::homogeneous_gens(a) && detail::homogeneous_gens(b)) {
    const auto& ord = ring->order();
    GroebnerEngine<F> eng(f, ord, {0, 0, 0});
    eng.set_module_mode(true);
    std::vector<Terms<F>> in;
    Terms<F> diag;
    for (std::uint16_t c = 0; c < 3; ++c) {
      Monomial e;
      e.set_comp(c);
      diag.push_back({e, f.one()});
    }
    in.push_back(diag);
    for (const auto& g : a) in.push_back(detail::vec_terms<F>({g}, 0));
    for (const auto& g : b) in.push_back(detail::vec_terms<F>({g}, 1));
    for (auto& t : in) detail::sort_terms(t, ord);
    detail::sort_inputs(in, ord);
    for (auto& t : in) eng.add_input(std::move(t));
    eng.run();
    std::vector<Poly<F>> out;
    for (const auto& t : eng.reduced_basis())
      if (t[0].m.comp() == 2) out.push_back(detail::terms_vec(ring, t, 2, 1)[0]);
    return out;
  }
  auto ext = detail::extend_ring(ring, 1);
  const std::size_t n = ring->nvars();
  auto id = detail::identity_map<F>(n);
  auto t = Poly<F>::variable(ext, n);
  auto one = Poly<F>::constant(ext, f.one());
  std::vector<Poly<F>> gens;
  for (const auto& g : a) gens.push_back(t * map_vars(g, ext, id));
  for (const auto& g : b) gens.push_back((one - t) * map_vars(g, ext, id));
  std::vector<int> back(n + 1, -1);
  for (std::size_t i = 0; i < n; ++i) back[i] = static_cast<int>(i);
  std::vector<Poly<F>> out;
  for (const auto& g : eliminate(ext, gens, {n})) out.push_back(map_vars(g, ring, back));
  return out;
}

template <class F>
Ideal<F> intersect(const Ideal<F>& a, const Ideal<F>& b) {
  detail::check_rings(a, b);
  if (a.is_zero() || b.is_zero()) return Ideal<F>::zero(a.ring());
  Tri sat = (a.saturated() == Tri::Yes && b.saturated() == Tri::Yes) ? Tri::Yes : Tri::Unknown;
  Ideal<F> r(a.ring(), intersect_gens(a.ring(), detail::basis_or_gens(a), detail::basis_or_gens(b)), sat);
  return r;
}

/// {g : g*f in a}.
template <class F>
Ideal<F> colon(const Ideal<F>& a, const Poly<F>& f) {
  if (f.is_zero()) throw Error(Errc::ZeroDivisorInput, "colon by the zero polynomial");
  if (a.is_zero()) return a;
  if (f.is_constant()) return a;
  auto syz = syzygies<F>({f}, a.gb().polys());
  std::vector<Poly<F>> g;
  for (const auto& h : syz) g.push_back(h[0]);
  return Ideal<F>(a.ring(), std::move(g));
}

template <class F>
Ideal<F> colon_ideal(const Ideal<F>& a, const Ideal<F>& b) {
  detail::check_rings(a, b);
  if (b.is_zero()) throw Error(Errc::ZeroIdealDivisor, "colon by the zero ideal");
  std::optional<Ideal<F>> acc;
  for (const auto& g : b.gens()) {
    auto c = colon(a, g);
    acc = acc ? intersect(*acc, c) : c;
  }
  return *acc;
}

/// a : x_var^infinity.
template <class F>
Ideal<F> saturate_var(const Ideal<F>& a, std::size_t var) {
  if (a.is_zero()) return a;
  auto gens = saturate_by_variable(a.ring(), detail::basis_or_gens(a), var);
  Ideal<F> r(a.ring(), std::move(gens));
  return r;
}

/// a : f^infinity.
template <class F>
Ideal<F> saturate(const Ideal<F>& a, const Poly<F>& f) {
  if (f.is_zero()) throw Error(Errc::ZeroIdealDivisor, "saturation by zero");
  if (a.is_zero() || f.is_constant()) return a;
  if (!f.is_homogeneous()) throw Error(Errc::NotHomogeneous, "saturation by an inhomogeneous polynomial");
  const auto& ring = a.ring();
  if (f.size() == 1) {
    Ideal<F> r = a;
    for (std::size_t i = 0; i < ring->nvars(); ++i)
      if (f.lead().m[i]) r = saturate_var(r, i);
    return r;
  }
  const std::size_t n = ring->nvars();
  auto ext = detail::extend_ring(ring, 1, "_w");
  auto id = detail::identity_map<F>(n);
  std::vector<Poly<F>> gens;
  for (const auto& g : detail::basis_or_gens(a)) gens.push_back(map_vars(g, ext, id));
  auto w = Poly<F>::variable(ext, n);
  gens.push_back(w - map_vars(f, ext, id));
  std::vector<int> weights(n + 1, 1);
  weights[n] = static_cast<int>(f.total_degree());
  auto sat = saturate_by_variable(ext, gens, n, weights);
  std::vector<Poly<F>> images;
  for (std::size_t i = 0; i < n; ++i) images.push_back(Poly<F>::variable(ring, i));
  images.push_back(f);
  std::vector<Poly<F>> out;
  for (const auto& g : sat) {
    auto h = substitute(g, images, ring);
    if (!h.is_zero()) out.push_back(h);
  }
  return Ideal<F>(ring, std::move(out));
}

namespace detail {

template <class F>
void push_unique(std::vector<Ideal<F>>& v, Ideal<F> x) {
  for (const auto& y : v)
    if (y == x) return;
  v.push_back(std::move(x));
}

template <class F>
Ideal<F> intersect_all(const std::vector<Ideal<F>>& v) {
  // smallest first keeps intermediate bases small
  Ideal<F> acc = v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i].contains(acc)) continue;
    if (acc.contains(v[i])) {
      acc = v[i];
      continue;
    }
    acc = intersect(acc, v[i]);
  }
  return acc;
}

}  // namespace detail

/// a : b^infinity = intersection of a : f^infinity over the generators f of b.
template <class F>
Ideal<F> saturate(const Ideal<F>& a, const Ideal<F>& b) {
  detail::check_rings(a, b);
  if (b.is_zero()) throw Error(Errc::ZeroIdealDivisor, "saturation by the zero ideal");
  std::vector<Ideal<F>> parts;
  for (const auto& g : b.gens()) detail::push_unique(parts, saturate(a, g));
  return detail::intersect_all(parts);
}

/// a : (x^(j))^infinity for the irrelevant ideal of factor j.
template <class F>
Ideal<F> saturate_factor(const Ideal<F>& a, std::size_t j) {
  auto vars = a.ring()->group_vars(j);
  if (a.is_zero() || a.is_unit()) return a;
  Ideal<F> last = saturate_var(a, vars.back());
  if (last == a) return a;
  std::vector<Ideal<F>> parts{last};
  for (std::size_t k = 0; k + 1 < vars.size(); ++k) detail::push_unique(parts, saturate_var(a, vars[k]));
  return detail::intersect_all(parts);
}

/// Chained saturation by the irrelevant ideal of every factor, in factor order.
template <class F>
Ideal<F> multi_saturate(const Ideal<F>& a) {
  if (a.saturated() == Tri::Yes) return a;
  if (auto& c = a.saturation_cache()) return *c;
  Ideal<F> r = a;
  if (!a.is_zero()) {
    for (std::size_t j = 0; j < a.ring()->ngroups(); ++j) {
      r = saturate_factor(r, j);
      if (r.is_unit()) break;
    }
  }
  if (r.is_unit()) r = Ideal<F>::unit(a.ring());
  r.set_saturated(Tri::Yes);
  a.saturation_cache() = r;
  return r;
}

template <class F>
bool scheme_equal(const Ideal<F>& a, const Ideal<F>& b) {
  detail::check_rings(a, b);
  return multi_saturate(a) == multi_saturate(b);
}

/// f in the radical of a (Rabinowitsch: 1 in a + (1 - w f)).
template <class F>
bool vanishes_on(const Poly<F>& f, const Ideal<F>& a) {
  if (f.is_zero()) return true;
  const auto& ring = a.ring();
  const std::size_t n = ring->nvars();
  auto ext = detail::extend_ring(ring, 1, "_w");
  auto id = detail::identity_map<F>(n);
  std::vector<Poly<F>> gens;
  for (const auto& g : detail::basis_or_gens(a)) gens.push_back(map_vars(g, ext, id));
  gens.push_back(Poly<F>::constant(ext, ring->field().one()) - Poly<F>::variable(ext, n) * map_vars(f, ext, id));
  return buchberger(ext, gens).is_unit();
}

/// Kernel of S -> R/I, y^(i)_k -> images[i][k], one image list per factor of
/// S. Auxiliary t_i keep the elimination multihomogeneous per target factor.
template <class F>
Ideal<F> ring_map_kernel(const RingPtr<F>& target, const std::vector<std::vector<Poly<F>>>& images, const Ideal<F>& source) {
  const auto& R = source.ring();
  const std::size_t s = target->ngroups();
  if (images.size() != s) throw Error(Errc::BadArity, "one image list per target factor expected");
  std::vector<int> fdeg(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    if (images[i].size() != target->group_vars(i).size()) throw Error(Errc::BadArity, "image count mismatch");
    std::optional<std::vector<int>> d;
    for (const auto& g : images[i]) {
      if (g.is_zero()) continue;
      auto dg = g.multidegree();
      if (!dg || (d && *d != *dg)) throw Error(Errc::InhomogeneousImages, "images of one factor differ in degree");
      d = dg;
      fdeg[i] = static_cast<int>(g.total_degree());
    }
  }
  const std::size_t nr = R->nvars(), ns = target->nvars();
  // joint ring: t_1..t_s, x, y
  std::vector<int> groups(s + nr + ns, -1);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s; ++i) names.push_back("_t" + std::to_string(i));
  for (std::size_t i = 0; i < nr; ++i) names.push_back("_x" + std::to_string(i));
  for (std::size_t i = 0; i < ns; ++i) names.push_back("_y" + std::to_string(i));
  auto joint = std::make_shared<const Ring<F>>(R->field(), R->dims(), groups, names);
  std::vector<int> xmap(nr), ymap(ns, -1);
  for (std::size_t i = 0; i < nr; ++i) xmap[i] = static_cast<int>(s + i);
  std::vector<Poly<F>> gens;
  for (const auto& g : detail::basis_or_gens(source)) gens.push_back(map_vars(g, joint, xmap));
  std::vector<int> weights(s + nr + ns, 1);
  for (std::size_t i = 0; i < s; ++i) {
    auto vars = target->group_vars(i);
    for (std::size_t k = 0; k < vars.size(); ++k) {
      std::size_t yv = s + nr + vars[k];
      weights[yv] = 1 + fdeg[i];
      gens.push_back(Poly<F>::variable(joint, yv) - Poly<F>::variable(joint, i) * map_vars(images[i][k], joint, xmap));
    }
  }
  std::vector<std::size_t> drop;
  for (std::size_t i = 0; i < s + nr; ++i) drop.push_back(i);
  std::vector<int> back(s + nr + ns, -1);
  for (std::size_t i = 0; i < ns; ++i) back[s + nr + i] = static_cast<int>(i);
  std::vector<Poly<F>> out;
  for (const auto& g : eliminate(joint, gens, drop, weights)) out.push_back(map_vars(g, target, back));
  return Ideal<F>(target, std::move(out), Tri::Yes);
}

}  // namespace mpv

#endif  // MPV_IDEAL_HPP
