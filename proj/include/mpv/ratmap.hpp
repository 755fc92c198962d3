#ifndef MPV_RATMAP_HPP
#define MPV_RATMAP_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "variety.hpp"

namespace mpv {

template <class F>
class MultiMap;

template <class F>
struct Graph;

template <class F>
MultiMap<F> inverse(const MultiMap<F>& phi);

template <class F>
struct MapState {
  Variety<F> source, target;
  std::vector<Vec<F>> primary;  // one representative per target factor
  std::vector<std::optional<std::vector<Vec<F>>>> reps;  // minimal generators, on demand
  // component i is the coordinate vector of source factor projection[i]
  std::optional<std::vector<std::size_t>> projection;
  Tri birational = Tri::Unknown, dominant = Tri::Unknown, morphism = Tri::Unknown;
  std::optional<Variety<F>> base_locus, image;
  std::optional<std::vector<long long>> projdeg;
  std::optional<long long> degree;
  std::shared_ptr<Graph<F>> graph;
  std::shared_ptr<MapState> inverse;
  std::weak_ptr<MapState> inverse_weak;
  std::function<MultiMap<F>()> inverse_builder;
};

/// Rational map X --> Y into a product of projective spaces, one
/// representative form vector per factor of Y. Copies share caches.
template <class F>
class MultiMap {
 public:
  MultiMap() = default;
  explicit MultiMap(std::shared_ptr<MapState<F>> s) : s_(std::move(s)) {}

  const Variety<F>& source() const { return s_->source; }
  const Variety<F>& target() const { return s_->target; }
  std::size_t ncomponents() const { return s_->primary.size(); }
  const std::vector<Vec<F>>& primary() const { return s_->primary; }
  const Vec<F>& primary(std::size_t i) const { return s_->primary[i]; }
  MapState<F>& state() const { return *s_; }
  const std::shared_ptr<MapState<F>>& ptr() const { return s_; }
  bool is_projection() const { return s_->projection.has_value(); }

 private:
  std::shared_ptr<MapState<F>> s_;
};

template <class F>
struct Graph {
  Variety<F> variety;
  MultiMap<F> first, second;
};

namespace detail {

template <class F>
MultiMap<F> new_map(Variety<F> source, Variety<F> target, std::vector<Vec<F>> primary) {
  auto s = std::make_shared<MapState<F>>();
  s->source = std::move(source);
  s->target = std::move(target);
  s->primary = std::move(primary);
  s->reps.resize(s->primary.size());
  return MultiMap<F>(std::move(s));
}

template <class F>
Vec<F> factor_vars(const RingPtr<F>& ring, std::size_t j) {
  Vec<F> v;
  for (auto i : ring->group_vars(j)) v.push_back(Poly<F>::variable(ring, i));
  return v;
}

template <class F>
bool all_in(const Ideal<F>& I, const Vec<F>& v) {
  for (const auto& x : v)
    if (!I.contains(x)) return false;
  return true;
}

template <class F>
void check_same_ring(const RingPtr<F>& a, const RingPtr<F>& b, const char* what) {
  if (a != b && !a->compatible(*b)) throw Error(Errc::ShapeMismatch, what);
}

// Images of all target variables under the chosen representatives.
template <class F>
std::vector<Poly<F>> joint_images(const std::vector<Vec<F>>& reps) {
  std::vector<Poly<F>> out;
  for (const auto& r : reps) out.insert(out.end(), r.begin(), r.end());
  return out;
}

}  // namespace detail

/// Map given by one form vector per target factor.
template <class F>
MultiMap<F> make_map(const Variety<F>& source, const Variety<F>& target, std::vector<Vec<F>> forms) {
  const auto& R = source.ring();
  const auto& S = target.ring();
  if (forms.size() != S->ngroups()) throw Error(Errc::BadArity, "one form list per target factor expected");
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (forms[i].size() != S->group_vars(i).size()) {
      throw Error(Errc::BadArity, "factor " + std::to_string(i + 1) + " needs " +
                                      std::to_string(S->group_vars(i).size()) + " forms");
    }
    std::optional<std::vector<int>> deg;
    for (auto& g : forms[i]) {
      if (g.ring() != R && !g.ring()->compatible(*R)) throw Error(Errc::MixedRings, "form from another ring");
      if (g.is_zero()) continue;
      auto d = g.multidegree();
      if (!d || (deg && *deg != *d)) throw Error(Errc::InhomogeneousForms, "forms of one factor must share a multidegree");
      deg = d;
    }
    if (detail::all_in(source.ideal(), forms[i]))
      throw Error(Errc::ZeroRepresentative, "representative vanishes identically on the source");
  }
  if (!target.raw().is_zero()) {
    auto images = detail::joint_images(forms);
    for (const auto& g : target.ideal().gens())
      if (!source.ideal().contains(substitute(g, images, R)))
        throw Error(Errc::TargetMismatch, "image is not contained in the target");
  }
  return detail::new_map(source, target, std::move(forms));
}

/// Identity of X.
template <class F>
MultiMap<F> identity_map(const Variety<F>& X) {
  std::vector<Vec<F>> reps;
  std::vector<std::size_t> proj;
  for (std::size_t j = 0; j < X.ring()->ngroups(); ++j) {
    reps.push_back(detail::factor_vars(X.ring(), j));
    proj.push_back(j);
  }
  auto m = detail::new_map(X, X, std::move(reps));
  auto& s = m.state();
  s.projection = proj;
  s.birational = s.dominant = s.morphism = Tri::Yes;
  s.degree = 1;
  s.inverse_weak = m.ptr();
  return m;
}

/// Minimal generators of the module of representatives of component i.
template <class F>
std::vector<Vec<F>> representatives(const MultiMap<F>& phi, std::size_t i) {
  auto& s = phi.state();
  if (!s.reps[i]) {
    const auto& F0 = s.primary[i];
    if (s.projection) {
      s.reps[i] = std::vector<Vec<F>>{F0};
    } else {
      auto I = phi.source().ideal().gb().polys();
      auto syz = syzygies(F0, I);
      auto ker = kernel_transpose(phi.source().ring(), syz, F0.size(), I);
      std::vector<Vec<F>> keep;
      for (auto& v : ker)
        if (!detail::all_in(phi.source().ideal(), v)) keep.push_back(std::move(v));
      if (keep.empty()) keep.push_back(F0);
      s.reps[i] = std::move(keep);
    }
  }
  return *s.reps[i];
}

/// Rank < 2 test of the stacked representatives, componentwise.
template <class F>
bool maps_equal(const MultiMap<F>& a, const MultiMap<F>& b) {
  detail::check_same_ring(a.source().ring(), b.source().ring(), "maps have different sources");
  detail::check_same_ring(a.target().ring(), b.target().ring(), "maps have different targets");
  if (!(a.source().ideal() == b.source().ideal())) throw Error(Errc::ShapeMismatch, "maps have different sources");
  const auto& I = a.source().ideal();
  const auto& R = a.source().ring();
  for (std::size_t c = 0; c < a.ncomponents(); ++c) {
    const auto& f = a.primary(c);
    Vec<F> g;
    for (const auto& x : b.primary(c)) g.push_back(map_vars(x, R, detail::identity_map<F>(R->nvars())));
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        if (!I.contains(f[i] * g[j] - f[j] * g[i])) return false;
  }
  return true;
}

namespace detail {

template <class F>
Variety<F> component_base_locus(const MultiMap<F>& phi, std::size_t i) {
  const auto& X = phi.source();
  if (phi.is_projection()) return empty_variety(X.ring());
  auto gens = X.raw().gens();
  for (const auto& x : phi.primary(i)) gens.push_back(x);
  auto v = make_variety(X.ring(), gens);
  if (v.is_empty()) return v;
  gens = X.ideal().gens();
  for (const auto& r : representatives(phi, i))
    for (const auto& x : r) gens.push_back(x);
  return make_variety(X.ring(), std::move(gens));
}

}  // namespace detail

/// Union of the base loci of the components.
template <class F>
Variety<F> base_locus(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (!s.base_locus) {
    std::optional<Ideal<F>> acc;
    for (std::size_t i = 0; i < phi.ncomponents(); ++i) {
      auto b = detail::component_base_locus(phi, i);
      if (b.is_empty()) continue;
      acc = acc ? intersect(*acc, b.ideal()) : b.ideal();
    }
    if (!acc) {
      s.base_locus = empty_variety(phi.source().ring());
      s.morphism = Tri::Yes;
    } else {
      acc->set_saturated(Tri::Yes);
      Variety<F> v(*acc);
      s.base_locus = v;
      s.morphism = v.is_empty() ? Tri::Yes : Tri::No;
    }
  }
  return *s.base_locus;
}

template <class F>
bool is_morphism(const MultiMap<F>& phi) {
  if (phi.state().morphism == Tri::Unknown) base_locus(phi);
  return phi.state().morphism == Tri::Yes;
}

/// psi o phi (phi applied first).
template <class F>
MultiMap<F> compose(const MultiMap<F>& phi, const MultiMap<F>& psi) {
  detail::check_same_ring(phi.target().ring(), psi.source().ring(), "target and source do not match");
  const auto& X = phi.source();
  const auto& R = X.ring();
  std::vector<Vec<F>> out;
  for (std::size_t j = 0; j < psi.ncomponents(); ++j) {
    std::optional<Vec<F>> found;
    auto attempt = [&](const Vec<F>& g, const std::vector<Vec<F>>& fr) {
      auto images = detail::joint_images(fr);
      Vec<F> h;
      for (const auto& x : g) h.push_back(substitute(x, images, R));
      if (!detail::all_in(X.ideal(), h)) found = std::move(h);
    };
    attempt(psi.primary(j), phi.primary());
    if (!found) {
      // fall back to every combination of minimal representatives
      std::vector<std::vector<Vec<F>>> choices;
      for (std::size_t i = 0; i < phi.ncomponents(); ++i) choices.push_back(representatives(phi, i));
      const auto& gs = representatives(psi, j);
      std::vector<std::size_t> idx(choices.size(), 0);
      for (const auto& g : gs) {
        std::fill(idx.begin(), idx.end(), 0);
        for (;;) {
          std::vector<Vec<F>> fr;
          for (std::size_t i = 0; i < choices.size(); ++i) fr.push_back(choices[i][idx[i]]);
          attempt(g, fr);
          if (found) break;
          std::size_t k = 0;
          while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
          if (k == idx.size()) break;
        }
        if (found) break;
      }
    }
    if (!found) throw Error(Errc::NotComposable, "composed representatives vanish on the source");
    out.push_back(std::move(*found));
  }
  auto m = detail::new_map(X, psi.target(), std::move(out));
  if (phi.state().morphism == Tri::Yes && psi.state().morphism == Tri::Yes) m.state().morphism = Tri::Yes;
  return m;
}

/// Closure of the image, by elimination.
template <class F>
Variety<F> image(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (!s.image) {
    if (s.dominant == Tri::Yes) {
      s.image = s.target;
    } else {
      std::vector<std::vector<Poly<F>>> images(phi.primary().begin(), phi.primary().end());
      auto k = ring_map_kernel(s.target.ring(), images, s.source.ideal());
      s.image = Variety<F>(k);
    }
  }
  return *s.image;
}

template <class F>
bool is_dominant(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (s.dominant == Tri::Unknown) s.dominant = image(phi) == s.target ? Tri::Yes : Tri::No;
  return s.dominant == Tri::Yes;
}

template <class F>
MultiMap<F> restrict(const MultiMap<F>& phi, const Variety<F>& Z) {
  detail::check_same_ring(phi.source().ring(), Z.ring(), "restriction to a variety in another ambient");
  if (!Z.ideal().contains(phi.source().ideal()))
    throw Error(Errc::ShapeMismatch, "restriction to a variety not contained in the source");
  std::vector<Vec<F>> reps;
  for (std::size_t i = 0; i < phi.ncomponents(); ++i) {
    if (!detail::all_in(Z.ideal(), phi.primary(i))) {
      reps.push_back(phi.primary(i));
      continue;
    }
    bool ok = false;
    for (const auto& r : representatives(phi, i))
      if (!detail::all_in(Z.ideal(), r)) {
        reps.push_back(r);
        ok = true;
        break;
      }
    if (!ok) throw Error(Errc::RestrictionUndefined, "the subvariety lies in the base locus");
  }
  auto m = detail::new_map(Z, phi.target(), std::move(reps));
  m.state().projection = phi.state().projection;
  if (phi.state().morphism == Tri::Yes) m.state().morphism = Tri::Yes;
  return m;
}

/// Value at a point outside the base locus.
template <class F>
std::optional<Point<F>> evaluate(const MultiMap<F>& phi, const Point<F>& p) {
  const F& f = phi.source().field();
  auto flat = p.flat();
  Point<F> out;
  for (std::size_t i = 0; i < phi.ncomponents(); ++i) {
    auto eval = [&](const Vec<F>& v) -> std::optional<std::vector<typename F::Elem>> {
      std::vector<typename F::Elem> c;
      bool nz = false;
      for (const auto& x : v) {
        c.push_back(x.evaluate(flat));
        nz = nz || !f.is_zero(c.back());
      }
      if (!nz) return std::nullopt;
      return c;
    };
    auto c = eval(phi.primary(i));
    if (!c && !phi.is_projection())
      for (const auto& r : representatives(phi, i))
        if ((c = eval(r))) break;
    if (!c) return std::nullopt;
    out.coords.push_back(std::move(*c));
  }
  out.normalize(f);
  return out;
}

/// Closure of phi(Z).
template <class F>
Variety<F> direct_image(const MultiMap<F>& phi, const Variety<F>& Z) {
  if (Z.known_point()) {
    auto q = evaluate(phi, *Z.known_point());
    if (!q) throw Error(Errc::RestrictionUndefined, "the point lies in the base locus");
    return point_to_variety(phi.target().ring(), *q);
  }
  return image(restrict(phi, Z));
}

namespace detail {

template <class F>
std::vector<std::vector<Vec<F>>> pullback_choices(const MultiMap<F>& phi) {
  std::vector<std::vector<Vec<F>>> choices;
  for (std::size_t i = 0; i < phi.ncomponents(); ++i) {
    if (phi.is_projection() || component_base_locus(phi, i).is_empty()) {
      choices.push_back({phi.primary(i)});
    } else {
      choices.push_back(representatives(phi, i));
    }
  }
  return choices;
}

}  // namespace detail

/// Closure of phi^{-1}(W) off the base locus.
template <class F>
Variety<F> inverse_image(const MultiMap<F>& phi, const Variety<F>& W) {
  detail::check_same_ring(phi.target().ring(), W.ring(), "subvariety of another ambient");
  const auto& X = phi.source();
  const auto& R = X.ring();
  auto choices = detail::pullback_choices(phi);
  std::vector<std::size_t> idx(choices.size(), 0);
  std::optional<Ideal<F>> acc;
  for (;;) {
    std::vector<Vec<F>> fr;
    for (std::size_t i = 0; i < choices.size(); ++i) fr.push_back(choices[i][idx[i]]);
    auto images = detail::joint_images(fr);
    auto gens = X.raw().gens();
    for (const auto& w : W.raw().gens()) gens.push_back(substitute(w, images, R));
    Ideal<F> J(R, std::move(gens));
    if (!phi.is_projection())
      for (const auto& f : fr) J = saturate(J, Ideal<F>(R, f));
    J = multi_saturate(J);
    acc = acc ? intersect(*acc, J) : J;
    std::size_t k = 0;
    while (k < idx.size() && ++idx[k] == choices[k].size()) idx[k++] = 0;
    if (k == idx.size()) break;
  }
  acc->set_saturated(Tri::Yes);
  return Variety<F>(*acc);
}

/// Points of X through a map: sample the source, push forward.
template <class F>
struct MapParameterization : Parameterization<F> {
  MultiMap<F> map;
  explicit MapParameterization(MultiMap<F> m) : map(std::move(m)) {}
  std::optional<Point<F>> sample(Rng& rng) const override {
    auto p = sample_point(map.source(), rng);
    return evaluate(map, p);
  }
};

namespace detail {

template <class F>
RingPtr<F> product_ring(const RingPtr<F>& a, const RingPtr<F>& b) {
  auto dims = a->dims();
  dims.insert(dims.end(), b->dims().begin(), b->dims().end());
  std::vector<std::string> names = a->names();
  bool clash = false;
  for (const auto& n : b->names()) {
    if (a->var_index(n) >= 0) clash = true;
    names.push_back(n);
  }
  if (clash) names.clear();
  return std::make_shared<const Ring<F>>(a->field(), dims, names);
}

template <class F>
std::vector<Poly<F>> minors2(const Vec<F>& a, const Vec<F>& b) {
  std::vector<Poly<F>> out;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      auto m = a[i] * b[j] - a[j] * b[i];
      if (!m.is_zero()) out.push_back(std::move(m));
    }
  return out;
}

template <class F>
std::vector<int> shift_map(std::size_t n, std::size_t offset) {
  std::vector<int> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<int>(offset + i);
  return v;
}

}  // namespace detail

/// Section X -> graph(phi), p -> (p, phi(p)).
template <class F>
MultiMap<F> graph_section(const MultiMap<F>& phi, const Variety<F>& gamma) {
  const auto& X = phi.source();
  std::vector<Vec<F>> reps;
  for (std::size_t j = 0; j < X.ring()->ngroups(); ++j) reps.push_back(detail::factor_vars(X.ring(), j));
  for (const auto& r : phi.primary()) reps.push_back(r);
  auto m = detail::new_map(X, gamma, std::move(reps));
  m.state().birational = m.state().dominant = Tri::Yes;
  m.state().degree = 1;
  return m;
}

namespace detail {

// Ideal of the graph by minors and saturation (default) or by elimination.
template <class F>
Ideal<F> graph_ideal(const MultiMap<F>& phi, const RingPtr<F>& T, bool by_elimination) {
  const auto& X = phi.source();
  const auto& R = X.ring();
  const std::size_t nr = R->nvars();
  auto up = shift_map<F>(nr, 0);
  if (by_elimination) {
    // joint ring t_1..t_s, x, y; y^(i) - t_i F^(i), eliminate t
    const std::size_t s = phi.ncomponents(), nt = T->nvars();
    std::vector<int> groups(s, -1);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < s; ++i) names.push_back("_t" + std::to_string(i));
    for (std::size_t v = 0; v < nt; ++v) {
      groups.push_back(T->group(v));
      names.push_back(T->name(v));
    }
    auto J = std::make_shared<const Ring<F>>(R->field(), T->dims(), groups, names);
    auto xm = shift_map<F>(nr, s);
    std::vector<Poly<F>> gens;
    for (const auto& g : X.ideal().gb().polys()) gens.push_back(map_vars(g, J, xm));
    std::vector<int> weights(s + nt, 1);
    std::size_t y = s + nr;
    for (std::size_t i = 0; i < s; ++i)
      for (const auto& f : phi.primary(i)) {
        weights[y] = 1 + static_cast<int>(f.is_zero() ? 0 : f.total_degree());
        gens.push_back(Poly<F>::variable(J, y) - Poly<F>::variable(J, i) * map_vars(f, J, xm));
        ++y;
      }
    // weights make the generators homogeneous; x has weight 1
    std::vector<std::size_t> drop;
    for (std::size_t i = 0; i < s; ++i) drop.push_back(i);
    std::vector<int> back(s + nt, -1);
    for (std::size_t v = 0; v < nt; ++v) back[s + v] = static_cast<int>(v);
    std::vector<Poly<F>> out;
    for (const auto& g : eliminate(J, gens, drop, weights)) out.push_back(map_vars(g, T, back));
    return multi_saturate(Ideal<F>(T, std::move(out)));
  }
  std::vector<Poly<F>> gens;
  for (const auto& g : X.raw().gens()) gens.push_back(map_vars(g, T, up));
  std::vector<Vec<F>> lifted;
  std::size_t y = nr;
  for (std::size_t i = 0; i < phi.ncomponents(); ++i) {
    Vec<F> f, yv;
    for (const auto& x : phi.primary(i)) {
      f.push_back(map_vars(x, T, up));
      yv.push_back(Poly<F>::variable(T, y++));
    }
    for (auto& m : minors2(yv, f)) gens.push_back(std::move(m));
    lifted.push_back(std::move(f));
  }
  Ideal<F> J(T, std::move(gens));
  if (!phi.is_projection())
    for (const auto& f : lifted) J = saturate(J, Ideal<F>(T, f));
  return multi_saturate(J);
}

}  // namespace detail

/// Graph with its two projections.
template <class F>
Graph<F> graph(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (s.graph) return *s.graph;
  const auto& X = s.source;
  const auto& R = X.ring();
  auto T = detail::product_ring(R, s.target.ring());
  const std::size_t r = R->ngroups(), sc = phi.ncomponents();
  Variety<F> gamma(detail::graph_ideal(phi, T, false));
  auto g = std::make_shared<Graph<F>>();
  g->variety = gamma;

  std::vector<Vec<F>> r1, r2;
  std::vector<std::size_t> pr1, pr2;
  for (std::size_t j = 0; j < r; ++j) {
    r1.push_back(detail::factor_vars(T, j));
    pr1.push_back(j);
  }
  for (std::size_t i = 0; i < sc; ++i) {
    r2.push_back(detail::factor_vars(T, r + i));
    pr2.push_back(r + i);
  }
  g->first = detail::new_map(gamma, X, std::move(r1));
  g->second = detail::new_map(gamma, s.target, std::move(r2));
  auto& a = g->first.state();
  a.projection = pr1;
  a.morphism = a.birational = a.dominant = Tri::Yes;
  a.degree = 1;
  auto section = graph_section(phi, gamma);
  gamma.set_parameterization(std::make_shared<MapParameterization<F>>(section));
  section.state().inverse_weak = g->first.ptr();
  a.inverse = section.ptr();
  auto& b = g->second.state();
  b.projection = pr2;
  b.morphism = Tri::Yes;
  b.birational = s.birational;
  b.dominant = s.dominant;
  if (s.degree) b.degree = s.degree;
  std::weak_ptr<MapState<F>> weak_phi = phi.ptr();
  std::weak_ptr<MapState<F>> weak_p2 = g->second.ptr();
  b.inverse_builder = [weak_phi, weak_p2, gamma]() -> MultiMap<F> {
    auto ps = weak_phi.lock();
    auto p2 = weak_p2.lock();
    if (!ps || !p2) throw Error(Errc::NotBirational, "map no longer available");
    MultiMap<F> phi(ps);
    auto psi = inverse(phi);
    // (phi^{-1}, id) : Y --> graph
    std::vector<Vec<F>> reps = psi.primary();
    const auto& Y = phi.target();
    for (std::size_t i = 0; i < Y.ring()->ngroups(); ++i) reps.push_back(detail::factor_vars(Y.ring(), i));
    auto m = detail::new_map(Y, gamma, std::move(reps));
    MultiMap<F> q(p2);
    if (!maps_equal(compose(q, m), identity_map(gamma)) || !maps_equal(compose(m, q), identity_map(Y)))
      throw Error(Errc::NotBirational, "inverse of the second projection failed verification");
    return m;
  };
  s.graph = g;
  return *g;
}

/// Graph ideal by eliminating auxiliary variables (alternative route).
template <class F>
Ideal<F> graph_ideal_by_elimination(const MultiMap<F>& phi) {
  auto T = detail::product_ring(phi.source().ring(), phi.target().ring());
  return detail::graph_ideal(phi, T, true);
}

template <class F>
Ideal<F> graph_ideal_by_saturation(const MultiMap<F>& phi) {
  auto T = detail::product_ring(phi.source().ring(), phi.target().ring());
  return detail::graph_ideal(phi, T, false);
}

/// d_0..d_{dim X} from the multidegree of the graph.
template <class F>
std::vector<long long> projective_degrees(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (!s.projdeg) {
    auto gm = graph(phi).variety;
    s.projdeg = segre_convert(gm.multidegree(), s.source.dim(), s.source.ring()->dims(), s.target.ring()->dims());
  }
  return *s.projdeg;
}

/// d_i = degree of phi^{-1}(Y cut by dim X - i random (1,...,1)-forms).
template <class F>
std::vector<long long> projective_degrees_probabilistic(const MultiMap<F>& phi, Rng& rng, bool allow_rationals = false) {
  if constexpr (!std::is_same_v<F, PrimeField>) {
    if (!allow_rationals)
      throw Error(Errc::NeedsFiniteField, "probabilistic projective degrees need a finite field");
  }
  const auto& X = phi.source();
  const auto& S = phi.target().ring();
  const F& f = S->field();
  const int k = X.dim();
  // all monomials of multidegree (1,...,1)
  std::vector<Monomial> monos{Monomial()};
  for (std::size_t i = 0; i < S->ngroups(); ++i) {
    std::vector<Monomial> next;
    for (const auto& m : monos)
      for (auto v : S->group_vars(i)) {
        Monomial t = m;
        t.set(v, 1);
        next.push_back(t);
      }
    monos = std::move(next);
  }
  std::vector<long long> d(static_cast<std::size_t>(k) + 1, 0);
  for (int i = 0; i <= k; ++i) {
    std::vector<Poly<F>> forms;
    for (int c = 0; c < k - i; ++c) {
      Terms<F> t;
      for (const auto& m : monos) t.push_back({m, f.random(rng)});
      forms.emplace_back(S, std::move(t));
    }
    auto pre = inverse_image(phi, Variety<F>(Ideal<F>(S, std::move(forms))));
    if (!pre.is_empty() && pre.dim() == i) d[static_cast<std::size_t>(i)] = pre.degree();
  }
  return d;
}

/// Degree of phi onto its image.
template <class F>
long long map_degree(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (!s.degree) {
    long long d0 = projective_degrees(phi).front();
    long long e = image(phi).degree();
    if (e == 0 || d0 % e != 0)
      throw Error(Errc::NonIntegralDegree, "d_0 = " + std::to_string(d0) + " is not a multiple of " + std::to_string(e));
    s.degree = d0 / e;
  }
  return *s.degree;
}

/// Birational onto the target.
template <class F>
bool is_birational(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (s.birational == Tri::Unknown) s.birational = (map_degree(phi) == 1 && is_dominant(phi)) ? Tri::Yes : Tri::No;
  return s.birational == Tri::Yes;
}

namespace detail {

template <class F>
std::size_t numeric_rank(const F& f, std::vector<std::vector<typename F::Elem>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && f.is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[rank]);
    auto inv = f.inv(m[rank][c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (f.is_zero(m[r][c])) continue;
      auto factor = f.mul(m[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) m[r][k] = f.sub(m[r][k], f.mul(factor, m[rank][k]));
    }
    ++rank;
  }
  return rank;
}

// Representative of the inverse on source factor j from the graph's
// generators that are linear in factor j and constant in the others.
template <class F>
std::optional<Vec<F>> jacobian_dual_component(const MultiMap<F>& phi, const Ideal<F>& gamma, std::size_t j, Rng& rng) {
  const auto& X = phi.source();
  const auto& Y = phi.target();
  const auto& T = gamma.ring();
  const auto& S = Y.ring();
  const std::size_t r = X.ring()->ngroups(), nr = X.ring()->nvars();
  const F& f = S->field();
  auto xv = T->group_vars(j);
  const std::size_t n = xv.size() - 1;
  std::vector<int> down(T->nvars(), -1);
  for (std::size_t v = nr; v < T->nvars(); ++v) down[v] = static_cast<int>(v - nr);

  std::vector<std::vector<Poly<F>>> rows;
  for (const auto& g : gamma.mingens()) {
    auto md = *g.multidegree();
    bool ok = true;
    for (std::size_t k = 0; k < r; ++k) ok = ok && md[k] == (k == j ? 1 : 0);
    if (!ok) continue;
    std::vector<Terms<F>> parts(xv.size());
    for (const auto& t : g.terms()) {
      for (std::size_t c = 0; c < xv.size(); ++c)
        if (t.m[xv[c]]) {
          Monomial m = t.m;
          m.set(xv[c], 0);
          parts[c].push_back({m, t.c});
        }
    }
    std::vector<Poly<F>> row;
    for (auto& p : parts) row.push_back(map_vars(Poly<F>(T, std::move(p)), S, down));
    rows.push_back(std::move(row));
  }
  if (rows.size() < n) return std::nullopt;

  std::optional<std::vector<typename F::Elem>> pt;
  if (Y.raw().is_zero()) pt = random_tuple(f, S->nvars(), rng);
  std::vector<std::vector<typename F::Elem>> num;
  if (pt)
    for (const auto& row : rows) {
      std::vector<typename F::Elem> v;
      for (const auto& e : row) v.push_back(e.evaluate(*pt));
      num.push_back(std::move(v));
    }
  const auto& J = Y.ideal();
  auto sub = first_subset(n);
  do {
    if (pt) {
      std::vector<std::vector<typename F::Elem>> m;
      for (auto k : sub) m.push_back(num[k]);
      if (numeric_rank(f, m) < n) continue;
    }
    Vec<F> minors;
    bool nonzero = false;
    for (std::size_t c = 0; c <= n; ++c) {
      std::vector<std::vector<Poly<F>>> m;
      for (auto k : sub) {
        std::vector<Poly<F>> row;
        for (std::size_t cc = 0; cc <= n; ++cc)
          if (cc != c) row.push_back(rows[k][cc]);
        m.push_back(std::move(row));
      }
      auto d = n == 0 ? Poly<F>::constant(S, f.one()) : determinant(std::move(m));
      if (c % 2) d = -d;
      if (!J.contains(d)) nonzero = true;
      minors.push_back(std::move(d));
    }
    if (nonzero) return minors;
  } while (next_subset(sub, rows.size()));
  return std::nullopt;
}

}  // namespace detail

/// Inverse of a birational map.
template <class F>
MultiMap<F> inverse(const MultiMap<F>& phi) {
  auto& s = phi.state();
  if (s.inverse) return MultiMap<F>(s.inverse);
  if (auto w = s.inverse_weak.lock()) return MultiMap<F>(w);
  if (s.inverse_builder) {
    auto m = s.inverse_builder();
    m.state().birational = m.state().dominant = Tri::Yes;
    m.state().degree = 1;
    m.state().inverse_weak = phi.ptr();
    s.inverse = m.ptr();
    return m;
  }
  if (!is_birational(phi)) throw Error(Errc::NotBirational, "the map is not birational onto its target");
  auto gamma = graph(phi).variety.ideal();
  Rng rng(0x5eed);
  std::vector<Vec<F>> reps;
  for (std::size_t j = 0; j < phi.source().ring()->ngroups(); ++j) {
    auto c = detail::jacobian_dual_component(phi, gamma, j, rng);
    if (!c) throw Error(Errc::NotBirational, "no full-rank submatrix of the Jacobian dual");
    reps.push_back(std::move(*c));
  }
  auto psi = detail::new_map(phi.target(), phi.source(), std::move(reps));
  if (!maps_equal(compose(phi, psi), identity_map(phi.source())) ||
      !maps_equal(compose(psi, phi), identity_map(phi.target())))
    throw Error(Errc::NotBirational, "candidate inverse failed the composition check");
  auto& t = psi.state();
  t.birational = t.dominant = Tri::Yes;
  t.degree = 1;
  t.inverse_weak = phi.ptr();
  s.inverse = psi.ptr();
  return psi;
}

template <class F>
bool is_isomorphism(const MultiMap<F>& phi) {
  if (!is_birational(phi)) throw Error(Errc::NotBirational, "isomorphism test needs a birational map");
  return is_morphism(phi) && is_morphism(inverse(phi));
}

/// Segre embedding P^{n_1} x ... x P^{n_r} -> P^N, coordinates in lexicographic index order.
template <class F>
MultiMap<F> segre_map(const F& field, const std::vector<int>& dims) {
  auto R = make_ring(field, dims);
  std::vector<std::vector<int>> idx{{}};
  for (int n : dims) {
    std::vector<std::vector<int>> next;
    for (const auto& v : idx)
      for (int i = 0; i <= n; ++i) {
        auto w = v;
        w.push_back(i);
        next.push_back(std::move(w));
      }
    idx = std::move(next);
  }
  bool digits = true;
  for (int n : dims) digits = digits && n < 10;
  std::vector<std::string> names;
  Vec<F> rep;
  for (const auto& v : idx) {
    std::string name = "z";
    Monomial m;
    for (std::size_t j = 0; j < v.size(); ++j) {
      name += (digits ? "" : "_") + std::to_string(v[j]);
      m.set(R->group_begin(j) + v[j], 1);
    }
    names.push_back(name);
    rep.push_back(Poly<F>::monomial(R, m, field.one()));
  }
  auto S = make_ring(field, {static_cast<int>(idx.size()) - 1}, names);
  auto m = detail::new_map(ambient_variety(R), ambient_variety(S), {rep});
  m.state().morphism = Tri::Yes;
  return m;
}

/// phi followed by the Segre embedding of the target ambient.
template <class F>
MultiMap<F> to_segre_map(const MultiMap<F>& phi) {
  if (phi.ncomponents() == 1) return phi;
  const auto& S = phi.target().ring();
  auto seg = segre_map(S->field(), S->dims());
  auto images = detail::joint_images(phi.primary());
  Vec<F> out;
  auto same = detail::identity_map<F>(S->nvars());
  for (const auto& x : seg.primary(0)) out.push_back(substitute(map_vars(x, S, same), images, phi.source().ring()));
  return detail::new_map(phi.source(), seg.target(), {out});
}

/// Same map restricted to its image as target.
template <class F>
MultiMap<F> onto_image(const MultiMap<F>& phi) {
  auto m = detail::new_map(phi.source(), image(phi), phi.primary());
  m.state().dominant = Tri::Yes;
  m.state().projection = phi.state().projection;
  if (phi.state().morphism != Tri::Unknown) m.state().morphism = phi.state().morphism;
  return m;
}

/// phi^{-1}(phi(p)) for a point p of the source.
template <class F>
Variety<F> fiber(const MultiMap<F>& phi, const Variety<F>& p) {
  return inverse_image(phi, direct_image(phi, p));
}

// ---------------------------------------------------------------------------
// Reduction modulo a prime.

class BaseChange {
 public:
  explicit BaseChange(std::uint64_t p) : f_(p) {}

  const PrimeField& field() const { return f_; }

  RingPtr<PrimeField> ring(const RingPtr<RationalField>& r) {
    auto it = rings_.find(r.get());
    if (it != rings_.end()) return it->second;
    auto out = std::make_shared<const Ring<PrimeField>>(f_, r->dims(), r->groups(), r->names());
    rings_.emplace(r.get(), out);
    keep_.push_back(r);
    return out;
  }

  Poly<PrimeField> poly(const Poly<RationalField>& g, bool nonzero = true) {
    auto R = ring(g.ring());
    Terms<PrimeField> t;
    for (const auto& x : g.terms()) {
      auto c = f_.from_rational(x.c);
      if (c) t.push_back({x.m, c});
    }
    Poly<PrimeField> out(R, std::move(t));
    if (nonzero && out.is_zero() && !g.is_zero())
      throw Error(Errc::BadReduction, g.to_string() + " vanishes mod " + std::to_string(f_.characteristic()));
    return out;
  }

  Vec<PrimeField> vec(const Vec<RationalField>& v) {
    Vec<PrimeField> out;
    bool nz = false;
    for (const auto& x : v) {
      out.push_back(poly(x, false));
      nz = nz || !out.back().is_zero();
    }
    if (!nz) throw Error(Errc::BadReduction, "representative vanishes mod " + std::to_string(f_.characteristic()));
    return out;
  }

  Variety<PrimeField> variety(const Variety<RationalField>& X) {
    const auto& src = X.raw();
    std::vector<Poly<PrimeField>> gens;
    const auto& list = src.has_gb() ? src.gb().polys() : src.gens();
    for (const auto& g : list) gens.push_back(poly(g));
    Variety<PrimeField> out(Ideal<PrimeField>(ring(X.ring()), std::move(gens)));
    if (out.raw().is_unit() && !src.is_unit())
      throw Error(Errc::BadReduction, "ideal becomes the unit ideal mod " + std::to_string(f_.characteristic()));
    if (X.known_point()) {
      Point<PrimeField> p;
      for (const auto& c : X.known_point()->coords) {
        std::vector<std::uint64_t> v;
        for (const auto& x : c) v.push_back(f_.from_rational(x));
        p.coords.push_back(std::move(v));
      }
      out.set_known_point(std::move(p));
    }
    if (auto mp = std::dynamic_pointer_cast<const MapParameterization<RationalField>>(X.parameterization()))
      out.set_parameterization(std::make_shared<MapParameterization<PrimeField>>(map(mp->map, &out)));
    return out;
  }

  // Target may be supplied to break the cycle variety -> parameterization -> variety.
  MultiMap<PrimeField> map(const MultiMap<RationalField>& phi, const Variety<PrimeField>* target = nullptr) {
    auto src = variety(phi.source());
    auto tgt = target ? *target : variety(phi.target());
    std::vector<Vec<PrimeField>> reps;
    for (const auto& r : phi.primary()) reps.push_back(vec(r));
    auto m = detail::new_map(src, tgt, std::move(reps));
    m.state().projection = phi.state().projection;
    return m;
  }

 private:
  PrimeField f_;
  std::map<const void*, RingPtr<PrimeField>> rings_;
  std::vector<RingPtr<RationalField>> keep_;
};

inline MultiMap<PrimeField> base_change(const MultiMap<RationalField>& phi, std::uint64_t p) {
  BaseChange bc(p);
  return bc.map(phi);
}

inline Variety<PrimeField> base_change(const Variety<RationalField>& X, std::uint64_t p) {
  BaseChange bc(p);
  return bc.variety(X);
}

}  // namespace mpv

#endif
