#ifndef MPV_VARIETY_HPP
#define MPV_VARIETY_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hilbert.hpp"

namespace mpv {

/// A point of P^{n_1} x ... x P^{n_r}, first nonzero coordinate of each factor 1.
template <class F>
struct Point {
  using Elem = typename F::Elem;
  std::vector<std::vector<Elem>> coords;

  void normalize(const F& f) {
    for (auto& c : coords) {
      std::size_t k = 0;
      while (k < c.size() && f.is_zero(c[k])) ++k;
      if (k == c.size()) throw Error(Errc::ZeroVector, "point with a zero coordinate tuple");
      auto inv = f.inv(c[k]);
      for (auto& x : c) x = f.mul(x, inv);
    }
  }
  std::vector<Elem> flat() const {
    std::vector<Elem> v;
    for (const auto& c : coords) v.insert(v.end(), c.begin(), c.end());
    return v;
  }
  std::string to_string(const F& f) const {
    std::string s;
    for (std::size_t j = 0; j < coords.size(); ++j) {
      if (j) s += " x ";
      s += "(";
      for (std::size_t i = 0; i < coords[j].size(); ++i) {
        if (i) s += ":";
        s += f.to_string(coords[j][i]);
      }
      s += ")";
    }
    return s;
  }
  bool operator==(const Point& o) const { return coords == o.coords; }
};

/// Source of random points for varieties known to be dominated by another.
template <class F>
struct Parameterization {
  virtual ~Parameterization() = default;
  virtual std::optional<Point<F>> sample(Rng& rng) const = 0;
};

/// Closed subscheme of a product of projective spaces, stored by its
/// multi-saturated ideal. Copies share caches.
template <class F>
class Variety {
 public:
  Variety() = default;

  /// `ideal` generates the scheme; saturation happens on first use unless flagged.
  explicit Variety(Ideal<F> ideal) : s_(std::make_shared<State>()) { s_->raw = std::move(ideal); }

  const RingPtr<F>& ring() const { return s_->raw.ring(); }
  const F& field() const { return ring()->field(); }

  /// The multi-saturated ideal.
  const Ideal<F>& ideal() const {
    if (!s_->sat) s_->sat = multi_saturate(s_->raw);
    return *s_->sat;
  }
  /// Generators of some ideal with the same saturation.
  const Ideal<F>& raw() const { return s_->sat ? *s_->sat : s_->raw; }

  bool is_empty() const { return dim() < 0; }

  int ambient_dim() const {
    int n = 0;
    for (int d : ring()->dims()) n += d;
    return n;
  }

  int dim() const {
    if (!s_->dim) {
      if (s_->mdeg) {
        s_->dim = ambient_dim() - s_->mdeg->total_degree();
      } else {
        const auto& I = ideal();
        s_->dim = I.is_unit() ? -1 : krull_dim(I) - static_cast<int>(ring()->ngroups());
      }
    }
    return *s_->dim;
  }
  int codim() const { return ambient_dim() - dim(); }

  const MultidegreePoly& multidegree() const {
    if (!s_->mdeg) {
      if (is_empty()) throw Error(Errc::EmptyVariety, "the empty variety has no multidegree");
      s_->mdeg = mpv::multidegree(ideal());
    }
    return *s_->mdeg;
  }
  /// Degree of the image under the Segre embedding.
  long long degree() const {
    if (!s_->degree) {
      if (is_empty()) throw Error(Errc::EmptyVariety, "the empty variety has no degree");
      s_->degree = segre_convert(multidegree(), dim(), ring()->dims(), {}).back();
    }
    return *s_->degree;
  }

  /// Installs a multidegree known by construction.
  void set_multidegree(MultidegreePoly p) const {
    s_->dim.reset();
    s_->degree.reset();
    s_->mdeg = std::move(p);
  }
  void set_ideal_saturated(Ideal<F> sat) const { s_->sat = std::move(sat); }

  const std::shared_ptr<const Parameterization<F>>& parameterization() const { return s_->param; }
  void set_parameterization(std::shared_ptr<const Parameterization<F>> p) const { s_->param = std::move(p); }
  const std::optional<Point<F>>& known_point() const { return s_->point; }
  void set_known_point(Point<F> p) const { s_->point = std::move(p); }

  bool operator==(const Variety& o) const {
    if (ring() != o.ring() && !ring()->compatible(*o.ring())) return false;
    return ideal() == o.ideal();
  }
  bool same_object(const Variety& o) const { return s_ == o.s_; }

  std::string ambient_string() const { return ring()->ambient_string(); }

 private:
  struct State {
    Ideal<F> raw;
    std::optional<Ideal<F>> sat;
    std::optional<int> dim;
    std::optional<MultidegreePoly> mdeg;
    std::optional<long long> degree;
    std::shared_ptr<const Parameterization<F>> param;
    std::optional<Point<F>> point;
  };
  std::shared_ptr<State> s_;
};

template <class F>
Variety<F> make_variety(const RingPtr<F>& ring, std::vector<Poly<F>> gens) {
  for (const auto& g : gens)
    if (g.ring() != ring && !g.ring()->compatible(*ring)) throw Error(Errc::MixedRings, "generator from another ring");
  Variety<F> v(Ideal<F>(ring, std::move(gens)));
  v.ideal();
  return v;
}

template <class F>
Variety<F> ambient_variety(const RingPtr<F>& ring) {
  return Variety<F>(Ideal<F>::zero(ring));
}

template <class F>
Variety<F> empty_variety(const RingPtr<F>& ring) {
  return Variety<F>(Ideal<F>::unit(ring));
}

namespace detail {

template <class F>
Poly<F> determinant(std::vector<std::vector<Poly<F>>> m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Poly<F> det(m[0][0].ring());
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c].is_zero()) continue;
    std::vector<std::vector<Poly<F>>> sub;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly<F>> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      sub.push_back(std::move(row));
    }
    auto t = m[0][c] * determinant(std::move(sub));
    det = (c % 2) ? det - t : det + t;
  }
  return det;
}

inline bool next_subset(std::vector<std::size_t>& s, std::size_t n) {
  const std::size_t k = s.size();
  for (std::size_t i = k; i-- > 0;) {
    if (s[i] < n - k + i) {
      ++s[i];
      for (std::size_t j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> first_subset(std::size_t k) {
  std::vector<std::size_t> s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  return s;
}

template <class F>
Poly<F> derivative(const Poly<F>& p, std::size_t var) {
  const F& f = p.field();
  Terms<F> t;
  for (const auto& x : p.terms()) {
    if (!x.m[var]) continue;
    Monomial m = x.m;
    m.set(var, m[var] - 1);
    auto c = f.mul(x.c, f.from_int(x.m[var]));
    if (!f.is_zero(c)) t.push_back({m, c});
  }
  return Poly<F>(p.ring(), std::move(t));
}

}  // namespace detail

/// V(I + c x c minors of the Jacobian), c = codim X.
template <class F>
Variety<F> singular_locus(const Variety<F>& X) {
  if (X.is_empty()) throw Error(Errc::EmptyVariety, "singular locus of the empty variety");
  const auto& ring = X.ring();
  const int c = X.codim();
  if (c == 0) return empty_variety(ring);
  const auto& gens = X.ideal().mingens();
  const std::size_t n = ring->nvars();
  std::vector<std::vector<Poly<F>>> jac;
  for (const auto& g : gens) {
    std::vector<Poly<F>> row;
    for (std::size_t i = 0; i < n; ++i) row.push_back(detail::derivative(g, i));
    jac.push_back(std::move(row));
  }
  std::vector<Poly<F>> out = gens;
  if (gens.size() >= static_cast<std::size_t>(c)) {
    auto rows = detail::first_subset(c);
    do {
      auto cols = detail::first_subset(c);
      do {
        std::vector<std::vector<Poly<F>>> m;
        for (auto r : rows) {
          std::vector<Poly<F>> row;
          for (auto k : cols) row.push_back(jac[r][k]);
          m.push_back(std::move(row));
        }
        auto d = detail::determinant(std::move(m));
        if (!d.is_zero() && d.is_homogeneous()) out.push_back(std::move(d));
      } while (detail::next_subset(cols, n));
    } while (detail::next_subset(rows, gens.size()));
  }
  return make_variety(ring, std::move(out));
}

/// Ideal of a point: x_i - c_i x_k per factor, k the first nonzero coordinate.
template <class F>
Variety<F> point_to_variety(const RingPtr<F>& ring, Point<F> p) {
  const F& f = ring->field();
  if (p.coords.size() != ring->ngroups()) throw Error(Errc::BadArity, "point has the wrong number of factors");
  p.normalize(f);
  std::vector<Poly<F>> gens;
  for (std::size_t j = 0; j < ring->ngroups(); ++j) {
    auto vars = ring->group_vars(j);
    if (p.coords[j].size() != vars.size()) throw Error(Errc::BadArity, "point coordinate count mismatch");
    std::size_t k = 0;
    while (f.is_zero(p.coords[j][k])) ++k;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (i == k) continue;
      gens.push_back(Poly<F>::variable(ring, vars[i]) - Poly<F>::variable(ring, vars[k]).scale(p.coords[j][i]));
    }
  }
  Variety<F> v(Ideal<F>(ring, std::move(gens), Tri::Yes));
  v.set_known_point(std::move(p));
  return v;
}

template <class F>
bool point_on(const Variety<F>& X, const Point<F>& p) {
  auto flat = p.flat();
  const F& f = X.field();
  for (const auto& g : X.raw().gens())
    if (!f.is_zero(g.evaluate(flat))) return false;
  return true;
}

namespace detail {

template <class F>
std::vector<typename F::Elem> random_tuple(const F& f, std::size_t len, Rng& rng) {
  for (;;) {
    std::vector<typename F::Elem> v(len);
    bool nz = false;
    for (auto& x : v) {
      x = f.random(rng);
      nz = nz || !f.is_zero(x);
    }
    if (nz) return v;
  }
}

// Random point on a multihomogeneous hypersurface: random points in all
// factors but one, a random line in the remaining one.
inline std::optional<Point<PrimeField>> sample_hypersurface(const Poly<PrimeField>& g, Rng& rng) {
  const auto& ring = *g.ring();
  const PrimeField& f = g.field();
  auto md = *g.multidegree();
  std::size_t j = 0;
  for (std::size_t k = 0; k < md.size(); ++k)
    if (md[k] > md[j]) j = k;
  Point<PrimeField> p;
  for (std::size_t k = 0; k < ring.ngroups(); ++k) p.coords.push_back(random_tuple(f, ring.dims()[k] + 1, rng));
  if (md[j] == 0) return p;
  auto a = p.coords[j];
  auto b = random_tuple(f, a.size(), rng);
  // coordinate i of factor j is a_i + s b_i; everything else is constant
  const std::size_t n = ring.nvars();
  std::vector<upoly::Coeffs> lin(n);
  auto begin = ring.group_begin(j);
  auto flat = p.flat();
  for (std::size_t i = 0; i < n; ++i) {
    if (ring.group(i) == static_cast<int>(j)) {
      lin[i] = {a[i - begin], b[i - begin]};
    } else {
      lin[i] = {flat[i]};
    }
    upoly::trim(lin[i]);
  }
  upoly::Coeffs u;
  for (const auto& t : g.terms()) {
    upoly::Coeffs term{t.c};
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned e = 0; e < t.m[i]; ++e) term = upoly::mul(f, term, lin[i]);
    if (u.size() < term.size()) u.resize(term.size(), 0);
    for (std::size_t k = 0; k < term.size(); ++k) u[k] = f.add(u[k], term[k]);
  }
  upoly::trim(u);
  if (u.empty()) return p;
  auto roots = univariate_roots(f, u, rng);
  if (roots.empty()) return std::nullopt;
  auto s = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
  for (std::size_t i = 0; i < a.size(); ++i) p.coords[j][i] = f.add(a[i], f.mul(s, b[i]));
  for (auto x : p.coords[j])
    if (!f.is_zero(x)) return p;
  return std::nullopt;
}

}  // namespace detail

/// Random point of X over a prime field.
template <class F>
Point<F> sample_point(const Variety<F>& X, Rng& rng, int retries = 100) {
  if constexpr (!std::is_same_v<F, PrimeField>) {
    throw Error(Errc::UnsupportedClass, "points can only be sampled over a finite field");
  } else {
    const auto& ring = X.ring();
    const PrimeField& f = X.field();
    if (X.known_point()) return *X.known_point();
    if (X.is_empty()) throw Error(Errc::EmptyVariety, "no points on the empty variety");
    enum { Param, Ambient, Hyper } how;
    std::optional<Poly<F>> hyper;
    if (X.parameterization()) {
      how = Param;
    } else if (X.raw().is_zero() || X.ideal().is_zero()) {
      how = Ambient;
    } else if (X.ideal().mingens().size() == 1) {
      how = Hyper;
      hyper = X.ideal().mingens()[0];
    } else {
      throw Error(Errc::UnsupportedClass, "no sampling strategy for this variety");
    }
    for (int attempt = 0; attempt < retries; ++attempt) {
      std::optional<Point<F>> p;
      if (how == Param) {
        p = X.parameterization()->sample(rng);
      } else if (how == Ambient) {
        p.emplace();
        for (std::size_t k = 0; k < ring->ngroups(); ++k)
          p->coords.push_back(detail::random_tuple(f, ring->dims()[k] + 1, rng));
      } else {
        p = detail::sample_hypersurface(*hyper, rng);
      }
      if (!p) continue;
      p->normalize(f);
      if (!point_on(X, *p)) throw Error(Errc::SamplingFailed, "sampled point does not satisfy the equations");
      return *p;
    }
    throw Error(Errc::SamplingFailed, "no point found after " + std::to_string(retries) + " attempts");
  }
}

/// Report fields in display order.
struct Description {
  std::string ambient;
  int dim = -1;
  int codim = 0;
  long long degree = 0;
  std::string multidegree;
  std::string generators;
  std::string purity = "not computed";
  int sing_dim = -1;

  std::string to_string() const {
    auto line = [](const std::string& label, const std::string& value) {
      std::string s = label + ":";
      while (s.size() < 22) s += '.';
      return s + " " + value;
    };
    std::string out = line("ambient", ambient) + "\n";
    out += line("dim", std::to_string(dim)) + "\n";
    out += line("codim", std::to_string(codim)) + "\n";
    out += line("degree", std::to_string(degree)) + "\n";
    out += line("multidegree", multidegree) + "\n";
    out += line("generators", generators) + "\n";
    out += line("purity", purity) + "\n";
    out += line("dim sing. l.", std::to_string(sing_dim));
    return out;
  }
};

/// "(d_1,...,d_r)^count" for the multidegrees of the minimal generators.
template <class F>
std::string generator_tally(const Ideal<F>& I) {
  std::map<std::vector<int>, int> tally;
  for (const auto& g : I.mingens()) ++tally[*g.multidegree()];
  std::vector<std::pair<std::vector<int>, int>> v(tally.begin(), tally.end());
  std::stable_sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    int sa = 0, sb = 0;
    for (int x : a.first) sa += x;
    for (int x : b.first) sb += x;
    if (sa != sb) return sa < sb;
    return a.first > b.first;
  });
  std::string s;
  for (const auto& [d, c] : v) {
    if (!s.empty()) s += " ";
    s += "(";
    for (std::size_t k = 0; k < d.size(); ++k) s += (k ? "," : "") + std::to_string(d[k]);
    s += ")^" + std::to_string(c);
  }
  return s;
}

template <class F>
Description describe(const Variety<F>& X) {
  Description d;
  d.ambient = X.ambient_string();
  d.dim = X.dim();
  d.codim = X.codim();
  if (X.is_empty()) {
    d.multidegree = "0";
    d.generators = "(" + std::string() + ")^1";
    std::string zeros;
    for (std::size_t k = 0; k < X.ring()->ngroups(); ++k) zeros += (k ? ",0" : "0");
    d.generators = "(" + zeros + ")^1";
    return d;
  }
  d.degree = X.degree();
  d.multidegree = X.multidegree().to_string();
  d.generators = X.ideal().is_zero() ? "" : generator_tally(X.ideal());
  d.sing_dim = singular_locus(X).dim();
  return d;
}

}  // namespace mpv

#endif
