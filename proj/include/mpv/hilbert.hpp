#ifndef MPV_HILBERT_HPP
#define MPV_HILBERT_HPP

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "ideal.hpp"

namespace mpv {

// Integer polynomial in a fixed number of formal variables.
class IntPoly {
 public:
  using Exps = std::vector<int>;

  IntPoly() = default;
  explicit IntPoly(std::size_t nvars) : nvars_(nvars) {}

  static IntPoly one(std::size_t nvars) {
    IntPoly p(nvars);
    p.terms_[Exps(nvars, 0)] = 1;
    return p;
  }
  static IntPoly monomial(const Exps& e, long long c = 1) {
    IntPoly p(e.size());
    if (c != 0) p.terms_[e] = c;
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Exps, long long>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  long long coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0 : it->second;
  }

  void add_term(const Exps& e, long long c) {
    if (c == 0) return;
    auto& v = terms_[e];
    if (__builtin_add_overflow(v, c, &v)) throw Error(Errc::NonIntegralDegree, "integer overflow in Hilbert series");
    if (v == 0) terms_.erase(e);
  }

  IntPoly operator+(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
  }
  IntPoly operator-(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
  }
  IntPoly operator*(const IntPoly& o) const {
    IntPoly r(nvars_);
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) {
        Exps e(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) e[i] = e1[i] + e2[i];
        long long c;
        if (__builtin_mul_overflow(c1, c2, &c)) throw Error(Errc::NonIntegralDegree, "integer overflow in Hilbert series");
        r.add_term(e, c);
      }
    return r;
  }
  IntPoly shifted(const Exps& by) const {
    IntPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      Exps f = e;
      for (std::size_t i = 0; i < nvars_; ++i) f[i] += by[i];
      r.terms_[f] = c;
    }
    return r;
  }

  bool operator==(const IntPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  bool is_homogeneous_of(int deg) const {
    for (const auto& [e, c] : terms_) {
      int s = 0;
      for (int x : e) s += x;
      if (s != deg) return false;
    }
    return true;
  }

  // Terms in decreasing lex order, e.g. "2 T_0^2 + 5 T_0 T_1 + 2 T_1^2".
  std::string to_string(const std::string& stem = "T") const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      long long c = it->second;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      long long a = c < 0 ? -c : c;
      std::string mono;
      for (std::size_t i = 0; i < nvars_; ++i) {
        int x = it->first[i];
        if (x == 0) continue;
        if (!mono.empty()) mono += " ";
        mono += stem + "_" + std::to_string(i);
        if (x > 1) mono += "^" + std::to_string(x);
      }
      if (mono.empty()) {
        out += std::to_string(a);
      } else {
        if (a != 1) out += std::to_string(a) + " ";
        out += mono;
      }
    }
    return out;
  }

 private:
  std::size_t nvars_ = 0;
  std::map<Exps, long long> terms_;
};

using KPolynomial = IntPoly;
using MultidegreePoly = IntPoly;

namespace detail {

inline void minimalize(std::vector<Monomial>& g) {
  std::sort(g.begin(), g.end(), [](const Monomial& a, const Monomial& b) { return a.degree() < b.degree(); });
  std::vector<Monomial> out;
  for (const auto& m : g) {
    bool red = false;
    for (const auto& o : out)
      if (o.divides(m)) {
        red = true;
        break;
      }
    if (!red) out.push_back(m);
  }
  g = std::move(out);
}

class KPolyComputer {
 public:
  KPolyComputer(std::size_t nvars, std::vector<int> group, std::size_t r)
      : nvars_(nvars), group_(std::move(group)), r_(r) {}

  IntPoly run(std::vector<Monomial> gens) {
    minimalize(gens);
    return rec(std::move(gens));
  }

 private:
  IntPoly::Exps deg(const Monomial& m) const {
    IntPoly::Exps e(r_, 0);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] && group_[i] >= 0) e[group_[i]] += m[i];
    return e;
  }

  std::string key(std::vector<Monomial> g) const {
    std::sort(g.begin(), g.end(), [this](const Monomial& a, const Monomial& b) {
      for (std::size_t i = 0; i < nvars_; ++i)
        if (a[i] != b[i]) return a[i] < b[i];
      return false;
    });
    std::string k;
    k.reserve(g.size() * nvars_);
    for (const auto& m : g)
      for (std::size_t i = 0; i < nvars_; ++i) k.push_back(static_cast<char>(m[i]));
    return k;
  }

  IntPoly rec(std::vector<Monomial> gens) {
    Deadline::check();
    IntPoly one = IntPoly::one(r_);
    if (gens.empty()) return one;
    for (const auto& g : gens)
      if (g.is_one()) return IntPoly(r_);
    std::vector<int> count(nvars_, 0);
    bool coprime = true;
    std::uint64_t seen = 0;
    for (const auto& g : gens) {
      if (g.mask() & seen) coprime = false;
      seen |= g.mask();
      for (std::size_t i = 0; i < nvars_; ++i)
        if (g[i]) ++count[i];
    }
    if (coprime) {
      IntPoly p = one;
      for (const auto& g : gens) p = p * (one - IntPoly::monomial(deg(g)));
      return p;
    }
    std::string k = key(gens);
    if (auto it = memo_.find(k); it != memo_.end()) return it->second;

    std::size_t piv = static_cast<std::size_t>(std::max_element(count.begin(), count.end()) - count.begin());
    std::vector<int> ex;
    for (const auto& g : gens)
      if (g[piv]) ex.push_back(g[piv]);
    std::sort(ex.begin(), ex.end());
    int e = ex[(ex.size() - 1) / 2];
    Monomial p;
    p.set(piv, e);

    std::vector<Monomial> sum{p}, quo;
    for (const auto& g : gens) {
      if (!p.divides(g)) sum.push_back(g);
      Monomial q = g;
      q.set(piv, std::max(0, static_cast<int>(g[piv]) - e));
      quo.push_back(q);
    }
    minimalize(sum);
    minimalize(quo);
    IntPoly res = rec(std::move(sum)) + rec(std::move(quo)).shifted(deg(p));
    memo_.emplace(std::move(k), res);
    return res;
  }

  std::size_t nvars_;
  std::vector<int> group_;
  std::size_t r_;
  std::unordered_map<std::string, IntPoly> memo_;
};

// Size of a smallest set of variables meeting every mask.
inline int min_hitting_set(std::vector<std::uint64_t> sets) {
  std::sort(sets.begin(), sets.end(), [](auto a, auto b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::uint64_t> mins;
  for (auto s : sets) {
    bool red = false;
    for (auto o : mins)
      if ((o & s) == o) {
        red = true;
        break;
      }
    if (!red) mins.push_back(s);
  }
  int best = 0;
  {  // greedy bound
    std::uint64_t chosen = 0;
    for (auto s : mins)
      if (!(s & chosen)) {
        chosen |= s & (~s + 1);
        ++best;
      }
  }
  auto go = [&](auto&& self, std::uint64_t chosen, int size) -> void {
    if (size >= best) return;
    const std::uint64_t* pick = nullptr;
    int unhit = 0;
    for (const auto& s : mins)
      if (!(s & chosen)) {
        ++unhit;
        if (!pick || std::popcount(s) < std::popcount(*pick)) pick = &s;
      }
    if (!pick) {
      best = size;
      return;
    }
    if (size + 1 >= best) return;
    for (std::uint64_t rest = *pick; rest; rest &= rest - 1) self(self, chosen | (rest & (~rest + 1)), size + 1);
  };
  go(go, 0, 0);
  return best;
}

inline mpz_class factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

// Coefficient of prod a_j^{e_j} in (a_1 + ... + a_r)^{sum e_j}.
inline mpz_class multinomial(const std::vector<int>& e) {
  long s = 0;
  for (int x : e) s += x;
  mpz_class v = factorial(s);
  for (int x : e) v /= factorial(x);
  return v;
}

}  // namespace detail

inline IntPoly k_polynomial(const std::vector<Monomial>& gens, std::size_t nvars, const std::vector<int>& group,
                            std::size_t ngroups) {
  detail::KPolyComputer k(nvars, group, ngroups);
  return k.run(gens);
}

template <class F>
IntPoly k_polynomial(const Ring<F>& r, const std::vector<Monomial>& gens) {
  return k_polynomial(gens, r.nvars(), r.groups(), r.ngroups());
}

template <class F>
IntPoly k_polynomial(const Ideal<F>& m) {
  std::vector<Monomial> g;
  for (const auto& p : m.gens()) {
    if (p.size() != 1) throw Error(Errc::NotMonomial, "ideal is not generated by monomials");
    g.push_back(p.lead().m);
  }
  return k_polynomial(*m.ring(), g);
}

inline int krull_dim_monomial(std::size_t nvars, const std::vector<Monomial>& gens) {
  std::vector<std::uint64_t> sets;
  for (const auto& m : gens) {
    if (m.is_one()) throw Error(Errc::UnitIdeal, "unit ideal has no dimension");
    sets.push_back(m.mask());
  }
  return static_cast<int>(nvars) - detail::min_hitting_set(std::move(sets));
}

template <class F>
int krull_dim(const Ideal<F>& a) {
  if (a.is_unit()) throw Error(Errc::UnitIdeal, "unit ideal has no dimension");
  return krull_dim_monomial(a.ring()->nvars(), a.gb().leading_monomials());
}

// Lowest-degree part of K(1 - T), which sits in degree codim.
inline MultidegreePoly multidegree_from_k(const IntPoly& k, int codim) {
  const std::size_t r = k.nvars();
  std::map<IntPoly::Exps, mpz_class> acc;
  std::vector<int> b(r, 0);
  for (const auto& [a, c] : k.terms()) {
    // coefficient of T^b in prod (1 - T_j)^{a_j} with |b| = codim
    auto go = [&](auto&& self, std::size_t j, int left, mpz_class coef) -> void {
      if (j == r) {
        if (left == 0) acc[b] += coef;
        return;
      }
      for (int x = 0; x <= std::min(left, a[j]); ++x) {
        mpz_class bin;
        mpz_bin_uiui(bin.get_mpz_t(), static_cast<unsigned long>(a[j]), static_cast<unsigned long>(x));
        b[j] = x;
        self(self, j + 1, left - x, (x % 2 ? -coef : coef) * bin);
      }
      b[j] = 0;
    };
    go(go, 0, codim, mpz_class(static_cast<long>(c)));
  }
  MultidegreePoly out(r);
  for (const auto& [e, c] : acc)
    if (c != 0) {
      if (!c.fits_slong_p()) throw Error(Errc::NonIntegralDegree, "multidegree coefficient overflow");
      out.add_term(e, c.get_si());
    }
  return out;
}

template <class F>
MultidegreePoly multidegree(const Ideal<F>& a) {
  if (a.is_unit()) throw Error(Errc::UnitIdeal, "unit ideal has no multidegree");
  const auto& r = *a.ring();
  auto lm = a.gb().leading_monomials();
  int codim = static_cast<int>(r.nvars()) - krull_dim_monomial(r.nvars(), lm);
  return multidegree_from_k(k_polynomial(r, lm), codim);
}

// d_i for i = 0..k: coefficient of prod a^n prod b^m in (sum a)^i (sum b)^(k-i) P.
inline std::vector<long long> segre_convert(const MultidegreePoly& p, int k, const std::vector<int>& dims_a,
                                            const std::vector<int>& dims_b) {
  const std::size_t ra = dims_a.size(), rb = dims_b.size();
  if (p.nvars() != ra + rb) throw Error(Errc::DegreeMismatch, "multidegree has the wrong number of variables");
  int total = 0;
  for (int d : dims_a) total += d;
  for (int d : dims_b) total += d;
  if (!p.is_homogeneous_of(total - k)) throw Error(Errc::DegreeMismatch, "multidegree is not homogeneous of degree codim");
  std::vector<mpz_class> d(static_cast<std::size_t>(k) + 1, 0);
  for (const auto& [e, c] : p.terms()) {
    std::vector<int> ea(ra), eb(rb);
    int sa = 0;
    bool ok = true;
    for (std::size_t j = 0; j < ra; ++j) {
      ea[j] = dims_a[j] - e[j];
      sa += ea[j];
      ok = ok && ea[j] >= 0;
    }
    for (std::size_t j = 0; j < rb; ++j) {
      eb[j] = dims_b[j] - e[ra + j];
      ok = ok && eb[j] >= 0;
    }
    if (!ok || sa > k) continue;
    d[static_cast<std::size_t>(sa)] += mpz_class(static_cast<long>(c)) * detail::multinomial(ea) * detail::multinomial(eb);
  }
  std::vector<long long> out;
  for (const auto& x : d) out.push_back(x.get_si());
  return out;
}

template <class F>
long long segre_degree(const Ideal<F>& a) {
  const auto& r = *a.ring();
  auto md = multidegree(a);
  int codim = md.total_degree();
  int dim = 0;
  for (int n : r.dims()) dim += n;
  dim -= codim;
  return segre_convert(md, dim, r.dims(), {}).back();
}

}  // namespace mpv

#endif
