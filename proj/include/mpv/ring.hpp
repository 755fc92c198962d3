#ifndef MPV_RING_HPP
#define MPV_RING_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "mpv/error.hpp"
#include "mpv/field.hpp"

namespace mpv {

inline constexpr std::size_t kMaxVars = 64;

/// Exponent vector with a cached support mask and total degree.
/// `comp` is the free-module position (0 for ring elements).
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t i, unsigned power = 1) {
    Monomial m;
    m.set(i, power);
    return m;
  }

  unsigned operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t degree() const { return deg_; }
  std::uint64_t mask() const { return mask_; }
  std::uint16_t comp() const { return comp_; }
  void set_comp(std::uint16_t c) { comp_ = c; }

  void set(std::size_t i, unsigned power) {
    if (power > 255) throw Error(Errc::ExponentOverflow, "exponent above 255");
    deg_ = deg_ - e_[i] + power;
    e_[i] = static_cast<std::uint8_t>(power);
    if (power) {
      mask_ |= (1ull << i);
    } else {
      mask_ &= ~(1ull << i);
    }
  }

  bool is_one() const { return deg_ == 0; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    unsigned overflow = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(a.e_[i]) + unsigned(b.e_[i]);
      overflow |= s;
      r.e_[i] = static_cast<std::uint8_t>(s);
    }
    if (overflow > 255) {
      for (std::size_t i = 0; i < kMaxVars; ++i)
        if (unsigned(a.e_[i]) + unsigned(b.e_[i]) > 255) throw Error(Errc::ExponentOverflow, "exponent above 255");
    }
    r.mask_ = a.mask_ | b.mask_;
    r.deg_ = a.deg_ + b.deg_;
    r.comp_ = a.comp_ | b.comp_;
    return r;
  }

  /// True when this divides b (same module position).
  bool divides(const Monomial& b) const {
    if (comp_ != b.comp_ || (mask_ & ~b.mask_) != 0 || deg_ > b.deg_) return false;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] > b.e_[i]) return false;
    return true;
  }

  /// b / a for a dividing b; the quotient is a ring monomial.
  friend Monomial quotient(const Monomial& b, const Monomial& a) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = static_cast<std::uint8_t>(b.e_[i] - a.e_[i]);
    r.deg_ = b.deg_ - a.deg_;
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (r.e_[i]) m |= (1ull << i);
    r.mask_ = m;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::uint32_t d = 0;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      r.e_[i] = a.e_[i] > b.e_[i] ? a.e_[i] : b.e_[i];
      d += r.e_[i];
    }
    r.deg_ = d;
    r.mask_ = a.mask_ | b.mask_;
    r.comp_ = a.comp_;
    return r;
  }

  friend Monomial gcd(const Monomial& a, const Monomial& b) {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      auto v = a.e_[i] < b.e_[i] ? a.e_[i] : b.e_[i];
      if (v) r.set(i, v);
    }
    return r;
  }

  bool coprime(const Monomial& b) const { return (mask_ & b.mask_) == 0; }

  bool operator==(const Monomial& o) const {
    return mask_ == o.mask_ && deg_ == o.deg_ && comp_ == o.comp_ && e_ == o.e_;
  }

  std::size_t hash() const {
    std::size_t h = mask_ * 0x9E3779B97F4A7C15ull ^ (std::size_t(comp_) << 48) ^ deg_;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
      if (e_[i]) h = (h ^ (i * 131 + e_[i])) * 0x100000001B3ull;
    }
    return h;
  }

 private:
  std::array<std::uint8_t, kMaxVars> e_{};
  std::uint64_t mask_ = 0;
  std::uint32_t deg_ = 0;
  std::uint16_t comp_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Global orders: (weighted) degree reverse lexicographic, optionally split
/// into an eliminated leading block and a trailing block, each compared by
/// weighted degree then reverse lex. Free-module terms use position over
/// term with lower positions larger.
class MonomialOrder {
 public:
  MonomialOrder() = default;

  static MonomialOrder grevlex(std::size_t nvars) {
    MonomialOrder o;
    o.nvars_ = nvars;
    return o;
  }
  static MonomialOrder weighted(std::vector<int> weights) {
    MonomialOrder o;
    o.nvars_ = weights.size();
    o.set_weights(std::move(weights));
    return o;
  }
  /// Eliminates the first `block` variables.
  static MonomialOrder elimination(std::size_t nvars, std::size_t block, std::vector<int> weights = {}) {
    MonomialOrder o;
    o.nvars_ = nvars;
    o.elim_ = block;
    if (!weights.empty()) o.set_weights(std::move(weights));
    return o;
  }

  std::size_t nvars() const { return nvars_; }
  std::size_t elim_block() const { return elim_; }
  const std::vector<int>& weights() const { return weights_; }
  bool is_weighted() const { return !weights_.empty(); }

  long weight(std::size_t i) const { return weights_.empty() ? 1 : weights_[i]; }

  long wdeg(const Monomial& m) const {
    if (weights_.empty()) return m.degree();
    long d = 0;
    for (std::size_t i = 0; i < nvars_; ++i) d += long(weights_[i]) * m[i];
    return d;
  }

  /// +1 if a > b, -1 if a < b, 0 if equal.
  int cmp(const Monomial& a, const Monomial& b) const {
    if (a.comp() != b.comp()) return a.comp() < b.comp() ? 1 : -1;
    if (elim_ == 0) return cmp_range(a, b, 0, nvars_);
    int c = cmp_range(a, b, 0, elim_);
    if (c != 0) return c;
    return cmp_range(a, b, elim_, nvars_);
  }

  bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

 private:
  void set_weights(std::vector<int> w) {
    bool uniform = true;
    for (int x : w) {
      if (x <= 0) throw Error(Errc::BadArity, "monomial order weights must be positive");
      uniform = uniform && x == 1;
    }
    if (!uniform) weights_ = std::move(w);
  }

  int cmp_range(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) const {
    long da = 0, db = 0;
    if (lo == 0 && hi == nvars_ && weights_.empty()) {
      da = a.degree();
      db = b.degree();
    } else {
      for (std::size_t i = lo; i < hi; ++i) {
        long w = weights_.empty() ? 1 : weights_[i];
        da += w * a[i];
        db += w * b[i];
      }
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = hi; i-- > lo;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  std::size_t nvars_ = 0;
  std::size_t elim_ = 0;
  std::vector<int> weights_;
};

/// Polynomial ring in r groups of variables; variable i has degree e_{group(i)}.
/// Auxiliary rings used internally may carry ungraded variables (group -1).
template <class F>
class Ring {
 public:
  using Field = F;

  Ring(F field, std::vector<int> dims, std::vector<std::string> names = {})
      : field_(std::move(field)), dims_(std::move(dims)) {
    if (dims_.empty()) throw Error(Errc::BadArity, "a multigraded ring needs at least one group of variables");
    for (std::size_t j = 0; j < dims_.size(); ++j) {
      if (dims_[j] < 0) throw Error(Errc::BadArity, "negative projective dimension");
      for (int i = 0; i <= dims_[j]; ++i) group_.push_back(static_cast<int>(j));
    }
    if (names.empty()) {
      for (std::size_t j = 0; j < dims_.size(); ++j)
        for (int i = 0; i <= dims_[j]; ++i) names.push_back("x" + std::to_string(j + 1) + "_" + std::to_string(i));
    }
    names_ = std::move(names);
    finish();
  }

  /// Ring with an explicit group per variable (-1 = ungraded auxiliary).
  Ring(F field, std::vector<int> dims, std::vector<int> group_of_var, std::vector<std::string> names)
      : field_(std::move(field)), dims_(std::move(dims)), group_(std::move(group_of_var)), names_(std::move(names)) {
    finish();
  }

  const F& field() const { return field_; }
  std::size_t nvars() const { return group_.size(); }
  std::size_t ngroups() const { return dims_.size(); }
  const std::vector<int>& dims() const { return dims_; }
  int group(std::size_t var) const { return group_[var]; }
  const std::vector<int>& groups() const { return group_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const MonomialOrder& order() const { return order_; }

  /// First variable index of group j.
  std::size_t group_begin(std::size_t j) const {
    std::size_t s = 0;
    for (std::size_t k = 0; k < j; ++k) s += dims_[k] + 1;
    return s;
  }
  std::vector<std::size_t> group_vars(std::size_t j) const {
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < group_.size(); ++i)
      if (group_[i] == static_cast<int>(j)) v.push_back(i);
    return v;
  }

  long var_index(const std::string& n) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == n) return static_cast<long>(i);
    return -1;
  }

  std::vector<int> multidegree(const Monomial& m) const {
    std::vector<int> d(dims_.size(), 0);
    for (std::size_t i = 0; i < group_.size(); ++i)
      if (group_[i] >= 0) d[group_[i]] += m[i];
    return d;
  }

  /// Same field and same factor dimensions; names are irrelevant.
  bool compatible(const Ring& o) const {
    return field_ == o.field_ && dims_ == o.dims_ && group_ == o.group_;
  }

  std::string ambient_string() const {
    std::string s;
    for (std::size_t j = 0; j < dims_.size(); ++j) {
      if (j) s += " x ";
      s += "PP^" + std::to_string(dims_[j]);
    }
    return s;
  }

 private:
  void finish() {
    if (group_.size() > kMaxVars) {
      throw Error(Errc::BadArity, "at most " + std::to_string(kMaxVars) + " variables are supported");
    }
    if (names_.size() != group_.size()) {
      throw Error(Errc::BadArity, "expected " + std::to_string(group_.size()) + " variable names, got " +
                                      std::to_string(names_.size()));
    }
    std::unordered_set<std::string> seen;
    for (const auto& n : names_)
      if (!seen.insert(n).second) throw Error(Errc::DuplicateName, "variable name '" + n + "' used twice");
    order_ = MonomialOrder::grevlex(group_.size());
  }

  F field_;
  std::vector<int> dims_;
  std::vector<int> group_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

template <class F>
RingPtr<F> make_ring(F field, std::vector<int> dims, std::vector<std::string> names = {}) {
  return std::make_shared<const Ring<F>>(std::move(field), std::move(dims), std::move(names));
}

}  // namespace mpv

#endif  // MPV_RING_HPP
