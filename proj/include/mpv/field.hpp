#ifndef MPV_FIELD_HPP
#define MPV_FIELD_HPP

// Exact coefficient fields: the rationals (GMP) and prime fields GF(p)
// with p an odd prime below 2^62.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mpv/error.hpp"

namespace mpv {

using Rng = std::mt19937_64;

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

}  // namespace detail

enum class FieldKind { Rationals, PrimeField };

/// Runtime description of a coefficient field.
struct FieldSpec {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t characteristic = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint64_t p) { return {FieldKind::PrimeField, p}; }

  bool operator==(const FieldSpec&) const = default;

  std::string to_string() const {
    return kind == FieldKind::Rationals ? "QQ" : "GF(" + std::to_string(characteristic) + ")";
  }
};

class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p < 3 || p >= (1ull << 62) || !detail::is_prime_u64(p)) {
      throw Error(Errc::BadArity, "GF(p) needs an odd prime p < 2^62, got " + std::to_string(p));
    }
  }

  std::uint64_t characteristic() const { return p_; }
  FieldSpec spec() const { return FieldSpec::prime(p_); }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(Elem a) const { return a == 0; }
  bool is_one(Elem a) const { return a == 1; }
  bool equal(Elem a, Elem b) const { return a == b; }

  Elem add(Elem a, Elem b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : a + p_ - b; }
  Elem neg(Elem a) const { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const { return p_ < (1ull << 32) ? a * b % p_ : detail::mulmod(a, b, p_); }

  Elem inv(Elem a) const {
    if (a == 0) throw Error(Errc::DivisionByZero, "inverse of zero in " + spec().to_string());
    // extended Euclid on signed 128-bit to stay exact near 2^62
    __int128 t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      __int128 q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    if (t < 0) t += p_;
    return static_cast<Elem>(t);
  }
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem from_int(long long v) const {
    long long m = static_cast<long long>(p_);
    long long r = v % m;
    return static_cast<Elem>(r < 0 ? r + m : r);
  }
  Elem from_mpz(const mpz_class& z) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), z.get_mpz_t(), p_);
    return r.get_ui();
  }
  Elem from_rational(const mpq_class& q) const {
    Elem den = from_mpz(q.get_den());
    if (den == 0) {
      throw Error(Errc::BadReduction, "denominator of " + q.get_str() + " vanishes mod " + std::to_string(p_));
    }
    return div(from_mpz(q.get_num()), den);
  }

  /// Symmetric lift used for printing.
  long long to_signed(Elem a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - static_cast<long long>(p_) : static_cast<long long>(a);
  }
  std::string to_string(Elem a) const { return std::to_string(to_signed(a)); }

  Elem random(Rng& rng) const { return std::uniform_int_distribution<Elem>(0, p_ - 1)(rng); }

 private:
  std::uint64_t p_;
};

class RationalField {
 public:
  using Elem = mpq_class;

  explicit RationalField(long height = 10) : height_(height) {}

  std::uint64_t characteristic() const { return 0; }
  FieldSpec spec() const { return FieldSpec::rationals(); }
  bool operator==(const RationalField&) const { return true; }

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw Error(Errc::DivisionByZero, "inverse of zero in QQ");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const {
    if (sgn(b) == 0) throw Error(Errc::DivisionByZero, "division by zero in QQ");
    return a / b;
  }

  Elem from_int(long long v) const { return Elem(mpz_class(std::to_string(v))); }
  Elem from_mpz(const mpz_class& z) const { return Elem(z); }
  Elem from_rational(const mpq_class& q) const { return q; }

  std::string to_string(const Elem& a) const { return a.get_str(); }

  long height() const { return height_; }
  void set_height(long h) { height_ = h; }

  /// Uniform integer in [-H, H].
  Elem random(Rng& rng) const { return from_int(std::uniform_int_distribution<long long>(-height_, height_)(rng)); }

 private:
  long height_;
};

/// A field-tagged scalar, for code that chooses the field at runtime.
class FieldElem {
 public:
  FieldElem() = default;
  static FieldElem rational(mpq_class q) {
    q.canonicalize();
    FieldElem e;
    e.spec_ = FieldSpec::rationals();
    e.q_ = std::move(q);
    return e;
  }
  static FieldElem residue(std::uint64_t p, std::uint64_t r) {
    PrimeField f(p);
    FieldElem e;
    e.spec_ = f.spec();
    e.r_ = r % p;
    return e;
  }

  const FieldSpec& spec() const { return spec_; }
  const mpq_class& rational_value() const { return q_; }
  std::uint64_t residue_value() const { return r_; }
  bool is_zero() const { return spec_.kind == FieldKind::Rationals ? sgn(q_) == 0 : r_ == 0; }

  friend FieldElem operator+(const FieldElem& a, const FieldElem& b) { return combine(a, b, '+'); }
  friend FieldElem operator-(const FieldElem& a, const FieldElem& b) { return combine(a, b, '-'); }
  friend FieldElem operator*(const FieldElem& a, const FieldElem& b) { return combine(a, b, '*'); }
  friend FieldElem operator/(const FieldElem& a, const FieldElem& b) { return combine(a, b, '/'); }
  FieldElem operator-() const {
    if (spec_.kind == FieldKind::Rationals) return rational(-q_);
    return residue(spec_.characteristic, PrimeField(spec_.characteristic).neg(r_));
  }
  FieldElem inv() const {
    if (spec_.kind == FieldKind::Rationals) return rational(RationalField().inv(q_));
    return residue(spec_.characteristic, PrimeField(spec_.characteristic).inv(r_));
  }
  bool operator==(const FieldElem& o) const {
    return spec_ == o.spec_ && (spec_.kind == FieldKind::Rationals ? q_ == o.q_ : r_ == o.r_);
  }

  std::string to_string() const {
    return spec_.kind == FieldKind::Rationals ? q_.get_str() : std::to_string(r_);
  }

 private:
  static FieldElem combine(const FieldElem& a, const FieldElem& b, char op) {
    if (!(a.spec_ == b.spec_)) {
      throw Error(Errc::MixedFields, a.spec_.to_string() + " vs " + b.spec_.to_string());
    }
    if (a.spec_.kind == FieldKind::Rationals) {
      RationalField f;
      switch (op) {
        case '+': return rational(f.add(a.q_, b.q_));
        case '-': return rational(f.sub(a.q_, b.q_));
        case '*': return rational(f.mul(a.q_, b.q_));
        default: return rational(f.div(a.q_, b.q_));
      }
    }
    PrimeField f(a.spec_.characteristic);
    switch (op) {
      case '+': return residue(f.characteristic(), f.add(a.r_, b.r_));
      case '-': return residue(f.characteristic(), f.sub(a.r_, b.r_));
      case '*': return residue(f.characteristic(), f.mul(a.r_, b.r_));
      default: return residue(f.characteristic(), f.div(a.r_, b.r_));
    }
  }

  FieldSpec spec_{};
  mpq_class q_{0};
  std::uint64_t r_ = 0;
};

/// Image of a rational number under QQ -> GF(p).
inline FieldElem reduce_mod_p(const FieldElem& a, std::uint64_t p) {
  if (a.spec().kind != FieldKind::Rationals) {
    throw Error(Errc::BadReduction, "element already lives in " + a.spec().to_string());
  }
  PrimeField f(p);
  return FieldElem::residue(p, f.from_rational(a.rational_value()));
}

inline FieldElem random_elem(const FieldSpec& spec, Rng& rng, long height = 10) {
  if (spec.kind == FieldKind::Rationals) return FieldElem::rational(RationalField(height).random(rng));
  return FieldElem::residue(spec.characteristic, PrimeField(spec.characteristic).random(rng));
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials over GF(p), coefficients low degree first.

namespace upoly {

using Coeffs = std::vector<std::uint64_t>;

inline void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Coeffs mul(const PrimeField& f, const Coeffs& a, const Coeffs& b) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

/// Remainder of a modulo a nonzero b.
inline Coeffs rem(const PrimeField& f, Coeffs a, const Coeffs& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const auto lead_inv = f.inv(b.back());
  while (a.size() > db && !a.empty()) {
    auto c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  return a;
}

inline Coeffs quot(const PrimeField& f, Coeffs a, const Coeffs& b) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return {};
  Coeffs q(a.size() - db, 0);
  const auto lead_inv = f.inv(b.back());
  while (a.size() > db && !a.empty()) {
    auto c = f.mul(a.back(), lead_inv);
    std::size_t shift = a.size() - 1 - db;
    q[shift] = c;
    for (std::size_t i = 0; i <= db; ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    trim(a);
  }
  trim(q);
  return q;
}

inline Coeffs monic(const PrimeField& f, Coeffs a) {
  trim(a);
  if (a.empty()) return a;
  auto li = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, li);
  return a;
}

inline Coeffs gcd(const PrimeField& f, Coeffs a, Coeffs b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = rem(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

/// base^e mod m by square-and-multiply.
inline Coeffs powmod(const PrimeField& f, Coeffs base, std::uint64_t e, const Coeffs& m) {
  Coeffs result{1};
  base = rem(f, base, m);
  while (e) {
    if (e & 1) result = rem(f, mul(f, result, base), m);
    base = rem(f, mul(f, base, base), m);
    e >>= 1;
  }
  return result;
}

inline std::uint64_t eval(const PrimeField& f, const Coeffs& a, std::uint64_t x) {
  std::uint64_t r = 0;
  for (std::size_t i = a.size(); i-- > 0;) r = f.add(f.mul(r, x), a[i]);
  return r;
}

inline void split_linear(const PrimeField& f, const Coeffs& g, Rng& rng, std::vector<std::uint64_t>& out) {
  if (g.size() <= 1) return;
  if (g.size() == 2) {  // monic x + c
    out.push_back(f.neg(g[0]));
    return;
  }
  const std::uint64_t p = f.characteristic();
  for (;;) {
    Coeffs shifted{f.random(rng), 1};
    Coeffs h = powmod(f, shifted, (p - 1) / 2, g);
    if (h.empty()) h = {0};
    h[0] = f.sub(h[0], 1);
    trim(h);
    Coeffs d = gcd(f, g, h);
    if (d.size() > 1 && d.size() < g.size()) {
      split_linear(f, d, rng, out);
      split_linear(f, monic(f, quot(f, g, d)), rng, out);
      return;
    }
  }
}

}  // namespace upoly

/// All roots in GF(p) of a nonzero polynomial (coefficients low degree first),
/// sorted ascending, without multiplicity.
inline std::vector<std::uint64_t> univariate_roots(const PrimeField& f, upoly::Coeffs coeffs, Rng& rng) {
  upoly::trim(coeffs);
  if (coeffs.empty()) throw Error(Errc::ZeroPolynomial, "root finding of the zero polynomial");
  std::vector<std::uint64_t> roots;
  if (coeffs.size() == 1) return roots;
  upoly::Coeffs g = upoly::monic(f, coeffs);
  // x^p - x = product of all linear factors
  upoly::Coeffs xp = upoly::powmod(f, {0, 1}, f.characteristic(), g);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = f.sub(xp[1], 1);
  upoly::trim(xp);
  upoly::Coeffs lin = upoly::gcd(f, g, xp);
  upoly::split_linear(f, lin, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace mpv

#endif  // MPV_FIELD_HPP
