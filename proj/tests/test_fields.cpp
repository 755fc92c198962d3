#include <gtest/gtest.h>

#include "mpv/field.hpp"

using namespace mpv;

TEST(Fields, RationalSum) {
  auto a = FieldElem::rational(mpq_class(1, 2));
  auto b = FieldElem::rational(mpq_class(1, 3));
  EXPECT_EQ((a + b).to_string(), "5/6");
}

TEST(Fields, InverseSmallPrime) {
  EXPECT_EQ(FieldElem::residue(7, 2).inv().residue_value(), 4u);
}

TEST(Fields, InverseMultipliesBack) {
  PrimeField f(1000003);
  auto x = f.inv(10);
  EXPECT_EQ(f.mul(x, 10), 1u);
  // independent oracle: Fermat inverse
  EXPECT_EQ(x, detail::powmod(10, 1000003 - 2, 1000003));
}

TEST(Fields, DivisionByZero) {
  PrimeField f(7);
  try {
    f.inv(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DivisionByZero);
  }
  EXPECT_THROW(RationalField().inv(0), Error);
}

TEST(Fields, MixedFields) {
  try {
    (void)(FieldElem::residue(7, 1) + FieldElem::residue(11, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MixedFields);
  }
  EXPECT_THROW((void)(FieldElem::rational(1) * FieldElem::residue(11, 1)), Error);
}

TEST(Fields, BadPrime) {
  EXPECT_THROW(PrimeField(9), Error);
  EXPECT_THROW(PrimeField(2), Error);
  EXPECT_THROW(PrimeField((1ull << 62) + 135), Error);
  EXPECT_NO_THROW(PrimeField(4611686018427387847ull));  // largest prime below 2^62
}

TEST(Fields, LargePrimeArithmetic) {
  const std::uint64_t p = 4611686018427387847ull;
  PrimeField f(p);
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    auto a = f.random(rng);
    if (a == 0) continue;
    EXPECT_EQ(f.mul(a, f.inv(a)), 1u);
    mpz_class prod = mpz_class(std::to_string(a)) * mpz_class(std::to_string(a + 0)) % mpz_class(std::to_string(p));
    EXPECT_EQ(std::to_string(f.mul(a, a)), prod.get_str());
  }
}

TEST(Fields, ReduceModP) {
  EXPECT_EQ(reduce_mod_p(FieldElem::rational(mpq_class(5, 3)), 7).residue_value(), 4u);
  EXPECT_EQ((3 * 4) % 7, 5);
  EXPECT_EQ(reduce_mod_p(FieldElem::rational(0), 101).residue_value(), 0u);
  EXPECT_EQ(reduce_mod_p(FieldElem::rational(mpq_class(-1, 2)), 7).residue_value(), 3u);
  try {
    reduce_mod_p(FieldElem::rational(mpq_class(1, 7)), 7);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadReduction);
  }
}

TEST(Fields, ReduceIsRingMap) {
  Rng rng(11);
  RationalField q(50);
  for (int i = 0; i < 300; ++i) {
    mpq_class a = q.random(rng) / mpq_class(q.random(rng) * q.random(rng) + 1000);
    mpq_class b = q.random(rng) / mpq_class(static_cast<long>(1 + rng() % 40));
    auto ra = reduce_mod_p(FieldElem::rational(a), 1000003);
    auto rb = reduce_mod_p(FieldElem::rational(b), 1000003);
    EXPECT_EQ(reduce_mod_p(FieldElem::rational(a + b), 1000003), ra + rb);
    EXPECT_EQ(reduce_mod_p(FieldElem::rational(a * b), 1000003), ra * rb);
  }
}

template <class F>
void check_axioms(const F& f, Rng& rng) {
  for (int i = 0; i < 1000; ++i) {
    auto a = f.random(rng), b = f.random(rng), c = f.random(rng);
    EXPECT_TRUE(f.equal(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
    EXPECT_TRUE(f.equal(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
    EXPECT_TRUE(f.equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
    EXPECT_TRUE(f.is_zero(f.add(a, f.neg(a))));
    if (!f.is_zero(a)) {
      EXPECT_TRUE(f.is_one(f.mul(a, f.inv(a))));
    }
  }
}

TEST(Fields, AxiomsPrime) {
  Rng rng(1);
  for (std::uint64_t p : {7ull, 65537ull, 1000003ull, 4611686018427387847ull}) check_axioms(PrimeField(p), rng);
}

TEST(Fields, AxiomsRational) {
  Rng rng(2);
  check_axioms(RationalField(), rng);
}

TEST(Fields, RandomRanges) {
  Rng rng(1);
  PrimeField f(7);
  for (int i = 0; i < 100; ++i) EXPECT_LT(f.random(rng), 7u);
  RationalField q;
  for (int i = 0; i < 100; ++i) {
    auto x = q.random(rng);
    EXPECT_LE(abs(x), 10);
    EXPECT_EQ(x.get_den(), 1);
  }
  Rng r1(42), r2(42);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(random_elem(FieldSpec::prime(65537), r1), random_elem(FieldSpec::prime(65537), r2));
}

TEST(Roots, SmallExamples) {
  PrimeField f(7);
  Rng rng(5);
  EXPECT_EQ(univariate_roots(f, {6, 0, 1}, rng), (std::vector<std::uint64_t>{1, 6}));
  EXPECT_EQ(univariate_roots(f, {5, 0, 1}, rng), (std::vector<std::uint64_t>{3, 4}));
  EXPECT_TRUE(univariate_roots(f, {1, 0, 1}, rng).empty());
  EXPECT_THROW(univariate_roots(f, {0, 0}, rng), Error);
}

TEST(Roots, BruteForceAllSmallPrimes) {
  Rng rng(9);
  for (std::uint64_t p = 3; p <= 101; ++p) {
    if (!detail::is_prime_u64(p)) continue;
    PrimeField f(p);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t deg = 1 + rng() % 6;
      upoly::Coeffs c(deg + 1);
      for (auto& x : c) x = f.random(rng);
      if (c.back() == 0) c.back() = 1;
      // sometimes force repeated and split factors
      if (trial % 4 == 0) c = upoly::mul(f, c, upoly::Coeffs{f.neg(trial % p), 1});
      std::vector<std::uint64_t> brute;
      for (std::uint64_t x = 0; x < p; ++x)
        if (upoly::eval(f, c, x) == 0) brute.push_back(x);
      EXPECT_EQ(univariate_roots(f, c, rng), brute) << "p=" << p;
    }
  }
}

TEST(Roots, LargePrime) {
  PrimeField f(1000003);
  Rng rng(4);
  // (x-3)(x-500000)(x^2+1)
  upoly::Coeffs c = upoly::mul(f, upoly::mul(f, {f.neg(3), 1}, {f.neg(500000), 1}), {1, 0, 1});
  auto r = univariate_roots(f, c, rng);
  for (auto x : r) EXPECT_EQ(upoly::eval(f, c, x), 0u);
  EXPECT_TRUE(std::find(r.begin(), r.end(), 3u) != r.end());
  EXPECT_TRUE(std::find(r.begin(), r.end(), 500000u) != r.end());
}
