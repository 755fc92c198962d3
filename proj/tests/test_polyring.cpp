#include <gtest/gtest.h>

#include <map>

#include "mpv/poly.hpp"

using namespace mpv;

namespace {

const char* kCubic =
    "t*u*x-u^2*x+u*v*x-v^2*x+t*x^2-u*x^2+t^2*y-t*u*y-t*v*y-t*x*y-v*x*y-t*y^2+t*u*z+v^2*z-t*x*z-u*y*z-v*y*z-t*z^2+u*z^2";

template <class F>
Poly<F> P(const RingPtr<F>& r, const std::string& s) {
  return parse_poly(r, s);
}

}  // namespace

TEST(Ring, NamesAndGrading) {
  auto r = make_ring(RationalField(), {5}, {"t", "u", "v", "x", "y", "z"});
  EXPECT_EQ(r->nvars(), 6u);
  EXPECT_EQ(r->ambient_string(), "PP^5");
  auto s = make_ring(PrimeField(7), {1, 1});
  EXPECT_EQ(s->names(), (std::vector<std::string>{"x1_0", "x1_1", "x2_0", "x2_1"}));
  EXPECT_EQ(s->groups(), (std::vector<int>{0, 0, 1, 1}));
  EXPECT_EQ(s->ambient_string(), "PP^1 x PP^1");
}

TEST(Ring, Errors) {
  try {
    make_ring(RationalField(), {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadArity);
  }
  try {
    make_ring(RationalField(), {1}, {"a", "a"});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DuplicateName);
  }
  EXPECT_THROW(make_ring(RationalField(), {-1}), Error);
  EXPECT_THROW(make_ring(RationalField(), {2}, {"a", "b"}), Error);
}

TEST(Poly, Multidegree) {
  auto r = make_ring(PrimeField(7), {1, 1});
  EXPECT_EQ(*P(r, "x1_0*x2_1").multidegree(), (std::vector<int>{1, 1}));
  EXPECT_EQ(*P(r, "x1_0^2+x1_0*x1_1").multidegree(), (std::vector<int>{2, 0}));
  EXPECT_FALSE(P(r, "x1_0+x2_0").multidegree().has_value());
  try {
    (void)Poly<PrimeField>(r).multidegree();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroPolynomial);
  }
}

TEST(Poly, Arithmetic) {
  auto r = make_ring(RationalField(), {1}, {"x", "y"});
  EXPECT_EQ(P(r, "(x+y)*(x-y)"), P(r, "x^2-y^2"));
  EXPECT_EQ(P(r, "x^2-y^2").to_string(), "x^2 - y^2");
  auto f = P(r, "3/2*x*y-7");
  EXPECT_EQ(f + Poly<RationalField>(r), f);
  EXPECT_EQ(f.to_string(), "(3/2)*x*y - 7");
  EXPECT_EQ(P(r, f.to_string()), f);
  auto other = make_ring(RationalField(), {2});
  try {
    (void)(f + P(other, "x1_0"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MixedRings);
  }
}

TEST(Poly, ParseErrors) {
  auto r = make_ring(RationalField(), {1}, {"x", "y"});
  EXPECT_THROW(P(r, "x+"), Error);
  EXPECT_THROW(P(r, "x+w"), Error);
  EXPECT_THROW(P(r, "(x"), Error);
  EXPECT_THROW(P(r, "x^300"), Error);
}

// Dense oracle: polynomials as maps exponent-vector -> coefficient.
TEST(Poly, MultiplicationMatchesDenseOracle) {
  PrimeField f(101);
  auto r = make_ring(f, {3});
  Rng rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    std::map<std::vector<unsigned>, std::uint64_t> da, db;
    Terms<PrimeField> ta, tb;
    auto fill = [&](auto& d, auto& t) {
      for (int k = 0; k < 8; ++k) {
        std::vector<unsigned> e(4, 0);
        unsigned left = rng() % 4;
        for (unsigned i = 0; i < 4 && left; ++i) {
          unsigned x = rng() % (left + 1);
          e[i] = x;
          left -= x;
        }
        auto c = f.random(rng);
        d[e] = f.add(d[e], c);
        Monomial m;
        for (unsigned i = 0; i < 4; ++i) m.set(i, e[i]);
        t.push_back({m, c});
      }
    };
    fill(da, ta);
    fill(db, tb);
    Poly<PrimeField> a(r, ta), b(r, tb);
    std::map<std::vector<unsigned>, std::uint64_t> dp;
    for (auto& [ea, ca] : da)
      for (auto& [eb, cb] : db) {
        std::vector<unsigned> e(4);
        for (int i = 0; i < 4; ++i) e[i] = ea[i] + eb[i];
        dp[e] = f.add(dp[e], f.mul(ca, cb));
      }
    auto prod = a * b;
    std::size_t nonzero = 0;
    for (auto& [e, c] : dp)
      if (c) ++nonzero;
    ASSERT_EQ(prod.size(), nonzero);
    for (const auto& t : prod.terms()) {
      std::vector<unsigned> e(4);
      for (int i = 0; i < 4; ++i) e[i] = t.m[i];
      EXPECT_EQ(dp[e], t.c);
    }
  }
}

TEST(Poly, Evaluate) {
  auto r = make_ring(RationalField(), {1}, {"x", "y"});
  std::vector<mpq_class> pt{2, 3};
  EXPECT_EQ(P(r, "x^2+y").evaluate(pt), 7);
  EXPECT_THROW(P(r, "x").evaluate(std::vector<mpq_class>{1}), Error);
}

TEST(Poly, EvaluateScaling) {
  PrimeField f(65537);
  auto r = make_ring(f, {1, 2});
  auto g = P(r, "x1_0^2*x2_1 - 3*x1_0*x1_1*x2_2 + x1_1^2*x2_0");
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    std::vector<std::uint64_t> pt(5);
    for (auto& x : pt) x = f.random(rng);
    auto l1 = f.random(rng), l2 = f.random(rng);
    auto scaled = pt;
    for (int k = 0; k < 2; ++k) scaled[k] = f.mul(scaled[k], l1);
    for (int k = 2; k < 5; ++k) scaled[k] = f.mul(scaled[k], l2);
    EXPECT_EQ(g.evaluate(scaled), f.mul(g.evaluate(pt), f.mul(f.mul(l1, l1), l2)));
  }
}

TEST(Poly, CubicVanishesOnPlanes) {
  auto r = make_ring(RationalField(), {5}, {"t", "u", "v", "x", "y", "z"});
  auto c = P(r, kCubic);
  EXPECT_EQ(*c.multidegree(), std::vector<int>{3});
  Rng rng(3);
  RationalField q;
  for (int i = 0; i < 10; ++i) {
    std::vector<mpq_class> a{0, 0, 0, q.random(rng), q.random(rng), q.random(rng)};
    EXPECT_EQ(c.evaluate(a), 0);
    std::vector<mpq_class> b{q.random(rng), q.random(rng), q.random(rng), 0, 0, 0};
    EXPECT_EQ(c.evaluate(b), 0);
  }
}

TEST(Poly, Substitute) {
  auto src = make_ring(RationalField(), {1}, {"y0", "y1"});
  auto tgt = make_ring(RationalField(), {2}, {"a", "b", "c"});
  auto F0 = P(tgt, "a^2+b*c"), F1 = P(tgt, "a*b-c^2");
  EXPECT_EQ(substitute(P(src, "y0*y1"), {F0, F1}, tgt), F0 * F1);
  try {
    substitute(P(src, "y0"), {F0, P(tgt, "a")}, tgt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InhomogeneousImages);
  }
  try {
    substitute(P(src, "y0"), {F0}, tgt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::BadArity);
  }
}

TEST(Poly, SegreRelation) {
  auto z = make_ring(RationalField(), {3}, {"z00", "z01", "z10", "z11"});
  auto x = make_ring(RationalField(), {1, 1});
  std::vector<Poly<RationalField>> im{P(x, "x1_0*x2_0"), P(x, "x1_0*x2_1"), P(x, "x1_1*x2_0"), P(x, "x1_1*x2_1")};
  EXPECT_TRUE(substitute(P(z, "z00*z11-z01*z10"), im, x).is_zero());
}

TEST(Poly, SubstitutePreservesHomogeneity) {
  PrimeField f(65537);
  auto src = make_ring(f, {1, 2});
  auto tgt = make_ring(f, {2, 1});
  Rng rng(8);
  auto random_form = [&](const RingPtr<PrimeField>& r, std::vector<int> deg) {
    // product of random linear forms in each group
    Poly<PrimeField> p = Poly<PrimeField>::constant(r, f.one());
    for (std::size_t j = 0; j < deg.size(); ++j)
      for (int k = 0; k < deg[j]; ++k) {
        Poly<PrimeField> l(r);
        for (auto v : r->group_vars(j)) l += Poly<PrimeField>::variable(r, v).scale(f.random(rng));
        p *= l;
      }
    return p;
  };
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Poly<PrimeField>> im;
    for (int i = 0; i < 2; ++i) im.push_back(random_form(tgt, {1, 2}));
    for (int i = 0; i < 3; ++i) im.push_back(random_form(tgt, {2, 0}));
    auto g = random_form(src, {2, 1}) + random_form(src, {2, 1});
    auto h = substitute(g, im, tgt);
    // degree 2*(1,2) + 1*(2,0) = (4,4)
    ASSERT_FALSE(h.is_zero());
    EXPECT_EQ(*h.multidegree(), (std::vector<int>{4, 4}));
  }
}

TEST(Poly, MultidegreeAdditive) {
  PrimeField f(101);
  auto r = make_ring(f, {1, 1, 2});
  auto a = P(r, "x1_0*x3_2^2 - x1_1*x3_0*x3_1");
  auto b = P(r, "x2_0^3 + 2*x2_1*x2_0^2");
  auto da = *a.multidegree(), db = *b.multidegree(), dab = *(a * b).multidegree();
  for (int i = 0; i < 3; ++i) EXPECT_EQ(dab[i], da[i] + db[i]);
}
