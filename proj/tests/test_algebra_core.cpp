#include <gtest/gtest.h>

#include "support/testing.hpp"

using namespace lpa_test;

TEST(Scalar, RationalsAreCanonical) {
  const Q q;
  const auto x = q.parse("6/-4");
  EXPECT_EQ(x, BigRational(-3, 2));
  EXPECT_EQ(numerator(x), -3);
  EXPECT_EQ(denominator(x), 2);
  EXPECT_THROW(q.parse("1/0"), InputError);
  EXPECT_THROW(q.parse("x"), InputError);
}

TEST(Scalar, PrimeFieldAxiomsSpotCheck) {
  const PrimeField f(7);
  EXPECT_THROW(PrimeField(9), InputError);
  EXPECT_EQ(f.from_int(-1).value(), 6u);
  for (long long a = 0; a < 7; ++a) {
    for (long long b = 0; b < 7; ++b) {
      const auto x = f.from_int(a);
      const auto y = f.from_int(b);
      EXPECT_EQ(x + y, y + x);
      EXPECT_EQ(x * y, y * x);
      EXPECT_LT((x * y).value(), 7u);
      if (b != 0) EXPECT_EQ((x / y) * y, x);
      for (long long c = 0; c < 7; ++c) {
        const auto z = f.from_int(c);
        EXPECT_EQ(x * (y + z), x * y + x * z);
      }
    }
  }
}

TEST(Digraph, ClassifyAndValidate) {
  auto g = fixture("fork");
  EXPECT_EQ(classify_vertex(*g, "v"), VertexKind::regular);
  EXPECT_EQ(classify_vertex(*g, "u"), VertexKind::sink);
  EXPECT_THROW(Digraph({"v"}, {{"a", "v", "w"}}), InputError);
  EXPECT_THROW(Digraph({"v", "v"}, {}), InputError);
  EXPECT_THROW(Digraph({"v"}, {{"v", "v", "v"}}), InputError);
  EXPECT_THROW(Digraph({"v"}, {{"a", "v", "v"}, {"a", "v", "v"}}), InputError);
  EXPECT_THROW(Digraph({}, {}), InputError);
  EXPECT_NO_THROW(Digraph({"v"}, {}));
}

TEST(Path, ConstructionRejectsNonComposable) {
  auto g = fixture("ex2");
  EXPECT_THROW(path(*g, {"a1", "a3"}), InputError);
  const Path p = path(*g, {"a2", "a3", "a5"});
  EXPECT_EQ(p.length(), 3u);
  EXPECT_EQ(p.source(), g->vertex("v1"));
  EXPECT_EQ(p.range(), g->vertex("v4"));
  const Path v = Path::vertex(g->vertex("v3"));
  EXPECT_EQ(v.source(), v.range());
  EXPECT_EQ(v.length(), 0u);
}

TEST(Path, ComposeExamples) {
  auto g = fixture("ex2");
  const Path a2 = path(*g, {"a2"});
  const Path a3 = path(*g, {"a3"});
  EXPECT_EQ(*a2.compose(a3), path(*g, {"a2", "a3"}));
  EXPECT_FALSE(a3.compose(a2).has_value());
  const Path v3 = Path::vertex(g->vertex("v3"));
  EXPECT_EQ(*a2.compose(v3), a2);
  EXPECT_EQ(*v3.compose(a3), a3);
  EXPECT_FALSE(Path::vertex(g->vertex("v1")).compose(a3).has_value());
}

TEST(Path, HeadTailRoundTrip) {
  for (const auto& name : kernel_fixtures()) {
    auto g = fixture(name);
    for (const auto& p : enumerate_paths_upto(*g, 6)) {
      for (std::size_t i = 0; i <= p.length(); ++i) {
        const auto h = head(*g, p, i);
        const auto t = tail(*g, p, i);
        EXPECT_EQ(h.length(), i);
        ASSERT_TRUE(h.compose(t).has_value()) << name;
        EXPECT_EQ(*h.compose(t), p) << name;
      }
    }
  }
}

TEST(Path, CountMatchesAdjacencyDp) {
  for (const auto& name : kernel_fixtures()) {
    auto g = fixture(name);
    for (std::size_t d = 0; d <= 6; ++d) {
      EXPECT_EQ(enumerate_paths(*g, d).size(), count_paths_dp(*g, d)) << name << " d=" << d;
    }
  }
  auto r = rose(3);
  EXPECT_EQ(count_paths_dp(*r, 4), 81u);
}

TEST(Path, EnumerationIsSortedAndDistinct) {
  auto g = fixture("ex2");
  const auto ps = enumerate_paths(*g, 3);
  EXPECT_TRUE(std::is_sorted(ps.begin(), ps.end()));
  EXPECT_EQ(std::set<Path>(ps.begin(), ps.end()).size(), ps.size());
}

TEST(Quiver, ExamplesAndZero) {
  auto g = rose(2);
  const Q q;
  const auto a1 = qpath(g, {"a1"});
  const auto a2 = qpath(g, {"a2"});
  EXPECT_EQ(a1 * a2, qpath(g, {"a1", "a2"}));
  EXPECT_TRUE((a1 - a1).is_zero());
  EXPECT_EQ((a1 + a2).size(), 2u);
  EXPECT_TRUE((a1 * QE(g, q)).is_zero());
  auto t = fixture("toeplitz");
  const auto b = qpath(t, {"b"});
  const auto a = qpath(t, {"a"});
  EXPECT_TRUE((b * a).is_zero());
  EXPECT_EQ(a * b, qpath(t, {"a", "b"}));
  EXPECT_THROW(a + a1, InputError);
}

TEST(Quiver, NoStoredZeros) {
  auto g = rose(2);
  QE x(g, Q{});
  x.add_term(path(*g, {"a1"}), 2);
  x.add_term(path(*g, {"a1"}), -2);
  EXPECT_TRUE(x.is_zero());
  x.add_term(path(*g, {"a2"}), 0);
  EXPECT_TRUE(x.is_zero());
}

template <class F>
void associativity_suite(const F& field, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (const auto& name : kernel_fixtures()) {
    auto g = fixture(name);
    for (int i = 0; i < 200; ++i) {
      const auto x = random_quiver(g, field, rng, 5, 4);
      const auto y = random_quiver(g, field, rng, 5, 4);
      const auto z = random_quiver(g, field, rng, 5, 4);
      ASSERT_EQ((x * y) * z, x * (y * z)) << name;
      ASSERT_EQ(x * (y + z), x * y + x * z) << name;
    }
  }
}

TEST(Quiver, AssociativityOverRationals) { associativity_suite(Q{}, 11); }
TEST(Quiver, AssociativityOverF5) { associativity_suite(PrimeField(5), 12); }

TEST(Quiver, LocalUnits) {
  std::mt19937_64 rng(13);
  for (const auto& name : kernel_fixtures()) {
    auto g = fixture(name);
    const auto one = qone(g);
    EXPECT_EQ(one.size(), g->vertex_count());
    for (int i = 0; i < 100; ++i) {
      const auto x = random_quiver(g, Q{}, rng, 5, 4);
      ASSERT_EQ(one * x, x);
      ASSERT_EQ(x * one, x);
    }
  }
}

TEST(Quiver, TruncateAndDegree) {
  auto g = rose(2);
  const auto x = qone(g) + qpath(g, {"a1"}) + qpath(g, {"a1", "a2", "a2"});
  EXPECT_EQ(x.degree(), std::size_t{3});
  EXPECT_EQ(x.truncate(1), qone(g) + qpath(g, {"a1"}));
  EXPECT_FALSE(QE(g, Q{}).degree().has_value());
}
