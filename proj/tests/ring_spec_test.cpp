#include <gtest/gtest.h>

#include "staudtlab/errors.hpp"
#include "staudtlab/ring_spec.hpp"

namespace staudt {
namespace {

ErrorKind kind_of(const char* text) {
  try {
    parse_ring_spec(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << text << " parsed";
  return ErrorKind::Syntax;
}

TEST(RingSpec, ShortFormsParse) {
  const RingSpec z = parse_ring_spec("Z(6)");
  EXPECT_EQ(z.kind, RingKind::Zmod);
  EXPECT_EQ(z.n, 6);
  const RingSpec gf = parse_ring_spec("GF(3^2)");
  EXPECT_EQ(gf.kind, RingKind::GF);
  EXPECT_EQ(gf.n, 3);
  EXPECT_EQ(gf.k, 2);
  EXPECT_EQ(parse_ring_spec("GF(9)"), gf);
  EXPECT_EQ(parse_ring_spec("Q").kind, RingKind::Rational);
}

TEST(RingSpec, ConstructorNamesAreAliases) {
  EXPECT_EQ(parse_ring_spec("Zmod(9)"), parse_ring_spec("Z(9)"));
  EXPECT_EQ(parse_ring_spec("Mat(2,GF(3))"), parse_ring_spec("M(2,GF(3))"));
  EXPECT_EQ(parse_ring_spec("Tri(2,GF(3))"), parse_ring_spec("T(2,GF(3))"));
  EXPECT_EQ(parse_ring_spec("Quat(Rational)"), parse_ring_spec("Quat(Q)"));
}

TEST(RingSpec, RenderRoundTrips) {
  for (const char* text : {"Z(6)", "GF(5)", "GF(9)", "GF(16)", "Q", "Quat(Q)", "Quat(GF(3))", "M(2,GF(3))",
                           "M(3,Z(4))", "T(2,GF(3))", "T(3,Q)", "Dual(GF(5))", "Sum(GF(3),GF(3))",
                           "Sum(Z(4),M(2,GF(2)),Q)", "M(2,M(2,GF(2)))"}) {
    const RingSpec s = parse_ring_spec(text);
    EXPECT_EQ(render(s), text);
    EXPECT_EQ(parse_ring_spec(render(s)), s) << text;
  }
}

TEST(RingSpec, WhitespaceIsIgnored) { EXPECT_EQ(parse_ring_spec(" M( 2 , GF(3) ) "), parse_ring_spec("M(2,GF(3))")); }

TEST(RingSpec, SyntaxErrorsCarryPosition) {
  try {
    parse_ring_spec("M(2,GF(3)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.position(), 9u);
  }
  EXPECT_EQ(kind_of("X(3)"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("Sum(Q)"), ErrorKind::Semantic);
  EXPECT_EQ(kind_of("Z(6) tail"), ErrorKind::Syntax);
}

TEST(RingSpec, SemanticRangeChecks) {
  EXPECT_EQ(kind_of("Z(1)"), ErrorKind::Semantic);
  EXPECT_EQ(kind_of("GF(6)"), ErrorKind::Semantic);
  EXPECT_EQ(kind_of("GF(3^5)"), ErrorKind::Semantic);
  EXPECT_EQ(kind_of("M(4,Q)"), ErrorKind::Semantic);
  EXPECT_EQ(kind_of("T(1,Q)"), ErrorKind::Semantic);
  EXPECT_EQ(kind_of("Quat(Z(4))"), ErrorKind::Semantic);
}

TEST(RingSpec, Cardinality) {
  const auto size = [](const char* t) { return cardinality(parse_ring_spec(t)); };
  EXPECT_EQ(size("M(2,GF(3))").value, 81);
  EXPECT_EQ(size("T(2,GF(3))").value, 27);
  EXPECT_EQ(size("T(3,GF(2))").value, 64);
  EXPECT_EQ(size("Sum(GF(3),Z(4))").value, 12);
  EXPECT_EQ(size("Dual(GF(5))").value, 25);
  EXPECT_EQ(size("Quat(GF(3))").value, 81);
  EXPECT_TRUE(size("Quat(Q)").infinite);
  EXPECT_TRUE(size("Sum(GF(2),Q)").infinite);
}

TEST(RingSpec, Characteristic) {
  const auto ch = [](const char* t) { return characteristic(parse_ring_spec(t)); };
  EXPECT_EQ(ch("GF(9)"), 3);
  EXPECT_EQ(ch("Z(6)"), 6);
  EXPECT_EQ(ch("Sum(Z(4),Z(6))"), 12);
  EXPECT_EQ(ch("M(2,Z(9))"), 9);
  EXPECT_EQ(ch("Q"), 0);
  EXPECT_EQ(ch("Sum(GF(2),Q)"), 0);
}

TEST(RingSpec, StructuralFlags) {
  const auto spec = [](const char* t) { return parse_ring_spec(t); };
  EXPECT_TRUE(is_division_ring(spec("GF(9)")));
  EXPECT_TRUE(is_division_ring(spec("Quat(Q)")));
  EXPECT_TRUE(is_division_ring(spec("Z(7)")));
  EXPECT_FALSE(is_division_ring(spec("Z(9)")));
  EXPECT_FALSE(is_division_ring(spec("Quat(GF(3))")));
  EXPECT_FALSE(is_division_ring(spec("M(2,GF(3))")));
  EXPECT_FALSE(is_commutative(spec("Quat(Q)")));
  EXPECT_FALSE(is_commutative(spec("T(2,GF(3))")));
  EXPECT_TRUE(is_commutative(spec("M(1,GF(3))")));
  EXPECT_TRUE(is_commutative(spec("Dual(Q)")));
  EXPECT_TRUE(two_is_unit(spec("Z(9)")));
  EXPECT_FALSE(two_is_unit(spec("Z(4)")));
  EXPECT_FALSE(two_is_unit(spec("GF(4)")));
  EXPECT_FALSE(two_is_unit(spec("Sum(GF(3),GF(2))")));
}

TEST(RingSpec, PrimeTest) {
  int count = 0;
  for (std::int64_t n = 0; n < 100; ++n) count += is_prime(n);
  EXPECT_EQ(count, 25);
}

// Independent oracle: the first monic polynomial, ordered by sum c_i p^i,
// with no factor of degree at most k/2 (found by trial division).
std::vector<std::int64_t> least_irreducible(std::int64_t p, int k) {
  const auto poly_mod = [p](std::vector<std::int64_t> a, const std::vector<std::int64_t>& b) {
    while (a.size() >= b.size()) {
      const std::int64_t lead = a.back();
      const std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
      a.pop_back();
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  };
  std::int64_t total = 1;
  for (int i = 0; i < k; ++i) total *= p;
  for (std::int64_t v = 0; v < total; ++v) {
    std::vector<std::int64_t> f(k + 1);
    std::int64_t rest = v;
    for (int i = 0; i < k; ++i) {
      f[i] = rest % p;
      rest /= p;
    }
    f[k] = 1;
    bool irreducible = true;
    for (int d = 1; d <= k / 2 && irreducible; ++d) {
      std::int64_t count = 1;
      for (int i = 0; i < d; ++i) count *= p;
      for (std::int64_t u = 0; u < count && irreducible; ++u) {
        std::vector<std::int64_t> g(d + 1);
        std::int64_t r = u;
        for (int i = 0; i < d; ++i) {
          g[i] = r % p;
          r /= p;
        }
        g[d] = 1;
        if (poly_mod(f, g).empty()) irreducible = false;
      }
    }
    if (irreducible) return std::vector<std::int64_t>(f.begin(), f.begin() + k);
  }
  return {};
}

TEST(RingSpec, GaloisModulusIsLeastIrreducible) {
  for (auto [p, k] : std::vector<std::pair<std::int64_t, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {7, 2}}) {
    EXPECT_EQ(gf_modulus(p, k), least_irreducible(p, k)) << p << "^" << k;
  }
}

}  // namespace
}  // namespace staudt
