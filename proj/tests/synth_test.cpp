#include <gtest/gtest.h>

#include <random>
#include <set>

#include "staudtlab/errors.hpp"
#include "staudtlab/projline.hpp"
#include "staudtlab/synth.hpp"

namespace staudt {
namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error";
  return ErrorKind::Syntax;
}

TEST(Synth, CountsMatchFormulas) {
  for (int n : {2, 3}) {
    for (std::int64_t q : {2, 3, 4, 5}) {
      if (n == 3 && q == 5) continue;
      const ProjectiveSpace s(n, q);
      const std::int64_t points = (ipow(q, n + 1) - 1) / (q - 1);
      EXPECT_EQ(s.point_count(), static_cast<std::size_t>(points));
      const std::int64_t lines = n == 2 ? points : (q * q + 1) * (q * q + q + 1);
      EXPECT_EQ(s.line_count(), static_cast<std::size_t>(lines));
      if (n == 3) EXPECT_EQ(s.plane_count(), static_cast<std::size_t>(points));
      for (LineId l = 0; l < s.line_count(); ++l) EXPECT_EQ(s.line(l).points.size(), static_cast<std::size_t>(q + 1));
    }
  }
}

TEST(Synth, JoinAndMeet) {
  const ProjectiveSpace s(2, 3);
  const PointId x = s.parse_point("[1:0:0]"), y = s.parse_point("[0:1:0]"), z = s.parse_point("[0:0:1]");
  const LineId xy = s.join(x, y);
  EXPECT_TRUE(s.incident(s.parse_point("[1:1:0]"), xy));
  EXPECT_TRUE(s.incident(s.parse_point("[2:1:0]"), xy));
  EXPECT_FALSE(s.incident(z, xy));
  EXPECT_EQ(s.meet(xy, s.join(x, z)), x);
  EXPECT_EQ(s.id({2, 0, 0}), x);
  EXPECT_EQ(s.render(s.id({0, 2, 2})), "[0:1:1]");
  EXPECT_TRUE(s.collinear(x, y, s.parse_point("[1:2:0]")));
  EXPECT_EQ(error_of([&] { s.join(x, x); }), ErrorKind::DegenerateArguments);
  EXPECT_EQ(error_of([&] { s.meet(xy, xy); }), ErrorKind::DegenerateArguments);
  EXPECT_EQ(error_of([&] { s.id({0, 0, 0}); }), ErrorKind::DegenerateArguments);
}

TEST(Synth, SkewLinesInSpace) {
  const ProjectiveSpace s(3, 2);
  const LineId a = s.join(s.parse_point("[1:0:0:0]"), s.parse_point("[0:1:0:0]"));
  const LineId b = s.join(s.parse_point("[0:0:1:0]"), s.parse_point("[0:0:0:1]"));
  EXPECT_EQ(s.try_meet(a, b), ProjectiveSpace::kNone);
  EXPECT_FALSE(s.coplanar(a, b));
  EXPECT_EQ(error_of([&] { s.meet(a, b); }), ErrorKind::NoIntersection);
  EXPECT_EQ(s.span(s.subspace(a), s.subspace(b)).rank(), 4);
  EXPECT_EQ(s.meet(s.subspace(a), s.subspace(b)).rank(), 0);
}

TEST(Synth, AxiomBattery) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}}) {
    const AxiomReport rep = axiom_battery(ProjectiveSpace(n, q));
    EXPECT_TRUE(rep.ok()) << n << "," << q << " " << rep.witness;
    EXPECT_GT(rep.checks, 0u);
  }
}

// The chart x -> [x:1:0..] identifies the line with the projective line over
// GF(q); the quadrangle construction must match the algebraic fourth point.
TEST(Synth, QuadrangleMatchesAlgebra) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 7}, {2, 9}, {3, 3}}) {
    const ProjectiveSpace s(n, q);
    const FiniteLine line(FiniteRing::make("GF(" + std::to_string(q) + ")"));
    const auto to_synth = [&](const ProjPoint<std::uint32_t>& p) {
      const auto x = line.try_affine(p);
      return x ? s.chart_point(*x) : s.chart_infinity();
    };
    const auto& pts = line.points();
    std::size_t checked = 0;
    for (const auto& a : pts) {
      for (const auto& b : pts) {
        for (const auto& c : pts) {
          if (a == b || a == c || b == c) continue;
          const PointId want = to_synth(line.fourth_harmonic_point(a, b, c));
          const auto choices = quadrangle_aux_choices(s, to_synth(a), to_synth(b), to_synth(c));
          ASSERT_FALSE(choices.empty());
          for (std::size_t i = 0; i < choices.size(); i += 1 + choices.size() / 4) {
            ASSERT_EQ(quadrangle_fourth_harmonic(s, to_synth(a), to_synth(b), to_synth(c), choices[i]), want);
          }
          ++checked;
        }
      }
    }
    EXPECT_EQ(checked, pts.size() * (pts.size() - 1) * (pts.size() - 2));
  }
}

TEST(Synth, QuadrangleExamples) {
  const ProjectiveSpace s(2, 5);
  const PointId inf = s.chart_infinity(), zero = s.chart_point(0), one = s.chart_point(1);
  const auto aux = quadrangle_aux_choices(s, inf, zero, one);
  EXPECT_EQ(s.chart_coordinate(quadrangle_fourth_harmonic(s, inf, zero, one, aux.front())), 4u);
  EXPECT_TRUE(is_quadrangle_harmonic(s, inf, zero, one, s.chart_point(4)));
  EXPECT_FALSE(is_quadrangle_harmonic(s, inf, zero, one, s.chart_point(3)));
  EXPECT_EQ(error_of([&] { quadrangle_fourth_harmonic(s, zero, zero, one, aux.front()); }),
            ErrorKind::DegenerateArguments);
  EXPECT_EQ(error_of([&] { quadrangle_fourth_harmonic(s, inf, zero, one, {zero, one}); }), ErrorKind::DegenerateAux);
  // In characteristic two the diagonal points are collinear: p4 = p3.
  const ProjectiveSpace s4(2, 4);
  const auto a4 = quadrangle_aux_choices(s4, s4.chart_infinity(), s4.chart_point(0), s4.chart_point(1));
  EXPECT_EQ(quadrangle_fourth_harmonic(s4, s4.chart_infinity(), s4.chart_point(0), s4.chart_point(1), a4.front()),
            s4.chart_point(1));
}

TEST(Synth, GeometricFieldOperations) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {2, 7}, {3, 3}}) {
    const ProjectiveSpace s(n, q);
    const FiniteRing& f = s.field();
    const PointId inf = s.chart_infinity(), zero = s.chart_point(0), one = s.chart_point(1);
    const auto adds = add_aux_choices(s, zero, inf);
    const auto muls = mul_aux_choices(s, zero, inf);
    ASSERT_FALSE(adds.empty());
    ASSERT_FALSE(muls.empty());
    for (std::size_t i = 0; i < adds.size(); i += 1 + adds.size() / 3) {
      for (std::uint32_t x = 0; x < f.size(); ++x) {
        for (std::uint32_t y = 0; y < f.size(); ++y) {
          ASSERT_EQ(s.chart_coordinate(geometric_add(s, zero, inf, s.chart_point(x), s.chart_point(y), adds[i])),
                    f.add(x, y));
        }
      }
    }
    for (std::size_t i = 0; i < muls.size(); i += 1 + muls.size() / 3) {
      for (std::uint32_t x = 0; x < f.size(); ++x) {
        for (std::uint32_t y = 0; y < f.size(); ++y) {
          ASSERT_EQ(
              s.chart_coordinate(geometric_mul(s, zero, one, inf, s.chart_point(x), s.chart_point(y), muls[i])),
              f.mul(x, y));
        }
      }
    }
  }
  const ProjectiveSpace s(2, 5);
  const PointId inf = s.chart_infinity(), zero = s.chart_point(0), one = s.chart_point(1);
  EXPECT_EQ(s.chart_coordinate(geometric_add(s, zero, inf, s.chart_point(2), s.chart_point(4),
                                             add_aux_choices(s, zero, inf).front())),
            1u);
  EXPECT_EQ(s.chart_coordinate(geometric_mul(s, zero, one, inf, s.chart_point(2), s.chart_point(4),
                                             mul_aux_choices(s, zero, inf).front())),
            3u);
}

TEST(Synth, PerspectivitiesAndChains) {
  const ProjectiveSpace s(2, 3);
  const LineId l = s.chart_line();
  const auto persp = perspectivities_from(s, l);
  ASSERT_FALSE(persp.empty());
  for (const auto& p : persp) {
    const LineMap m = compose_chain(s, {p});
    EXPECT_EQ(compose(s, m, inverse(s, m)), identity_map(s, l));
    for (PointId x : s.line(l).points) {
      if (s.incident(x, p.target)) EXPECT_EQ(perspectivity_map(s, p, x), x);
      EXPECT_TRUE(s.collinear(x, perspectivity_map(s, p, x), p.centre));
    }
  }
  const PointId on_line = s.line(l).points.front();
  const LineId other = persp.front().target;
  EXPECT_EQ(error_of([&] { make_perspectivity(s, l, other, on_line); }), ErrorKind::DegenerateArguments);
  EXPECT_EQ(error_of([&] { compose_chain(s, {persp.front(), persp.front()}); }), ErrorKind::ChainMismatch);
  EXPECT_EQ(compose_chain(s, {}, l), identity_map(s, l));
}

// Moebius maps x -> (ax+b)/(cx+d) over Z/p as permutations of {0..p-1, inf=p}.
std::set<std::vector<std::uint32_t>> pgl2(std::int64_t p) {
  const auto inv = [p](std::int64_t x) {
    for (std::int64_t y = 1; y < p; ++y) {
      if (x * y % p == 1) return y;
    }
    return std::int64_t{0};
  };
  std::set<std::vector<std::uint32_t>> out;
  for (std::int64_t a = 0; a < p; ++a) {
    for (std::int64_t b = 0; b < p; ++b) {
      for (std::int64_t c = 0; c < p; ++c) {
        for (std::int64_t d = 0; d < p; ++d) {
          if ((a * d - b * c) % p == 0) continue;
          std::vector<std::uint32_t> perm(p + 1);
          for (std::int64_t x = 0; x <= p; ++x) {
            const std::int64_t num = x == p ? a : (a * x + b) % p;
            const std::int64_t den = x == p ? c : (c * x + d) % p;
            perm[x] = den == 0 ? static_cast<std::uint32_t>(p) : static_cast<std::uint32_t>(num * inv(den) % p);
          }
          out.insert(perm);
        }
      }
    }
  }
  return out;
}

TEST(Synth, ProjectivityGroupIsPGL2) {
  for (auto [n, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 3}}) {
    const ProjectiveSpace s(n, q);
    const ProjectivityGroup g = projectivity_group(s, s.chart_line());
    const auto chart = [&](PointId x) {
      const auto c = s.chart_coordinate(x);
      return c ? *c : static_cast<std::uint32_t>(q);
    };
    std::set<std::vector<std::uint32_t>> got;
    for (const LineMap& m : g.elements) {
      std::vector<std::uint32_t> perm(q + 1);
      for (std::size_t i = 0; i < m.image.size(); ++i) perm[chart(s.line(m.source).points[i])] = chart(m.image[i]);
      got.insert(perm);
    }
    EXPECT_EQ(got, pgl2(q)) << n << "," << q;
    for (std::size_t i = 0; i < g.order(); ++i) EXPECT_EQ(compose_chain(s, g.words[i], g.line), g.elements[i]);
    EXPECT_TRUE(is_triply_transitive(s, g));
    EXPECT_EQ(stabilizer(s, g, {s.chart_infinity(), s.chart_point(0), s.chart_point(1)}).size(), 1u);
  }
  EXPECT_EQ(projectivity_group(ProjectiveSpace(2, 4), ProjectiveSpace(2, 4).chart_line()).order(), 60u);
}

TEST(Synth, ClosureBudget) {
  const ProjectiveSpace s(2, 3);
  EXPECT_EQ(error_of([&] { projectivity_closure(s, s.chart_line(), 10); }), ErrorKind::BudgetExceeded);
}

TEST(Synth, Desargues) {
  const DesarguesReport small = desargues_check(ProjectiveSpace(2, 3));
  EXPECT_TRUE(small.exhaustive);
  EXPECT_TRUE(small.ok) << small.witness;
  EXPECT_GT(small.configurations, 0u);
  const DesarguesReport sampled = desargues_check(ProjectiveSpace(2, 5), 500, 1);
  EXPECT_FALSE(sampled.exhaustive);
  EXPECT_TRUE(sampled.ok) << sampled.witness;
  EXPECT_EQ(sampled.configurations, 500u);
}

TEST(Synth, SchurDecomposition) {
  const ProjectiveSpace s(3, 3);
  std::mt19937_64 rng(9);
  int decomposed = 0;
  for (int t = 0; t < 30; ++t) {
    auto chain = random_chain(s, 1 + rng() % 6, rng);
    if (chain.front().source == chain.back().target) continue;
    const SchurResult res = schur_decomposition(s, chain);
    ASSERT_TRUE(res.found);
    ASSERT_GE(res.factors.size(), 1u);
    ASSERT_LE(res.factors.size(), 2u);
    EXPECT_EQ(compose_chain(s, res.factors), compose_chain(s, chain));
    EXPECT_EQ(res.skew, !s.coplanar(chain.front().source, chain.back().target));
    ++decomposed;
  }
  EXPECT_GT(decomposed, 0);
}

TEST(Synth, UnsupportedParameters) {
  EXPECT_EQ(error_of([] { ProjectiveSpace(4, 2); }), ErrorKind::InvalidParameter);
  EXPECT_EQ(error_of([] { ProjectiveSpace(2, 6); }), ErrorKind::InvalidParameter);
}

}  // namespace
}  // namespace staudt
