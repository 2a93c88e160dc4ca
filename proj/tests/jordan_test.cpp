#include <gtest/gtest.h>

#include <array>
#include <random>
#include <set>

#include "staudtlab/errors.hpp"
#include "staudtlab/jordan.hpp"

namespace staudt {
namespace {

using Index = FiniteRing::Index;

AdditiveMap named(const char* text, const char* spec) { return parse_map(text, parse_ring_spec(spec)); }

ErrorKind map_error(const char* text, const char* spec) {
  try {
    named(text, spec);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << text << " accepted on " << spec;
  return ErrorKind::Syntax;
}

TEST(Maps, NamedMapsRoundTrip) {
  const struct {
    const char* text;
    const char* spec;
  } cases[] = {{"identity", "GF(9)"},         {"inner(a=[[1,1],[0,1]])", "M(2,GF(3))"},
               {"transpose", "M(2,GF(3))"},   {"flip", "T(2,GF(3))"},
               {"frobenius(1)", "GF(9)"},     {"conj", "Quat(Q)"},
               {"scale(a=g)", "GF(4)"},       {"sum(identity,frobenius(1))", "Sum(GF(3),GF(9))"},
               {"compose(transpose,inner(a=[[1,1],[0,1]]))", "M(2,GF(3))"}};
  for (const auto& c : cases) {
    const AdditiveMap f = named(c.text, c.spec);
    EXPECT_EQ(render_map(f), c.text);
    EXPECT_EQ(parse_map(render_map(f), f.domain), f);
  }
}

TEST(Maps, InvalidParameters) {
  EXPECT_EQ(map_error("inner(a=[[1,1],[1,1]])", "M(2,GF(3))"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("transpose", "GF(9)"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("frobenius(0)", "GF(9)"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("frobenius(2)", "GF(8)"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("frobenius", "Z(9)"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("conj", "M(2,Q)"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("sum(identity)", "Sum(GF(3),GF(3))"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("inner", "M(2,GF(3))"), ErrorKind::InvalidParameter);
  EXPECT_EQ(map_error("rotate", "GF(9)"), ErrorKind::Syntax);
}

TEST(Maps, Evaluation) {
  const auto h = Ring::make("Quat(Q)");
  EXPECT_EQ(apply(named("conj", "Quat(Q)"), *h, *h, h->parse("1+i-2*k")), h->parse("1-i+2*k"));
  EXPECT_EQ(apply(named("inner(a=i)", "Quat(Q)"), *h, *h, h->parse("j")), h->parse("-j"));
  const auto gf9 = FiniteRing::make("GF(9)");
  const auto frob = tabulate(named("frobenius(1)", "GF(9)"), *gf9, *gf9);
  for (Index x = 0; x < gf9->size(); ++x) EXPECT_EQ(frob[x], gf9->pow(x, 3));
  const auto m = Ring::make("M(2,GF(3))");
  EXPECT_EQ(apply(named("transpose", "M(2,GF(3))"), *m, *m, m->parse("[[1,2],[0,1]]")), m->parse("[[1,0],[2,1]]"));
  const auto t = Ring::make("T(2,GF(3))");
  EXPECT_EQ(apply(named("flip", "T(2,GF(3))"), *t, *t, t->parse("[[1,2],[0,0]]")), t->parse("[[0,2],[0,1]]"));
}

TEST(Maps, TableMapsFromJson) {
  const auto r = FiniteRing::make("Z(3)");
  const AdditiveMap f = parse_table_map(R"([["0","0"],["1","2"],["2","1"]])", *r, *r);
  EXPECT_EQ(f.form, MapForm::Table);
  EXPECT_EQ(f.table, (std::vector<std::uint32_t>{0, 2, 1}));
  EXPECT_EQ(parse_table_map(render_map(f), *r, *r), f);
}

TEST(Jordan, Classification) {
  const auto cls = [](const char* text, const char* spec) { return classify(FiniteMap::from(named(text, spec))); };
  EXPECT_EQ(cls("identity", "GF(9)"), MapClass::Both);
  EXPECT_EQ(cls("frobenius(1)", "GF(9)"), MapClass::Both);
  EXPECT_EQ(cls("transpose", "M(2,GF(3))"), MapClass::AntiHomomorphism);
  EXPECT_EQ(cls("inner(a=[[1,1],[0,1]])", "M(2,GF(3))"), MapClass::Homomorphism);
  EXPECT_EQ(cls("flip", "T(2,GF(3))"), MapClass::AntiHomomorphism);
  EXPECT_EQ(cls("scale(a=2)", "GF(5)"), MapClass::Neither);
}

TEST(Jordan, TransposeIsAncocheaAndJordan) {
  const FiniteMap f = FiniteMap::from(named("transpose", "M(2,GF(3))"));
  EXPECT_TRUE(check_axioms(f, AxiomSet::Ancochea).ok);
  EXPECT_TRUE(check_axioms(f, AxiomSet::Jordan).ok);
  EXPECT_TRUE(check_axioms(f, AxiomSet::JordanUnital).ok);
  EXPECT_EQ(check_axioms(f, AxiomSet::Jordan).mode, VerdictMode::Exhaustive);
}

TEST(Jordan, ScaleInCharacteristicTwoIsSemiButNotJordan) {
  const AdditiveMap f = named("scale(a=g)", "GF(4)");
  EXPECT_TRUE(is_semi_homomorphism(f).ok);
  const Verdict j = is_jordan_homomorphism(f, false);
  EXPECT_FALSE(j.ok);
  EXPECT_FALSE(j.witness.empty());
  const KaplanskyReport rep = kaplansky_equivalence_report({f, named("identity", "GF(4)")});
  EXPECT_FALSE(rep.codomain_two_torsion_free);
  EXPECT_EQ(rep.semi_count, 2u);
  EXPECT_EQ(rep.semi_and_jordan, 1u);
  EXPECT_TRUE(rep.counterexample.has_value());
  EXPECT_TRUE(rep.consistent);
}

TEST(Jordan, ScaleIsNotSemiWhenTwoIsAUnit) {
  EXPECT_FALSE(is_semi_homomorphism(named("scale(a=2)", "GF(5)")).ok);
  const KaplanskyReport rep = kaplansky_equivalence_report(
      {named("transpose", "M(2,GF(3))"), named("inner(a=[[0,1],[1,0]])", "M(2,GF(3))")});
  EXPECT_TRUE(rep.codomain_two_torsion_free);
  EXPECT_EQ(rep.semi_count, rep.semi_and_jordan);
  EXPECT_TRUE(rep.consistent);
}

TEST(Jordan, NonAdditiveTableFails) {
  const auto r = FiniteRing::make("Z(5)");
  const FiniteMap f = FiniteMap::from(table_map(*r, *r, {0, 1, 4, 3, 2}));
  EXPECT_FALSE(check_additive(f).ok);
  EXPECT_FALSE(check_axioms(f, AxiomSet::Jordan).ok);
}

TEST(Jordan, QuaternionMapsAreSampled) {
  for (const char* text : {"conj", "inner(a=i)", "inner(a=1+j)", "identity"}) {
    const Verdict v = is_jordan_homomorphism(named(text, "Quat(Q)"), true, {300, 1});
    EXPECT_TRUE(v.ok) << text << " " << v.witness;
    EXPECT_EQ(v.mode, VerdictMode::Sampled);
  }
  bool sampled = false;
  EXPECT_EQ(classify_map(named("conj", "Quat(Q)"), {300, 1}, &sampled), MapClass::AntiHomomorphism);
  EXPECT_TRUE(sampled);
  EXPECT_FALSE(is_jordan_homomorphism(named("scale(a=i)", "Quat(Q)"), false, {300, 1}).ok);
}

// The Kaplansky identity holds in every ring; check it independently on
// integer 2x2 matrices before trusting the library check.
using IntMat = std::array<std::int64_t, 4>;
IntMat operator*(const IntMat& x, const IntMat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}
IntMat operator+(const IntMat& x, const IntMat& y) { return {x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]}; }
IntMat scaled(std::int64_t c, const IntMat& x) { return {c * x[0], c * x[1], c * x[2], c * x[3]}; }
IntMat cube(const IntMat& x) { return x * x * x; }

TEST(Jordan, KaplanskyIdentityOracle) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::int64_t> d(-9, 9);
  for (int t = 0; t < 200; ++t) {
    const IntMat x{d(rng), d(rng), d(rng), d(rng)}, y{d(rng), d(rng), d(rng), d(rng)};
    const IntMat lhs = scaled(2, x * y * x);
    const IntMat rhs = scaled(4, cube(x + y)) + scaled(-1, cube(x + scaled(2, y))) + scaled(-3, cube(x)) +
                       scaled(4, cube(y)) + scaled(-2, x * x * y + y * x * x);
    ASSERT_EQ(lhs, rhs);
  }
  for (const char* spec : {"M(2,GF(3))", "T(2,Z(4))", "Quat(GF(3))", "GF(8)"}) {
    EXPECT_TRUE(kaplansky_identity_check(*FiniteRing::make(spec)).ok) << spec;
  }
}

// Independent enumeration: every additive map is fixed by the images of the
// prime-field basis (indices 1, p, p^2, ...); scan all of them and test the
// Jordan axioms on every pair directly.
std::vector<std::vector<Index>> brute_force_jordan(const FiniteRing& r, std::int64_t p) {
  const Index n = r.size();
  int d = 0;
  for (Index m = 1; m < n; m *= static_cast<Index>(p)) ++d;
  std::vector<Index> basis(d);
  for (int i = 0; i < d; ++i) basis[i] = i == 0 ? 1 : basis[i - 1] * static_cast<Index>(p);
  std::vector<std::vector<Index>> out;
  std::vector<Index> choice(d, 0);
  while (true) {
    std::vector<Index> table(n);
    for (Index x = 0; x < n; ++x) {
      Index y = r.zero(), rest = x;
      for (int i = 0; i < d; ++i) {
        for (Index c = 0; c < rest % p; ++c) y = r.add(y, choice[i]);
        rest /= static_cast<Index>(p);
      }
      table[x] = y;
    }
    std::vector<bool> hit(n, false);
    bool ok = true;
    for (Index x = 0; x < n && ok; ++x) {
      ok = !hit[table[x]];
      hit[table[x]] = true;
    }
    for (Index x = 0; x < n && ok; ++x) {
      ok = table[r.mul(x, x)] == r.mul(table[x], table[x]);
      for (Index y = 0; y < n && ok; ++y) {
        ok = table[r.mul(r.mul(x, y), x)] == r.mul(r.mul(table[x], table[y]), table[x]);
      }
    }
    if (ok) out.push_back(table);
    int i = 0;
    while (i < d && ++choice[i] == n) choice[i++] = 0;
    if (i == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Jordan, EnumerationMatchesBruteForce) {
  for (auto [spec, p] : std::vector<std::pair<const char*, std::int64_t>>{
           {"GF(9)", 3}, {"T(2,GF(3))", 3}, {"Sum(GF(3),GF(3))", 3}, {"GF(8)", 2}, {"Z(5)", 5}}) {
    const auto r = FiniteRing::make(spec);
    const EnumerationResult res = enumerate_jordan_automorphisms(*r);
    std::vector<std::vector<Index>> got;
    for (const auto& f : res.found) got.push_back(f.images);
    EXPECT_EQ(got, brute_force_jordan(*r, p)) << spec;
    EXPECT_EQ(res.classes.size(), res.found.size());
  }
}

TEST(Jordan, EnumerationCounts) {
  const auto count = [](const char* spec) { return enumerate_jordan_automorphisms(*FiniteRing::make(spec)).found.size(); };
  EXPECT_EQ(count("GF(9)"), 2u);
  EXPECT_EQ(count("GF(27)"), 3u);
  EXPECT_EQ(count("Sum(GF(3),GF(3))"), 2u);
  EXPECT_DOUBLE_EQ(general_linear_order(2, 3), 48.0);
  EXPECT_DOUBLE_EQ(general_linear_order(3, 2), 168.0);
}

TEST(Jordan, TriangularAutomorphismsSplitIntoHomAndAnti) {
  const auto r = FiniteRing::make("T(2,GF(3))");
  const EnumerationResult res = enumerate_jordan_automorphisms(*r);
  std::size_t hom = 0, anti = 0;
  for (MapClass c : res.classes) {
    EXPECT_NE(c, MapClass::Neither);
    hom += c == MapClass::Homomorphism;
    anti += c == MapClass::AntiHomomorphism;
  }
  EXPECT_EQ(hom, anti);
  EXPECT_EQ(hom + anti, res.found.size());
}

TEST(Jordan, EnumerationBudget) {
  EnumerationOptions opts;
  opts.budget = 100;
  try {
    enumerate_jordan_automorphisms(*FiniteRing::make("M(2,GF(3))"), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
}

TEST(Jordan, PairingOnSumRings) {
  const auto r = FiniteRing::make("Sum(GF(3),GF(3))");
  const EnumerationResult res = enumerate_jordan_automorphisms(*r);
  std::set<std::vector<std::vector<int>>> patterns;
  for (const auto& f : res.found) {
    const Pairing pr = kaplansky_pairing(f);
    EXPECT_TRUE(pr.ok);
    patterns.insert(pr.image_parts);
  }
  EXPECT_EQ(patterns, (std::set<std::vector<std::vector<int>>>{{{0}, {1}}, {{1}, {0}}}));
  const Pairing mixed = kaplansky_pairing(FiniteMap::from(named("sum(identity,flip)", "Sum(GF(3),T(2,GF(3)))")));
  EXPECT_TRUE(mixed.ok);
  EXPECT_EQ(mixed.restrictions[0], MapClass::Both);
  EXPECT_EQ(mixed.restrictions[1], MapClass::AntiHomomorphism);
}

TEST(Jordan, LemmaMatchesBruteForceCentralizer) {
  for (const char* spec : {"M(2,GF(2))", "M(2,GF(3))", "T(2,GF(2))", "Quat(GF(3))", "Z(6)", "T(3,GF(2))"}) {
    const auto r = FiniteRing::make(spec);
    std::set<Index> commutators;
    for (Index a = 0; a < r->size(); ++a) {
      for (Index b = 0; b < r->size(); ++b) commutators.insert(r->sub(r->mul(a, b), r->mul(b, a)));
    }
    std::vector<Index> centralizer;
    for (Index x = 0; x < r->size(); ++x) {
      bool ok = true;
      for (Index c : commutators) ok = ok && r->mul(x, c) == r->mul(c, x);
      if (ok) centralizer.push_back(x);
    }
    const LemmaResult res = ancochea_lemma_check(*r);
    EXPECT_EQ(res.centralizer, centralizer) << spec;
    EXPECT_EQ(res.ok, centralizer == r->centre()) << spec;
    EXPECT_EQ(res.witness.has_value(), !res.ok) << spec;
  }
}

TEST(Jordan, CentreInvariance) {
  EXPECT_TRUE(centre_invariance_check(FiniteMap::from(named("transpose", "M(2,GF(3))"))));
  EXPECT_TRUE(centre_invariance_check(FiniteMap::from(named("flip", "T(2,GF(3))"))));
  try {
    centre_invariance_check(FiniteMap::from(named("scale(a=2)", "GF(5)")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PreconditionFailed);
  }
}

TEST(Jordan, SpecialJordanProduct) {
  const auto gf5 = FiniteRing::make("GF(5)");
  EXPECT_EQ(special_jordan_product(*gf5, 2, 3), 1u);
  const auto m = Ring::make("M(2,Q)");
  const Element a = m->parse("[[0,1],[0,0]]"), b = m->parse("[[0,0],[1,0]]");
  EXPECT_EQ(special_jordan_product(*m, a, b), m->parse("[[1/2,0],[0,1/2]]"));
  try {
    special_jordan_product(*FiniteRing::make("Z(4)"), 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TwoNotUnit);
  }
}

TEST(Jordan, AxiomSetNames) {
  EXPECT_EQ(parse_axiom_set("jordan-unital"), AxiomSet::JordanUnital);
  EXPECT_EQ(to_string(AxiomSet::Ancochea), "ancochea");
  try {
    parse_axiom_set("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
  }
}

}  // namespace
}  // namespace staudt
