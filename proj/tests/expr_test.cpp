#include <gtest/gtest.h>

#include "staudtlab/errors.hpp"
#include "staudtlab/expr.hpp"
#include "staudtlab/finite_ring.hpp"
#include "staudtlab/ring.hpp"

namespace staudt {
namespace {

std::string eval(const char* spec, const char* text) {
  const auto r = Ring::make(spec);
  return r->render(r->parse(text));
}

ErrorKind error_of(const char* spec, const char* text) {
  try {
    eval(spec, text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << text << " evaluated";
  return ErrorKind::Syntax;
}

TEST(Expr, ModularArithmetic) {
  EXPECT_EQ(eval("Z(5)", "inv(3)"), "2");
  EXPECT_EQ(eval("Z(7)", "3*5-1"), "0");
  EXPECT_EQ(eval("Z(7)", "-1"), "6");
  EXPECT_EQ(eval("Z(7)", "2^-1"), "4");
  EXPECT_EQ(eval("Z(7)", "3/2"), "5");
  EXPECT_EQ(error_of("Z(6)", "inv(2)"), ErrorKind::NonUnit);
}

TEST(Expr, GaloisFields) {
  // GF(9) is built over x^2 + 1, so g^2 = -1.
  EXPECT_EQ(eval("GF(9)", "g^2"), "2");
  EXPECT_EQ(eval("GF(9)", "g^-1"), "2*g");
  EXPECT_EQ(eval("GF(9)", "(g+1)^2"), "2*g");
  EXPECT_EQ(eval("GF(4)", "g^2+g"), "1");
  EXPECT_EQ(eval("GF(5)", "7"), "2");
}

TEST(Expr, Quaternions) {
  EXPECT_EQ(eval("Quat(Q)", "inv(i+j)"), "-1/2*i-1/2*j");
  EXPECT_EQ(eval("Quat(Q)", "i*j"), "k");
  EXPECT_EQ(eval("Quat(Q)", "j*i"), "-k");
  EXPECT_EQ(eval("Quat(Q)", "(1+i)^2"), "2*i");
  EXPECT_EQ(eval("Quat(Q)", "1/2+3/4*k"), "1/2+3/4*k");
  EXPECT_EQ(eval("Quat(Q)", "0"), "0");
}

TEST(Expr, Matrices) {
  EXPECT_EQ(eval("M(2,Z(5))", "[[1,2],[3,4]]*[[0,1],[1,0]]"), "[[2,1],[4,3]]");
  EXPECT_EQ(eval("M(2,Z(5))", "e12*e21"), "[[1,0],[0,0]]");
  EXPECT_EQ(eval("M(2,Q)", "3"), "[[3,0],[0,3]]");
  EXPECT_EQ(eval("T(2,GF(3))", "inv([[1,1],[0,2]])"), "[[1,1],[0,2]]");
  EXPECT_EQ(error_of("T(2,GF(3))", "[[1,0],[1,1]]"), ErrorKind::Semantic);
  EXPECT_EQ(eval("M(2,M(2,GF(2)))", "[[e12,0],[0,1]]"), "[[[[0,1],[0,0]],[[0,0],[0,0]]],[[[0,0],[0,0]],[[1,0],[0,1]]]]");
}

TEST(Expr, DualAndSum) {
  EXPECT_EQ(eval("Dual(Z(5))", "(1+eps)^-1"), eval("Dual(Z(5))", "1-eps"));
  EXPECT_EQ(eval("Dual(Q)", "eps*eps"), "0");
  EXPECT_EQ(eval("Sum(Z(4),GF(3))", "(1,2)*(3,2)"), "(3,1)");
  EXPECT_EQ(error_of("Sum(Z(4),GF(3))", "inv((2,1))"), ErrorKind::NonUnit);
}

TEST(Expr, SyntaxErrorsCarryPosition) {
  const auto r = Ring::make("Z(7)");
  try {
    r->parse("1+*2");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_EQ(error_of("Z(7)", "(1+2"), ErrorKind::Syntax);
  EXPECT_EQ(error_of("Z(7)", "q"), ErrorKind::Syntax);
}

TEST(Expr, RenderParseRoundTripExhaustive) {
  for (const char* spec : {"GF(27)", "GF(16)", "M(2,GF(2))", "T(2,GF(3))", "Dual(Z(6))", "Sum(GF(4),Z(3))",
                           "Quat(GF(3))", "Quat(Z(5))"}) {
    const auto r = FiniteRing::make(spec);
    for (FiniteRing::Index a = 0; a < r->size(); ++a) {
      ASSERT_EQ(r->parse(r->render(a)), a) << spec << " " << r->render(a);
    }
  }
}

TEST(Expr, RationalRoundTrip) {
  const auto r = Ring::make("Quat(Q)");
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const Element a = r->random(rng);
    EXPECT_EQ(r->parse(r->render(a)), a) << r->render(a);
  }
}

TEST(Expr, SplitTopLevel) {
  const auto parts = split_top_level("[[1,2],[3,4]],(5,6), inf");
  ASSERT_EQ(parts.size(), 3u);
  EXPECT_EQ(parts[0], "[[1,2],[3,4]]");
  EXPECT_EQ(parts[1], "(5,6)");
  const auto colon = split_top_level("1:g+1:0", ':');
  EXPECT_EQ(colon.size(), 3u);
}

}  // namespace
}  // namespace staudt
