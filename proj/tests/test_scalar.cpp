#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "bldg/scalar.hpp"
#include "bldg/rng.hpp"

using namespace bldg;

static Scalar q(const char* s) { return parse_scalar(LambdaKind::rationals, s); }
static Scalar lx(const char* s) { return parse_scalar(LambdaKind::lex_pair, s); }

TEST_CASE("compare is reflexive and lexicographic") {
  CHECK(compare(q("3/2"), q("3/2")) == Cmp::equal);
  CHECK(compare(lx("(1,0)"), lx("(0,5)")) == Cmp::greater);
  CHECK(compare(lx("(0,-1)"), lx("(0,0)")) == Cmp::less);
}

TEST_CASE("abs") {
  CHECK(abs(q("-7/3")) == q("7/3"));
  CHECK(abs(lx("(-1,4)")) == lx("(1,-4)"));
  CHECK(abs(q("0")) == q("0"));
  CHECK(abs(lx("(0,0)")) == lx("(0,0)"));
}

TEST_CASE("spec mismatch is a typed error") {
  CHECK_THROWS_AS((void)compare(q("1"), lx("(1,0)")), spec_mismatch);
  CHECK_THROWS_AS((void)add(Scalar::zero(LambdaKind::integers), q("1")), spec_mismatch);
}

TEST_CASE("textual encoding round-trips and is canonical") {
  CHECK(to_string(q("3/2")) == "3/2");
  CHECK(to_string(q("-4/2")) == "-2");
  CHECK(to_string(parse_scalar(LambdaKind::integers, "7")) == "7");
  CHECK(to_string(lx("(2/4,-1/3)")) == "(1/2,-1/3)");
  CHECK_THROWS_AS((void)parse_rational("1/0"), parse_error);
  CHECK_THROWS_AS((void)parse_rational("a"), parse_error);
  CHECK_THROWS_AS((void)parse_scalar(LambdaKind::lex_pair, "1/2"), parse_error);
  CHECK_THROWS_AS((void)lambda_from_name("R"), parse_error);
}

TEST_CASE("group axioms, order translation, triangle on random samples") {
  for (LambdaKind kind : {LambdaKind::integers, LambdaKind::rationals, LambdaKind::lex_pair}) {
    TestRng rng(42 + int(kind));
    for (int t = 0; t < 300; ++t) {
      Scalar a = rng.scalar(kind, 20, 6), b = rng.scalar(kind, 20, 6), c = rng.scalar(kind, 20, 6);
      CHECK(add(add(a, b), c) == add(a, add(b, c)));
      CHECK(add(a, Scalar::zero(kind)) == a);
      CHECK(is_zero(add(a, neg(a))));
      if (lt(a, b)) CHECK(lt(add(a, c), add(b, c)));
      CHECK(le(abs(add(a, b)), add(abs(a), abs(b))));
      CHECK(sign(abs(a)) >= 0);
      CHECK((sign(abs(a)) == 0) == is_zero(a));
    }
  }
}

TEST_CASE("lex pairs are non-archimedean") {
  // (0,1) is positive yet below every positive rational multiple of (1,0)
  Scalar eps = lx("(0,1)");
  CHECK(sign(eps) > 0);
  for (int n = 1; n < 100; ++n)
    CHECK(lt(scale(Rational(n), eps), lx("(1/1000,0)")));
}

TEST_CASE("in_lambda distinguishes Z from its hull") {
  CHECK(in_lambda(parse_scalar(LambdaKind::integers, "3")));
  CHECK_FALSE(in_lambda(parse_scalar(LambdaKind::integers, "3/2")));
  CHECK(in_lambda(q("3/2")));
  CHECK(in_lambda(lx("(1/2,1/3)")));
}
