#include "dimerweb/polynomial.hpp"

#include <random>

#include "doctest.h"

using dimerweb::linear_rank;
using dimerweb::Monomial;
using dimerweb::Polynomial;
using dimerweb::Rat;

namespace {
Polynomial var(const std::string& n) { return Polynomial::variable(n); }
}  // namespace

TEST_CASE("ring basics") {
  Polynomial a = var("a"), b = var("b");
  CHECK(Polynomial().is_zero());
  CHECK((a - a).is_zero());
  CHECK((a + b) * (a - b) == a * a - b * b);
  CHECK((a + b).pow(2) == a * a + Polynomial(2) * a * b + b * b);
  CHECK(Polynomial(0).str() == "0");
  CHECK((a * b).total_degree() == 2);
  CHECK((a + b * b).degree_in("b") == 2);
  CHECK((a + b * b).degree_in("zz") == 0);
}

TEST_CASE("canonical string order") {
  Polynomial a = var("a"), b = var("b"), c = var("c"), d = var("d");
  // Degree ties: exponent at the alphabetically first differing variable,
  // larger exponent first.
  CHECK((b * d + a * c).str() == "a*c + b*d");
  CHECK((a + Polynomial(1) + a * a).str() == "a^2 + a + 1");
  Polynomial p = (a * c).pow(3) + Polynomial(3) * a * a * b * c * c * d +
                 Polynomial(3) * a * b * b * c * d * d + (b * d).pow(3);
  CHECK(p.str() ==
        "a^3*c^3 + 3*a^2*b*c^2*d + 3*a*b^2*c*d^2 + b^3*d^3");
  CHECK(p == (a * c + b * d).pow(3));
  CHECK((a - b).str() == "a - b");
  CHECK((-(a + b)).str() == "-a - b");
  CHECK((Polynomial(Rat(1) / 2) * a).str() == "1/2*a");
}

TEST_CASE("parse round trip and errors") {
  for (const std::string s :
       {"0", "1", "a", "-a + b", "a^3*c^3 + 3*a^2*b*c^2*d + b^3*d^3",
        "1/2*a - 3/4", "t^2 + 2*t + 1", "x_1*x_2 + 7"}) {
    Polynomial p = Polynomial::parse(s);
    CHECK(Polynomial::parse(p.str()) == p);
    CHECK(p.str() == s);
  }
  // Whitespace-insensitive, order-insensitive input.
  CHECK(Polynomial::parse("b*d+a*c") == Polynomial::parse("a*c + b*d"));
  CHECK(Polynomial::parse("2*a - a") == Polynomial::parse("a"));
  CHECK(Polynomial::parse("a^2") == var("a") * var("a"));
  CHECK_THROWS_AS(Polynomial::parse("a +"), dimerweb::ParseError);
  CHECK_THROWS_AS(Polynomial::parse("(a)"), dimerweb::ParseError);
  CHECK_THROWS_AS(Polynomial::parse("1/0"), dimerweb::ParseError);
  CHECK_THROWS_AS(Polynomial::parse("a b"), dimerweb::ParseError);
}

TEST_CASE("evaluate is a ring homomorphism") {
  Polynomial p = Polynomial::parse("a^2*b - 3*b + 1/2");
  Polynomial q = Polynomial::parse("a + b^3");
  std::map<std::string, Rat> at{{"a", Rat(2)}, {"b", Rat(-3)}};
  CHECK(p.evaluate(at) == Rat(2) * 2 * (-3) - Rat(3) * (-3) + Rat(1) / 2);
  CHECK((p * q).evaluate(at) == p.evaluate(at) * q.evaluate(at));
  CHECK((p + q).evaluate(at) == p.evaluate(at) + q.evaluate(at));
  CHECK_THROWS_WITH_AS(p.evaluate({{"a", Rat(1)}}),
                       "evaluate: no value for variable 'b'",
                       dimerweb::InvalidArgument);
}

TEST_CASE("partial substitution") {
  Polynomial p = Polynomial::parse("a*t^2 + b*t + c");
  Polynomial sub = p.substitute({{"t", Rat(2)}});
  CHECK(sub == Polynomial::parse("4*a + 2*b + c"));
  CHECK(p.substitute({}) == p);
  CHECK(p.substitute({{"a", Rat(0)}}) == Polynomial::parse("b*t + c"));
}

TEST_CASE("linear rank over monomial space") {
  Polynomial a = var("a"), b = var("b");
  CHECK(linear_rank({}) == 0);
  CHECK(linear_rank({Polynomial()}) == 0);
  CHECK(linear_rank({a, b, a + b}) == 2);
  CHECK(linear_rank({a + b, a - b, Polynomial(1)}) == 3);
  CHECK(linear_rank({a * a + b, a * a - b}) == 2);
  CHECK(linear_rank({Polynomial::parse("1/3*a"), Polynomial::parse("7*a")}) ==
        1);
}

TEST_CASE("linear rank agrees with evaluation-matrix rank") {
  // Cross-check on random families: evaluate each polynomial at enough
  // generic rational points and row reduce that numeric matrix instead.
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> pick(0, 5);
  const std::vector<Monomial> basis = {
      Monomial(),
      Monomial::variable("x"),
      Monomial::variable("y"),
      Monomial::variable("x", 2),
      Monomial::variable("x") * Monomial::variable("y"),
      Monomial::variable("y", 2)};
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Polynomial> fam;
    for (int i = 0; i < 5; ++i) {
      Polynomial p;
      for (const auto& m : basis)
        if (pick(rng) < 3) p += Polynomial::term(Rat(coeff(rng)), m);
      fam.push_back(p);
    }
    // Evaluation points (s, s^7) for s = 2..13 separate all basis monomials
    // of bidegree at most (2, 2).
    std::vector<std::vector<Rat>> mat;
    for (const auto& p : fam) {
      std::vector<Rat> row;
      for (int s = 2; s <= 13; ++s) {
        Rat xs(s);
        Rat ys = xs * xs * xs * xs * xs * xs * xs;
        row.push_back(p.evaluate({{"x", xs}, {"y", ys}}));
      }
      mat.push_back(std::move(row));
    }
    // Rank of the numeric matrix via the same elimination, expressed through
    // linear_rank on single-variable stand-in polynomials.
    std::vector<Polynomial> encoded;
    for (const auto& row : mat) {
      Polynomial p;
      for (size_t j = 0; j < row.size(); ++j)
        p += Polynomial::term(row[j],
                              Monomial::variable("c" + std::to_string(j)));
      encoded.push_back(p);
    }
    CHECK(linear_rank(fam) == linear_rank(encoded));
  }
}
