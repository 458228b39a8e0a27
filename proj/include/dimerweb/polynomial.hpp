// Exact multivariate polynomials over the rationals.
//
// This is deliberately a small, naive implementation: coefficients are exact
// arbitrary-precision rationals, monomials are sparse exponent maps keyed by
// variable name, and a polynomial is an ordered term map.  Everything the
// engine computes (boundary measurements, immanants, move certificates) lives
// in this ring, so correctness and determinism matter far more than speed.
//
// Canonical term order, used both for storage and printing:
//   * higher total degree first,
//   * ties broken by comparing exponents at the alphabetically first variable
//     where two monomials differ, larger exponent first.
// str() renders terms in that order, so equal polynomials always print
// identically.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dimerweb/errors.hpp"

namespace dimerweb {

using Rat = boost::multiprecision::cpp_rational;

// Renders "p" or "p/q" (no spaces); used for coefficients and CLI output.
std::string rat_str(const Rat& r);

// A monomial: finite map variable name -> positive exponent.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(const std::string& name, int exponent = 1);

  const std::map<std::string, int>& exponents() const { return exps_; }
  int degree() const;
  int exponent_of(const std::string& name) const;
  bool is_constant() const { return exps_.empty(); }

  Monomial operator*(const Monomial& other) const;
  bool operator==(const Monomial& other) const { return exps_ == other.exps_; }
  bool operator!=(const Monomial& other) const { return exps_ != other.exps_; }

  // True if *this prints strictly before `other` in canonical order.
  bool prints_before(const Monomial& other) const;

  std::string str() const;  // "a^2*b"; constant monomial -> "1"

 private:
  std::map<std::string, int> exps_;  // no zero exponents stored
};

// Strict weak order: canonical printing order ("prints before").
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    return a.prints_before(b);
  }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rat, MonomialOrder>;

  Polynomial() = default;  // zero
  Polynomial(long long value);
  Polynomial(const Rat& value);
  static Polynomial variable(const std::string& name);
  static Polynomial term(const Rat& coeff, const Monomial& m);

  // Parses the same grammar str() emits: terms joined by '+'/'-', each term a
  // '*'-product of factors; a factor is an integer, a rational p/q, or a
  // variable with optional ^exponent.  Whitespace is ignored.  Throws
  // ParseError with an offset-bearing message on bad input.
  static Polynomial parse(const std::string& text);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  int total_degree() const;  // zero polynomial -> 0
  std::set<std::string> variables() const;
  // Largest single-variable exponent appearing in any term of `name`.
  int degree_in(const std::string& name) const;

  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial pow(unsigned exponent) const;

  bool operator==(const Polynomial& other) const {
    return terms_ == other.terms_;
  }
  bool operator!=(const Polynomial& other) const {
    return !(*this == other);
  }

  // Full evaluation; every variable present in the polynomial must be
  // assigned, otherwise InvalidArgument naming the missing variable.
  Rat evaluate(const std::map<std::string, Rat>& assignment) const;

  // Partial evaluation: substitutes the given variables, keeps the rest.
  Polynomial substitute(const std::map<std::string, Rat>& assignment) const;

  std::string str() const;  // canonical; zero -> "0"

 private:
  void add_term(const Monomial& m, const Rat& coeff);

  TermMap terms_;  // no zero coefficients stored
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

// Rank of the span of `polys` inside the rational vector space freely
// generated by monomials (exact Gaussian elimination).
int linear_rank(const std::vector<Polynomial>& polys);

}  // namespace dimerweb
