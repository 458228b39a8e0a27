#include "dimerweb/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace dimerweb {

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << "/" << denominator(r);
  return os.str();
}

Monomial Monomial::variable(const std::string& name, int exponent) {
  if (name.empty()) throw InvalidArgument("monomial: empty variable name");
  if (exponent < 0) throw InvalidArgument("monomial: negative exponent");
  Monomial m;
  if (exponent > 0) m.exps_[name] = exponent;
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [name, e] : exps_) d += e;
  return d;
}

int Monomial::exponent_of(const std::string& name) const {
  auto it = exps_.find(name);
  return it == exps_.end() ? 0 : it->second;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out = *this;
  for (const auto& [name, e] : other.exps_) out.exps_[name] += e;
  return out;
}

bool Monomial::prints_before(const Monomial& other) const {
  int da = degree(), db = other.degree();
  if (da != db) return da > db;
  // Walk both exponent maps in variable-name order; at the first variable
  // where the exponents differ, the larger exponent prints first.
  auto ia = exps_.begin(), ib = other.exps_.begin();
  while (ia != exps_.end() && ib != other.exps_.end()) {
    if (ia->first != ib->first) {
      // The alphabetically earlier variable is present in one monomial with a
      // positive exponent and absent (exponent 0) in the other.
      return ia->first < ib->first;
    }
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  // One is a prefix of the other; equal degree forces both exhausted.
  return false;
}

std::string Monomial::str() const {
  if (exps_.empty()) return "1";
  std::string out;
  bool first = true;
  for (const auto& [name, e] : exps_) {
    if (!first) out += "*";
    first = false;
    out += name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

Polynomial::Polynomial(long long value) {
  if (value != 0) terms_[Monomial()] = Rat(value);
}

Polynomial::Polynomial(const Rat& value) {
  if (value != 0) terms_[Monomial()] = value;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.terms_[Monomial::variable(name)] = Rat(1);
  return p;
}

Polynomial Polynomial::term(const Rat& coeff, const Monomial& m) {
  Polynomial p;
  if (coeff != 0) p.terms_[m] = coeff;
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rat& coeff) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (coeff != 0) terms_.emplace(m, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return 0;
  // First term has the highest degree by the storage order.
  return terms_.begin()->first.degree();
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [name, e] : m.exponents()) out.insert(name);
  return out;
}

int Polynomial::degree_in(const std::string& name) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent_of(name));
  return d;
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  Polynomial out = *this;
  out += other;
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  Polynomial out = *this;
  out -= other;
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_[m] = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  Polynomial out;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : other.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial Polynomial::pow(unsigned exponent) const {
  Polynomial out(1);
  for (unsigned i = 0; i < exponent; ++i) out *= *this;
  return out;
}

Rat Polynomial::evaluate(const std::map<std::string, Rat>& assignment) const {
  Rat out = 0;
  for (const auto& [m, c] : terms_) {
    Rat v = c;
    for (const auto& [name, e] : m.exponents()) {
      auto it = assignment.find(name);
      if (it == assignment.end())
        throw InvalidArgument("evaluate: no value for variable '" + name + "'");
      for (int i = 0; i < e; ++i) v *= it->second;
    }
    out += v;
  }
  return out;
}

Polynomial Polynomial::substitute(
    const std::map<std::string, Rat>& assignment) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Rat coeff = c;
    Monomial rest;
    for (const auto& [name, e] : m.exponents()) {
      auto it = assignment.find(name);
      if (it == assignment.end()) {
        rest = rest * Monomial::variable(name, e);
      } else {
        for (int i = 0; i < e; ++i) coeff *= it->second;
      }
    }
    out.add_term(rest, coeff);
  }
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rat coeff = c;
    if (first) {
      if (coeff < 0) {
        out += "-";
        coeff = -coeff;
      }
    } else {
      out += coeff < 0 ? " - " : " + ";
      if (coeff < 0) coeff = -coeff;
    }
    first = false;
    if (m.is_constant()) {
      out += rat_str(coeff);
    } else if (coeff == 1) {
      out += m.str();
    } else {
      out += rat_str(coeff) + "*" + m.str();
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
  return os << p.str();
}

namespace {

// Recursive-descent parser over the canonical polynomial grammar.
class PolyParser {
 public:
  explicit PolyParser(const std::string& text) : text_(text) {}

  Polynomial parse() {
    skip_ws();
    Polynomial out = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial: " + what + " at offset " +
                     std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial parse_expr() {
    bool negate = false;
    skip_ws();
    if (eat('-')) negate = true;
    else eat('+');
    Polynomial out = parse_term();
    if (negate) out = -out;
    while (true) {
      skip_ws();
      if (eat('+')) {
        out += parse_term();
      } else if (eat('-')) {
        out -= parse_term();
      } else {
        break;
      }
    }
    return out;
  }

  Polynomial parse_term() {
    Polynomial out = parse_factor();
    while (eat('*')) out *= parse_factor();
    return out;
  }

  Polynomial parse_factor() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected factor");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rat num(parse_int());
      if (eat('/')) {
        boost::multiprecision::cpp_int den = parse_int();
        if (den == 0) fail("division by zero");
        num /= Rat(den);
      }
      return Polynomial(num);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name = parse_name();
      int exp = 1;
      if (eat('^')) {
        boost::multiprecision::cpp_int e = parse_int();
        if (e < 0 || e > 1000000) fail("exponent out of range");
        exp = static_cast<int>(e);
      }
      return Polynomial::term(Rat(1), Monomial::variable(name, exp));
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  boost::multiprecision::cpp_int parse_int() {
    skip_ws();
    size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) fail("expected integer");
    return boost::multiprecision::cpp_int(text_.substr(start, pos_ - start));
  }

  std::string parse_name() {
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ++pos_;
      else break;
    }
    return text_.substr(start, pos_ - start);
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text) {
  return PolyParser(text).parse();
}

int linear_rank(const std::vector<Polynomial>& polys) {
  // Column index: every monomial that appears anywhere.
  std::map<Monomial, int, MonomialOrder> columns;
  for (const auto& p : polys)
    for (const auto& [m, c] : p.terms())
      columns.emplace(m, 0);
  int ncols = 0;
  for (auto& [m, idx] : columns) idx = ncols++;

  std::vector<std::vector<Rat>> rows;
  rows.reserve(polys.size());
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    std::vector<Rat> row(ncols, Rat(0));
    for (const auto& [m, c] : p.terms()) row[columns[m]] = c;
    rows.push_back(std::move(row));
  }

  int rank = 0;
  for (int col = 0; col < ncols && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    const Rat lead = rows[rank][col];
    for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] == 0) continue;
      const Rat f = rows[r][col] / lead;
      for (int c2 = col; c2 < ncols; ++c2) rows[r][c2] -= f * rows[rank][c2];
    }
    ++rank;
  }
  return rank;
}

}  // namespace dimerweb
