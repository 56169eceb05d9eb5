#pragma once

// Sparse multivariate polynomials with exact rational coefficients in the
// variables m1..mN. Terms are kept in graded-lex descending order, which is
// also the order of the canonical text form:
//
//   4*m1*m2*m3*m4 - 9*m2*m3*m4 + m1*m2 + m1*m3 + 4*m2*m3 + m4

#include <compare>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "kwfeas/interval.hpp"
#include "kwfeas/rational.hpp"

namespace kwfeas {

struct Monomial {
  std::vector<int> exponents;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exponents(nvars, 0) {}
  explicit Monomial(std::vector<int> e) : exponents(std::move(e)) {}

  [[nodiscard]] std::size_t nvars() const { return exponents.size(); }
  [[nodiscard]] int degree() const;
  [[nodiscard]] int operator[](std::size_t i) const { return exponents[i]; }

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded-lex: higher total degree first, ties broken by larger exponent of
// the lowest-index variable.
std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, std::size_t index);
  static Polynomial term(const Monomial& m, const Rational& c);

  // Builds a polynomial from Laurent terms (exponents may be negative) and
  // multiplies by the unique monomial that makes the smallest exponent of every
  // variable zero. Clears monomial denominators and removes common monomial
  // factors; the multiplier is positive on the open orthant.
  static Polynomial from_laurent(std::size_t nvars, const std::vector<std::pair<std::vector<int>, Rational>>& terms);

  [[nodiscard]] std::size_t nvars() const { return nvars_; }
  [[nodiscard]] const TermMap& terms() const { return terms_; }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] bool is_constant() const;
  [[nodiscard]] Rational constant_term() const;
  [[nodiscard]] int total_degree() const;
  [[nodiscard]] const Monomial& leading_monomial() const;

  void add_term(const Monomial& m, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  [[nodiscard]] Rational evaluate(std::span<const Rational> point) const;
  [[nodiscard]] double evaluate(std::span<const double> point) const;
  // Sound enclosure of the range over a box; each term is enclosed separately.
  [[nodiscard]] Interval evaluate(std::span<const Interval> box) const;

  [[nodiscard]] Polynomial derivative(std::size_t var) const;
  [[nodiscard]] Polynomial pow(int n) const;

  [[nodiscard]] std::string to_string() const;
  // Inverse of to_string. Variables must be m1..m<nvars>.
  static Polynomial parse(std::string_view text, std::size_t nvars);

 private:
  void check_compatible(const Polynomial& other) const;

  std::size_t nvars_ = 0;
  TermMap terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

// Coprime integer coefficients, sign preserved; result = positive multiple of p.
Polynomial content_normalize(const Polynomial& p);

// Total order used to sort constraint lists: leading monomial (graded-lex,
// larger first), then the remaining terms, then coefficients.
std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b);

// Target of one variable in a substitution: a constant or another variable.
using SubstitutionValue = std::variant<Rational, std::size_t>;

// Image of an original variable after substitution: index into the surviving
// variables, or a constant.
using VariableImage = std::variant<std::size_t, Rational>;

struct SubstitutionResult {
  Polynomial polynomial;
  // One entry per variable of the input polynomial.
  std::vector<VariableImage> relabeling;
};

// Applies assignments var -> (constant | var). Identified variables collapse
// onto the lowest index of their class; every assigned slot is dropped and the
// survivors are renumbered in order. Throws std::invalid_argument on cycles.
SubstitutionResult poly_substitute(const Polynomial& p, const std::map<std::size_t, SubstitutionValue>& assignments);

// Only computes the relabeling (shared by systems of polynomials).
std::vector<VariableImage> substitution_relabeling(std::size_t nvars,
                                                   const std::map<std::size_t, SubstitutionValue>& assignments);
Polynomial apply_relabeling(const Polynomial& p, const std::vector<VariableImage>& relabeling);

}  // namespace kwfeas
