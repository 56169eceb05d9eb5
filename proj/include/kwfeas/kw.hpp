#pragma once

// Kiefer-Wolfowitz optimality conditions of saturated designs as cleared
// polynomial inequalities g(mu) <= 0 in mu_1..mu_{p-1} (the intercept
// parameter cancels).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "kwfeas/model.hpp"
#include "kwfeas/polynomial.hpp"
#include "kwfeas/symmetry.hpp"

namespace kwfeas {

struct Restriction {
  enum class Kind { Identify, Fix };

  Kind kind = Kind::Identify;
  std::size_t first = 0;   // 0-based variable index
  std::size_t second = 0;  // Identify only
  Rational value;          // Fix only, > 0

  static Restriction identify(std::size_t i, std::size_t j);
  static Restriction fix(std::size_t i, const Rational& v);
  // "m3=m4" or "m2=1/2" (1-based variable names).
  static Restriction parse(std::string_view text);
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const Restriction&, const Restriction&) = default;
};

struct InequalitySystem {
  int k = 0;
  int d = 0;
  SupportSet support;
  std::size_t nvars = 0;
  // Each constraint means g <= 0; positivity mu_i > 0 is implicit.
  std::vector<Polynomial> constraints;
  std::vector<Restriction> restrictions;
  // For every original variable (mu_1..mu_{p-1}): its current index or the
  // constant it was fixed to.
  std::vector<VariableImage> variable_map;
  std::vector<std::string> notes;

  // Maps a point of this system back to the original variables.
  [[nodiscard]] std::vector<Rational> lift(const std::vector<Rational>& point) const;
  // Constraints as canonical text, one "g <= 0" per line, then positivity.
  [[nodiscard]] std::string to_text() const;

  friend bool operator==(const InequalitySystem&, const InequalitySystem&) = default;
};

// lambda(x, mu) * sum_i c_i^2 / lambda(x_i, mu) with c = F^-T f(x), evaluated
// exactly at mu = (mu_1..mu_{p-1}); the design is optimal iff this is <= 1 for
// all x. Equals 1 for support points.
Rational kw_variance_ratio(const SupportSet& support, const RuleSetting& x, const RegressionSpec& spec,
                           const std::vector<Rational>& mu);

// Cleared polynomial g with g(mu) <= 0 iff the condition at x holds on the
// open orthant. Throws std::domain_error for a singular design and
// std::invalid_argument when x is a support point.
Polynomial kw_polynomial(const SupportSet& support, const RuleSetting& x, const RegressionSpec& spec);

InequalitySystem kw_system(const SupportSet& support, const RegressionSpec& spec);

void sort_constraints(std::vector<Polynomial>& constraints);

InequalitySystem restrict_system(const InequalitySystem& system, const Restriction& r);

// Substitutes the Laurent map into every constraint, clears monomial
// denominators and renormalizes.
InequalitySystem transport_system(const InequalitySystem& system, const ParameterMap& map);

}  // namespace kwfeas
