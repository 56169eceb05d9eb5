#pragma once

#include <random>
#include <string>
#include <vector>

#include "kwfeas/feasibility.hpp"
#include "kwfeas/kw.hpp"
#include "kwfeas/polynomial.hpp"

namespace testing {

using namespace kwfeas;

inline Polynomial P(std::string_view text, std::size_t nvars) { return Polynomial::parse(text, nvars); }
inline Rational Q(std::string_view text) { return parse_rational(text); }

inline std::vector<Rational> Qs(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (const auto* s : items) out.push_back(parse_rational(s));
  return out;
}

// Hand-made system in nvars variables, constraints given as text.
inline InequalitySystem make_system(const std::vector<std::string>& constraints, std::size_t nvars) {
  InequalitySystem s;
  s.k = 1;
  s.d = 1;
  s.nvars = nvars;
  for (std::size_t i = 0; i < nvars; ++i) s.variable_map.emplace_back(i);
  for (const auto& c : constraints) s.constraints.push_back(Polynomial::parse(c, nvars));
  return s;
}

inline Rational random_rational(std::mt19937_64& rng, int num_range, int den_max) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Rational random_positive(std::mt19937_64& rng, int num_max, int den_max) {
  std::uniform_int_distribution<int> num(1, num_max);
  std::uniform_int_distribution<int> den(1, den_max);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t nvars, int max_terms, int max_exp) {
  std::uniform_int_distribution<int> terms(0, max_terms);
  std::uniform_int_distribution<int> expo(0, max_exp);
  Polynomial p(nvars);
  const int t = terms(rng);
  for (int i = 0; i < t; ++i) {
    Monomial m(nvars);
    for (auto& e : m.exponents) e = expo(rng);
    Rational c = random_rational(rng, 9, 4);
    if (c != 0) p += Polynomial::term(m, c);
  }
  return p;
}

}  // namespace testing
