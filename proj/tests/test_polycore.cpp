#include <doctest.h>

#include <functional>

#include "kwfeas/interval.hpp"
#include "kwfeas/matrix.hpp"
#include "support.hpp"

using namespace testing;

namespace {

// Laplace expansion along the first row; independent of the Bareiss code.
Rational cofactor_det(const std::vector<std::vector<Rational>>& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Rational det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (a[0][c] == 0) continue;
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(a[r][j]);
      minor.push_back(std::move(row));
    }
    const Rational term = a[0][c] * cofactor_det(minor);
    det += (c % 2 == 0) ? term : Rational(-term);
  }
  return det;
}

std::vector<std::vector<Rational>> rows_of(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<std::vector<Rational>> out;
  for (auto r : rows) {
    std::vector<Rational> row;
    for (int v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

TEST_CASE("poly_add examples") {
  CHECK(poly_add(P("m1 + 1", 1), P("-1", 1)) == P("m1", 1));
  const auto p = P("3*m1^2*m2 - 2/5*m2 + 7", 2);
  CHECK(poly_add(p, Polynomial(2)) == p);
  CHECK(poly_add(P("m1*m2", 2), P("m1*m2", 2)) == P("2*m1*m2", 2));
  CHECK(poly_add(P("m1", 1), P("-m1", 1)).is_zero());
  CHECK_THROWS_AS(poly_add(P("m1", 1), P("m1", 2)), std::invalid_argument);
}

TEST_CASE("poly_mul examples") {
  CHECK(poly_mul(P("m1 + 1", 1), P("m1 - 1", 1)) == P("m1^2 - 1", 1));
  const auto p = P("m1*m2 + m1 + m2 - 1", 2);
  CHECK(poly_mul(p, Polynomial::constant(2, 1)) == p);
  CHECK(poly_mul(P("m1", 2), P("m2", 2)) == P("m1*m2", 2));
  CHECK_THROWS_AS(poly_mul(P("m1", 1), P("m1", 3)), std::invalid_argument);
}

TEST_CASE("exact evaluation examples") {
  const auto first = P("4*m1*m2*m3*m4 + m1*m3 + m1*m2 + 4*m2*m3 + m4 - 9*m2*m3*m4", 4);
  CHECK(first.evaluate(Qs({"1", "1", "1", "1"})) == 2);
  CHECK(P("m1*m2 + m1 + m2 - 1", 2).evaluate(Qs({"1/4", "1/4"})) == Q("-7/16"));
  CHECK(P("3*m1^2 + 5", 1).evaluate(Qs({"0"})) == 5);
  CHECK_THROWS_AS(P("m1", 1).evaluate(Qs({"1", "2"})), std::invalid_argument);
}

TEST_CASE("interval evaluation examples") {
  const std::vector<Interval> box{{0.6, 2.0}, {0.6, 2.0}};
  const auto s = P("m1 + m2", 2).evaluate(box);
  CHECK(s.lo <= 1.2);
  CHECK(s.hi >= 4.0);
  CHECK(s.lo > 1.19);
  const auto c = Polynomial::constant(2, 5).evaluate(box);
  CHECK(c.lo <= 5.0);
  CHECK(c.hi >= 5.0);
  CHECK(c.width() < 1e-12);
  // m1 - m1 collapses structurally; build the dependency case term by term.
  const auto a = P("m1", 1).evaluate(std::vector<Interval>{{1.0, 3.0}});
  const auto diff = a - a;
  CHECK(diff.contains(0.0));
  CHECK_THROWS(P("m1", 1).evaluate(std::vector<Interval>{{1.0, 2.0}, {1.0, 2.0}}));
  CHECK_THROWS(Interval(2.0, 1.0));
  CHECK_THROWS(Interval(std::nan(""), 1.0));
}

TEST_CASE("substitution examples") {
  {
    auto r = poly_substitute(P("m1*m2 - 1", 2), {{1, SubstitutionValue(std::size_t{0})}});
    CHECK(r.polynomial == P("m1^2 - 1", 1));
    CHECK(std::get<std::size_t>(r.relabeling[1]) == 0);
  }
  {
    auto r = poly_substitute(P("m1 + m2", 2), {{1, SubstitutionValue(Rational(3))}});
    CHECK(r.polynomial == P("m1 + 3", 1));
    CHECK(std::get<Rational>(r.relabeling[1]) == 3);
  }
  {
    // m3 -> m4 -> m1: the class collapses onto m1, the survivor m2 becomes m2.
    auto r = poly_substitute(P("m1 + m2 + m3 + m4", 4),
                             {{2, SubstitutionValue(std::size_t{3})}, {3, SubstitutionValue(std::size_t{0})}});
    CHECK(r.polynomial == P("3*m1 + m2", 2));
  }
  CHECK_THROWS_AS(poly_substitute(P("m1 + m2", 2),
                                  {{0, SubstitutionValue(std::size_t{1})}, {1, SubstitutionValue(std::size_t{0})}}),
                  std::invalid_argument);
}

TEST_CASE("content normalization") {
  CHECK(content_normalize(P("2/3*m1 + 4/3", 1)) == P("m1 + 2", 1));
  CHECK(content_normalize(P("6*m1 - 9", 1)) == P("2*m1 - 3", 1));
  CHECK(content_normalize(P("-2*m1", 1)) == P("-m1", 1));
  CHECK(content_normalize(Polynomial(3)).is_zero());
}

TEST_CASE("determinants and inverses") {
  const auto corner = rows_of({{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1}});
  CHECK(mat_det(RationalMatrix::from_rows(corner)) == 1);
  const auto ff = rows_of({{1, 0, 0, 0}, {1, 1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}});
  CHECK(cofactor_det(ff) == -2);
  CHECK(mat_det(RationalMatrix::from_rows(ff)) == -2);
  const auto id = RationalMatrix::identity(5);
  CHECK(mat_det(id) == 1);
  CHECK(mat_inverse(id) == id);
  CHECK_THROWS_AS(mat_inverse(RationalMatrix::from_rows(rows_of({{1, 2}, {2, 4}}))), std::domain_error);
}

TEST_CASE("canonical text form round-trips") {
  const char* text = "4*m1*m2*m3*m4 - 9*m2*m3*m4 + m1*m2 + m1*m3 + 4*m2*m3 + m4";
  const auto p = P(text, 4);
  CHECK(p.to_string() == text);
  CHECK(P("m4 + 4*m2*m3 - 9*m2*m3*m4 + m1*m3 + m1*m2 + 4*m1*m2*m3*m4", 4).to_string() == text);
  CHECK(P("2/3*m1^2 - m2 + 1", 2).to_string() == "2/3*m1^2 - m2 + 1");
  CHECK(Polynomial(2).to_string() == "0");
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto q = random_polynomial(rng, 3, 6, 3);
    CHECK(Polynomial::parse(q.to_string(), 3) == q);
  }
  CHECK_THROWS(P("m5", 4));
  CHECK_THROWS(P("2*", 1));
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_polynomial(rng, 3, 4, 2);
    const auto b = random_polynomial(rng, 3, 4, 2);
    const auto c = random_polynomial(rng, 3, 4, 2);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("evaluation is a ring homomorphism") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_polynomial(rng, 3, 5, 3);
    const auto b = random_polynomial(rng, 3, 5, 3);
    std::vector<Rational> x;
    for (int j = 0; j < 3; ++j) x.push_back(random_rational(rng, 20, 7));
    CHECK((a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x));
    CHECK((a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x));
  }
}

TEST_CASE("interval evaluation is sound on 1000 random points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_polynomial(rng, 3, 8, 4);
    std::vector<Interval> box;
    for (int j = 0; j < 3; ++j) {
      const double lo = std::exp(-3.0 + 5.0 * unit(rng));
      box.emplace_back(lo, lo * (1.0 + 4.0 * unit(rng)));
    }
    const auto range = p.evaluate(box);
    for (int s = 0; s < 100; ++s) {
      std::vector<Rational> x;
      for (const auto& side : box) x.emplace_back(std::clamp(side.lo + unit(rng) * side.width(), side.lo, side.hi));
      const Rational v = p.evaluate(x);
      CHECK(Rational(range.lo) <= v);
      CHECK(v <= Rational(range.hi));
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("inverse of random invertible 0/1 matrices") {
  std::mt19937_64 rng(19);
  std::bernoulli_distribution bit(0.5);
  int tested = 0;
  for (std::size_t n = 1; n <= 8; ++n) {
    for (int t = 0; t < 25; ++t) {
      RationalMatrix m(n, n);
      std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) rows[r][c] = m(r, c) = bit(rng) ? 1 : 0;
      const Rational det = mat_det(m);
      if (n <= 6) CHECK(det == cofactor_det(rows));
      if (det == 0) {
        CHECK_THROWS_AS(mat_inverse(m), std::domain_error);
        continue;
      }
      const auto inv = mat_inverse(m);
      CHECK(inv * m == RationalMatrix::identity(n));
      CHECK(m * inv == RationalMatrix::identity(n));
      ++tested;
    }
  }
  CHECK(tested > 50);
}

TEST_CASE("content normalization is idempotent and a positive multiple") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_polynomial(rng, 2, 5, 3);
    const auto n = content_normalize(p);
    CHECK(content_normalize(n) == n);
    if (p.is_zero()) continue;
    const auto& [m, c] = *p.terms().begin();
    const Rational ratio = n.terms().at(m) / c;
    CHECK(ratio > 0);
    auto scaled = p;
    scaled *= ratio;
    CHECK(scaled == n);
    for (const auto& [mm, cc] : n.terms()) CHECK(cc.get_den() == 1);
  }
}
