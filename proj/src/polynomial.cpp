#include "kwfeas/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace kwfeas {

int Monomial::degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.nvars() != b.nvars()) throw std::invalid_argument("monomial variable-count mismatch");
  Monomial r(a.nvars());
  for (std::size_t i = 0; i < a.nvars(); ++i) r.exponents[i] = a.exponents[i] + b.exponents[i];
  return r;
}

std::strong_ordering grlex_compare(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  return a.exponents <=> b.exponents;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw std::out_of_range("variable index out of range");
  Monomial m(nvars);
  m.exponents[index] = 1;
  return term(m, Rational(1));
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p(m.nvars());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::from_laurent(std::size_t nvars,
                                    const std::vector<std::pair<std::vector<int>, Rational>>& terms) {
  // Merge first so cancelled terms do not influence the shift.
  std::map<std::vector<int>, Rational> merged;
  for (const auto& [e, c] : terms) {
    if (e.size() != nvars) throw std::invalid_argument("Laurent term variable-count mismatch");
    merged[e] += c;
  }
  std::erase_if(merged, [](const auto& kv) { return kv.second == 0; });
  Polynomial p(nvars);
  if (merged.empty()) return p;
  std::vector<int> shift(nvars, std::numeric_limits<int>::max());
  for (const auto& [e, c] : merged)
    for (std::size_t i = 0; i < nvars; ++i) shift[i] = std::min(shift[i], e[i]);
  for (const auto& [e, c] : merged) {
    Monomial m(nvars);
    for (std::size_t i = 0; i < nvars; ++i) m.exponents[i] = e[i] - shift[i];
    p.add_term(m, c);
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

Rational Polynomial::constant_term() const {
  auto it = terms_.find(Monomial(nvars_));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Polynomial::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

const Monomial& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("zero polynomial has no leading monomial");
  return terms_.begin()->first;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.nvars() != nvars_) throw std::invalid_argument("monomial variable-count mismatch");
  if (std::any_of(m.exponents.begin(), m.exponents.end(), [](int e) { return e < 0; }))
    throw std::invalid_argument("negative exponent in polynomial term");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (nvars_ != other.nvars_)
    throw std::invalid_argument("polynomial variable-count mismatch (" + std::to_string(nvars_) + " vs " +
                                std::to_string(other.nvars_) + ")");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_compatible(b);
  Polynomial r(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  Rational sum = 0;
  Rational t;
  for (const auto& [m, c] : terms_) {
    t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int e = 0; e < m.exponents[i]; ++e) t *= point[i];
    sum += t;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != nvars_) throw std::invalid_argument("evaluation point has wrong length");
  double sum = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = to_double(c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m.exponents[i] != 0) t *= std::pow(point[i], m.exponents[i]);
    sum += t;
  }
  return sum;
}

Interval Polynomial::evaluate(std::span<const Interval> box) const {
  if (box.size() != nvars_) throw std::invalid_argument("evaluation box has wrong length");
  for (const auto& iv : box)
    if (std::isnan(iv.lo) || std::isnan(iv.hi)) throw std::domain_error("NaN endpoint in evaluation box");
  Interval sum(0.0);
  for (const auto& [m, c] : terms_) {
    Interval t(lower_bound(c), upper_bound(c));
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m.exponents[i] != 0) t = t * kwfeas::pow(box[i], m.exponents[i]);
    sum = sum + t;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable out of range");
  Polynomial r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m.exponents[var] == 0) continue;
    Monomial d = m;
    d.exponents[var] -= 1;
    r.add_term(d, c * m.exponents[var]);
  }
  return r;
}

Polynomial Polynomial::pow(int n) const {
  if (n < 0) throw std::invalid_argument("negative polynomial power");
  Polynomial r = constant(nvars_, Rational(1));
  for (int i = 0; i < n; ++i) r = r * *this;
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(c);
    const bool has_vars = m.degree() > 0;
    if (!has_vars || mag != 1) {
      out << kwfeas::to_string(mag);
      if (has_vars) out << '*';
    }
    bool first_factor = true;
    for (std::size_t i = 0; i < nvars_; ++i) {
      if (m.exponents[i] == 0) continue;
      if (!first_factor) out << '*';
      first_factor = false;
      out << 'm' << (i + 1);
      if (m.exponents[i] > 1) out << '^' << m.exponents[i];
    }
  }
  return out.str();
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : text_(text), nvars_(nvars) {}

  Polynomial run() {
    Polynomial p(nvars_);
    skip_ws();
    if (at_end()) fail("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [m, c] = parse_term();
      p.add_term(m, c * sign);
      skip_ws();
    }
    return p;
  }

 private:
  std::pair<Monomial, Rational> parse_term() {
    Monomial m(nvars_);
    Rational c = 1;
    while (true) {
      skip_ws();
      if (at_end()) fail("unexpected end of input");
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        c *= parse_number();
      } else if (peek() == 'm') {
        ++pos_;
        auto index = parse_digits();
        if (index.empty()) fail("expected variable index after 'm'");
        std::size_t var = std::stoul(index);
        if (var == 0 || var > nvars_) fail("variable m" + index + " out of range");
        int exp = 1;
        skip_ws();
        if (!at_end() && peek() == '^') {
          ++pos_;
          skip_ws();
          auto e = parse_digits();
          if (e.empty() || e.size() > 6) fail("bad exponent");
          exp = std::stoi(e);
        }
        m.exponents[var - 1] += exp;
      } else {
        fail(std::string("unexpected character '") + peek() + "'");
      }
      skip_ws();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    return {m, c};
  }

  Rational parse_number() {
    auto num = parse_digits();
    skip_ws();
    if (!at_end() && peek() == '/') {
      ++pos_;
      skip_ws();
      auto den = parse_digits();
      if (den.empty()) fail("expected denominator");
      return parse_rational(num + "/" + den);
    }
    return parse_rational(num);
  }

  std::string parse_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[nodiscard]] bool at_end() const { return pos_ >= text_.size(); }
  [[nodiscard]] char peek() const { return text_[pos_]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  std::size_t nvars_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(std::string_view text, std::size_t nvars) { return Parser(text, nvars).run(); }

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial content_normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer num_gcd = 0;
  Integer den_lcm = 1;
  for (const auto& [m, c] : p.terms()) {
    num_gcd = gcd(num_gcd, c.get_num());
    den_lcm = lcm(den_lcm, c.get_den());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  return p * scale;
}

std::strong_ordering canonical_compare(const Polynomial& a, const Polynomial& b) {
  auto ia = a.terms().begin();
  auto ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (auto c = grlex_compare(ia->first, ib->first); c != 0) return 0 <=> c;  // larger monomial first
  }
  if (auto c = a.size() <=> b.size(); c != 0) return 0 <=> c;  // longer first
  ia = a.terms().begin();
  ib = b.terms().begin();
  for (; ia != a.terms().end(); ++ia, ++ib) {
    const int cmp = ::cmp(ia->second, ib->second);
    if (cmp != 0) return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::vector<VariableImage> substitution_relabeling(std::size_t nvars,
                                                   const std::map<std::size_t, SubstitutionValue>& assignments) {
  // Each variable points to at most one target; follow chains to a terminal
  // (an unassigned variable or a constant), rejecting cycles.
  std::vector<std::optional<SubstitutionValue>> next(nvars);
  for (const auto& [var, value] : assignments) {
    if (var >= nvars) throw std::out_of_range("substitution variable out of range");
    if (const auto* target = std::get_if<std::size_t>(&value)) {
      if (*target >= nvars) throw std::out_of_range("substitution target out of range");
      if (*target == var) continue;  // x := x is a no-op
    }
    next[var] = value;
  }

  // terminal[v]: the unassigned variable or constant that v resolves to.
  std::vector<std::optional<SubstitutionValue>> terminal(nvars);
  for (std::size_t v = 0; v < nvars; ++v) {
    std::vector<char> seen(nvars, 0);
    std::size_t cur = v;
    while (true) {
      if (seen[cur]) throw std::invalid_argument("cyclic substitution involving m" + std::to_string(cur + 1));
      seen[cur] = 1;
      if (!next[cur]) {
        terminal[v] = SubstitutionValue(cur);
        break;
      }
      if (const auto* c = std::get_if<Rational>(&*next[cur])) {
        terminal[v] = SubstitutionValue(*c);
        break;
      }
      cur = std::get<std::size_t>(*next[cur]);
    }
  }

  // Classes sharing a terminal variable collapse onto their smallest member.
  std::map<std::size_t, std::size_t> class_min;
  for (std::size_t v = 0; v < nvars; ++v) {
    if (const auto* t = std::get_if<std::size_t>(&*terminal[v])) {
      auto [it, inserted] = class_min.try_emplace(*t, v);
      if (!inserted) it->second = std::min(it->second, v);
    }
  }
  std::map<std::size_t, std::size_t> new_index;  // class representative -> new slot
  for (std::size_t v = 0; v < nvars; ++v) {
    if (const auto* t = std::get_if<std::size_t>(&*terminal[v]); t && class_min[*t] == v)
      new_index.emplace(v, new_index.size());
  }
  std::vector<VariableImage> relabeling;
  relabeling.reserve(nvars);
  for (std::size_t v = 0; v < nvars; ++v) {
    if (const auto* c = std::get_if<Rational>(&*terminal[v])) {
      relabeling.emplace_back(*c);
    } else {
      relabeling.emplace_back(new_index.at(class_min.at(std::get<std::size_t>(*terminal[v]))));
    }
  }
  return relabeling;
}

Polynomial apply_relabeling(const Polynomial& p, const std::vector<VariableImage>& relabeling) {
  if (relabeling.size() != p.nvars()) throw std::invalid_argument("relabeling size mismatch");
  std::size_t new_nvars = 0;
  for (const auto& img : relabeling)
    if (const auto* i = std::get_if<std::size_t>(&img)) new_nvars = std::max(new_nvars, *i + 1);
  Polynomial r(new_nvars);
  for (const auto& [m, c] : p.terms()) {
    Monomial nm(new_nvars);
    Rational coeff = c;
    for (std::size_t v = 0; v < relabeling.size(); ++v) {
      if (m.exponents[v] == 0) continue;
      if (const auto* i = std::get_if<std::size_t>(&relabeling[v])) {
        nm.exponents[*i] += m.exponents[v];
      } else {
        const Rational& value = std::get<Rational>(relabeling[v]);
        for (int e = 0; e < m.exponents[v]; ++e) coeff *= value;
      }
    }
    r.add_term(nm, coeff);
  }
  return r;
}

SubstitutionResult poly_substitute(const Polynomial& p, const std::map<std::size_t, SubstitutionValue>& assignments) {
  auto relabeling = substitution_relabeling(p.nvars(), assignments);
  auto result = apply_relabeling(p, relabeling);
  return {std::move(result), std::move(relabeling)};
}

}  // namespace kwfeas
