#include "kwfeas/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kwfeas {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Integer pow10(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("not a rational number: '" + std::string(text) + "'"); };
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) fail();

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail();
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    result = Rational(Integer(std::string(num)), d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) fail();
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto whole = s.substr(0, dot);
      auto frac = s.substr(dot + 1);
      if (whole.empty() && frac.empty()) fail();
      if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) fail();
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!all_digits(s)) fail();
      digits = std::string(s);
    }
    Integer mantissa(digits);
    if (exponent >= 0) {
      result = Rational(mantissa * pow10(static_cast<unsigned long>(exponent)));
    } else {
      result = Rational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
      result.canonicalize();
    }
  }
  return negative ? Rational(-result) : result;
}

double to_double(const Rational& q) { return q.get_d(); }

double lower_bound(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) <= q) return d;
  return std::nextafter(d, -std::numeric_limits<double>::infinity());
}

double upper_bound(const Rational& q) {
  double d = q.get_d();
  if (Rational(d) >= q) return d;
  return std::nextafter(d, std::numeric_limits<double>::infinity());
}

Rational rationalize(double x, const Integer& max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rationalize: non-finite input");
  Rational target(x);  // exact binary value
  Integer num = target.get_num(), den = target.get_den();
  // Convergent recurrence seeded with h_{-1}=1, h_{-2}=0, k_{-1}=0, k_{-2}=1.
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Rational best;
  bool have = false;
  while (den != 0) {
    Integer a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Integer hn = a * h1 + h2;
    Integer kn = a * k1 + k2;
    if (kn > max_den) {
      // Semiconvergent with the largest admissible multiplier.
      Integer m = (max_den - k2) / k1;
      if (m > 0) {
        Rational semi(m * h1 + h2, m * k1 + k2);
        semi.canonicalize();
        if (!have || abs(semi - target) < abs(best - target)) {
          best = semi;
          have = true;
        }
      }
      break;
    }
    best = Rational(hn, kn);
    best.canonicalize();
    have = true;
    h2 = h1;
    h1 = hn;
    k2 = k1;
    k1 = kn;
    Integer r = num - a * den;
    num = den;
    den = r;
  }
  return best;
}

}  // namespace kwfeas
