#include "kwfeas/kw.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace kwfeas {

namespace {

std::size_t parse_variable(std::string_view text) {
  auto t = text;
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  while (!t.empty() && t.back() == ' ') t.remove_suffix(1);
  if (t.size() < 2 || t.front() != 'm') throw std::invalid_argument("expected variable name like m3, got '" + std::string(text) + "'");
  std::size_t idx = 0;
  for (char c : t.substr(1)) {
    if (c < '0' || c > '9') throw std::invalid_argument("bad variable name '" + std::string(text) + "'");
    idx = idx * 10 + static_cast<std::size_t>(c - '0');
  }
  if (idx == 0) throw std::invalid_argument("variables are numbered from m1");
  return idx - 1;
}

}  // namespace

Restriction Restriction::identify(std::size_t i, std::size_t j) {
  Restriction r;
  r.kind = Kind::Identify;
  r.first = i;
  r.second = j;
  return r;
}

Restriction Restriction::fix(std::size_t i, const Rational& v) {
  if (v <= 0) throw std::invalid_argument("fixed parameter values must be positive");
  Restriction r;
  r.kind = Kind::Fix;
  r.first = i;
  r.value = v;
  return r;
}

Restriction Restriction::parse(std::string_view text) {
  auto eq = text.find('=');
  if (eq == std::string_view::npos) throw std::invalid_argument("restriction must look like m3=m4 or m2=1/2");
  const std::size_t lhs = parse_variable(text.substr(0, eq));
  auto rhs = text.substr(eq + 1);
  while (!rhs.empty() && rhs.front() == ' ') rhs.remove_prefix(1);
  if (!rhs.empty() && rhs.front() == 'm') return identify(lhs, parse_variable(rhs));
  return fix(lhs, parse_rational(rhs));
}

std::string Restriction::to_string() const {
  std::string s = "m" + std::to_string(first + 1) + "=";
  if (kind == Kind::Identify) return s + "m" + std::to_string(second + 1);
  return s + kwfeas::to_string(value);
}

std::vector<Rational> InequalitySystem::lift(const std::vector<Rational>& point) const {
  if (point.size() != nvars) throw std::invalid_argument("point length does not match the system");
  std::vector<Rational> out;
  out.reserve(variable_map.size());
  for (const auto& img : variable_map) {
    if (const auto* idx = std::get_if<std::size_t>(&img)) {
      out.push_back(point.at(*idx));
    } else {
      out.push_back(std::get<Rational>(img));
    }
  }
  return out;
}

std::string InequalitySystem::to_text() const {
  std::ostringstream out;
  for (const auto& g : constraints) out << g.to_string() << " <= 0\n";
  for (std::size_t i = 0; i < nvars; ++i) out << 'm' << (i + 1) << " > 0\n";
  return out.str();
}

namespace {

struct KwData {
  RationalMatrix inverse_transpose;  // F^-T
  Rational det;
  std::vector<std::vector<int>> support_f;
};

KwData prepare(const SupportSet& support, const RegressionSpec& spec) {
  if (support.size() != spec.dimension())
    throw std::invalid_argument("support size " + std::to_string(support.size()) + " differs from p = " +
                                std::to_string(spec.dimension()));
  const RationalMatrix F = design_matrix(support, spec);
  KwData data;
  data.det = mat_det(F);
  if (data.det == 0) throw std::domain_error("singular design matrix for support " + support.to_string());
  data.inverse_transpose = mat_inverse(F).transpose();
  for (const auto& x : support.points()) data.support_f.push_back(regression_function(x, spec));
  return data;
}

std::vector<Rational> coefficients(const KwData& data, const std::vector<int>& fx) {
  std::vector<Rational> f(fx.begin(), fx.end());
  return data.inverse_transpose * f;
}

}  // namespace

Rational kw_variance_ratio(const SupportSet& support, const RuleSetting& x, const RegressionSpec& spec,
                           const std::vector<Rational>& mu) {
  const std::size_t n = spec.dimension() - 1;
  if (mu.size() != n) throw std::invalid_argument("parameter vector must have p-1 entries");
  const KwData data = prepare(support, spec);
  const auto fx = regression_function(x, spec);
  const auto c = coefficients(data, fx);
  auto intensity = [&](const std::vector<int>& f) {
    Rational v = 1;
    for (std::size_t j = 0; j < n; ++j)
      if (f[j + 1]) v *= mu[j];
    return v;
  };
  Rational sum = 0;
  for (std::size_t i = 0; i < c.size(); ++i) sum += c[i] * c[i] / intensity(data.support_f[i]);
  return intensity(fx) * sum;
}

Polynomial kw_polynomial(const SupportSet& support, const RuleSetting& x, const RegressionSpec& spec) {
  if (support.contains(x.code()))
    throw std::invalid_argument("rule setting " + x.to_string() + " belongs to the support");
  const KwData data = prepare(support, spec);
  const std::size_t n = spec.dimension() - 1;
  const auto fx = regression_function(x, spec);
  const auto c = coefficients(data, fx);
  const Rational det2 = data.det * data.det;

  std::vector<std::pair<std::vector<int>, Rational>> terms;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    std::vector<int> e(n);
    for (std::size_t j = 0; j < n; ++j) e[j] = fx[j + 1] - data.support_f[i][j + 1];
    terms.emplace_back(std::move(e), det2 * c[i] * c[i]);
  }
  terms.emplace_back(std::vector<int>(n, 0), -det2);
  return content_normalize(Polynomial::from_laurent(n, terms));
}

void sort_constraints(std::vector<Polynomial>& constraints) {
  std::stable_sort(constraints.begin(), constraints.end(),
                   [](const Polynomial& a, const Polynomial& b) { return canonical_compare(a, b) < 0; });
}

InequalitySystem kw_system(const SupportSet& support, const RegressionSpec& spec) {
  InequalitySystem sys;
  sys.k = spec.k();
  sys.d = spec.d();
  sys.support = support;
  sys.nvars = spec.dimension() - 1;
  for (std::size_t i = 0; i < sys.nvars; ++i) sys.variable_map.emplace_back(i);
  const std::uint32_t npoints = 1U << spec.k();
  for (std::uint32_t code = 0; code < npoints; ++code) {
    if (support.contains(code)) continue;
    const auto x = RuleSetting::from_code(spec.k(), code);
    auto g = kw_polynomial(support, x, spec);
    if (g.is_zero()) {
      sys.notes.push_back("condition at " + x.to_string() + " holds identically; dropped");
      continue;
    }
    sys.constraints.push_back(std::move(g));
  }
  sort_constraints(sys.constraints);
  return sys;
}

InequalitySystem restrict_system(const InequalitySystem& system, const Restriction& r) {
  if (r.first >= system.nvars || (r.kind == Restriction::Kind::Identify && r.second >= system.nvars))
    throw std::out_of_range("restriction " + r.to_string() + " refers to a variable outside m1..m" +
                            std::to_string(system.nvars));
  if (r.kind == Restriction::Kind::Identify && r.first == r.second) return system;
  if (r.kind == Restriction::Kind::Fix && r.value <= 0)
    throw std::invalid_argument("fixed parameter values must be positive");

  std::map<std::size_t, SubstitutionValue> assignments;
  if (r.kind == Restriction::Kind::Identify) {
    assignments.emplace(std::max(r.first, r.second), SubstitutionValue(std::min(r.first, r.second)));
  } else {
    assignments.emplace(r.first, SubstitutionValue(r.value));
  }
  const auto relabeling = substitution_relabeling(system.nvars, assignments);

  InequalitySystem out;
  out.k = system.k;
  out.d = system.d;
  out.support = system.support;
  out.restrictions = system.restrictions;
  out.restrictions.push_back(r);
  out.notes = system.notes;
  out.nvars = 0;
  for (const auto& img : relabeling)
    if (const auto* i = std::get_if<std::size_t>(&img)) out.nvars = std::max(out.nvars, *i + 1);
  for (const auto& img : system.variable_map) {
    if (const auto* i = std::get_if<std::size_t>(&img)) {
      out.variable_map.push_back(relabeling[*i]);
    } else {
      out.variable_map.push_back(img);
    }
  }
  for (const auto& g : system.constraints) {
    auto h = content_normalize(apply_relabeling(g, relabeling));
    if (h.is_zero()) {
      out.notes.push_back("constraint " + g.to_string() + " vanishes under " + r.to_string() + "; dropped");
      continue;
    }
    out.constraints.push_back(std::move(h));
  }
  sort_constraints(out.constraints);
  return out;
}

InequalitySystem transport_system(const InequalitySystem& system, const ParameterMap& map) {
  if (map.nvars() != system.nvars) throw std::invalid_argument("parameter map and system have different sizes");
  InequalitySystem out = system;
  out.constraints.clear();
  const std::size_t n = system.nvars;
  for (const auto& g : system.constraints) {
    std::vector<std::pair<std::vector<int>, Rational>> terms;
    for (const auto& [m, c] : g.terms()) {
      std::vector<int> e(n, 0);
      for (std::size_t l = 0; l < n; ++l) {
        if (m.exponents[l] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) e[j] += m.exponents[l] * map.exponents[l][j];
      }
      terms.emplace_back(std::move(e), c);
    }
    out.constraints.push_back(content_normalize(Polynomial::from_laurent(n, terms)));
  }
  sort_constraints(out.constraints);
  return out;
}

}  // namespace kwfeas
