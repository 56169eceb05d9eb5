#include "kwfeas/feasibility.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "kwfeas/lp.hpp"

namespace kwfeas {

using Clock = std::chrono::steady_clock;

const char* to_string(Status s) {
  switch (s) {
    case Status::Feasible: return "Feasible";
    case Status::Infeasible: return "Infeasible";
    case Status::Unknown: return "Unknown";
  }
  return "?";
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::Auto: return "auto";
    case Strategy::Witness: return "witness";
    case Strategy::Certificate: return "certificate";
    case Strategy::BranchAndBound: return "bnb";
  }
  return "?";
}

const char* to_string(BnbStatus s) {
  switch (s) {
    case BnbStatus::ProvenEmpty: return "ProvenEmpty";
    case BnbStatus::FoundPoint: return "FoundPoint";
    case BnbStatus::Exhausted: return "Exhausted";
  }
  return "?";
}

Status parse_status(std::string_view s) {
  if (s == "Feasible") return Status::Feasible;
  if (s == "Infeasible") return Status::Infeasible;
  if (s == "Unknown") return Status::Unknown;
  throw std::invalid_argument("unknown verdict status '" + std::string(s) + "'");
}

Strategy parse_strategy(std::string_view s) {
  if (s == "auto") return Strategy::Auto;
  if (s == "witness") return Strategy::Witness;
  if (s == "certificate") return Strategy::Certificate;
  if (s == "bnb") return Strategy::BranchAndBound;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "' (auto|witness|certificate|bnb)");
}

BnbStatus parse_bnb_status(std::string_view s) {
  if (s == "ProvenEmpty") return BnbStatus::ProvenEmpty;
  if (s == "FoundPoint") return BnbStatus::FoundPoint;
  if (s == "Exhausted") return BnbStatus::Exhausted;
  throw std::invalid_argument("unknown branch-and-bound status '" + std::string(s) + "'");
}

// ---------------------------------------------------------------------------
// Exact verification

bool verify_witness(const InequalitySystem& system, const std::vector<Rational>& point) {
  if (point.size() != system.nvars) throw std::invalid_argument("witness length does not match the system");
  for (const auto& v : point)
    if (v <= 0) return false;
  for (const auto& g : system.constraints)
    if (g.evaluate(point) > 0) return false;
  return true;
}

namespace {

Polynomial product_of_negated(const InequalitySystem& system, const std::vector<std::size_t>& multiset) {
  Polynomial p = Polynomial::constant(system.nvars, Rational(1));
  for (auto i : multiset) p = p * (-system.constraints.at(i));
  return p;
}

bool nonnegative_coefficients(const Polynomial& p) {
  return std::all_of(p.terms().begin(), p.terms().end(), [](const auto& t) { return t.second >= 0; });
}

}  // namespace

bool verify_certificate(const InequalitySystem& system, const OrthantCertificate& cert) {
  if (cert.target.nvars() != system.nvars || cert.target.is_zero() || !nonnegative_coefficients(cert.target))
    return false;
  Polynomial sum = cert.target;
  for (const auto& e : cert.entries) {
    if (e.multiplier.nvars() != system.nvars || !nonnegative_coefficients(e.multiplier)) return false;
    for (auto i : e.multiset)
      if (i >= system.constraints.size()) return false;
    sum += e.multiplier * product_of_negated(system, e.multiset);
  }
  return sum.is_zero();
}

// ---------------------------------------------------------------------------
// Witness search

namespace {

// max_i g_i(exp(theta)) / sum_t |c_t| exp(a_t . theta), each ratio in [-1, 1].
class LogObjective {
 public:
  explicit LogObjective(const InequalitySystem& system) : n_(system.nvars) {
    for (const auto& g : system.constraints) {
      std::vector<Term> terms;
      for (const auto& [m, c] : g.terms()) {
        Term t;
        t.exps.assign(m.exponents.begin(), m.exponents.end());
        t.log_abs = std::log(std::fabs(to_double(c)));
        t.sign = c > 0 ? 1.0 : -1.0;
        terms.push_back(std::move(t));
      }
      constraints_.push_back(std::move(terms));
    }
  }

  double operator()(const std::vector<double>& theta) const {
    double worst = -1.0;
    std::vector<double> u;
    for (const auto& terms : constraints_) {
      u.resize(terms.size());
      double umax = -std::numeric_limits<double>::infinity();
      for (std::size_t t = 0; t < terms.size(); ++t) {
        double v = terms[t].log_abs;
        for (std::size_t j = 0; j < n_; ++j) v += terms[t].exps[j] * theta[j];
        u[t] = v;
        umax = std::max(umax, v);
      }
      double num = 0.0;
      double den = 0.0;
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const double w = std::exp(u[t] - umax);
        num += terms[t].sign * w;
        den += w;
      }
      worst = std::max(worst, num / den);
    }
    return worst;
  }

 private:
  struct Term {
    std::vector<double> exps;
    double log_abs = 0.0;
    double sign = 1.0;
  };
  std::size_t n_;
  std::vector<std::vector<Term>> constraints_;
};

constexpr double kThetaLimit = 30.0;

std::vector<double> clamp_theta(std::vector<double> theta) {
  for (auto& t : theta) t = std::clamp(t, -kThetaLimit, kThetaLimit);
  return theta;
}

struct MinimizeResult {
  std::vector<double> point;
  double value = 0.0;
};

MinimizeResult nelder_mead(const LogObjective& f, std::vector<double> start, int iterations, double stop_below) {
  const std::size_t n = start.size();
  std::vector<std::vector<double>> simplex(n + 1, start);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += 1.0;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    simplex[i] = clamp_theta(simplex[i]);
    values[i] = f(simplex[i]);
  }
  std::vector<std::size_t> order(n + 1);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (values[best] < stop_below) break;
    double spread = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j) spread = std::max(spread, std::fabs(simplex[i][j] - simplex[best][j]));
    if (spread < 1e-10) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j] / static_cast<double>(n);
    }
    auto along = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      return clamp_theta(std::move(p));
    };
    auto reflected = along(-1.0);
    const double fr = f(reflected);
    if (fr < values[best]) {
      auto expanded = along(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        simplex[worst] = std::move(expanded);
        values[worst] = fe;
      } else {
        simplex[worst] = std::move(reflected);
        values[worst] = fr;
      }
    } else if (fr < values[second]) {
      simplex[worst] = std::move(reflected);
      values[worst] = fr;
    } else {
      auto contracted = fr < values[worst] ? along(-0.5) : along(0.5);
      const double fc = f(contracted);
      if (fc < std::min(fr, values[worst])) {
        simplex[worst] = std::move(contracted);
        values[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          values[i] = f(simplex[i]);
        }
      }
    }
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i <= n; ++i)
    if (values[i] < values[best]) best = i;
  return {simplex[best], values[best]};
}

// Rational points near mu, simplest first; verified exactly.
std::optional<std::vector<Rational>> rationalize_and_verify(const InequalitySystem& system,
                                                            const std::vector<double>& mu, long max_den) {
  std::vector<Rational> point(mu.size());
  for (long bound = 1;; bound = bound >= max_den / 10 + 1 ? max_den : bound * 10) {
    bool positive = true;
    for (std::size_t j = 0; j < mu.size(); ++j) {
      point[j] = rationalize(mu[j], Integer(bound));
      if (point[j] <= 0) positive = false;
    }
    if (positive && verify_witness(system, point)) return point;
    if (bound >= max_den) break;
  }
  return std::nullopt;
}

std::vector<double> exp_of(const std::vector<double>& theta) {
  std::vector<double> mu(theta.size());
  for (std::size_t j = 0; j < theta.size(); ++j) mu[j] = std::exp(theta[j]);
  return mu;
}

std::optional<std::vector<Rational>> search_witness_until(const InequalitySystem& system, const SearchConfig& cfg,
                                                          Clock::time_point deadline, double* best_value) {
  const std::size_t n = system.nvars;
  if (n == 0) {
    if (verify_witness(system, {})) return std::vector<Rational>{};
    return std::nullopt;
  }
  if (system.constraints.empty()) return std::vector<Rational>(n, Rational(1));
  // A constant positive constraint can never be satisfied.
  for (const auto& g : system.constraints)
    if (g.is_constant() && g.constant_term() > 0) return std::nullopt;

  const LogObjective objective(system);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> spread(-6.0, 6.0);
  double overall_best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < cfg.multistart; ++start) {
    if (Clock::now() > deadline) break;
    std::vector<double> theta(n, 0.0);
    if (start > 0)
      for (auto& t : theta) t = spread(rng);
    if (objective(theta) <= 0.0)
      if (auto w = rationalize_and_verify(system, exp_of(theta), cfg.max_denominator)) return w;
    auto result = nelder_mead(objective, theta, cfg.iterations, -0.25);
    overall_best = std::min(overall_best, result.value);
    if (result.value <= 1e-9)
      if (auto w = rationalize_and_verify(system, exp_of(result.point), cfg.max_denominator)) return w;
  }
  if (best_value) *best_value = overall_best;
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<Rational>> search_witness(const InequalitySystem& system, const SearchConfig& cfg) {
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(cfg.time_budget));
  return search_witness_until(system, cfg, deadline, nullptr);
}

// ---------------------------------------------------------------------------
// Orthant certificates

namespace {

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  Monomial m(nvars);
  // Odometer over exponent vectors with total degree <= degree.
  while (true) {
    out.push_back(m);
    std::size_t i = 0;
    for (; i < nvars; ++i) {
      ++m.exponents[i];
      if (m.degree() <= degree) break;
      m.exponents[i] = 0;
    }
    if (i == nvars) break;
  }
  std::sort(out.begin(), out.end(), GrlexDescending{});
  return out;
}

std::vector<std::vector<std::size_t>> multisets_up_to(std::size_t m, int order) {
  std::vector<std::vector<std::size_t>> out{{}};
  std::vector<std::vector<std::size_t>> frontier{{}};
  for (int s = 1; s <= order; ++s) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& base : frontier) {
      const std::size_t start = base.empty() ? 0 : base.back();
      for (std::size_t i = start; i < m; ++i) {
        auto ms = base;
        ms.push_back(i);
        next.push_back(std::move(ms));
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Solves A x = b exactly for the given sparse columns; free variables are set
// to zero. Returns nullopt when inconsistent.
std::optional<std::vector<Rational>> exact_solve(const std::vector<std::vector<std::pair<std::size_t, Rational>>>& columns,
                                                 const std::map<std::size_t, Rational>& rhs) {
  std::map<std::size_t, std::size_t> row_slot;
  for (const auto& col : columns)
    for (const auto& [r, v] : col) row_slot.try_emplace(r, 0);
  for (const auto& [r, v] : rhs) row_slot.try_emplace(r, 0);
  std::size_t slot = 0;
  for (auto& [r, s] : row_slot) s = slot++;
  const std::size_t rows = row_slot.size();
  const std::size_t ncols = columns.size();
  std::vector<std::vector<Rational>> M(rows, std::vector<Rational>(ncols + 1));
  for (std::size_t j = 0; j < ncols; ++j)
    for (const auto& [r, v] : columns[j]) M[row_slot[r]][j] += v;
  for (const auto& [r, v] : rhs) M[row_slot[r]][ncols] = v;

  std::vector<std::size_t> pivot_col;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < ncols && prow < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t r = prow; r < rows; ++r)
      if (M[r][c] != 0) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    std::swap(M[sel], M[prow]);
    const Rational inv = 1 / M[prow][c];
    for (std::size_t j = c; j <= ncols; ++j) M[prow][j] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == prow || M[r][c] == 0) continue;
      const Rational f = M[r][c];
      for (std::size_t j = c; j <= ncols; ++j)
        if (M[prow][j] != 0) M[r][j] -= f * M[prow][j];
    }
    pivot_col.push_back(c);
    ++prow;
  }
  for (std::size_t r = prow; r < rows; ++r)
    if (M[r][ncols] != 0) return std::nullopt;
  std::vector<Rational> x(ncols);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = M[i][ncols];
  return x;
}

struct CertificateLp {
  std::vector<std::vector<std::size_t>> multisets;
  std::vector<Polynomial> products;
  std::vector<Monomial> multipliers;
  std::map<Monomial, std::size_t, GrlexDescending> rows;
  std::vector<Monomial> row_monomial;
  // Column c < products.size() * multipliers.size() is (c / nmult, c % nmult);
  // the remaining columns are target monomials, one per row.
  std::size_t h_columns = 0;
  std::size_t norm_row = 0;
  LpProblem lp;
};

std::size_t row_of(CertificateLp& c, const Monomial& m) {
  auto [it, inserted] = c.rows.try_emplace(m, c.row_monomial.size());
  if (inserted) c.row_monomial.push_back(m);
  return it->second;
}

CertificateLp build_lp(const InequalitySystem& system, int degree, int order) {
  CertificateLp c;
  c.multisets = multisets_up_to(system.constraints.size(), order);
  for (const auto& ms : c.multisets) c.products.push_back(product_of_negated(system, ms));
  c.multipliers = monomials_up_to(system.nvars, degree);
  const std::size_t nmult = c.multipliers.size();
  c.h_columns = c.products.size() * nmult;
  c.lp.columns.resize(c.h_columns);
  for (std::size_t a = 0; a < c.products.size(); ++a) {
    for (std::size_t b = 0; b < nmult; ++b) {
      auto& col = c.lp.columns[a * nmult + b];
      for (const auto& [m, coeff] : c.products[a].terms())
        col.emplace_back(row_of(c, m * c.multipliers[b]), to_double(coeff));
    }
  }
  c.norm_row = c.row_monomial.size();
  for (std::size_t r = 0; r < c.norm_row; ++r) c.lp.columns.push_back({{r, 1.0}, {c.norm_row, 1.0}});
  c.lp.rows = c.norm_row + 1;
  c.lp.rhs.assign(c.lp.rows, 0.0);
  c.lp.rhs[c.norm_row] = 1.0;
  return c;
}

std::vector<std::pair<std::size_t, Rational>> exact_column(const CertificateLp& c, std::size_t col) {
  std::vector<std::pair<std::size_t, Rational>> out;
  if (col < c.h_columns) {
    const std::size_t nmult = c.multipliers.size();
    const auto& prod = c.products[col / nmult];
    const auto& mult = c.multipliers[col % nmult];
    for (const auto& [m, coeff] : prod.terms()) out.emplace_back(c.rows.at(m * mult), coeff);
  } else {
    const std::size_t r = col - c.h_columns;
    out.emplace_back(r, Rational(1));
    out.emplace_back(c.norm_row, Rational(1));
  }
  return out;
}

OrthantCertificate assemble(const CertificateLp& c, const InequalitySystem& system,
                            const std::vector<std::size_t>& cols, const std::vector<Rational>& values, int degree,
                            int order) {
  OrthantCertificate cert;
  cert.degree = degree;
  cert.order = order;
  cert.target = Polynomial(system.nvars);
  std::map<std::size_t, Polynomial> by_multiset;
  const std::size_t nmult = c.multipliers.size();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (values[i] == 0) continue;
    if (cols[i] < c.h_columns) {
      const std::size_t a = cols[i] / nmult;
      auto [it, _] = by_multiset.try_emplace(a, Polynomial(system.nvars));
      it->second.add_term(c.multipliers[cols[i] % nmult], values[i]);
    } else {
      cert.target.add_term(c.row_monomial[cols[i] - c.h_columns], values[i]);
    }
  }
  for (auto& [a, h] : by_multiset) cert.entries.push_back({c.multisets[a], std::move(h)});
  return cert;
}

std::optional<OrthantCertificate> trivial_certificate(const InequalitySystem& system) {
  for (std::size_t i = 0; i < system.constraints.size(); ++i) {
    const auto& g = system.constraints[i];
    if (g.is_constant() && g.constant_term() > 0) {
      OrthantCertificate cert;
      cert.entries.push_back({{i}, Polynomial::constant(system.nvars, Rational(1))});
      cert.target = g;
      return cert;
    }
  }
  return std::nullopt;
}

CertificateSearch certificate_attempt(const InequalitySystem& system, int degree, int order, const SearchConfig& cfg,
                                      Clock::time_point deadline) {
  CertificateSearch out;
  std::ostringstream note;
  note << "certificate (D=" << degree << ", r=" << order << "): ";
  if (system.constraints.empty()) {
    out.log.push_back(note.str() + "no constraints");
    return out;
  }
  CertificateLp c = build_lp(system, degree, order);
  // Tiny positive right-hand sides on the monomial rows break the massive
  // degeneracy of the zero vertex. The target columns absorb them, so a
  // feasible LP stays feasible; exact recovery below uses the true rows.
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> jitter(1e-9, 2e-9);
  for (std::size_t r = 0; r < c.norm_row; ++r) c.lp.rhs[r] = jitter(rng);
  LpOptions opts;
  opts.max_cells = cfg.lp_max_cells;
  opts.deadline = deadline;
  note << c.lp.rows << "x" << c.lp.columns.size() << " LP, ";
  const LpResult res = solve_feasibility(c.lp, opts);
  note << to_string(res.status) << " after " << res.iterations << " pivots";
  if (res.status != LpStatus::Feasible) {
    out.log.push_back(note.str());
    return out;
  }

  // Re-derive exact values on the positive support, then on the whole basis,
  // then fall back to rounding the floats.
  std::vector<std::size_t> positive;
  for (auto j : res.basic)
    if (res.x[j] > 1e-6) positive.push_back(j);
  std::sort(positive.begin(), positive.end());
  std::vector<std::size_t> basis = res.basic;
  std::sort(basis.begin(), basis.end());
  const std::map<std::size_t, Rational> rhs{{c.norm_row, Rational(1)}};

  for (const auto* cols : {&positive, &basis}) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns;
    for (auto j : *cols) columns.push_back(exact_column(c, j));
    auto values = exact_solve(columns, rhs);
    if (!values) continue;
    if (std::any_of(values->begin(), values->end(), [](const Rational& v) { return v < 0; })) continue;
    auto cert = assemble(c, system, *cols, *values, degree, order);
    if (verify_certificate(system, cert)) {
      out.log.push_back(note.str() + "; exact certificate recovered");
      out.certificate = std::move(cert);
      return out;
    }
  }
  for (long bound = 1000; bound <= cfg.max_denominator; bound *= 1000) {
    std::vector<Rational> values;
    for (auto j : positive) values.push_back(rationalize(res.x[j], Integer(bound)));
    auto cert = assemble(c, system, positive, values, degree, order);
    if (verify_certificate(system, cert)) {
      out.log.push_back(note.str() + "; certificate recovered by rounding");
      out.certificate = std::move(cert);
      return out;
    }
  }
  out.log.push_back(note.str() + "; exact re-verification failed");
  return out;
}

CertificateSearch find_certificate_until(const InequalitySystem& system, const SearchConfig& cfg,
                                         Clock::time_point deadline) {
  CertificateSearch out;
  if (auto trivial = trivial_certificate(system)) {
    out.certificate = std::move(trivial);
    out.log.push_back("certificate: constant positive constraint");
    return out;
  }
  for (int degree = 0; degree <= cfg.degree; ++degree) {
    for (int order = 1; order <= cfg.order; ++order) {
      if (Clock::now() > deadline) {
        out.log.push_back("certificate: time budget exhausted");
        return out;
      }
      auto attempt = certificate_attempt(system, degree, order, cfg, deadline);
      out.log.insert(out.log.end(), attempt.log.begin(), attempt.log.end());
      if (attempt.certificate) {
        out.certificate = std::move(attempt.certificate);
        return out;
      }
    }
  }
  return out;
}

Clock::time_point deadline_after(double seconds) {
  return Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
}

}  // namespace

CertificateSearch find_certificate(const InequalitySystem& system, const SearchConfig& cfg) {
  return find_certificate_until(system, cfg, deadline_after(cfg.certificate_time));
}

CertificateSearch find_certificate_at(const InequalitySystem& system, int degree, int order, const SearchConfig& cfg) {
  if (auto trivial = trivial_certificate(system)) return {std::move(trivial), {"certificate: constant positive constraint"}};
  return certificate_attempt(system, degree, order, cfg, deadline_after(cfg.certificate_time));
}

// ---------------------------------------------------------------------------
// Interval branch-and-bound

namespace {

class BoxBounder {
 public:
  explicit BoxBounder(const InequalitySystem& system) : system_(system) {
    for (const auto& g : system.constraints) {
      std::vector<Polynomial> grad;
      for (std::size_t j = 0; j < system.nvars; ++j) grad.push_back(g.derivative(j));
      gradients_.push_back(std::move(grad));
    }
  }

  // Enclosure of g_i over the box: natural form intersected with the
  // mean-value form around the midpoint.
  [[nodiscard]] Interval enclose(std::size_t i, const Box& box) const {
    const auto& g = system_.constraints[i];
    Interval natural = g.evaluate(box.sides);
    std::vector<Interval> center(box.sides.size());
    for (std::size_t j = 0; j < box.sides.size(); ++j) center[j] = Interval(box.sides[j].mid());
    Interval mv = g.evaluate(center);
    for (std::size_t j = 0; j < box.sides.size(); ++j) {
      const Interval slope = gradients_[i][j].evaluate(box.sides);
      mv = mv + slope * (box.sides[j] - center[j]);
    }
    return {std::max(natural.lo, mv.lo), std::min(natural.hi, mv.hi)};
  }

 private:
  const InequalitySystem& system_;
  std::vector<std::vector<Polynomial>> gradients_;
};

void hash_bytes(std::uint64_t& h, const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

std::string hex(std::uint64_t v) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << v;
  return out.str();
}

bool inside(const std::vector<Rational>& point, const std::vector<std::pair<Rational, Rational>>& root) {
  for (std::size_t j = 0; j < point.size(); ++j)
    if (point[j] < root[j].first || point[j] > root[j].second) return false;
  return true;
}

BnbResult bnb_until(const InequalitySystem& system, const std::vector<std::pair<Rational, Rational>>& root,
                    const SearchConfig& cfg, Clock::time_point deadline) {
  const std::size_t n = system.nvars;
  if (root.size() != n) throw std::invalid_argument("box dimension does not match the system");
  for (const auto& [lo, hi] : root) {
    if (lo <= 0) throw std::invalid_argument("box must lie in the open positive orthant");
    if (lo > hi) throw std::invalid_argument("box side with lo > hi");
  }

  BnbResult result;
  BnBTrace& trace = result.trace;
  trace.root = root;
  trace.prunes_per_constraint.assign(system.constraints.size(), 0);
  std::uint64_t digest = 1469598103934665603ULL;

  Box start;
  for (const auto& [lo, hi] : root) start.sides.emplace_back(lower_bound(lo), upper_bound(hi));

  const BoxBounder bounder(system);
  std::vector<Box> stack{start};
  while (!stack.empty()) {
    if (trace.evaluations >= cfg.box_budget || ((trace.evaluations & 255U) == 0 && Clock::now() > deadline)) break;
    Box box = std::move(stack.back());
    stack.pop_back();
    ++trace.evaluations;

    bool pruned = false;
    bool all_satisfied = true;
    for (std::size_t i = 0; i < system.constraints.size(); ++i) {
      const Interval range = bounder.enclose(i, box);
      if (range.lo > 0.0) {
        trace.pruned.push_back({box, i});
        ++trace.pruned_count;
        ++trace.prunes_per_constraint[i];
        for (const auto& s : box.sides) {
          hash_bytes(digest, &s.lo, sizeof s.lo);
          hash_bytes(digest, &s.hi, sizeof s.hi);
        }
        hash_bytes(digest, &i, sizeof i);
        pruned = true;
        break;
      }
      if (range.hi > 0.0) all_satisfied = false;
    }
    if (pruned) continue;

    // Candidate points: the lower corner when the whole box is feasible,
    // otherwise the geometric center when it looks feasible in doubles.
    std::vector<double> center(n);
    for (std::size_t j = 0; j < n; ++j) center[j] = std::sqrt(box.sides[j].lo * box.sides[j].hi);
    std::optional<std::vector<Rational>> candidate;
    if (all_satisfied) {
      std::vector<Rational> corner;
      for (const auto& s : box.sides) corner.emplace_back(s.lo);
      if (verify_witness(system, corner)) candidate = std::move(corner);
    }
    if (!candidate) {
      bool looks_feasible = true;
      for (const auto& g : system.constraints)
        if (g.evaluate(std::span<const double>(center)) > 0.0) {
          looks_feasible = false;
          break;
        }
      if (looks_feasible) candidate = rationalize_and_verify(system, center, cfg.max_denominator);
      if (looks_feasible && !candidate) {
        std::vector<Rational> exact_center;
        for (double c : center) exact_center.emplace_back(c);
        if (verify_witness(system, exact_center)) candidate = std::move(exact_center);
      }
    }
    if (candidate && inside(*candidate, root)) {
      result.witness = std::move(candidate);
      trace.status = BnbStatus::FoundPoint;
      trace.digest = hex(digest);
      return result;
    }

    std::size_t split = n;
    double widest = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double ratio = std::log(box.sides[j].hi) - std::log(box.sides[j].lo);
      if (ratio > widest) {
        widest = ratio;
        split = j;
      }
    }
    const double cut = split < n ? center[split] : 0.0;
    if (split == n || !(cut > box.sides[split].lo && cut < box.sides[split].hi)) {
      trace.unresolved.push_back(std::move(box));
      continue;
    }
    Box lower = box;
    Box upper = std::move(box);
    lower.sides[split].hi = cut;
    upper.sides[split].lo = cut;
    stack.push_back(std::move(upper));
    stack.push_back(std::move(lower));
  }
  for (auto& b : stack) trace.unresolved.push_back(std::move(b));
  trace.status = trace.unresolved.empty() ? BnbStatus::ProvenEmpty : BnbStatus::Exhausted;
  trace.digest = hex(digest);
  return result;
}

}  // namespace

BnbResult bnb_region(const InequalitySystem& system, const std::vector<std::pair<Rational, Rational>>& box,
                     const SearchConfig& cfg) {
  return bnb_until(system, box, cfg, deadline_after(cfg.time_budget));
}

// ---------------------------------------------------------------------------
// Orchestration

namespace {

std::string describe_box(const std::vector<std::pair<Rational, Rational>>& box) {
  if (box.empty()) return "box []";
  bool cube = std::all_of(box.begin(), box.end(), [&](const auto& s) { return s == box.front(); });
  if (cube)
    return "box [" + to_string(box.front().first) + ", " + to_string(box.front().second) + "]^" +
           std::to_string(box.size());
  std::string s = "box ";
  for (std::size_t j = 0; j < box.size(); ++j) {
    if (j) s += " x ";
    s += "[" + to_string(box[j].first) + ", " + to_string(box[j].second) + "]";
  }
  return s;
}

Rational power_of_two(int m) {
  Rational r = 1;
  for (int i = 0; i < std::abs(m); ++i) r *= 2;
  return m >= 0 ? r : Rational(1 / r);
}

}  // namespace

Verdict decide(const InequalitySystem& system, Strategy strategy, const SearchConfig& cfg) {
  const auto started = Clock::now();
  const auto deadline = deadline_after(cfg.time_budget);
  Verdict v;
  v.config = cfg;
  v.method = "none";
  auto finish = [&]() -> Verdict {
    v.wall_seconds = std::chrono::duration<double>(Clock::now() - started).count();
    return std::move(v);
  };

  if (auto trivial = trivial_certificate(system); trivial && strategy != Strategy::Witness) {
    v.status = Status::Infeasible;
    v.method = "certificate";
    v.scope = "global";
    v.certificate = std::move(trivial);
    v.diagnostics.push_back("constant positive constraint");
    return finish();
  }

  if (strategy == Strategy::Auto || strategy == Strategy::Witness) {
    double best = std::numeric_limits<double>::quiet_NaN();
    if (auto w = search_witness_until(system, cfg, deadline, &best)) {
      v.status = Status::Feasible;
      v.method = "witness";
      v.scope = "global";
      v.witness = std::move(w);
      v.diagnostics.push_back("witness: exactly verified point found");
      return finish();
    }
    std::ostringstream note;
    note << "witness: none after " << cfg.multistart << " starts";
    if (!std::isnan(best)) note << " (best normalized max residual " << best << ")";
    v.diagnostics.push_back(note.str());
  }

  if (strategy == Strategy::Auto || strategy == Strategy::Certificate) {
    // Under auto, at most half of what is left, so the box ladder still runs.
    double cert_seconds = cfg.certificate_time;
    if (strategy == Strategy::Auto)
      cert_seconds = std::min(cert_seconds, 0.5 * std::chrono::duration<double>(deadline - Clock::now()).count());
    const auto cert_deadline = std::min(deadline, deadline_after(cert_seconds));
    auto search = find_certificate_until(system, cfg, cert_deadline);
    v.diagnostics.insert(v.diagnostics.end(), search.log.begin(), search.log.end());
    if (search.certificate) {
      v.status = Status::Infeasible;
      v.method = "certificate";
      v.scope = "global";
      v.certificate = std::move(search.certificate);
      return finish();
    }
  }

  if (strategy == Strategy::Auto || strategy == Strategy::BranchAndBound) {
    std::vector<std::vector<std::pair<Rational, Rational>>> boxes;
    if (cfg.box) {
      boxes.emplace_back(system.nvars, *cfg.box);
    } else {
      for (int m : cfg.ladder) boxes.emplace_back(system.nvars, std::make_pair(power_of_two(-m), power_of_two(m)));
    }
    std::optional<std::vector<std::pair<Rational, Rational>>> proven;
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      const auto& box = boxes[b];
      if (system.nvars == 0) break;
      const auto now = Clock::now();
      if (now > deadline) {
        v.diagnostics.push_back("bnb " + describe_box(box) + ": skipped, time budget exhausted");
        continue;
      }
      // Remaining time is shared evenly by the remaining rungs.
      const auto rung_deadline = now + (deadline - now) / static_cast<long>(boxes.size() - b);
      auto run = bnb_until(system, box, cfg, rung_deadline);
      std::ostringstream note;
      note << "bnb " << describe_box(box) << ": " << to_string(run.trace.status) << " after "
           << run.trace.evaluations << " boxes (" << run.trace.pruned_count << " pruned, "
           << run.trace.unresolved.size() << " unresolved)";
      v.diagnostics.push_back(note.str());
      v.boxlog.push_back(std::move(run.trace));
      if (run.witness) {
        v.status = Status::Feasible;
        v.method = "branch-and-bound";
        v.scope = "global";
        v.witness = std::move(run.witness);
        return finish();
      }
      if (v.boxlog.back().status == BnbStatus::ProvenEmpty) proven = box;
    }
    if (proven) {
      v.status = Status::Infeasible;
      v.method = "branch-and-bound";
      v.scope = describe_box(*proven);
      v.diagnostics.push_back("infeasibility holds on " + v.scope + " only");
      return finish();
    }
  }

  v.status = Status::Unknown;
  return finish();
}

}  // namespace kwfeas
