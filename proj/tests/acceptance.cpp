// Acceptance run: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "kwfeas/catalog.hpp"
#include "kwfeas/feasibility.hpp"
#include "kwfeas/kw.hpp"
#include "kwfeas/symmetry.hpp"

using namespace kwfeas;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Reference benchmark system in m-notation.
const char* const kDisplayed[] = {
    "4*m1*m2*m3*m4 + m1*m3 + m1*m2 + 4*m2*m3 + m4 - 9*m2*m3*m4",
    "4*m1*m2*m3*m4 + m2*m3 + m1*m2 + 4*m1*m3 + m4 - 9*m1*m3*m4",
    "4*m1*m2*m3*m4 + m2*m3 + m1*m3 + 4*m1*m2 + m4 - 9*m1*m2*m4",
    "m1*m2*m3*m4 + m2*m3 + m1*m3 + m1*m2 + m4 - 9*m1*m2*m3",
    "m1*m2*m3*m4 + m1*m3 + m2*m3 + 4*m1*m2 + 4*m4 - 9*m3*m4",
    "m1*m2*m3*m4 + m1*m2 + 4*m1*m3 + m2*m3 + 4*m4 - 9*m2*m4",
    "m1*m2*m3*m4 + m1*m2 + 4*m2*m3 + m1*m3 + 4*m4 - 9*m1*m4",
    "m1*m2*m3*m4 + 4*m1*m3 + 4*m2*m3 + m1*m2 + m4 - 9*m3",
    "m1*m2*m3*m4 + 4*m1*m2 + m1*m3 + 4*m2*m3 + m4 - 9*m2",
    "m1*m2*m3*m4 + 4*m1*m2 + m2*m3 + 4*m1*m3 + m4 - 9*m1",
    "4*m1*m2*m3*m4 + m1*m2 + m1*m3 + m2*m3 + 4*m4 - 9",
};

Polynomial permute_variables(const Polynomial& p, const std::vector<int>& perm) {
  Polynomial out(p.nvars());
  for (const auto& [m, c] : p.terms()) {
    Monomial n(p.nvars());
    for (std::size_t i = 0; i < perm.size(); ++i) n.exponents[static_cast<std::size_t>(perm[i])] = m.exponents[i];
    out += Polynomial::term(n, c);
  }
  return out;
}

std::set<std::string> texts(const std::vector<Polynomial>& ps) {
  std::set<std::string> out;
  for (const auto& p : ps) out.insert(p.to_string());
  return out;
}

bool sound(const InequalitySystem& s, const Verdict& v, std::string* why) {
  switch (v.status) {
    case Status::Feasible:
      if (!v.witness || !verify_witness(s, *v.witness)) return *why = "witness fails exact check", false;
      return true;
    case Status::Infeasible:
      if (v.certificate) {
        if (v.scope != "global" || !verify_certificate(s, *v.certificate))
          return *why = "certificate fails exact check", false;
        return true;
      }
      if (!v.scope.starts_with("box")) return *why = "box proof without region scope", false;
      for (const auto& t : v.boxlog)
        if (t.status == BnbStatus::ProvenEmpty && t.unresolved.empty()) return true;
      return *why = "no complete box proof", false;
    case Status::Unknown:
      if (v.diagnostics.empty()) return *why = "unknown without diagnostics", false;
      return true;
  }
  return false;
}

std::string seconds(Clock::time_point since) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << std::chrono::duration<double>(Clock::now() - since).count() << "s";
  return o.str();
}

Outcome a1() {
  const auto p41 = dimension(RegressionSpec(4, 1));
  const auto p32 = dimension(RegressionSpec(3, 2));
  return {p41 == 5 && p32 == 7, "p(4,1)=" + std::to_string(p41) + " p(3,2)=" + std::to_string(p32)};
}

Catalog& catalog4() {
  static Catalog c = build_catalog(4, 1);
  return c;
}

Outcome a2() {
  const auto& c = catalog4();
  std::size_t sum = 0;
  for (const auto& o : c.orbits) sum += o.orbit_size;
  const bool ok = c.total_supports == 4368 && c.orbits.size() == 17 && sum == c.nondegenerate_supports;
  return {ok, "total=" + std::to_string(c.total_supports) + " nondegenerate=" +
                  std::to_string(c.nondegenerate_supports) + " orbits=" + std::to_string(c.orbits.size())};
}

int g_benchmark_id = 0;
std::vector<int> g_benchmark_perm{0, 1, 2, 3};  // reference variable i is catalog variable perm[i]

Outcome a3() {
  std::vector<Polynomial> displayed;
  for (const char* t : kDisplayed) displayed.push_back(Polynomial::parse(t, 4));
  std::vector<int> matches;
  for (const auto& o : catalog4().orbits) {
    const auto target = texts(o.system.constraints);
    std::vector<int> perm{0, 1, 2, 3};
    bool hit = false;
    do {
      std::vector<Polynomial> moved;
      for (const auto& p : displayed) moved.push_back(permute_variables(p, perm));
      hit = texts(moved) == target;
    } while (!hit && std::next_permutation(perm.begin(), perm.end()));
    if (hit) {
      matches.push_back(o.id);
      g_benchmark_perm = perm;
    }
  }
  if (matches.size() == 1) g_benchmark_id = matches[0];
  std::string detail = "matching orbits:";
  for (int id : matches) detail += " " + std::to_string(id);
  if (matches.size() == 1) detail += " (" + find_orbit(catalog4(), matches[0]).representative.to_string() + ")";
  return {matches.size() == 1, detail};
}

Outcome a4() {
  Outcome out;
  SearchConfig cfg;
  for (int k = 2; k <= 4; ++k) {
    const RegressionSpec spec(k, 1);
    const auto s = kw_system(corner_design(spec), spec);
    const auto t0 = Clock::now();
    const auto v = decide(s, Strategy::Auto, cfg);
    const double dt = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = v.status == Status::Feasible && v.witness && verify_witness(s, *v.witness) && dt < 10.0;
    out.pass = out.pass && ok;
    out.detail += "k=" + std::to_string(k) + ":" + to_string(v.status) + "/" + seconds(t0) + " ";
  }
  return out;
}

std::vector<std::pair<InequalitySystem, Verdict>> g_checked;

Outcome a5() {
  Outcome out;
  const RegressionSpec spec(3, 1);
  const auto G = hyperoctahedral_group(3);
  const auto corner = canonical_representative(corner_design(spec), G);
  const auto ff = canonical_representative(SupportSet::parse("000,110,101,011"), G);
  const auto t0 = Clock::now();
  SearchConfig cfg;
  cfg.time_budget = 120;
  for (const auto& o : orbit_decompose(enumerate_supports(spec, true))) {
    const auto s = kw_system(o.representative, spec);
    if (o.representative == corner) continue;
    if (o.representative == ff) {
      bool tight = true;
      for (const auto& g : s.constraints) tight = tight && g.evaluate(std::vector<Rational>(3, Rational(1))) == 0;
      const bool ok = tight && verify_witness(s, std::vector<Rational>(3, Rational(1)));
      out.pass = out.pass && ok;
      out.detail += "ff:" + std::string(ok ? "tight at (1,1,1)" : "NOT tight") + " ";
      continue;
    }
    const auto v = decide(s, Strategy::Auto, cfg);
    std::string why;
    const bool ok = v.status == Status::Infeasible && sound(s, v, &why);
    g_checked.emplace_back(s, v);
    out.pass = out.pass && ok;
    out.detail += o.representative.to_string() + ":" + to_string(v.status) + "/" + v.method + " ";
  }
  out.detail += "total " + seconds(t0);
  out.pass = out.pass && std::chrono::duration<double>(Clock::now() - t0).count() < 600;
  return out;
}

InequalitySystem benchmark_system() {
  const auto& o = g_benchmark_id ? find_orbit(catalog4(), g_benchmark_id) : catalog4().orbits.back();
  return o.system;
}

Outcome a6() {
  // m3=m4 in the reference labels.
  const auto s = restrict_system(benchmark_system(), Restriction::identify(static_cast<std::size_t>(g_benchmark_perm[2]),
                                                                           static_cast<std::size_t>(g_benchmark_perm[3])));
  SearchConfig cfg;
  cfg.time_budget = 900;
  const auto t0 = Clock::now();
  const auto v = decide(s, Strategy::Auto, cfg);
  std::string why;
  const bool ok = v.status == Status::Infeasible && sound(s, v, &why);
  g_checked.emplace_back(s, v);
  return {ok, std::string(to_string(v.status)) + " by " + v.method + " scope " + v.scope + " in " + seconds(t0) + " " + why};
}

Outcome a7() {
  const auto s = benchmark_system();
  SearchConfig cfg;
  cfg.time_budget = 150;
  cfg.certificate_time = 40;
  const auto t0 = Clock::now();
  const auto v = decide(s, Strategy::Auto, cfg);
  std::string why;
  bool ok = sound(s, v, &why);
  ok = ok && !v.diagnostics.empty();
  // Every rung of the ladder is accounted for, run or explicitly skipped.
  std::size_t rungs = 0;
  for (const auto& d : v.diagnostics)
    if (d.starts_with("bnb ")) ++rungs;
  ok = ok && (rungs == cfg.ladder.size() || v.status == Status::Feasible);
  ok = ok && v.wall_seconds <= cfg.time_budget + 5;
  // Never globally infeasible without a certificate, never feasible without a witness.
  ok = ok && !(v.status == Status::Infeasible && !v.certificate && v.scope == "global");
  g_checked.emplace_back(s, v);
  std::string detail = std::string(to_string(v.status)) + " by " + v.method + " scope " + v.scope + " in " +
                       seconds(t0) + ", " + std::to_string(rungs) + " ladder rungs";
  if (!why.empty()) detail += " (" + why + ")";
  return {ok, detail};
}

Outcome a8() {
  Outcome out;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const RegressionSpec spec(4, 1);
  const auto supports = enumerate_supports(spec, true);

  // Equivariance, 150 random group elements.
  std::uniform_int_distribution<std::size_t> pick(0, supports.size() - 1);
  int eq_fail = 0;
  for (int t = 0; t < 150; ++t) {
    const auto& X = supports[pick(rng)];
    const auto g = SignedPermutation::random(4, rng);
    if (transport_system(kw_system(X, spec), parameter_transport(g, spec)).constraints !=
        kw_system(act_support(g, X), spec).constraints)
      ++eq_fail;
  }

  // Interval soundness, 1000 random points.
  int iv_fail = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto& sys = catalog4().orbits.back().system;
  for (int t = 0; t < 1000; ++t) {
    const auto& g = sys.constraints[static_cast<std::size_t>(t) % sys.constraints.size()];
    std::vector<Interval> box;
    std::vector<Rational> x;
    for (int j = 0; j < 4; ++j) {
      const double lo = std::exp(-4.0 + 8.0 * unit(rng));
      const double hi = lo * (1.0 + 3.0 * unit(rng));
      box.emplace_back(lo, hi);
      x.emplace_back(std::clamp(lo + unit(rng) * (hi - lo), lo, hi));
    }
    const auto r = g.evaluate(box);
    const Rational v = g.evaluate(x);
    if (v < Rational(r.lo) || Rational(r.hi) < v) ++iv_fail;
  }

  // Verification chains over everything decided above.
  int chain_fail = 0;
  for (const auto& [s, v] : g_checked) {
    std::string why;
    if (!sound(s, v, &why)) ++chain_fail;
  }

  // Orbit partition laws.
  int part_fail = 0;
  const auto G = hyperoctahedral_group(4);
  std::set<SupportSet> covered;
  std::size_t total = 0;
  for (const auto& o : orbit_decompose(supports)) {
    std::set<SupportSet> members;
    for (const auto& g : G) members.insert(act_support(g, o.representative));
    if (members.size() != o.members || o.members * o.stabilizer_order != G.size()) ++part_fail;
    for (const auto& m : members)
      if (!covered.insert(m).second) ++part_fail;
    total += o.members;
  }
  if (total != supports.size() || covered.size() != supports.size()) ++part_fail;

  out.pass = eq_fail == 0 && iv_fail == 0 && chain_fail == 0 && part_fail == 0 &&
             std::chrono::duration<double>(Clock::now() - t0).count() < 300;
  out.detail = "equivariance fails " + std::to_string(eq_fail) + "/150, interval fails " + std::to_string(iv_fail) +
               "/1000, chain fails " + std::to_string(chain_fail) + "/" + std::to_string(g_checked.size()) +
               ", partition fails " + std::to_string(part_fail) + ", " + seconds(t0);
  return out;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"A1 dimension table", a1},      {"A2 orbit counts", a2},         {"A3 benchmark regeneration", a3},
      {"A4 corner feasibility", a4},   {"A5 k=3 reproduction", a5},     {"A6 restricted benchmark", a6},
      {"A7 unrestricted benchmark", a7}, {"A8 property suites", a8},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/8 criteria passed\n", 8 - failed);
  return failed == 0 ? 0 : 1;
}
