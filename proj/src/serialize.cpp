#include "kwfeas/serialize.hpp"

#include <limits>
#include <stdexcept>

namespace kwfeas {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("malformed JSON: " + what);
}

std::string fraction(const Rational& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

Json pair_to_json(const std::pair<Rational, Rational>& p) { return Json::array({to_string(p.first), to_string(p.second)}); }

std::pair<Rational, Rational> pair_from_json(const Json& j) {
  require(j.is_array() && j.size() == 2, "interval must be [lo, hi]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

}  // namespace

Json rational_to_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return static_cast<std::int64_t>(q.get_num().get_si());
  return to_string(q);
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  require(j.is_string(), "rational must be an integer or a string");
  return parse_rational(j.get<std::string>());
}

Json polynomial_to_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back(Json::array({rational_to_json(c), m.exponents}));
  return out;
}

Polynomial polynomial_from_json(const Json& j, std::size_t nvars) {
  require(j.is_array(), "polynomial must be a term list");
  Polynomial p(nvars);
  for (const auto& t : j) {
    require(t.is_array() && t.size() == 2 && t[1].is_array(), "term must be [coeff, exponents]");
    auto e = t[1].get<std::vector<int>>();
    require(e.size() == nvars, "exponent vector length");
    const Rational c = rational_from_json(t[0]);
    require(c != 0, "zero coefficient");
    Monomial m(std::move(e));
    require(p.terms().find(m) == p.terms().end(), "duplicate monomial");
    p.add_term(m, c);
  }
  return p;
}

Json system_to_json(const InequalitySystem& system) {
  Json j;
  j["k"] = system.k;
  j["d"] = system.d;
  Json support = Json::array();
  for (const auto& x : system.support.points()) support.push_back(x.to_string());
  j["support"] = support;
  Json restrictions = Json::array();
  for (const auto& r : system.restrictions) restrictions.push_back(r.to_string());
  j["restrictions"] = restrictions;
  j["nvars"] = system.nvars;
  Json constraints = Json::array();
  for (const auto& g : system.constraints) constraints.push_back(polynomial_to_json(g));
  j["constraints"] = constraints;
  Json map = Json::array();
  for (const auto& img : system.variable_map) {
    if (const auto* i = std::get_if<std::size_t>(&img)) {
      map.push_back(*i);
    } else {
      map.push_back(to_string(std::get<Rational>(img)));
    }
  }
  j["variable_map"] = map;
  j["notes"] = system.notes;
  return j;
}

InequalitySystem system_from_json(const Json& j) {
  require(j.is_object(), "system must be an object");
  InequalitySystem s;
  s.k = j.at("k").get<int>();
  s.d = j.at("d").get<int>();
  std::vector<RuleSetting> points;
  for (const auto& x : j.at("support")) points.push_back(RuleSetting::parse(x.get<std::string>()));
  s.support = SupportSet::from_points(points);
  require(s.support.k() == s.k, "support dimension differs from k");
  for (const auto& r : j.at("restrictions")) s.restrictions.push_back(Restriction::parse(r.get<std::string>()));
  s.nvars = j.at("nvars").get<std::size_t>();
  for (const auto& g : j.at("constraints")) s.constraints.push_back(polynomial_from_json(g, s.nvars));
  for (const auto& img : j.at("variable_map")) {
    if (img.is_number_integer()) {
      const auto i = img.get<std::size_t>();
      require(i < s.nvars, "variable_map index out of range");
      s.variable_map.emplace_back(i);
    } else {
      s.variable_map.emplace_back(rational_from_json(img));
    }
  }
  if (j.contains("notes")) s.notes = j.at("notes").get<std::vector<std::string>>();
  return s;
}

Json certificate_to_json(const OrthantCertificate& cert) {
  Json j;
  j["degree"] = cert.degree;
  j["order"] = cert.order;
  Json entries = Json::array();
  for (const auto& e : cert.entries) {
    Json ej;
    ej["multiset"] = e.multiset;
    ej["multiplier"] = polynomial_to_json(e.multiplier);
    entries.push_back(ej);
  }
  j["entries"] = entries;
  j["target"] = polynomial_to_json(cert.target);
  return j;
}

OrthantCertificate certificate_from_json(const Json& j, std::size_t nvars) {
  OrthantCertificate c;
  c.degree = j.at("degree").get<int>();
  c.order = j.at("order").get<int>();
  for (const auto& ej : j.at("entries"))
    c.entries.push_back({ej.at("multiset").get<std::vector<std::size_t>>(), polynomial_from_json(ej.at("multiplier"), nvars)});
  c.target = polynomial_from_json(j.at("target"), nvars);
  return c;
}

Json config_to_json(const SearchConfig& cfg) {
  Json j;
  j["seed"] = cfg.seed;
  j["multistart"] = cfg.multistart;
  j["iterations"] = cfg.iterations;
  j["max_denominator"] = cfg.max_denominator;
  j["degree"] = cfg.degree;
  j["order"] = cfg.order;
  j["lp_max_cells"] = cfg.lp_max_cells;
  j["box_budget"] = cfg.box_budget;
  j["time_budget"] = cfg.time_budget;
  j["certificate_time"] = cfg.certificate_time;
  j["ladder"] = cfg.ladder;
  j["box"] = cfg.box ? pair_to_json(*cfg.box) : Json(nullptr);
  return j;
}

SearchConfig config_from_json(const Json& j) {
  SearchConfig c;
  c.seed = j.at("seed").get<std::uint64_t>();
  c.multistart = j.at("multistart").get<int>();
  c.iterations = j.at("iterations").get<int>();
  c.max_denominator = j.at("max_denominator").get<long>();
  c.degree = j.at("degree").get<int>();
  c.order = j.at("order").get<int>();
  c.lp_max_cells = j.at("lp_max_cells").get<std::size_t>();
  c.box_budget = j.at("box_budget").get<std::size_t>();
  c.time_budget = j.at("time_budget").get<double>();
  c.certificate_time = j.at("certificate_time").get<double>();
  c.ladder = j.at("ladder").get<std::vector<int>>();
  if (!j.at("box").is_null()) c.box = pair_from_json(j.at("box"));
  return c;
}

Json trace_to_json(const BnBTrace& trace) {
  Json j;
  Json root = Json::array();
  for (const auto& side : trace.root) root.push_back(pair_to_json(side));
  j["root"] = root;
  j["status"] = to_string(trace.status);
  j["evaluations"] = trace.evaluations;
  j["pruned"] = trace.pruned_count;
  j["prunes_per_constraint"] = trace.prunes_per_constraint;
  j["unresolved"] = trace.unresolved.size();
  j["digest"] = trace.digest;
  return j;
}

BnBTrace trace_from_json(const Json& j) {
  BnBTrace t;
  for (const auto& side : j.at("root")) t.root.push_back(pair_from_json(side));
  t.status = parse_bnb_status(j.at("status").get<std::string>());
  t.evaluations = j.at("evaluations").get<std::size_t>();
  t.pruned_count = j.at("pruned").get<std::size_t>();
  t.prunes_per_constraint = j.at("prunes_per_constraint").get<std::vector<std::size_t>>();
  t.unresolved.resize(j.at("unresolved").get<std::size_t>());
  t.digest = j.at("digest").get<std::string>();
  return t;
}

Json verdict_to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  j["method"] = v.method;
  j["scope"] = v.scope;
  if (v.witness) {
    Json w = Json::array();
    for (const auto& q : *v.witness) w.push_back(fraction(q));
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  j["certificate"] = v.certificate ? certificate_to_json(*v.certificate) : Json(nullptr);
  Json boxlog = Json::array();
  for (const auto& t : v.boxlog) boxlog.push_back(trace_to_json(t));
  j["boxlog"] = boxlog;
  j["diagnostics"] = v.diagnostics;
  j["config"] = config_to_json(v.config);
  j["wall_seconds"] = v.wall_seconds;
  return j;
}

Verdict verdict_from_json(const Json& j, std::size_t nvars) {
  Verdict v;
  v.status = parse_status(j.at("status").get<std::string>());
  v.method = j.at("method").get<std::string>();
  v.scope = j.at("scope").get<std::string>();
  if (!j.at("witness").is_null()) {
    std::vector<Rational> w;
    for (const auto& q : j.at("witness")) w.push_back(rational_from_json(q));
    require(w.size() == nvars, "witness length");
    v.witness = std::move(w);
  }
  if (!j.at("certificate").is_null()) v.certificate = certificate_from_json(j.at("certificate"), nvars);
  for (const auto& t : j.at("boxlog")) v.boxlog.push_back(trace_from_json(t));
  v.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
  v.config = config_from_json(j.at("config"));
  v.wall_seconds = j.at("wall_seconds").get<double>();
  return v;
}

}  // namespace kwfeas
