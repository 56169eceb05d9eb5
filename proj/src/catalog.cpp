#include "kwfeas/catalog.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "kwfeas/symmetry.hpp"

namespace kwfeas {

namespace {

constexpr std::uint64_t kMaxEnumeration = 2'000'000;

Json orbit_verdict_json(const Verdict& v, const std::string& checked_at) {
  Json j = verdict_to_json(v);
  j["checked_at"] = checked_at;
  return j;
}

std::string restriction_key(const std::vector<Restriction>& rs) {
  std::string key;
  for (const auto& r : rs) {
    if (!key.empty()) key += ",";
    key += r.to_string();
  }
  return key;
}

}  // namespace

std::string tool_version() { return KWFEAS_VERSION; }

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

Catalog build_catalog(int k, int d) {
  if (k < 1 || k > kMaxRules) throw std::invalid_argument("k must lie in 1..20");
  const RegressionSpec spec(k, d);
  std::uint64_t total = 0;
  try {
    total = binomial(std::uint64_t{1} << k, spec.dimension());
  } catch (const std::overflow_error&) {
    total = std::numeric_limits<std::uint64_t>::max();
  }
  if (k > 8 || total > kMaxEnumeration)
    throw std::invalid_argument("k=" + std::to_string(k) + ", d=" + std::to_string(d) +
                                " is out of scale for exhaustive enumeration");

  Catalog c;
  c.k = k;
  c.d = d;
  c.tool_version = tool_version();
  c.created = c.updated = utc_timestamp();
  c.total_supports = total;
  const auto supports = enumerate_supports(spec, true);
  c.nondegenerate_supports = supports.size();
  int id = 0;
  for (const auto& o : orbit_decompose(supports)) {
    CatalogOrbit entry;
    entry.id = ++id;
    entry.representative = o.representative;
    entry.orbit_size = o.members;
    entry.stabilizer_order = o.stabilizer_order;
    entry.system = kw_system(o.representative, spec);
    c.orbits.push_back(std::move(entry));
  }
  return c;
}

Json catalog_to_json(const Catalog& c) {
  Json j;
  j["tool_version"] = c.tool_version;
  j["k"] = c.k;
  j["d"] = c.d;
  j["created"] = c.created;
  j["updated"] = c.updated;
  j["total_supports"] = c.total_supports;
  j["nondegenerate_supports"] = c.nondegenerate_supports;
  Json orbits = Json::array();
  for (const auto& o : c.orbits) {
    Json oj;
    oj["id"] = o.id;
    oj["representative"] = o.representative.to_string();
    oj["orbit_size"] = o.orbit_size;
    oj["stabilizer_order"] = o.stabilizer_order;
    oj["nondegenerate"] = o.nondegenerate;
    oj["system"] = system_to_json(o.system);
    oj["verdict"] = orbit_verdict_json(o.verdict, o.checked_at);
    Json restricted = Json::array();
    for (const auto& r : o.restricted) {
      Json rj;
      rj["restrictions"] = restriction_key(r.restrictions);
      rj["system"] = system_to_json(r.system);
      rj["verdict"] = orbit_verdict_json(r.verdict, r.checked_at);
      restricted.push_back(rj);
    }
    oj["restricted"] = restricted;
    orbits.push_back(oj);
  }
  j["orbits"] = orbits;
  return j;
}

Catalog catalog_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("catalog must be a JSON object");
  Catalog c;
  c.tool_version = j.at("tool_version").get<std::string>();
  c.k = j.at("k").get<int>();
  c.d = j.at("d").get<int>();
  c.created = j.at("created").get<std::string>();
  c.updated = j.at("updated").get<std::string>();
  c.total_supports = j.at("total_supports").get<std::uint64_t>();
  c.nondegenerate_supports = j.at("nondegenerate_supports").get<std::uint64_t>();
  for (const auto& oj : j.at("orbits")) {
    CatalogOrbit o;
    o.id = oj.at("id").get<int>();
    o.representative = SupportSet::parse(oj.at("representative").get<std::string>());
    o.orbit_size = oj.at("orbit_size").get<std::size_t>();
    o.stabilizer_order = oj.at("stabilizer_order").get<std::size_t>();
    o.nondegenerate = oj.at("nondegenerate").get<bool>();
    o.system = system_from_json(oj.at("system"));
    o.verdict = verdict_from_json(oj.at("verdict"), o.system.nvars);
    o.checked_at = oj.at("verdict").at("checked_at").get<std::string>();
    for (const auto& rj : oj.at("restricted")) {
      RestrictedCheck r;
      std::string key = rj.at("restrictions").get<std::string>();
      std::stringstream parts(key);
      for (std::string item; std::getline(parts, item, ',');) r.restrictions.push_back(Restriction::parse(item));
      r.system = system_from_json(rj.at("system"));
      r.verdict = verdict_from_json(rj.at("verdict"), r.system.nvars);
      r.checked_at = rj.at("verdict").at("checked_at").get<std::string>();
      o.restricted.push_back(std::move(r));
    }
    c.orbits.push_back(std::move(o));
  }
  return c;
}

void write_catalog(const std::filesystem::path& path, const Catalog& c) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << catalog_to_json(c).dump(2) << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

Catalog read_catalog(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open catalog " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("catalog " + path.string() + " is not valid JSON: " + e.what());
  }
  try {
    return catalog_from_json(j);
  } catch (const Json::exception& e) {
    throw std::invalid_argument("catalog " + path.string() + " is malformed: " + e.what());
  }
}

std::filesystem::path default_catalog_path(int k, int d) {
  std::filesystem::path dir = ".";
  if (const char* env = std::getenv("KWFEAS_CATALOG_DIR"); env && *env) dir = env;
  return dir / ("catalog_k" + std::to_string(k) + "_d" + std::to_string(d) + ".json");
}

const CatalogOrbit& find_orbit(const Catalog& c, int id) {
  for (const auto& o : c.orbits)
    if (o.id == id) return o;
  throw std::out_of_range("unknown orbit id " + std::to_string(id));
}

const Verdict* find_verdict(const CatalogOrbit& o, const std::vector<Restriction>& restrictions) {
  if (restrictions.empty()) return o.checked_at.empty() ? nullptr : &o.verdict;
  for (const auto& r : o.restricted)
    if (r.restrictions == restrictions) return &r.verdict;
  return nullptr;
}

std::vector<int> check_catalog(Catalog& c, const CheckRequest& request) {
  std::vector<std::size_t> selected;
  if (request.orbit_ids.empty()) {
    for (std::size_t i = 0; i < c.orbits.size(); ++i) selected.push_back(i);
  } else {
    for (int id : request.orbit_ids) {
      std::size_t i = 0;
      while (i < c.orbits.size() && c.orbits[i].id != id) ++i;
      if (i == c.orbits.size()) throw std::out_of_range("unknown orbit id " + std::to_string(id));
      selected.push_back(i);
    }
  }

  std::vector<InequalitySystem> systems;
  for (auto i : selected) {
    InequalitySystem s = c.orbits[i].system;
    for (const auto& r : request.restrictions) s = restrict_system(s, r);
    systems.push_back(std::move(s));
  }

  std::vector<Verdict> verdicts(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < selected.size(); t = next++)
      verdicts[t] = decide(systems[t], request.strategy, request.config);
  };
  const int jobs = std::max(1, std::min<int>(request.jobs, static_cast<int>(selected.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
  }

  const std::string now = utc_timestamp();
  std::vector<int> ids;
  for (std::size_t t = 0; t < selected.size(); ++t) {
    auto& o = c.orbits[selected[t]];
    ids.push_back(o.id);
    if (request.restrictions.empty()) {
      o.verdict = std::move(verdicts[t]);
      o.checked_at = now;
      continue;
    }
    RestrictedCheck rc{request.restrictions, std::move(systems[t]), std::move(verdicts[t]), now};
    auto it = std::find_if(o.restricted.begin(), o.restricted.end(),
                           [&](const RestrictedCheck& r) { return r.restrictions == request.restrictions; });
    if (it != o.restricted.end()) {
      *it = std::move(rc);
    } else {
      o.restricted.push_back(std::move(rc));
    }
  }
  c.updated = now;
  return ids;
}

namespace {

std::string verdict_cells(const Verdict* v) {
  if (!v) return "unchecked | - | - | -";
  std::ostringstream out;
  out << to_string(v->status) << " | " << v->method << " | " << (v->scope.empty() ? "-" : v->scope) << " | "
      << std::fixed << std::setprecision(2) << v->wall_seconds << "s";
  return out.str();
}

}  // namespace

std::string report_markdown(const Catalog& c) {
  std::ostringstream out;
  out << "| orbit | representative | orbit size | constraints | verdict | method | scope | time |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& o : c.orbits)
    out << "| " << o.id << " | " << o.representative.to_string() << " | " << o.orbit_size << " | "
        << o.system.constraints.size() << " | " << verdict_cells(find_verdict(o, {})) << " |\n";
  bool any = false;
  for (const auto& o : c.orbits)
    for (const auto& r : o.restricted) {
      if (!any) {
        out << "\n| orbit | restrictions | constraints | verdict | method | scope | time |\n";
        out << "|---|---|---|---|---|---|---|\n";
        any = true;
      }
      out << "| " << o.id << " | " << restriction_key(r.restrictions) << " | " << r.system.constraints.size()
          << " | " << verdict_cells(&r.verdict) << " |\n";
    }
  return out.str();
}

std::string show_orbit(const Catalog& c, int id, ShowFormat format) {
  const auto& o = find_orbit(c, id);
  if (format == ShowFormat::Json) return system_to_json(o.system).dump(2) + "\n";
  return o.system.to_text();
}

}  // namespace kwfeas
