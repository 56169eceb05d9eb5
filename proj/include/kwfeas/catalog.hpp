#pragma once

// Orbit catalogs: one canonical system per orbit of nondegenerate saturated
// supports, with the verdicts of later checks. Stored as one JSON file per
// (k, d).

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "kwfeas/feasibility.hpp"
#include "kwfeas/kw.hpp"
#include "kwfeas/serialize.hpp"

namespace kwfeas {

struct RestrictedCheck {
  std::vector<Restriction> restrictions;
  InequalitySystem system;
  Verdict verdict;
  std::string checked_at;
};

struct CatalogOrbit {
  int id = 0;  // 1-based, in order of canonical representative
  SupportSet representative;
  std::size_t orbit_size = 0;
  std::size_t stabilizer_order = 0;
  bool nondegenerate = true;
  InequalitySystem system;
  Verdict verdict;
  std::string checked_at;  // empty until checked
  std::vector<RestrictedCheck> restricted;
};

struct Catalog {
  int k = 0;
  int d = 0;
  std::string tool_version;
  std::string created;
  std::string updated;
  std::uint64_t total_supports = 0;
  std::uint64_t nondegenerate_supports = 0;
  std::vector<CatalogOrbit> orbits;
};

std::string tool_version();
std::string utc_timestamp();

// Throws std::invalid_argument when k is out of scale for exhaustive
// enumeration.
Catalog build_catalog(int k, int d);

Json catalog_to_json(const Catalog& c);
Catalog catalog_from_json(const Json& j);

// Writes to a sibling temporary file, then renames over the target.
void write_catalog(const std::filesystem::path& path, const Catalog& c);
Catalog read_catalog(const std::filesystem::path& path);

// $KWFEAS_CATALOG_DIR/catalog_k{k}_d{d}.json, or the current directory.
std::filesystem::path default_catalog_path(int k, int d);

struct CheckRequest {
  std::vector<int> orbit_ids;  // empty selects every orbit
  Strategy strategy = Strategy::Auto;
  SearchConfig config;
  std::vector<Restriction> restrictions;
  int jobs = 1;
};

// Runs decide on each selected orbit and stores the verdicts. Throws
// std::out_of_range for an unknown orbit id. Returns the selected ids.
std::vector<int> check_catalog(Catalog& c, const CheckRequest& request);

const CatalogOrbit& find_orbit(const Catalog& c, int id);
// Verdict for the orbit under the given restrictions, if it was checked.
const Verdict* find_verdict(const CatalogOrbit& o, const std::vector<Restriction>& restrictions);

std::string report_markdown(const Catalog& c);

enum class ShowFormat { Text, Json };
std::string show_orbit(const Catalog& c, int id, ShowFormat format);

}  // namespace kwfeas
