#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kwfeas/catalog.hpp"
#include "support.hpp"

using namespace testing;
namespace fs = std::filesystem;

namespace {

const char* const kBenchmarkSupport = "0000,0011,0101,1001,1110";

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("kwfeas_test_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s, std::string_view prefix = "") {
  std::size_t n = 0;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (line.starts_with(prefix)) ++n;
  return n;
}

Json without_timestamps(Json j) {
  j.erase("created");
  j.erase("updated");
  return j;
}

int benchmark_id(const Catalog& c) {
  for (const auto& o : c.orbits)
    if (o.representative == SupportSet::parse(kBenchmarkSupport)) return o.id;
  return -1;
}

SearchConfig quick_config() {
  SearchConfig cfg;
  cfg.time_budget = 30;
  cfg.certificate_time = 10;
  cfg.box_budget = 5000;
  cfg.ladder = {4};
  return cfg;
}

}  // namespace

TEST_CASE("enumerate counts") {
  const auto c4 = build_catalog(4, 1);
  CHECK(c4.total_supports == 4368);
  CHECK(c4.orbits.size() == 17);
  std::size_t sum = 0;
  for (const auto& o : c4.orbits) {
    sum += o.orbit_size;
    CHECK(o.verdict.status == Status::Unknown);
    CHECK(o.checked_at.empty());
    CHECK(o.system.constraints.size() == 11);
  }
  CHECK(sum == c4.nondegenerate_supports);

  const auto c2 = build_catalog(2, 1);
  CHECK(c2.total_supports == 4);
  CHECK(c2.nondegenerate_supports == 4);
  CHECK(c2.orbits.size() == 1);

  const auto c3 = build_catalog(3, 1);
  CHECK(c3.nondegenerate_supports == 58);
  CHECK(c3.orbits.size() == 4);

  CHECK_THROWS_AS(build_catalog(9, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_catalog(21, 1), std::invalid_argument);
}

TEST_CASE("enumerate is deterministic modulo timestamps") {
  const auto a = catalog_to_json(build_catalog(4, 1));
  const auto b = catalog_to_json(build_catalog(4, 1));
  CHECK(without_timestamps(a).dump() == without_timestamps(b).dump());
}

TEST_CASE("catalog round-trip is byte-stable") {
  const auto dir = scratch_dir("roundtrip");
  auto c = build_catalog(3, 1);
  CheckRequest req;
  req.config = quick_config();
  req.jobs = 2;
  check_catalog(c, req);
  req.orbit_ids = {1};
  req.restrictions = {Restriction::parse("m1=m2")};
  check_catalog(c, req);

  const auto first = dir / "a.json";
  const auto second = dir / "b.json";
  write_catalog(first, c);
  write_catalog(second, read_catalog(first));
  CHECK(slurp(first) == slurp(second));
  CHECK_FALSE(fs::exists(dir / "a.json.tmp"));

  const auto back = read_catalog(first);
  REQUIRE(back.orbits.size() == c.orbits.size());
  for (std::size_t i = 0; i < c.orbits.size(); ++i) {
    CHECK(back.orbits[i].system == c.orbits[i].system);
    CHECK(back.orbits[i].verdict.status == c.orbits[i].verdict.status);
    CHECK(back.orbits[i].verdict.witness == c.orbits[i].verdict.witness);
    CHECK(back.orbits[i].verdict.certificate == c.orbits[i].verdict.certificate);
  }
  CHECK(back.orbits[0].restricted.size() == 1);
  fs::remove_all(dir);
}

TEST_CASE("malformed catalogs are rejected") {
  const auto dir = scratch_dir("bad");
  std::ofstream(dir / "bad.json") << "{\"k\": 4";
  CHECK_THROWS_AS(read_catalog(dir / "bad.json"), std::invalid_argument);
  CHECK_THROWS(read_catalog(dir / "missing.json"));
  fs::remove_all(dir);
}

TEST_CASE("check stores verdicts and rejects unknown ids") {
  auto c = build_catalog(4, 1);
  const int bench = benchmark_id(c);
  REQUIRE(bench > 0);
  CheckRequest req;
  req.config = quick_config();
  req.orbit_ids = {1, bench};
  req.restrictions = {Restriction::parse("m3=m4")};
  check_catalog(c, req);
  CHECK(find_orbit(c, 1).verdict.status == Status::Unknown);  // only the restricted slot was written
  const auto* v = find_verdict(find_orbit(c, bench), req.restrictions);
  REQUIRE(v);
  CHECK(v->status == Status::Infeasible);
  CHECK(verify_certificate(find_orbit(c, bench).restricted[0].system, *v->certificate));

  req.restrictions.clear();
  req.orbit_ids = {1};
  check_catalog(c, req);
  CHECK(find_orbit(c, 1).verdict.status == Status::Feasible);
  const auto stamp = find_orbit(c, 1).checked_at;
  CHECK_FALSE(stamp.empty());
  check_catalog(c, req);
  CHECK(find_orbit(c, 1).checked_at >= stamp);
  CHECK(find_orbit(c, 1).restricted.size() == 1);

  req.orbit_ids = {99};
  CHECK_THROWS_AS(check_catalog(c, req), std::out_of_range);
  CHECK_THROWS_AS(find_orbit(c, 0), std::out_of_range);
}

TEST_CASE("check with a fixed seed is reproducible") {
  auto a = build_catalog(3, 1);
  auto b = build_catalog(3, 1);
  CheckRequest req;
  req.config = quick_config();
  req.jobs = 3;
  check_catalog(a, req);
  req.jobs = 1;
  check_catalog(b, req);
  for (std::size_t i = 0; i < a.orbits.size(); ++i) {
    const auto& va = a.orbits[i].verdict;
    const auto& vb = b.orbits[i].verdict;
    CHECK(va.status == vb.status);
    CHECK(va.method == vb.method);
    CHECK(va.witness == vb.witness);
    CHECK(va.certificate == vb.certificate);
    CHECK(va.boxlog.size() == vb.boxlog.size());
  }
}

TEST_CASE("report") {
  const auto c4 = build_catalog(4, 1);
  const auto r4 = report_markdown(c4);
  CHECK(count_lines(r4, "| ") == 17 + 1);
  CHECK(r4.find("unchecked") != std::string::npos);

  Catalog empty;
  empty.k = 4;
  empty.d = 1;
  const auto r0 = report_markdown(empty);
  CHECK(count_lines(r0, "| ") == 1);
  CHECK(count_lines(r0, "|-") + count_lines(r0, "| -") == 1);

  auto c2 = build_catalog(2, 1);
  CheckRequest req;
  req.config = quick_config();
  check_catalog(c2, req);
  const auto r2 = report_markdown(c2);
  CHECK(count_lines(r2, "| ") == 2);
  CHECK(r2.find("Feasible") != std::string::npos);
  CHECK(r2.find("witness") != std::string::npos);
}

TEST_CASE("show") {
  const auto c4 = build_catalog(4, 1);
  const int bench = benchmark_id(c4);
  const auto text = show_orbit(c4, bench, ShowFormat::Text);
  CHECK(count_lines(text) == 15);
  for (const char* positivity : {"m1 > 0", "m2 > 0", "m3 > 0", "m4 > 0"}) CHECK(count_lines(text, positivity) == 1);
  std::size_t le = 0;
  for (std::size_t pos = 0; (pos = text.find("<= 0", pos)) != std::string::npos; ++pos) ++le;
  CHECK(le == 11);

  const auto c2 = build_catalog(2, 1);
  CHECK(show_orbit(c2, 1, ShowFormat::Text).starts_with("m1*m2 + m1 + m2 - 1 <= 0\n"));

  const auto json = show_orbit(c4, bench, ShowFormat::Json);
  const auto parsed = system_from_json(Json::parse(json));
  CHECK(parsed == find_orbit(c4, bench).system);
  CHECK(system_to_json(parsed).dump(2) + "\n" == json);

  CHECK_THROWS_AS(show_orbit(c4, 18, ShowFormat::Text), std::out_of_range);
}

TEST_CASE("system json shape") {
  const RegressionSpec spec(2, 1);
  const auto s = kw_system(corner_design(spec), spec);
  const auto j = system_to_json(s);
  CHECK(j.at("k") == 2);
  CHECK(j.at("d") == 1);
  CHECK(j.at("support") == Json::array({"00", "01", "10"}));
  CHECK(j.at("constraints").dump() == "[[[1,[1,1]],[1,[1,0]],[1,[0,1]],[-1,[0,0]]]]");
  CHECK(rational_to_json(Q("-7/16")) == "-7/16");
  CHECK(rational_from_json(Json("-7/16")) == Q("-7/16"));
  CHECK(rational_from_json(Json(3)) == 3);
}

TEST_CASE("default catalog path") {
  const auto dir = scratch_dir("env");
  ::setenv("KWFEAS_CATALOG_DIR", dir.c_str(), 1);
  CHECK(default_catalog_path(4, 1) == dir / "catalog_k4_d1.json");
  ::unsetenv("KWFEAS_CATALOG_DIR");
  CHECK(default_catalog_path(3, 2).filename() == "catalog_k3_d2.json");
  fs::remove_all(dir);
}
