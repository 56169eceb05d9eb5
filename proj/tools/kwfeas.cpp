// kwfeas: enumerate, check, show and report orbit catalogs.

#include <CLI11.hpp>

#include <iostream>
#include <stdexcept>
#include <string>

#include "kwfeas/catalog.hpp"

namespace {

constexpr int kExitInvalid = 2;
constexpr int kExitUnknown = 3;

// "600", "600s", "10m", "1.5h"
double parse_duration(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty duration");
  double scale = 1.0;
  std::string number = text;
  switch (text.back()) {
    case 's': number.pop_back(); break;
    case 'm': number.pop_back(); scale = 60.0; break;
    case 'h': number.pop_back(); scale = 3600.0; break;
    default: break;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(number, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != number.size() || !(v > 0.0)) throw std::invalid_argument("bad duration '" + text + "'");
  return v * scale;
}

std::pair<kwfeas::Rational, kwfeas::Rational> parse_box(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("box must look like lo:hi, e.g. 1e-3:1e3");
  auto lo = kwfeas::parse_rational(text.substr(0, colon));
  auto hi = kwfeas::parse_rational(text.substr(colon + 1));
  if (lo <= 0 || hi < lo) throw std::invalid_argument("box needs 0 < lo <= hi");
  return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kiefer-Wolfowitz feasibility of saturated Rasch Poisson designs"};
  app.set_version_flag("--version", kwfeas::tool_version());
  app.require_subcommand(1);
  app.fallthrough();

  int k = 4;
  int d = 1;
  std::string catalog_path;
  app.add_option("--k", k, "number of rules")->check(CLI::Range(1, 20));
  app.add_option("--d", d, "interaction order")->check(CLI::Range(1, 20));
  app.add_option("--catalog", catalog_path, "catalog file (default $KWFEAS_CATALOG_DIR/catalog_k{K}_d{D}.json)");

  auto* enumerate = app.add_subcommand("enumerate", "build the orbit catalog");

  auto* check = app.add_subcommand("check", "decide feasibility of catalog systems");
  std::vector<int> orbits;
  std::string strategy = "auto";
  std::vector<std::string> restrictions;
  std::string box;
  std::uint64_t seed = 42;
  std::string budget = "600s";
  int jobs = 1;
  kwfeas::SearchConfig defaults;
  int degree = defaults.degree;
  int order = defaults.order;
  int starts = defaults.multistart;
  std::size_t box_budget = defaults.box_budget;
  check->add_option("--orbit", orbits, "orbit id (repeatable; default all)");
  check->add_option("--strategy", strategy, "auto|witness|certificate|bnb");
  check->add_option("--restrict", restrictions, "m3=m4 or m2=1/2 (repeatable)");
  check->add_option("--box", box, "search box lo:hi in every coordinate, replacing the ladder");
  check->add_option("--seed", seed, "seed for all stochastic components");
  check->add_option("--budget", budget, "time budget per system, e.g. 600s or 10m");
  check->add_option("--jobs", jobs, "parallel workers")->check(CLI::PositiveNumber);
  check->add_option("--degree", degree, "certificate multiplier degree bound")->check(CLI::NonNegativeNumber);
  check->add_option("--order", order, "certificate product order bound")->check(CLI::PositiveNumber);
  check->add_option("--starts", starts, "witness multistarts")->check(CLI::PositiveNumber);
  check->add_option("--boxes", box_budget, "boxes per branch-and-bound run")->check(CLI::PositiveNumber);

  auto* show = app.add_subcommand("show", "print an orbit's system");
  int show_orbit = 0;
  std::string format = "text";
  show->add_option("--orbit", show_orbit, "orbit id")->required();
  show->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

  auto* report = app.add_subcommand("report", "markdown table of all orbits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  const std::filesystem::path path = catalog_path.empty() ? kwfeas::default_catalog_path(k, d) : std::filesystem::path(catalog_path);
  try {
    if (*enumerate) {
      auto c = kwfeas::build_catalog(k, d);
      kwfeas::write_catalog(path, c);
      std::cout << "total supports: " << c.total_supports << "\n"
                << "nondegenerate: " << c.nondegenerate_supports << "\n"
                << "orbits: " << c.orbits.size() << "\n"
                << "catalog: " << path.string() << "\n";
      return 0;
    }

    auto c = kwfeas::read_catalog(path);
    if (*check) {
      kwfeas::CheckRequest req;
      req.orbit_ids = orbits;
      req.strategy = kwfeas::parse_strategy(strategy);
      req.jobs = jobs;
      for (const auto& r : restrictions) req.restrictions.push_back(kwfeas::Restriction::parse(r));
      req.config.seed = seed;
      req.config.time_budget = parse_duration(budget);
      req.config.certificate_time = std::min(req.config.certificate_time, req.config.time_budget);
      req.config.degree = degree;
      req.config.order = order;
      req.config.multistart = starts;
      req.config.box_budget = box_budget;
      if (!box.empty()) req.config.box = parse_box(box);

      const auto ids = kwfeas::check_catalog(c, req);
      kwfeas::write_catalog(path, c);
      bool unknown = false;
      for (int id : ids) {
        const auto* v = kwfeas::find_verdict(kwfeas::find_orbit(c, id), req.restrictions);
        unknown = unknown || v->status == kwfeas::Status::Unknown;
        std::cout << "orbit " << id << ": " << kwfeas::to_string(v->status);
        if (v->status != kwfeas::Status::Unknown) std::cout << " (" << v->method << ", " << v->scope << ")";
        std::cout << " in " << v->wall_seconds << "s\n";
        for (const auto& note : v->diagnostics) std::cout << "  " << note << "\n";
      }
      return unknown ? kExitUnknown : 0;
    }
    if (*show) {
      std::cout << kwfeas::show_orbit(c, show_orbit, format == "json" ? kwfeas::ShowFormat::Json : kwfeas::ShowFormat::Text);
      return 0;
    }
    if (*report) {
      std::cout << kwfeas::report_markdown(c);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "kwfeas: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::out_of_range& e) {
    std::cerr << "kwfeas: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "kwfeas: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
