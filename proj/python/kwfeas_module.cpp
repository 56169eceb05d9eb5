#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kwfeas/catalog.hpp"

namespace py = pybind11;
using namespace kwfeas;

namespace {

InequalitySystem load_system(const std::string& text) { return system_from_json(Json::parse(text)); }

SearchConfig make_config(std::uint64_t seed, double time_budget, int degree, int order, int multistart,
                         std::size_t box_budget, std::optional<std::pair<std::string, std::string>> box) {
  SearchConfig cfg;
  cfg.seed = seed;
  cfg.time_budget = time_budget;
  cfg.certificate_time = std::min(cfg.certificate_time, time_budget);
  cfg.degree = degree;
  cfg.order = order;
  cfg.multistart = multistart;
  cfg.box_budget = box_budget;
  if (box) cfg.box = std::make_pair(parse_rational(box->first), parse_rational(box->second));
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_kwfeas, m) {
  m.doc() = "exact KW feasibility core (JSON in, JSON out)";
  m.attr("__version__") = tool_version();

  py::register_exception<std::domain_error>(m, "DomainError", PyExc_ValueError);

  m.def("dimension", [](int k, int d) { return RegressionSpec(k, d).dimension(); }, py::arg("k"), py::arg("d"));

  m.def(
      "kw_system",
      [](const std::string& support, int k, int d) {
        const RegressionSpec spec(k, d);
        return system_to_json(kw_system(SupportSet::parse(support), spec)).dump();
      },
      py::arg("support"), py::arg("k"), py::arg("d"));

  m.def("system_text", [](const std::string& system) { return load_system(system).to_text(); }, py::arg("system"));

  m.def(
      "restrict",
      [](const std::string& system, const std::string& restriction) {
        return system_to_json(restrict_system(load_system(system), Restriction::parse(restriction))).dump();
      },
      py::arg("system"), py::arg("restriction"));

  m.def(
      "verify_witness",
      [](const std::string& system, const std::vector<std::string>& point) {
        std::vector<Rational> q;
        for (const auto& s : point) q.push_back(parse_rational(s));
        return verify_witness(load_system(system), q);
      },
      py::arg("system"), py::arg("point"));

  m.def(
      "verify_certificate",
      [](const std::string& system, const std::string& certificate) {
        const auto s = load_system(system);
        return verify_certificate(s, certificate_from_json(Json::parse(certificate), s.nvars));
      },
      py::arg("system"), py::arg("certificate"));

  m.def(
      "decide",
      [](const std::string& system, const std::string& strategy, std::uint64_t seed, double time_budget, int degree,
         int order, int multistart, std::size_t box_budget, std::optional<std::pair<std::string, std::string>> box) {
        const auto s = load_system(system);
        const auto cfg = make_config(seed, time_budget, degree, order, multistart, box_budget, std::move(box));
        const auto st = parse_strategy(strategy);
        Verdict v;
        {
          py::gil_scoped_release release;
          v = decide(s, st, cfg);
        }
        return verdict_to_json(v).dump();
      },
      py::arg("system"), py::arg("strategy") = "auto", py::arg("seed") = 42, py::arg("time_budget") = 600.0,
      py::arg("degree") = 4, py::arg("order") = 2, py::arg("multistart") = 64, py::arg("box_budget") = 200000,
      py::arg("box") = py::none());

  m.def(
      "build_catalog", [](int k, int d) { return catalog_to_json(build_catalog(k, d)).dump(); }, py::arg("k"),
      py::arg("d"));

  m.def(
      "report", [](const std::string& catalog) { return report_markdown(catalog_from_json(Json::parse(catalog))); },
      py::arg("catalog"));
}
