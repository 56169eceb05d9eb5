#pragma once

// Feasibility of g_i(mu) <= 0 over the open positive orthant.
//
// Three exact-verified routes:
//   * witnesses: positive rational points checked in exact arithmetic;
//   * orthant certificates: identities
//         sum_I h_I * prod_{i in I} (-g_i) = -t
//     with h_I and t having nonnegative coefficients and t != 0. On a feasible
//     point the left side is >= 0 while -t < 0, so no such point exists;
//   * interval branch-and-bound over a box, which proves emptiness of that box
//     only.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kwfeas/interval.hpp"
#include "kwfeas/kw.hpp"
#include "kwfeas/polynomial.hpp"

namespace kwfeas {

struct SearchConfig {
  std::uint64_t seed = 42;
  int multistart = 64;
  int iterations = 600;            // Nelder-Mead iterations per start
  long max_denominator = 1'000'000;
  int degree = 4;                  // multiplier degree bound D
  int order = 2;                   // product order bound r
  std::size_t lp_max_cells = 20'000'000;
  std::size_t box_budget = 200'000;  // boxes per branch-and-bound run
  double time_budget = 600.0;        // seconds, whole decision
  double certificate_time = 120.0;   // seconds, certificate stage
  std::vector<int> ladder = {4, 8, 12};  // boxes [2^-m, 2^m]^n
  // User box [lo, hi]^n replacing the ladder when set.
  std::optional<std::pair<Rational, Rational>> box;

  friend bool operator==(const SearchConfig&, const SearchConfig&) = default;
};

struct OrthantCertificate {
  struct Entry {
    std::vector<std::size_t> multiset;  // constraint indices, sorted, may repeat
    Polynomial multiplier;              // nonnegative coefficients

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;
  Polynomial target;  // nonzero, nonnegative coefficients
  int degree = 0;     // (D, r) at which it was found
  int order = 0;

  friend bool operator==(const OrthantCertificate&, const OrthantCertificate&) = default;
};

struct Box {
  std::vector<Interval> sides;
};

struct PrunedBox {
  Box box;
  std::size_t constraint = 0;  // whose interval lower bound is > 0
};

enum class BnbStatus { ProvenEmpty, FoundPoint, Exhausted };

struct BnBTrace {
  std::vector<std::pair<Rational, Rational>> root;
  BnbStatus status = BnbStatus::Exhausted;
  std::vector<PrunedBox> pruned;  // full log; not serialized
  std::vector<Box> unresolved;    // empty iff the proof is complete (or a point was found)
  std::size_t evaluations = 0;
  std::size_t pruned_count = 0;
  std::vector<std::size_t> prunes_per_constraint;
  std::string digest;             // hash of the full pruning log

  friend bool operator==(const BnBTrace& a, const BnBTrace& b) {
    return a.root == b.root && a.status == b.status && a.evaluations == b.evaluations &&
           a.pruned_count == b.pruned_count && a.prunes_per_constraint == b.prunes_per_constraint &&
           a.digest == b.digest && a.unresolved.size() == b.unresolved.size();
  }
};

struct BnbResult {
  BnBTrace trace;
  std::optional<std::vector<Rational>> witness;  // FoundPoint only
};

enum class Status { Feasible, Infeasible, Unknown };
enum class Strategy { Auto, Witness, Certificate, BranchAndBound };

struct Verdict {
  Status status = Status::Unknown;
  std::string method;  // "witness", "certificate", "branch-and-bound", "none"
  std::string scope;   // "global", or the box that was proven empty
  std::optional<std::vector<Rational>> witness;
  std::optional<OrthantCertificate> certificate;
  std::vector<BnBTrace> boxlog;
  std::vector<std::string> diagnostics;
  SearchConfig config;
  double wall_seconds = 0.0;
};

const char* to_string(Status s);
const char* to_string(Strategy s);
const char* to_string(BnbStatus s);
Status parse_status(std::string_view s);
Strategy parse_strategy(std::string_view s);
BnbStatus parse_bnb_status(std::string_view s);

bool verify_witness(const InequalitySystem& system, const std::vector<Rational>& point);
bool verify_certificate(const InequalitySystem& system, const OrthantCertificate& cert);

// Multistart Nelder-Mead in log coordinates, then continued-fraction
// rationalization and exact verification.
std::optional<std::vector<Rational>> search_witness(const InequalitySystem& system, const SearchConfig& cfg);

struct CertificateSearch {
  std::optional<OrthantCertificate> certificate;
  std::vector<std::string> log;
};

// Escalates (D, r) through (0,1), (0,2), (1,1), ... up to cfg.degree/cfg.order.
CertificateSearch find_certificate(const InequalitySystem& system, const SearchConfig& cfg);

// A single (D, r) attempt.
CertificateSearch find_certificate_at(const InequalitySystem& system, int degree, int order, const SearchConfig& cfg);

// Box sides must satisfy 0 < lo <= hi. Throws std::invalid_argument otherwise.
BnbResult bnb_region(const InequalitySystem& system, const std::vector<std::pair<Rational, Rational>>& box,
                     const SearchConfig& cfg);

Verdict decide(const InequalitySystem& system, Strategy strategy, const SearchConfig& cfg);

}  // namespace kwfeas
