#pragma once

// JSON forms of systems, certificates and verdicts. Key order is fixed so
// that write -> read -> write is byte-identical.

#include <json.hpp>

#include "kwfeas/feasibility.hpp"
#include "kwfeas/kw.hpp"

namespace kwfeas {

using Json = nlohmann::ordered_json;

// Integers fitting in int64 become JSON numbers, everything else "n/d".
Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

// [[coeff, [e1..en]], ...] in graded-lex order, leading term first.
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j, std::size_t nvars);

Json system_to_json(const InequalitySystem& system);
InequalitySystem system_from_json(const Json& j);

Json certificate_to_json(const OrthantCertificate& cert);
OrthantCertificate certificate_from_json(const Json& j, std::size_t nvars);

Json config_to_json(const SearchConfig& cfg);
SearchConfig config_from_json(const Json& j);

// Summary only: the pruned-box log is represented by its digest and the
// unresolved boxes by their count.
Json trace_to_json(const BnBTrace& trace);
BnBTrace trace_from_json(const Json& j);

Json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const Json& j, std::size_t nvars);

}  // namespace kwfeas
