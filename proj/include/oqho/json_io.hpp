#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "oqho/form_conversion.hpp"
#include "oqho/pr_core.hpp"
#include "oqho/skew_factor.hpp"
#include "oqho/state_space.hpp"

namespace oqho::io {

using Json = nlohmann::ordered_json;

// Matrices are written row-major:
//   real     {"rows": r, "cols": c, "data": [[...], ...]}
//   complex  {"rows": r, "cols": c, "re": [[...], ...], "im": [[...], ...]}
// Every reader throws ParseError naming the offending field path.

Json to_json(const RealMatrix& m);
Json to_json(const ComplexMatrix& m);
RealMatrix real_matrix_from_json(const Json& j, const std::string& path = "$");
ComplexMatrix complex_matrix_from_json(const Json& j, const std::string& path = "$");

/// {"n": modes, "m": channels, "A", "B", "C", "D"}; the state and channel
/// counts must be even.
Json to_json(const StateSpace& ss);
StateSpace state_space_from_json(const Json& j);

/// {"entries": [{"num": [...], "den": [...]}, ...]}, descending powers.
Json to_json(const std::vector<RationalEntry>& entries);
std::vector<RationalEntry> rational_from_json(const Json& j);

Json to_json(const PmParams& p);
PmParams pm_params_from_json(const Json& j);
Json to_json(const AcParams& a);
AcParams ac_params_from_json(const Json& j);

Json to_json(const Condition& c);
Condition condition_from_json(const Json& j, const std::string& path);

Json to_json(const PrReport& r);
PrReport pr_report_from_json(const Json& j, const std::string& path = "$");

/// Output of the check command: the frequency-domain report at the top
/// level, plus the time-domain report and combined verdict when a CCR matrix
/// was supplied.
struct CheckReport {
  PrReport frequency;
  std::optional<PrReport> time_domain;
  Verdict overall = Verdict::kInconclusive;
};
Json to_json(const CheckReport& r);
CheckReport check_report_from_json(const Json& j);

Json to_json(const SynthesisResult& r);
SynthesisResult synthesis_result_from_json(const Json& j);

Json to_json(const SpectrumReport& r);
SpectrumReport spectrum_report_from_json(const Json& j);

Json to_json(const SkewFactorization& f);
SkewFactorization skew_factorization_from_json(const Json& j);

enum class Schema {
  kRealMatrix,
  kComplexMatrix,
  kStateSpace,
  kRational,
  kPmParams,
  kAcParams,
};

std::string_view to_string(Schema s);

/// Picks the schema whose required fields are all present. Throws ParseError
/// when none or more than one matches.
Schema detect_schema(const Json& j);

/// Parses text, reporting syntax errors as ParseError.
Json parse(std::string_view text);
Json read_file(const std::string& path);

/// Pretty-printed with a trailing newline; doubles use shortest round-trip
/// formatting so output is byte-stable.
std::string dump(const Json& j);

}  // namespace oqho::io
