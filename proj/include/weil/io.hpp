#pragma once

#include "weil/av_model.hpp"
#include "weil/criteria.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace weil {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "weilclass";
inline constexpr const char* kToolVersion = "1.0.0";

/// Builds a datum from an input document. Every failure is an
/// Error(InvalidInput) whose message starts with the path into the document,
/// e.g. "factors[0].center.min_poly[2]: ...". Does not run validate().
AbelianVarietyDatum parse_datum(const Json& doc);
/// Parses UTF-8 text first; syntax errors are reported with a byte offset.
AbelianVarietyDatum parse_datum_text(std::string_view text);

/// Input document for a datum; parse_datum(datum_to_json(x)) rebuilds x.
Json datum_to_json(const AbelianVarietyDatum& datum);

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view bytes);

/// Sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& doc);

Json report_to_json(const ClassificationReport& report);
std::string report_to_text(const ClassificationReport& report);

struct OracleOptions {
    unsigned precision = 50;
    Rational tolerance = Rational(1, 100000000);
    size_t cap = 5000;  // largest C(N, r) the exterior-algebra oracles will touch
};

/// dim W_F against [F:Q]. Throws RankDefect on disagreement.
Json wedge_oracle(const AbelianVarietyDatum& datum, const OracleOptions& opt = {});
/// Bidegrees of the sigma-components of W_F, compared with hodge_test.
/// Throws InconsistencyDetected on disagreement.
Json hodge_type_oracle_report(const AbelianVarietyDatum& datum, const OracleOptions& opt = {});
/// Divisor-ring witness for a single simple factor.
Json witness_oracle(const AbelianVarietyDatum& datum, const OracleOptions& opt = {});

/// All applicable oracles next to a classification. Oracles that do not
/// apply are listed with the reason. Throws InconsistencyDetected when an
/// applicable oracle disagrees with the report.
Json oracle_crosscheck(const AbelianVarietyDatum& datum, const ClassificationReport& report,
                       const OracleOptions& opt = {});

}  // namespace weil
