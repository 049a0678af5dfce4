#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tobitadf/estimation.hpp"
#include "tobitadf/inference.hpp"
#include "tobitadf/model.hpp"
#include "tobitadf/stability.hpp"

namespace tobit {

struct CsvOptions {
  bool apply_log = false;
  std::optional<double> bound;  // on the analysis (post-log) scale
  bool bound_is_raw = false;    // interpret `bound` on the raw scale instead
};

/// Reads a one-column (`value`) or two-column (`date,value`) CSV.  A
/// non-numeric first line is treated as a header.  With `apply_log`,
/// nonpositive values are rejected with their line number.
Series read_series_csv(const std::string& path, const CsvOptions& options = {});
Series parse_series_csv(std::istream& in, const CsvOptions& options,
                        const std::string& origin);

/// Writes `value` or `date,value` rows with 17 significant digits, which
/// round-trips doubles exactly.
void write_series_csv(const Series& series, std::ostream& out);
void write_series_csv(const Series& series, const std::string& path);

void write_sim_output_csv(const SimOutput& sim, std::ostream& out);

/// CvTable CSV: header `ratio,q01,q05,q10`, one row per ratio, final row
/// with literal ratio `adf`.
void write_cv_table_csv(const CvTable& table, std::ostream& out);
CvTable read_cv_table_csv(std::istream& in, const std::string& origin);
CvTable read_cv_table_csv(const std::string& path);

std::string format_full(double v);  // %.17g

/// ISO-8601 UTC timestamp; honours SOURCE_DATE_EPOCH for reproducible runs.
std::string timestamp_utc();

nlohmann::json to_json(const TestReport& report);
nlohmann::json to_json(const OlsFit& fit);
nlohmann::json to_json(const JsrCertificate& cert);
nlohmann::json to_json(const ExplosionReport& report);
nlohmann::json cv_table_provenance(const CvTable& table);

/// Checks `doc` against the subset of JSON Schema used by the shipped
/// schemas (type, required, properties, items, enum).  Returns a list of
/// violations, empty when valid.
std::vector<std::string> validate_against_schema(const nlohmann::json& doc,
                                                 const nlohmann::json& schema);

// ---- ECB SDMX-REST client ----------------------------------------------

struct EcbRequest {
  std::string series_key;  // e.g. EXR.D.CHF.EUR.SP00.A
  std::string start;       // ISO date
  std::string end;         // ISO date
  std::string cache_dir;   // look up / store the raw payload here when set
  // Overridable endpoint (tests point this at a local server).
  std::string host = "data-api.ecb.europa.eu";
  int port = 443;
  bool use_tls = true;
};

/// Throws std::invalid_argument on syntactically invalid keys/dates.
void validate_ecb_request(const EcbRequest& request);

/// Request path + query for the SDMX-REST CSV endpoint.
std::string ecb_url_path(const EcbRequest& request);

/// Parses SDMX `csvdata` payloads (TIME_PERIOD / OBS_VALUE columns), in
/// date order, skipping missing observations.
Series parse_sdmx_csv(const std::string& body, const std::string& origin);

/// Fetches the series, preferring a cached raw payload when available.
/// `raw_body` (optional) receives the payload for caching beside outputs.
Series fetch_ecb(const EcbRequest& request, std::string* raw_body = nullptr);

std::string ecb_cache_filename(const EcbRequest& request);

}  // namespace tobit
