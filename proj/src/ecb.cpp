#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <httplib.h>

#include "tobitadf/io.hpp"

namespace tobit {

namespace {

bool is_iso_date(const std::string& s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u})
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// One CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void validate_ecb_request(const EcbRequest& request) {
  const std::string& key = request.series_key;
  if (key.empty()) throw std::invalid_argument("fetch_ecb: empty series key");
  std::size_t segments = 0;
  std::string seg;
  std::stringstream ss(key);
  while (std::getline(ss, seg, '.')) {
    ++segments;
    if (seg.empty()) throw std::invalid_argument("fetch_ecb: empty segment in key '" + key + "'");
    for (char ch : seg)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '-')
        throw std::invalid_argument("fetch_ecb: invalid character in key '" + key + "'");
  }
  if (key.back() == '.' || segments < 2)
    throw std::invalid_argument("fetch_ecb: key must be FLOW.DIM1[.DIM2...]: '" + key + "'");
  if (request.start.empty() || request.end.empty())
    throw std::invalid_argument("fetch_ecb: empty date range");
  if (!is_iso_date(request.start) || !is_iso_date(request.end))
    throw std::invalid_argument("fetch_ecb: dates must be ISO-8601 (YYYY-MM-DD)");
  if (request.end < request.start)
    throw std::invalid_argument("fetch_ecb: end date precedes start date");
}

std::string ecb_url_path(const EcbRequest& request) {
  const std::size_t dot = request.series_key.find('.');
  const std::string flow = request.series_key.substr(0, dot);
  const std::string rest = request.series_key.substr(dot + 1);
  return "/service/data/" + flow + "/" + rest + "?startPeriod=" + request.start +
         "&endPeriod=" + request.end + "&format=csvdata";
}

std::string ecb_cache_filename(const EcbRequest& request) {
  std::string name = request.series_key + "_" + request.start + "_" + request.end + ".csv";
  for (char& ch : name)
    if (ch == '.') ch = '-';
  return "ecb_" + name.substr(0, name.size() - 4) + ".csv";
}

Series parse_sdmx_csv(const std::string& body, const std::string& origin) {
  std::stringstream in(body);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(origin + ": empty payload");
  const std::vector<std::string> header = split_csv_line(line);
  std::ptrdiff_t time_col = -1, obs_col = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "TIME_PERIOD") time_col = static_cast<std::ptrdiff_t>(i);
    if (header[i] == "OBS_VALUE") obs_col = static_cast<std::ptrdiff_t>(i);
  }
  if (time_col < 0 || obs_col < 0)
    throw std::runtime_error(origin + ": malformed SDMX CSV (no TIME_PERIOD/OBS_VALUE columns)");

  std::vector<std::pair<std::string, double>> obs;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() <= static_cast<std::size_t>(std::max(time_col, obs_col)))
      throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": short SDMX CSV row");
    const std::string& value = fields[static_cast<std::size_t>(obs_col)];
    if (value.empty()) continue;  // missing observation
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size())
      throw std::runtime_error(origin + ":" + std::to_string(line_no) +
                               ": cannot parse OBS_VALUE '" + value + "'");
    obs.emplace_back(fields[static_cast<std::size_t>(time_col)], v);
  }
  if (obs.empty()) throw std::runtime_error(origin + ": no observations in payload");
  std::stable_sort(obs.begin(), obs.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  Series series;
  for (auto& [date, value] : obs) {
    series.dates.push_back(date);
    series.values.push_back(value);
  }
  return series;
}

Series fetch_ecb(const EcbRequest& request, std::string* raw_body) {
  validate_ecb_request(request);
  const std::string url_path = ecb_url_path(request);
  const std::string url = (request.use_tls ? "https://" : "http://") + request.host + url_path;

  // A cached raw payload takes priority, for offline reproducibility.
  std::filesystem::path cache_path;
  if (!request.cache_dir.empty()) {
    cache_path = std::filesystem::path(request.cache_dir) / ecb_cache_filename(request);
    if (std::filesystem::exists(cache_path)) {
      std::ifstream in(cache_path);
      std::stringstream buf;
      buf << in.rdbuf();
      const std::string body = buf.str();
      if (raw_body) *raw_body = body;
      return parse_sdmx_csv(body, cache_path.string());
    }
  }

  std::string body;
  int status = 0;
  std::string transport_error;
  for (int attempt = 0; attempt < 2 && body.empty(); ++attempt) {  // single retry
    auto issue = [&](auto& client) {
      client.set_connection_timeout(20, 0);
      client.set_read_timeout(60, 0);
      if (auto res = client.Get(url_path.c_str())) {
        status = res->status;
        if (status == 200) body = res->body;
      } else {
        transport_error = httplib::to_string(res.error());
      }
    };
#ifdef CPPHTTPLIB_OPENSSL_SUPPORT
    if (request.use_tls) {
      httplib::SSLClient client(request.host, request.port);
      issue(client);
    } else {
      httplib::Client client(request.host, request.port);
      issue(client);
    }
#else
    if (request.use_tls)
      throw std::runtime_error("fetch_ecb: TLS support not built in; " + url);
    httplib::Client client(request.host, request.port);
    issue(client);
#endif
  }
  if (body.empty()) {
    if (!transport_error.empty())
      throw std::runtime_error("fetch_ecb: HTTP request failed (" + transport_error + "): " + url);
    if (status != 200)
      throw std::runtime_error("fetch_ecb: HTTP status " + std::to_string(status) + ": " + url);
    throw std::runtime_error("fetch_ecb: empty payload: " + url);
  }

  if (!cache_path.empty()) {
    std::filesystem::create_directories(cache_path.parent_path());
    std::ofstream out(cache_path);
    out << body;
  }
  if (raw_body) *raw_body = body;
  return parse_sdmx_csv(body, url);
}

}  // namespace tobit
