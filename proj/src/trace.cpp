#include "dsg/trace.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <unordered_map>

#include "dsg/error.hpp"

namespace dsg {

namespace {

constexpr std::string_view kCanonicalHeader = "timestamp,consumer,object,server";
constexpr std::string_view kJobLogHeader = "timestamp,user,file";

bool is_blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

// Seconds with an optional fractional part; the fraction is truncated.
std::optional<std::int64_t> parse_timestamp(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  auto dot = s.find('.');
  std::string_view whole = s.substr(0, dot);
  if (dot != std::string_view::npos) {
    auto frac = s.substr(dot + 1);
    if (!std::all_of(frac.begin(), frac.end(), [](unsigned char c) { return std::isdigit(c); }))
      return std::nullopt;
  }
  if (whole.empty() || !std::all_of(whole.begin(), whole.end(), [](unsigned char c) { return std::isdigit(c); }))
    return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), value);
  if (ec != std::errc() || ptr != whole.data() + whole.size()) return std::nullopt;
  return value;
}

// Count of unescaped quote characters decides whether a record continues on
// the next physical line.
bool quotes_open(std::string_view s) {
  return std::count(s.begin(), s.end(), '"') % 2 == 1;
}

// RFC 4180 field splitting. Returns nullopt on a malformed quoted field.
std::optional<std::vector<std::string>> split_csv(std::string_view record) {
  std::vector<std::string> fields;
  std::string field;
  std::size_t i = 0;
  while (true) {
    field.clear();
    if (i < record.size() && record[i] == '"') {
      ++i;
      while (true) {
        if (i >= record.size()) return std::nullopt;
        if (record[i] == '"') {
          if (i + 1 < record.size() && record[i + 1] == '"') {
            field.push_back('"');
            i += 2;
          } else {
            ++i;
            break;
          }
        } else {
          field.push_back(record[i++]);
        }
      }
      if (i < record.size() && record[i] != ',') return std::nullopt;
    } else {
      while (i < record.size() && record[i] != ',') {
        if (record[i] == '"') return std::nullopt;
        field.push_back(record[i++]);
      }
    }
    fields.push_back(field);
    if (i >= record.size()) break;
    ++i;  // comma
  }
  return fields;
}

bool needs_quoting(std::string_view s) {
  return s.find_first_of(",\"\r\n") != std::string_view::npos;
}

void write_field(std::ostream& out, std::string_view s) {
  if (!needs_quoting(s)) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

struct UrlParts {
  std::string_view scheme;
  std::string_view userinfo;  // including trailing '@', possibly empty
  std::string_view host;
  std::string_view port;      // without ':'
  std::string_view rest;      // path + query, fragment removed
};

std::optional<UrlParts> split_url(std::string_view url) {
  auto sep = url.find("://");
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;
  UrlParts parts;
  parts.scheme = url.substr(0, sep);
  if (!std::all_of(parts.scheme.begin(), parts.scheme.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '+' || c == '-' || c == '.';
      }))
    return std::nullopt;
  std::string_view tail = url.substr(sep + 3);
  if (auto hash = tail.find('#'); hash != std::string_view::npos) tail = tail.substr(0, hash);
  auto auth_end = tail.find_first_of("/?");
  std::string_view authority = tail.substr(0, auth_end);
  parts.rest = auth_end == std::string_view::npos ? std::string_view{} : tail.substr(auth_end);
  if (auto at = authority.rfind('@'); at != std::string_view::npos) {
    parts.userinfo = authority.substr(0, at + 1);
    authority = authority.substr(at + 1);
  }
  // Bracketed IPv6 literals carry colons of their own.
  std::size_t colon = std::string_view::npos;
  if (!authority.empty() && authority.front() == '[') {
    auto close = authority.find(']');
    if (close != std::string_view::npos && close + 1 < authority.size() && authority[close + 1] == ':')
      colon = close + 1;
  } else {
    colon = authority.rfind(':');
  }
  if (colon != std::string_view::npos) {
    parts.host = authority.substr(0, colon);
    parts.port = authority.substr(colon + 1);
  } else {
    parts.host = authority;
  }
  return parts;
}

bool is_default_port(std::string_view scheme, std::string_view port) {
  if (port.empty()) return true;
  auto s = lower(scheme);
  return (s == "http" && port == "80") || (s == "https" && port == "443") || (s == "ftp" && port == "21");
}

}  // namespace

std::string_view to_string(TraceFormat format) {
  switch (format) {
    case TraceFormat::CanonicalCsv: return "canonical-csv";
    case TraceFormat::ProxyLog: return "proxy-log";
    case TraceFormat::JobLog: return "job-log";
  }
  return "?";
}

std::string_view to_string(Granularity granularity) {
  switch (granularity) {
    case Granularity::Page: return "page";
    case Granularity::Server: return "server";
    case Granularity::File: return "file";
  }
  return "?";
}

std::optional<TraceFormat> parse_trace_format(std::string_view name) {
  for (auto f : {TraceFormat::CanonicalCsv, TraceFormat::ProxyLog, TraceFormat::JobLog})
    if (to_string(f) == name) return f;
  return std::nullopt;
}

std::optional<Granularity> parse_granularity(std::string_view name) {
  for (auto g : {Granularity::Page, Granularity::Server, Granularity::File})
    if (to_string(g) == name) return g;
  return std::nullopt;
}

TraceReader::TraceReader(std::istream& in, TraceFormat format) : in_(in), format_(format) {}

bool TraceReader::read_line(std::string& line) {
  if (!std::getline(in_, line)) {
    if (in_.bad()) throw IoError("read failure after line " + std::to_string(line_no_));
    return false;
  }
  ++line_no_;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

std::optional<ParseResult> TraceReader::next() {
  std::string line;
  while (read_line(line)) {
    if (is_blank(line) || line.front() == '#') continue;
    const std::size_t start_line = line_no_;
    const bool first = !seen_content_;
    seen_content_ = true;

    if (format_ == TraceFormat::ProxyLog) return parse_proxy_line(line, start_line);

    if (first) {
      auto header = format_ == TraceFormat::CanonicalCsv ? kCanonicalHeader : kJobLogHeader;
      if (trim(line) == header) continue;
    }
    std::string record = line;
    while (quotes_open(record)) {
      std::string more;
      if (!read_line(more)) break;
      record += '\n';
      record += more;
    }
    return parse_csv_record(std::move(record), start_line);
  }
  return std::nullopt;
}

ParseResult TraceReader::parse_csv_record(std::string record, std::size_t line_no) {
  auto fields = split_csv(record);
  if (!fields) return ParseError{line_no, "malformed quoting"};
  const std::size_t expected = format_ == TraceFormat::CanonicalCsv ? 4 : 3;
  if (fields->size() != expected)
    return ParseError{line_no, "expected " + std::to_string(expected) + " fields, got " +
                                   std::to_string(fields->size())};
  auto ts = parse_timestamp((*fields)[0]);
  if (!ts) return ParseError{line_no, "invalid timestamp '" + (*fields)[0] + "'"};
  AccessRecord rec;
  rec.timestamp = *ts;
  rec.consumer = (*fields)[1];
  rec.object = (*fields)[2];
  if (rec.consumer.empty()) return ParseError{line_no, "empty consumer"};
  if (rec.object.empty()) return ParseError{line_no, "empty object"};
  if (expected == 4 && !(*fields)[3].empty()) rec.server = (*fields)[3];
  return rec;
}

ParseResult TraceReader::parse_proxy_line(std::string_view line, std::size_t line_no) const {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) fields.push_back(line.substr(i, j - i));
    i = j;
  }
  std::string_view ts_field, client, url;
  if (fields.size() >= 7 && fields[3].find('/') != std::string_view::npos) {
    ts_field = fields[0];
    client = fields[2];
    url = fields[6];
  } else if (fields.size() >= 3) {
    ts_field = fields[0];
    client = fields[1];
    url = fields[2];
  } else {
    return ParseError{line_no, "expected at least 3 whitespace-separated fields"};
  }
  auto ts = parse_timestamp(ts_field);
  if (!ts) return ParseError{line_no, "invalid timestamp '" + std::string(ts_field) + "'"};
  AccessRecord rec;
  rec.timestamp = *ts;
  rec.consumer = std::string(client);
  rec.object = std::string(url);
  rec.server = url_host(url);
  return rec;
}

std::vector<ParseResult> parse_trace(std::istream& in, TraceFormat format) {
  TraceReader reader(in, format);
  std::vector<ParseResult> out;
  while (auto r = reader.next()) out.push_back(std::move(*r));
  return out;
}

ParsedTrace read_trace(std::istream& in, TraceFormat format) {
  TraceReader reader(in, format);
  ParsedTrace trace;
  while (auto r = reader.next()) {
    if (auto* rec = std::get_if<AccessRecord>(&*r))
      trace.records.push_back(std::move(*rec));
    else
      trace.errors.push_back(std::get<ParseError>(std::move(*r)));
  }
  return trace;
}

ParsedTrace read_trace_file(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace '" + path.string() + "'");
  return read_trace(in, format);
}

void write_canonical_csv(std::ostream& out, std::span<const AccessRecord> records, bool header) {
  if (header) out << kCanonicalHeader << '\n';
  for (const auto& r : records) {
    out << r.timestamp << ',';
    write_field(out, r.consumer);
    out << ',';
    write_field(out, r.object);
    out << ',';
    if (r.server) write_field(out, *r.server);
    out << '\n';
  }
}

std::string to_canonical_csv(std::span<const AccessRecord> records, bool header) {
  std::ostringstream out;
  write_canonical_csv(out, records, header);
  return out.str();
}

std::string canonicalize_url(std::string_view url) {
  auto parts = split_url(url);
  if (!parts) return std::string(url);
  std::string out;
  out.reserve(url.size());
  out += parts->scheme;
  out += "://";
  out += parts->userinfo;
  out += lower(parts->host);
  if (!is_default_port(parts->scheme, parts->port)) {
    out += ':';
    out += parts->port;
  }
  out += parts->rest;
  return out;
}

std::optional<std::string> url_host(std::string_view url) {
  auto parts = split_url(url);
  if (!parts || parts->host.empty()) return std::nullopt;
  std::string host = lower(parts->host);
  if (!is_default_port(parts->scheme, parts->port)) {
    host += ':';
    host += parts->port;
  }
  return host;
}

AccessRecord normalize_object(AccessRecord record, Granularity granularity) {
  switch (granularity) {
    case Granularity::Page:
      record.object = canonicalize_url(record.object);
      break;
    case Granularity::Server: {
      if (!record.server || record.server->empty()) {
        auto host = url_host(record.object);
        if (!host) throw MissingServer(record.object);
        record.server = std::move(*host);
      }
      record.object = *record.server;
      break;
    }
    case Granularity::File:
      break;
  }
  return record;
}

PopularityDistribution popularity_distribution(std::span<const AccessRecord> records) {
  std::unordered_map<std::string_view, std::uint64_t> counts;
  for (const auto& r : records) ++counts[r.object];
  if (counts.size() < 2)
    throw InsufficientData("popularity distribution needs at least 2 distinct objects, got " +
                           std::to_string(counts.size()));

  PopularityDistribution dist;
  dist.total_accesses = records.size();
  dist.ranking.reserve(counts.size());
  for (const auto& [object, count] : counts) dist.ranking.push_back({std::string(object), count});
  std::sort(dist.ranking.begin(), dist.ranking.end(), [](const auto& a, const auto& b) {
    return a.count != b.count ? a.count > b.count : a.object < b.object;
  });

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (std::size_t rank = 1; rank <= dist.ranking.size(); ++rank) {
    auto c = dist.ranking[rank - 1].count;
    if (c < 2) break;
    double x = std::log(double(rank));
    double y = std::log(double(c));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  dist.fitted_ranks = k;
  if (k >= 2) {
    double n = double(k);
    double var = sxx - sx * sx / n;
    if (var > 0) dist.exponent = -(sxy - sx * sy / n) / var;
  }
  return dist;
}

}  // namespace dsg
