#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace dsg {

/// One logged data access.
struct AccessRecord {
  std::int64_t timestamp = 0;  // whole seconds since epoch, >= 0
  std::string consumer;        // IP address or user name
  std::string object;          // URL, server id or file path
  std::optional<std::string> server;

  friend bool operator==(const AccessRecord&, const AccessRecord&) = default;
};

enum class TraceFormat { CanonicalCsv, ProxyLog, JobLog };

/// Object identity used when comparing consumers' interests.
enum class Granularity { Page, Server, File };

std::string_view to_string(TraceFormat format);
std::string_view to_string(Granularity granularity);
std::optional<TraceFormat> parse_trace_format(std::string_view name);
std::optional<Granularity> parse_granularity(std::string_view name);

struct ParseError {
  std::size_t line_no = 0;  // 1-based, first physical line of the record
  std::string reason;

  friend bool operator==(const ParseError&, const ParseError&) = default;
};

using ParseResult = std::variant<AccessRecord, ParseError>;

/// Pull-style parser over a line-oriented stream. Blank lines, lines starting
/// with '#', and a leading header line are skipped; every other line yields
/// exactly one record or one ParseError.
///
/// Formats:
///   canonical-csv  "timestamp,consumer,object,server" (RFC 4180 quoting,
///                  server may be empty)
///   proxy-log      whitespace separated; either "timestamp client url ..."
///                  or Squid native "timestamp elapsed client code/status
///                  bytes method url ..." (detected by the '/' in field 4)
///   job-log        CSV "timestamp,user,file"
///
/// Timestamps may carry a fractional part, which is truncated.
class TraceReader {
 public:
  TraceReader(std::istream& in, TraceFormat format);

  /// Next record or error; std::nullopt at end of input. Throws IoError if the
  /// stream goes bad mid-read.
  std::optional<ParseResult> next();

 private:
  bool read_line(std::string& line);
  ParseResult parse_csv_record(std::string record, std::size_t line_no);
  ParseResult parse_proxy_line(std::string_view line, std::size_t line_no) const;

  std::istream& in_;
  TraceFormat format_;
  std::size_t line_no_ = 0;
  bool seen_content_ = false;
};

std::vector<ParseResult> parse_trace(std::istream& in, TraceFormat format);

/// A fully read trace with records and errors separated.
struct ParsedTrace {
  std::vector<AccessRecord> records;
  std::vector<ParseError> errors;

  std::size_t total() const { return records.size() + errors.size(); }
};

ParsedTrace read_trace(std::istream& in, TraceFormat format);
ParsedTrace read_trace_file(const std::filesystem::path& path, TraceFormat format);

/// Writes canonical CSV, quoting a field only when it contains a comma, quote
/// or line break. Lines end in '\n'.
void write_canonical_csv(std::ostream& out, std::span<const AccessRecord> records, bool header = true);
std::string to_canonical_csv(std::span<const AccessRecord> records, bool header = true);

/// Lowercases the host, drops the scheme's default port and strips the
/// fragment. Anything that is not "scheme://authority..." is returned as is.
std::string canonicalize_url(std::string_view url);

/// Canonical "host[:port]" of a URL, or nullopt when there is none.
std::optional<std::string> url_host(std::string_view url);

/// Maps the record's object onto the requested granularity. Page canonicalizes
/// URLs, Server replaces the object by the server id (taken from the record or
/// derived from the URL), File leaves the object untouched. Idempotent.
/// Throws MissingServer when Server is requested and no host is available.
AccessRecord normalize_object(AccessRecord record, Granularity granularity);

struct PopularityEntry {
  std::string object;
  std::uint64_t count = 0;
};

/// Ranked access histogram with a least-squares power-law fit of
/// log(count) against log(rank) over the ranks whose count is at least 2.
struct PopularityDistribution {
  std::vector<PopularityEntry> ranking;  // descending count, ties by object id
  std::uint64_t total_accesses = 0;
  std::size_t fitted_ranks = 0;
  std::optional<double> exponent;  // Zipf exponent (negated slope)
};

/// Throws InsufficientData with fewer than two distinct objects.
PopularityDistribution popularity_distribution(std::span<const AccessRecord> records);

}  // namespace dsg
