#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace faqkit {

struct WarcRecord {
  std::string version;  // "WARC/1.0"
  std::string warc_type;
  std::optional<std::string> target_uri;
  std::string content_type;
  std::vector<std::pair<std::string, std::string>> headers;
  std::string payload;

  // Case-insensitive header lookup.
  std::optional<std::string_view> header(std::string_view name) const;
};

bool is_warc_record_type(std::string_view type);

// Streams records from a plain .warc or a record-gzipped .warc.gz (one gzip
// member per record). Malformed records are skipped and counted; only a
// missing/unreadable file, a first record without WARC magic, or whole-file
// gzip are fatal (DataError). Memory stays proportional to the largest record.
class WarcReader {
 public:
  explicit WarcReader(const std::filesystem::path& path);
  ~WarcReader();
  WarcReader(const WarcReader&) = delete;
  WarcReader& operator=(const WarcReader&) = delete;

  std::optional<WarcRecord> next();

  std::size_t yielded() const { return yielded_; }
  std::size_t skipped() const { return skipped_; }
  bool gzipped() const { return gzipped_; }

  class Source;

 private:
  enum class Parse { ok, malformed, eof };

  Parse parse_record(WarcRecord& out, std::string& consumed);
  bool ensure(std::size_t n);
  bool read_line(std::string& line);
  bool seek_magic();
  void push_back(std::string_view bytes);
  std::optional<WarcRecord> next_plain();
  std::optional<WarcRecord> next_gzip();

  std::unique_ptr<Source> source_;
  std::string buffer_;
  std::size_t pos_ = 0;
  bool gzipped_ = false;
  bool started_ = false;
  std::size_t yielded_ = 0;
  std::size_t skipped_ = 0;
};

// Reads every record of an archive into memory. Convenience for tests and
// small inputs; pipelines should iterate a WarcReader.
std::vector<WarcRecord> read_all_records(const std::filesystem::path& path,
                                         std::size_t* skipped = nullptr);

struct HtmlDocument {
  std::string url;
  std::string html;
};

struct HtmlFilterStats {
  std::size_t accepted = 0;
  std::size_t not_response = 0;
  std::size_t not_html = 0;
  std::size_t bad_http = 0;
  std::size_t bad_chunking = 0;
  std::size_t unsupported_encoding = 0;
};

// Keeps "response" records whose HTTP payload is HTML; strips the HTTP
// header block, de-chunks, gunzips Content-Encoding: gzip, and decodes the
// body as UTF-8 with U+FFFD replacement.
std::optional<HtmlDocument> html_response(const WarcRecord& record,
                                          HtmlFilterStats* stats = nullptr);
std::vector<HtmlDocument> html_responses(std::span<const WarcRecord> records,
                                         HtmlFilterStats* stats = nullptr);

// Decodes an HTTP/1.1 chunked body. nullopt when the framing is malformed.
std::optional<std::string> dechunk(std::string_view body);

std::optional<std::string> gunzip(std::string_view data);
std::string gzip_member(std::string_view data);

struct WarcRecordSpec {
  std::string warc_type = "response";
  std::optional<std::string> target_uri;
  std::string content_type = "application/http; msgtype=response";
  std::string payload;
  std::string record_id;
  // Overrides the Content-Length header; used to build malformed fixtures.
  std::optional<std::size_t> declared_length;
};

// Serializes one record: headers, blank line, payload, "\r\n\r\n".
std::string format_warc_record(const WarcRecordSpec& spec);

class WarcWriter {
 public:
  WarcWriter(const std::filesystem::path& path, bool gzip_members);
  void write(const WarcRecordSpec& spec);
  // Writes bytes verbatim (as a gzip member when gzip_members is set).
  void write_raw(std::string_view bytes);

 private:
  std::ofstream out_;
  bool gzip_;
};

// "HTTP/1.1 200 OK" response bytes with the given headers and body.
std::string http_response(std::string_view content_type, std::string_view body,
                          std::span<const std::pair<std::string, std::string>> extra_headers = {});

}  // namespace faqkit
