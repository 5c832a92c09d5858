#include "faqkit/warc.hpp"

#include <zlib.h>

#include <array>
#include <charconv>
#include <cstring>

#include "faqkit/error.hpp"
#include "faqkit/text.hpp"

namespace faqkit {
namespace {

constexpr std::size_t kChunk = 1 << 16;
constexpr std::size_t kMaxHeaderBytes = 1 << 20;

struct CorruptMember {};

constexpr std::array kRecordTypes = {"warcinfo", "response", "resource", "request",
                                     "metadata", "revisit",  "conversion", "continuation"};

bool is_magic(std::string_view line) {
  return line == "WARC/1.0" || line == "WARC/1.1";
}

std::optional<std::size_t> parse_size(std::string_view s, int base = 10) {
  s = text::trim_ascii(s);
  if (s.empty()) return std::nullopt;
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc() || end != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

bool is_warc_record_type(std::string_view type) {
  for (const char* t : kRecordTypes)
    if (type == t) return true;
  return false;
}

std::optional<std::string_view> WarcRecord::header(std::string_view name) const {
  const std::string key = text::ascii_lower(name);
  for (const auto& [k, v] : headers)
    if (text::ascii_lower(k) == key) return std::string_view(v);
  return std::nullopt;
}

// Byte producer behind the reader. fill() appends decoded bytes and returns
// false once the current unit (whole file, or one gzip member) is exhausted.
class WarcReader::Source {
 public:
  virtual ~Source() = default;
  virtual bool fill(std::string& out) = 0;
};

namespace {

class PlainSource final : public WarcReader::Source {
 public:
  explicit PlainSource(std::ifstream in) : in_(std::move(in)) {}
  bool fill(std::string& out) override {
    char buf[kChunk];
    in_.read(buf, sizeof buf);
    const auto got = static_cast<std::size_t>(in_.gcount());
    out.append(buf, got);
    return got > 0;
  }

 private:
  std::ifstream in_;
};

class GzipSource final : public WarcReader::Source {
 public:
  explicit GzipSource(std::ifstream in) : in_(std::move(in)), input_(kChunk) {
    std::memset(&strm_, 0, sizeof strm_);
    if (inflateInit2(&strm_, 16 + MAX_WBITS) != Z_OK) throw DataError("zlib init failed");
  }
  ~GzipSource() override { inflateEnd(&strm_); }

  // Positions at the next member. Garbage between members is skipped and
  // reported through `skipped_garbage`.
  bool start_member(bool& skipped_garbage) {
    skipped_garbage = false;
    for (;;) {
      if (strm_.avail_in < 3 && !refill(true)) {
        if (strm_.avail_in == 0) return false;
      }
      if (strm_.avail_in >= 2 && strm_.next_in[0] == 0x1f && strm_.next_in[1] == 0x8b) break;
      if (strm_.avail_in < 2 && in_.eof()) {
        strm_.avail_in = 0;
        skipped_garbage = true;
        return false;
      }
      skipped_garbage = true;
      ++strm_.next_in;
      --strm_.avail_in;
    }
    inflateReset(&strm_);
    in_member_ = true;
    return true;
  }

  bool fill(std::string& out) override {
    if (!in_member_) return false;
    unsigned char buf[kChunk];
    for (;;) {
      if (strm_.avail_in == 0 && !refill(false)) throw CorruptMember{};
      strm_.next_out = buf;
      strm_.avail_out = sizeof buf;
      const int ret = inflate(&strm_, Z_NO_FLUSH);
      const std::size_t produced = sizeof buf - strm_.avail_out;
      out.append(reinterpret_cast<const char*>(buf), produced);
      if (ret == Z_STREAM_END) {
        in_member_ = false;
        return produced > 0;
      }
      if (ret != Z_OK && ret != Z_BUF_ERROR) throw CorruptMember{};
      if (produced > 0) return true;
    }
  }

  void discard_member() {
    std::string sink;
    while (in_member_) {
      sink.clear();
      fill(sink);
    }
  }

  // After corruption: drop one byte so start_member() scans to the next magic.
  void abandon_member() {
    in_member_ = false;
    if (strm_.avail_in > 0) {
      ++strm_.next_in;
      --strm_.avail_in;
    }
  }

 private:
  // Appends file bytes to the unread input window.
  bool refill(bool keep_tail) {
    if (in_.eof()) return false;
    std::size_t keep = keep_tail ? strm_.avail_in : 0;
    if (keep > 0) std::memmove(input_.data(), strm_.next_in, keep);
    in_.read(reinterpret_cast<char*>(input_.data() + keep),
             static_cast<std::streamsize>(input_.size() - keep));
    const auto got = static_cast<std::size_t>(in_.gcount());
    strm_.next_in = input_.data();
    strm_.avail_in = static_cast<uInt>(keep + got);
    return got > 0;
  }

  std::ifstream in_;
  std::vector<unsigned char> input_;
  z_stream strm_;
  bool in_member_ = false;
};

}  // namespace

WarcReader::WarcReader(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open WARC file " + path.string());
  unsigned char magic[2] = {0, 0};
  in.read(reinterpret_cast<char*>(magic), 2);
  const auto got = in.gcount();
  in.clear();
  in.seekg(0);
  gzipped_ = got == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
  if (gzipped_)
    source_ = std::make_unique<GzipSource>(std::move(in));
  else
    source_ = std::make_unique<PlainSource>(std::move(in));
}

WarcReader::~WarcReader() = default;

bool WarcReader::ensure(std::size_t n) {
  while (buffer_.size() - pos_ < n) {
    if (pos_ > 0 && pos_ * 2 >= buffer_.size()) {
      buffer_.erase(0, pos_);
      pos_ = 0;
    }
    if (!source_->fill(buffer_)) return buffer_.size() - pos_ >= n;
  }
  return true;
}

bool WarcReader::read_line(std::string& line) {
  std::size_t scanned = pos_;
  for (;;) {
    const auto nl = buffer_.find('\n', scanned);
    if (nl != std::string::npos) {
      std::size_t end = nl;
      if (end > pos_ && buffer_[end - 1] == '\r') --end;
      line.assign(buffer_, pos_, end - pos_);
      pos_ = nl + 1;
      return true;
    }
    if (buffer_.size() - pos_ > kMaxHeaderBytes) return false;
    const std::size_t before = buffer_.size() - pos_;
    if (!ensure(before + 1)) return false;
    scanned = pos_ + before;
  }
}

void WarcReader::push_back(std::string_view bytes) {
  buffer_ = std::string(bytes) + buffer_.substr(pos_);
  pos_ = 0;
}

bool WarcReader::seek_magic() {
  static constexpr std::string_view kPattern = "\nWARC/1.";
  for (;;) {
    const auto k = buffer_.find(kPattern, pos_);
    if (k != std::string::npos) {
      pos_ = k + 1;
      return true;
    }
    if (buffer_.size() - pos_ >= kPattern.size()) pos_ = buffer_.size() - (kPattern.size() - 1);
    const std::size_t have = buffer_.size() - pos_;
    if (!ensure(have + 1)) {
      pos_ = buffer_.size();
      return false;
    }
  }
}

WarcReader::Parse WarcReader::parse_record(WarcRecord& out, std::string& consumed) {
  consumed.clear();
  if (!ensure(1)) return Parse::eof;
  std::string line;
  if (!read_line(line) || !is_magic(line)) {
    if (!started_) throw DataError("not a WARC archive (no WARC/1.0 magic at first record)");
    consumed = line;
    return Parse::malformed;
  }
  started_ = true;
  out = WarcRecord{};
  out.version = line;
  std::size_t header_bytes = 0;
  for (;;) {
    if (!read_line(line)) return Parse::malformed;
    header_bytes += line.size() + 2;
    consumed += line;
    consumed += "\r\n";
    if (line.empty()) break;
    if (header_bytes > kMaxHeaderBytes) return Parse::malformed;
    if ((line.front() == ' ' || line.front() == '\t') && !out.headers.empty()) {
      out.headers.back().second += " " + std::string(text::trim_ascii(line));
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string::npos) return Parse::malformed;
    out.headers.emplace_back(std::string(text::trim_ascii(std::string_view(line).substr(0, colon))),
                             std::string(text::trim_ascii(std::string_view(line).substr(colon + 1))));
  }
  const auto length_header = out.header("Content-Length");
  const auto length = length_header ? parse_size(*length_header) : std::nullopt;
  if (!length) return Parse::malformed;
  consumed.clear();
  if (!ensure(*length)) {
    consumed.assign(buffer_, pos_, std::string::npos);
    pos_ = buffer_.size();
    return Parse::malformed;
  }
  out.payload.assign(buffer_, pos_, *length);
  pos_ += *length;
  ensure(4);
  const std::string_view trailer = std::string_view(buffer_).substr(pos_, 4);
  if (trailer != "\r\n\r\n") {
    consumed = out.payload;
    consumed += trailer;
    pos_ += trailer.size();
    return Parse::malformed;
  }
  pos_ += 4;

  const auto type = out.header("WARC-Type");
  if (!type || !is_warc_record_type(*type)) return Parse::malformed;
  out.warc_type = std::string(*type);
  if (const auto uri = out.header("WARC-Target-URI")) {
    std::string_view u = *uri;
    if (u.size() >= 2 && u.front() == '<' && u.back() == '>') u = u.substr(1, u.size() - 2);
    out.target_uri = std::string(u);
  }
  if (const auto ct = out.header("Content-Type")) out.content_type = std::string(*ct);
  return Parse::ok;
}

std::optional<WarcRecord> WarcReader::next_plain() {
  WarcRecord record;
  std::string consumed;
  for (;;) {
    const Parse p = parse_record(record, consumed);
    if (p == Parse::eof) return std::nullopt;
    if (p == Parse::ok) {
      ++yielded_;
      return record;
    }
    ++skipped_;
    if (!consumed.empty()) push_back(std::string_view(consumed).substr(1));
    if (!seek_magic()) return std::nullopt;
  }
}

std::optional<WarcRecord> WarcReader::next_gzip() {
  auto& gz = static_cast<GzipSource&>(*source_);
  WarcRecord record;
  std::string consumed;
  for (;;) {
    bool garbage = false;
    const bool has_member = gz.start_member(garbage);
    if (garbage && started_) ++skipped_;
    if (garbage && !started_) throw DataError("not a WARC archive (no WARC/1.0 magic at first record)");
    if (!has_member) {
      if (!started_) throw DataError("not a WARC archive (no WARC/1.0 magic at first record)");
      return std::nullopt;
    }
    buffer_.clear();
    pos_ = 0;
    try {
      const Parse p = parse_record(record, consumed);
      if (p == Parse::eof) continue;
      if (p == Parse::malformed) {
        ++skipped_;
        gz.discard_member();
        continue;
      }
      if (ensure(1))
        throw DataError("whole-file gzip is not supported; expected one gzip member per WARC record");
      ++yielded_;
      return record;
    } catch (const CorruptMember&) {
      if (!started_) throw DataError("not a WARC archive (corrupt gzip member at first record)");
      ++skipped_;
      gz.abandon_member();
    }
  }
}

std::optional<WarcRecord> WarcReader::next() { return gzipped_ ? next_gzip() : next_plain(); }

std::vector<WarcRecord> read_all_records(const std::filesystem::path& path, std::size_t* skipped) {
  WarcReader reader(path);
  std::vector<WarcRecord> records;
  while (auto r = reader.next()) records.push_back(std::move(*r));
  if (skipped) *skipped = reader.skipped();
  return records;
}

std::optional<std::string> dechunk(std::string_view body) {
  std::string out;
  std::size_t pos = 0;
  for (;;) {
    const auto eol = body.find("\r\n", pos);
    if (eol == std::string_view::npos) return std::nullopt;
    std::string_view size_line = body.substr(pos, eol - pos);
    if (const auto semi = size_line.find(';'); semi != std::string_view::npos)
      size_line = size_line.substr(0, semi);
    const auto size = parse_size(size_line, 16);
    if (!size) return std::nullopt;
    pos = eol + 2;
    if (*size == 0) return out;  // trailers, if any, are ignored
    if (body.size() - pos < *size + 2) return std::nullopt;
    out.append(body.substr(pos, *size));
    pos += *size;
    if (body.substr(pos, 2) != "\r\n") return std::nullopt;
    pos += 2;
  }
}

std::optional<std::string> gunzip(std::string_view data) {
  z_stream strm{};
  if (inflateInit2(&strm, 16 + MAX_WBITS) != Z_OK) return std::nullopt;
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  strm.avail_in = static_cast<uInt>(data.size());
  std::string out;
  unsigned char buf[kChunk];
  int ret = Z_OK;
  while (ret != Z_STREAM_END) {
    strm.next_out = buf;
    strm.avail_out = sizeof buf;
    ret = inflate(&strm, Z_NO_FLUSH);
    if (ret != Z_OK && ret != Z_STREAM_END) {
      inflateEnd(&strm);
      return std::nullopt;
    }
    out.append(reinterpret_cast<const char*>(buf), sizeof buf - strm.avail_out);
  }
  inflateEnd(&strm);
  return out;
}

std::string gzip_member(std::string_view data) {
  z_stream strm{};
  if (deflateInit2(&strm, Z_BEST_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK)
    throw DataError("zlib deflate init failed");
  strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  strm.avail_in = static_cast<uInt>(data.size());
  std::string out;
  unsigned char buf[kChunk];
  int ret = Z_OK;
  while (ret != Z_STREAM_END) {
    strm.next_out = buf;
    strm.avail_out = sizeof buf;
    ret = deflate(&strm, Z_FINISH);
    out.append(reinterpret_cast<const char*>(buf), sizeof buf - strm.avail_out);
  }
  deflateEnd(&strm);
  return out;
}

namespace {

struct HttpMessage {
  std::vector<std::pair<std::string, std::string>> headers;
  std::string_view body;

  std::optional<std::string> header(std::string_view name) const {
    for (const auto& [k, v] : headers)
      if (text::ascii_lower(k) == name) return text::ascii_lower(v);
    return std::nullopt;
  }
};

std::optional<HttpMessage> parse_http(std::string_view payload) {
  if (!payload.starts_with("HTTP/")) return std::nullopt;
  std::size_t end = payload.find("\r\n\r\n");
  std::size_t body_start = end + 4;
  if (end == std::string_view::npos) {
    end = payload.find("\n\n");
    if (end == std::string_view::npos) return std::nullopt;
    body_start = end + 2;
  }
  HttpMessage msg;
  msg.body = payload.substr(body_start);
  std::string_view head = payload.substr(0, end);
  bool status_line = true;
  while (!head.empty()) {
    auto nl = head.find('\n');
    std::string_view line = head.substr(0, nl);
    head = nl == std::string_view::npos ? std::string_view{} : head.substr(nl + 1);
    if (line.ends_with('\r')) line.remove_suffix(1);
    if (status_line) {
      status_line = false;
      continue;
    }
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    msg.headers.emplace_back(std::string(text::trim_ascii(line.substr(0, colon))),
                             std::string(text::trim_ascii(line.substr(colon + 1))));
  }
  return msg;
}

}  // namespace

std::optional<HtmlDocument> html_response(const WarcRecord& record, HtmlFilterStats* stats) {
  HtmlFilterStats scratch;
  HtmlFilterStats& s = stats ? *stats : scratch;
  if (record.warc_type != "response" || !record.target_uri) {
    ++s.not_response;
    return std::nullopt;
  }
  const auto msg = parse_http(record.payload);
  if (!msg) {
    ++s.bad_http;
    return std::nullopt;
  }
  const auto content_type = msg->header("content-type");
  if (!content_type || (content_type->find("text/html") == std::string::npos &&
                        content_type->find("application/xhtml+xml") == std::string::npos)) {
    ++s.not_html;
    return std::nullopt;
  }
  std::string body(msg->body);
  if (const auto te = msg->header("transfer-encoding"); te && te->find("chunked") != std::string::npos) {
    auto decoded = dechunk(body);
    if (!decoded) {
      ++s.bad_chunking;
      return std::nullopt;
    }
    body = std::move(*decoded);
  }
  if (const auto ce = msg->header("content-encoding"); ce && !ce->empty() && *ce != "identity") {
    if (*ce != "gzip" && *ce != "x-gzip") {
      ++s.unsupported_encoding;
      return std::nullopt;
    }
    auto decoded = gunzip(body);
    if (!decoded) {
      ++s.unsupported_encoding;
      return std::nullopt;
    }
    body = std::move(*decoded);
  }
  ++s.accepted;
  return HtmlDocument{*record.target_uri, text::sanitize_utf8(body)};
}

std::vector<HtmlDocument> html_responses(std::span<const WarcRecord> records, HtmlFilterStats* stats) {
  std::vector<HtmlDocument> out;
  for (const auto& r : records)
    if (auto doc = html_response(r, stats)) out.push_back(std::move(*doc));
  return out;
}

std::string format_warc_record(const WarcRecordSpec& spec) {
  std::string out = "WARC/1.0\r\n";
  out += "WARC-Type: " + spec.warc_type + "\r\n";
  if (!spec.record_id.empty()) out += "WARC-Record-ID: <urn:uuid:" + spec.record_id + ">\r\n";
  out += "WARC-Date: 2021-01-01T00:00:00Z\r\n";
  if (spec.target_uri) out += "WARC-Target-URI: " + *spec.target_uri + "\r\n";
  out += "Content-Type: " + spec.content_type + "\r\n";
  out += "Content-Length: " + std::to_string(spec.declared_length.value_or(spec.payload.size())) + "\r\n";
  out += "\r\n";
  out += spec.payload;
  out += "\r\n\r\n";
  return out;
}

WarcWriter::WarcWriter(const std::filesystem::path& path, bool gzip_members)
    : out_(path, std::ios::binary | std::ios::trunc), gzip_(gzip_members) {
  if (!out_) throw IoError("cannot write WARC file " + path.string());
}

void WarcWriter::write(const WarcRecordSpec& spec) { write_raw(format_warc_record(spec)); }

void WarcWriter::write_raw(std::string_view bytes) {
  if (gzip_) {
    const std::string member = gzip_member(bytes);
    out_.write(member.data(), static_cast<std::streamsize>(member.size()));
  } else {
    out_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  }
  if (!out_) throw IoError("WARC write failed");
}

std::string http_response(std::string_view content_type, std::string_view body,
                          std::span<const std::pair<std::string, std::string>> extra_headers) {
  std::string out = "HTTP/1.1 200 OK\r\n";
  out += "Content-Type: ";
  out += content_type;
  out += "\r\n";
  bool chunked = false;
  for (const auto& [k, v] : extra_headers) {
    out += k + ": " + v + "\r\n";
    chunked = chunked || text::ascii_lower(k) == "transfer-encoding";
  }
  if (!chunked) out += "Content-Length: " + std::to_string(body.size()) + "\r\n";
  out += "\r\n";
  out += body;
  return out;
}

}  // namespace faqkit
