#include <doctest.h>

#include "faqkit/error.hpp"
#include "faqkit/warc.hpp"
#include "helpers.hpp"

using namespace faqkit;
using namespace faqkit::testing;

namespace {

std::vector<std::string> types_of(const std::vector<WarcRecord>& records) {
  std::vector<std::string> t;
  for (const auto& r : records) t.push_back(r.warc_type);
  return t;
}

}  // namespace

TEST_SUITE("warc") {
  TEST_CASE("plain and per-record gzip archives yield the same records") {
    const auto expected = load_json(fixture("warc/faq.expected.json"));
    std::size_t skipped = 99;
    const auto plain = read_all_records(fixture("warc/faq.warc"), &skipped);
    CHECK(skipped == 0);
    const auto gz = read_all_records(fixture("warc/faq.warc.gz"));
    REQUIRE(plain.size() == expected["records"].get<std::size_t>());
    CHECK(types_of(plain) == expected["record_types"].get<std::vector<std::string>>());
    REQUIRE(gz.size() == plain.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
      CHECK(gz[i].payload == plain[i].payload);
      CHECK(gz[i].target_uri == plain[i].target_uri);
    }
  }

  TEST_CASE("a record with an overlong Content-Length is skipped, neighbours survive") {
    WarcReader reader(fixture("warc/truncated.warc"));
    std::vector<WarcRecord> records;
    while (auto r = reader.next()) records.push_back(*r);
    CHECK(reader.yielded() == 2);
    CHECK(reader.skipped() == 1);
    REQUIRE(records.size() == 2);
    CHECK(records[1].target_uri == "https://www.northwind-ferries.org/faq");
  }

  TEST_CASE("non-WARC input and whole-file gzip are fatal") {
    TempDir dir("warc");
    spit(dir / "x.warc", "hello\r\n\r\n");
    CHECK_THROWS_AS(read_all_records(dir / "x.warc"), DataError);
    CHECK_THROWS_AS(read_all_records(dir / "missing.warc"), DataError);
    WarcRecordSpec a, b;
    a.payload = "one";
    a.record_id = "1";
    b.payload = "two";
    b.record_id = "2";
    spit(dir / "whole.warc.gz", gzip_member(format_warc_record(a) + format_warc_record(b)));
    CHECK_THROWS_AS(read_all_records(dir / "whole.warc.gz"), DataError);
  }

  TEST_CASE("format then parse round trip") {
    TempDir dir("warc");
    WarcRecordSpec s;
    s.target_uri = "https://e.example.com/";
    s.payload = std::string("bin\0ary\r\n\r\nWARC/1.0 inside", 25);
    s.record_id = "abc";
    {
      WarcWriter w(dir / "r.warc", false);
      w.write(s);
      w.write(s);
    }
    const auto records = read_all_records(dir / "r.warc");
    REQUIRE(records.size() == 2);
    CHECK(records[0].payload == s.payload);
    CHECK(records[1].target_uri == "https://e.example.com/");
    CHECK(records[0].header("content-length") == std::to_string(s.payload.size()));
  }

  TEST_CASE("http helpers") {
    CHECK(dechunk("3\r\nabc\r\n2;ext=1\r\nde\r\n0\r\n\r\n") == "abcde");
    CHECK_FALSE(dechunk("5\r\nab\r\n"));
    CHECK(gunzip(gzip_member("payload")) == "payload");
    CHECK_FALSE(gunzip("not gzip"));
  }

  TEST_CASE("html filter") {
    WarcRecord r;
    r.warc_type = "response";
    r.target_uri = "https://e.example.com/";
    HtmlFilterStats stats;
    r.payload = http_response("text/html; charset=utf-8", "<p>x</p>");
    REQUIRE(html_response(r, &stats));
    CHECK(html_response(r)->html == "<p>x</p>");
    r.payload = http_response("application/pdf", "%PDF");
    CHECK_FALSE(html_response(r, &stats));
    const std::pair<std::string, std::string> br[] = {{"Content-Encoding", "br"}};
    r.payload = http_response("text/html", "zz", br);
    CHECK_FALSE(html_response(r, &stats));
    r.warc_type = "request";
    CHECK_FALSE(html_response(r, &stats));
    CHECK(stats.accepted == 1);
    CHECK(stats.not_html == 1);
    CHECK(stats.unsupported_encoding == 1);
    CHECK(stats.not_response == 1);
  }
}
