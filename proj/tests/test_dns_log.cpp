#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "minta/dns_log.hpp"
#include "minta/rng.hpp"

using namespace minta;

TEST_CASE("parses the canonical record line") {
    auto records = parse_dns_log(std::string("100\tc1\twww.b.rwth-aachen.de\t10.0.0.1\n"));
    REQUIRE(records.size() == 1);
    CHECK(records[0].timestamp == 100);
    CHECK(records[0].client_id == "c1");
    CHECK(records[0].qname == "www.b.rwth-aachen.de");
    CHECK(records[0].resolved_ip == "10.0.0.1");
}

TEST_CASE("empty stream yields empty list") {
    CHECK(parse_dns_log(std::string("")).empty());
}

TEST_CASE("comments and blank lines are ignored") {
    auto records = parse_dns_log(std::string("# header\n\n7\tc\ta.b\t1.2.3.4\n"));
    REQUIRE(records.size() == 1);
    CHECK(records[0].timestamp == 7);
}

TEST_CASE("three-field line errors in strict mode with the line number") {
    const std::string text = "1\tc\ta.b\t1.2.3.4\n2\tc\ta.b\n";
    CHECK_THROWS_AS(parse_dns_log(text, ParseMode::Strict), LogParseError);
    try {
        parse_dns_log(text, ParseMode::Strict);
    } catch (const LogParseError& e) {
        CHECK(e.line_number() == 2);
    }
}

TEST_CASE("lenient mode skips and counts malformed lines") {
    ParseStats stats;
    auto records = parse_dns_log(std::string("1\tc\ta.b\t1.2.3.4\nbroken\n2\tc\tx.y\t1.2.3.5\n"),
                                 ParseMode::Lenient, &stats);
    CHECK(records.size() == 2);
    CHECK(stats.parsed == 2);
    CHECK(stats.skipped == 1);
}

TEST_CASE("qname validation") {
    CHECK(is_valid_qname("a.b"));
    CHECK(is_valid_qname("x7-z.example.com"));
    CHECK_FALSE(is_valid_qname("single"));
    CHECK_FALSE(is_valid_qname("Upper.Case"));
    CHECK_FALSE(is_valid_qname("a..b"));
    CHECK_FALSE(is_valid_qname(".a.b"));
    CHECK_FALSE(is_valid_qname("a.b."));
    CHECK_FALSE(is_valid_qname("sp ace.com"));
}

TEST_CASE("ipv4 validation") {
    CHECK(is_valid_ipv4("0.0.0.0"));
    CHECK(is_valid_ipv4("255.255.255.255"));
    CHECK_FALSE(is_valid_ipv4("256.0.0.1"));
    CHECK_FALSE(is_valid_ipv4("1.2.3"));
    CHECK_FALSE(is_valid_ipv4("1.2.3.4.5"));
    CHECK_FALSE(is_valid_ipv4("a.b.c.d"));
}

TEST_CASE("serialization round-trips bit-exactly") {
    // Property over seeded random records.
    Rng rng(42);
    std::vector<DnsLogRecord> records;
    const std::vector<std::string> domains = {"a.b", "x7.example.com", "w-w.co.uk", "q.r.s.t"};
    for (int i = 0; i < 200; ++i) {
        DnsLogRecord r;
        r.timestamp = static_cast<std::int64_t>(rng.next_u64() % 1000000);
        r.client_id = "c" + std::to_string(rng.next_int(0, 50));
        r.qname = rng.pick(domains);
        r.resolved_ip = std::to_string(rng.next_int(0, 255)) + ".0.0." + std::to_string(rng.next_int(0, 255));
        records.push_back(r);
    }
    const std::string text = serialize_dns_log(records);
    auto parsed = parse_dns_log(text);
    REQUIRE(parsed.size() == records.size());
    CHECK(parsed == records);
    CHECK(serialize_dns_log(parsed) == text);
}
