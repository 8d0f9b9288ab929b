#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace minta {

// One resolution event as seen in a passive DNS log.
struct DnsLogRecord {
    std::int64_t timestamp = 0;
    std::string client_id;
    std::string qname;        // lowercase ASCII, dot-separated labels
    std::string resolved_ip;  // IPv4 dotted quad

    bool operator==(const DnsLogRecord&) const = default;
};

enum class ParseMode { Strict, Lenient };

struct ParseStats {
    std::size_t parsed = 0;
    std::size_t skipped = 0;
};

// True iff the name has >= 2 labels, each nonempty and matching [a-z0-9-].
bool is_valid_qname(std::string_view qname);

bool is_valid_ipv4(std::string_view ip);

// Line-oriented format: `timestamp<TAB>client_id<TAB>qname<TAB>resolved_ip`,
// '#'-prefixed comment lines and blank lines ignored. Strict mode throws
// LogParseError naming the offending line; Lenient skips and counts it.
std::vector<DnsLogRecord> parse_dns_log(std::istream& in,
                                        ParseMode mode = ParseMode::Strict,
                                        ParseStats* stats = nullptr);

std::vector<DnsLogRecord> parse_dns_log(const std::string& text,
                                        ParseMode mode = ParseMode::Strict,
                                        ParseStats* stats = nullptr);

// Serialized form round-trips bit-exactly through parse_dns_log.
std::string to_line(const DnsLogRecord& record);

void write_dns_log(std::ostream& out, std::span<const DnsLogRecord> records);

std::string serialize_dns_log(std::span<const DnsLogRecord> records);

class LogParseError : public std::runtime_error {
public:
    LogParseError(std::size_t line_number, const std::string& what);
    std::size_t line_number() const { return line_number_; }

private:
    std::size_t line_number_;
};

}  // namespace minta
