#include "minta/dns_log.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

namespace minta {

LogParseError::LogParseError(std::size_t line_number, const std::string& what)
    : std::runtime_error("line " + std::to_string(line_number) + ": " + what),
      line_number_(line_number) {}

bool is_valid_qname(std::string_view qname) {
    if (qname.empty() || qname.front() == '.' || qname.back() == '.') return false;
    std::size_t labels = 0;
    std::size_t label_len = 0;
    for (char c : qname) {
        if (c == '.') {
            if (label_len == 0) return false;
            ++labels;
            label_len = 0;
            continue;
        }
        const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '-';
        if (!ok) return false;
        ++label_len;
    }
    ++labels;  // final label
    return labels >= 2;
}

bool is_valid_ipv4(std::string_view ip) {
    int octets = 0;
    std::size_t pos = 0;
    while (pos <= ip.size()) {
        std::size_t dot = ip.find('.', pos);
        std::string_view part = ip.substr(pos, dot == std::string_view::npos ? std::string_view::npos : dot - pos);
        if (part.empty() || part.size() > 3) return false;
        int value = 0;
        for (char c : part) {
            if (c < '0' || c > '9') return false;
            value = value * 10 + (c - '0');
        }
        if (value > 255) return false;
        ++octets;
        if (dot == std::string_view::npos) break;
        pos = dot + 1;
        if (pos > ip.size()) return false;
    }
    return octets == 4;
}

namespace {

DnsLogRecord parse_line(std::string_view line, std::size_t line_number) {
    std::array<std::string_view, 4> fields;
    std::size_t start = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
            if (count == 4) throw LogParseError(line_number, "expected 4 tab-separated fields");
            fields[count++] = line.substr(start, i - start);
            start = i + 1;
        }
    }
    if (count != 4) {
        throw LogParseError(line_number, "expected 4 tab-separated fields, got " + std::to_string(count));
    }

    DnsLogRecord record;
    const auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(), record.timestamp);
    if (ec != std::errc{} || ptr != fields[0].data() + fields[0].size()) {
        throw LogParseError(line_number, "bad timestamp '" + std::string(fields[0]) + "'");
    }
    if (fields[1].empty()) throw LogParseError(line_number, "empty client id");
    if (!is_valid_qname(fields[2])) {
        throw LogParseError(line_number, "bad qname '" + std::string(fields[2]) + "'");
    }
    if (!is_valid_ipv4(fields[3])) {
        throw LogParseError(line_number, "bad ipv4 '" + std::string(fields[3]) + "'");
    }
    record.client_id = std::string(fields[1]);
    record.qname = std::string(fields[2]);
    record.resolved_ip = std::string(fields[3]);
    return record;
}

}  // namespace

std::vector<DnsLogRecord> parse_dns_log(std::istream& in, ParseMode mode, ParseStats* stats) {
    std::vector<DnsLogRecord> records;
    std::string line;
    std::size_t line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        try {
            records.push_back(parse_line(line, line_number));
            if (stats) ++stats->parsed;
        } catch (const LogParseError&) {
            if (mode == ParseMode::Strict) throw;
            if (stats) ++stats->skipped;
        }
    }
    return records;
}

std::vector<DnsLogRecord> parse_dns_log(const std::string& text, ParseMode mode, ParseStats* stats) {
    std::istringstream in(text);
    return parse_dns_log(in, mode, stats);
}

std::string to_line(const DnsLogRecord& record) {
    std::string out = std::to_string(record.timestamp);
    out += '\t';
    out += record.client_id;
    out += '\t';
    out += record.qname;
    out += '\t';
    out += record.resolved_ip;
    return out;
}

void write_dns_log(std::ostream& out, std::span<const DnsLogRecord> records) {
    for (const auto& record : records) {
        out << to_line(record) << '\n';
    }
}

std::string serialize_dns_log(std::span<const DnsLogRecord> records) {
    std::ostringstream out;
    write_dns_log(out, records);
    return out.str();
}

}  // namespace minta
