#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace iadsim {

// One line of the append-only run log. Kinds used by the agents:
// belief | event | mode | priority | assignment | dropped | violation.
// Unknown kinds round-trip untouched so newer logs stay readable.
struct LogRecord {
    int tick = 0;
    std::string agent;
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;
};

bool operator==(const LogRecord& a, const LogRecord& b);

// tick<TAB>agent<TAB>kind<TAB>k1=v1;k2=v2
std::string to_line(const LogRecord& rec);
LogRecord parse_line(const std::string& line, int line_no);

std::string serialize_log(const std::vector<LogRecord>& records);
std::vector<LogRecord> parse_log(std::istream& in);
std::vector<LogRecord> parse_log_file(const std::string& path);
void write_log_file(const std::string& path, const std::vector<LogRecord>& records);

}  // namespace iadsim
