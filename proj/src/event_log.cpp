#include "iadsim/event_log.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "iadsim/common.hpp"

namespace iadsim {

bool operator==(const LogRecord& a, const LogRecord& b) {
    return a.tick == b.tick && a.agent == b.agent && a.kind == b.kind && a.fields == b.fields;
}

std::string to_line(const LogRecord& rec) {
    std::string out = std::to_string(rec.tick);
    out += '\t';
    out += rec.agent;
    out += '\t';
    out += rec.kind;
    out += '\t';
    bool first = true;
    for (const auto& [k, v] : rec.fields) {
        if (!first) out += ';';
        out += k;
        out += '=';
        out += v;
        first = false;
    }
    return out;
}

LogRecord parse_line(const std::string& line, int line_no) {
    LogRecord rec;
    size_t t1 = line.find('\t');
    if (t1 == std::string::npos) throw ParseError(line_no, "missing tick field");
    size_t t2 = line.find('\t', t1 + 1);
    if (t2 == std::string::npos) throw ParseError(line_no, "missing agent field");
    size_t t3 = line.find('\t', t2 + 1);
    if (t3 == std::string::npos) throw ParseError(line_no, "missing kind field");

    const std::string tick_str = line.substr(0, t1);
    try {
        size_t pos = 0;
        rec.tick = std::stoi(tick_str, &pos);
        if (pos != tick_str.size()) throw std::invalid_argument(tick_str);
    } catch (const std::exception&) {
        throw ParseError(line_no, "bad tick value '" + tick_str + "'");
    }
    if (rec.tick < 0) throw ParseError(line_no, "negative tick");

    rec.agent = line.substr(t1 + 1, t2 - t1 - 1);
    rec.kind = line.substr(t2 + 1, t3 - t2 - 1);
    if (rec.agent.empty()) throw ParseError(line_no, "empty agent field");
    if (rec.kind.empty()) throw ParseError(line_no, "empty kind field");

    const std::string payload = line.substr(t3 + 1);
    size_t pos = 0;
    while (pos < payload.size()) {
        size_t semi = payload.find(';', pos);
        if (semi == std::string::npos) semi = payload.size();
        const std::string pair = payload.substr(pos, semi - pos);
        size_t eq = pair.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "field without '=': " + pair);
        rec.fields.emplace_back(pair.substr(0, eq), pair.substr(eq + 1));
        pos = semi + 1;
    }
    return rec;
}

std::string serialize_log(const std::vector<LogRecord>& records) {
    std::string out;
    for (const LogRecord& rec : records) {
        out += to_line(rec);
        out += '\n';
    }
    return out;
}

std::vector<LogRecord> parse_log(std::istream& in) {
    std::vector<LogRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        records.push_back(parse_line(line, line_no));
    }
    return records;
}

std::vector<LogRecord> parse_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open log file: " + path);
    return parse_log(in);
}

void write_log_file(const std::string& path, const std::vector<LogRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write log file: " + path);
    out << serialize_log(records);
}

}  // namespace iadsim
