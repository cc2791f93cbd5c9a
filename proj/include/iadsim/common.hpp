#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace iadsim {

// One scalar in a belief tuple or event payload.
using Scalar = std::variant<std::int64_t, double, std::string>;

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

inline double distance(const Point2& a, const Point2& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Error taxonomy shared across modules. Parse errors carry the 1-based line
// number of the offending input line.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& invariant)
        : std::runtime_error("validation failed: " + invariant) {}
};

class InvalidSpec : public std::runtime_error {
public:
    explicit InvalidSpec(const std::string& what) : std::runtime_error(what) {}
};

class EmptySample : public std::runtime_error {
public:
    EmptySample() : std::runtime_error("empty sample") {}
};

class EmptyVavpSet : public std::runtime_error {
public:
    EmptyVavpSet() : std::runtime_error("no VAVP points given") {}
};

class CycleGuardExceeded : public std::runtime_error {
public:
    explicit CycleGuardExceeded(int tick)
        : std::runtime_error("plan loop: more than 100 events processed in tick " +
                             std::to_string(tick)) {}
};

// Renders a real with 6 fractional digits. glibc printf rounds ties to even,
// which is the convention the event-log format pins down.
std::string format_real(double v);

std::string format_scalar(const Scalar& s);

}  // namespace iadsim
