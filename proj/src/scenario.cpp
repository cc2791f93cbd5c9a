#include "iadsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace iadsim::sim {

bool Scenario::in_episode(int tick, double* factor) const {
    for (const JammingEpisode& ep : episodes) {
        if (tick >= ep.start_tick && tick <= ep.end_tick) {
            if (factor) *factor = ep.factor;
            return true;
        }
    }
    return false;
}

Point2 Scenario::cluster_location(const lccc::Cluster& c, int tick) const {
    Point2 loc = c.location;
    int best_tick = -1;
    for (const Waypoint& wp : waypoints) {
        if (wp.cluster_id == c.id && wp.tick <= tick && wp.tick > best_tick) {
            loc = wp.location;
            best_tick = wp.tick;
        }
    }
    return loc;
}

namespace {

bool inside(const Scenario& s, const Point2& p) {
    return p.x >= 0.0 && p.x <= s.width && p.y >= 0.0 && p.y <= s.height;
}

}  // namespace

void Scenario::validate() const {
    if (simulation_time < 1) throw ValidationError("simulation_time must be >= 1");
    if (width <= 0.0 || height <= 0.0) throw ValidationError("world bounds must be positive");
    if (lccc_cadence < 1) throw ValidationError("lccc_cadence must be >= 1");
    detection.validate();
    srdr.validate();
    lccc.trapezoids.validate();

    std::vector<JammingEpisode> sorted = episodes;
    std::sort(sorted.begin(), sorted.end(),
              [](const JammingEpisode& a, const JammingEpisode& b) {
                  return a.start_tick < b.start_tick;
              });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const JammingEpisode& ep = sorted[i];
        if (ep.start_tick > ep.end_tick) throw ValidationError("episode start after end");
        if (!(ep.factor > 0.0 && ep.factor <= 1.0)) {
            throw ValidationError("episode factor must lie in (0, 1]");
        }
        if (i > 0 && ep.start_tick <= sorted[i - 1].end_tick) {
            throw ValidationError("jamming episodes must not overlap");
        }
    }

    for (const lccc::VavpPoint& v : vavps) {
        if (v.value <= 0.0) throw ValidationError("VAVP value must be > 0");
        if (!inside(*this, v.location)) throw ValidationError("VAVP outside world bounds");
    }
    for (const lccc::Cluster& c : clusters) {
        if (!inside(*this, c.location)) throw ValidationError("cluster outside world bounds");
        if (c.members.empty()) throw ValidationError("cluster must have at least one aircraft");
    }
    for (const Waypoint& wp : waypoints) {
        if (!inside(*this, wp.location)) throw ValidationError("waypoint outside world bounds");
        const bool known = std::any_of(clusters.begin(), clusters.end(),
                                       [&](const lccc::Cluster& c) { return c.id == wp.cluster_id; });
        if (!known) throw ValidationError("waypoint references unknown cluster");
    }
    for (const lccc::Interceptor& ic : interceptors) {
        if (!inside(*this, ic.location)) throw ValidationError("interceptor outside world bounds");
    }
    if (!clusters.empty() && vavps.empty()) {
        throw ValidationError("clusters given but no VAVP points");
    }
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_num(const std::string& s, int line_no) {
    try {
        size_t pos = 0;
        if (s == "inf") return std::numeric_limits<double>::infinity();
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "bad number '" + s + "'");
    }
}

long parse_int(const std::string& s, int line_no) {
    try {
        size_t pos = 0;
        long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line_no, "bad integer '" + s + "'");
    }
}

std::vector<lccc::Aircraft> parse_members(const std::string& s, int line_no) {
    std::vector<lccc::Aircraft> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        const size_t colon = item.find(':');
        lccc::Aircraft ac;
        if (colon == std::string::npos) {
            ac.id = item;
            ac.ranking = static_cast<int>(out.size()) + 1;
        } else {
            ac.id = item.substr(0, colon);
            ac.ranking = static_cast<int>(parse_int(item.substr(colon + 1), line_no));
        }
        out.push_back(std::move(ac));
    }
    return out;
}

lccc::Trapezoid parse_trapezoid(const std::string& s, int line_no) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_num(trim(item), line_no));
    if (v.size() != 4) throw ParseError(line_no, "trapezoid needs 4 abscissae");
    return lccc::Trapezoid{v[0], v[1], v[2], v[3]};
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
    Scenario scn;
    std::string section;
    std::string raw;
    std::string gir_text;
    int gir_first_line = 0;
    int line_no = 0;
    bool any_content = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line = trim(line.substr(0, hash));
        if (line.empty()) continue;
        any_content = true;

        if (line.front() == '[' && line.back() == ']') {
            section = line.substr(1, line.size() - 2);
            if (section == "GIR" && gir_first_line == 0) gir_first_line = line_no + 1;
            continue;
        }
        if (section.empty()) throw ParseError(line_no, "record before any [SECTION] header");

        if (section == "GIR") {
            gir_text += line;
            gir_text += '\n';
            continue;
        }

        if (section == "WORLD" || section == "DETECTION" || section == "FUZZY") {
            const size_t eq = line.find('=');
            if (eq == std::string::npos) throw ParseError(line_no, "expected key=value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (section == "WORLD") {
                if (key == "width") scn.width = parse_num(value, line_no);
                else if (key == "height") scn.height = parse_num(value, line_no);
                else if (key == "seed") scn.seed = static_cast<std::uint64_t>(parse_int(value, line_no));
                else if (key == "simulation_time") scn.simulation_time = static_cast<int>(parse_int(value, line_no));
                else if (key == "lccc_cadence") scn.lccc_cadence = static_cast<int>(parse_int(value, line_no));
                else if (key == "theta_low") scn.srdr.theta_low = parse_num(value, line_no);
                else if (key == "theta_high") scn.srdr.theta_high = parse_num(value, line_no);
                else throw ParseError(line_no, "unknown [WORLD] key '" + key + "'");
            } else if (section == "DETECTION") {
                if (key == "family") {
                    // combined on the params line
                    scn.detection.family = [&]() {
                        if (value == "normal") return stats::DistributionSpec::Family::Normal;
                        if (value == "triangular") return stats::DistributionSpec::Family::Triangular;
                        if (value == "uniform") return stats::DistributionSpec::Family::Uniform;
                        if (value == "exponential") return stats::DistributionSpec::Family::Exponential;
                        throw ParseError(line_no, "unknown detection family '" + value + "'");
                    }();
                } else if (key == "params") {
                    std::vector<double> p;
                    std::stringstream ss(value);
                    std::string item;
                    while (std::getline(ss, item, ',')) p.push_back(parse_num(trim(item), line_no));
                    scn.detection.p1 = p.size() > 0 ? p[0] : 0.0;
                    scn.detection.p2 = p.size() > 1 ? p[1] : 0.0;
                    scn.detection.p3 = p.size() > 2 ? p[2] : 0.0;
                } else {
                    throw ParseError(line_no, "unknown [DETECTION] key '" + key + "'");
                }
            } else {  // FUZZY
                if (key == "small") scn.lccc.trapezoids.small = parse_trapezoid(value, line_no);
                else if (key == "medium") scn.lccc.trapezoids.medium = parse_trapezoid(value, line_no);
                else if (key == "big") scn.lccc.trapezoids.big = parse_trapezoid(value, line_no);
                else if (key == "value_small") scn.lccc.value_small = parse_num(value, line_no);
                else if (key == "value_medium") scn.lccc.value_medium = parse_num(value, line_no);
                else if (key == "value_big") scn.lccc.value_big = parse_num(value, line_no);
                else if (key == "value_strike") scn.lccc.value_strike = parse_num(value, line_no);
                else if (key == "value_escort") scn.lccc.value_escort = parse_num(value, line_no);
                else throw ParseError(line_no, "unknown [FUZZY] key '" + key + "'");
            }
            continue;
        }

        const std::vector<std::string> tok = split_ws(line);
        if (section == "JAMMING") {
            if (tok.size() != 3) throw ParseError(line_no, "[JAMMING] record: start end factor");
            scn.episodes.push_back(JammingEpisode{static_cast<int>(parse_int(tok[0], line_no)),
                                                  static_cast<int>(parse_int(tok[1], line_no)),
                                                  parse_num(tok[2], line_no)});
        } else if (section == "VAVP") {
            if (tok.size() != 4) throw ParseError(line_no, "[VAVP] record: id x y value");
            scn.vavps.push_back(lccc::VavpPoint{
                tok[0], {parse_num(tok[1], line_no), parse_num(tok[2], line_no)},
                parse_num(tok[3], line_no)});
        } else if (section == "CLUSTER") {
            if (tok.size() != 6) {
                throw ParseError(line_no, "[CLUSTER] record: id x y mission count members");
            }
            lccc::Cluster c;
            c.id = tok[0];
            c.location = {parse_num(tok[1], line_no), parse_num(tok[2], line_no)};
            const auto mission = lccc::mission_from_string(tok[3]);
            if (!mission) throw ParseError(line_no, "mission must be Strike or Escort");
            c.mission = *mission;
            const long count = parse_int(tok[4], line_no);
            c.members = parse_members(tok[5], line_no);
            if (count != static_cast<long>(c.members.size())) {
                throw ParseError(line_no, "aircraft_count does not match member list length");
            }
            scn.clusters.push_back(std::move(c));
        } else if (section == "WAYPOINT") {
            if (tok.size() != 4) throw ParseError(line_no, "[WAYPOINT] record: cluster tick x y");
            scn.waypoints.push_back(Waypoint{tok[0], static_cast<int>(parse_int(tok[1], line_no)),
                                             {parse_num(tok[2], line_no), parse_num(tok[3], line_no)}});
        } else if (section == "INTERCEPTOR") {
            if (tok.size() != 3 && tok.size() != 4) {
                throw ParseError(line_no, "[INTERCEPTOR] record: id x y [0|1]");
            }
            lccc::Interceptor ic;
            ic.id = tok[0];
            ic.location = {parse_num(tok[1], line_no), parse_num(tok[2], line_no)};
            if (tok.size() == 4) ic.available = parse_int(tok[3], line_no) != 0;
            scn.interceptors.push_back(std::move(ic));
        } else {
            throw ParseError(line_no, "unknown section [" + section + "]");
        }
    }

    if (!any_content) throw ParseError(line_no == 0 ? 1 : line_no, "empty scenario file");

    if (!gir_text.empty()) {
        scn.gir = goals::parse_rules_text(gir_text, gir_first_line);
    }
    scn.validate();
    return scn;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario file: " + path);
    return parse_scenario(in);
}

}  // namespace iadsim::sim
