#include "addcomb/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "addcomb/errors.hpp"

namespace addcomb {

namespace {

Coord parse_coord(const std::string& token) {
    Coord value{};
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("invalid integer '" + token + "'");
    return value;
}

PointSet finish(int dim, std::vector<Point> pts) {
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ParseError("duplicate point");
    return PointSet::from_sorted_unique(dim, std::move(sorted));
}

} // namespace

PointSet parse_pointset_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<Point> pts;
    int dim = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string token;
        Point p;
        bool comment = false;
        while (ls >> token) {
            if (p.empty() && token.front() == '#') {
                comment = true;
                break;
            }
            p.push_back(parse_coord(token));
        }
        if (comment || p.empty()) continue;
        if (dim == 0)
            dim = static_cast<int>(p.size());
        else if (static_cast<int>(p.size()) != dim)
            throw ParseError("inconsistent dimension");
        pts.push_back(std::move(p));
    }
    if (dim == 0) throw ParseError("no data lines");
    return finish(dim, std::move(pts));
}

PointSet parse_pointset_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("dim") || !j.contains("points"))
        throw ParseError("expected {\"dim\": d, \"points\": [...]}");
    if (!j["dim"].is_number_integer()) throw ParseError("dim must be an integer");
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw ParseError("dim must be >= 1");
    if (!j["points"].is_array()) throw ParseError("points must be an array");
    std::vector<Point> pts;
    for (const auto& row : j["points"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw ParseError("every point must hold dim integers");
        Point p;
        p.reserve(row.size());
        for (const auto& c : row) {
            if (!c.is_number_integer()) throw ParseError("coordinates must be integers");
            p.push_back(c.get<Coord>());
        }
        pts.push_back(std::move(p));
    }
    if (pts.empty()) throw ParseError("no points");
    return finish(dim, std::move(pts));
}

PointSet read_pointset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_pointset_json(text);
    return parse_pointset_text(text);
}

std::string format_pointset_text(const PointSet& a) {
    std::string out;
    for (const Point& p : a) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i > 0) out += ' ';
            out += std::to_string(p[i]);
        }
        out += '\n';
    }
    return out;
}

std::string format_pointset_json(const PointSet& a) {
    nlohmann::ordered_json j;
    j["dim"] = a.dim();
    auto rows = nlohmann::ordered_json::array();
    for (const Point& p : a) rows.push_back(p);
    j["points"] = std::move(rows);
    return j.dump() + "\n";
}

std::string format_pointset_csv(const PointSet& a) {
    std::string out;
    for (const Point& p : a) {
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (i > 0) out += ',';
            out += std::to_string(p[i]);
        }
        out += '\n';
    }
    return out;
}

} // namespace addcomb
