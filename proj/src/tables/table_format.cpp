#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "tra/table.hpp"

namespace tra {

std::vector<std::vector<std::string>> printed_rows(const Table& t) {
    std::vector<std::vector<std::string>> out;
    out.reserve(t.size());
    for (const auto& r : t.rows()) {
        std::vector<std::string> cells;
        cells.reserve(r.size());
        for (const auto& term : r) {
            cells.push_back(to_string(term));
        }
        out.push_back(std::move(cells));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string format_table(const Table& t) {
    if (t.empty()) {
        return "<empty>\n";
    }
    if (t.heading().empty()) {
        return "<unit>\n";
    }
    const auto rows = printed_rows(t);
    std::vector<std::size_t> width;
    for (const auto& h : t.heading()) {
        width.push_back(h.size());
    }
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            width[i] = std::max(width[i], r[i].size());
        }
    }
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        os << '|';
        for (std::size_t i = 0; i < cells.size(); ++i) {
            os << ' ' << cells[i] << std::string(width[i] - cells[i].size(), ' ') << " |";
        }
        os << '\n';
    };
    line(t.heading());
    os << '|';
    for (auto w : width) {
        os << std::string(w + 2, '-') << '|';
    }
    os << '\n';
    for (const auto& r : rows) {
        line(r);
    }
    return os.str();
}

std::string table_json(const Table& t) {
    nlohmann::json j;
    j["heading"] = t.heading();
    j["rows"] = nlohmann::json::array();
    for (const auto& r : printed_rows(t)) {
        j["rows"].push_back(r);
    }
    return j.dump();
}

} // namespace tra
