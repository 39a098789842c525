#include "tra/table.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tra {

namespace {

constexpr const char* kCanonicalPrefix = "_R";

class Canonicalizer {
public:
    Term operator()(const Term& t) {
        if (t.is_ground()) {
            return t;
        }
        if (t.is_variable()) {
            auto it = names_.find(t.name());
            if (it == names_.end()) {
                it = names_
                         .emplace(t.name(), Term::variable(kCanonicalPrefix +
                                                           std::to_string(names_.size() + 1)))
                         .first;
            }
            return it->second;
        }
        std::vector<Term> args;
        args.reserve(t.arity());
        for (const auto& a : t.args()) {
            args.push_back((*this)(a));
        }
        return Term::compound(t.name(), std::move(args));
    }

private:
    std::map<std::string, Term> names_;
};

} // namespace

bool is_canonical_name(const std::string& name) {
    return name.size() > 2 && name.compare(0, 2, kCanonicalPrefix) == 0 &&
           std::all_of(name.begin() + 2, name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Row canonical_row(std::span<const Term> row) {
    Canonicalizer c;
    Row out;
    out.reserve(row.size());
    for (const auto& t : row) {
        out.push_back(c(t));
    }
    return out;
}

Row make_row(std::span<const std::string> heading, const Bindings& b) {
    Row raw;
    raw.reserve(heading.size());
    for (const auto& h : heading) {
        raw.push_back(b.resolve(Term::variable(h)));
    }
    return canonical_row(raw);
}

Row make_row(std::span<const std::string> heading, const Substitution& s) {
    Row raw;
    raw.reserve(heading.size());
    for (const auto& h : heading) {
        raw.push_back(s.apply(Term::variable(h)));
    }
    return canonical_row(raw);
}

Table::Table(std::vector<std::string> heading, std::vector<Row> rows) : heading_(std::move(heading)) {
    VarSet seen;
    for (const auto& h : heading_) {
        if (!seen.insert(h).second) {
            throw std::invalid_argument("duplicate heading variable " + h);
        }
        if (is_canonical_name(h)) {
            throw std::invalid_argument("heading variable name " + h + " is reserved");
        }
    }
    for (auto& r : rows) {
        if (r.size() != heading_.size()) {
            throw std::invalid_argument("row width " + std::to_string(r.size()) +
                                        " does not match heading width " +
                                        std::to_string(heading_.size()));
        }
        rows_.insert(canonical_row(r));
    }
}

Table Table::top() { return Table({}, {Row{}}); }

std::optional<std::size_t> Table::column(const std::string& var) const {
    auto it = std::find(heading_.begin(), heading_.end(), var);
    if (it == heading_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - heading_.begin());
}

Substitution Table::substitution(const Row& row) const {
    std::map<std::string, Term> m;
    for (std::size_t i = 0; i < heading_.size(); ++i) {
        m.emplace(heading_[i], row[i]);
    }
    return Substitution(std::move(m));
}

Table intersect(const Table& s, const Table& t) {
    std::vector<std::string> heading = s.heading();
    for (const auto& h : t.heading()) {
        if (!s.column(h)) {
            heading.push_back(h);
        }
    }
    std::vector<Row> rows;
    const VarSet avoid(heading.begin(), heading.end());
    for (const auto& rs : s.rows()) {
        // Both sides use canonical _R names, so each row gets its own fresh copy.
        const Row left = rename_apart(rs, avoid);
        for (const auto& rt : t.rows()) {
            const Row right = rename_apart(rt, avoid);
            Bindings b;
            bool ok = true;
            for (std::size_t i = 0; ok && i < left.size(); ++i) {
                ok = b.unify(Term::variable(s.heading()[i]), left[i]);
            }
            for (std::size_t i = 0; ok && i < right.size(); ++i) {
                ok = b.unify(Term::variable(t.heading()[i]), right[i]);
            }
            if (ok) {
                rows.push_back(make_row(heading, b));
            }
        }
    }
    return Table(std::move(heading), std::move(rows));
}

namespace {

std::set<Row> rows_in_order(const Table& t, const std::vector<std::string>& order) {
    std::vector<std::size_t> perm;
    perm.reserve(order.size());
    for (const auto& v : order) {
        perm.push_back(*t.column(v));
    }
    std::set<Row> out;
    for (const auto& r : t.rows()) {
        Row p;
        p.reserve(r.size());
        for (auto i : perm) {
            p.push_back(r[i]);
        }
        out.insert(canonical_row(p));
    }
    return out;
}

} // namespace

bool table_equal(const Table& s, const Table& t) {
    if (s.empty() || t.empty()) {
        return s.empty() && t.empty();
    }
    std::vector<std::string> hs = s.heading();
    std::vector<std::string> ht = t.heading();
    std::sort(hs.begin(), hs.end());
    std::sort(ht.begin(), ht.end());
    if (hs != ht || s.size() != t.size()) {
        return false;
    }
    return rows_in_order(s, hs) == rows_in_order(t, hs);
}

} // namespace tra
