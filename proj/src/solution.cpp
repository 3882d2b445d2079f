#include "s2g/solution.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

namespace s2g {

namespace {

// For each column of `a`, the index of the same-named column in `b`.
std::optional<std::vector<std::size_t>> align(const SolutionTable& a, const SolutionTable& b) {
    if (a.columns.size() != b.columns.size()) return std::nullopt;
    auto sa = a.columns;
    auto sb = b.columns;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb || std::adjacent_find(sa.begin(), sa.end()) != sa.end()) return std::nullopt;
    std::vector<std::size_t> perm;
    for (const auto& c : a.columns) {
        perm.push_back(static_cast<std::size_t>(std::find(b.columns.begin(), b.columns.end(), c) - b.columns.begin()));
    }
    return perm;
}

std::string row_key(const Row& row, const std::vector<std::size_t>* perm) {
    std::string key;
    for (std::size_t i = 0; i < row.size(); ++i) {
        const Value& v = perm ? row.at((*perm)[i]) : row[i];
        std::string k = canonical_key(v);
        key += std::to_string(k.size());
        key += ':';
        key += k;
    }
    return key;
}

std::string row_text(const Row& row) {
    std::string out;
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out += '\t';
        out += std::holds_alternative<Unbound>(row[i]) ? "<unbound>" : cell_text(row[i]);
    }
    return out;
}

std::string escape_cell(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '\t': out += "\\t"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\\': out += "\\\\"; break;
            default: out += c;
        }
    }
    return out;
}

}  // namespace

bool solutions_equal(const SolutionTable& a, const SolutionTable& b) {
    auto perm = align(a, b);
    if (!perm || a.rows.size() != b.rows.size()) return false;
    if (a.ordered && b.ordered) {
        for (std::size_t r = 0; r < a.rows.size(); ++r) {
            for (std::size_t c = 0; c < a.columns.size(); ++c) {
                if (!same_term(a.rows[r].at(c), b.rows[r].at((*perm)[c]))) return false;
            }
        }
        return true;
    }
    std::vector<std::string> ka;
    std::vector<std::string> kb;
    for (const auto& row : a.rows) ka.push_back(row_key(row, nullptr));
    for (const auto& row : b.rows) kb.push_back(row_key(row, &*perm));
    std::sort(ka.begin(), ka.end());
    std::sort(kb.begin(), kb.end());
    return ka == kb;
}

std::string describe_difference(const SolutionTable& a, const SolutionTable& b) {
    if (solutions_equal(a, b)) return {};
    std::ostringstream out;
    auto perm = align(a, b);
    if (!perm) {
        out << "column sets differ: [";
        for (std::size_t i = 0; i < a.columns.size(); ++i) out << (i ? " " : "") << a.columns[i];
        out << "] vs [";
        for (std::size_t i = 0; i < b.columns.size(); ++i) out << (i ? " " : "") << b.columns[i];
        out << "]\n";
        return out.str();
    }
    out << "row counts: " << a.rows.size() << " vs " << b.rows.size() << "\n";
    if (a.ordered && b.ordered) {
        for (std::size_t r = 0; r < std::min(a.rows.size(), b.rows.size()); ++r) {
            Row aligned;
            for (std::size_t c = 0; c < a.columns.size(); ++c) aligned.push_back(b.rows[r].at((*perm)[c]));
            if (row_key(a.rows[r], nullptr) != row_key(aligned, nullptr)) {
                out << "first differing position " << r << ": " << row_text(a.rows[r]) << " vs " << row_text(aligned)
                    << "\n";
                break;
            }
        }
        return out.str();
    }
    std::map<std::string, std::pair<long, Row>> counts;
    for (const auto& row : a.rows) {
        auto& slot = counts[row_key(row, nullptr)];
        ++slot.first;
        slot.second = row;
    }
    for (const auto& row : b.rows) {
        Row aligned;
        for (std::size_t c = 0; c < a.columns.size(); ++c) aligned.push_back(row.at((*perm)[c]));
        auto& slot = counts[row_key(aligned, nullptr)];
        --slot.first;
        slot.second = aligned;
    }
    for (const auto& [key, slot] : counts) {
        if (slot.first > 0) out << "only in left (x" << slot.first << "): " << row_text(slot.second) << "\n";
        if (slot.first < 0) out << "only in right (x" << -slot.first << "): " << row_text(slot.second) << "\n";
    }
    return out.str();
}

std::string cell_text(const Value& value) {
    if (std::holds_alternative<Unbound>(value)) return {};
    if (const auto* iri = std::get_if<Iri>(&value)) return escape_cell(iri->str());
    if (const auto* v = std::get_if<VertexRef>(&value)) return vertex_iri(v->id).str();
    return escape_cell(lexical_form(std::get<Literal>(value)));
}

std::string format_tsv(const SolutionTable& table) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += '\t';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += '\t';
            out += cell_text(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string format_table(const SolutionTable& table) {
    std::vector<std::size_t> width;
    for (const auto& c : table.columns) width.push_back(c.size());
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : table.rows) {
        auto& line = cells.emplace_back();
        for (std::size_t i = 0; i < row.size(); ++i) {
            line.push_back(cell_text(row[i]));
            width[i] = std::max(width[i], line.back().size());
        }
    }
    auto rule = [&] {
        std::string s = "+";
        for (auto w : width) s += std::string(w + 2, '-') + "+";
        return s + "\n";
    };
    auto line = [&](const std::vector<std::string>& items) {
        std::string s = "|";
        for (std::size_t i = 0; i < items.size(); ++i) {
            s += " " + items[i] + std::string(width[i] - items[i].size(), ' ') + " |";
        }
        return s + "\n";
    };
    std::string out = rule() + line(table.columns) + rule();
    for (const auto& c : cells) out += line(c);
    out += rule();
    out += std::to_string(table.rows.size()) + (table.rows.size() == 1 ? " row\n" : " rows\n");
    return out;
}

}  // namespace s2g
