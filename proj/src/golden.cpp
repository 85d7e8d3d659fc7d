#include "crucial/golden.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace crucial::golden {

using nlohmann::json;

bool Cell::consistent_with(std::uint64_t observed, bool observed_is_lower_bound) const {
    switch (kind) {
    case Kind::unknown:
        return true;
    case Kind::exact:
        return observed_is_lower_bound ? observed <= value : observed == value;
    case Kind::lower_bound:
        return observed_is_lower_bound || observed >= value;
    }
    return true;
}

std::string Cell::to_string() const {
    switch (kind) {
    case Kind::unknown: return "?";
    case Kind::exact: return std::to_string(value);
    case Kind::lower_bound: return ">=" + std::to_string(value);
    }
    return "?";
}

const Row* Table::row(int n) const {
    auto it = rows.find(n);
    return it == rows.end() ? nullptr : &it->second;
}

namespace {

std::uint64_t parse_count(const std::string& text, const std::string& where) {
    if (text.empty() || !std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }))
        throw invalid_input("golden fixture: bad count '" + text + "' in " + where);
    return std::stoull(text);
}

// A cell is an integer, ">=N", "?" or null, or an object {"value": ..., "source": ...}.
Cell parse_cell(const json& j, const std::string& inherited, const std::string& where) {
    Cell cell;
    const json* value = &j;
    std::string source = inherited;
    if (j.is_object()) {
        value = &j.at("value");
        if (j.contains("source"))
            source = j.at("source").get<std::string>();
    }
    if (value->is_null())
        return cell;
    if (value->is_number_unsigned()) {
        cell.kind = Cell::Kind::exact;
        cell.value = value->get<std::uint64_t>();
    } else if (value->is_string()) {
        const auto text = value->get<std::string>();
        if (text == "?")
            return cell;
        if (text.rfind(">=", 0) == 0) {
            cell.kind = Cell::Kind::lower_bound;
            cell.value = parse_count(text.substr(2), where);
        } else {
            cell.kind = Cell::Kind::exact;
            cell.value = parse_count(text, where);
        }
    } else {
        throw invalid_input("golden fixture: unsupported cell in " + where);
    }
    if (source.empty())
        throw invalid_input("golden fixture: cell without provenance in " + where);
    cell.provenance = std::move(source);
    return cell;
}

std::vector<PositionSpec> parse_classes(const json& j) {
    std::vector<PositionSpec> out;
    for (const auto& c : j)
        out.push_back(PositionSpec::parse(c.get<std::string>()));
    if (out.empty())
        throw invalid_input("golden fixture: entry without classes");
    return out;
}

} // namespace

Fixtures Fixtures::parse(std::string_view json_text) {
    Fixtures f;
    try {
        const json doc = json::parse(json_text);
        for (const auto& t : doc.at("tables")) {
            Table table;
            table.classes = parse_classes(t.at("classes"));
            table.name = t.value("name", table.classes.front().to_string());
            table.note = t.value("note", "");
            const std::string table_source = t.value("source", "");
            for (const auto& r : t.at("rows")) {
                const int n = r.at("n").get<int>();
                const std::string source = r.value("source", table_source);
                const std::string where = table.name + " n=" + std::to_string(n);
                Row row;
                if (r.contains("total"))
                    row.total = parse_cell(r.at("total"), source, where + " total");
                if (r.contains("sym"))
                    row.up_to_symmetry = parse_cell(r.at("sym"), source, where + " sym");
                if (r.contains("rc"))
                    row.rc_invariant = parse_cell(r.at("rc"), source, where + " rc");
                if (!table.rows.emplace(n, std::move(row)).second)
                    throw invalid_input("golden fixture: duplicate row " + where);
            }
            f.tables_.push_back(std::move(table));
        }
        if (doc.contains("minimum_lengths")) {
            for (const auto& m : doc.at("minimum_lengths")) {
                MinimumLength ml;
                ml.classes = parse_classes(m.at("classes"));
                ml.length = m.at("length").get<int>();
                ml.count = m.at("count").get<std::uint64_t>();
                ml.provenance = m.value("source", "");
                if (ml.provenance.empty())
                    throw invalid_input("golden fixture: minimum length without provenance");
                f.minimum_lengths_.push_back(std::move(ml));
            }
        }
    } catch (const json::exception& ex) {
        throw invalid_input(std::string("golden fixture: ") + ex.what());
    }
    return f;
}

Fixtures Fixtures::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw invalid_input("cannot open golden fixture " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const Fixtures& Fixtures::builtin() {
    static const Fixtures f = parse(builtin_fixture_text());
    return f;
}

const Table* Fixtures::find(const PositionSpec& spec) const {
    for (const auto& t : tables_)
        if (std::find(t.classes.begin(), t.classes.end(), spec) != t.classes.end())
            return &t;
    return nullptr;
}

const MinimumLength* Fixtures::minimum_length(const PositionSpec& spec) const {
    for (const auto& m : minimum_lengths_)
        if (std::find(m.classes.begin(), m.classes.end(), spec) != m.classes.end())
            return &m;
    return nullptr;
}

} // namespace crucial::golden
