#pragma once

#include "k3fib/mordell_weil.hpp"
#include "k3fib/pipeline.hpp"
#include "k3fib/weierstrass.hpp"

#include "json.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace k3fib {

using json = nlohmann::json;

/// Malformed or unreadable input file.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TableFormat { Text, Csv, Json };

inline TableFormat parse_table_format(const std::string& s)
{
    if (s == "text") {
        return TableFormat::Text;
    }
    if (s == "csv") {
        return TableFormat::Csv;
    }
    if (s == "json") {
        return TableFormat::Json;
    }
    throw InputError("unknown table format '" + s + "'");
}

inline json record_to_json(const FibrationRecord& r)
{
    return {{"id", r.id},
            {"niemeier", r.niemeier},
            {"assignment", r.assignment},
            {"n_root", type_name(r.n_root)},
            {"rank", r.mw_rank},
            {"torsion", r.torsion.to_string()},
            {"w_index", to_string(r.w_index)},
            {"fingerprint", r.fingerprint}};
}

inline json table_to_json(const ClassificationTable& t)
{
    json rows = json::array();
    for (const auto& r : t.records) {
        rows.push_back(record_to_json(r));
    }
    json skipped = json::array();
    for (const auto& s : t.skipped) {
        skipped.push_back({{"niemeier", s.niemeier}, {"assignment", s.assignment}, {"reason", s.reason}});
    }
    return {{"assignments", t.assignments}, {"fibrations", rows}, {"skipped", skipped}};
}

namespace detail {

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + "\"";
}

inline std::string pad(const std::string& s, std::size_t w)
{
    return s.size() >= w ? s : s + std::string(w - s.size(), ' ');
}

} // namespace detail

inline void write_table(std::ostream& os, const ClassificationTable& t, TableFormat fmt)
{
    const std::vector<std::string> header{"id", "niemeier", "assignment", "n_root", "rank", "torsion", "w_index",
                                          "fingerprint"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : t.records) {
        rows.push_back({r.id, r.niemeier, r.assignment, type_name(r.n_root), std::to_string(r.mw_rank),
                        r.torsion.to_string(), to_string(r.w_index), r.fingerprint});
    }
    switch (fmt) {
    case TableFormat::Json:
        os << table_to_json(t).dump(2) << "\n";
        return;
    case TableFormat::Csv:
        for (std::size_t c = 0; c < header.size(); ++c) {
            os << (c ? "," : "") << header[c];
        }
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                os << (c ? "," : "") << detail::csv_field(row[c]);
            }
            os << "\n";
        }
        return;
    case TableFormat::Text: {
        std::vector<std::size_t> width(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) {
            width[c] = header[c].size();
            for (const auto& row : rows) {
                width[c] = std::max(width[c], row[c].size());
            }
        }
        auto line = [&](const std::vector<std::string>& row) {
            std::string s;
            for (std::size_t c = 0; c < row.size(); ++c) {
                s += (c ? "  " : "") + (c + 1 == row.size() ? row[c] : detail::pad(row[c], width[c]));
            }
            os << s << "\n";
        };
        line(header);
        for (const auto& row : rows) {
            line(row);
        }
        os << rows.size() << " fibrations from " << t.assignments << " assignments\n";
        return;
    }
    }
}

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(path + ": " + e.what());
    }
}

/// Expected table: either a bare array of rows or {"rows": [...]}, each row with id, niemeier, n_root, rank,
/// torsion.
inline std::vector<TableRow> table_rows_from_json(const json& j)
{
    const json& arr = j.is_object() && j.contains("rows") ? j.at("rows") : j;
    if (!arr.is_array()) {
        throw InputError("expected table must be an array of rows");
    }
    std::vector<TableRow> out;
    try {
        for (const auto& r : arr) {
            out.push_back(make_row(r.at("id").get<std::string>(), r.at("niemeier").get<std::string>(),
                                   r.at("n_root").get<std::string>(), r.at("rank").get<int>(),
                                   r.at("torsion").get<std::string>()));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad table row: ") + e.what());
    } catch (const LatticeError& e) {
        throw InputError(std::string("bad table row: ") + e.what());
    }
    return out;
}

inline json table_rows_to_json(const std::vector<TableRow>& rows)
{
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"id", r.id}, {"niemeier", r.niemeier}, {"n_root", r.n_root}, {"rank", r.rank},
                       {"torsion", r.torsion}});
    }
    return {{"rows", arr}};
}

struct ModelInput {
    std::string name;
    std::string variable = "t";
    bool k3 = true;
    WeierstrassModel model;
};

/// {"a1": "...", ..., "a6": "..."}; missing coefficients are zero.
inline ModelInput model_from_json(const json& j)
{
    ModelInput in;
    try {
        in.name = j.value("name", std::string());
        in.variable = j.value("variable", std::string("t"));
        in.k3 = j.value("k3", true);
        auto coeff = [&](const char* key) {
            return j.contains(key) ? parse_polynomial(j.at(key).get<std::string>(), in.variable) : Polynomial();
        };
        in.model = {coeff("a1"), coeff("a2"), coeff("a3"), coeff("a4"), coeff("a6")};
    } catch (const json::exception& e) {
        throw InputError(std::string("bad model: ") + e.what());
    } catch (const LatticeError& e) {
        throw InputError(std::string("bad model: ") + e.what());
    }
    return in;
}

namespace detail {

inline int component_from_json(const RootType& t, const json& f)
{
    if (f.contains("component")) {
        return f.at("component").get<int>();
    }
    const std::string side = f.at("side").get<std::string>();
    if (t.family != Family::D) {
        throw InputError("'side' is only meaningful for D fibers");
    }
    if (side == "zero") {
        return 0;
    }
    if (side == "near") {
        return 1;
    }
    if (side == "far") {
        return 2;
    }
    if (side == "far2") {
        return 3;
    }
    throw InputError("unknown side '" + side + "'");
}

inline SectionData section_from_json(const json& j)
{
    SectionData s;
    s.po = Integer(j.value("po", 0));
    for (const auto& f : j.at("fibers")) {
        RootType t = RootType::parse(f.at("type").get<std::string>());
        s.hits.push_back({t, component_from_json(t, f)});
    }
    return s;
}

} // namespace detail

/// Section file: {"chi": 2, "po": 0, "fibers": [{"type": "D8", "side": "near"}, ...]}, optionally with a second
/// section under "q" and the intersection "pq".
struct SectionInput {
    int chi = kChi;
    SectionData p;
    std::optional<SectionData> q;
    Integer pq = 0;
};

inline SectionInput sections_from_json(const json& j)
{
    SectionInput in;
    try {
        in.chi = j.value("chi", kChi);
        in.p = detail::section_from_json(j);
        if (j.contains("q")) {
            in.q = detail::section_from_json(j.at("q"));
            in.pq = Integer(j.value("pq", 0));
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("bad section file: ") + e.what());
    } catch (const LatticeError& e) {
        throw InputError(std::string("bad section file: ") + e.what());
    }
    return in;
}

} // namespace k3fib
