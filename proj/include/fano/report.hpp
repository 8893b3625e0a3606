#ifndef FANO_REPORT_HPP
#define FANO_REPORT_HPP

// JSON / text / CSV rendering of results. JSON is the primary form; text
// and CSV are derived from it.

#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fano/geom.hpp"
#include "fano/lring.hpp"
#include "fano/params.hpp"
#include "fano/yfy.hpp"

namespace fano {

using Json = nlohmann::ordered_json;

inline constexpr const char* kCsvSchema = "fano-report/1";

// 64-bit FNV-1a, as 16 hex digits.
inline std::string content_hash(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream o;
    o << std::hex << std::setw(16) << std::setfill('0') << h;
    return o.str();
}

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline Json to_json(const Integer& x) {
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Json to_json(const Rational& x) { return to_string(x); }

template <class T>
Json to_json(const std::optional<T>& x) {
    return x ? to_json(*x) : Json(nullptr);
}

inline Json to_json(const ParamSet& p) {
    return Json{{"n", p.n}, {"m", p.m}, {"d", p.d}, {"k", p.k}, {"regime", p.low() ? "low" : "high"}};
}

inline Json variety_json(const VarietySpec& Y) {
    Json forms = Json::array();
    for (const auto& t : Y.form_texts()) forms.push_back(t);
    return Json{{"field", Y.field().name()}, {"q", Y.q()},       {"ambient", Y.n()},
                {"dim", Y.m()},              {"degree", Y.d()},  {"forms", forms},
                {"hash", content_hash(Y.source().empty() ? Y.str() : Y.source())}};
}

inline Json to_json(const SlopeEstimate& s) {
    Json q = Json::array();
    for (long x : s.q_list) q.push_back(x);
    if (s.bottom) return Json{{"reldim", "BOTTOM"}, {"slope", nullptr}, {"samples", q}};
    return Json{{"reldim", s.rounded}, {"slope", std::round(s.slope * 1000) / 1000}, {"residual", std::round(s.residual * 1e6) / 1e6}, {"samples", q}};
}

inline Json to_json(const StratumCounts& c) {
    Json j{{"planes", c.planes},
           {"transversal", c.transversal},
           {"tangent", c.tangent},
           {"contained", c.contained},
           {"positive_dim", c.positive_dim},
           {"W", to_json(c.W)},
           {"V", to_json(c.V)},
           {"A", to_json(c.A)},
           {"B1", to_json(c.B1)},
           {"B2", to_json(c.B2)},
           {"R", to_json(c.R)},
           {"T1", to_json(c.T1)},
           {"T2", to_json(c.T2)},
           {"J", to_json(c.J)},
           {"P", to_json(c.P)},
           {"Q", to_json(c.Q)}};
    if (c.M) j["M"] = to_json(*c.M);
    if (c.N) j["N"] = to_json(*c.N);
    if (c.P_pos) j["P_positive_dim"] = to_json(*c.P_pos);
    if (c.Q_pos) j["Q_positive_dim"] = to_json(*c.Q_pos);
    j["bijection_failures"] = c.bijection_failures;
    j["conservation_failures"] = c.conservation_failures;
    Json ex = Json::array();
    for (auto id : c.excluded) ex.push_back(id);
    j["excluded_planes"] = ex;
    return j;
}

inline Json to_json(const ClassicReport& r) {
    Json rows = Json::array();
    for (const auto& x : r.rows)
        rows.push_back(Json{{"e", x.e},
                            {"Q", to_json(x.Q)},
                            {"N1", to_json(x.N1)},
                            {"N2", to_json(x.N2)},
                            {"lines", to_json(x.lines)},
                            {"sym2", to_json(x.sym2)},
                            {"sym2_rhs", to_json(x.sym_rhs)},
                            {"sym_ok", x.sym_ok},
                            {"hilb2", to_json(x.hilb2)},
                            {"hilb2_rhs", to_json(x.hilb_rhs)},
                            {"hilb_ok", x.hilb_ok}});
    return Json{{"smooth", r.smooth}, {"dim", r.m}, {"rows", rows}, {"ok", r.ok()}};
}

inline Json to_json(const ExtendedReport& r) {
    Json rows = Json::array(), warn = Json::array();
    for (const auto& w : r.warnings) warn.push_back(w);
    for (const auto& x : r.rows)
        rows.push_back(Json{{"e", x.e}, {"counts", to_json(x.counts)}, {"lhs", to_json(x.lhs)}, {"rhs", to_json(x.rhs)}, {"ok", x.ok}});
    return Json{{"params", to_json(r.params)}, {"warnings", warn}, {"rows", rows}, {"excluded", r.excluded()}, {"ok", r.ok()}};
}

inline Json to_json(const PartitionReport& r) {
    return Json{{"params", to_json(r.params)},
                {"e", r.e},
                {"counts", to_json(r.counts)},
                {"grassmann_w", to_json(r.gW)},
                {"grassmann_v", to_json(r.gV)},
                {"sym_w", to_json(r.symW)},
                {"sym_v", to_json(r.symV)},
                {"w_lhs", to_json(r.w_lhs)},
                {"w_rhs", to_json(r.w_rhs)},
                {"v_lhs", to_json(r.v_lhs)},
                {"v_rhs", to_json(r.v_rhs)},
                {"w_displayed_residual", to_json(r.w_displayed_residual)},
                {"v_displayed_residual", to_json(r.v_displayed_residual)},
                {"ok", r.ok()}};
}

inline Json to_json(const LWDiagnostics& d) {
    Json planes = Json::array();
    for (const auto& p : d.planes) {
        Json rows = Json::array();
        for (std::size_t j = 0; j < p.e_values.size(); ++j)
            rows.push_back(Json{{"e", p.e_values[j]},
                                {"points", p.direct[j]},
                                {"predicted", p.predicted[j]},
                                {"alpha", p.alpha[j]},
                                {"split", static_cast<bool>(p.divisible[j])}});
        planes.push_back(Json{{"id", p.id}, {"orbits", p.orbit_sizes}, {"rows", rows}});
    }
    return Json{{"params", to_json(d.params)},
                {"e", d.e_list},
                {"transversal_planes", d.planes.size()},
                {"alpha_max", d.alpha_max},
                {"count_mismatches", d.count_mismatches},
                {"alpha_bound_failures", d.alpha_bound_failures},
                {"alpha_split_failures", d.alpha_split_failures},
                {"alpha_subset_failures", d.alpha_vanish_failures},
                {"planes", planes},
                {"ok", d.ok()}};
}

inline Json to_json(const AveragedTable& t) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const auto& e = t.entries[i];
        Json ej{{"params", to_json(e.params)}};
        if (!e.error.empty()) {
            ej["error"] = e.error;
        } else {
            Json terms = Json::object();
            for (const auto& name : averaged_term_names()) {
                const auto& tv = e.terms.at(name);
                Json s = Json::object();
                for (const auto& [q, v] : tv.series) s[std::to_string(q)] = to_string(v);
                Json tj{{"value", to_json(tv.value)}, {"series", s}};
                if (tv.probe) tj["probe"] = to_json(*tv.probe);
                if (tv.bound) tj["bound"] = *tv.bound;
                if (!tv.note.empty()) tj["note"] = tv.note;
                terms[name] = tj;
            }
            ej["terms"] = terms;
        }
        ej["trend"] = to_json(t.residual_trend[i]);
        entries.push_back(ej);
    }
    return Json{{"q", t.q}, {"q_list", t.q_list}, {"entries", entries}};
}

// ---------------------------------------------------------------------------
// Text and CSV

namespace detail {

inline std::string scalar(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_null()) return "-";
    return j.dump();
}

inline void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
    } else if (j.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < j.size(); ++i) s += (i ? "," : "") + scalar(j[i]);
        out.emplace_back(prefix, s);
    } else {
        out.emplace_back(prefix, scalar(j));
    }
}

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
    return o + "\"";
}

} // namespace detail

// Aligned key/value lines.
inline std::string render_text(const Json& j) {
    std::vector<std::pair<std::string, std::string>> kv;
    detail::flatten(j, "", kv);
    std::size_t w = 0;
    for (const auto& [k, v] : kv) w = std::max(w, k.size());
    std::ostringstream o;
    for (const auto& [k, v] : kv) o << std::left << std::setw(static_cast<int>(w)) << k << "  " << v << "\n";
    return o.str();
}

// Per-row CSV when the report carries a table, key/value otherwise.
inline std::string render_csv(const std::string& command, const Json& header, const std::vector<std::string>& columns,
                              const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream o;
    o << "# schema: " << kCsvSchema << " command: " << command << "\n";
    std::vector<std::pair<std::string, std::string>> kv;
    detail::flatten(header, "", kv);
    for (const auto& [k, v] : kv) o << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) o << (i ? "," : "") << columns[i];
    o << "\n";
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) o << (i ? "," : "") << detail::csv_cell(r[i]);
        o << "\n";
    }
    return o.str();
}

inline std::string render_csv_kv(const std::string& command, const Json& j) {
    std::vector<std::pair<std::string, std::string>> kv;
    detail::flatten(j, "", kv);
    std::vector<std::vector<std::string>> rows;
    for (auto& [k, v] : kv) rows.push_back({k, v});
    return render_csv(command, Json::object(), {"key", "value"}, rows);
}

} // namespace fano

#endif
