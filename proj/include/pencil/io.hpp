#pragma once

// JSON and CSV forms of constructions, pencil configurations and reports.
// Every exact quantity travels as a decimal string ("p" or "p/q"); only
// exponent fits carry floating-point numbers.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "pencil/constructions.hpp"
#include "pencil/error.hpp"
#include "pencil/experiments.hpp"
#include "pencil/incidence.hpp"
#include "pencil/rich_points.hpp"

namespace pencil::io {

using json = nlohmann::json;

inline constexpr std::string_view kSweepCsvHeader =
    "n,d,construction,edge_count,ratio_set_sizes,rich_count,pencil_sizes,wall_time_ms";
inline constexpr std::string_view kRichCsvHeader = "label,m,sizes,count,infinite_count,excluded_centres";

template <class H>
json triple_json(const H& h) {
    auto s = h.to_strings();
    return json::array({s[0], s[1], s[2]});
}

inline BigInt parse_bigint(const json& j) {
    if (!j.is_string()) throw Error(Errc::ParseError, "expected a decimal string, got " + j.dump());
    Rational r = Rational::parse(j.get<std::string>());
    if (!r.is_integer()) throw Error(Errc::ParseError, "expected an integer, got " + j.dump());
    return r.num();
}

inline Rational parse_rational(const json& j) {
    if (!j.is_string()) throw Error(Errc::ParseError, "expected a rational string, got " + j.dump());
    return Rational::parse(j.get<std::string>());
}

template <class H>
H triple_from_json(const json& j) {
    if (!j.is_array() || j.size() != 3) throw Error(Errc::ParseError, "expected [\"X\",\"Y\",\"Z\"], got " + j.dump());
    return H(parse_bigint(j[0]), parse_bigint(j[1]), parse_bigint(j[2]));
}

/// A centre given as ["x","y"] (affine, rationals) or ["X","Y","Z"]
/// (homogeneous, integers).
inline ProjPoint point_from_json(const json& j) {
    if (j.is_array() && j.size() == 2) return ProjPoint::affine(parse_rational(j[0]), parse_rational(j[1]));
    return triple_from_json<ProjPoint>(j);
}

inline std::vector<ProjPoint> points_from_json(const json& j) {
    if (!j.is_array()) throw Error(Errc::ParseError, "expected an array of points");
    std::vector<ProjPoint> out;
    for (const auto& p : j) out.push_back(point_from_json(p));
    return out;
}

inline json to_json(const PencilConfig& cfg) {
    json pencils = json::array();
    for (const auto& p : cfg.pencils) {
        json lines = json::array();
        for (const auto& l : p.lines()) lines.push_back(triple_json(l));
        pencils.push_back({{"centre", triple_json(p.centre())}, {"lines", std::move(lines)}});
    }
    return {{"label", cfg.label}, {"pencils", std::move(pencils)}};
}

inline PencilConfig pencil_config_from_json(const json& j) {
    try {
        std::vector<Pencil> pencils;
        for (const auto& p : j.at("pencils")) {
            std::vector<ProjLine> lines;
            for (const auto& l : p.at("lines")) lines.push_back(triple_from_json<ProjLine>(l));
            pencils.emplace_back(triple_from_json<ProjPoint>(p.at("centre")), std::move(lines));
        }
        return PencilConfig(j.value("label", std::string{}), std::move(pencils));
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("pencil config: ") + e.what());
    }
}

inline json to_json(const GraphConstruction& c) {
    json a = json::array(), b = json::array(), edges = json::array();
    for (const auto& v : c.A().elements()) a.push_back(v.str());
    for (const auto& v : c.B().elements()) b.push_back(v.str());
    for (const auto& [i, k] : c.graph.edges()) edges.push_back(json::array({i, k}));
    return {{"label", c.label}, {"n", c.n}, {"d", c.d.str()}, {"A", std::move(a)}, {"B", std::move(b)}, {"edges", std::move(edges)}};
}

inline GraphConstruction graph_construction_from_json(const json& j) {
    try {
        std::vector<Rational> a, b;
        for (const auto& v : j.at("A")) a.push_back(parse_rational(v));
        for (const auto& v : j.at("B")) b.push_back(parse_rational(v));
        std::vector<Edge> edges;
        for (const auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());
        GraphConstruction c;
        c.label = j.value("label", std::string{});
        c.kind = "custom";
        c.n = j.value("n", std::uint64_t{0});
        c.d = j.contains("d") ? parse_rational(j.at("d")) : Rational(0);
        c.graph = BipartiteGraph(GroundSet(std::move(a)), GroundSet(std::move(b)), std::move(edges));
        return c;
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, std::string("graph construction: ") + e.what());
    }
}

inline json to_json(const RichPointReport& r) {
    json pts = json::array(), excl = json::array();
    for (const auto& p : r.points) pts.push_back(triple_json(p));
    for (const auto& p : r.excluded_centres) excl.push_back(triple_json(p));
    return {{"label", r.config_label},
            {"m", r.pencil_sizes.size()},
            {"pencil_sizes", r.pencil_sizes},
            {"count", r.count},
            {"infinite_count", r.infinite_count},
            {"excluded_centres", r.excluded_centres.size()},
            {"excluded", std::move(excl)},
            {"points", std::move(pts)}};
}

inline json to_json(const LemmaReport& r) {
    json out = {{"swapped", r.swapped},
                {"a_size", r.a_size},
                {"b_size", r.b_size},
                {"edge_count", r.edge_count},
                {"neighbourhood_square_sum", r.neighbourhood_square_sum.str()},
                {"incidences", r.incidences},
                {"point_count", r.point_count},
                {"line_count", r.line_count},
                {"ratio_set_sizes", {r.ratio_set_1, r.ratio_set_2}},
                {"witness_count", r.witness_count},
                {"witness_failures", r.witness_failures},
                {"verdicts",
                 {{"incidence_bound", r.incidence_bound},
                  {"cauchy_schwarz", r.cauchy_schwarz},
                  {"witnesses", r.witnesses}}},
                {"szemeredi_trotter_sanity", r.szemeredi_trotter}};
    out["ratio_constant"] = r.ratio_constant ? json(*r.ratio_constant) : json(nullptr);
    return out;
}

inline json to_json(const ExponentFit& f) {
    return {{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}, {"n_range", {f.n_min, f.n_max}}};
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

template <class T>
std::string join_list(const std::vector<T>& v) {
    std::string out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ';';
        out += std::to_string(v[k]);
    }
    return out;
}

inline std::string rich_csv_row(const RichPointReport& r) {
    return csv_field(r.config_label) + "," + std::to_string(r.pencil_sizes.size()) + "," + join_list(r.pencil_sizes) +
           "," + std::to_string(r.count) + "," + std::to_string(r.infinite_count) + "," +
           std::to_string(r.excluded_centres.size());
}

inline std::string sweep_csv_row(const SweepRow& r) {
    return std::to_string(r.n) + "," + csv_field(r.d.str()) + "," + csv_field(r.construction) + "," +
           std::to_string(r.edge_count) + "," + join_list(r.ratio_set_sizes) + "," +
           (r.rich_count ? std::to_string(*r.rich_count) : std::string{}) + "," + join_list(r.pencil_sizes) + "," +
           std::to_string(r.wall_time_ms);
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kSweepCsvHeader << '\n';
    for (const auto& r : rows) os << sweep_csv_row(r) << '\n';
}

inline json to_json(const SweepRow& r) {
    json out = {{"n", r.n},
                {"d", r.d.str()},
                {"construction", r.construction},
                {"edge_count", r.edge_count},
                {"ratio_set_sizes", r.ratio_set_sizes},
                {"pencil_sizes", r.pencil_sizes},
                {"wall_time_ms", r.wall_time_ms}};
    out["rich_count"] = r.rich_count ? json(*r.rich_count) : json(nullptr);
    return out;
}

inline SweepRow sweep_row_from_json(const json& j) {
    SweepRow r;
    r.n = j.at("n").get<std::uint64_t>();
    r.d = parse_rational(j.at("d"));
    r.construction = j.at("construction").get<std::string>();
    r.edge_count = j.at("edge_count").get<std::uint64_t>();
    r.ratio_set_sizes = j.at("ratio_set_sizes").get<std::vector<std::uint64_t>>();
    if (!j.at("rich_count").is_null()) r.rich_count = j.at("rich_count").get<std::uint64_t>();
    r.pencil_sizes = j.at("pencil_sizes").get<std::vector<std::uint64_t>>();
    r.wall_time_ms = j.value("wall_time_ms", std::uint64_t{0});
    return r;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        char c = line[k];
        if (quoted) {
            if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                fields.back() += '"';
                ++k;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    return fields;
}

inline std::uint64_t parse_u64(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw Error(Errc::ParseError, "expected a nonnegative integer, got '" + s + "'");
    return std::stoull(s);
}

inline std::vector<std::uint64_t> parse_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    if (s.empty()) return out;
    std::size_t start = 0;
    for (;;) {
        auto semi = s.find(';', start);
        out.push_back(parse_u64(s.substr(start, semi - start)));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return out;
}

} // namespace detail

inline std::vector<SweepRow> read_sweep_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kSweepCsvHeader)
        throw Error(Errc::ParseError, "sweep CSV must start with the header '" + std::string(kSweepCsvHeader) + "'");
    std::vector<SweepRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        auto f = detail::split_csv_line(line);
        if (f.size() != 8) throw Error(Errc::ParseError, "sweep CSV row needs 8 fields: " + line);
        SweepRow r;
        r.n = detail::parse_u64(f[0]);
        r.d = Rational::parse(f[1]);
        r.construction = f[2];
        r.edge_count = detail::parse_u64(f[3]);
        r.ratio_set_sizes = detail::parse_list(f[4]);
        if (!f[5].empty()) r.rich_count = detail::parse_u64(f[5]);
        r.pencil_sizes = detail::parse_list(f[6]);
        r.wall_time_ms = detail::parse_u64(f[7]);
        rows.push_back(std::move(r));
    }
    return rows;
}

/// Sweep rows from either CSV (with header) or a JSON array.
inline std::vector<SweepRow> read_sweep(std::istream& is) {
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        std::vector<SweepRow> rows;
        try {
            for (const auto& j : json::parse(text)) rows.push_back(sweep_row_from_json(j));
        } catch (const json::exception& e) {
            throw Error(Errc::ParseError, std::string("sweep JSON: ") + e.what());
        }
        return rows;
    }
    std::istringstream ss(text);
    return read_sweep_csv(ss);
}

/// Edge list as little-endian u32 pairs, no header.
inline void write_edges_binary(std::ostream& os, const std::vector<Edge>& edges) {
    for (const auto& [i, j] : edges) {
        unsigned char buf[8];
        for (int b = 0; b < 4; ++b) {
            buf[b] = static_cast<unsigned char>((i >> (8 * b)) & 0xff);
            buf[4 + b] = static_cast<unsigned char>((j >> (8 * b)) & 0xff);
        }
        os.write(reinterpret_cast<const char*>(buf), 8);
    }
}

inline std::vector<Edge> read_edges_binary(std::istream& is) {
    std::vector<Edge> edges;
    unsigned char buf[8];
    while (is.read(reinterpret_cast<char*>(buf), 8)) {
        std::uint32_t i = 0, j = 0;
        for (int b = 0; b < 4; ++b) {
            i |= static_cast<std::uint32_t>(buf[b]) << (8 * b);
            j |= static_cast<std::uint32_t>(buf[4 + b]) << (8 * b);
        }
        edges.emplace_back(i, j);
    }
    if (is.gcount() != 0) throw Error(Errc::ParseError, "binary edge stream length is not a multiple of 8 bytes");
    return edges;
}

} // namespace pencil::io
