// pencils: generate constructions, count rich points, check the incidence
// chain and run scaling sweeps. Data goes to stdout (or --out), progress and
// timing to stderr.
//
// Exit codes: 0 success, 2 precondition violation or bad input, 3 a
// verification verdict came out false.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pencil/io.hpp"
#include "pencils.hpp"

using namespace pencil;
using pencil::io::json;

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitVerification = 3;

struct Common {
    std::string construction = "farey-shift";
    std::uint64_t n = 16;
    std::string d = "0";
    std::size_t m = 4;
    std::string centres;
    std::string out;
    std::string format = "json";
    unsigned threads = 1;
};

void add_common(CLI::App* sub, Common& c, bool with_construction = true) {
    if (with_construction)
        sub->add_option("--construction", c.construction, "farey-shift | symmetric | grid-footnote | m-pencil")
            ->check(CLI::IsMember({"farey-shift", "symmetric", "grid-footnote", "m-pencil"}));
    sub->add_option("--d", c.d, "log exponent as \"p/q\" or decimal");
    sub->add_option("--m", c.m, "number of pencils for m-pencil");
    sub->add_option("--centres", c.centres, "centres as inline JSON or a JSON file");
    sub->add_option("--out", c.out, "write data here instead of stdout");
    sub->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Errc::ParseError, what + ": " + e.what());
    }
}

/// Inline JSON if it looks like an array, otherwise a file name.
json inline_or_file(const std::string& arg, const std::string& what) {
    auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (arg[first] == '[' || arg[first] == '{')) return parse_json(arg, what);
    return parse_json(read_file(arg), what);
}

std::optional<std::vector<ProjPoint>> centres_of(const Common& c) {
    if (c.centres.empty()) return std::nullopt;
    return io::points_from_json(inline_or_file(c.centres, "centres"));
}

void emit(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + c.out + "'");
    f << text;
}

GraphConstruction graph_for(const Common& c) {
    switch (parse_construction(c.construction)) {
    case ConstructionKind::FareyShift:
        return build_farey_shift_construction(c.n, Rational::parse(c.d));
    case ConstructionKind::Symmetric:
    case ConstructionKind::MPencil:
        return build_symmetric_farey_construction(c.n);
    case ConstructionKind::GridFootnote:
        break;
    }
    throw Error(Errc::InvalidArgument, "construction '" + c.construction + "' has no bipartite graph");
}

PencilConfig config_for(const Common& c) {
    const auto centres = centres_of(c);
    switch (parse_construction(c.construction)) {
    case ConstructionKind::FareyShift: {
        auto g = build_farey_shift_construction(c.n, Rational::parse(c.d));
        if (!centres) return build_farey_pencil_config(g);
        return pencils_from_graph(g, *centres);
    }
    case ConstructionKind::Symmetric: {
        if (!centres) throw Error(Errc::InvalidArgument, "symmetric pencils need --centres");
        return pencils_from_graph(build_symmetric_farey_construction(c.n), *centres);
    }
    case ConstructionKind::MPencil:
        return build_m_pencil_config(c.m, c.n);
    case ConstructionKind::GridFootnote:
        return build_grid_footnote_config(c.n);
    }
    throw Error(Errc::InvalidArgument, "unknown construction");
}

std::string edges_csv(const GraphConstruction& g) {
    std::string s = "a,b\n";
    for (const auto& e : g.graph.edges()) s += io::csv_field(g.graph.a(e).str()) + "," + io::csv_field(g.graph.b(e).str()) + "\n";
    return s;
}

int run_construct(const Common& c) {
    const auto kind = parse_construction(c.construction);
    const bool pencils = kind == ConstructionKind::GridFootnote || kind == ConstructionKind::MPencil || !c.centres.empty();
    if (pencils) {
        auto cfg = config_for(c);
        std::cerr << "built " << cfg.label << " with " << cfg.pencils.size() << " pencils\n";
        emit(c, io::to_json(cfg).dump(2) + "\n");
        return 0;
    }
    auto g = graph_for(c);
    std::cerr << "built " << g.label << ": |A| = " << g.A().size() << ", |B| = " << g.B().size()
              << ", |E| = " << g.graph.edge_count() << "\n";
    emit(c, c.format == "csv" ? edges_csv(g) : io::to_json(g).dump(2) + "\n");
    return 0;
}

int run_rich(const Common& c, const std::string& config_file) {
    const auto start = std::chrono::steady_clock::now();
    PencilConfig cfg = config_file.empty() ? config_for(c) : io::pencil_config_from_json(parse_json(read_file(config_file), "pencil config"));
    auto report = rich_points(cfg, {.threads = c.threads});
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cerr << report.config_label << ": " << report.count << " rich points in " << ms << " ms\n";
    if (c.format == "csv")
        emit(c, std::string(io::kRichCsvHeader) + "\n" + io::rich_csv_row(report) + "\n");
    else
        emit(c, io::to_json(report).dump(2) + "\n");
    return 0;
}

int run_verify(const Common& c, const std::string& graph_file) {
    if (c.centres.empty()) throw Error(Errc::InvalidArgument, "verify-lemma needs --centres with two affine points");
    json cj = inline_or_file(c.centres, "centres");
    if (!cj.is_array() || cj.size() != 2 || !cj[0].is_array() || cj[0].size() != 2 || !cj[1].is_array() || cj[1].size() != 2)
        throw Error(Errc::InvalidArgument, "verify-lemma needs exactly two affine centres [[\"x1\",\"y1\"],[\"x2\",\"y2\"]]");
    AffineCentre c1{io::parse_rational(cj[0][0]), io::parse_rational(cj[0][1])};
    AffineCentre c2{io::parse_rational(cj[1][0]), io::parse_rational(cj[1][1])};
    GraphConstruction g = graph_file.empty() ? graph_for(c) : io::graph_construction_from_json(parse_json(read_file(graph_file), "graph"));
    auto report = verify_lemma_chain(g.graph, c1, c2);
    std::cerr << "I(P,L) = " << report.incidences << ", sum |N(a)|^2 = " << report.neighbourhood_square_sum << "\n";
    emit(c, io::to_json(report).dump(2) + "\n");
    return report.verdicts() ? 0 : kExitVerification;
}

std::vector<std::uint64_t> parse_n_list(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw Error(Errc::ParseError, "bad n value '" + tok + "'");
        out.push_back(std::stoull(tok));
    }
    return out;
}

int run_sweep(const Common& c, const std::string& n_list, bool timing, bool no_rich, bool no_op_sets) {
    SweepSpec spec;
    spec.construction = parse_construction(c.construction);
    spec.n_values = parse_n_list(n_list);
    spec.d = Rational::parse(c.d);
    spec.m = c.m;
    spec.centres = centres_of(c);
    spec.rich = !no_rich;
    spec.op_sets = !no_op_sets;
    spec.timing = timing;
    spec.threads = c.threads;
    const auto start = std::chrono::steady_clock::now();
    auto rows = sweep(spec);
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::cerr << rows.size() << " rows in " << ms << " ms\n";
    if (c.format == "csv") {
        std::ostringstream os;
        io::write_sweep_csv(os, rows);
        emit(c, os.str());
    } else {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(io::to_json(r));
        emit(c, arr.dump(2) + "\n");
    }
    return 0;
}

int run_fit(const Common& c, const std::string& in, const std::string& field, std::optional<double> exponent) {
    std::vector<SweepRow> rows;
    if (in.empty() || in == "-") {
        rows = io::read_sweep(std::cin);
    } else {
        std::ifstream f(in, std::ios::binary);
        if (!f) throw Error(Errc::InvalidArgument, "cannot open '" + in + "'");
        rows = io::read_sweep(f);
    }
    json out = io::to_json(fit_exponent(rows, field));
    out["field"] = field;
    if (exponent) {
        auto ratios = constant_ratios(rows, *exponent);
        out["constant_ratios"] = {{"exponent", *exponent},
                                  {"values", ratios},
                                  {"bounded_above", bounded_above(ratios, 0.05)},
                                  {"bounded_below", bounded_below(ratios, 0.05)}};
    }
    emit(c, out.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pencil configurations, rich points and restricted ratio sets"};
    app.require_subcommand(1);

    Common construct_opts, rich_opts, verify_opts, sweep_opts, fit_opts;

    auto* construct = app.add_subcommand("construct", "emit a construction as JSON (or CSV edge list)");
    add_common(construct, construct_opts);
    construct->add_option("--n", construct_opts.n, "size parameter")->required();

    std::string config_file;
    auto* rich = app.add_subcommand("rich-points", "count rich points of a pencil configuration");
    add_common(rich, rich_opts);
    rich->add_option("--n", rich_opts.n, "size parameter");
    rich->add_option("--config", config_file, "pencil config JSON file instead of a construction");

    std::string graph_file;
    auto* verify = app.add_subcommand("verify-lemma", "check the incidence counting chain for two centres");
    add_common(verify, verify_opts);
    verify->add_option("--n", verify_opts.n, "size parameter");
    verify->add_option("--graph", graph_file, "graph construction JSON file instead of a construction");

    std::string n_list;
    bool timing = false, no_rich = false, no_op_sets = false;
    auto* sw = app.add_subcommand("sweep", "one row per n");
    add_common(sw, sweep_opts);
    sw->add_option("--n", n_list, "comma-separated ascending n values")->required();
    sw->add_flag("--timing", timing, "fill wall_time_ms (output no longer reproducible)");
    sw->add_flag("--no-rich", no_rich, "skip rich-point counting");
    sw->add_flag("--no-op-sets", no_op_sets, "skip sum/ratio set sizes");

    std::string fit_in, fit_field = "edge_count";
    std::optional<double> fit_exponent_opt;
    auto* fit = app.add_subcommand("fit", "least-squares exponent of a sweep column");
    fit->add_option("--in", fit_in, "sweep CSV or JSON (default stdin)");
    fit->add_option("--field", fit_field, "edge_count | rich_count | wall_time_ms | max_ratio_set | max_pencil_size");
    fit->add_option("--ratio-exponent", fit_exponent_opt, "also report rich_count / n^e");
    fit->add_option("--out", fit_opts.out, "write data here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitPrecondition;
    }

    try {
        if (*construct) return run_construct(construct_opts);
        if (*rich) return run_rich(rich_opts, config_file);
        if (*verify) return run_verify(verify_opts, graph_file);
        if (*sw) return run_sweep(sweep_opts, n_list, timing, no_rich, no_op_sets);
        if (*fit) return run_fit(fit_opts, fit_in, fit_field, fit_exponent_opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    }
    return 0;
}
