#pragma once

// Command dispatch for the bnchain tool.  run() takes the arguments after the
// program name and explicit streams so it can be driven from tests.
//
// Exit status: 0 success, 1 domain violation (invalid filling, parameters out
// of range, failed certificate), 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "bnchain/bnchain.hpp"

namespace bnchain::cli {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

using io::Json;

struct Options {
    std::string render = "json";
    std::string in;
    std::string out;
    Int budget = kDefaultEnumerationBudget;

    std::optional<Int> g, r, d, e, alpha, beta;
    std::string triple;
    std::string chain_file;
    std::string special;
    bool minimal_chain = false;

    std::string mode;
    bool layout = false;
    std::size_t limit = 0;
    int rank = 0;
    std::string p1, p2;
    bool confirm = false;
    int alpha_max = 0;
};

inline BnParams parse_triple(const std::string& text) {
    std::vector<Int> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            parts.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("expected g,r,d but got '" + text + "'");
        }
    }
    if (parts.size() != 3) throw UsageError("expected g,r,d but got '" + text + "'");
    return BnParams::make(parts[0], parts[1], parts[2]);
}

inline BnParams params_from(const Options& o) {
    if (!o.triple.empty()) {
        if (o.g || o.r || o.d) throw UsageError("give either --params or --g/--r/--d, not both");
        return parse_triple(o.triple);
    }
    if (!o.g || !o.r || !o.d) throw UsageError("parameters need --g, --r and --d (or --params g,r,d)");
    return BnParams::make(*o.g, *o.r, *o.d);
}

inline std::string read_input(const Options& o, std::istream& in) {
    if (o.in.empty() || o.in == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    std::ifstream file(o.in, std::ios::binary);
    if (!file) throw UsageError("cannot read '" + o.in + "'");
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline std::optional<ChainSpec> chain_from(const Options& o, int g) {
    if (!o.chain_file.empty() && !o.special.empty()) throw UsageError("give either --chain or --special, not both");
    if (!o.chain_file.empty()) {
        std::ifstream file(o.chain_file, std::ios::binary);
        if (!file) throw UsageError("cannot read '" + o.chain_file + "'");
        const std::string text{std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
        ChainSpec chain = io::chain_from_json(io::parse(text, "chain file"));
        if (chain.g() != g) {
            throw MalformedInputError("chain has g=" + std::to_string(chain.g()) + " but g=" + std::to_string(g) + " is needed");
        }
        return chain;
    }
    if (!o.special.empty()) {
        std::map<int, int> special;
        std::stringstream ss(o.special);
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto colon = item.find(':');
            try {
                if (colon == std::string::npos) throw std::invalid_argument(item);
                std::size_t u1 = 0, u2 = 0;
                const int component = std::stoi(item.substr(0, colon), &u1);
                const int order = std::stoi(item.substr(colon + 1), &u2);
                if (u1 != colon || u2 != item.size() - colon - 1) throw std::invalid_argument(item);
                if (!special.emplace(component, order).second) throw std::invalid_argument(item);
            } catch (const std::logic_error&) {
                throw UsageError("--special expects component:order[,component:order...], got '" + o.special + "'");
            }
        }
        return ChainSpec(g, std::move(special));
    }
    return std::nullopt;
}

inline std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

struct Result {
    int status = 0;
    std::string text;
};

inline bool ascii(const Options& o) { return o.render == "ascii"; }

inline std::string report_text(const ValidationReport& report) {
    std::string text = report.valid() ? "valid\n" : "invalid\n";
    for (const auto& v : report.violations) text += std::string(kind_name(v.kind)) + ": " + v.message + "\n";
    return text;
}

inline void require_json(const Options& o, const char* command) {
    if (ascii(o)) throw UsageError(std::string(command) + " has no ascii rendering; use --render json");
}

// -- subcommands ----------------------------------------------------------------

inline Result cmd_params(const Options& o) {
    const BnParams p = params_from(o);
    const auto oriented = canonical(p);
    Json dual = nullptr;
    try {
        dual = io::params_json(serre_dual(p));
    } catch (const OutOfRangeError&) {
        dual = nullptr;
    }
    const Int e = codimension(p);
    const auto kj = kj_decompose(e);
    const auto& op = oriented.params;
    const auto ranges = existence_ranges(op.alpha(), op.beta(), op.g);
    Json bound = nullptr;
    if (in_separation_range(op.alpha(), op.beta(), e)) bound = max_distance_bound(op.alpha(), op.beta(), e);
    Json doc{{"format_version", io::kFormatVersion},
             {"params", io::params_json(p)},
             {"rho", rho(p)},
             {"codimension", e},
             {"alpha", p.alpha()},
             {"beta", p.beta()},
             {"serre_dual", dual},
             {"oriented", io::params_json(op)},
             {"dualized", oriented.dualized},
             {"kj", {{"e", kj.e}, {"k", kj.k}, {"j", kj.j}}},
             {"ranges",
              {{"staircase", ranges.staircase}, {"separation", ranges.separation}, {"petri", ranges.petri}}},
             {"max_distance_bound", bound}};
    if (!ascii(o)) return {0, dump(doc)};
    std::string text;
    for (const auto& [key, value] : doc.items()) {
        if (key == "format_version") continue;
        text += key + ": " + value.dump() + "\n";
    }
    return {0, text};
}

inline Result filling_result(const Options& o, const Filling& f) {
    return {0, ascii(o) ? render_ascii(f) : dump(io::to_json(f))};
}

inline Result cmd_fill_construct(const Options& o) {
    if (!o.alpha || !o.beta) throw UsageError("fill-construct needs --alpha and --beta");
    const int alpha = static_cast<int>(*o.alpha), beta = static_cast<int>(*o.beta);
    SpotLayout layout;
    if (o.mode == "separation") {
        if (!o.e || o.g) throw UsageError("--mode separation takes --e (and not --g)");
        const int e = static_cast<int>(*o.e);
        if (o.layout) {
            if (alpha < 2) throw UsageError("layouts need alpha >= 2");
            layout = separation_layout(alpha, beta, e);
        } else {
            return filling_result(o, optimal_separation_filling(alpha, beta, e));
        }
    } else {
        if (!o.g || o.e) throw UsageError("--mode staircase takes --g (and not --e)");
        const int g = static_cast<int>(*o.g);
        if (!o.layout) return filling_result(o, staircase_filling(alpha, beta, g));
        layout = staircase_layout(alpha, beta, g);
    }
    require_json(o, "fill-construct --layout");
    return {0, dump(io::to_json(layout))};
}

inline Result cmd_fill_enumerate(const Options& o) {
    const auto oriented = canonical(params_from(o));
    const BnParams& p = oriented.params;
    const ChainSpec chain = chain_from(o, static_cast<int>(p.g)).value_or(ChainSpec(static_cast<int>(p.g)));
    std::vector<Filling> found = enumerate_fillings(
        p, chain, o.budget, o.limit == 0 ? std::numeric_limits<std::size_t>::max() : o.limit);
    if (ascii(o)) {
        std::string text = "count: " + std::to_string(found.size()) + "\n";
        for (const auto& f : found) text += "\n" + render_ascii(f);
        return {0, text};
    }
    Json list = Json::array();
    for (const auto& f : found) list.push_back(io::to_json(f));
    Json doc{{"format_version", io::kFormatVersion},
             {"params", io::params_json(p)},
             {"dualized", oriented.dualized},
             {"chain", io::to_json(chain)},
             {"count", found.size()},
             {"fillings", list}};
    return {0, dump(doc)};
}

inline Result cmd_fill_validate(const Options& o, std::istream& in) {
    const Json doc = io::parse(read_input(o, in), "input");
    if (doc.is_object() && doc.contains("entries")) {
        const WeightedFilling w = io::weighted_from_json(doc);
        if (o.minimal_chain) throw UsageError("--minimal applies to positive fillings only");
        const ChainSpec chain = chain_from(o, w.g()).value_or(ChainSpec(w.g()));
        const auto report = validate_weighted(w, chain);
        return {report.valid() ? 0 : 1, ascii(o) ? report_text(report) : dump(io::to_json(report))};
    }
    const Filling f = io::filling_from_json(doc);
    ChainSpec chain(f.g());
    if (auto given = chain_from(o, f.g())) {
        if (o.minimal_chain) throw UsageError("--minimal cannot be combined with --chain or --special");
        chain = *given;
    } else if (o.minimal_chain) {
        chain = minimal_torsion_chain(f);
    }
    const auto report = validate_positive(f, chain);
    return {report.valid() ? 0 : 1, ascii(o) ? render_ascii(f) + report_text(report) : dump(io::to_json(report))};
}

inline Result cmd_fill_transpose(const Options& o, std::istream& in) {
    return filling_result(o, transpose(io::filling_from_json(io::parse(read_input(o, in), "input"))));
}

/// Parameters implied by a filling's shape, checked against any given flags.
inline BnParams params_of_filling(const Options& o, const Filling& f) {
    const Int r = f.alpha() - 1;
    const Int d = f.g() - f.beta() + r;
    const BnParams p = BnParams::make(f.g(), r, d);
    if ((o.g || o.r || o.d || !o.triple.empty()) && params_from(o) != p) {
        throw UsageError("given parameters do not match the filling shape " + to_string(p));
    }
    return p;
}

inline Result invalid_filling(const Options& o, const Filling& f, const ValidationReport& report) {
    return {1, ascii(o) ? render_ascii(f) + report_text(report) : dump(io::to_json(report))};
}

inline Result cmd_series_from_filling(const Options& o, std::istream& in) {
    const Filling f = io::filling_from_json(io::parse(read_input(o, in), "input"));
    const BnParams p = params_of_filling(o, f);
    const ChainSpec chain = chain_from(o, f.g()).value_or(minimal_torsion_chain(f));
    if (const auto report = validate_positive(f, chain); !report.valid()) return invalid_filling(o, f, report);
    const LimitSeriesTable t = filling_to_series(f, p, chain);
    return {0, ascii(o) ? render_ascii(t) : dump(io::to_json(t))};
}

inline Result cmd_series_to_filling(const Options& o, std::istream& in) {
    const LimitSeriesTable t = io::series_from_json(io::parse(read_input(o, in), "input"));
    if (const auto report = check_series_invariants(t); !report.valid()) {
        return {1, ascii(o) ? report_text(report) : dump(io::to_json(report))};
    }
    return filling_result(o, series_to_filling(t));
}

inline Result cmd_certify_petri(const Options& o, std::istream& in) {
    require_json(o, "certify-petri");
    const Filling f = io::filling_from_json(io::parse(read_input(o, in), "input"));
    const BnParams p = params_of_filling(o, f);
    const ChainSpec chain = chain_from(o, f.g()).value_or(minimal_torsion_chain(f));
    if (const auto report = validate_positive(f, chain); !report.valid()) return invalid_filling(o, f, report);
    PetriCertificate cert = petri_certificate(f, p, chain);
    if (f.alpha() >= 2 && f.alpha() <= f.beta() && 2 * f.g() >= f.alpha() * f.beta() + 2 &&
        staircase_filling(f.alpha(), f.beta(), f.g()) == f) {
        check_petri_layout_counts(cert, staircase_layout(f.alpha(), f.beta(), f.g()));
    }
    return {0, dump(io::to_json(cert))};
}

inline Result cmd_certify_maxrank(const Options& o) {
    require_json(o, "certify-maxrank");
    return {0, dump(io::to_json(maxrank_m2_certificate(o.rank)))};
}

inline Result cmd_loci_distinct(const Options& o) {
    require_json(o, "loci-distinct");
    const BnParams p1 = parse_triple(o.p1), p2 = parse_triple(o.p2);
    const DistinctnessVerdict verdict = distinctness_check(p1, p2);
    Json doc = io::to_json(verdict);
    if (o.confirm) {
        if (verdict.verdict != Verdict::Distinct) throw UsageError("--confirm applies only to a Distinct verdict");
        const auto c = confirm_distinct_by_enumeration(p1, p2, o.budget);
        doc["confirmation"] = Json{{"confirmed", c.confirmed},
                                   {"chain", io::to_json(c.chain)},
                                   {"counterexample", c.counterexample ? io::to_json(*c.counterexample) : Json(nullptr)}};
        if (!c.confirmed) return {1, dump(doc)};
    }
    return {0, dump(doc)};
}

inline Result cmd_loci_inclusions(const Options& o) {
    require_json(o, "loci-inclusions");
    return {0, dump(io::to_json(inclusion_candidates(o.alpha_max)))};
}

inline void add_output_flags(CLI::App* sub, Options& o) {
    sub->add_option("--render", o.render, "Output format")->check(CLI::IsMember({"json", "ascii"}));
    sub->add_option("--out", o.out, "Write the result to FILE instead of standard output");
}

inline void add_param_flags(CLI::App* sub, Options& o) {
    sub->add_option("--g", o.g, "Genus");
    sub->add_option("--r", o.r, "Dimension of the series");
    sub->add_option("--d", o.d, "Degree");
    sub->add_option("--params", o.triple, "Parameters as g,r,d");
}

inline void add_chain_flags(CLI::App* sub, Options& o) {
    sub->add_option("--chain", o.chain_file, "Chain document (JSON)");
    sub->add_option("--special", o.special, "Torsion components as component:order[,...]");
}

inline void add_input_flag(CLI::App* sub, Options& o) {
    sub->add_option("--in", o.in, "Read the input document from FILE instead of standard input");
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    using namespace detail;
    Options o;
    CLI::App app{"Fillings, limit linear series and certificates on chains of elliptic curves", "bnchain"};
    app.require_subcommand(1, 1);

    auto* params = app.add_subcommand("params", "Numerology of (g, r, d)");
    add_param_flags(params, o);
    add_output_flags(params, o);

    auto* construct = app.add_subcommand("fill-construct", "Build a separation or staircase filling");
    construct->add_option("--mode", o.mode, "separation or staircase")->required()->check(CLI::IsMember({"separation", "staircase"}));
    construct->add_option("--alpha", o.alpha, "Columns")->required();
    construct->add_option("--beta", o.beta, "Rows")->required();
    construct->add_option("--e", o.e, "Number of doubled indices (separation)");
    construct->add_option("--g", o.g, "Number of indices (staircase)");
    construct->add_flag("--layout", o.layout, "Emit the reserved-spot layout instead of the filling");
    add_output_flags(construct, o);

    auto* enumerate = app.add_subcommand("fill-enumerate", "List every admissible filling on a chain");
    add_param_flags(enumerate, o);
    add_chain_flags(enumerate, o);
    enumerate->add_option("--budget", o.budget, "Largest rectangle (in boxes) to enumerate");
    enumerate->add_option("--limit", o.limit, "Stop after this many fillings (0 = all)");
    add_output_flags(enumerate, o);

    auto* validate = app.add_subcommand("fill-validate", "Check a positive or weighted filling");
    add_input_flag(validate, o);
    add_chain_flags(validate, o);
    validate->add_flag("--minimal", o.minimal_chain, "Validate against the weakest chain the filling needs");
    add_output_flags(validate, o);

    auto* transpose_cmd = app.add_subcommand("fill-transpose", "Swap rows and columns");
    add_input_flag(transpose_cmd, o);
    add_output_flags(transpose_cmd, o);

    auto* to_series = app.add_subcommand("series-from-filling", "Limit linear series of a filling");
    add_input_flag(to_series, o);
    add_param_flags(to_series, o);
    add_chain_flags(to_series, o);
    add_output_flags(to_series, o);

    auto* from_series = app.add_subcommand("series-to-filling", "Filling of a limit linear series table");
    add_input_flag(from_series, o);
    add_output_flags(from_series, o);

    auto* petri = app.add_subcommand("certify-petri", "Petri certificate for a filling");
    add_input_flag(petri, o);
    add_param_flags(petri, o);
    add_chain_flags(petri, o);
    add_output_flags(petri, o);

    auto* maxrank = app.add_subcommand("certify-maxrank", "Maximal rank certificate for quadrics");
    maxrank->add_option("--r", o.rank, "Dimension r >= 1")->required();
    add_output_flags(maxrank, o);

    auto* distinct = app.add_subcommand("loci-distinct", "Compare two loci of equal codimension");
    distinct->add_option("--p1", o.p1, "First locus as g,r,d")->required();
    distinct->add_option("--p2", o.p2, "Second locus as g,r,d")->required();
    distinct->add_flag("--confirm", o.confirm, "Confirm a Distinct verdict by enumeration");
    distinct->add_option("--budget", o.budget, "Enumeration budget for --confirm");
    add_output_flags(distinct, o);

    auto* inclusions = app.add_subcommand("loci-inclusions", "Candidate inclusions between loci");
    inclusions->add_option("--alpha-max", o.alpha_max, "Largest oriented dimension to list")->required();
    add_output_flags(inclusions, o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    Result result;
    try {
        if (params->parsed()) result = cmd_params(o);
        else if (construct->parsed()) result = cmd_fill_construct(o);
        else if (enumerate->parsed()) result = cmd_fill_enumerate(o);
        else if (validate->parsed()) result = cmd_fill_validate(o, in);
        else if (transpose_cmd->parsed()) result = cmd_fill_transpose(o, in);
        else if (to_series->parsed()) result = cmd_series_from_filling(o, in);
        else if (from_series->parsed()) result = cmd_series_to_filling(o, in);
        else if (petri->parsed()) result = cmd_certify_petri(o, in);
        else if (maxrank->parsed()) result = cmd_certify_maxrank(o);
        else if (distinct->parsed()) result = cmd_loci_distinct(o);
        else result = cmd_loci_inclusions(o);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const MalformedInputError& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        // out of range, budget, certificate and arithmetic failures
        const Json doc{{"format_version", io::kFormatVersion}, {"error", e.what()}};
        err << "error: " << e.what() << "\n";
        out << dump(doc);
        return 1;
    }

    if (o.out.empty()) {
        out << result.text;
    } else {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << o.out << "'\n";
            return 2;
        }
        file << result.text;
    }
    return result.status;
}

} // namespace bnchain::cli
