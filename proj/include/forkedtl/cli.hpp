/** Command-line front end. */

#pragma once

#include "forkedtl/angle_analysis.hpp"
#include "forkedtl/forked_tl.hpp"
#include "forkedtl/graph_catalog.hpp"
#include "forkedtl/relations.hpp"
#include "forkedtl/tower.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace forkedtl::cli {

enum class Command { graphs, tower, verify, angle, fusion, classify, angleset };
enum class OutputFormat { text, json };

struct RunConfig {
    Command command = Command::graphs;
    std::string action; // graphs: list|norm|coxeter, verify: tl|forked|evans-gould|braid
    std::string graph;
    std::string star;
    int depth = 5;
    double tolerance = default_tolerance;
    OutputFormat output = OutputFormat::text;
    std::string dot_path;
    unsigned long long seed = 1;

    std::string extension = "all";
    bool numeric = false;
    std::optional<double> index;
    std::optional<int> ghj;
    int max_k = 8;
    std::optional<double> tau;
    int k = 2;
    int bound = 1000;
};

/// Argument errors detected after parsing.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

using ojson = nlohmann::ordered_json;

inline void emit(std::ostream& out, const RunConfig& cfg, const ojson& j, const std::string& text) {
    if (cfg.output == OutputFormat::json) out << j.dump(2) << "\n";
    else out << text;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw UsageError("cannot write " + path);
    f << content;
}

inline int dn_rank(const BipartiteGraph& g) {
    if (g.family == GraphFamily::D) return g.rank;
    if (g.family == GraphFamily::T && std::min(g.branch, g.rank + 1 - g.branch) == 2 && g.rank >= 3) return g.rank + 1;
    throw UsageError("graph " + g.name + " is not of type D_n");
}

inline BipartiteGraph forked_graph(const RunConfig& cfg) {
    if (cfg.graph.empty()) throw UsageError("--graph is required");
    const int n = dn_rank(build_graph(cfg.graph));
    return build_graph("D" + std::to_string(n), cfg.star.empty() ? "trivalent" : cfg.star);
}

inline int cmd_graphs(const RunConfig& cfg, std::ostream& out) {
    if (cfg.action == "list") {
        std::vector<std::string> names;
        for (int n = 1; n <= 10; ++n) names.push_back("A" + std::to_string(n));
        for (int n = 4; n <= 10; ++n) names.push_back("D" + std::to_string(n));
        for (int n = 6; n <= 8; ++n) names.push_back("E" + std::to_string(n));
        ojson j = ojson::array();
        std::string text = "name  vertices  norm  coxeter\n";
        for (const auto& name : names) {
            const auto g = build_graph(name);
            const auto sd = spectral_data(g);
            const int h = coxeter_number(g);
            j.push_back({{"name", name}, {"vertices", g.size()}, {"norm", round_sig(sd.norm)}, {"coxeter", h}});
            text += name + "  " + std::to_string(g.size()) + "  " + format_sig(sd.norm) + "  " + std::to_string(h) + "\n";
        }
        text += "accepted names: A<n> (n>=1), D<n> (n>=4), E6, E7, E8, T<k>,<n> (2<=k<=n)\n";
        emit(out, cfg, j, text);
        return 0;
    }
    if (cfg.graph.empty()) throw UsageError("--graph is required");
    const auto g = build_graph(cfg.graph, cfg.star);
    if (!cfg.dot_path.empty()) write_file(cfg.dot_path, graph_to_dot(g));
    if (cfg.action == "norm") {
        const auto sd = spectral_data(g);
        ojson weights = ojson::object();
        std::string text = "graph: " + g.name + "\nstar: " + g.star_id() + "\nnorm: " + format_sig(sd.norm) +
                           "\ntau: " + format_sig(sd.tau) + "\nresidual: " + format_sig(sd.residual) + "\nweights:\n";
        for (std::size_t v = 0; v < g.size(); ++v) {
            weights[g.vertices[v]] = round_sig(sd.weights[v]);
            text += "  " + g.vertices[v] + ": " + format_sig(sd.weights[v]) + "\n";
        }
        ojson j = {{"graph", g.name}, {"star", g.star_id()}, {"norm", round_sig(sd.norm)}, {"tau", round_sig(sd.tau)},
                   {"residual", round_sig(sd.residual)}, {"weights", weights}};
        emit(out, cfg, j, text);
        return 0;
    }
    if (cfg.action == "coxeter") {
        const int h = coxeter_number(g);
        const double predicted = 2.0 * std::cos(std::numbers::pi / h);
        const double norm = spectral_data(g).norm;
        ojson j = {{"graph", g.name}, {"coxeter", h}, {"norm", round_sig(norm)}, {"two_cos_pi_over_h", round_sig(predicted)}};
        emit(out, cfg, j,
             "graph: " + g.name + "\ncoxeter: " + std::to_string(h) + "\nnorm: " + format_sig(norm) +
                 "\n2cos(pi/h): " + format_sig(predicted) + "\n");
        return 0;
    }
    throw UsageError("graphs: unknown action '" + cfg.action + "'");
}

inline int cmd_tower(const RunConfig& cfg, std::ostream& out) {
    if (cfg.graph.empty()) throw UsageError("--graph is required");
    const auto t = build_tower(build_graph(cfg.graph, cfg.star), cfg.depth);
    if (!cfg.dot_path.empty()) write_file(cfg.dot_path, bratteli_to_dot(t));
    const auto j = tower_dimensions_json(t);
    std::string text = "graph: " + t.graph().name + "\nstar: " + t.graph().star_id() + "\n";
    for (const auto& l : j["levels"]) {
        text += "level " + std::to_string(l["m"].get<int>()) + ": dim " + std::to_string(l["dim"].get<std::size_t>()) + " =";
        for (const auto& b : l["blocks"])
            text += " " + b["vertex"].get<std::string>() + ":" + std::to_string(b["size"].get<std::size_t>());
        text += "\n";
    }
    emit(out, cfg, j, text);
    return 0;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    VerificationReport report;
    if (cfg.action == "tl") {
        if (cfg.graph.empty()) throw UsageError("--graph is required");
        const auto t = build_tower(build_graph(cfg.graph, cfg.star), cfg.depth);
        report = verify_tl(t, cfg.depth, cfg.tolerance, cfg.seed);
    } else if (cfg.action == "forked") {
        const auto t = build_tower(forked_graph(cfg), cfg.depth);
        report = verify_forked(make_forked_system(t), cfg.depth, cfg.tolerance);
    } else if (cfg.action == "evans-gould") {
        const auto t = build_tower(forked_graph(cfg), cfg.depth);
        report = verify_evans_gould(make_forked_system(t, cfg.depth), cfg.tolerance);
    } else if (cfg.action == "braid") {
        const auto t = build_tower(forked_graph(cfg), cfg.depth);
        const auto fs = make_forked_system(t, cfg.depth);
        std::vector<BraidExtension> exts;
        if (cfg.extension == "all") exts = {BraidExtension::none, BraidExtension::p, BraidExtension::q};
        else if (cfg.extension == "none") exts = {BraidExtension::none};
        else if (cfg.extension == "p") exts = {BraidExtension::p};
        else if (cfg.extension == "q") exts = {BraidExtension::q};
        else throw UsageError("--extension must be p, q, none or all");
        report = VerificationReport({t.graph().name, t.tau(), cfg.depth});
        for (auto e : exts) report.append(verify_braid(fs, e, cfg.depth, cfg.tolerance));
    } else {
        throw UsageError("verify: unknown relation suite '" + cfg.action + "'");
    }
    emit(out, cfg, report.to_json(), report.to_text());
    return report.overall() ? 0 : 1;
}

inline std::string angle_text(const AngleResult& r) {
    std::string s = "method: " + std::string(to_string(r.method)) + "\nindex: " + format_sig(r.index) +
                    "\ntau: " + format_sig(r.tau) + "\nlambda: " + format_sig(r.lambda) + "\n";
    if (r.degenerate) s += "degenerate: yes (angle 0, no noncommuting quadrilateral)\n";
    const std::string frac = pi_fraction(r.angle);
    if (!frac.empty()) s += "angle: " + frac + " ≈ " + format_sig(r.angle, 7) + "\n";
    s += "angle_rad: " + format_sig(r.angle) + "\nangle_deg: " + format_sig(r.degrees()) + "\n";
    for (const auto& [k, v] : r.residuals) s += "residual " + k + ": " + format_sig(v) + "\n";
    for (const auto& [k, v] : r.details) s += k + ": " + format_sig(v) + "\n";
    return s;
}

inline int cmd_angle(const RunConfig& cfg, std::ostream& out) {
    const int modes = (cfg.index ? 1 : 0) + (cfg.ghj ? 1 : 0) + (cfg.graph.empty() ? 0 : 1);
    if (modes != 1) throw UsageError("angle: give exactly one of --graph, --index, --ghj");
    if (cfg.numeric && cfg.graph.empty()) throw UsageError("angle: --numeric requires --graph");
    AngleResult r;
    if (cfg.index) {
        r = angle_closed_form(*cfg.index);
    } else if (cfg.ghj) {
        r = angle_ghj(*cfg.ghj);
    } else if (cfg.numeric) {
        r = angle_numeric(make_forked_system(build_tower(forked_graph(cfg), cfg.depth)));
    } else {
        r = angle_ghj(dn_rank(build_graph(cfg.graph)));
    }
    emit(out, cfg, to_json(r), angle_text(r));
    return 0;
}

inline int cmd_fusion(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.index) throw UsageError("fusion: --index is required");
    const auto f = fusion_dims(*cfg.index, cfg.max_k);
    ojson dims = ojson::array();
    std::string text = "index: " + format_sig(f.index) + "\n";
    for (std::size_t k = 0; k < f.dims.size(); ++k) {
        dims.push_back(round_sig(f.dims[k]));
        text += "dim V_" + std::to_string(k) + ": " + format_sig(f.dims[k]) + "\n";
    }
    emit(out, cfg, ojson{{"index", round_sig(f.index)}, {"dims", dims}}, text);
    return 0;
}

inline int cmd_classify(const RunConfig& cfg, std::ostream& out) {
    if (!cfg.tau) throw UsageError("classify: --tau is required");
    const auto c = classify_tau(*cfg.tau, cfg.k, cfg.tolerance, cfg.bound);
    ojson j = {{"tau", round_sig(*cfg.tau)}, {"k", cfg.k}};
    std::string text = "tau: " + format_sig(*cfg.tau) + "\nk: " + std::to_string(cfg.k) + "\n";
    if (auto a = std::get_if<Admissible>(&c)) {
        const std::string tg = "T" + std::to_string(cfg.k) + "," + std::to_string(a->n);
        j["result"] = "admissible";
        j["n"] = a->n;
        j["graph"] = tg;
        text += "classification: admissible (n=" + std::to_string(a->n) + ", graph " + tg;
        if (cfg.k == 2) {
            j["ade"] = "D" + std::to_string(a->n + 1);
            if (a->n >= 3) text += " = D" + std::to_string(a->n + 1);
        }
        text += ")\n";
    } else {
        const std::string s = std::holds_alternative<Inadmissible>(c) ? "inadmissible" : "unconstrained";
        j["result"] = s;
        text += "classification: " + s + "\n";
    }
    emit(out, cfg, j, text);
    return 0;
}

inline int cmd_angleset(const RunConfig& cfg, std::ostream& out) {
    const auto set = angle_spectrum_set(cfg.max_k);
    ojson j = ojson::array();
    std::string text;
    for (std::size_t i = 0; i < set.size(); ++i) {
        const int k = static_cast<int>(i) + 3;
        const double deg = set[i] * 180.0 / std::numbers::pi;
        j.push_back({{"k", k}, {"angle_rad", round_sig(set[i])}, {"angle_deg", round_sig(deg)}});
        text += "k=" + std::to_string(k) + ": " + format_sig(set[i]) + " rad (" + format_sig(deg) + " deg)\n";
    }
    emit(out, cfg, j, text);
    return 0;
}

} // namespace detail

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
    case Command::graphs: return detail::cmd_graphs(cfg, out);
    case Command::tower: return detail::cmd_tower(cfg, out);
    case Command::verify: return detail::cmd_verify(cfg, out);
    case Command::angle: return detail::cmd_angle(cfg, out);
    case Command::fusion: return detail::cmd_fusion(cfg, out);
    case Command::classify: return detail::cmd_classify(cfg, out);
    case Command::angleset: return detail::cmd_angleset(cfg, out);
    }
    return 2;
}

/// Parses `args` (without the program name) and runs the command.
/// Exit codes: 0 success, 1 verification failure, 2 argument error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Temperley-Lieb, string-algebra and forked subfactor toolkit", "forkedtl"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    bool json = false;
    app.add_flag("--json", json, "JSON output on stdout");

    auto add_graph = [&](CLI::App* sub) {
        sub->add_option("--graph", cfg.graph, "A<n>, D<n>, E6|E7|E8, T<k>,<n>");
        sub->add_option("--star", cfg.star, "trivalent or a vertex id");
    };
    auto add_depth = [&](CLI::App* sub) {
        sub->add_option("--depth", cfg.depth, "tower depth")->check(CLI::Range(1, 64))->capture_default_str();
    };

    auto* graphs = app.add_subcommand("graphs", "catalog queries");
    graphs->add_option("action", cfg.action, "list|norm|coxeter")->required()->check(CLI::IsMember({"list", "norm", "coxeter"}));
    add_graph(graphs);
    graphs->add_option("--dot", cfg.dot_path, "write the graph as DOT");

    auto* tower = app.add_subcommand("tower", "level dimensions of the string algebra");
    add_graph(tower);
    add_depth(tower);
    tower->add_option("--dot", cfg.dot_path, "write the Bratteli diagram as DOT");

    auto* verify = app.add_subcommand("verify", "relation suites");
    verify->add_option("suite", cfg.action, "tl|forked|evans-gould|braid")
        ->required()
        ->check(CLI::IsMember({"tl", "forked", "evans-gould", "braid"}));
    add_graph(verify);
    add_depth(verify);
    verify->add_option("--tol", cfg.tolerance, "tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--seed", cfg.seed, "seed for sampled checks")->capture_default_str();
    verify->add_option("--extension", cfg.extension, "braid extension: p|q|none|all")->capture_default_str();

    auto* angle = app.add_subcommand("angle", "angle between the intermediate subfactors");
    add_graph(angle);
    add_depth(angle);
    angle->add_flag("--numeric", cfg.numeric, "conditional-expectation pipeline");
    angle->add_option("--index", cfg.index, "closed form at index [P:N]");
    angle->add_option("--ghj", cfg.ghj, "GHJ formula for D_n");

    auto* fusion = app.add_subcommand("fusion", "fusion dimensions dim_N V_k");
    fusion->add_option("--index", cfg.index, "index")->required();
    fusion->add_option("--max-k", cfg.max_k, "largest k")->check(CLI::NonNegativeNumber)->capture_default_str();

    auto* classify = app.add_subcommand("classify", "admissibility of tau");
    classify->add_option("--tau", cfg.tau, "tau")->required();
    classify->add_option("--k", cfg.k, "branch position k >= 2")->capture_default_str();
    classify->add_option("--tol", cfg.tolerance, "tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    classify->add_option("--bound", cfg.bound, "largest n searched")->capture_default_str();

    auto* angleset = app.add_subcommand("angleset", "the angle values for k = 3..K");
    angleset->add_option("--max-k", cfg.max_k, "largest k")->capture_default_str();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }
    cfg.output = json ? OutputFormat::json : OutputFormat::text;
    const std::vector<std::pair<CLI::App*, Command>> table{
        {graphs, Command::graphs}, {tower, Command::tower},       {verify, Command::verify},    {angle, Command::angle},
        {fusion, Command::fusion}, {classify, Command::classify}, {angleset, Command::angleset}};
    for (const auto& [sub, cmd] : table)
        if (sub->parsed()) cfg.command = cmd;
    if (!cfg.dot_path.empty() && cfg.command != Command::graphs && cfg.command != Command::tower) {
        err << "error: --dot is only valid for graph and tower commands\n";
        return 2;
    }
    try {
        return dispatch(cfg, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace forkedtl::cli
