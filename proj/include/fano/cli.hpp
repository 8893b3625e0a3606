#ifndef FANO_CLI_HPP
#define FANO_CLI_HPP

// Command-line front end. Exit codes: 0 all identities hold, 1 an identity
// fails, 2 usage or parameter error, 3 planes excluded (with --strict),
// 4 unreadable input.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fano/errors.hpp"
#include "fano/geom.hpp"
#include "fano/motivic.hpp"
#include "fano/params.hpp"
#include "fano/report.hpp"
#include "fano/yfy.hpp"

namespace fano::cli {

enum Exit { kOk = 0, kIdentityFailure = 1, kUsage = 2, kExcluded = 3, kIo = 4 };

struct RunConfig {
    std::string command;
    std::string class_name;
    std::vector<std::string> variety_paths;
    std::vector<ParamSet> params;
    std::vector<long> q_list{2, 3, 4, 5, 7};
    std::vector<int> e_list{1};
    long depth = kDefaultDepth;
    std::string format = "json";
    unsigned workers = 1;
    bool strict = false;
    std::string help;  // non-empty: print and exit 0
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"class",  "count", "verify-classic", "verify-extended", "verify-partition",
                                            "probe",  "lw-check", "averaged-table"};
    return c;
}

inline RunConfig parse_args(const std::vector<std::string>& argv) {
    RunConfig cfg;
    cfg.workers = default_workers();
    CLI::App app{"Point-count checks of Y-F(Y) relations", "fano"};
    app.require_subcommand(1, 1);
    std::vector<std::string> params_text;
    std::string q_text, e_text;
    for (const auto& name : commands()) {
        auto* sub = app.add_subcommand(name);
        if (name == "class") sub->add_option("name", cfg.class_name, "class name, e.g. G(2,5)")->required();
        sub->add_option("--variety", cfg.variety_paths, "variety file (repeat for averaged-table)");
        sub->add_option("--params", params_text, "n,m,d,k (repeat for averaged-table)");
        sub->add_option("--q", q_text, "comma-separated field sizes");
        sub->add_option("--e", e_text, "comma-separated extension degrees");
        sub->add_option("--depth", cfg.depth, "series depth")->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "json|csv|text")->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("--workers", cfg.workers, "worker threads")->check(CLI::PositiveNumber);
        sub->add_flag("--strict", cfg.strict, "exit 3 when planes are excluded");
        if (name == "probe") sub->add_option("--class", cfg.class_name, "catalog class to probe");
    }
    std::vector<std::string> args(argv.rbegin(), argv.rend());
    if (!args.empty()) args.pop_back();  // program name
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        cfg.help = app.help();
        return cfg;
    } catch (const CLI::ParseError& e) {
        throw UsageError(std::string(e.what()) + "\n" + app.help());
    }
    cfg.command = app.get_subcommands().front()->get_name();
    if (app.get_subcommands().front()->count("--help")) {
        cfg.help = app.get_subcommands().front()->help();
        return cfg;
    }

    auto split = [](const std::string& s, const char* what) {
        std::vector<long> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                long v = std::stol(item, &pos);
                if (pos != item.size()) throw std::invalid_argument(item);
                out.push_back(v);
            } catch (const std::logic_error&) {
                throw UsageError(std::string("bad ") + what + " list '" + s + "'");
            }
        }
        if (out.empty()) throw UsageError(std::string(what) + " list is empty");
        return out;
    };
    if (!q_text.empty() || app.get_subcommands().front()->count("--q")) {
        cfg.q_list = split(q_text, "--q");
        for (long q : cfg.q_list)
            if (q < 2) throw UsageError("field sizes must be >= 2");
    }
    if (!e_text.empty() || app.get_subcommands().front()->count("--e")) {
        cfg.e_list.clear();
        for (long e : split(e_text, "--e")) {
            if (e < 1 || e > 64) throw UsageError("extension degrees must lie in 1..64");
            cfg.e_list.push_back(static_cast<int>(e));
        }
    }
    for (const auto& t : params_text) {
        try {
            cfg.params.push_back(ParamSet::parse(t));
        } catch (const ParseError& e) {
            throw UsageError(e.what());
        }
    }

    const auto& c = cfg.command;
    bool needs_variety = c != "class" && c != "probe";
    bool needs_params = c == "verify-extended" || c == "verify-partition" || c == "lw-check" || c == "averaged-table";
    if (needs_variety && cfg.variety_paths.empty()) throw UsageError(c + " needs --variety");
    if (c != "averaged-table" && cfg.variety_paths.size() > 1) throw UsageError(c + " takes one --variety");
    if (needs_params && cfg.params.size() != std::max<std::size_t>(1, cfg.variety_paths.size()))
        throw UsageError(c + " needs one --params per --variety");
    if (!needs_params && !cfg.params.empty()) throw UsageError(c + " does not take --params");
    if (c == "probe" && cfg.class_name.empty() == cfg.variety_paths.empty())
        throw UsageError("probe needs exactly one of --class or --variety");
    return cfg;
}

inline RunConfig parse_args(int argc, const char* const* argv) {
    return parse_args(std::vector<std::string>(argv, argv + argc));
}

namespace detail {

inline VarietySpec load(const std::string& path) {
    try {
        return load_variety(path);
    } catch (const IoError&) {
        throw;
    } catch (const Error& e) {
        throw IoError(path + ": " + e.what());
    }
}

struct Outcome {
    Json result;
    bool ok = true;
    std::uint64_t excluded = 0;
    std::string csv;  // table form, if any
};

inline std::vector<std::pair<long, Rational>> class_samples(const ClassExpr& c, const std::vector<long>& qs) {
    std::vector<std::pair<long, Rational>> s;
    for (long q : qs) s.emplace_back(q, specialize(c.value, Rational(q)));
    return s;
}

inline Outcome dispatch(const RunConfig& cfg, Json& head) {
    Outcome out;
    const auto& c = cfg.command;
    std::vector<VarietySpec> ys;
    for (const auto& p : cfg.variety_paths) ys.push_back(load(p));
    if (ys.size() == 1) head["variety"] = variety_json(ys[0]);
    if (cfg.params.size() == 1) head["params"] = to_json(cfg.params[0]);

    if (c == "class") {
        ClassExpr e = parse_class(cfg.class_name);
        Json spec = Json::object();
        for (long q : cfg.q_list) spec[std::to_string(q)] = to_string(specialize(e.value, Rational(q)));
        out.result = Json{{"label", e.label},
                          {"value", e.value.str()},
                          {"relative_dimension", relative_dimension(e.value).str()},
                          {"point_counts", spec}};
    } else if (c == "count") {
        const auto& Y = ys[0];
        Json rows = Json::array();
        for (int e : cfg.e_list)
            rows.push_back(Json{{"e", e}, {"Q", to_json(ipow(Y.q(), e))}, {"points", to_json(count_points(Y, e))},
                                {"sym2", to_json(sym_count(Y, 2, e))}});
        out.result = Json{{"smooth", smooth_flag(Y)}, {"rows", rows}};
    } else if (c == "verify-classic") {
        auto r = verify_classic(ys[0], cfg.e_list, cfg.workers);
        out.result = to_json(r);
        out.ok = r.ok();
    } else if (c == "verify-extended") {
        auto r = verify_extended(ys[0], cfg.params[0], cfg.e_list, cfg.workers, cfg.format == "csv");
        out.result = to_json(r);
        out.ok = r.ok();
        out.excluded = r.excluded();
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : r.records) {
            std::string sizes;
            for (std::size_t i = 0; i < p.orbit_sizes.size(); ++i) sizes += (i ? " " : "") + std::to_string(p.orbit_sizes[i]);
            rows.push_back({std::to_string(cfg.e_list[0]), std::to_string(p.id), kind_name(p.kind), sizes});
        }
        Json h = head;
        h["ok"] = r.ok();
        out.csv = render_csv(c, h, {"e", "plane", "kind", "orbit_sizes"}, rows);
    } else if (c == "verify-partition") {
        Json rows = Json::array();
        for (int e : cfg.e_list) {
            auto r = verify_partition(ys[0], cfg.params[0], e, cfg.workers);
            rows.push_back(to_json(r));
            out.ok = out.ok && r.ok();
            out.excluded += r.counts.positive_dim;
        }
        out.result = Json{{"rows", rows}, {"ok", out.ok}};
    } else if (c == "probe") {
        std::vector<std::pair<long, Rational>> samples;
        Json what;
        int order = kCountProbeOrder;
        if (!cfg.class_name.empty()) {
            ClassExpr e = parse_class(cfg.class_name);
            samples = class_samples(e, cfg.q_list);
            order = kExactProbeOrder;
            what = Json{{"class", e.label}, {"expected", relative_dimension(e.value).str()}};
        } else {
            if (cfg.q_list.size() < 3) throw InsufficientSamples("need at least 3 fields, got " + std::to_string(cfg.q_list.size()));
            for (long q : cfg.q_list) {
                auto [p, e] = prime_power(q);
                samples.emplace_back(q, Rational(count_points(ys[0].rebase(p, e), 1)));
            }
            what = Json{{"points_of", ys[0].field().name()}};
        }
        auto est = dimension_probe(samples, order);
        Json s = Json::object();
        for (const auto& [q, v] : samples) s[std::to_string(q)] = to_string(v);
        out.result = Json{{"target", what}, {"samples", s}, {"estimate", to_json(est)}};
    } else if (c == "lw-check") {
        auto d = langweil_check(ys[0], cfg.params[0], cfg.e_list, cfg.workers);
        out.result = to_json(d);
        out.ok = d.ok();
        std::vector<std::vector<std::string>> rows;
        for (const auto& p : d.planes)
            for (std::size_t j = 0; j < p.e_values.size(); ++j) {
                std::string sizes;
                for (std::size_t i = 0; i < p.orbit_sizes.size(); ++i) sizes += (i ? " " : "") + std::to_string(p.orbit_sizes[i]);
                rows.push_back({std::to_string(p.id), sizes, std::to_string(p.e_values[j]), std::to_string(p.direct[j]),
                                std::to_string(p.predicted[j]), std::to_string(p.alpha[j])});
            }
        Json h = head;
        h["ok"] = d.ok();
        out.csv = render_csv(c, h, {"plane", "orbit_sizes", "e", "points", "predicted", "alpha"}, rows);
    } else if (c == "averaged-table") {
        std::vector<std::pair<VarietySpec, ParamSet>> seq;
        for (std::size_t i = 0; i < ys.size(); ++i) seq.emplace_back(ys[i], cfg.params[i]);
        AveragedOptions opt;
        opt.q_list = cfg.q_list;
        opt.workers = cfg.workers;
        auto t = averaged_table(seq, cfg.q_list.front(), opt);
        out.result = to_json(t);
        Json vs = Json::array();
        for (const auto& Y : ys) vs.push_back(variety_json(Y));
        head["varieties"] = vs;
        std::vector<std::vector<std::string>> rows;
        for (const auto& e : t.entries)
            for (const auto& [name, tv] : e.terms)
                rows.push_back({e.params.str(), name, tv.value ? to_string(*tv.value) : "",
                                tv.probe ? tv.probe->reldim().str() : "", tv.bound ? std::to_string(*tv.bound) : ""});
        out.csv = render_csv(c, head, {"params", "term", "value", "reldim", "bound"}, rows);
    }
    return out;
}

} // namespace detail

// Runs one command; the report goes to `out`, diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (!cfg.help.empty()) {
        out << cfg.help;
        return kOk;
    }
    try {
        Json head{{"command", cfg.command}, {"workers", cfg.workers}};
        if (cfg.command == "probe" || cfg.command == "averaged-table") head["q_list"] = cfg.q_list;
        if (cfg.command != "class" && cfg.command != "probe" && cfg.command != "averaged-table") head["e_list"] = cfg.e_list;
        if (cfg.command == "class") head["depth"] = cfg.depth;
        auto o = detail::dispatch(cfg, head);
        int code = !o.ok ? kIdentityFailure : (cfg.strict && o.excluded ? kExcluded : kOk);
        static const char* status[] = {"ok", "identity-failure", "usage", "excluded", "io"};
        Json doc = head;
        doc["result"] = o.result;
        doc["status"] = status[code];
        if (cfg.format == "json")
            out << doc.dump(2) << "\n";
        else if (cfg.format == "text")
            out << render_text(doc);
        else
            out << (o.csv.empty() ? render_csv_kv(cfg.command, doc) : o.csv);
        if (o.excluded) err << "note: " << o.excluded << " plane(s) with positive-dimensional sections excluded\n";
        return code;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIo;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

inline int main_entry(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig cfg;
    try {
        cfg = parse_args(argc, argv);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    return run(cfg, out, err);
}

} // namespace fano::cli

#endif
