#pragma once

#include "rainbow/certificate_io.hpp"
#include "rainbow/rainbow.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace rainbow::cli {

using nlohmann::json;

struct Options {
    bool as_json = false;
    int threads = 0; // 0: RAINBOW_LAB_THREADS, then hardware
    Budget budget;
};

inline std::string big_string(const BigInt& x) { return x.str(); }

inline EdgeColoring load_coloring_file(const std::string& source) {
    return load_coloring(source); // understands fixture:K5 / fixture:K8
}

inline StepColoringGraphon load_graphon_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::InvalidInput, "cannot open graphon file: " + path);
    return read_graphon(in);
}

inline void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

inline int run_count(const std::string& pattern, const std::string& coloring, const Options& opt,
                     std::ostream& out) {
    Graph h = load_graph(pattern);
    EdgeColoring c = load_coloring_file(coloring);
    ExecPolicy policy{opt.threads};
    RainbowCount rc = count_rainbow(h, c, policy);
    if (opt.as_json) {
        emit(out, {{"command", "count"},
                   {"pattern", pattern},
                   {"host_vertices", c.n()},
                   {"colors", c.r()},
                   {"copies", big_string(rc.copies)},
                   {"total_copies", big_string(rc.total)},
                   {"rainbow_fraction", to_fraction_string(rc.density_per_copy)}});
    } else {
        out << rc.copies << "\n";
    }
    return 0;
}

inline int run_threshold(const std::string& pattern, int r, int m, const Options& opt,
                         std::ostream& out) {
    Graph h = load_graph(pattern);
    Rational t = blowup_threshold(h, r, m);
    BigInt beat = minimal_beating_integer(t);
    if (opt.as_json) {
        emit(out, {{"command", "threshold"},
                   {"pattern", pattern},
                   {"r", r},
                   {"m", m},
                   {"threshold", to_fraction_string(t)},
                   {"minimal_beating_integer", big_string(beat)}});
    } else {
        out << to_fraction_string(t) << "\n";
        out << "minimal beating integer: " << beat << "\n";
    }
    return 0;
}

inline int run_uniform_expect(const std::string& pattern, int r, int n, const Options& opt,
                              std::ostream& out) {
    Graph h = load_graph(pattern);
    Rational e = expected_uniform_count(h, r, n);
    if (opt.as_json) {
        emit(out, {{"command", "uniform-expect"},
                   {"pattern", pattern},
                   {"r", r},
                   {"n", n},
                   {"expected_count", to_fraction_string(e)}});
    } else {
        out << to_fraction_string(e) << "\n";
    }
    return 0;
}

inline int run_density(const std::string& pattern, const std::string& graphon, const Options& opt,
                       std::ostream& out) {
    Graph h = load_graph(pattern);
    StepColoringGraphon w = load_graphon_file(graphon);
    DensityResult d = rainbow_density(h, w, opt.budget);
    if (opt.as_json) {
        emit(out, {{"command", "density"},
                   {"pattern", pattern},
                   {"r", w.r},
                   {"blocks", w.q},
                   {"density", to_fraction_string(d.value)},
                   {"color_injections", big_string(d.injection_count)}});
    } else {
        out << to_fraction_string(d.value) << "\n";
    }
    return 0;
}

inline int run_baseline(const std::string& pattern, int r, const Options& opt, std::ostream& out) {
    Graph h = load_graph(pattern);
    Rational b = baseline_density(h, r);
    if (opt.as_json) {
        emit(out, {{"command", "baseline"},
                   {"pattern", pattern},
                   {"r", r},
                   {"density", to_fraction_string(b)}});
    } else {
        out << to_fraction_string(b) << "\n";
    }
    return 0;
}

inline int run_witness(const std::string& pattern, int r, const std::string& epsilon_str,
                       int k_override, const std::string& emit_graphon, const Options& opt,
                       std::ostream& out) {
    Graph h = load_graph(pattern);
    std::optional<int> k;
    if (k_override > 0)
        k = k_override;
    std::optional<Rational> eps;
    if (!epsilon_str.empty())
        eps = parse_rational(epsilon_str);
    WitnessCertificate cert = certify_uncommon(h, r, opt.budget, k, eps);
    if (!emit_graphon.empty()) {
        StepColoringGraphon w = build_witness_graphon(cert.r, cert.k, cert.epsilon);
        std::ofstream f(emit_graphon);
        if (!f)
            throw Error(ErrorKind::InvalidInput, "cannot write graphon file: " + emit_graphon);
        write_graphon(f, w);
    }
    if (opt.as_json) {
        emit(out, certificate_to_json(cert));
    } else {
        out << "pattern: " << pattern << " (" << cert.h.n() << " vertices, " << cert.h.e()
            << " edges)\n";
        out << "colors r: " << cert.r << "\n";
        out << "girth s: " << cert.s << "\n";
        out << "split k: " << cert.k << "\n";
        out << "epsilon: " << to_fraction_string(cert.epsilon) << "\n";
        out << "baseline density: " << to_fraction_string(cert.baseline) << "\n";
        out << "perturbed density: " << to_fraction_string(cert.density) << "\n";
        out << "gap: " << to_fraction_string(cert.gap) << "\n";
        out << "expansion in powers of epsilon:\n";
        for (const auto& t : cert.expansion.terms)
            out << "  degree " << t.degree << ": " << to_fraction_string(t.coefficient) << "\n";
        out << "even subgraphs (edge index sets):\n";
        for (const auto& s : cert.expansion.subgraphs) {
            out << "  {";
            for (std::size_t i = 0; i < s.edge_subset.size(); ++i)
                out << (i ? "," : "") << s.edge_subset[i];
            out << "} degree " << s.degree << " contribution "
                << to_fraction_string(s.contribution) << "\n";
        }
    }
    return 0;
}

inline int run_blowup(const std::string& seed_src, int depth, const std::string& verify_pattern,
                      const std::string& out_file, const Options& opt, std::ostream& out) {
    EdgeColoring seed = load_coloring_file(seed_src);
    BlowupSpec spec{seed, depth};
    EdgeColoring blown = blowup_coloring(spec, opt.budget);
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f)
            throw Error(ErrorKind::InvalidInput, "cannot write coloring file: " + out_file);
        write_coloring(f, blown);
    }
    json j = {{"command", "blowup"},
              {"seed_vertices", seed.n()},
              {"depth", depth},
              {"vertices", blown.n()},
              {"colors", blown.r()}};
    if (!verify_pattern.empty()) {
        Graph h = load_graph(verify_pattern);
        ExecPolicy policy{opt.threads};
        BlowupReport report = verify_blowup(h, spec, opt.budget, policy);
        j["pattern"] = verify_pattern;
        j["seed_rainbow"] = big_string(report.seed_rainbow);
        j["blowup_rainbow"] = big_string(report.actual_rainbow);
        j["lower_bound"] = big_string(report.lower_bound);
        j["dominates"] = report.dominates;
        if (!opt.as_json) {
            out << "vertices: " << blown.n() << "\n";
            out << "seed rainbow copies: " << report.seed_rainbow << "\n";
            out << "blowup rainbow copies: " << report.actual_rainbow << "\n";
            out << "lower bound: " << report.lower_bound << "\n";
            out << "dominates: " << (report.dominates ? "yes" : "no") << "\n";
            return report.dominates ? 0 : 1;
        }
        emit(out, j);
        return report.dominates ? 0 : 1;
    }
    if (opt.as_json)
        emit(out, j);
    else
        out << "vertices: " << blown.n() << "\ncolors: " << blown.r() << "\n";
    return 0;
}

inline int run_sample(const std::string& pattern, const std::string& graphon, int n,
                      std::uint64_t trials, std::uint64_t seed, const Options& opt,
                      std::ostream& out) {
    Graph h = load_graph(pattern);
    StepColoringGraphon w = load_graphon_file(graphon);
    SampleReport rep = estimate_density(h, w, n, trials, seed, opt.budget);
    if (opt.as_json) {
        emit(out, {{"command", "sample"},
                   {"pattern", pattern},
                   {"n", rep.n},
                   {"trials", rep.trials},
                   {"seed", seed},
                   {"rainbow_hits", rep.rainbow_hits},
                   {"empirical_mean", to_fraction_string(rep.empirical_mean)},
                   {"exact_density", to_fraction_string(rep.exact_target)},
                   {"standard_error_bound", to_fraction_string(rep.standard_error_bound)}});
    } else {
        out << "trials: " << rep.trials << "\n";
        out << "rainbow hits: " << rep.rainbow_hits << "\n";
        out << "empirical mean: " << to_fraction_string(rep.empirical_mean) << "\n";
        out << "exact density: " << to_fraction_string(rep.exact_target) << "\n";
        out << "standard error bound: " << to_fraction_string(rep.standard_error_bound) << "\n";
    }
    return 0;
}

inline int run_search(const std::string& pattern, int m, int r, std::uint64_t seed, int budget,
                      int restarts, const std::string& out_file, const Options& opt,
                      std::ostream& out) {
    SearchConfig cfg;
    cfg.pattern = load_graph(pattern);
    cfg.m = m;
    cfg.r = r;
    cfg.seed = seed;
    if (budget > 0)
        cfg.max_steps = budget;
    if (restarts > 0)
        cfg.restarts = restarts;
    SearchResult res = local_search(cfg);
    json summary = {{"command", "search"},
                    {"pattern", pattern},
                    {"m", m},
                    {"r", r},
                    {"seed", seed},
                    {"count", big_string(res.verified.copies)},
                    {"threshold", to_fraction_string(res.threshold)},
                    {"beat", res.beats_threshold}};
    if (!out_file.empty()) {
        std::ofstream f(out_file);
        if (!f)
            throw Error(ErrorKind::InvalidInput, "cannot write coloring file: " + out_file);
        write_coloring(f, res.best);
    } else if (!opt.as_json) {
        write_coloring(out, res.best);
    } else {
        std::ostringstream buf;
        write_coloring(buf, res.best);
        summary["coloring"] = buf.str();
    }
    emit(out, summary);
    return 0;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact rainbow-copy counting, graphon densities, and uncommonness witnesses"};
    app.require_subcommand(1);

    Options opt;
    app.add_flag("--json", opt.as_json, "machine-readable output, all rationals as p/q strings");
    app.add_option("--threads", opt.threads,
                   "worker threads (0: RAINBOW_LAB_THREADS env, then hardware)");
    app.add_option("--enum-cap", opt.budget.coloring_space, "cap on enumerated coloring spaces");
    app.add_option("--cell-budget", opt.budget.graphon_cells,
                   "cap on graphon evaluation work (injections x block cells)");
    app.add_option("--vertex-cap", opt.budget.blowup_vertices, "cap on blowup host vertices");

    std::string pattern, coloring, graphon, epsilon_str, emit_graphon, seed_src, out_file;
    int r = 0, m = 0, n = 0, depth = 1, k_override = 0, budget = 0, restarts = 0;
    std::uint64_t seed = 0, trials = 0;
    std::string verify_pattern;

    auto* c_count = app.add_subcommand("count", "rainbow copies of a pattern in a coloring");
    c_count->add_option("--pattern", pattern, "C<s>, K<s>, P<s>, or a graph file")->required();
    c_count->add_option("--coloring", coloring, "coloring file or fixture:K5 / fixture:K8")
        ->required();

    auto* c_threshold = app.add_subcommand("threshold", "blowup seed threshold for K_m");
    c_threshold->add_option("--pattern", pattern)->required();
    c_threshold->add_option("-r", r, "number of colors")->required();
    c_threshold->add_option("-m", m, "seed host size")->required();

    auto* c_expect = app.add_subcommand("uniform-expect",
                                        "expected rainbow copies under the uniform coloring");
    c_expect->add_option("--pattern", pattern)->required();
    c_expect->add_option("-r", r, "number of colors")->required();
    c_expect->add_option("-n", n, "host size")->required();

    auto* c_density = app.add_subcommand("density", "rainbow homomorphism density in a graphon");
    c_density->add_option("--pattern", pattern)->required();
    c_density->add_option("--graphon", graphon, "graphon file")->required();

    auto* c_baseline = app.add_subcommand("baseline", "uniform-graphon rainbow density");
    c_baseline->add_option("--pattern", pattern)->required();
    c_baseline->add_option("-r", r, "number of colors")->required();

    auto* c_witness = app.add_subcommand("witness", "uncommonness certificate for a cyclic pattern");
    c_witness->add_option("--pattern", pattern)->required();
    c_witness->add_option("-r", r, "number of colors")->required();
    c_witness->add_option("--epsilon", epsilon_str, "force a perturbation size p/q");
    c_witness->add_option("--k", k_override, "force the color split");
    c_witness->add_option("--emit-graphon", emit_graphon, "write the witness graphon to a file");

    auto* c_blowup = app.add_subcommand("blowup", "iterated blowup of a seed coloring");
    c_blowup->add_option("--seed", seed_src, "coloring file or fixture:K5 / fixture:K8")
        ->required();
    c_blowup->add_option("-d", depth, "blowup depth")->required();
    c_blowup->add_option("--pattern", verify_pattern, "verify dominance for this pattern");
    c_blowup->add_flag("--verify", "verify the lower bound (requires --pattern)");
    c_blowup->add_option("--out", out_file, "write the blowup coloring to a file");

    auto* c_sample = app.add_subcommand("sample", "Monte Carlo rainbow density estimate");
    c_sample->add_option("--pattern", pattern)->required();
    c_sample->add_option("--graphon", graphon, "graphon file")->required();
    c_sample->add_option("-n", n, "sampled host size")->required();
    c_sample->add_option("--trials", trials, "number of sampled copies")->required();
    c_sample->add_option("--seed", seed, "RNG seed");

    auto* c_search = app.add_subcommand("search", "hill-climb for rainbow-rich colorings");
    c_search->add_option("--pattern", pattern)->required();
    c_search->add_option("-m", m, "host size")->required();
    c_search->add_option("-r", r, "number of colors")->required();
    c_search->add_option("--seed", seed, "RNG seed");
    c_search->add_option("--budget", budget, "moves per restart");
    c_search->add_option("--restarts", restarts, "number of restarts");
    c_search->add_option("--out", out_file, "write the best coloring to a file");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*c_count)
            return run_count(pattern, coloring, opt, out);
        if (*c_threshold)
            return run_threshold(pattern, r, m, opt, out);
        if (*c_expect)
            return run_uniform_expect(pattern, r, n, opt, out);
        if (*c_density)
            return run_density(pattern, graphon, opt, out);
        if (*c_baseline)
            return run_baseline(pattern, r, opt, out);
        if (*c_witness)
            return run_witness(pattern, r, epsilon_str, k_override, emit_graphon, opt, out);
        if (*c_blowup) {
            if (c_blowup->count("--verify") && verify_pattern.empty())
                throw Error(ErrorKind::InvalidInput, "--verify requires --pattern");
            return run_blowup(seed_src, depth,
                              c_blowup->count("--verify") ? verify_pattern : std::string{},
                              out_file, opt, out);
        }
        if (*c_sample)
            return run_sample(pattern, graphon, n, trials, seed, opt, out);
        if (*c_search)
            return run_search(pattern, m, r, seed, budget, restarts, out_file, opt, out);
    } catch (const Error& e) {
        if (opt.as_json)
            emit(out, {{"error", {{"kind", error_kind_name(e.kind())}, {"message", e.what()}}}});
        else
            err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "usage error: no subcommand\n";
    return 2;
}

} // namespace rainbow::cli
