// Command-line driver: solve one SMT-LIB file, generate benchmark families,
// or run a benchmark matrix into a CSV.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nrasat/nrasat.hpp"

namespace {

int parse_mode(const std::string& s, nrasat::Mode& out) {
    if (s == "nlsat-static") out = nrasat::Mode::nlsat_static;
    else if (s == "vsids") out = nrasat::Mode::vsids;
    else if (s == "prop-vsids") out = nrasat::Mode::prop_vsids;
    else return 1;
    return 0;
}

int parse_ld(const std::string& s, nrasat::LiteralDecision& out) {
    if (s == "look-ahead") out = nrasat::LiteralDecision::look_ahead;
    else if (s == "lower-degree") out = nrasat::LiteralDecision::lower_degree;
    else if (s == "random") out = nrasat::LiteralDecision::random_pick;
    else return 1;
    return 0;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(item);
    return out;
}

void print_stats(const nrasat::Stats& st) {
    std::cout << "; conflicts " << st.conflicts << "\n";
    std::cout << "; decisions " << st.decisions << "\n";
    std::cout << "; stages " << st.stages << "\n";
    std::cout << "; bool-decisions " << st.bool_decisions << "\n";
    std::cout << "; literal-decisions " << st.literal_decisions << "\n";
    std::cout << "; r-propagations " << st.r_propagations << "\n";
    std::cout << "; clause-propagations " << st.clause_propagations << "\n";
    std::cout << "; lemmas-learned " << st.lemmas_learned << "\n";
    std::cout << "; lemmas-deleted " << st.lemmas_deleted << "\n";
    std::cout << "; restarts " << st.restarts << "\n";
    std::cout << "; wall-ms " << st.wall_ms << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"NLSAT-style SMT solver for QF_NRA"};
    app.require_subcommand(0, 1);

    std::string file;
    std::string mode_s = "prop-vsids", ld_s = "look-ahead";
    std::uint64_t seed = 0;
    std::int64_t timeout_ms = 0;
    std::uint64_t conflict_budget = 0;
    bool stats = false, trace_lemmas = false;

    app.add_option("file", file, "SMT-LIB v2 input (.smt2)");
    app.add_option("--mode", mode_s, "branching mode: nlsat-static|vsids|prop-vsids");
    app.add_option("--literal-decision", ld_s, "literal decision: look-ahead|lower-degree|random");
    app.add_option("--seed", seed, "random seed");
    app.add_option("--timeout-ms", timeout_ms, "wall-clock budget per solve (0 = none)");
    app.add_option("--conflict-budget", conflict_budget, "conflict budget per solve (0 = none)");
    app.add_flag("--stats", stats, "print statistics after the verdict");
    app.add_flag("--trace-lemmas", trace_lemmas, "print each learned lemma to stderr");

    auto* gen = app.add_subcommand("gen", "generate a benchmark family instance");
    std::string family, out_dir = ".";
    int n = 1;
    gen->add_option("--family", family, "path_case|block_case|fixed_chain")->required();
    gen->add_option("--n", n, "family size")->required();
    gen->add_option("--out", out_dir, "output directory");

    auto* bench = app.add_subcommand("bench", "run a config matrix over a directory of .smt2");
    std::string bench_dir, bench_out = "results.csv";
    std::string modes_s = "nlsat-static,vsids,prop-vsids";
    std::string ldecs_s = "look-ahead";
    unsigned jobs = 1;
    bench->add_option("--dir", bench_dir, "directory of .smt2 instances")->required();
    bench->add_option("--out", bench_out, "output CSV path");
    bench->add_option("--modes", modes_s, "comma-separated mode list");
    bench->add_option("--literal-decisions", ldecs_s, "comma-separated literal-decision list");
    bench->add_option("--jobs", jobs, "parallel workers");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            std::string text = nrasat::families::generate(family, n);
            std::filesystem::create_directories(out_dir);
            std::string path = out_dir + "/" + family + "_" + std::to_string(n) + ".smt2";
            std::ofstream out(path);
            out << text;
            std::cout << path << "\n";
            return 0;
        }

        nrasat::EngineConfig cfg;
        if (parse_mode(mode_s, cfg.mode)) {
            std::cerr << "error: unknown mode " << mode_s << "\n";
            return 2;
        }
        if (parse_ld(ld_s, cfg.literal_decision)) {
            std::cerr << "error: unknown literal decision " << ld_s << "\n";
            return 2;
        }
        cfg.seed = seed;
        cfg.timeout_ms = timeout_ms;
        cfg.conflict_budget = conflict_budget;
        cfg.trace_lemmas = trace_lemmas;

        if (bench->parsed()) {
            std::vector<nrasat::Mode> modes;
            for (auto& s : split_csv(modes_s)) {
                nrasat::Mode m;
                if (parse_mode(s, m)) {
                    std::cerr << "error: unknown mode " << s << "\n";
                    return 2;
                }
                modes.push_back(m);
            }
            std::vector<nrasat::LiteralDecision> ldecs;
            for (auto& s : split_csv(ldecs_s)) {
                nrasat::LiteralDecision d;
                if (parse_ld(s, d)) {
                    std::cerr << "error: unknown literal decision " << s << "\n";
                    return 2;
                }
                ldecs.push_back(d);
            }
            auto records = nrasat::bench::run_directory(bench_dir, modes, ldecs, cfg, jobs);
            nrasat::bench::write_csv(records, bench_out);
            std::cout << bench_out << " (" << records.size() << " rows)\n";
            return 0;
        }

        if (file.empty()) {
            std::cerr << "error: no input file\n";
            return 2;
        }
        std::ifstream in(file);
        if (!in) {
            std::cerr << "error: cannot open " << file << "\n";
            return 2;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        nrasat::smt2::Script sc = nrasat::smt2::parse(ss.str());

        // Execute commands in script order.
        nrasat::smt2::Script model_view = sc;  // var/name view for printing
        nrasat::Verdict verdict = nrasat::Verdict::unknown;
        bool solved = false;
        nrasat::Result result;
        nrasat::VarTable table_for_model;
        for (auto& cmd : sc.commands) {
            using K = nrasat::smt2::Script::Command::Kind;
            if (cmd.kind == K::check_sat) {
                nrasat::smt2::Script run = model_view;  // keep names for later printing
                nrasat::Solver solver(nrasat::smt2::to_formula(std::move(run)), cfg);
                result = solver.solve();
                table_for_model = solver.vars();
                verdict = result.verdict;
                solved = true;
                std::cout << nrasat::verdict_str(verdict) << "\n";
                if (trace_lemmas)
                    for (auto& t : result.lemma_trace) std::cerr << "lemma: " << t << "\n";
                if (stats) print_stats(result.stats);
            } else if (cmd.kind == K::get_model) {
                if (solved && verdict == nrasat::Verdict::sat) {
                    std::cout << nrasat::smt2::print_model(model_view, table_for_model,
                                                           result.model)
                              << "\n";
                } else {
                    std::cerr << "error: model is not available\n";
                }
            } else if (cmd.kind == K::exit_) {
                break;
            }
        }
        if (!solved) {
            std::cerr << "error: no (check-sat) in script\n";
            return 2;
        }
        return verdict == nrasat::Verdict::unknown ? 1 : 0;
    } catch (const nrasat::smt2::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
