#pragma once

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "nrasat/engine.hpp"
#include "nrasat/smt2.hpp"

namespace nrasat::bench {

struct RunRecord {
    std::string instance;
    std::string mode;
    std::string literal_decision;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::unknown;
    Stats stats;
};

inline const char* mode_str(Mode m) {
    switch (m) {
        case Mode::nlsat_static: return "nlsat-static";
        case Mode::vsids: return "vsids";
        default: return "prop-vsids";
    }
}
inline const char* ld_str(LiteralDecision d) {
    switch (d) {
        case LiteralDecision::look_ahead: return "look-ahead";
        case LiteralDecision::lower_degree: return "lower-degree";
        default: return "random";
    }
}

inline RunRecord run_file(const std::string& path, const EngineConfig& cfg) {
    RunRecord rec;
    rec.instance = path;
    rec.mode = mode_str(cfg.mode);
    rec.literal_decision = ld_str(cfg.literal_decision);
    rec.seed = cfg.seed;
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    smt2::Script sc = smt2::parse(ss.str());
    Solver solver(smt2::to_formula(std::move(sc)), cfg);
    Result r = solver.solve();
    rec.verdict = r.verdict;
    rec.stats = r.stats;
    return rec;
}

inline std::string csv_header() {
    return "instance,mode,literal_decision,seed,verdict,wall_ms,conflicts,stages,decisions,"
           "bool_decisions,literal_decisions,r_propagations,clause_propagations,lemmas_learned,"
           "lemmas_deleted,restarts";
}

inline std::string csv_row(const RunRecord& r) {
    std::ostringstream os;
    os << r.instance << ',' << r.mode << ',' << r.literal_decision << ',' << r.seed << ','
       << verdict_str(r.verdict) << ',' << r.stats.wall_ms << ',' << r.stats.conflicts << ','
       << r.stats.stages << ',' << r.stats.decisions << ',' << r.stats.bool_decisions << ','
       << r.stats.literal_decisions << ',' << r.stats.r_propagations << ','
       << r.stats.clause_propagations << ',' << r.stats.lemmas_learned << ','
       << r.stats.lemmas_deleted << ',' << r.stats.restarts;
    return os.str();
}

/// Run every .smt2 file under dir for every config in the matrix; rows come
/// back sorted by (instance, mode, literal_decision). Worker threads each own
/// their solver instances; assembly is by task index.
inline std::vector<RunRecord> run_directory(const std::string& dir,
                                            const std::vector<Mode>& modes,
                                            const std::vector<LiteralDecision>& ldecs,
                                            const EngineConfig& base, unsigned jobs = 1) {
    std::vector<std::string> files;
    for (auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".smt2")
            files.push_back(entry.path().string());
    std::sort(files.begin(), files.end());

    struct Task {
        std::string file;
        EngineConfig cfg;
    };
    std::vector<Task> tasks;
    for (auto& f : files)
        for (Mode m : modes)
            for (LiteralDecision d : ldecs) {
                EngineConfig cfg = base;
                cfg.mode = m;
                cfg.literal_decision = d;
                tasks.push_back({f, cfg});
            }

    std::vector<RunRecord> records(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            records[i] = run_file(tasks[i].file, tasks[i].cfg);
    } else {
        std::atomic_size_t next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                records[i] = run_file(tasks[i].file, tasks[i].cfg);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    return records;
}

inline void write_csv(const std::vector<RunRecord>& records, const std::string& out_path) {
    std::ofstream out(out_path);
    out << csv_header() << "\n";
    for (auto& r : records) out << csv_row(r) << "\n";
}

}  // namespace nrasat::bench
