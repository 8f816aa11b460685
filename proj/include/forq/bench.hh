#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forq/engine.hh"

namespace forq {

/// One benchmark pair: a name and the two automaton files.
struct BenchPair {
    std::string name;
    std::string a_path;
    std::string b_path;
};

enum class BenchStatus { Ok, Timeout, Error };

struct BenchRecord {
    std::string name;
    BenchStatus status = BenchStatus::Error;
    bool included = false; // meaningful only when status == Ok
    double time_ms = 0.0;
    std::uint64_t queries = 0;
    std::size_t stem_basis = 0;
    std::size_t period_basis = 0;
};

/// Pairs listed in a manifest (`name a.ba b.ba` per line, blank lines
/// skipped; relative paths resolve against the manifest's directory), or
/// discovered in a directory by the `<name>_A.ba` / `<name>_B.ba`
/// convention.
std::vector<BenchPair> load_bench_pairs(const std::string& dir_or_manifest);

/// Runs every pair, optionally across `jobs` worker threads. Results come
/// back in input order.
std::vector<BenchRecord> run_bench(const std::vector<BenchPair>& pairs, const EngineOptions& opts,
                                   int jobs = 1);

/// CSV rows, one per record, with the fixed header.
std::string bench_csv(const std::vector<BenchRecord>& records);

/// Survival-plot data: successes sorted by runtime ascending, one
/// `cumulative_ms count` row each. Timeouts and errors are left out.
std::string bench_survival(const std::vector<BenchRecord>& records);

} // namespace forq
