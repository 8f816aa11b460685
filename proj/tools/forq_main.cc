#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "forq/ba_format.hh"
#include "forq/bench.hh"
#include "forq/engine.hh"
#include "forq/generator.hh"
#include "forq/oracle.hh"

namespace {

constexpr int kExitIncluded = 0;
constexpr int kExitNotIncluded = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTimeout = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string render_word(const forq::Buchi& automaton, const forq::Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += " ";
        out += automaton.alphabet().name(w[i]);
    }
    return out;
}

struct CheckArgs {
    std::string a_path, b_path;
    bool picky = false;
    bool no_prune = false;
    bool no_acc_reduce = false;
    bool stats = false;
    bool strict = false;
    long timeout_ms = 0;
};

int run_check(const CheckArgs& args) {
    forq::EngineOptions opts;
    opts.picky = args.picky;
    opts.prune = !args.no_prune;
    opts.acc_reduce = !args.no_acc_reduce;
    if (args.timeout_ms > 0) opts.timeout = std::chrono::milliseconds(args.timeout_ms);

    auto [a, b] = forq::load_pair(read_file(args.a_path), read_file(args.b_path), args.strict);

    forq::InclusionResult result;
    try {
        result = forq::decide_inclusion(a, b, opts);
    } catch (const forq::TimeoutError& e) {
        std::cerr << e.what() << "\n";
        return kExitTimeout;
    }

    if (result.included) {
        std::cout << "INCLUDED\n";
    } else {
        std::cout << "NOT_INCLUDED\n";
        const auto& w = *result.witness;
        std::string stem = render_word(a, w.stem);
        std::cout << "counterexample: " << stem << (stem.empty() ? "" : " ") << "("
                  << render_word(a, w.period) << ")^w\n";
    }
    if (args.stats) {
        std::cout << "queries=" << result.stats.membership_queries << "\n"
                  << "stem_basis=" << result.stats.max_stem_basis << "\n"
                  << "period_basis=" << result.stats.max_period_basis << "\n";
        char buf[64];
        std::snprintf(buf, sizeof buf, "time_ms=%.3f\n", result.stats.time_ms);
        std::cout << buf;
    }
    return result.included ? kExitIncluded : kExitNotIncluded;
}

struct BenchArgs {
    std::string input;
    std::string csv_path;
    std::string survival_path;
    int jobs = 1;
    long timeout_ms = 0;
    bool picky = false;
    bool no_prune = false;
    bool no_acc_reduce = false;
};

int run_bench_cmd(const BenchArgs& args) {
    forq::EngineOptions opts;
    opts.picky = args.picky;
    opts.prune = !args.no_prune;
    opts.acc_reduce = !args.no_acc_reduce;
    if (args.timeout_ms > 0) opts.timeout = std::chrono::milliseconds(args.timeout_ms);

    auto pairs = forq::load_bench_pairs(args.input);
    auto records = forq::run_bench(pairs, opts, args.jobs);

    std::string csv = forq::bench_csv(records);
    if (args.csv_path.empty()) {
        std::cout << csv;
    } else {
        std::ofstream out(args.csv_path);
        if (!out) throw std::runtime_error("cannot write " + args.csv_path);
        out << csv;
    }
    if (!args.survival_path.empty()) {
        std::ofstream out(args.survival_path);
        if (!out) throw std::runtime_error("cannot write " + args.survival_path);
        out << forq::bench_survival(records);
    }
    return 0;
}

struct SelftestArgs {
    int pairs = 100;
    int max_states = 4;
    std::uint64_t seed = 1;
};

int run_selftest(const SelftestArgs& args) {
    int disagreements = 0;
    for (int i = 0; i < args.pairs; ++i) {
        forq::GenParams pa{1 + static_cast<int>((args.seed + i) % args.max_states), 2, 1.0, 0.5,
                           args.seed + 2 * static_cast<std::uint64_t>(i)};
        forq::GenParams pb{1 + static_cast<int>((args.seed + i / 2) % args.max_states), 2, 1.0,
                           0.5, args.seed + 2 * static_cast<std::uint64_t>(i) + 1};
        forq::Buchi a = forq::generate(pa);
        forq::Buchi b = forq::generate(pb);
        bool engine = forq::decide_inclusion(a, b).included;
        bool oracle = forq::oracle_inclusion(a, b);
        if (engine != oracle) {
            ++disagreements;
            std::cerr << "disagreement on pair " << i << ": engine=" << engine
                      << " oracle=" << oracle << "\n";
        }
    }
    std::cout << "selftest: " << args.pairs << " pairs, " << disagreements << " disagreements\n";
    return disagreements == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ω-regular language inclusion between Büchi automata"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "decide L(A) ⊆ L(B) for two .ba files");
    check->add_option("A", check_args.a_path, "left automaton (.ba)")->required();
    check->add_option("B", check_args.b_path, "right automaton (.ba)")->required();
    check->add_flag("--picky", check_args.picky, "also filter periods against their stem");
    check->add_flag("--no-prune", check_args.no_prune, "keep subsumed words in every vector");
    check->add_flag("--no-acc-reduce", check_args.no_acc_reduce,
                    "skip the accepting-set reduction of A");
    check->add_flag("--stats", check_args.stats, "print key=value statistics");
    check->add_flag("--strict", check_args.strict, "reject .ba files relying on defaults");
    check->add_option("--timeout-ms", check_args.timeout_ms, "give up after this many ms");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "run a directory or manifest of pairs");
    bench->add_option("input", bench_args.input, "manifest file or directory")->required();
    bench->add_option("--csv", bench_args.csv_path, "write per-pair CSV here");
    bench->add_option("--survival", bench_args.survival_path, "write survival-plot data here");
    bench->add_option("--jobs", bench_args.jobs, "worker threads");
    bench->add_option("--timeout-ms", bench_args.timeout_ms, "per-pair timeout");
    bench->add_flag("--picky", bench_args.picky, "also filter periods against their stem");
    bench->add_flag("--no-prune", bench_args.no_prune, "keep subsumed words in every vector");
    bench->add_flag("--no-acc-reduce", bench_args.no_acc_reduce,
                    "skip the accepting-set reduction of A");

    SelftestArgs selftest_args;
    auto* selftest = app.add_subcommand("selftest", "cross-check the engine against the oracle");
    selftest->group(""); // hidden
    selftest->add_option("--pairs", selftest_args.pairs, "number of random pairs");
    selftest->add_option("--max-states", selftest_args.max_states, "states per automaton (≤ 4)");
    selftest->add_option("--seed", selftest_args.seed, "base seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (check->parsed()) return run_check(check_args);
        if (bench->parsed()) return run_bench_cmd(bench_args);
        if (selftest->parsed()) return run_selftest(selftest_args);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
