#include "forq/bench.hh"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "forq/ba_format.hh"

namespace fs = std::filesystem;

namespace forq {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<BenchPair> pairs_from_manifest(const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in) throw std::runtime_error("cannot read manifest " + manifest.string());
    const fs::path base = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");

    std::vector<BenchPair> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream row(line);
        std::string name, a, b, extra;
        if (!(row >> name)) continue; // blank line
        if (!(row >> a >> b) || (row >> extra))
            throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                     ": expected `name a.ba b.ba`");
        auto resolve = [&](const std::string& p) {
            fs::path fp(p);
            return fp.is_absolute() ? fp.string() : (base / fp).string();
        };
        pairs.push_back({name, resolve(a), resolve(b)});
    }
    return pairs;
}

std::vector<BenchPair> pairs_from_directory(const fs::path& dir) {
    std::vector<BenchPair> pairs;
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string file = entry.path().filename().string();
        const std::string suffix = "_A.ba";
        if (file.size() > suffix.size() && file.ends_with(suffix))
            names.push_back(file.substr(0, file.size() - suffix.size()));
    }
    std::sort(names.begin(), names.end());
    for (const auto& name : names) {
        fs::path a = dir / (name + "_A.ba");
        fs::path b = dir / (name + "_B.ba");
        if (fs::exists(b)) pairs.push_back({name, a.string(), b.string()});
    }
    return pairs;
}

BenchRecord run_one(const BenchPair& pair, const EngineOptions& opts) {
    BenchRecord rec;
    rec.name = pair.name;
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    };
    try {
        auto [a, b] = load_pair(read_file(pair.a_path), read_file(pair.b_path));
        InclusionResult result = decide_inclusion(a, b, opts);
        rec.status = BenchStatus::Ok;
        rec.included = result.included;
        rec.time_ms = result.stats.time_ms;
        rec.queries = result.stats.membership_queries;
        rec.stem_basis = result.stats.max_stem_basis;
        rec.period_basis = result.stats.max_period_basis;
    } catch (const TimeoutError&) {
        rec.status = BenchStatus::Timeout;
        rec.time_ms = elapsed();
    } catch (const std::exception&) {
        rec.status = BenchStatus::Error;
        rec.time_ms = elapsed();
    }
    return rec;
}

} // namespace

std::vector<BenchPair> load_bench_pairs(const std::string& dir_or_manifest) {
    fs::path p(dir_or_manifest);
    if (fs::is_directory(p)) return pairs_from_directory(p);
    return pairs_from_manifest(p);
}

std::vector<BenchRecord> run_bench(const std::vector<BenchPair>& pairs, const EngineOptions& opts,
                                   int jobs) {
    std::vector<BenchRecord> records(pairs.size());
    if (pairs.empty()) return records;

    jobs = std::max(1, std::min<int>(jobs, static_cast<int>(pairs.size())));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) return;
            records[i] = run_one(pairs[i], opts);
        }
    };
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }
    return records;
}

std::string bench_csv(const std::vector<BenchRecord>& records) {
    std::ostringstream out;
    out << "name,verdict,time_ms,queries,stem_basis,period_basis,status\n";
    for (const auto& r : records) {
        const char* status = r.status == BenchStatus::Ok        ? "ok"
                             : r.status == BenchStatus::Timeout ? "timeout"
                                                                : "error";
        out << r.name << ",";
        if (r.status == BenchStatus::Ok) out << (r.included ? "INCLUDED" : "NOT_INCLUDED");
        char buf[64];
        std::snprintf(buf, sizeof buf, ",%.3f,", r.time_ms);
        out << buf << r.queries << "," << r.stem_basis << "," << r.period_basis << "," << status
            << "\n";
    }
    return out.str();
}

std::string bench_survival(const std::vector<BenchRecord>& records) {
    std::vector<double> times;
    for (const auto& r : records)
        if (r.status == BenchStatus::Ok) times.push_back(r.time_ms);
    std::sort(times.begin(), times.end());

    std::ostringstream out;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        cumulative += times[i];
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.3f %zu\n", cumulative, i + 1);
        out << buf;
    }
    return out.str();
}

} // namespace forq
