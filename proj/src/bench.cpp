#include "parch/bench.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <ostream>

namespace parch {

std::vector<BenchConfig> default_bench_configs()
{
    return {
        {TieBreakerKind::Bias, QueueStoreKind::Array},
        {TieBreakerKind::Bias, QueueStoreKind::XorHash},
        {TieBreakerKind::Xor, QueueStoreKind::Array},
        {TieBreakerKind::Xor, QueueStoreKind::XorHash},
    };
}

BenchReport run_bench(const InputGraph& graph, const std::string& graph_name,
                      const std::vector<BenchConfig>& configs, const BenchOptions& options)
{
    BenchReport report;
    for (const BenchConfig& config : configs) {
        PreprocessOptions popts;
        popts.threads = options.threads;
        popts.seed = options.seed;
        popts.tie_breaker = config.tie_breaker;
        popts.queue_store = config.queue_store;
        popts.sim_limit = options.sim_limit;
        popts.contract_limit = options.contract_limit;

        std::vector<double> times;
        CHResult last;
        for (unsigned rep = 0; rep < std::max(1u, options.repetitions); ++rep) {
            auto start = std::chrono::steady_clock::now();
            last = run_preprocessing(graph, popts);
            auto stop = std::chrono::steady_clock::now();
            times.push_back(std::chrono::duration<double>(stop - start).count());
        }
        std::sort(times.begin(), times.end());
        double median = times.size() % 2 == 1
                            ? times[times.size() / 2]
                            : 0.5 * (times[times.size() / 2 - 1] + times[times.size() / 2]);

        BenchRow row;
        row.tie_breaker = config.tie_breaker;
        row.queue_store = config.queue_store;
        row.threads = options.threads;
        row.graph = graph_name;
        row.wall_seconds = median;
        row.shortcut_count = last.shortcuts.size();
        row.iterations = last.iteration_count;
        row.queue_bytes_per_core = last.queue_bytes_per_core;
        report.rows.push_back(row);
    }
    return report;
}

void print_bench_table(const BenchReport& report, std::ostream& out)
{
    out << std::left << std::setw(12) << "tie-breaker" << std::setw(12) << "store"
        << std::right << std::setw(8) << "threads" << std::setw(12) << "wall[s]"
        << std::setw(12) << "shortcuts" << std::setw(12) << "iterations" << std::setw(16)
        << "bytes/core" << "  graph\n";
    for (const BenchRow& r : report.rows) {
        out << std::left << std::setw(12) << to_string(r.tie_breaker) << std::setw(12)
            << to_string(r.queue_store) << std::right << std::setw(8) << r.threads
            << std::setw(12) << std::fixed << std::setprecision(3) << r.wall_seconds
            << std::setw(12) << r.shortcut_count << std::setw(12) << r.iterations
            << std::setw(16) << r.queue_bytes_per_core << "  " << r.graph << '\n';
    }
}

void write_bench_csv(const BenchReport& report, std::ostream& out)
{
    out << "tie_breaker,queue_store,threads,graph,wall_seconds,shortcut_count,iterations,"
           "queue_bytes_per_core\n";
    for (const BenchRow& r : report.rows) {
        out << to_string(r.tie_breaker) << ',' << to_string(r.queue_store) << ',' << r.threads
            << ',' << r.graph << ',' << std::fixed << std::setprecision(6) << r.wall_seconds
            << ',' << r.shortcut_count << ',' << r.iterations << ',' << r.queue_bytes_per_core
            << '\n';
    }
}

} // namespace parch
