#pragma once

#include "parch/contraction.hpp"
#include "parch/graph.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace parch {

struct BenchConfig {
    TieBreakerKind tie_breaker;
    QueueStoreKind queue_store;
};

/// The four backend combinations, bias/array first.
std::vector<BenchConfig> default_bench_configs();

struct BenchRow {
    TieBreakerKind tie_breaker;
    QueueStoreKind queue_store;
    unsigned threads = 1;
    std::string graph;
    double wall_seconds = 0.0; // median over repetitions
    std::uint64_t shortcut_count = 0;
    std::uint32_t iterations = 0;
    std::size_t queue_bytes_per_core = 0;
};

struct BenchReport {
    std::vector<BenchRow> rows;
};

struct BenchOptions {
    unsigned threads = 1;
    std::uint64_t seed = 0;
    unsigned repetitions = 3;
    std::uint64_t sim_limit = 1000;
    std::uint64_t contract_limit = 2000;
};

/// Preprocesses the graph once per configuration and repetition, timing only
/// the preprocessing run (the graph is parsed by the caller). Reports the
/// median wall time per configuration.
BenchReport run_bench(const InputGraph& graph, const std::string& graph_name,
                      const std::vector<BenchConfig>& configs, const BenchOptions& options);

void print_bench_table(const BenchReport& report, std::ostream& out);
void write_bench_csv(const BenchReport& report, std::ostream& out);

} // namespace parch
