// Parallel range sweep over (d, p): accumulates the four case histograms of
// the quotient q with deterministic merge, periodic checkpointing, and a
// comma-separated output format.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "unitfreq/orderfind.hpp"

namespace unitfreq {

struct SweepConfig {
    std::uint64_t d_min = 2;
    std::uint64_t d_max = 0;
    std::uint64_t p_min = 3;
    std::uint64_t p_max = 0;
    unsigned workers = 1;
    std::string checkpoint_path;          // empty: no checkpointing
    std::string output_path;              // empty: results returned only
    std::uint32_t chunk_size = 64;        // d values per work unit
    std::uint64_t max_chunks = 0;         // 0 = run to completion, else stop after N chunks
    std::uint32_t checkpoint_every = 64;  // completed chunks between periodic saves
};

// Per-case map q -> count; total is the case's record count S_j.
struct Histogram {
    int case_j = 0;
    std::map<std::uint64_t, std::uint64_t> counts;
    std::uint64_t total = 0;
};

// Pointwise addition; requires matching case keys.
Histogram merge(const Histogram& a, const Histogram& b);

struct SweepStats {
    std::uint64_t pairs = 0;       // records accumulated, including any resumed portion
    std::uint64_t violations = 0;  // records failing the per-record divisor-law recheck
    std::uint64_t d_done = 0;
    std::uint64_t d_total = 0;
    double wall_seconds = 0.0;
    bool complete = false;
};

struct SweepResult {
    std::array<Histogram, 4> histograms;  // indexed by case j-1
    SweepStats stats;
};

// One pass over every valid d in [d_min, d_max] and every odd prime
// p in [p_min, p_max] with p not dividing d. Work is partitioned into
// d-chunks; each worker owns private accumulators, merged at chunk
// completion. Counts are exact integers, so the result is independent of
// worker count and scheduling. Writes output/metadata only on completion.
SweepResult run_sweep(const SweepConfig& config);

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Checkpoint {
    int schema = 1;
    std::string digest;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> completed_d;  // inclusive, sorted, disjoint
    std::array<Histogram, 4> partial;
    std::uint64_t pairs = 0;
};

// Stable hash of (d_min, d_max, p_min, p_max); a resume is refused unless it matches.
std::string config_digest(const SweepConfig& config);

// Atomic write (temp file + rename).
void checkpoint_save(const Checkpoint& cp, const std::string& path);

// Load and validate against the config digest. Corrupt files and digest
// mismatches raise CheckpointError; there is no silent partial resume.
Checkpoint checkpoint_load(const std::string& path, const SweepConfig& config);

// Output format: header `case,q,count,total`, rows sorted by (case, q).
void write_output_csv(const SweepResult& result, const std::string& path);
void write_metadata(const SweepResult& result, const SweepConfig& config, const std::string& output_path);
std::array<Histogram, 4> read_output_csv(const std::string& path);

}  // namespace unitfreq
