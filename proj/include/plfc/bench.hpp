#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plfc/pipeline.hpp"

namespace plfc {

struct BenchRecord {
    std::string file_id;   // path relative to the corpus root
    std::string partition; // first-level subdirectory, empty for top-level files
    bool ok = false;
    std::string error;
    uint64_t orig_csv_bytes = 0;
    uint64_t raw_pixel_bytes = 0;
    uint64_t container_bytes = 0;
    double csv_ratio = 0;
    double raw_ratio = 0;
    double compress_seconds = 0;
    double decompress_seconds = 0;
    uint64_t compress_peak_bytes = 0;
    uint64_t decompress_peak_bytes = 0;
    uint32_t orig_rows = 0;
    uint32_t orig_cols = 0;
    uint32_t carved_rows = 0;
    uint32_t carved_cols = 0;
};

struct MetricAgg {
    std::string metric;
    double mean = 0;
    double median = 0;
    double min = 0;
    double max = 0;
};

struct PartitionAgg {
    std::string partition; // "all" plus one per subdirectory with successes
    uint64_t count = 0;
    std::vector<MetricAgg> metrics;
};

struct BenchReport {
    std::string host;
    std::string timestamp;
    int jobs = 1;
    CompressionSpec spec;
    std::vector<BenchRecord> records; // sorted by file_id
    std::vector<PartitionAgg> aggregates;
};

// Compresses and decompresses every *.csv under corpus_dir. Per-file
// failures land in the report as error records; timings exclude file I/O.
BenchReport run_bench(const std::string& corpus_dir, const CompressionSpec& spec, int jobs);

std::vector<PartitionAgg> compute_aggregates(const std::vector<BenchRecord>& records);

std::string emit_report(const BenchReport& report, std::string_view format); // json or csv

// Inverse of the JSON emitter; revalidates aggregate means against records.
BenchReport parse_report_json(std::string_view text);

struct ProbeRow {
    int side = 0;
    uint64_t pixels = 0;
    double seconds = 0;
};

// Times compression of synthetic random square images, one per side length.
std::vector<ProbeRow> scaling_probe(const std::vector<int>& sides, const CompressionSpec& spec);
std::string probe_table(const std::vector<ProbeRow>& rows);

} // namespace plfc
