#include "plfc/bench.hpp"

#include <sys/utsname.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "plfc/error.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace plfc {
namespace {

struct MetricDef {
    const char* name;
    double (*get)(const BenchRecord&);
};

constexpr MetricDef kMetrics[] = {
    {"orig_csv_bytes", [](const BenchRecord& r) { return double(r.orig_csv_bytes); }},
    {"raw_pixel_bytes", [](const BenchRecord& r) { return double(r.raw_pixel_bytes); }},
    {"container_bytes", [](const BenchRecord& r) { return double(r.container_bytes); }},
    {"csv_ratio", [](const BenchRecord& r) { return r.csv_ratio; }},
    {"raw_ratio", [](const BenchRecord& r) { return r.raw_ratio; }},
    {"compress_seconds", [](const BenchRecord& r) { return r.compress_seconds; }},
    {"decompress_seconds", [](const BenchRecord& r) { return r.decompress_seconds; }},
    {"compress_peak_bytes", [](const BenchRecord& r) { return double(r.compress_peak_bytes); }},
    {"decompress_peak_bytes", [](const BenchRecord& r) { return double(r.decompress_peak_bytes); }},
};

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(Err::EmptyCorpus, "cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

double elapsed_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BenchRecord bench_one(const fs::path& root, const fs::path& rel, const CompressionSpec& spec) {
    BenchRecord rec;
    rec.file_id = rel.generic_string();
    auto it = rel.begin();
    if (std::distance(rel.begin(), rel.end()) > 1) rec.partition = it->generic_string();
    try {
        std::string text = read_file(root / rel);
        rec.orig_csv_bytes = text.size();
        GrayImage img = parse_csv(text);
        rec.orig_rows = uint32_t(img.rows);
        rec.orig_cols = uint32_t(img.cols);
        rec.raw_pixel_bytes = img.pixel_count();

        BufferMeter cm;
        auto t0 = std::chrono::steady_clock::now();
        std::vector<uint8_t> container = compress(img, spec, &cm);
        rec.compress_seconds = elapsed_since(t0);
        rec.compress_peak_bytes = cm.peak;
        rec.container_bytes = container.size();

        ContainerHeader h = read_container(container).first;
        rec.carved_rows = h.carved_rows;
        rec.carved_cols = h.carved_cols;

        BufferMeter dm;
        t0 = std::chrono::steady_clock::now();
        std::string csv = decompress(container, &dm);
        rec.decompress_seconds = elapsed_since(t0);
        rec.decompress_peak_bytes = dm.peak;
        (void)csv;

        rec.csv_ratio = compression_ratio(rec.orig_csv_bytes, rec.container_bytes);
        rec.raw_ratio = compression_ratio(rec.raw_pixel_bytes, rec.container_bytes);
        rec.ok = true;
    } catch (const Error& e) {
        rec.error = std::string(err_name(e.code())) + ": " + e.what();
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

std::string host_string() {
    utsname u{};
    if (uname(&u) != 0) return "unknown";
    return std::string(u.sysname) + " " + u.release + " " + u.machine;
}

std::string iso_timestamp() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

PartitionAgg aggregate_group(const std::string& name, const std::vector<const BenchRecord*>& recs) {
    PartitionAgg agg;
    agg.partition = name;
    agg.count = recs.size();
    for (const MetricDef& m : kMetrics) {
        std::vector<double> vals;
        vals.reserve(recs.size());
        for (const BenchRecord* r : recs) vals.push_back(m.get(*r));
        MetricAgg ma;
        ma.metric = m.name;
        double sum = 0;
        ma.min = vals[0];
        ma.max = vals[0];
        for (double v : vals) {
            sum += v;
            ma.min = std::min(ma.min, v);
            ma.max = std::max(ma.max, v);
        }
        ma.mean = sum / double(vals.size());
        ma.median = median_of(vals);
        agg.metrics.push_back(std::move(ma));
    }
    return agg;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

json spec_to_json(const CompressionSpec& spec) {
    json j;
    j["codec"] = codec_name(spec.codec);
    if (spec.seams >= 0) {
        j["seams"] = spec.seams;
        j["seam_frac"] = nullptr;
    } else {
        j["seams"] = nullptr;
        j["seam_frac"] = spec.seam_frac;
    }
    return j;
}

CompressionSpec spec_from_json(const json& j) {
    CompressionSpec spec;
    spec.codec = codec_from_name(j.at("codec").get<std::string>());
    if (!j.at("seams").is_null())
        spec.seams = j.at("seams").get<int>();
    else
        spec.seam_frac = j.at("seam_frac").get<double>();
    return spec;
}

} // namespace

std::vector<PartitionAgg> compute_aggregates(const std::vector<BenchRecord>& records) {
    std::vector<const BenchRecord*> all;
    std::vector<std::string> names;
    for (const BenchRecord& r : records) {
        if (!r.ok) continue;
        all.push_back(&r);
        if (!r.partition.empty() &&
            std::find(names.begin(), names.end(), r.partition) == names.end())
            names.push_back(r.partition);
    }
    std::vector<PartitionAgg> out;
    if (all.empty()) return out;
    std::sort(names.begin(), names.end());
    out.push_back(aggregate_group("all", all));
    for (const std::string& name : names) {
        std::vector<const BenchRecord*> group;
        for (const BenchRecord* r : all)
            if (r->partition == name) group.push_back(r);
        out.push_back(aggregate_group(name, group));
    }
    return out;
}

BenchReport run_bench(const std::string& corpus_dir, const CompressionSpec& spec, int jobs) {
    std::vector<fs::path> files;
    std::error_code ec;
    for (fs::recursive_directory_iterator it(corpus_dir, ec), end; !ec && it != end;
         it.increment(ec)) {
        if (it->is_regular_file() && it->path().extension() == ".csv")
            files.push_back(fs::relative(it->path(), corpus_dir));
    }
    if (ec) throw Error(Err::EmptyCorpus, corpus_dir + ": " + ec.message());
    if (files.empty()) throw Error(Err::EmptyCorpus, "no .csv files under " + corpus_dir);
    std::sort(files.begin(), files.end(),
              [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });

    BenchReport report;
    report.jobs = std::max(1, jobs);
    report.spec = spec;
    report.records.resize(files.size());

    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < files.size();)
            report.records[i] = bench_one(corpus_dir, files[i], spec);
    };
    int nthreads = std::min<int>(report.jobs, int(files.size()));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    report.aggregates = compute_aggregates(report.records);
    report.host = host_string();
    report.timestamp = iso_timestamp();
    return report;
}

std::string emit_report(const BenchReport& report, std::string_view format) {
    if (format == "json") {
        json j;
        j["schema"] = "plfc-bench-1";
        j["host"] = report.host;
        j["timestamp"] = report.timestamp;
        j["jobs"] = report.jobs;
        j["spec"] = spec_to_json(report.spec);
        json recs = json::array();
        for (const BenchRecord& r : report.records) {
            json jr;
            jr["file_id"] = r.file_id;
            jr["partition"] = r.partition;
            jr["ok"] = r.ok;
            jr["error"] = r.error;
            jr["orig_csv_bytes"] = r.orig_csv_bytes;
            jr["raw_pixel_bytes"] = r.raw_pixel_bytes;
            jr["container_bytes"] = r.container_bytes;
            jr["csv_ratio"] = r.csv_ratio;
            jr["raw_ratio"] = r.raw_ratio;
            jr["compress_seconds"] = r.compress_seconds;
            jr["decompress_seconds"] = r.decompress_seconds;
            jr["compress_peak_bytes"] = r.compress_peak_bytes;
            jr["decompress_peak_bytes"] = r.decompress_peak_bytes;
            jr["orig_rows"] = r.orig_rows;
            jr["orig_cols"] = r.orig_cols;
            jr["carved_rows"] = r.carved_rows;
            jr["carved_cols"] = r.carved_cols;
            recs.push_back(std::move(jr));
        }
        j["records"] = std::move(recs);
        json aggs = json::array();
        for (const PartitionAgg& a : report.aggregates) {
            json ja;
            ja["partition"] = a.partition;
            ja["count"] = a.count;
            json ms = json::array();
            for (const MetricAgg& m : a.metrics)
                ms.push_back({{"metric", m.metric},
                              {"mean", m.mean},
                              {"median", m.median},
                              {"min", m.min},
                              {"max", m.max}});
            ja["metrics"] = std::move(ms);
            aggs.push_back(std::move(ja));
        }
        j["aggregates"] = std::move(aggs);
        return j.dump(2) + "\n";
    }
    if (format == "csv") {
        std::string out =
            "file_id,partition,ok,error,orig_csv_bytes,raw_pixel_bytes,container_bytes,"
            "csv_ratio,raw_ratio,compress_seconds,decompress_seconds,compress_peak_bytes,"
            "decompress_peak_bytes,orig_rows,orig_cols,carved_rows,carved_cols\n";
        char buf[64];
        auto num = [&](double v) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return std::string(buf);
        };
        for (const BenchRecord& r : report.records) {
            out += csv_field(r.file_id) + ',' + csv_field(r.partition) + ',' +
                   (r.ok ? "true" : "false") + ',' + csv_field(r.error) + ',' +
                   std::to_string(r.orig_csv_bytes) + ',' + std::to_string(r.raw_pixel_bytes) +
                   ',' + std::to_string(r.container_bytes) + ',' + num(r.csv_ratio) + ',' +
                   num(r.raw_ratio) + ',' + num(r.compress_seconds) + ',' +
                   num(r.decompress_seconds) + ',' + std::to_string(r.compress_peak_bytes) + ',' +
                   std::to_string(r.decompress_peak_bytes) + ',' + std::to_string(r.orig_rows) +
                   ',' + std::to_string(r.orig_cols) + ',' + std::to_string(r.carved_rows) + ',' +
                   std::to_string(r.carved_cols) + '\n';
        }
        for (const PartitionAgg& a : report.aggregates)
            for (const MetricAgg& m : a.metrics)
                out += "AGG," + csv_field(a.partition) + ',' + m.metric + ',' +
                       std::to_string(a.count) + ',' + num(m.mean) + ',' + num(m.median) + ',' +
                       num(m.min) + ',' + num(m.max) + '\n';
        return out;
    }
    throw Error(Err::BadReport, "unknown report format '" + std::string(format) + "'");
}

BenchReport parse_report_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(Err::BadReport, e.what());
    }
    BenchReport report;
    try {
        report.host = j.at("host").get<std::string>();
        report.timestamp = j.at("timestamp").get<std::string>();
        report.jobs = j.at("jobs").get<int>();
        report.spec = spec_from_json(j.at("spec"));
        for (const json& jr : j.at("records")) {
            BenchRecord r;
            r.file_id = jr.at("file_id").get<std::string>();
            r.partition = jr.at("partition").get<std::string>();
            r.ok = jr.at("ok").get<bool>();
            r.error = jr.at("error").get<std::string>();
            r.orig_csv_bytes = jr.at("orig_csv_bytes").get<uint64_t>();
            r.raw_pixel_bytes = jr.at("raw_pixel_bytes").get<uint64_t>();
            r.container_bytes = jr.at("container_bytes").get<uint64_t>();
            r.csv_ratio = jr.at("csv_ratio").get<double>();
            r.raw_ratio = jr.at("raw_ratio").get<double>();
            r.compress_seconds = jr.at("compress_seconds").get<double>();
            r.decompress_seconds = jr.at("decompress_seconds").get<double>();
            r.compress_peak_bytes = jr.at("compress_peak_bytes").get<uint64_t>();
            r.decompress_peak_bytes = jr.at("decompress_peak_bytes").get<uint64_t>();
            r.orig_rows = jr.at("orig_rows").get<uint32_t>();
            r.orig_cols = jr.at("orig_cols").get<uint32_t>();
            r.carved_rows = jr.at("carved_rows").get<uint32_t>();
            r.carved_cols = jr.at("carved_cols").get<uint32_t>();
            report.records.push_back(std::move(r));
        }
        for (const json& ja : j.at("aggregates")) {
            PartitionAgg a;
            a.partition = ja.at("partition").get<std::string>();
            a.count = ja.at("count").get<uint64_t>();
            for (const json& jm : ja.at("metrics")) {
                MetricAgg m;
                m.metric = jm.at("metric").get<std::string>();
                m.mean = jm.at("mean").get<double>();
                m.median = jm.at("median").get<double>();
                m.min = jm.at("min").get<double>();
                m.max = jm.at("max").get<double>();
                a.metrics.push_back(std::move(m));
            }
            report.aggregates.push_back(std::move(a));
        }
    } catch (const json::exception& e) {
        throw Error(Err::BadReport, e.what());
    }

    // Stored means must match recomputation from the records.
    std::vector<PartitionAgg> fresh = compute_aggregates(report.records);
    if (fresh.size() != report.aggregates.size())
        throw Error(Err::BadReport, "aggregate partition set disagrees with records");
    for (size_t i = 0; i < fresh.size(); ++i) {
        const PartitionAgg& a = report.aggregates[i];
        const PartitionAgg& b = fresh[i];
        if (a.partition != b.partition || a.count != b.count ||
            a.metrics.size() != b.metrics.size())
            throw Error(Err::BadReport, "aggregate shape disagrees with records");
        for (size_t k = 0; k < a.metrics.size(); ++k) {
            double x = a.metrics[k].mean, y = b.metrics[k].mean;
            double tol = 1e-9 * std::max({1.0, std::abs(x), std::abs(y)});
            if (a.metrics[k].metric != b.metrics[k].metric || std::abs(x - y) > tol)
                throw Error(Err::BadReport, "aggregate mean for " + a.metrics[k].metric +
                                                " in " + a.partition + " disagrees with records");
        }
    }
    return report;
}

std::vector<ProbeRow> scaling_probe(const std::vector<int>& sides, const CompressionSpec& spec) {
    if (sides.empty()) throw Error(Err::EmptyCorpus, "no probe sizes");
    for (size_t i = 0; i < sides.size(); ++i)
        if (sides[i] < 1 || (i > 0 && sides[i] <= sides[i - 1]))
            throw Error(Err::EmptyCorpus, "probe sizes must be positive and ascending");

    std::vector<ProbeRow> rows;
    for (int side : sides) {
        GrayImage img;
        img.rows = side;
        img.cols = side;
        img.pixels.resize(img.pixel_count());
        std::mt19937 rng(0x5EA3C0DEu ^ uint32_t(side));
        std::uniform_int_distribution<int> dist(0, 255);
        for (auto& p : img.pixels) p = uint8_t(dist(rng));

        ProbeRow row;
        row.side = side;
        row.pixels = img.pixel_count();
        auto t0 = std::chrono::steady_clock::now();
        std::vector<uint8_t> container = compress(img, spec);
        row.seconds = elapsed_since(t0);
        (void)container;
        rows.push_back(row);
    }
    return rows;
}

std::string probe_table(const std::vector<ProbeRow>& rows) {
    std::string out = "side,pixels,seconds\n";
    char buf[80];
    for (const ProbeRow& r : rows) {
        std::snprintf(buf, sizeof buf, "%d,%llu,%.6f\n", r.side, (unsigned long long)r.pixels,
                      r.seconds);
        out += buf;
    }
    return out;
}

} // namespace plfc
