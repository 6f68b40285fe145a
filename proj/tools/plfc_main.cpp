#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "plfc/bench.hpp"
#include "plfc/container.hpp"
#include "plfc/error.hpp"
#include "plfc/pipeline.hpp"

namespace fs = std::filesystem;
using namespace plfc;

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return std::move(ss).str();
}

// Write to a sibling temp file and rename, so failures leave no partial output.
void write_file_atomic(const fs::path& p, const void* data, size_t size) {
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    fs::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(static_cast<const char*>(data), std::streamsize(size));
        if (!out) {
            fs::remove(tmp);
            throw std::runtime_error("short write to " + tmp.string());
        }
    }
    fs::rename(tmp, p);
}

struct SpecFlags {
    int seams = -1;
    double frac = -1.0;
    std::string codec = "lzw";
};

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
    auto* s = cmd->add_option("--seams", f.seams, "number of seams to carve")
                  ->check(CLI::NonNegativeNumber);
    auto* fr = cmd->add_option("--seam-frac", f.frac, "fraction of width to carve (default 0.20)");
    s->excludes(fr);
    fr->excludes(s);
    cmd->add_option("--codec", f.codec, "store|lzw|huffman|lz77")
        ->check(CLI::IsMember({"store", "lzw", "huffman", "lz77"}));
}

// Returns 0 on success, 2 on bad flag combinations.
int make_spec(const SpecFlags& f, bool frac_given, CompressionSpec& spec) {
    spec = CompressionSpec{};
    spec.codec = codec_from_name(f.codec);
    if (f.seams >= 0) {
        spec.seams = f.seams;
    } else if (frac_given) {
        if (!(f.frac >= 0.0 && f.frac < 1.0)) {
            std::fprintf(stderr, "error: --seam-frac must be in [0,1)\n");
            return 2;
        }
        spec.seam_frac = f.frac;
    }
    return 0;
}

struct JobResult {
    std::string line;  // stdout on success
    std::string error; // stderr on failure
};

// Runs fn over every (in, out) pair with a small worker pool, then prints
// results in input order. Returns 1 if anything failed.
int run_batch(const std::vector<std::pair<fs::path, fs::path>>& pairs, int jobs, bool quiet,
              const std::function<JobResult(const fs::path&, const fs::path&)>& fn) {
    std::vector<JobResult> results(pairs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next.fetch_add(1)) < pairs.size();)
            results[i] = fn(pairs[i].first, pairs[i].second);
    };
    int nthreads = std::max(1, std::min<int>(jobs, int(pairs.size())));
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    int rc = 0;
    for (const JobResult& r : results) {
        if (!r.error.empty()) {
            std::fprintf(stderr, "error: %s\n", r.error.c_str());
            rc = 1;
        } else if (!quiet && !r.line.empty()) {
            std::printf("%s\n", r.line.c_str());
        }
    }
    return rc;
}

std::vector<fs::path> collect(const fs::path& dir, const char* ext) {
    std::vector<fs::path> files;
    for (auto it = fs::recursive_directory_iterator(dir);
         it != fs::recursive_directory_iterator(); ++it)
        if (it->is_regular_file() && it->path().extension() == ext)
            files.push_back(fs::relative(it->path(), dir));
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return a.generic_string() < b.generic_string();
    });
    return files;
}

// Builds the (in, out) work list for a file-or-directory input. Returns 2
// on usage problems, 0 otherwise.
int plan_io(const fs::path& input, std::string out, const char* in_ext, const char* out_ext,
            std::vector<std::pair<fs::path, fs::path>>& pairs) {
    if (fs::is_directory(input)) {
        if (out.empty()) {
            std::fprintf(stderr, "error: --out is required for directory input\n");
            return 2;
        }
        std::vector<fs::path> files = collect(input, in_ext);
        if (files.empty()) {
            std::fprintf(stderr, "error: no %s files under %s\n", in_ext, input.string().c_str());
            return 2;
        }
        for (const fs::path& rel : files) {
            fs::path dst = fs::path(out) / rel;
            dst.replace_extension(out_ext);
            pairs.emplace_back(input / rel, dst);
        }
        return 0;
    }
    fs::path dst = out.empty() ? fs::path(input).replace_extension(out_ext) : fs::path(out);
    pairs.emplace_back(input, dst);
    return 0;
}

int cmd_compress(const fs::path& input, const std::string& out, const CompressionSpec& spec,
                 int jobs, bool quiet) {
    std::vector<std::pair<fs::path, fs::path>> pairs;
    if (int rc = plan_io(input, out, ".csv", ".plfc", pairs)) return rc;
    return run_batch(pairs, jobs, quiet, [&](const fs::path& in, const fs::path& dst) {
        JobResult r;
        try {
            std::string text = read_file(in);
            GrayImage img = parse_csv(text);
            std::vector<uint8_t> container = compress(img, spec);
            write_file_atomic(dst, container.data(), container.size());
            double csv_r = compression_ratio(text.size(), container.size());
            double raw_r = compression_ratio(img.pixel_count(), container.size());
            r.line = in.string() + " -> " + dst.string() + ": " + std::to_string(text.size()) +
                     " -> " + std::to_string(container.size()) + " bytes, csv " +
                     format_ratio(csv_r) + ", raw " + format_ratio(raw_r);
        } catch (const std::exception& e) {
            r.error = in.string() + ": " + e.what();
        }
        return r;
    });
}

int cmd_decompress(const fs::path& input, const std::string& out, int jobs, bool quiet) {
    std::vector<std::pair<fs::path, fs::path>> pairs;
    if (int rc = plan_io(input, out, ".plfc", ".csv", pairs)) return rc;
    return run_batch(pairs, jobs, quiet, [&](const fs::path& in, const fs::path& dst) {
        JobResult r;
        try {
            std::string bytes = read_file(in);
            std::span<const uint8_t> view(reinterpret_cast<const uint8_t*>(bytes.data()),
                                          bytes.size());
            std::string csv = decompress(view);
            write_file_atomic(dst, csv.data(), csv.size());
            ContainerHeader h = parse_header(view);
            r.line = in.string() + " -> " + dst.string() + ": " + std::to_string(h.carved_rows) +
                     "x" + std::to_string(h.carved_cols) + " pixels";
        } catch (const std::exception& e) {
            r.error = in.string() + ": " + e.what();
        }
        return r;
    });
}

int cmd_inspect(const fs::path& input) {
    try {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open " + input.string());
        uint8_t buf[kContainerHeaderSize];
        in.read(reinterpret_cast<char*>(buf), kContainerHeaderSize);
        size_t got = size_t(in.gcount());
        ContainerHeader h = parse_header(std::span<const uint8_t>(buf, got));

        uint64_t fsize = fs::file_size(input);
        uint64_t expect = kContainerHeaderSize + (h.payload_bit_length + 7) / 8;
        if (fsize != expect)
            throw Error(Err::LengthMismatch, "file is " + std::to_string(fsize) +
                                                 " bytes, header promises " + std::to_string(expect));

        uint64_t raw = uint64_t(h.orig_rows) * h.orig_cols;
        double retention = double(uint64_t(h.carved_rows) * h.carved_cols) / double(raw);
        std::printf("codec: %s\n", codec_name(h.codec));
        std::printf("carved_dims: %ux%u\n", h.carved_rows, h.carved_cols);
        std::printf("original_dims: %ux%u\n", h.orig_rows, h.orig_cols);
        std::printf("payload_bits: %llu\n", (unsigned long long)h.payload_bit_length);
        std::printf("file_bytes: %llu\n", (unsigned long long)fsize);
        std::printf("raw_ratio: %s\n", format_ratio(compression_ratio(raw, fsize)).c_str());
        std::printf("pixel_retention: %.4f\n", retention);
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s: %s\n", input.string().c_str(), e.what());
        return 1;
    }
}

int cmd_bench(const std::string& corpus, const CompressionSpec& spec, int jobs,
              const std::string& format, const std::string& out) {
    try {
        BenchReport report = run_bench(corpus, spec, jobs);
        std::string text = emit_report(report, format);
        if (out.empty())
            std::fwrite(text.data(), 1, text.size(), stdout);
        else
            write_file_atomic(out, text.data(), text.size());
        for (const BenchRecord& r : report.records)
            if (!r.ok) {
                std::fprintf(stderr, "error: %s: %s\n", r.file_id.c_str(), r.error.c_str());
                return 1;
            }
        return 0;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return e.code() == Err::EmptyCorpus ? 2 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

int cmd_probe(const std::vector<int>& sizes, const CompressionSpec& spec, const std::string& out) {
    for (size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] < 1 || (i > 0 && sizes[i] <= sizes[i - 1])) {
            std::fprintf(stderr, "error: --sizes must be positive and strictly ascending\n");
            return 2;
        }
    }
    try {
        std::string text = probe_table(scaling_probe(sizes, spec));
        if (out.empty())
            std::fwrite(text.data(), 1, text.size(), stdout);
        else
            write_file_atomic(out, text.data(), text.size());
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"seam carving + lossless codec pipeline for CSV grayscale images"};
    app.require_subcommand(1);

    std::string input, out;
    SpecFlags flags;
    int jobs = 1;
    bool quiet = false;
    std::string report_format = "json";
    std::vector<int> sizes{32, 64, 128};

    CLI::App* c = app.add_subcommand("compress", "carve seams and encode CSV images to .plfc");
    c->add_option("input", input, "CSV file or directory")->required()->check(CLI::ExistingPath);
    c->add_option("--out", out, "output file, or directory root for batch input");
    add_spec_flags(c, flags);
    c->add_option("--jobs", jobs, "worker threads for batch input")
        ->envname("PLFC_JOBS")
        ->check(CLI::PositiveNumber);
    c->add_flag("--quiet", quiet, "suppress per-file lines");

    CLI::App* d = app.add_subcommand("decompress", "decode .plfc back to carved CSV");
    d->add_option("input", input, ".plfc file or directory")->required()->check(CLI::ExistingPath);
    d->add_option("--out", out, "output file, or directory root for batch input");
    d->add_option("--jobs", jobs, "worker threads for batch input")
        ->envname("PLFC_JOBS")
        ->check(CLI::PositiveNumber);
    d->add_flag("--quiet", quiet, "suppress per-file lines");

    CLI::App* i = app.add_subcommand("inspect", "print container header summary");
    i->add_option("input", input, ".plfc file")->required()->check(CLI::ExistingFile);

    CLI::App* b = app.add_subcommand("bench", "compress and decompress a corpus, emit a report");
    b->add_option("input", input, "corpus directory")->required()->check(CLI::ExistingDirectory);
    b->add_option("--out", out, "report file (default stdout)");
    add_spec_flags(b, flags);
    b->add_option("--jobs", jobs, "worker threads")->envname("PLFC_JOBS")->check(CLI::PositiveNumber);
    b->add_option("--report", report_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

    CLI::App* p = app.add_subcommand("probe", "time compression of synthetic square images");
    p->add_option("--sizes", sizes, "square side lengths, ascending")->delimiter(',');
    p->add_option("--out", out, "table file (default stdout)");
    add_spec_flags(p, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CompressionSpec spec;
    bool frac_given = c->count("--seam-frac") || b->count("--seam-frac") || p->count("--seam-frac");
    if (int rc = make_spec(flags, frac_given, spec)) return rc;

    if (*c) return cmd_compress(input, out, spec, jobs, quiet);
    if (*d) return cmd_decompress(input, out, jobs, quiet);
    if (*i) return cmd_inspect(input);
    if (*b) return cmd_bench(input, spec, jobs, report_format, out);
    if (*p) return cmd_probe(sizes, spec, out);
    return 2;
}
