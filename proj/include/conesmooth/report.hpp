#pragma once

// Deterministic report plumbing shared by the CLI and the acceptance suite:
// JSON reports (machine-readable, primary), CSV rows (plot-ready, secondary),
// and an index-ordered parallel sweep helper.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

namespace conesmooth {

using Json = nlohmann::ordered_json;

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(const std::vector<std::string>& row) { rows.push_back(row); }

    std::string str() const {
        std::string out;
        for (size_t i = 0; i < header.size(); ++i)
            out += header[i] + (i + 1 < header.size() ? "," : "\n");
        for (const auto& r : rows)
            for (size_t i = 0; i < r.size(); ++i) out += r[i] + (i + 1 < r.size() ? "," : "\n");
        return out;
    }
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
}

// Index-ordered parallel map: results land by index, so reports do not depend
// on scheduling.
template <class F>
void parallel_for(long n, int workers, F&& fn) {
    if (workers <= 1 || n < 2) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        });
    for (auto& t : pool) t.join();
}

}  // namespace conesmooth
