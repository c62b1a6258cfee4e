#ifndef MURM_CSV_HPP
#define MURM_CSV_HPP

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace murm {

inline constexpr const char* kVersion = "0.1.0";

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// %.12g keeps doubles byte-stable across runs and worker counts.
inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& header,
              std::uint64_t config_hash)
        : path_(path), hash_(config_hash) {
        out_.open(path, std::ios::trunc);
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
        out_ << header << "\n";
    }

    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    void comment(const std::string& line) { out_ << "# " << line << "\n"; }

    ~CsvWriter() {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%016llx",
                      static_cast<unsigned long long>(hash_));
        out_ << "# config_hash=" << buf << " version=" << kVersion << "\n";
    }

  private:
    std::string path_;
    std::uint64_t hash_;
    std::ofstream out_;
};

}  // namespace murm

#endif
