#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace chainlab {

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed = 0);

/// CSV emitter: '#'-prefixed metadata lines, one header line, numeric rows.
/// Tracks a CRC32 of everything written, for run manifests.
class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path);
    ~CsvWriter();

    void comment(const std::string& text);
    void header(const std::string& columns);
    void row(const std::vector<double>& values);
    void raw_line(const std::string& line);

    void close();
    std::uint32_t checksum() const { return crc_; }
    const std::filesystem::path& path() const { return path_; }

private:
    void put(const std::string& line);

    std::filesystem::path path_;
    std::ofstream out_;
    std::uint32_t crc_ = 0;
};

std::string format_double(double v);

}  // namespace chainlab
