#include "chainlab/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "chainlab/errors.hpp"

namespace chainlab {

namespace {
std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
        t[i] = c;
    }
    return t;
}
const auto crc_table = make_crc_table();
}  // namespace

std::uint32_t crc32(const void* data, std::size_t len, std::uint32_t seed) {
    std::uint32_t c = seed ^ 0xffffffffu;
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) c = crc_table[(c ^ p[i]) & 0xffu] ^ (c >> 8);
    return c ^ 0xffffffffu;
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    std::array<char, 32> buf;
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                             std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path) : path_(path) {
    std::filesystem::create_directories(path.parent_path());
    out_.open(path);
    if (!out_) throw ConfigError("cannot open output file " + path.string());
}

CsvWriter::~CsvWriter() { close(); }

void CsvWriter::put(const std::string& line) {
    out_ << line << '\n';
    crc_ = crc32(line.data(), line.size(), crc_);
    crc_ = crc32("\n", 1, crc_);
}

void CsvWriter::comment(const std::string& text) { put("# " + text); }
void CsvWriter::header(const std::string& columns) { put(columns); }
void CsvWriter::raw_line(const std::string& line) { put(line); }

void CsvWriter::row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_double(values[i]);
    }
    put(line);
}

void CsvWriter::close() {
    if (out_.is_open()) out_.close();
}

}  // namespace chainlab
