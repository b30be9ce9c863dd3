#include "roaring/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace roaring {

std::uint64_t Dataset::universe() const noexcept {
    std::uint64_t u = 0;
    for (const auto& s : sets) {
        if (!s.empty()) u = std::max<std::uint64_t>(u, std::uint64_t{s.back()} + 1);
    }
    return u;
}

std::uint64_t Dataset::total_values() const noexcept {
    std::uint64_t n = 0;
    for (const auto& s : sets) n += s.size();
    return n;
}

std::string check_dataset(const Dataset& d) {
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        const auto& s = d.sets[i];
        if (s.empty()) return "set " + std::to_string(i) + " is empty";
        for (std::size_t k = 1; k < s.size(); ++k) {
            if (s[k] <= s[k - 1]) {
                return "set " + std::to_string(i) + ", value #" + std::to_string(k + 1) +
                       ": not strictly increasing";
            }
        }
    }
    return {};
}

std::vector<std::uint32_t> parse_set(const std::string& text, const std::string& source) {
    std::string_view body(text);
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.remove_suffix(1);
    if (body.empty()) throw DatasetError(source + ": empty set");
    std::vector<std::uint32_t> out;
    std::size_t ordinal = 0;
    while (true) {
        ++ordinal;
        const std::size_t comma = body.find(',');
        const std::string_view token = body.substr(0, comma);
        auto fail = [&](const std::string& why) {
            return DatasetError(source + ", value #" + std::to_string(ordinal) + " (\"" +
                                std::string(token) + "\"): " + why);
        };
        std::uint64_t v = 0;
        const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec == std::errc::result_out_of_range) throw fail("overflows 32 bits");
        if (ec != std::errc() || end != token.data() + token.size() || token.empty()) {
            throw fail("not a decimal integer");
        }
        if (v > std::numeric_limits<std::uint32_t>::max()) throw fail("overflows 32 bits");
        if (!out.empty() && v <= out.back()) throw fail("not strictly increasing");
        out.push_back(static_cast<std::uint32_t>(v));
        if (comma == std::string_view::npos) break;
        body.remove_prefix(comma + 1);
    }
    return out;
}

Dataset load_dataset(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw DatasetError(dir.string() + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && !name.empty() && name[0] != '.') {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
        return a.filename().string() < b.filename().string();
    });
    if (files.empty()) throw DatasetError(dir.string() + ": no data files");
    Dataset d;
    d.name = fs::absolute(dir).lexically_normal().filename().string();
    if (d.name.empty()) d.name = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    for (const fs::path& f : files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) throw DatasetError(f.string() + ": cannot open");
        std::ostringstream buf;
        buf << in.rdbuf();
        d.sets.push_back(parse_set(buf.str(), f.filename().string()));
    }
    return d;
}

void write_dataset(const Dataset& d, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::string line;
    char num[16];
    for (std::size_t i = 0; i < d.sets.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "set_%05zu.txt", i);
        line.clear();
        for (std::size_t k = 0; k < d.sets[i].size(); ++k) {
            if (k != 0) line.push_back(',');
            const auto res = std::to_chars(num, num + sizeof(num), d.sets[i][k]);
            line.append(num, res.ptr);
        }
        line.push_back('\n');
        std::ofstream out(dir / name, std::ios::binary | std::ios::trunc);
        out.write(line.data(), static_cast<std::streamsize>(line.size()));
        if (!out) throw DatasetError((dir / name).string() + ": write failed");
    }
}

}  // namespace roaring
