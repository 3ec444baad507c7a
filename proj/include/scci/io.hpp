#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <map>
#include <vector>

#include "scci/inference.hpp"
#include "scci/sample.hpp"

// Input plumbing for two-column pair files: whitespace- or comma-delimited
// (detected per line), '#' comment lines and blank lines ignored. Tokens are
// treated as opaque categories; the only normalization is trimming redundant
// trailing fractional zeros so "1", "1.0" and "1.00" land on the same symbol.

namespace scci {

inline std::string normalize_token(std::string token) {
    std::size_t i = 0;
    if (i < token.size() && (token[i] == '+' || token[i] == '-')) ++i;
    std::size_t digits = 0, dots = 0;
    for (; i < token.size(); ++i) {
        if (token[i] >= '0' && token[i] <= '9')
            ++digits;
        else if (token[i] == '.')
            ++dots;
        else
            return token;  // not a plain decimal, leave untouched
    }
    if (digits == 0 || dots != 1) return token;
    while (!token.empty() && token.back() == '0') token.pop_back();
    if (!token.empty() && token.back() == '.') token.pop_back();
    return token;
}

inline std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    if (line.find(',') != std::string::npos) {
        std::string field;
        std::istringstream in(line);
        while (std::getline(in, field, ',')) {
            const auto begin = field.find_first_not_of(" \t\r");
            const auto end = field.find_last_not_of(" \t\r");
            fields.push_back(begin == std::string::npos
                                 ? std::string{}
                                 : field.substr(begin, end - begin + 1));
        }
    } else {
        std::istringstream in(line);
        std::string field;
        while (in >> field) fields.push_back(field);
    }
    return fields;
}

inline bool is_comment_or_blank(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

struct PairColumns {
    std::vector<std::string> x, y;
};

inline PairColumns read_pair_columns(const std::filesystem::path& path, int column_x = 0,
                                     int column_y = 1, bool skip_header = false) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path.string() + ": cannot open");

    PairColumns cols;
    std::string line;
    std::size_t line_no = 0;
    bool header_pending = skip_header;
    const auto need = static_cast<std::size_t>(std::max(column_x, column_y)) + 1;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (header_pending) {
            header_pending = false;
            continue;
        }
        if (is_comment_or_blank(line)) continue;
        const auto fields = split_fields(line);
        if (fields.size() < need)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected at least " + std::to_string(need) +
                                     " columns, got " + std::to_string(fields.size()));
        cols.x.push_back(fields[static_cast<std::size_t>(column_x)]);
        cols.y.push_back(fields[static_cast<std::size_t>(column_y)]);
    }
    if (cols.x.empty()) throw std::runtime_error(path.string() + ": no data rows");
    return cols;
}

// First-appearance encoding of normalized tokens.
inline DiscreteSample encode_tokens(const std::vector<std::string>& tokens) {
    if (tokens.empty()) throw std::invalid_argument("encode_tokens: empty column");
    std::unordered_map<std::string, std::int32_t> index;
    index.reserve(tokens.size());
    DiscreteSample sample;
    sample.values.reserve(tokens.size());
    for (const auto& token : tokens) {
        const auto [it, fresh] =
            index.try_emplace(normalize_token(token), static_cast<std::int32_t>(index.size()));
        (void)fresh;
        sample.values.push_back(it->second);
    }
    sample.domain_size = static_cast<std::int32_t>(index.size());
    return sample;
}

// Ground-truth metadata: one `pair_id<TAB>direction` entry per line; extra
// tab-separated columns (seeds, notes) are ignored.
inline std::map<std::string, Direction> read_truth_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path.string() + ": cannot open");

    std::map<std::string, Direction> truths;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_comment_or_blank(line)) continue;

        std::vector<std::string> fields;
        std::istringstream fin(line);
        std::string field;
        while (std::getline(fin, field, '\t')) fields.push_back(field);
        if (fields.size() < 2)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": expected pair_id<TAB>direction");
        const auto dir = direction_from_string(fields[1]);
        if (!dir || *dir == Direction::Undecided)
            throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                     ": direction must be XtoY or YtoX");
        truths[fields[0]] = *dir;
    }
    return truths;
}

inline void write_pair_file(const std::filesystem::path& path,
                            const std::vector<std::int64_t>& raw_x,
                            const std::vector<std::int64_t>& raw_y) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path.string() + ": cannot write");
    for (std::size_t i = 0; i < raw_x.size(); ++i)
        out << raw_x[i] << ' ' << raw_y[i] << '\n';
    if (!out) throw std::runtime_error(path.string() + ": write failed");
}

// Regular files in a directory, sorted by name, minus one excluded filename.
inline std::vector<std::filesystem::path> list_pair_files(const std::filesystem::path& dir,
                                                          const std::string& exclude = {}) {
    if (!std::filesystem::is_directory(dir))
        throw std::runtime_error(dir.string() + ": not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (!exclude.empty() && entry.path().filename() == exclude) continue;
        files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    return files;
}

}  // namespace scci
