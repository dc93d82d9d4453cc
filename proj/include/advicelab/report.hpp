#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace advicelab {

inline constexpr char kVersion[] = "0.1.0";

// A table report: one leading comment line carrying the full run
// configuration, a header row, and data rows. Fields never contain the
// delimiter, so serialization is a plain join and parse(serialize(r)) == r.
struct Report {
    std::string config_comment;  // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    char delimiter = ',';

    bool operator==(const Report&) const = default;

    std::string serialize() const;
    // Autodetects the delimiter from the header row.
    static Report parse(const std::string& text);
};

// Shortest round-trip decimal form (std::to_chars), so emitted files are
// byte-stable across runs.
std::string format_double(double v);

// Writes via a temporary file in the same directory plus an atomic rename, so
// partial files are never left behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

std::string read_file(const std::filesystem::path& path);

// Two-column gnuplot-style data file ("# x y" header). No points, no file.
void write_plot_file(const std::filesystem::path& path, const std::string& comment,
                     const std::vector<std::pair<double, double>>& points);

}  // namespace advicelab
