#include "advicelab/report.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace advicelab {

namespace {

std::vector<std::string> split(const std::string& line, char delimiter) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == delimiter) {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string join(const std::vector<std::string>& fields, char delimiter) {
    std::string line;
    for (size_t i = 0; i < fields.size(); i++) {
        if (i > 0) {
            line.push_back(delimiter);
        }
        line += fields[i];
    }
    return line;
}

}  // namespace

std::string Report::serialize() const {
    std::string out = "# " + config_comment + "\n";
    out += join(columns, delimiter) + "\n";
    for (const auto& row : rows) {
        out += join(row, delimiter) + "\n";
    }
    return out;
}

Report Report::parse(const std::string& text) {
    std::istringstream in(text);
    Report report;
    std::string line;
    if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
        throw std::invalid_argument("Report::parse: missing config comment line");
    }
    report.config_comment = line.substr(2);
    if (!std::getline(in, line)) {
        throw std::invalid_argument("Report::parse: missing header row");
    }
    report.delimiter = line.find('\t') != std::string::npos ? '\t' : ',';
    report.columns = split(line, report.delimiter);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto row = split(line, report.delimiter);
        if (row.size() != report.columns.size()) {
            throw std::invalid_argument("Report::parse: row width differs from header");
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) {
        throw std::runtime_error("format_double: conversion failed");
    }
    return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("write_file_atomic: cannot open " + tmp.string());
        }
        out.write(contents.data(), std::streamsize(contents.size()));
        if (!out) {
            throw std::runtime_error("write_file_atomic: short write to " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("read_file: cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_plot_file(const std::filesystem::path& path, const std::string& comment,
                     const std::vector<std::pair<double, double>>& points) {
    if (points.empty()) {
        return;
    }
    std::string out = "# " + comment + "\n# x y\n";
    for (const auto& [x, y] : points) {
        out += format_double(x) + " " + format_double(y) + "\n";
    }
    write_file_atomic(path, out);
}

}  // namespace advicelab
