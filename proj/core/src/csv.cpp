#include "uscqed/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace uscqed {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", v);
    return buf;
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_csv: cannot open " + path.string());
    for (std::size_t i = 0; i < table.header.size(); ++i)
        out << table.header[i] << (i + 1 < table.header.size() ? "," : "");
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
    if (!out) throw std::runtime_error("write_csv: write failed for " + path.string());
}

namespace {
std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}
}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first) {
            table.header = split_line(line);
            first = false;
        } else {
            table.rows.push_back(split_line(line));
        }
    }
    return table;
}

double compare_tables(const CsvTable& a, const CsvTable& b, double tol, std::string* detail) {
    const double inf = std::numeric_limits<double>::infinity();
    auto fail = [&](const std::string& why) {
        if (detail) *detail = why;
        return inf;
    };
    if (a.header != b.header) return fail("header mismatch");
    if (a.rows.size() != b.rows.size())
        return fail("row count " + std::to_string(a.rows.size()) + " vs " +
                    std::to_string(b.rows.size()));
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].size() != b.rows[r].size()) return fail("ragged row " + std::to_string(r));
        for (std::size_t c = 0; c < a.rows[r].size(); ++c) {
            const std::string& sa = a.rows[r][c];
            const std::string& sb = b.rows[r][c];
            if (sa == sb) continue;
            double va = 0, vb = 0;
            auto ra = std::from_chars(sa.data(), sa.data() + sa.size(), va);
            auto rb = std::from_chars(sb.data(), sb.data() + sb.size(), vb);
            const bool num = ra.ec == std::errc{} && rb.ec == std::errc{} &&
                             ra.ptr == sa.data() + sa.size() && rb.ptr == sb.data() + sb.size();
            if (!num) return fail("token mismatch at row " + std::to_string(r));
            const double scale = std::max({std::abs(va), std::abs(vb), 1e-12});
            const double rel = std::abs(va - vb) / scale;
            if (rel > worst) {
                worst = rel;
                if (detail && rel > tol)
                    *detail = "row " + std::to_string(r) + " col " + std::to_string(c) + ": " +
                              sa + " vs " + sb;
            }
        }
    }
    return worst;
}

}  // namespace uscqed
