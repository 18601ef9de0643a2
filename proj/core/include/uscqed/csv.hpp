// csv.hpp — Deterministic CSV emission and parsing for golden-file comparison
#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace uscqed {

// Full-precision scientific format; golden files are bit-exact under it.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// Relative comparison with a small absolute floor; non-numeric cells compare
// exactly. Returns the worst relative error (0 for equal, inf for shape or
// token mismatch).
double compare_tables(const CsvTable& a, const CsvTable& b, double tol, std::string* detail);

}  // namespace uscqed
