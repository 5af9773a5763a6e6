// Result tables shared by the experiment runners and the CLI: one row per
// cell statistic, a fixed wide CSV header, and a JSON mirror. Formatting is
// deterministic so identical runs produce byte-identical files.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dyner {

struct ResultRow {
    std::string experiment;
    std::string statistic;
    std::optional<std::uint64_t> n;
    std::optional<std::uint32_t> m;
    std::optional<double> p;
    std::optional<double> beta;
    std::optional<double> lambda;
    std::optional<double> a;
    std::optional<double> A;
    std::optional<double> eps;
    std::optional<std::uint64_t> interval;
    std::optional<double> estimate;
    std::optional<double> stderr_;
    std::optional<std::uint64_t> replicas;
    std::optional<std::uint64_t> seed;
};

// Shortest-stable double rendering used everywhere output must be
// reproducible byte-for-byte.
std::string format_double(double x);

struct ResultTable {
    std::vector<ResultRow> rows;

    static const char* csv_header();
    void write_csv(std::ostream& os) const;
    // JSON array of row objects; absent fields are omitted.
    std::string to_json_rows() const;
};

}  // namespace dyner
