#pragma once

#include "steiner/diagnostics.hpp"

#include <string>
#include <vector>

namespace steiner {

// Deterministic text serialization. Doubles print with %.17g (round-trip
// exact), C locale; no timestamps or environment-dependent fields, so a
// seeded run is byte-identical regardless of thread count.

std::string format_double(double v);

// Minimal CSV table: header + rows of text cells.
struct Csv {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    std::string to_string() const;
};

Csv parse_csv(const std::string& text);
int csv_column(const Csv& csv, const std::string& name);   // -1 when absent

// Columns: value_original, value_symmetrized, gap, h, scheme.
Csv gap_csv(const std::vector<GapReport>& reports,
            const std::vector<std::string>& labels);
std::string gap_json(const std::vector<GapReport>& reports,
                     const std::vector<std::string>& labels);

// Columns: x0.., t, L, p, R, beta_0.., delta, ball_score.
Csv slice_csv(const std::vector<SliceRow>& rows, int x_coord_count, int k);
std::string slice_json(const std::vector<SliceRow>& rows);

Csv lambda_csv(const std::vector<LambdaDerivRow>& rows, int x_coord_count);
std::string condition_json(const ConditionReport& rep);
std::string coarea_json(const CoareaProbe& probe);

Csv chain_csv(const std::vector<double>& values);
Csv sweep_csv(const std::vector<std::pair<double, double>>& h_gap);

// Atomic write: temp file in the same directory, then rename.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

} // namespace steiner
