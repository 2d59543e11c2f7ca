#include "steiner/reports.hpp"

#include "steiner/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace steiner {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string Csv::to_string() const {
    std::string out;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    emit(header);
    for (const auto& r : rows) emit(r);
    return out;
}

Csv parse_csv(const std::string& text) {
    Csv csv;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        if (first) {
            csv.header = std::move(cells);
            first = false;
        } else {
            csv.rows.push_back(std::move(cells));
        }
    }
    if (first) throw std::runtime_error("malformed CSV: missing header");
    for (const auto& r : csv.rows)
        if (r.size() != csv.header.size())
            throw std::runtime_error("malformed CSV: ragged row");
    return csv;
}

int csv_column(const Csv& csv, const std::string& name) {
    for (std::size_t i = 0; i < csv.header.size(); ++i)
        if (csv.header[i] == name) return static_cast<int>(i);
    return -1;
}

Csv gap_csv(const std::vector<GapReport>& reports,
            const std::vector<std::string>& labels) {
    Csv csv;
    csv.header = {"label", "value_original", "value_symmetrized",
                  "gap",   "h",              "scheme"};
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const GapReport& r = reports[i];
        csv.add_row({labels.size() > i ? labels[i] : "",
                     format_double(r.value_original),
                     format_double(r.value_symmetrized), format_double(r.gap),
                     format_double(r.h), r.scheme});
    }
    return csv;
}

std::string gap_json(const std::vector<GapReport>& reports,
                     const std::vector<std::string>& labels) {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const GapReport& r = reports[i];
        nlohmann::ordered_json j;
        j["label"] = labels.size() > i ? labels[i] : "";
        j["value_original"] = r.value_original;
        j["value_symmetrized"] = r.value_symmetrized;
        j["gap"] = r.gap;
        j["h"] = r.h;
        j["scheme"] = r.scheme;
        root.push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

Csv slice_csv(const std::vector<SliceRow>& rows, int x_coord_count, int k) {
    Csv csv;
    for (int i = 0; i < x_coord_count; ++i)
        csv.header.push_back("x" + std::to_string(i));
    csv.header.push_back("t");
    csv.header.push_back("L");
    csv.header.push_back("p");
    csv.header.push_back("R");
    for (int i = 0; i < k; ++i)
        csv.header.push_back("beta_" + std::to_string(i));
    csv.header.push_back("delta");
    csv.header.push_back("ball_score");
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        for (int i = 0; i < x_coord_count; ++i)
            cells.push_back(std::to_string(
                i < static_cast<int>(r.slice_coords.size())
                    ? r.slice_coords[static_cast<std::size_t>(i)]
                    : 0));
        cells.push_back(format_double(r.t));
        cells.push_back(format_double(r.L));
        cells.push_back(format_double(r.p));
        cells.push_back(format_double(r.R));
        for (int i = 0; i < k; ++i)
            cells.push_back(format_double(
                i < static_cast<int>(r.beta.size()) ? r.beta[static_cast<std::size_t>(i)] : 0.0));
        cells.push_back(format_double(r.deficit));
        cells.push_back(format_double(r.ball_score));
        csv.add_row(std::move(cells));
    }
    return csv;
}

std::string slice_json(const std::vector<SliceRow>& rows) {
    nlohmann::ordered_json root = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["slice"] = r.slice_coords;
        j["t"] = r.t;
        j["L"] = r.L;
        j["p"] = r.p;
        j["R"] = r.R;
        j["beta"] = r.beta;
        j["delta"] = r.deficit;
        j["ball_score"] = r.ball_score;
        root.push_back(std::move(j));
    }
    return root.dump(2) + "\n";
}

Csv lambda_csv(const std::vector<LambdaDerivRow>& rows, int x_coord_count) {
    Csv csv;
    for (int i = 0; i < x_coord_count; ++i)
        csv.header.push_back("x" + std::to_string(i));
    csv.header.insert(csv.header.end(),
                      {"t", "lhs", "rhs", "abs_err", "shell_cells", "skipped"});
    for (const auto& r : rows) {
        std::vector<std::string> cells;
        for (int i = 0; i < x_coord_count; ++i)
            cells.push_back(std::to_string(r.slice_coords[static_cast<std::size_t>(i)]));
        cells.push_back(format_double(r.t));
        cells.push_back(format_double(r.lhs));
        cells.push_back(format_double(r.rhs));
        cells.push_back(format_double(r.abs_err));
        cells.push_back(std::to_string(r.shell_cells));
        cells.push_back(r.skipped ? "1" : "0");
        csv.add_row(std::move(cells));
    }
    return csv;
}

std::string condition_json(const ConditionReport& rep) {
    nlohmann::ordered_json j;
    j["critical_measure"] = rep.critical_measure;
    j["projection_connected"] = rep.projection_connected;
    j["y_bounded"] = rep.y_bounded;
    j["boundary_vertical_fraction"] = rep.boundary_vertical_fraction;
    j["theta"] = rep.theta;
    j["tau"] = rep.tau;
    return j.dump(2) + "\n";
}

std::string coarea_json(const CoareaProbe& probe) {
    nlohmann::ordered_json j;
    j["mass"] = probe.mass;
    j["bin_width"] = probe.bin_width;
    j["bin_mass"] = probe.bin_mass;
    return j.dump(2) + "\n";
}

Csv chain_csv(const std::vector<double>& values) {
    Csv csv;
    csv.header = {"step", "value"};
    for (std::size_t i = 0; i < values.size(); ++i) {
        std::string step;
        if (i == 0)
            step = "original";
        else if (i + 1 == values.size())
            step = "sigma";
        else
            step = "S" + std::to_string(i);
        csv.add_row({step, format_double(values[i])});
    }
    return csv;
}

Csv sweep_csv(const std::vector<std::pair<double, double>>& h_gap) {
    Csv csv;
    csv.header = {"h", "gap"};
    for (const auto& [h, gap] : h_gap)
        csv.add_row({format_double(h), format_double(gap)});
    return csv;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open for writing: " + path);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw io_error("write failed: " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw io_error("rename failed: " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace steiner
