#include "steiner/experiments.hpp"

#include "steiner/diagnostics.hpp"
#include "steiner/functionals.hpp"
#include "steiner/io.hpp"
#include "steiner/rearrange.hpp"
#include "steiner/reports.hpp"
#include "steiner/rng.hpp"
#include "steiner/svg.hpp"

#include <cmath>
#include <ostream>
#include <sstream>

namespace steiner {

namespace {

std::vector<double> broadcast(std::vector<double> v, std::size_t n,
                              const char* key) {
    if (v.size() == 1) v.assign(n, v[0]);
    if (v.size() != n)
        throw config_error(std::string("config key '") + key +
                           "': expected 1 or " + std::to_string(n) + " values");
    return v;
}

struct Outputs {
    std::string csv, json, svg, values_csv;
};

Outputs outputs_from(Config& cfg) {
    Outputs o;
    o.csv = cfg.get_string("output.csv", "");
    o.json = cfg.get_string("output.json", "");
    o.svg = cfg.get_string("output.svg", "");
    o.values_csv = cfg.get_string("output.values_csv", "");
    return o;
}

// Per-cell table of u and u^sigma for the heatmap plot kind.
void write_values_csv(const std::string& path, const GridFunction& u,
                      const GridFunction& us) {
    const Grid& g = u.grid();
    Csv csv;
    for (int a = 0; a < g.rank(); ++a)
        csv.header.push_back("c" + std::to_string(a));
    csv.header.push_back("u");
    csv.header.push_back("u_sigma");
    std::vector<int> coord(static_cast<std::size_t>(g.rank()), 0);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        std::vector<std::string> cells;
        for (int a = 0; a < g.rank(); ++a)
            cells.push_back(std::to_string(coord[static_cast<std::size_t>(a)]));
        cells.push_back(format_double(u.value(i)));
        cells.push_back(format_double(us.value(i)));
        csv.add_row(std::move(cells));
        for (int a = g.rank() - 1; a >= 0; --a) {
            if (++coord[static_cast<std::size_t>(a)] < g.dim(a)) break;
            coord[static_cast<std::size_t>(a)] = 0;
        }
    }
    write_text_file(path, csv.to_string());
}

void reject_grid_keys_with_file(const Config& cfg) {
    for (const char* key : {"grid.dims", "grid.spacing", "grid.extent",
                            "grid.split_k"})
        if (cfg.has(key))
            throw config_error(std::string("config key '") + key +
                               "': not allowed with generator = file "
                               "(the stored grid is used)");
}

GridFunction function_source(Config& cfg, const GeneratorSpec& spec) {
    if (spec.name == "file") {
        reject_grid_keys_with_file(cfg);
        return load_function(cfg.get_string("generator.file"));
    }
    const Grid g = grid_from_config(cfg);
    try {
        return make_function(g, spec);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config key 'generator': ") + e.what());
    }
}

VoxelSet set_source(Config& cfg, const GeneratorSpec& spec) {
    if (spec.name == "file") {
        reject_grid_keys_with_file(cfg);
        return load_voxel_set(cfg.get_string("generator.file"));
    }
    const Grid g = grid_from_config(cfg);
    try {
        return make_set(g, spec);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config key 'generator': ") + e.what());
    }
}

DiffScheme diff_scheme_from(Config& cfg) {
    const std::string s = cfg.get_string("scheme", "forward");
    if (s == "forward") return DiffScheme::forward;
    if (s == "central") return DiffScheme::central;
    throw config_error("config key 'scheme': expected forward|central, got " + s);
}

SurfaceScheme surface_scheme_from(Config& cfg) {
    const std::string s = cfg.get_string("scheme", "mollified");
    if (s == "faces") return SurfaceScheme::faces;
    if (s == "mollified") return SurfaceScheme::mollified;
    throw config_error("config key 'scheme': expected faces|mollified, got " + s);
}

int finish_gap(const GapReport& rep, const std::string& label, double tol,
               const Outputs& out, std::ostream& log) {
    if (!out.csv.empty())
        write_text_file(out.csv, gap_csv({rep}, {label}).to_string());
    if (!out.json.empty()) write_text_file(out.json, gap_json({rep}, {label}));
    log << "[" << label << "] gap=" << format_double(rep.gap)
        << " original=" << format_double(rep.value_original)
        << " symmetrized=" << format_double(rep.value_symmetrized)
        << " h=" << format_double(rep.h) << " scheme=" << rep.scheme << "\n";
    if (rep.gap < -tol) {
        log << "[" << label << "] VIOLATION: gap below -" << format_double(tol)
            << "\n";
        return 2;
    }
    return 0;
}

int do_polya(Config& cfg, std::ostream& log) {
    const GeneratorSpec spec = generator_from_config(cfg);
    const GridFunction u = function_source(cfg, spec);
    const Grid& g = u.grid();
    const Integrand f = integrand_from_config(cfg, g.x_dims());
    const DiffScheme scheme = diff_scheme_from(cfg);
    const double tol = cfg.get_double("gap_tolerance", 1e-6);
    const Outputs out = outputs_from(cfg);
    cfg.reject_unknown();

    const GapReport rep = polya_szego_report(u, f, scheme);
    if (!out.values_csv.empty() || !out.svg.empty()) {
        const GridFunction us = steiner_rearrange(u);
        if (!out.values_csv.empty()) write_values_csv(out.values_csv, u, us);
        if (!out.svg.empty()) {
            if (g.rank() != 2)
                throw config_error("config key 'output.svg': heatmaps need a 2-d grid");
            std::vector<double> a(u.values().begin(), u.values().end());
            std::vector<double> b(us.values().begin(), us.values().end());
            write_text_file(out.svg,
                            svg_heatmap_pair(a, b, g.dim(0), g.dim(1), "u",
                                             "u_sigma"));
        }
    }
    return finish_gap(rep, "polya_szego", tol, out, log);
}

int do_perimeter(Config& cfg, std::ostream& log) {
    const GeneratorSpec spec = generator_from_config(cfg);
    const VoxelSet e = set_source(cfg, spec);
    const Grid& g = e.grid();
    const SurfaceIntegrand F = surface_integrand_from_config(cfg, g.x_dims());
    const SurfaceScheme scheme = surface_scheme_from(cfg);
    const double width = cfg.get_double("mollify_width", 2.0);
    const double tol = cfg.get_double("gap_tolerance", 1e-6);
    const Outputs out = outputs_from(cfg);
    cfg.reject_unknown();

    const GapReport rep = perimeter_report(e, F, scheme, width);
    return finish_gap(rep, "perimeter", tol, out, log);
}

int do_chain(Config& cfg, std::ostream& log) {
    const GeneratorSpec spec = generator_from_config(cfg);
    const GridFunction u = function_source(cfg, spec);
    const Grid& g = u.grid();
    const Integrand f = integrand_from_config(cfg, g.x_dims());
    const DiffScheme scheme = diff_scheme_from(cfg);
    const double tol = cfg.get_double("gap_tolerance", 1e-6);
    const Outputs out = outputs_from(cfg);
    cfg.reject_unknown();

    const std::vector<double> values = chain_report(u, f, scheme);
    if (!out.csv.empty()) write_text_file(out.csv, chain_csv(values).to_string());
    std::ostringstream sum;
    sum << "[chain]";
    for (double v : values) sum << " " << format_double(v);
    log << sum.str() << "\n";
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[i - 1] + tol) {
            log << "[chain] VIOLATION: step " << i << " increased\n";
            return 2;
        }
    return 0;
}

int do_equality_scan(Config& cfg, std::ostream& log) {
    const GeneratorSpec spec = generator_from_config(cfg);
    const int t_levels = static_cast<int>(cfg.get_int("t_levels", 16));
    const Outputs out = outputs_from(cfg);

    std::vector<SliceRow> rows;
    ConditionReport cond;
    Grid g({1}, {1.0}, 1);
    if (spec.name == "file") {
        // stored objects dispatch on their own kind
        reject_grid_keys_with_file(cfg);
        LoadedObject obj = load(cfg.get_string("generator.file"));
        cfg.reject_unknown();
        if (const auto* e = std::get_if<VoxelSet>(&obj)) {
            g = e->grid();
            rows = slice_analysis(*e);
            cond = condition_report(*e);
        } else {
            const auto& u = std::get<GridFunction>(obj);
            g = u.grid();
            rows = slice_analysis(u, t_levels);
            cond = condition_report(u);
        }
    } else if (generator_makes_set(spec.name)) {
        const VoxelSet e = set_source(cfg, spec);
        cfg.reject_unknown();
        g = e.grid();
        rows = slice_analysis(e);
        cond = condition_report(e);
    } else {
        const GridFunction u = function_source(cfg, spec);
        cfg.reject_unknown();
        g = u.grid();
        rows = slice_analysis(u, t_levels);
        cond = condition_report(u);
    }
    const int xc = g.x_dims() + (g.has_t_axis() ? 1 : 0);
    if (!out.csv.empty())
        write_text_file(out.csv, slice_csv(rows, xc, g.codim()).to_string());
    if (!out.json.empty()) write_text_file(out.json, condition_json(cond));
    if (!out.svg.empty()) {
        std::vector<double> xs;
        std::vector<std::vector<double>> series(static_cast<std::size_t>(g.codim()));
        std::vector<std::string> names;
        for (int i = 0; i < g.codim(); ++i) names.push_back("beta_" + std::to_string(i));
        for (const auto& r : rows) {
            xs.push_back(r.slice_coords.empty() ? 0.0
                                                : static_cast<double>(r.slice_coords[0]));
            for (int i = 0; i < g.codim(); ++i)
                series[static_cast<std::size_t>(i)].push_back(
                    r.beta[static_cast<std::size_t>(i)]);
        }
        write_text_file(out.svg, svg_scatter(xs, series, names, "x0",
                                             "section barycenter"));
    }
    double max_score = 0.0, max_beta = 0.0;
    for (const auto& r : rows) {
        if (r.L <= 0.0) continue;
        max_score = std::max(max_score, std::abs(r.ball_score));
        for (double b : r.beta) max_beta = std::max(max_beta, std::abs(b));
    }
    log << "[equality_scan] slices=" << rows.size()
        << " max_ball_score=" << format_double(max_score)
        << " max_beta=" << format_double(max_beta)
        << " critical_measure=" << format_double(cond.critical_measure)
        << " connected=" << (cond.projection_connected ? "yes" : "no")
        << " vertical_fraction=" << format_double(cond.boundary_vertical_fraction)
        << " theta=" << format_double(cond.theta)
        << " tau=" << format_double(cond.tau) << "\n";
    return 0;
}

int do_lambda(Config& cfg, std::ostream& log) {
    const GeneratorSpec spec = generator_from_config(cfg);
    const GridFunction u = function_source(cfg, spec);
    const Grid& g = u.grid();
    const int axis = static_cast<int>(cfg.get_int("x_axis", 0));
    const double delta = cfg.get_double("delta", 4.0 * g.max_spacing());
    std::vector<double> thresholds = cfg.get_doubles("thresholds");
    const Outputs out = outputs_from(cfg);
    cfg.reject_unknown();

    const auto rows = verify_lambda_derivatives(u, axis, thresholds, delta);
    if (!out.csv.empty())
        write_text_file(out.csv, lambda_csv(rows, g.x_dims()).to_string());
    double max_err = 0.0;
    std::int64_t skipped = 0;
    for (const auto& r : rows) {
        if (r.skipped) { ++skipped; continue; }
        max_err = std::max(max_err, r.abs_err);
    }
    log << "[lambda_derivatives] rows=" << rows.size() << " skipped=" << skipped
        << " max_err=" << format_double(max_err)
        << " delta=" << format_double(delta) << "\n";
    return 0;
}

int do_coarea(Config& cfg, std::ostream& log) {
    const GeneratorSpec spec = generator_from_config(cfg);
    const GridFunction u = function_source(cfg, spec);
    const int bins = static_cast<int>(cfg.get_int("bins", 64));
    const Outputs out = outputs_from(cfg);
    cfg.reject_unknown();

    const CoareaProbe probe = coarea_irregularity_probe(u, bins);
    if (!out.json.empty()) write_text_file(out.json, coarea_json(probe));
    log << "[coarea_probe] mass=" << format_double(probe.mass)
        << " bins=" << bins << "\n";
    return 0;
}

int do_sweep(Config& cfg, std::ostream& log) {
    const std::vector<int> sizes = cfg.get_ints("sweep.sizes");
    if (sizes.empty()) throw config_error("config key 'sweep.sizes': empty");
    const int rank = static_cast<int>(cfg.get_int("sweep.rank", 2));
    const int split_k = static_cast<int>(cfg.get_int("grid.split_k", 1));
    const double extent = cfg.get_double("grid.extent", 2.0);
    const GeneratorSpec spec = generator_from_config(cfg);
    if (spec.name == "file")
        throw config_error(
            "config key 'generator': a sweep rebuilds its input per size and "
            "needs a builtin generator");
    const DiffScheme scheme = diff_scheme_from(cfg);
    const Outputs out = outputs_from(cfg);
    // integrand depends on xdim which is fixed by rank/split
    Integrand f = integrand_from_config(cfg, rank - split_k);
    const double tol = cfg.get_double("gap_tolerance", 1e-6);
    cfg.reject_unknown();

    std::vector<std::pair<double, double>> h_gap;
    int code = 0;
    for (int s : sizes) {
        if (s < 2) throw config_error("config key 'sweep.sizes': size below 2");
        const Grid g(std::vector<int>(static_cast<std::size_t>(rank), s),
                     std::vector<double>(static_cast<std::size_t>(rank),
                                         extent / static_cast<double>(s)),
                     split_k);
        const GridFunction u = make_function(g, spec);
        const GapReport rep = polya_szego_report(u, f, scheme);
        h_gap.emplace_back(rep.h, rep.gap);
        log << "[convergence_sweep] size=" << s << " h=" << format_double(rep.h)
            << " gap=" << format_double(rep.gap) << "\n";
        if (rep.gap < -tol) code = 2;
    }
    if (!out.csv.empty()) write_text_file(out.csv, sweep_csv(h_gap).to_string());
    if (!out.svg.empty())
        write_text_file(out.svg, svg_loglog(h_gap, "h", "|gap|",
                                            "gap vs h (log-log)"));
    if (code != 0) log << "[convergence_sweep] VIOLATION: negative gap\n";
    return code;
}

} // namespace

Grid grid_from_config(Config& cfg) {
    const std::vector<int> dims = cfg.get_ints("grid.dims");
    if (dims.empty()) throw config_error("config key 'grid.dims': empty");
    std::vector<double> spacing;
    if (cfg.has("grid.spacing")) {
        spacing = broadcast(cfg.get_doubles("grid.spacing"), dims.size(),
                            "grid.spacing");
    } else {
        const double extent = cfg.get_double("grid.extent", 2.0);
        for (int d : dims) spacing.push_back(extent / static_cast<double>(d));
    }
    const int split_k = static_cast<int>(cfg.get_int("grid.split_k", 1));
    try {
        return Grid(dims, spacing, split_k, false);
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("config key 'grid.*': ") + e.what());
    }
}

GeneratorSpec generator_from_config(Config& cfg) {
    GeneratorSpec spec;
    spec.name = cfg.get_string("generator");
    spec.center = cfg.get_doubles("generator.center", {});
    spec.radius = cfg.get_double("generator.radius", 0.5);
    spec.level = cfg.get_double("generator.level", 0.5);
    spec.width = cfg.get_double("generator.width", 0.15);
    spec.scale = cfg.get_double("generator.scale", 0.25);
    spec.amplitude = cfg.get_double("generator.amplitude", 1.0);
    spec.separation = cfg.get_double("generator.separation", 0.0);
    spec.bumps = static_cast<int>(cfg.get_int("generator.bumps", 6));
    spec.x_scale = cfg.get_bool("generator.x_scale", false);
    spec.seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    return spec;
}

Integrand integrand_from_config(Config& cfg, int xdim) {
    const std::string kind = cfg.get_string("integrand", "ynorm");
    if (kind == "ynorm") {
        return RadialAffineIntegrand(
            xdim, {AffinePiece{std::vector<double>(static_cast<std::size_t>(xdim), 0.0),
                               1.0, 0.0}});
    }
    if (kind == "ynorm_sq") return PowerIntegrand(0.0, 1.0, 2.0);
    if (kind == "grad_sq") return PowerIntegrand(1.0, 1.0, 2.0);
    if (kind == "power") {
        const double alpha = cfg.get_double("integrand.alpha", 0.0);
        const double beta = cfg.get_double("integrand.beta", 1.0);
        const double p = cfg.get_double("integrand.p", 2.0);
        return PowerIntegrand(alpha, beta, p);
    }
    if (kind == "affine") {
        // rows separated by ';', each row: a_1 .. a_xdim b c
        const std::string raw = cfg.get_string("integrand.pieces");
        std::vector<AffinePiece> pieces;
        std::istringstream rows(raw);
        std::string row;
        while (std::getline(rows, row, ';')) {
            std::istringstream ss(row);
            std::vector<double> nums;
            double v;
            while (ss >> v) nums.push_back(v);
            if (nums.empty()) continue;
            if (static_cast<int>(nums.size()) != xdim + 2)
                throw config_error(
                    "config key 'integrand.pieces': each row needs " +
                    std::to_string(xdim + 2) + " numbers");
            AffinePiece p;
            p.a.assign(nums.begin(), nums.begin() + xdim);
            p.b = nums[static_cast<std::size_t>(xdim)];
            p.c = nums[static_cast<std::size_t>(xdim) + 1];
            pieces.push_back(std::move(p));
        }
        try {
            return RadialAffineIntegrand(xdim, std::move(pieces));
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("config key 'integrand.pieces': ") +
                               e.what());
        }
    }
    if (kind == "random_affine") {
        const int count = static_cast<int>(cfg.get_int("integrand.pieces_count", 5));
        const std::uint64_t seed =
            static_cast<std::uint64_t>(cfg.get_int("seed", 1)) + 1000003;
        Rng rng(seed);
        std::vector<AffinePiece> pieces;
        for (int i = 0; i < count; ++i) {
            AffinePiece p;
            p.a.resize(static_cast<std::size_t>(xdim));
            for (auto& a : p.a) a = rng.uniform(-1.0, 1.0);
            p.b = rng.uniform(0.0, 1.0);
            p.c = rng.uniform(-0.5, 0.0);
            pieces.push_back(std::move(p));
        }
        return RadialAffineIntegrand(xdim, std::move(pieces));
    }
    throw config_error("config key 'integrand': unknown kind " + kind);
}

SurfaceIntegrand surface_integrand_from_config(Config& cfg, int xdim) {
    const std::string kind = cfg.get_string("surface_integrand", "euclidean");
    if (kind == "euclidean") return SurfaceIntegrand::euclidean();
    if (kind == "ynorm") return SurfaceIntegrand::y_norm();
    if (kind == "lift") return lift(integrand_from_config(cfg, xdim));
    throw config_error("config key 'surface_integrand': unknown kind " + kind);
}

int run_experiment(Config& cfg, std::ostream& log) {
    const std::string kind = cfg.get_string("experiment");
    if (kind == "polya_szego") return do_polya(cfg, log);
    if (kind == "perimeter") return do_perimeter(cfg, log);
    if (kind == "chain") return do_chain(cfg, log);
    if (kind == "equality_scan") return do_equality_scan(cfg, log);
    if (kind == "lambda_derivatives") return do_lambda(cfg, log);
    if (kind == "coarea_probe") return do_coarea(cfg, log);
    if (kind == "convergence_sweep") return do_sweep(cfg, log);
    throw config_error("config key 'experiment': unknown kind " + kind);
}

int run_experiment_file(const std::string& config_path, std::ostream& log) {
    try {
        Config cfg = Config::from_file(config_path);
        return run_experiment(cfg, log);
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_plot(const std::string& csv_path, const std::string& kind,
             const std::string& out_path, std::ostream& log) {
    try {
        const Csv csv = parse_csv(read_text_file(csv_path));
        auto col = [&](const std::string& name) {
            const int c = csv_column(csv, name);
            if (c < 0)
                throw std::runtime_error("malformed CSV: missing column " + name);
            return c;
        };
        auto cell = [&](const std::vector<std::string>& row, int c) {
            return std::strtod(row[static_cast<std::size_t>(c)].c_str(), nullptr);
        };
        std::string svg;
        if (kind == "loglog") {
            const int ch = col("h");
            const int cg = col("gap");
            std::vector<std::pair<double, double>> pts;
            for (const auto& row : csv.rows)
                pts.emplace_back(cell(row, ch), cell(row, cg));
            svg = svg_loglog(pts, "h", "|gap|", "gap vs h (log-log)");
        } else if (kind == "heatmap_pair") {
            const int c0 = col("c0");
            const int c1 = col("c1");
            const int cu = col("u");
            const int cs = col("u_sigma");
            int rows = 0, cols = 0;
            for (const auto& row : csv.rows) {
                rows = std::max(rows, static_cast<int>(cell(row, c0)) + 1);
                cols = std::max(cols, static_cast<int>(cell(row, c1)) + 1);
            }
            std::vector<double> a(static_cast<std::size_t>(rows) * cols, 0.0);
            std::vector<double> b(a.size(), 0.0);
            for (const auto& row : csv.rows) {
                const std::size_t i =
                    static_cast<std::size_t>(cell(row, c0)) * cols +
                    static_cast<std::size_t>(cell(row, c1));
                a[i] = cell(row, cu);
                b[i] = cell(row, cs);
            }
            svg = svg_heatmap_pair(a, b, rows, cols, "u", "u_sigma");
        } else if (kind == "beta_scatter") {
            const int cx = col("x0");
            std::vector<int> bcols;
            for (int i = 0;; ++i) {
                const int c = csv_column(csv, "beta_" + std::to_string(i));
                if (c < 0) break;
                bcols.push_back(c);
            }
            if (bcols.empty())
                throw std::runtime_error("malformed CSV: no beta_* columns");
            std::vector<double> xs;
            std::vector<std::vector<double>> series(bcols.size());
            std::vector<std::string> names;
            for (std::size_t i = 0; i < bcols.size(); ++i)
                names.push_back("beta_" + std::to_string(i));
            for (const auto& row : csv.rows) {
                xs.push_back(cell(row, cx));
                for (std::size_t i = 0; i < bcols.size(); ++i)
                    series[i].push_back(cell(row, bcols[i]));
            }
            svg = svg_scatter(xs, series, names, "x0", "section barycenter");
        } else {
            throw std::runtime_error(
                "unknown plot kind (loglog|heatmap_pair|beta_scatter): " + kind);
        }
        write_text_file(out_path, svg);
        log << "[plot] " << kind << " -> " << out_path << "\n";
        return 0;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    }
}

int run_inspect(const std::string& stnr_path, std::ostream& log) {
    try {
        const StnrHeader h = inspect_stnr(stnr_path);
        log << "kind: " << (h.kind == 0 ? "function" : "set") << "\n";
        log << "n: " << h.n << "  k: " << h.k
            << "  t-axis: " << (h.has_t ? "yes" : "no") << "\n";
        log << "dims:";
        for (int d : h.dims) log << " " << d;
        log << "\nspacing:";
        for (double s : h.spacing) log << " " << format_double(s);
        log << "\n";
        const LoadedObject obj = load(stnr_path);
        if (const auto* u = std::get_if<GridFunction>(&obj)) {
            double lo = u->values().empty() ? 0.0 : u->values()[0];
            double hi = lo, sum = 0.0;
            for (double v : u->values()) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                sum += v;
            }
            log << "cells: " << u->grid().cell_count()
                << "  min: " << format_double(lo)
                << "  max: " << format_double(hi)
                << "  mass: " << format_double(sum * u->grid().cell_volume())
                << "\n";
        } else {
            const auto& e = std::get<VoxelSet>(obj);
            log << "cells: " << e.grid().cell_count()
                << "  inside: " << e.popcount() << "  volume: "
                << format_double(static_cast<double>(e.popcount()) *
                                 e.grid().cell_volume())
                << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace steiner
