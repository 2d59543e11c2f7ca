#pragma once

#include "steiner/functionals.hpp"
#include "steiner/grid.hpp"
#include "steiner/integrand.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace steiner {

// Energy of a configuration against its rearrangement. gap >= 0 is the
// inequality under test; the sign is asserted by callers with their own
// scheme tolerance, not here.
struct GapReport {
    double value_original = 0.0;
    double value_symmetrized = 0.0;
    double gap = 0.0;   // original - symmetrized
    double h = 0.0;     // max grid spacing
    std::string scheme;
};

// Per-(x[,t]) section statistics: k-volume L, boundary measure p, equivalent
// ball radius R = (L/omega_k)^(1/k), barycenter beta, isoperimetric deficit
// delta = p - k omega_k^(1/k) L^((k-1)/k), and delta/p as a scale-free score.
struct SliceRow {
    std::vector<int> slice_coords;
    double t = 0.0;
    double L = 0.0;
    double p = 0.0;
    double R = 0.0;
    std::vector<double> beta;
    double deficit = 0.0;
    double ball_score = 0.0;
};

struct ConditionReport {
    double critical_measure = 0.0;
    bool projection_connected = true;
    bool y_bounded = true;
    double boundary_vertical_fraction = 0.0;
    double theta = 0.0;   // |grad chi| threshold actually used
    double tau = 0.0;     // verticality threshold actually used
};

struct LambdaDerivRow {
    std::vector<int> slice_coords;
    double t = 0.0;
    double lhs = 0.0;          // central difference of lambda in x_i
    double rhs = 0.0;          // coarea shell average of d_i u
    double abs_err = 0.0;
    std::int64_t shell_cells = 0;
    bool skipped = false;
};

struct CoareaProbe {
    double mass = 0.0;                // H^n of the critical set over {u>0}
    std::vector<double> bin_mass;     // by u-level bin
    double bin_width = 0.0;
};

double ball_volume_constant(int k);   // omega_k

GapReport polya_szego_report(const GridFunction& u, const Integrand& f,
                             DiffScheme scheme = DiffScheme::forward,
                             const Region* region = nullptr);

GapReport perimeter_report(const VoxelSet& e, const SurfaceIntegrand& F,
                           SurfaceScheme scheme, double mollify_width = 2.0,
                           const Region* region = nullptr);

// [J(u), J(u^{S_1}), J((u^{S_1})^{S_2}), ..., J(u^sigma)] for the iterated
// one-dimensional symmetrizations; two entries when k = 1.
std::vector<double> chain_report(const GridFunction& u, const Integrand& f,
                                 DiffScheme scheme = DiffScheme::forward);

std::vector<SliceRow> slice_analysis(const VoxelSet& e);
// Superlevel-set analysis at t_levels thresholds (j + 1/2) max(u) / t_levels.
std::vector<SliceRow> slice_analysis(const GridFunction& u, int t_levels);

// theta <= 0 picks the default 0.1 / max_spacing; tau <= 0 picks 0.1.
ConditionReport condition_report(const GridFunction& u, double theta = -1.0,
                                 double tau = -1.0);
ConditionReport condition_report(const VoxelSet& e, double theta = -1.0,
                                 double tau = -1.0);

std::vector<LambdaDerivRow> verify_lambda_derivatives(
    const GridFunction& u, int x_axis, const std::vector<double>& thresholds,
    double delta);

CoareaProbe coarea_irregularity_probe(const GridFunction& u, int bins = 64);

} // namespace steiner
