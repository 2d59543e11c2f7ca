#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace steiner {

// One affine piece of a radial max-of-affine integrand.
struct AffinePiece {
    std::vector<double> a;   // length n-k
    double b = 0.0;          // weight of |xi_y|, must be >= 0
    double c = 0.0;          // offset, must be <= 0 so that f(0) = 0
};

// f(xi) = max_j (a_j . xi_x + b_j |xi_y| + c_j)^+ . Non-negative, convex,
// radial in y, linear growth; closed under recession and lift.
class RadialAffineIntegrand {
public:
    RadialAffineIntegrand(int xdim, std::vector<AffinePiece> pieces);

    int xdim() const { return xdim_; }
    const std::vector<AffinePiece>& pieces() const { return pieces_; }

    double eval_radial(std::span<const double> xs, double r) const;
    RadialAffineIntegrand recession() const;   // c_j -> 0, exact
    // growth constant: f(xi) <= C (1 + |xi|) with C = max_j (|a_j| + |b_j|)
    double growth_constant() const;

    bool strictly_convex = false;   // metadata only, never asserted

private:
    int xdim_;
    std::vector<AffinePiece> pieces_;
};

// f(xi) = alpha |xi_x|^p + beta |xi_y|^p, p >= 1.
class PowerIntegrand {
public:
    PowerIntegrand(double alpha, double beta, double p);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double p() const { return p_; }

    double eval_radial(std::span<const double> xs, double r) const;
    bool finite_recession() const {
        return p_ == 1.0 || (alpha_ == 0.0 && beta_ == 0.0);
    }

private:
    double alpha_, beta_, p_;
};

using Integrand = std::variant<RadialAffineIntegrand, PowerIntegrand>;

double eval_radial(const Integrand& f, std::span<const double> xs, double r);
bool finite_recession(const Integrand& f);
// Throws std::domain_error("recession infinite") for power p > 1.
Integrand recession(const Integrand& f);

// Positively 1-homogeneous surface integrand F(xi_x, |xi_y|, xi_t), radial in
// y, values in [0, +inf]. Evaluating an infinite branch returns +inf.
class SurfaceIntegrand {
public:
    struct MaxAffine {
        // F = max_j (a_j . xs + b_j r - c_j min(t, 0))^+ with c_j <= 0:
        // the lift of a radial max-of-affine f (t<0 branch recovers f, t>=0
        // the recession).
        int xdim;
        std::vector<AffinePiece> pieces;
    };
    struct PowerLift {
        double alpha, beta, p;   // infinite on t >= 0 when p > 1
    };

    static SurfaceIntegrand euclidean();   // |(xs, r, t)|
    static SurfaceIntegrand y_norm();      // r
    static SurfaceIntegrand max_affine(MaxAffine ma);
    static SurfaceIntegrand power_lift(PowerLift pl);
    // Escape hatch for tests and experiments with hand-written evaluators.
    SurfaceIntegrand(std::function<double(std::span<const double>, double, double)> fn,
                     bool may_be_infinite, std::string name = "custom");

    double eval(std::span<const double> xs, double r, double t) const;
    bool may_be_infinite() const { return may_be_infinite_; }
    const std::string& name() const { return name_; }

    const MaxAffine* as_max_affine() const;
    const PowerLift* as_power_lift() const;
    bool is_euclidean() const;
    bool is_y_norm() const;

private:
    struct Euclid {};
    struct YNorm {};
    struct BodyTag {};
    using Body = std::variant<Euclid, YNorm, MaxAffine, PowerLift,
                              std::function<double(std::span<const double>, double, double)>>;
    SurfaceIntegrand(BodyTag, Body body, bool inf, std::string name);

    Body body_;
    bool may_be_infinite_ = false;
    std::string name_;
};

// F_f of eq-style two-branch form: f pulled back through the subgraph normal
// for t < 0, recession for t >= 0. Power p > 1 lifts with an infinite branch.
SurfaceIntegrand lift(const Integrand& f);

struct HomogeneityReport {
    double max_defect = 0.0;
    int samples = 0;
};

// max over random xi and lambda in (0, 10] of
// |F(lambda xi) - lambda F(xi)| / (1 + lambda |xi|).
HomogeneityReport homogeneity_selftest(const SurfaceIntegrand& F, int xdim,
                                       int samples, std::uint64_t seed);

} // namespace steiner
