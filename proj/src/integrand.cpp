#include "steiner/integrand.hpp"

#include "steiner/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace steiner {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}
} // namespace

RadialAffineIntegrand::RadialAffineIntegrand(int xdim,
                                             std::vector<AffinePiece> pieces)
    : xdim_(xdim), pieces_(std::move(pieces)) {
    if (xdim_ < 0) throw std::invalid_argument("integrand: negative xdim");
    for (const auto& p : pieces_) {
        if (static_cast<int>(p.a.size()) != xdim_)
            throw std::invalid_argument("integrand: piece a-vector length");
        if (p.b < 0.0)
            throw std::invalid_argument("integrand: b < 0 breaks radial monotonicity");
        if (p.c > 0.0)
            throw std::invalid_argument("integrand: c > 0 breaks f(0) = 0");
        for (double ai : p.a)
            if (!std::isfinite(ai))
                throw std::invalid_argument("integrand: non-finite coefficient");
        if (!std::isfinite(p.b) || !std::isfinite(p.c))
            throw std::invalid_argument("integrand: non-finite coefficient");
    }
}

double RadialAffineIntegrand::eval_radial(std::span<const double> xs,
                                          double r) const {
    if (static_cast<int>(xs.size()) != xdim_)
        throw std::invalid_argument("integrand: gradient x-dim mismatch");
    double best = 0.0;   // the positive part: empty max is 0
    for (const auto& p : pieces_) {
        double term = p.c;
        for (int i = 0; i < xdim_; ++i)
            term += p.a[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)];
        term += p.b * r;
        best = best > term ? best : term;
    }
    return best;
}

RadialAffineIntegrand RadialAffineIntegrand::recession() const {
    std::vector<AffinePiece> rec = pieces_;
    for (auto& p : rec) p.c = 0.0;
    RadialAffineIntegrand out(xdim_, std::move(rec));
    out.strictly_convex = false;
    return out;
}

double RadialAffineIntegrand::growth_constant() const {
    double c = 0.0;
    for (const auto& p : pieces_) {
        const double g = norm(p.a) + std::abs(p.b);
        c = c > g ? c : g;
    }
    return c;
}

PowerIntegrand::PowerIntegrand(double alpha, double beta, double p)
    : alpha_(alpha), beta_(beta), p_(p) {
    if (alpha_ < 0.0 || beta_ < 0.0)
        throw std::invalid_argument("integrand: negative power weight");
    if (!(p_ >= 1.0))
        throw std::invalid_argument("integrand: exponent below 1 is not convex");
}

double PowerIntegrand::eval_radial(std::span<const double> xs, double r) const {
    const double nx = norm(xs);
    if (p_ == 1.0) return alpha_ * nx + beta_ * r;
    if (p_ == 2.0) return alpha_ * (nx * nx) + beta_ * (r * r);
    return alpha_ * std::pow(nx, p_) + beta_ * std::pow(r, p_);
}

double eval_radial(const Integrand& f, std::span<const double> xs, double r) {
    return std::visit([&](const auto& g) { return g.eval_radial(xs, r); }, f);
}

bool finite_recession(const Integrand& f) {
    if (std::holds_alternative<RadialAffineIntegrand>(f)) return true;
    return std::get<PowerIntegrand>(f).finite_recession();
}

Integrand recession(const Integrand& f) {
    if (const auto* ra = std::get_if<RadialAffineIntegrand>(&f))
        return ra->recession();
    const auto& pw = std::get<PowerIntegrand>(f);
    if (!pw.finite_recession()) throw std::domain_error("recession infinite");
    if (pw.p() == 1.0) return pw;                      // 1-homogeneous already
    return PowerIntegrand(0.0, 0.0, 1.0);              // f == 0
}

SurfaceIntegrand::SurfaceIntegrand(BodyTag, Body body, bool inf,
                                   std::string name)
    : body_(std::move(body)), may_be_infinite_(inf), name_(std::move(name)) {}

SurfaceIntegrand::SurfaceIntegrand(
    std::function<double(std::span<const double>, double, double)> fn,
    bool may_be_infinite, std::string name)
    : body_(std::move(fn)), may_be_infinite_(may_be_infinite),
      name_(std::move(name)) {}

SurfaceIntegrand SurfaceIntegrand::euclidean() {
    return SurfaceIntegrand(BodyTag{}, Body{Euclid{}}, false, "euclidean");
}

SurfaceIntegrand SurfaceIntegrand::y_norm() {
    return SurfaceIntegrand(BodyTag{}, Body{YNorm{}}, false, "ynorm");
}

SurfaceIntegrand SurfaceIntegrand::max_affine(MaxAffine ma) {
    return SurfaceIntegrand(BodyTag{}, Body{std::move(ma)}, false, "lift");
}

SurfaceIntegrand SurfaceIntegrand::power_lift(PowerLift pl) {
    const bool inf = pl.p > 1.0 && (pl.alpha > 0.0 || pl.beta > 0.0);
    return SurfaceIntegrand(BodyTag{}, Body{pl}, inf, "power_lift");
}

double SurfaceIntegrand::eval(std::span<const double> xs, double r,
                              double t) const {
    if (const auto* e = std::get_if<Euclid>(&body_)) {
        (void)e;
        double s = t * t;
        s += r * r;
        for (double x : xs) s += x * x;
        return std::sqrt(s);
    }
    if (std::holds_alternative<YNorm>(body_)) return r;
    if (const auto* ma = std::get_if<MaxAffine>(&body_)) {
        if (static_cast<int>(xs.size()) != ma->xdim)
            throw std::invalid_argument("surface integrand: x-dim mismatch");
        const double tneg = t < 0.0 ? t : 0.0;
        double best = 0.0;
        for (const auto& p : ma->pieces) {
            double term = -p.c * tneg;
            for (std::size_t i = 0; i < xs.size(); ++i)
                term += p.a[i] * xs[i];
            term += p.b * r;
            best = best > term ? best : term;
        }
        return best;
    }
    if (const auto* pl = std::get_if<PowerLift>(&body_)) {
        const double nx = norm(xs);
        if (pl->p == 1.0) return pl->alpha * nx + pl->beta * r;
        if (t < 0.0) {
            const double s = -t;
            const double fx = pl->p == 2.0
                                  ? pl->alpha * (nx * nx) + pl->beta * (r * r)
                                  : pl->alpha * std::pow(nx, pl->p) +
                                        pl->beta * std::pow(r, pl->p);
            return fx / std::pow(s, pl->p - 1.0);
        }
        if (nx == 0.0 && r == 0.0) return 0.0;
        return (pl->alpha > 0.0 || pl->beta > 0.0) ? kInf : 0.0;
    }
    const auto& fn = std::get<std::function<double(std::span<const double>, double, double)>>(body_);
    return fn(xs, r, t);
}

const SurfaceIntegrand::MaxAffine* SurfaceIntegrand::as_max_affine() const {
    return std::get_if<MaxAffine>(&body_);
}

const SurfaceIntegrand::PowerLift* SurfaceIntegrand::as_power_lift() const {
    return std::get_if<PowerLift>(&body_);
}

bool SurfaceIntegrand::is_euclidean() const {
    return std::holds_alternative<Euclid>(body_);
}

bool SurfaceIntegrand::is_y_norm() const {
    return std::holds_alternative<YNorm>(body_);
}

SurfaceIntegrand lift(const Integrand& f) {
    if (const auto* ra = std::get_if<RadialAffineIntegrand>(&f))
        return SurfaceIntegrand::max_affine({ra->xdim(), ra->pieces()});
    const auto& pw = std::get<PowerIntegrand>(f);
    return SurfaceIntegrand::power_lift({pw.alpha(), pw.beta(), pw.p()});
}

HomogeneityReport homogeneity_selftest(const SurfaceIntegrand& F, int xdim,
                                       int samples, std::uint64_t seed) {
    Rng rng(seed);
    HomogeneityReport rep;
    rep.samples = samples;
    std::vector<double> xs(static_cast<std::size_t>(xdim));
    std::vector<double> xsl(static_cast<std::size_t>(xdim));
    for (int s = 0; s < samples; ++s) {
        double norm2 = 0.0;
        for (auto& x : xs) {
            x = rng.uniform(-1.0, 1.0);
            norm2 += x * x;
        }
        const double r = rng.uniform(0.0, 1.0);
        const double t = rng.uniform(-1.0, 1.0);
        norm2 += r * r + t * t;
        const double lambda = rng.uniform(1e-3, 10.0);
        for (std::size_t i = 0; i < xs.size(); ++i) xsl[i] = lambda * xs[i];
        const double f1 = F.eval(xs, r, t);
        const double f2 = F.eval(xsl, lambda * r, lambda * t);
        double defect;
        if (std::isinf(f1) || std::isinf(f2))
            defect = (std::isinf(f1) && std::isinf(f2)) ? 0.0 : kInf;
        else
            defect = std::abs(f2 - lambda * f1) /
                     (1.0 + lambda * std::sqrt(norm2));
        rep.max_defect = rep.max_defect > defect ? rep.max_defect : defect;
    }
    // F(0) = 0 is part of homogeneity; a constant evaluator must be flagged
    for (auto& x : xs) x = 0.0;
    const double f0 = F.eval(xs, 0.0, 0.0);
    if (!(f0 == 0.0)) rep.max_defect = std::abs(f0) > rep.max_defect ? std::abs(f0) : rep.max_defect;
    return rep;
}

} // namespace steiner
