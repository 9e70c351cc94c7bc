#ifndef ORLICZ_OPERATORS_HPP
#define ORLICZ_OPERATORS_HPP

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "orlicz/norms.hpp"
#include "orlicz/step_function.hpp"

namespace orlicz {

/// Parameters of the Hardy-type operator (Hf)(t) = int_{t^beta}^1 f(s) s^{alpha-1} ds.
struct HardyParams {
    Rational alpha;
    Rational beta;

    HardyParams(Rational a, Rational b) : alpha(a), beta(b) {
        if (!(alpha > 0 && alpha < 1)) throw std::invalid_argument("alpha must lie in (0,1)");
        if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
        if (alpha + Rational(1) / beta < 1)
            throw std::invalid_argument("need alpha + 1/beta >= 1");
    }

    double alpha_d() const { return to_double(alpha); }
    double beta_d() const { return to_double(beta); }
};

/// (Hf)(t), exact per cell via power antiderivatives.
inline double hardy_apply(const HardyParams& p, const StepFunction& f, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t must lie in (0,1]");
    const double a = p.alpha_d();
    const double lo = std::pow(t, p.beta_d());
    double s = 0.0;
    const auto& bp = f.breakpoints();
    for (std::size_t i = 0; i < f.cells(); ++i) {
        const double l = std::max(bp[i], lo), r = bp[i + 1];
        if (l < r) s += f.values()[i] * (std::pow(r, a) - std::pow(l, a)) / a;
    }
    return s;
}

/// The associate form t^{alpha-1} int_0^{t^{1/beta}} f(s) ds.
inline double dual_hardy_apply(const HardyParams& p, const StepFunction& f, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t must lie in (0,1]");
    const double cut = std::pow(t, 1.0 / p.beta_d());
    double s = 0.0;
    const auto& bp = f.breakpoints();
    for (std::size_t i = 0; i < f.cells(); ++i) {
        const double l = bp[i], r = std::min(bp[i + 1], cut);
        if (l < r) s += f.values()[i] * (r - l);
    }
    return std::pow(t, p.alpha_d() - 1.0) * s;
}

/// S_alpha f(t) = t^{alpha-1} sup_{0<s<t} s^{1-alpha} f*(s).  Within a cell of
/// f* the map s -> s^{1-alpha} f*(s) is increasing, so cell right endpoints
/// capped at t realize the sup.
inline double sup_op_apply(double alpha, const StepFunction& f, double t) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("t must lie in (0,1]");
    const auto fs = rearrange(f);
    const auto& bp = fs.breakpoints();
    double sup = 0.0;
    for (std::size_t i = 0; i < fs.cells(); ++i) {
        if (bp[i] >= t) break;
        const double s = std::min(bp[i + 1], t);
        sup = std::max(sup, std::pow(s, 1.0 - alpha) * fs.values()[i]);
    }
    return std::pow(t, alpha - 1.0) * sup;
}

enum class OperatorTag { Hardy, DualHardy, SupAlpha };

/// Samples the image Tf on the canonical geometric grid of the given depth.
inline StepFunction apply_on_grid(OperatorTag op, const HardyParams& p, const StepFunction& f,
                                  int depth = 64) {
    auto grid = StepFunction::geometric_grid(depth);
    switch (op) {
        case OperatorTag::Hardy:
            return StepFunction::sample([&](double t) { return hardy_apply(p, f, t); }, grid);
        case OperatorTag::DualHardy:
            return StepFunction::sample([&](double t) { return dual_hardy_apply(p, f, t); }, grid);
        case OperatorTag::SupAlpha: {
            const auto fs = rearrange(f);
            return StepFunction::sample([&](double t) { return sup_op_apply(p.alpha_d(), fs, t); },
                                        grid);
        }
    }
    throw std::logic_error("unreachable");
}

struct ProbeReport {
    double max_ratio = 0.0;
    std::string argmax;
    /// Max ratio at three grid depths (refinement trend).
    std::vector<double> depth_trend;
    /// Ratio along the shrinking-support family chi_(0,a).
    std::vector<double> support_trend;
    bool stable = false;
    bool diverging = false;
    /// Observed per-decade growth factor of the support trend.
    double decade_factor = 1.0;
};

/// Probe family for boundedness experiments; fixed and seeded.
inline std::vector<std::pair<std::string, StepFunction>> probe_family(const HardyParams& p,
                                                                      int depth, unsigned seed) {
    std::vector<std::pair<std::string, StepFunction>> fam;
    for (int k = 1; k <= 6; ++k) {
        const double a = std::pow(2.0, -3.0 * k);
        fam.emplace_back("chi(0," + std::to_string(a) + ")", StepFunction::indicator(0.0, a));
        // Spikes normalized like the kernel.
        fam.emplace_back("spike(" + std::to_string(a) + ")",
                         StepFunction::indicator(0.0, a).scaled(std::pow(a, p.alpha_d() - 1.0)));
    }
    const auto grid = StepFunction::geometric_grid(depth);
    for (double gamma : {0.25 * p.alpha_d(), 0.5 * p.alpha_d(), 0.9 * p.alpha_d()}) {
        fam.emplace_back("power(-" + std::to_string(gamma) + ")",
                         StepFunction::sample([gamma](double s) { return std::pow(s, -gamma); },
                                              grid));
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < 6; ++k) {
        std::vector<double> vals;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) vals.push_back(unif(rng));
        fam.emplace_back("random" + std::to_string(k), StepFunction(grid, vals));
    }
    return fam;
}

/// sup over probes of ||Tf||_range / ||f||_domain with refinement and
/// support-scale trends.  The classification thresholds are calibration
/// choices and are reported alongside the data.
inline ProbeReport boundedness_probe(OperatorTag op, const HardyParams& p,
                                     const SpaceSpec& domain, const SpaceSpec& range,
                                     int base_depth = 200, unsigned seed = 101) {
    ProbeReport rep;
    const auto ratio_of = [&](const StepFunction& f, int depth) -> double {
        const double nd = space_norm(domain, f);
        if (nd == 0.0) throw std::invalid_argument("zero-norm probe");
        return space_norm(range, apply_on_grid(op, p, f, depth)) / nd;
    };

    for (int depth : {base_depth, base_depth + 40, base_depth + 80}) {
        double worst = 0.0;
        std::string arg;
        for (const auto& [name, f] : probe_family(p, depth, seed)) {
            const double r = ratio_of(f, depth);
            if (r > worst) {
                worst = r;
                arg = name;
            }
        }
        rep.depth_trend.push_back(worst);
        if (worst > rep.max_ratio) {
            rep.max_ratio = worst;
            rep.argmax = arg;
        }
    }

    // Shrinking-support indicators, one point per factor 2^4 of support.
    for (int k = 1; k <= 5; ++k) {
        const double a = std::pow(2.0, -4.0 * k);
        rep.support_trend.push_back(
            ratio_of(StepFunction::indicator(0.0, a), base_depth + 80));
    }

    const double d1 = rep.depth_trend[rep.depth_trend.size() - 2];
    const double d2 = rep.depth_trend.back();
    const bool depth_stable = std::fabs(d2 - d1) <= 0.10 * std::max(d1, d2);
    const double total_growth = rep.support_trend.back() / rep.support_trend.front();
    bool monotone = true;
    for (std::size_t i = 0; i + 1 < rep.support_trend.size(); ++i)
        if (rep.support_trend[i + 1] < rep.support_trend[i] * 0.999) monotone = false;
    // Each support step spans 4 dyadic scales, about 1.2 decades.
    const double decades = 1.204 * (rep.support_trend.size() - 1);
    rep.decade_factor = std::pow(total_growth, 1.0 / decades);
    rep.diverging = monotone && total_growth >= 1.5;
    rep.stable = depth_stable && !rep.diverging;
    return rep;
}

}  // namespace orlicz

#endif
