#ifndef ORLICZ_NORMS_HPP
#define ORLICZ_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "orlicz/pll.hpp"
#include "orlicz/step_function.hpp"
#include "orlicz/young.hpp"

namespace orlicz {

/// Fundamental function: norm of chi_(0,t) as a function of t.  Symbolic as a
/// PLL term at zero, or tabulated quasiconcave values on (0,1].
class FundamentalFunction {
  public:
    static FundamentalFunction symbolic(const PLLTerm& term) {
        if (term.chart != Chart::AtZero)
            throw std::invalid_argument("fundamental function needs an AtZero term");
        FundamentalFunction phi;
        phi.term_ = term;
        return phi;
    }

    static FundamentalFunction tabulated(std::vector<double> ts, std::vector<double> vals) {
        FundamentalFunction phi;
        phi.ts_ = std::move(ts);
        phi.vals_ = std::move(vals);
        phi.validate_table();
        return phi;
    }

    bool is_symbolic() const { return term_.has_value(); }
    const std::vector<double>& table_abscissas() const { return ts_; }
    const std::vector<double>& table_values() const { return vals_; }
    const PLLTerm& term() const {
        if (!term_) throw std::logic_error("fundamental function is not symbolic");
        return *term_;
    }

    double operator()(double t) const {
        if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("fundamental function lives on (0,1]");
        if (term_) return term_->eval(std::min(t, 1.0 - 1e-12));
        if (t <= ts_.front()) return vals_.front() * t / ts_.front();
        const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
        if (it == ts_.end()) return vals_.back();
        const std::size_t i = static_cast<std::size_t>(it - ts_.begin()) - 1;
        const double w = (t - ts_[i]) / (ts_[i + 1] - ts_[i]);
        return vals_[i] + w * (vals_[i + 1] - vals_[i]);
    }

    /// Sampled quasiconcavity: nondecreasing with phi(t)/t nonincreasing.
    bool is_quasiconcave(int samples = 200) const {
        double prev_v = 0.0, prev_r = std::numeric_limits<double>::infinity();
        for (int i = 1; i <= samples; ++i) {
            const double t = std::pow(10.0, -6.0 + 6.0 * i / samples) * 0.999;
            const double v = (*this)(t);
            if (v < prev_v * (1.0 - 1e-9)) return false;
            if (v / t > prev_r * (1.0 + 1e-9)) return false;
            prev_v = v;
            prev_r = v / t;
        }
        return true;
    }

  private:
    void validate_table() const {
        if (ts_.size() != vals_.size() || ts_.size() < 2)
            throw std::invalid_argument("fundamental table needs >= 2 points");
        for (std::size_t i = 0; i + 1 < ts_.size(); ++i) {
            if (!(ts_[i] < ts_[i + 1])) throw std::invalid_argument("abscissas must increase");
            if (vals_[i] > vals_[i + 1] * (1.0 + 1e-9))
                throw std::invalid_argument("fundamental table must be nondecreasing");
            if (vals_[i] / ts_[i] < vals_[i + 1] / ts_[i + 1] * (1.0 - 1e-9))
                throw std::invalid_argument("fundamental table must have phi(t)/t nonincreasing");
        }
        if (!(ts_.front() > 0.0 && ts_.back() <= 1.0))
            throw std::invalid_argument("fundamental table abscissas must lie in (0,1]");
    }

    std::optional<PLLTerm> term_;
    std::vector<double> ts_, vals_;
};

/// A rearrangement-invariant space on (0,1).
struct SpaceSpec {
    enum class Kind { Orlicz, MarcinkiewiczEndpoint, LorentzEndpoint, LorentzPQ, Lebesgue };

    Kind kind;
    std::optional<YoungFunction> A;
    std::optional<FundamentalFunction> phi;
    double p = 0.0;
    double q = 0.0;

    static SpaceSpec orlicz(YoungFunction A) {
        return SpaceSpec{Kind::Orlicz, std::move(A), std::nullopt, 0.0, 0.0};
    }
    static SpaceSpec marcinkiewicz(FundamentalFunction phi) {
        return SpaceSpec{Kind::MarcinkiewiczEndpoint, std::nullopt, std::move(phi), 0.0, 0.0};
    }
    static SpaceSpec lorentz_endpoint(FundamentalFunction phi) {
        return SpaceSpec{Kind::LorentzEndpoint, std::nullopt, std::move(phi), 0.0, 0.0};
    }
    static SpaceSpec lorentz_pq(double p, double q) {
        const bool proper = p > 1.0 && std::isfinite(p) && q >= 1.0;
        const bool degenerate = (p == q) && (p == 1.0 || std::isinf(p));
        if (!proper && !degenerate)
            throw std::invalid_argument("Lorentz parameters need 1 < p < oo, 1 <= q <= oo, or p = q in {1, oo}");
        return SpaceSpec{Kind::LorentzPQ, std::nullopt, std::nullopt, p, q};
    }
    static SpaceSpec lebesgue(double p) {
        if (!(p >= 1.0)) throw std::invalid_argument("Lebesgue exponent needs p >= 1");
        return SpaceSpec{Kind::Lebesgue, std::nullopt, std::nullopt, p, p};
    }
};

/// Modular int_0^1 A(f/lambda), exact on cells.
inline double orlicz_modular(const YoungFunction& A, const StepFunction& f, double lambda) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i)
        s += A(f.values()[i] / lambda) * f.measure(i);
    return s;
}

/// Luxemburg norm inf{lambda : int A(f/lambda) <= 1} by bisection on the
/// nonincreasing modular.
inline double luxemburg_norm(const YoungFunction& A, const StepFunction& f, double rtol = 1e-10) {
    const double fmax = f.max_value();
    if (fmax == 0.0) return 0.0;
    double hi = fmax, lo = fmax;
    while (orlicz_modular(A, f, hi) > 1.0) hi *= 2.0;
    while (orlicz_modular(A, f, lo) < 1.0) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-300) return 0.0;
    }
    while (hi - lo > rtol * hi) {
        const double mid = 0.5 * (lo + hi);
        (orlicz_modular(A, f, mid) > 1.0 ? lo : hi) = mid;
    }
    return hi;
}

/// Lower bound for the Orlicz (dual) norm: sup int f g over g with conjugate
/// modular at most 1.  Each candidate shape is scaled to modular exactly 1 by
/// bisection, so every reported value is genuinely attained.
inline double orlicz_dual_lower(const YoungFunction& A, const StepFunction& f, int trials = 16,
                                unsigned seed = 1) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (f.max_value() == 0.0) return 0.0;
    const YoungFunction At = conjugate(A);

    const auto pair_with = [&](const StepFunction& g) -> double {
        if (g.max_value() == 0.0) return 0.0;
        // Scale c so the conjugate modular of c g is 1.
        double hi = 1.0, lo = 1.0;
        while (orlicz_modular(At, g.scaled(hi), 1.0) < 1.0) hi *= 2.0;
        while (orlicz_modular(At, g.scaled(lo), 1.0) > 1.0) lo *= 0.5;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            (orlicz_modular(At, g.scaled(mid), 1.0) > 1.0 ? hi : lo) = mid;
        }
        const auto [rf, rg] = StepFunction::common_refinement(f, g.scaled(lo));
        double s = 0.0;
        for (std::size_t i = 0; i < rf.cells(); ++i)
            s += rf.values()[i] * rg.values()[i] * rf.measure(i);
        return s;
    };

    double best = pair_with(StepFunction::constant(1.0));
    best = std::max(best, pair_with(f));
    // Profile shaped like A(f)/f, the equality case of Young's inequality.
    {
        std::vector<double> vals;
        for (double v : f.values()) vals.push_back(v > 0.0 ? A(v) / v : 0.0);
        if (*std::max_element(vals.begin(), vals.end()) > 0.0)
            best = std::max(best, pair_with(StepFunction(f.breakpoints(), std::move(vals))));
    }
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int k = 0; k < trials; ++k) {
        std::vector<double> vals;
        for (std::size_t i = 0; i < f.cells(); ++i) vals.push_back(unif(rng));
        best = std::max(best, pair_with(StepFunction(f.breakpoints(), std::move(vals))));
    }
    return best;
}

/// Marcinkiewicz: sup f** phi; Lorentz endpoint: int f* dphi.
inline double endpoint_norm(const SpaceSpec& spec, const StepFunction& f) {
    if (spec.kind != SpaceSpec::Kind::MarcinkiewiczEndpoint &&
        spec.kind != SpaceSpec::Kind::LorentzEndpoint)
        throw std::invalid_argument("endpoint_norm needs an endpoint space");
    const FundamentalFunction& phi = *spec.phi;
    const HardyAverage avg(f);
    const auto& bp = avg.rearranged().breakpoints();
    if (spec.kind == SpaceSpec::Kind::MarcinkiewiczEndpoint) {
        double sup = 0.0;
        for (std::size_t i = 1; i < bp.size(); ++i) {
            const double l = std::max(bp[i - 1], 1e-15), r = bp[i];
            for (int k = 0; k <= 16; ++k) {
                const double t = std::min(l * std::pow(r / l, k / 16.0), 1.0 - 1e-15);
                sup = std::max(sup, avg(t) * phi(t));
            }
        }
        return sup;
    }
    double s = 0.0;
    double prev_phi = 0.0;
    const auto& fs = avg.rearranged();
    for (std::size_t i = 0; i < fs.cells(); ++i) {
        const double ph = phi(std::min(bp[i + 1], 1.0));
        s += fs.values()[i] * (ph - prev_phi);
        prev_phi = ph;
    }
    return s;
}

/// Lorentz L^{p,q} functional; exact on cells for the f* form, numeric per
/// cell for the maximal f** form.
inline double lorentz_pq_norm(double p, double q, const StepFunction& f, bool maximal = false) {
    SpaceSpec::lorentz_pq(p, q);  // parameter validation
    const HardyAverage avg(f);
    const auto& fs = avg.rearranged();
    const auto& bp = fs.breakpoints();
    if (std::isinf(p)) return maximal ? avg(1e-12) : fs.values().empty() ? 0.0 : fs.values()[0];
    if (std::isinf(q)) {
        double sup = 0.0;
        for (std::size_t i = 0; i < fs.cells(); ++i) {
            const double t = maximal ? bp[i] : bp[i + 1];
            if (maximal) {
                // t^{1/p} f**(t) per cell peaks at an endpoint of the cell.
                const double l = std::max(bp[i], 1e-15);
                sup = std::max({sup, std::pow(l, 1.0 / p) * avg(std::min(l, 1.0 - 1e-15)),
                                std::pow(bp[i + 1], 1.0 / p) *
                                    avg(std::min(bp[i + 1], 1.0 - 1e-15))});
            } else {
                sup = std::max(sup, std::pow(t, 1.0 / p) * fs.values()[i]);
            }
        }
        return sup;
    }
    double s = 0.0;
    const double e = q / p;
    for (std::size_t i = 0; i < fs.cells(); ++i) {
        const double l = bp[i], r = bp[i + 1];
        if (maximal) {
            const double ll = std::max(l, 1e-12);
            s += integrate_log(
                [&](double t) {
                    const double v = avg.prefix_integral(t) / t;
                    return std::pow(t, e - 1.0) * std::pow(v, q);
                },
                ll, r, 128);
        } else {
            const double v = fs.values()[i];
            if (v > 0.0) s += std::pow(v, q) * (std::pow(r, e) - std::pow(l, e)) / e;
        }
    }
    return std::pow(s, 1.0 / q);
}

/// Norm of f in the given space.
inline double space_norm(const SpaceSpec& spec, const StepFunction& f) {
    switch (spec.kind) {
        case SpaceSpec::Kind::Orlicz: return luxemburg_norm(*spec.A, f);
        case SpaceSpec::Kind::MarcinkiewiczEndpoint:
        case SpaceSpec::Kind::LorentzEndpoint: return endpoint_norm(spec, f);
        case SpaceSpec::Kind::LorentzPQ: return lorentz_pq_norm(spec.p, spec.q, f);
        case SpaceSpec::Kind::Lebesgue: {
            if (std::isinf(spec.p)) return rearrange(f).max_value();
            double s = 0.0;
            for (std::size_t i = 0; i < f.cells(); ++i)
                s += std::pow(f.values()[i], spec.p) * f.measure(i);
            return std::pow(s, 1.0 / spec.p);
        }
    }
    throw std::logic_error("unreachable");
}

namespace detail {

/// phi(t) = 1/inv(A)(1/t) as a PLL term at zero, from the asymptotics of A:
/// for A ~ c t^p log^q loglog^r at infinity, inv(A)(y) ~ c^{-1/p} p^{q/p}
/// y^{1/p} log^{-q/p} y loglog^{-r/p} y.
inline PLLTerm orlicz_fundamental_term(const PLLTerm& a) {
    if (a.chart != Chart::AtInfinity || a.pow < 1)
        throw std::domain_error("fundamental term needs superlinear AtInfinity asymptotics");
    const Rational p = a.pow;
    const double pd = to_double(p);
    const double coeff = std::pow(a.coeff, 1.0 / pd) * std::pow(pd, -to_double(a.logexp) / pd);
    return PLLTerm(coeff, Rational(1) / p, a.logexp / p, a.loglogexp / p, Chart::AtZero);
}

}  // namespace detail

/// Fundamental function of the space: symbolic when possible, otherwise
/// tabulated from the norms of chi_(0,t).
inline FundamentalFunction fundamental(const SpaceSpec& spec) {
    switch (spec.kind) {
        case SpaceSpec::Kind::Orlicz: {
            if (const auto a = spec.A->asymptotic())
                return FundamentalFunction::symbolic(detail::orlicz_fundamental_term(*a));
            std::vector<double> ts, vals;
            for (int k = 60; k >= 0; --k) {
                const double t = std::pow(2.0, -k / 4.0);
                ts.push_back(std::min(t, 1.0));
                vals.push_back(1.0 / young_inverse(*spec.A, 1.0 / ts.back()));
            }
            return FundamentalFunction::tabulated(std::move(ts), std::move(vals));
        }
        case SpaceSpec::Kind::MarcinkiewiczEndpoint:
        case SpaceSpec::Kind::LorentzEndpoint: return *spec.phi;
        case SpaceSpec::Kind::LorentzPQ:
        case SpaceSpec::Kind::Lebesgue: {
            if (std::isinf(spec.p))
                return FundamentalFunction::symbolic(PLLTerm::constant(1.0, Chart::AtZero));
            // t^{1/p}: exact rational exponent when p is a simple ratio.
            for (long long den = 1; den <= 64; ++den) {
                const double num = spec.p * den;
                if (std::fabs(num - std::llround(num)) < 1e-12)
                    return FundamentalFunction::symbolic(PLLTerm::power(
                        Rational(den, std::llround(num)), Chart::AtZero));
            }
            std::vector<double> ts, vals;
            for (int k = 60; k >= 0; --k) {
                ts.push_back(std::pow(2.0, -k / 4.0));
                vals.push_back(std::pow(ts.back(), 1.0 / spec.p));
            }
            return FundamentalFunction::tabulated(std::move(ts), std::move(vals));
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace orlicz

#endif
