#ifndef ORLICZ_STEP_FUNCTION_HPP
#define ORLICZ_STEP_FUNCTION_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace orlicz {

/// A finitely-valued nonnegative measurable function on (0,1): breakpoints
/// 0 = b_0 < b_1 < ... < b_n = 1 and one value per cell [b_i, b_{i+1}).
class StepFunction {
  public:
    StepFunction() = default;
    StepFunction(std::vector<double> breakpoints, std::vector<double> values)
        : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
        validate();
    }

    static StepFunction zero() { return StepFunction({0.0, 1.0}, {0.0}); }
    static StepFunction constant(double c) { return StepFunction({0.0, 1.0}, {c}); }

    /// Indicator of the interval (a,b) within (0,1).
    static StepFunction indicator(double a, double b) {
        if (!(0.0 <= a && a < b && b <= 1.0)) throw std::invalid_argument("bad indicator interval");
        std::vector<double> bp{0.0}, vals;
        if (a > 0.0) {
            bp.push_back(a);
            vals.push_back(0.0);
        }
        bp.push_back(b);
        vals.push_back(1.0);
        if (b < 1.0) {
            bp.push_back(1.0);
            vals.push_back(0.0);
        }
        return StepFunction(std::move(bp), std::move(vals));
    }

    /// Canonical geometric grid: breakpoints 2^{-k/8} down to 2^{-depth/8},
    /// so the action near zero is resolved.
    static std::vector<double> geometric_grid(int depth) {
        std::vector<double> bp{0.0};
        for (int k = depth; k >= 0; --k) bp.push_back(std::pow(2.0, -k / 8.0));
        bp.back() = 1.0;
        return bp;
    }

    /// Samples |g| on the given breakpoints, one geometric-midpoint value per
    /// cell (arithmetic midpoint for the first cell touching 0).
    static StepFunction sample(const std::function<double(double)>& g,
                               std::vector<double> breakpoints) {
        std::vector<double> vals;
        vals.reserve(breakpoints.size() - 1);
        for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
            const double l = breakpoints[i], r = breakpoints[i + 1];
            const double mid = l > 0.0 ? std::sqrt(l * r) : 0.5 * r;
            vals.push_back(std::fabs(g(mid)));
        }
        return StepFunction(std::move(breakpoints), std::move(vals));
    }

    std::size_t cells() const { return values_.size(); }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    double measure(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

    double operator()(double t) const {
        if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("StepFunction defined on (0,1]");
        const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
        return values_[std::min(i, values_.size() - 1)];
    }

    double max_value() const { return *std::max_element(values_.begin(), values_.end()); }

    double integral() const {
        double s = 0.0;
        for (std::size_t i = 0; i < cells(); ++i) s += values_[i] * measure(i);
        return s;
    }

    StepFunction scaled(double c) const {
        std::vector<double> vals = values_;
        for (double& v : vals) v *= c;
        return StepFunction(breakpoints_, std::move(vals));
    }

    /// Re-expresses the function on the union of both breakpoint grids.
    static std::pair<StepFunction, StepFunction> common_refinement(const StepFunction& f,
                                                                  const StepFunction& g) {
        std::vector<double> bp;
        std::merge(f.breakpoints_.begin(), f.breakpoints_.end(), g.breakpoints_.begin(),
                   g.breakpoints_.end(), std::back_inserter(bp));
        bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
        auto refine = [&bp](const StepFunction& h) {
            std::vector<double> vals;
            vals.reserve(bp.size() - 1);
            for (std::size_t i = 0; i + 1 < bp.size(); ++i) vals.push_back(h(0.5 * (bp[i] + bp[i + 1])));
            return StepFunction(bp, std::move(vals));
        };
        return {refine(f), refine(g)};
    }

  private:
    void validate() const {
        if (breakpoints_.size() < 2 || values_.size() + 1 != breakpoints_.size())
            throw std::invalid_argument("StepFunction: size mismatch");
        if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
            throw std::invalid_argument("StepFunction: domain must be (0,1)");
        for (std::size_t i = 0; i + 1 < breakpoints_.size(); ++i)
            if (!(breakpoints_[i] < breakpoints_[i + 1]))
                throw std::invalid_argument("StepFunction: breakpoints must increase");
        for (double v : values_)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("StepFunction: values must be finite and nonnegative");
    }

    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

/// Distribution function mu_f(lambda) = |{ f > lambda }|.
inline double distribution(const StepFunction& f, double lambda) {
    if (lambda < 0.0) throw std::invalid_argument("lambda must be nonnegative");
    double m = 0.0;
    for (std::size_t i = 0; i < f.cells(); ++i)
        if (f.values()[i] > lambda) m += f.measure(i);
    return m;
}

/// Nonincreasing rearrangement: cells sorted by value descending, measures
/// preserved.  Stable in the original cell order.
inline StepFunction rearrange(const StepFunction& f) {
    std::vector<std::size_t> order(f.cells());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return f.values()[a] > f.values()[b]; });
    std::vector<double> bp{0.0}, vals;
    double pos = 0.0;
    for (std::size_t idx : order) {
        pos += f.measure(idx);
        bp.push_back(pos);
        vals.push_back(f.values()[idx]);
    }
    bp.back() = 1.0;
    // Merge equal-valued neighbours so rearrangement is canonical.
    std::vector<double> mbp{0.0}, mvals;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (!mvals.empty() && mvals.back() == vals[i])
            mbp.back() = bp[i + 1];
        else {
            mbp.push_back(bp[i + 1]);
            mvals.push_back(vals[i]);
        }
    }
    return StepFunction(std::move(mbp), std::move(mvals));
}

/// Hardy average f**(t) = (1/t) int_0^t f*(s) ds, exact from the rearranged
/// cells.  `f` may be any step function; it is rearranged internally.
class HardyAverage {
  public:
    explicit HardyAverage(const StepFunction& f) : fstar_(rearrange(f)) {
        prefix_.resize(fstar_.cells() + 1, 0.0);
        for (std::size_t i = 0; i < fstar_.cells(); ++i)
            prefix_[i + 1] = prefix_[i] + fstar_.values()[i] * fstar_.measure(i);
    }

    const StepFunction& rearranged() const { return fstar_; }

    double prefix_integral(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return prefix_.back();
        const auto& bp = fstar_.breakpoints();
        const auto it = std::upper_bound(bp.begin(), bp.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - bp.begin()) - 1;
        return prefix_[i] + fstar_.values()[std::min(i, fstar_.cells() - 1)] * (t - bp[i]);
    }

    double operator()(double t) const {
        if (!(t > 0.0 && t <= 1.0)) throw std::domain_error("Hardy average defined on (0,1]");
        return prefix_integral(t) / t;
    }

  private:
    StepFunction fstar_;
    std::vector<double> prefix_;
};

inline double hardy_average(const StepFunction& f, double t) { return HardyAverage(f)(t); }

/// Hardy-Littlewood defect int f* g* - int f g >= 0, exact on the common
/// refinement.
inline double hl_defect(const StepFunction& f, const StepFunction& g) {
    const auto [rf, rg] = StepFunction::common_refinement(f, g);
    double plain = 0.0;
    for (std::size_t i = 0; i < rf.cells(); ++i)
        plain += rf.values()[i] * rg.values()[i] * rf.measure(i);
    const auto [sf, sg] = StepFunction::common_refinement(rearrange(f), rearrange(g));
    double sorted = 0.0;
    for (std::size_t i = 0; i < sf.cells(); ++i)
        sorted += sf.values()[i] * sg.values()[i] * sf.measure(i);
    return sorted - plain;
}

/// CSV rows "left_endpoint,value"; the last cell closes at 1.
inline void write_csv(std::ostream& os, const StepFunction& f) {
    for (std::size_t i = 0; i < f.cells(); ++i)
        os << f.breakpoints()[i] << "," << f.values()[i] << "\n";
}

inline StepFunction read_csv(std::istream& is) {
    std::vector<double> bp, vals;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw std::invalid_argument("bad CSV row: " + line);
        bp.push_back(std::stod(a));
        vals.push_back(std::stod(b));
    }
    if (vals.empty()) throw std::invalid_argument("empty function");
    bp.push_back(1.0);
    return StepFunction(std::move(bp), std::move(vals));
}

}  // namespace orlicz

#endif
