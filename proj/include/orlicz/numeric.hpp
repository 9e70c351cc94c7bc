#ifndef ORLICZ_NUMERIC_HPP
#define ORLICZ_NUMERIC_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>

namespace orlicz {

/// log(e^a + e^b) without overflow.
inline double logaddexp(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

/// log(e^a - e^b), requires a > b.
inline double logsubexp(double a, double b) {
    if (!(a > b)) throw std::domain_error("logsubexp needs a > b");
    return a + std::log1p(-std::exp(b - a));
}

/// Maximizer of a unimodal function on [lo, hi] by golden-section search.
/// Returns the abscissa; tolerance is relative to the interval scale.
inline double golden_max(const std::function<double(double)>& f, double lo, double hi,
                         double rtol = 1e-12) {
    constexpr double invphi = 0.6180339887498949;
    double a = lo, b = hi;
    double c = b - invphi * (b - a);
    double d = a + invphi * (b - a);
    double fc = f(c), fd = f(d);
    const double scale = std::max(std::fabs(lo), std::fabs(hi)) + 1.0;
    while (b - a > rtol * scale) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - invphi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + invphi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

/// Composite Simpson rule for g on [a, b] with n panels (n made even).
inline double simpson(const std::function<double(double)>& g, double a, double b, int n) {
    if (b <= a) return 0.0;
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = g(a) + g(b);
    for (int i = 1; i < n; ++i) s += g(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

/// Integral of f(s) ds over [a, b] computed in log coordinates, suited to
/// integrands spanning many orders of magnitude.  Requires 0 < a < b.
inline double integrate_log(const std::function<double(double)>& f, double a, double b,
                            int n = 2000) {
    if (!(0.0 < a && a < b)) throw std::invalid_argument("integrate_log needs 0 < a < b");
    const auto g = [&f](double u) {
        const double s = std::exp(u);
        return f(s) * s;
    };
    return simpson(g, std::log(a), std::log(b), n);
}

}  // namespace orlicz

#endif
