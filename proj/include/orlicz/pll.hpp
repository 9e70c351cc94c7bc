#ifndef ORLICZ_PLL_HPP
#define ORLICZ_PLL_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <stdexcept>
#include <string>

#include "orlicz/rational.hpp"

namespace orlicz {

/// Where a term lives: near the origin on (0,1) or near infinity on (e^2,oo).
enum class Chart { AtZero, AtInfinity };

enum class Ordering { EventuallySmaller, Equivalent, EventuallyLarger };

struct chart_mismatch : std::invalid_argument {
    chart_mismatch() : std::invalid_argument("PLL terms live in different charts") {}
};

/// One power-log-loglog term,
///   at zero:      c * t^pow * log(2/t)^logexp * loglog(4/t)^loglogexp,
///   at infinity:  c * t^pow * log(t)^logexp  * loglog(t)^loglogexp.
/// The shifted bases 2/t and 4/t keep every factor positive and finite on all
/// of (0,1).  Exponents are exact rationals; the coefficient is floating point
/// and never participates in ordering decisions.
struct PLLTerm {
    double coeff = 1.0;
    Rational pow{0};
    Rational logexp{0};
    Rational loglogexp{0};
    Chart chart = Chart::AtInfinity;

    PLLTerm() = default;
    PLLTerm(double c, Rational p, Rational l, Rational ll, Chart ch)
        : coeff(c), pow(p), logexp(l), loglogexp(ll), chart(ch) {
        if (!(coeff > 0.0)) throw std::invalid_argument("PLL coefficient must be positive");
    }

    static PLLTerm constant(double c, Chart ch) {
        return PLLTerm(c, Rational(0), Rational(0), Rational(0), ch);
    }
    static PLLTerm power(Rational p, Chart ch, double c = 1.0) {
        return PLLTerm(c, p, Rational(0), Rational(0), ch);
    }

    bool is_constant() const { return pow == 0 && logexp == 0 && loglogexp == 0; }

    double eval(double t) const {
        if (chart == Chart::AtZero) {
            if (!(t > 0.0 && t < 1.0)) throw std::domain_error("AtZero term defined on (0,1)");
            const double lg = std::log(2.0 / t);
            const double llg = std::log(std::log(4.0 / t));
            return coeff * std::pow(t, to_double(pow)) * std::pow(lg, to_double(logexp)) *
                   std::pow(llg, to_double(loglogexp));
        }
        if (!(t > std::exp(2.0))) throw std::domain_error("AtInfinity term defined on (e^2,oo)");
        return coeff * std::pow(t, to_double(pow)) * std::pow(std::log(t), to_double(logexp)) *
               std::pow(std::log(std::log(t)), to_double(loglogexp));
    }

    /// log of the value at t = e^u, for AtInfinity terms.  Lets the witness
    /// machinery reach arguments far beyond double range.
    double eval_log(double u) const {
        if (chart != Chart::AtInfinity) throw std::domain_error("eval_log needs AtInfinity chart");
        if (!(u > 2.0)) throw std::domain_error("eval_log needs u > 2");
        return std::log(coeff) + to_double(pow) * u + to_double(logexp) * std::log(u) +
               to_double(loglogexp) * std::log(std::log(u));
    }

    /// True when the term tends to +oo toward the chart's limit point
    /// (t -> 0+ or t -> oo).
    bool diverges() const {
        const Rational p = (chart == Chart::AtZero) ? -pow : pow;
        if (p != 0) return p > 0;
        if (logexp != 0) return logexp > 0;
        return loglogexp > 0;
    }

    /// Tends to 0 toward the chart's limit point.
    bool vanishes() const {
        const Rational p = (chart == Chart::AtZero) ? -pow : pow;
        if (p != 0) return p < 0;
        if (logexp != 0) return logexp < 0;
        return loglogexp < 0;
    }
};

inline PLLTerm pll_mul(const PLLTerm& x, const PLLTerm& y) {
    if (x.chart != y.chart) throw chart_mismatch();
    return PLLTerm(x.coeff * y.coeff, x.pow + y.pow, x.logexp + y.logexp,
                   x.loglogexp + y.loglogexp, x.chart);
}

inline PLLTerm pll_power(const PLLTerm& x, const Rational& r) {
    return PLLTerm(std::pow(x.coeff, to_double(r)), x.pow * r, x.logexp * r, x.loglogexp * r,
                   x.chart);
}

/// Term asymptotically equal to t |-> x(t^s), s > 0.  The power exponent is
/// scaled; log(2/t^s) ~ s log(2/t) contributes the factor s^logexp to the
/// coefficient, and the loglog factor changes only by a bounded correction.
inline PLLTerm pll_substitute_power(const PLLTerm& x, const Rational& s) {
    if (s <= 0) throw std::invalid_argument("substitution exponent must be positive");
    return PLLTerm(x.coeff * std::pow(to_double(s), to_double(x.logexp)), x.pow * s, x.logexp,
                   x.loglogexp, x.chart);
}

/// Eventual ordering toward the chart's limit, constants ignored.  At zero a
/// smaller power exponent means a larger function near 0.
inline Ordering pll_compare(const PLLTerm& x, const PLLTerm& y) {
    if (x.chart != y.chart) throw chart_mismatch();
    Rational dp = x.pow - y.pow;
    if (x.chart == Chart::AtZero) dp = -dp;
    const Rational dl = x.logexp - y.logexp;
    const Rational dll = x.loglogexp - y.loglogexp;
    for (const Rational& d : {dp, dl, dll}) {
        if (d > 0) return Ordering::EventuallyLarger;
        if (d < 0) return Ordering::EventuallySmaller;
    }
    return Ordering::Equivalent;
}

/// lim_{t->oo} x(Kt)/x(t); the log factors contribute nothing in the limit.
inline double pll_limit_ratio(const PLLTerm& x, double K) {
    if (x.chart != Chart::AtInfinity) throw std::domain_error("limit ratio needs AtInfinity chart");
    if (!(K > 1.0)) throw std::invalid_argument("K must exceed 1");
    return std::pow(K, to_double(x.pow));
}

/// Envelope sup_{t<s<1} x(s) of an AtZero term, as a term in t.  A term
/// diverging at the origin is its own envelope; otherwise the supremum over
/// (t,1) is asymptotically the constant sup of x over the whole interval.
inline PLLTerm pll_sup_tail(const PLLTerm& x) {
    if (x.chart != Chart::AtZero) throw std::domain_error("sup_tail needs AtZero chart");
    if (x.diverges()) return x;
    double best = 0.0;
    for (double s = 0.999; s > 1e-9; s *= 0.93) best = std::max(best, x.eval(s));
    return PLLTerm::constant(best, Chart::AtZero);
}

namespace detail {
inline std::string shortest_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}
}  // namespace detail

/// "c * t^{a} * log^{b} * loglog^{d} @ {zero|inf}"; rationals rendered as
/// "p/q" and parsed back bit-exact.
inline std::string to_string(const PLLTerm& x) {
    return detail::shortest_double(x.coeff) + " * t^{" + format_rational(x.pow) + "} * log^{" +
           format_rational(x.logexp) + "} * loglog^{" + format_rational(x.loglogexp) + "} @ " +
           (x.chart == Chart::AtZero ? "zero" : "inf");
}

inline PLLTerm parse_pll(const std::string& text) {
    auto fail = [&] { throw std::invalid_argument("bad PLL term: " + text); };
    const auto star = text.find('*');
    const auto amp = text.find('@');
    if (star == std::string::npos || amp == std::string::npos) fail();
    const double c = std::stod(text.substr(0, star));
    Chart ch;
    const std::string tail = text.substr(amp + 1);
    if (tail.find("zero") != std::string::npos)
        ch = Chart::AtZero;
    else if (tail.find("inf") != std::string::npos)
        ch = Chart::AtInfinity;
    else
        fail();
    // "loglog" would match a naive search for "log", so strip it first.
    std::string body = text.substr(star, amp - star);
    Rational ll(0);
    const std::string lltag = "loglog^{";
    if (auto at = body.find(lltag); at != std::string::npos) {
        const auto close = body.find('}', at + lltag.size());
        if (close == std::string::npos) fail();
        ll = parse_rational(body.substr(at + lltag.size(), close - at - lltag.size()));
        body.erase(at, close - at + 1);
    }
    PLLTerm out(c, Rational(0), Rational(0), ll, ch);
    const auto extract = [&](const std::string& tag) -> Rational {
        const auto at = body.find(tag);
        if (at == std::string::npos) return Rational(0);
        const auto close = body.find('}', at + tag.size());
        if (close == std::string::npos) fail();
        return parse_rational(body.substr(at + tag.size(), close - at - tag.size()));
    };
    out.pow = extract("t^{");
    out.logexp = extract("log^{");
    return out;
}

}  // namespace orlicz

#endif
