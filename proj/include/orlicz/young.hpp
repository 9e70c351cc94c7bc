#ifndef ORLICZ_YOUNG_HPP
#define ORLICZ_YOUNG_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orlicz/numeric.hpp"
#include "orlicz/pll.hpp"

namespace orlicz {

/// One chord of a patched Young function, stored in log coordinates so the
/// construction can live at arguments far beyond double range.  The chord
/// joins (e^{u_lo}, e^{logv_lo}) to (e^{u_hi}, e^{logv_hi}) linearly in the
/// original coordinates.
struct PatchSegment {
    double u_lo;
    double u_hi;
    double logv_lo;
    double logv_hi;

    double log_slope() const { return logsubexp(logv_hi, logv_lo) - logsubexp(u_hi, u_lo); }

    /// log of the chord value at t = e^u.  Uses chord(t) = m t - (m t_lo - v_lo),
    /// whose constant part is nonnegative whenever the underlying function has
    /// v/t nondecreasing.
    double log_eval(double u) const {
        const double lm = log_slope();
        const double ld = lm + u_lo;  // log(m * t_lo)
        if (ld == logv_lo) return lm + u;
        if (ld < logv_lo) return logaddexp(lm + u, logsubexp(logv_lo, ld));
        return logsubexp(lm + u, logsubexp(ld, logv_lo));
    }
};

/// A Young function: convex, A(0) = 0, strictly increasing, with A(t)/t
/// nondecreasing.  Four backends share one interface.
class YoungFunction {
  public:
    enum class Kind { SymbolicPLL, Tabulated, Patched, Custom };

    /// Symbolic backend: the PLL term at infinity rules on (e^2, oo); below
    /// e^2 the function is spliced to a power law c t^k continuous at e^2.
    static YoungFunction symbolic(const PLLTerm& term, std::optional<Rational> splice = {}) {
        if (term.chart != Chart::AtInfinity)
            throw std::invalid_argument("Young symbolic backend needs an AtInfinity term");
        if (term.pow < 1)
            throw std::invalid_argument("Young function needs growth at least linear");
        YoungFunction A;
        A.kind_ = Kind::SymbolicPLL;
        A.term_ = term;
        A.splice_pow_ = splice ? *splice : std::max(term.pow, Rational(1));
        const double e2 = std::exp(2.0);
        A.splice_coeff_ =
            term.eval(e2 * (1.0 + 1e-13)) / std::pow(e2, to_double(A.splice_pow_));
        A.pure_power_ = term.logexp == 0 && term.loglogexp == 0 && A.splice_pow_ == term.pow;
        if (A.pure_power_) A.splice_coeff_ = term.coeff;
        return A;
    }

    /// c * t^p on all of [0, oo), exact.
    static YoungFunction power(double c, const Rational& p) {
        return symbolic(PLLTerm::power(p, Chart::AtInfinity, c), p);
    }

    static YoungFunction tabulated(std::vector<double> ts, std::vector<double> vals) {
        YoungFunction A;
        A.kind_ = Kind::Tabulated;
        A.ts_ = std::move(ts);
        A.vals_ = std::move(vals);
        A.validate_table();
        return A;
    }

    static YoungFunction custom(std::function<double(double)> fn, std::string label,
                                std::optional<PLLTerm> asymptotic = {}) {
        YoungFunction A;
        A.kind_ = Kind::Custom;
        A.fn_ = std::move(fn);
        A.label_ = std::move(label);
        A.asym_ = std::move(asymptotic);
        return A;
    }

    static YoungFunction patched(YoungFunction base, std::vector<PatchSegment> segments) {
        YoungFunction A;
        A.kind_ = Kind::Patched;
        A.base_ = std::make_shared<YoungFunction>(std::move(base));
        A.segs_ = std::move(segments);
        A.validate_segments();
        return A;
    }

    Kind kind() const { return kind_; }
    const std::string& label() const { return label_; }
    const std::vector<PatchSegment>& segments() const { return segs_; }
    const YoungFunction& base() const {
        if (!base_) throw std::logic_error("no base function");
        return *base_;
    }
    const std::vector<double>& table_abscissas() const { return ts_; }
    const std::vector<double>& table_values() const { return vals_; }
    bool pure_power() const { return pure_power_; }
    const Rational& splice_pow() const { return splice_pow_; }

    /// The PLL term governing behavior at infinity, when one is known.
    std::optional<PLLTerm> asymptotic() const {
        switch (kind_) {
            case Kind::SymbolicPLL: return term_;
            case Kind::Custom: return asym_;
            case Kind::Patched: return base_->asymptotic();
            default: return std::nullopt;
        }
    }

    double operator()(double t) const {
        if (t < 0.0) throw std::domain_error("Young function argument must be nonnegative");
        if (t == 0.0) return 0.0;
        switch (kind_) {
            case Kind::SymbolicPLL: {
                const double e2 = std::exp(2.0);
                if (t <= e2) return splice_coeff_ * std::pow(t, to_double(splice_pow_));
                return term_.eval(t);
            }
            case Kind::Tabulated: return eval_table(t);
            case Kind::Custom: return fn_(t);
            case Kind::Patched: {
                if (t > 1.0) {
                    const double u = std::log(t);
                    for (const auto& s : segs_)
                        if (u >= s.u_lo && u <= s.u_hi) return std::exp(s.log_eval(u));
                }
                return (*base_)(t);
            }
        }
        throw std::logic_error("unreachable");
    }

    /// log A(e^u); exact in log coordinates for symbolic and patched
    /// backends, so it stays usable when e^u overflows a double.
    double log_eval(double u) const {
        switch (kind_) {
            case Kind::SymbolicPLL:
                if (u <= 2.0) return std::log(splice_coeff_) + to_double(splice_pow_) * u;
                return term_.eval_log(u);
            case Kind::Patched:
                for (const auto& s : segs_)
                    if (u >= s.u_lo && u <= s.u_hi) return s.log_eval(u);
                return base_->log_eval(u);
            case Kind::Custom:
                if (asym_ && u > 40.0) return asym_->eval_log(u);
                return std::log(fn_(std::exp(u)));
            case Kind::Tabulated: return std::log(eval_table(std::exp(u)));
        }
        throw std::logic_error("unreachable");
    }

  private:
    void validate_table() const {
        if (ts_.size() != vals_.size() || ts_.size() < 2)
            throw std::invalid_argument("tabulated Young function needs >= 2 points");
        if (!(ts_.front() > 0.0)) throw std::invalid_argument("abscissas must be positive");
        for (std::size_t i = 0; i + 1 < ts_.size(); ++i)
            if (!(ts_[i] < ts_[i + 1]))
                throw std::invalid_argument("abscissas must be strictly increasing");
        for (std::size_t i = 0; i + 1 < vals_.size(); ++i)
            if (!(vals_[i] < vals_[i + 1]))
                throw std::invalid_argument("values must be strictly increasing");
        // Convexity: chord slopes nondecreasing, anchored at the origin.
        double prev = vals_.front() / ts_.front();
        for (std::size_t i = 0; i + 1 < ts_.size(); ++i) {
            const double slope = (vals_[i + 1] - vals_[i]) / (ts_[i + 1] - ts_[i]);
            if (slope < prev * (1.0 - 1e-9))
                throw std::invalid_argument("tabulated Young function is not convex");
            prev = slope;
        }
    }

    void validate_segments() const {
        double prev_hi = -std::numeric_limits<double>::infinity();
        double prev_slope = -std::numeric_limits<double>::infinity();
        for (const auto& s : segs_) {
            if (!(s.u_lo < s.u_hi) || !(s.logv_lo < s.logv_hi))
                throw std::invalid_argument("patch segment must increase");
            if (s.u_lo < prev_hi) throw std::invalid_argument("patch segments must be ordered");
            const double m = s.log_slope();
            if (m < prev_slope) throw std::invalid_argument("patch slopes must be nondecreasing");
            // The chord must sit above the base at an interior point.
            const double mid = 0.5 * (s.u_lo + s.u_hi);
            if (s.log_eval(mid) < base_->log_eval(mid) - 1e-9)
                throw std::invalid_argument("patch chord dips below the base function");
            prev_hi = s.u_hi;
            prev_slope = m;
        }
    }

    double eval_table(double t) const {
        if (t <= ts_.front()) return vals_.front() * t / ts_.front();
        if (t >= ts_.back()) {
            const std::size_t n = ts_.size();
            const double slope = (vals_[n - 1] - vals_[n - 2]) / (ts_[n - 1] - ts_[n - 2]);
            return vals_.back() + slope * (t - ts_.back());
        }
        const auto it = std::upper_bound(ts_.begin(), ts_.end(), t);
        const std::size_t i = static_cast<std::size_t>(it - ts_.begin()) - 1;
        const double w = (t - ts_[i]) / (ts_[i + 1] - ts_[i]);
        return vals_[i] + w * (vals_[i + 1] - vals_[i]);
    }

    Kind kind_ = Kind::Custom;
    PLLTerm term_ = PLLTerm::constant(1.0, Chart::AtInfinity);
    Rational splice_pow_{1};
    double splice_coeff_ = 1.0;
    bool pure_power_ = false;
    std::vector<double> ts_, vals_;
    std::function<double(double)> fn_;
    std::optional<PLLTerm> asym_;
    std::string label_;
    std::shared_ptr<YoungFunction> base_;
    std::vector<PatchSegment> segs_;
};

inline double young_eval(const YoungFunction& A, double t) { return A(t); }

/// Monotone inversion: t with |A(t) - y| <= rtol * max(y, 1).  Bracket
/// doubling followed by bisection; raises when the tolerance is unreachable.
inline double young_inverse(const YoungFunction& A, double y, double rtol = 1e-10) {
    if (y < 0.0) throw std::domain_error("young_inverse needs y >= 0");
    if (y == 0.0) return 0.0;
    double lo = 0.0, hi = 1.0;
    int guard = 0;
    while (A(hi) < y) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 4000) throw std::runtime_error("young_inverse: bracket search failed");
    }
    const double tol = rtol * std::max(y, 1.0);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double v = A(mid);
        if (std::fabs(v - y) <= tol) return mid;
        (v < y ? lo : hi) = mid;
    }
    const double mid = 0.5 * (lo + hi);
    if (std::fabs(A(mid) - y) <= tol) return mid;
    throw std::runtime_error("young_inverse: tolerance not reached in 200 iterations");
}

namespace detail {

/// Local slope of A near s by a forward difference.
inline double young_slope(const YoungFunction& A, double s) {
    const double h = std::max(s * 1e-7, 1e-12);
    return (A(s + h) - A(s)) / h;
}

/// Asymptotic conjugate of c t^p log^q loglog^r, p > 1: the stationary point
/// s_t of st - A(s) has log s_t ~ (log t)/(p-1), which yields
///   conj ~ (1 - 1/p) (cp)^{-1/(p-1)} (p-1)^{q/(p-1)} t^{p'} log^{-q/(p-1)} loglog^{-r/(p-1)}.
inline PLLTerm conjugate_term(const PLLTerm& x) {
    if (x.chart != Chart::AtInfinity || !(x.pow > 1))
        throw std::domain_error("symbolic conjugate needs an AtInfinity term with pow > 1");
    const Rational p = x.pow;
    const Rational pm1 = p - 1;
    const Rational pprime = p / pm1;
    const double pd = to_double(p);
    const double coeff = (1.0 - 1.0 / pd) * std::pow(x.coeff * pd, -1.0 / (pd - 1.0)) *
                         std::pow(pd - 1.0, to_double(x.logexp / pm1));
    return PLLTerm(coeff, pprime, -x.logexp / pm1, -x.loglogexp / pm1, Chart::AtInfinity);
}

}  // namespace detail

/// Complementary Young function conj(t) = sup_{s>0} (st - A(s)), evaluated
/// lazily by golden-section search on the concave map s -> st - A(s).  When A
/// carries a superlinear PLL term, the matching asymptotic term is attached.
inline YoungFunction conjugate(const YoungFunction& A) {
    const auto asym = A.asymptotic();
    if (asym && !(asym->pow > 1))
        throw std::domain_error("conjugate degenerates: growth of A is not superlinear");
    std::optional<PLLTerm> cterm;
    if (asym) cterm = detail::conjugate_term(*asym);
    auto shared = std::make_shared<YoungFunction>(A);
    auto fn = [shared](double t) -> double {
        if (t <= 0.0) return 0.0;
        double hi = 1.0;
        int guard = 0;
        while (detail::young_slope(*shared, hi) < t) {
            hi *= 2.0;
            if (++guard > 2000) throw std::runtime_error("conjugate: slope bracket failed");
        }
        const auto g = [&](double s) { return s * t - (*shared)(s); };
        const double s_star = golden_max(g, 0.0, hi, 1e-13);
        return std::max(0.0, g(s_star));
    };
    std::string label = "conj";
    if (!A.label().empty()) label += "(" + A.label() + ")";
    return YoungFunction::custom(std::move(fn), std::move(label), cterm);
}

/// Max relative violation over the grid of t <= inv(A)(t) * inv(conj A)(t) <= 2t.
inline double conjugate_pair_defect(const YoungFunction& A, const std::vector<double>& tgrid) {
    const YoungFunction At = conjugate(A);
    double worst = 0.0;
    for (double t : tgrid) {
        const double prod = young_inverse(A, t) * young_inverse(At, t);
        if (prod < t) worst = std::max(worst, (t - prod) / t);
        if (prod > 2.0 * t) worst = std::max(worst, (prod - 2.0 * t) / (2.0 * t));
    }
    return worst;
}

/// Redefinition of A on (0,1) as the power law A(1) s^k, identical above 1.
/// Forces integrability of A(s) s^{1/xi - 1} near zero for negative xi.
inline YoungFunction resplice_near_zero(const YoungFunction& A, long long k) {
    if (k < 1) throw std::invalid_argument("resplice exponent must be >= 1");
    auto shared = std::make_shared<YoungFunction>(A);
    const double a1 = A(1.0);
    auto fn = [shared, a1, k](double t) -> double {
        if (t <= 1.0) return a1 * std::pow(t, static_cast<double>(k));
        return (*shared)(t);
    };
    return YoungFunction::custom(std::move(fn), "respliced", A.asymptotic());
}

/// E_xi(t) = |xi|^{-1} t^{-1/xi} int_0^t A(s) s^{1/xi - 1} ds; strictly
/// increasing from (0,oo) onto (0,oo).  Pure powers evaluate in closed form;
/// otherwise the integral splits into an exact near-zero power part and a
/// log-space Simpson rule.
inline double e_xi(const YoungFunction& A, double xi, double t) {
    if (xi == 0.0) throw std::invalid_argument("xi must be nonzero");
    if (!(t > 0.0)) throw std::domain_error("e_xi needs t > 0");
    const double ixi = 1.0 / xi;
    if (A.pure_power()) {
        const auto term = *A.asymptotic();
        const double p = to_double(term.pow);
        if (p + ixi <= 0.0) throw std::runtime_error("e_xi integral diverges near zero");
        return term.coeff * std::pow(t, p) / (std::fabs(xi) * (p + ixi));
    }
    // Near-zero part by a local power fit; everything above by quadrature.
    const double s0 = std::min(t, 1e-6);
    const double p_loc = std::log(A(2.0 * s0) / A(s0)) / std::log(2.0);
    if (p_loc + ixi <= 0.0) throw std::runtime_error("e_xi integral diverges near zero");
    double integral = A(s0) * std::pow(s0, ixi) / (p_loc + ixi);
    if (t > s0)
        integral += integrate_log([&](double s) { return A(s) * std::pow(s, ixi - 1.0); }, s0, t,
                                  4000);
    return integral * std::pow(t, -ixi) / std::fabs(xi);
}

/// Inverse of the monotone profile t -> e_xi(A, xi, t).
inline double e_xi_inverse(const YoungFunction& A, double xi, double y) {
    if (!(y > 0.0)) throw std::domain_error("e_xi_inverse needs y > 0");
    double lo = 1.0, hi = 1.0;
    while (e_xi(A, xi, lo) > y) lo *= 0.5;
    while (e_xi(A, xi, hi) < y) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = std::sqrt(lo * hi);
        if (std::fabs(e_xi(A, xi, mid) - y) <= 1e-12 * std::max(y, 1.0)) return mid;
        (e_xi(A, xi, mid) < y ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

/// Cached monotone table of E_xi on a geometric grid, with interpolated
/// inversion.  Built eagerly; reads are lock-free.
class EXiProfile {
  public:
    EXiProfile(const YoungFunction& A, double xi, double t_lo = 1e-8, double t_hi = 1e8,
               int points = 257)
        : xi_(xi) {
        ts_.reserve(points);
        es_.reserve(points);
        const double r = std::log(t_hi / t_lo) / (points - 1);
        for (int i = 0; i < points; ++i) {
            const double t = t_lo * std::exp(i * r);
            ts_.push_back(t);
            es_.push_back(e_xi(A, xi, t));
        }
        for (std::size_t i = 0; i + 1 < es_.size(); ++i)
            if (!(es_[i] < es_[i + 1])) throw std::runtime_error("E_xi profile not increasing");
        source_ = std::make_shared<YoungFunction>(A);
    }

    double xi() const { return xi_; }
    double operator()(double t) const { return e_xi(*source_, xi_, t); }
    double inverse(double y) const { return e_xi_inverse(*source_, xi_, y); }

  private:
    double xi_;
    std::vector<double> ts_, es_;
    std::shared_ptr<YoungFunction> source_;
};

/// Luxemburg norm of t^xi restricted to (0,a): a^xi / E_xi^{-1}(1/a).  Exact
/// for xi > 0; for xi < 0 the same expression holds up to equivalence for the
/// singular tail, valid for a below 1/2.
inline double power_cutoff_norm(const YoungFunction& A, double xi, double a) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("a must lie in (0,1)");
    if (xi == 0.0) throw std::invalid_argument("xi must be nonzero");
    if (xi < 0.0 && !(a < 0.5)) throw std::domain_error("tail case needs a < 1/2");
    return std::pow(a, xi) / e_xi_inverse(A, xi, 1.0 / a);
}

/// Orlicz-inclusion order: true when B grows no faster than A up to scaling,
/// i.e. L^A is contained in L^B.  Exact on symbolic terms; numeric limsup
/// heuristic otherwise.  The strict variant asks B(t)/A(lambda t) -> 0 for
/// every lambda.
inline bool dominates(const YoungFunction& A, const YoungFunction& B, bool strict = false) {
    const auto ta = A.asymptotic();
    const auto tb = B.asymptotic();
    if (ta && tb) {
        const Ordering cmp = pll_compare(*tb, *ta);
        return strict ? cmp == Ordering::EventuallySmaller : cmp != Ordering::EventuallyLarger;
    }
    for (double lambda : {2.0, 4.0, 8.0}) {
        double prev = std::numeric_limits<double>::infinity();
        double first = 0.0, last = 0.0;
        for (double t : {1e4, 1e6, 1e8}) {
            const double r = B(t) / A(lambda * t);
            if (t == 1e4) first = r;
            last = r;
            if (r > prev * 1.2) return false;  // ratio growing: B eventually larger
            prev = r;
        }
        if (strict && !(last < 0.2 * first || last < 1e-6)) return false;
    }
    return true;
}

}  // namespace orlicz

#endif
