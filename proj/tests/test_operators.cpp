#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>

#include "orlicz/operators.hpp"

using namespace orlicz;

namespace {

StepFunction random_step(std::mt19937& rng, int max_cells = 8) {
    std::uniform_int_distribution<int> ncells(1, max_cells);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const int n = ncells(rng);
    std::vector<double> bp{0.0};
    for (int i = 0; i < n - 1; ++i) bp.push_back(unif(rng));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    bp.push_back(1.0);
    std::vector<double> vals;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) vals.push_back(2.0 * unif(rng));
    return StepFunction(std::move(bp), std::move(vals));
}

/// int_l^r h(t) dt with h smooth on the open piece, in log coordinates.  The
/// quadrature nodes at the endpoints are nudged one ulp inward so that a step
/// discontinuity sitting exactly on a piece boundary contributes its one-sided
/// limit, not the value from the neighbouring piece.
double piece_integral(const std::function<double(double)>& h, double l, double r) {
    const double lo = std::max(l, 1e-14);
    const double li = std::nextafter(lo, r), ri = std::nextafter(r, lo);
    return integrate_log([&](double t) { return h(std::clamp(t, li, ri)); }, lo, r, 4000);
}

double pairing_lhs(const HardyParams& p, const StepFunction& f, const StepFunction& g) {
    // Kinks of Hf occur where t^beta crosses a breakpoint of f.
    std::vector<double> cuts{0.0, 1.0};
    for (double b : f.breakpoints())
        if (b > 0.0 && b < 1.0) cuts.push_back(std::pow(b, 1.0 / p.beta_d()));
    for (double b : g.breakpoints())
        if (b > 0.0 && b < 1.0) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        s += piece_integral([&](double t) { return hardy_apply(p, f, t) * g(t); }, cuts[i],
                            cuts[i + 1]);
    return s;
}

double pairing_rhs(const HardyParams& p, const StepFunction& f, const StepFunction& g) {
    std::vector<double> cuts{0.0, 1.0};
    for (double b : g.breakpoints())
        if (b > 0.0 && b < 1.0) cuts.push_back(std::pow(b, p.beta_d()));
    for (double b : f.breakpoints())
        if (b > 0.0 && b < 1.0) cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        s += piece_integral([&](double t) { return f(t) * dual_hardy_apply(p, g, t); }, cuts[i],
                            cuts[i + 1]);
    return s;
}

}  // namespace

TEST_CASE("Hardy operator closed forms") {
    const HardyParams p(Rational(1, 2), Rational(1));
    CHECK(hardy_apply(p, StepFunction::constant(1.0), 0.25) == Catch::Approx(1.0));
    CHECK(hardy_apply(p, StepFunction::indicator(0.0, 0.25), 1.0 / 16.0) == Catch::Approx(0.5));
    // Support below the window: zero.
    CHECK(hardy_apply(p, StepFunction::indicator(0.0, 0.25), 0.6) == Catch::Approx(0.0));
    CHECK_THROWS(hardy_apply(p, StepFunction::constant(1.0), 1.5));

    const HardyParams p2(Rational(1, 3), Rational(3, 2));
    const double t = 0.2;
    const double expect = (1.0 - std::pow(std::pow(t, 1.5), 1.0 / 3.0)) * 3.0;
    CHECK(hardy_apply(p2, StepFunction::constant(1.0), t) == Catch::Approx(expect));
}

TEST_CASE("Hardy output nonincreasing in t") {
    std::mt19937 rng(5);
    const HardyParams p(Rational(1, 2), Rational(2));
    for (int k = 0; k < 20; ++k) {
        const auto f = random_step(rng);
        double prev = std::numeric_limits<double>::infinity();
        for (double t = 1e-4; t < 1.0; t *= 1.9) {
            const double v = hardy_apply(p, f, t);
            REQUIRE(v <= prev + 1e-12);
            prev = v;
        }
    }
}

TEST_CASE("dual Hardy closed forms") {
    const HardyParams p(Rational(1, 2), Rational(2));
    const double a = 0.3;
    const auto f = StepFunction::indicator(0.0, a);
    for (double t : {0.01, 0.2, 0.9}) {
        const double expect = std::pow(t, -0.5) * std::min(std::sqrt(t), a);
        CHECK(dual_hardy_apply(p, f, t) == Catch::Approx(expect));
    }
    CHECK(dual_hardy_apply(p, StepFunction::constant(1.0), 0.4) ==
          Catch::Approx(std::pow(0.4, -0.5 + 0.5)));
    // At t near 1 the window covers everything: value approaches int f.
    CHECK(dual_hardy_apply(p, f, 1.0 - 1e-12) == Catch::Approx(a).epsilon(1e-6));
}

TEST_CASE("supremum operator") {
    const double alpha = 0.5;
    CHECK(sup_op_apply(alpha, StepFunction::constant(1.0), 0.3) == Catch::Approx(1.0));
    const double a = 0.2;
    const auto f = StepFunction::indicator(0.4, 0.6);  // rearranges to chi_(0, 0.2)
    for (double t : {0.05, 0.5}) {
        const double expect = std::pow(t, alpha - 1.0) * std::pow(std::min(t, a), 1.0 - alpha);
        CHECK(sup_op_apply(alpha, f, t) == Catch::Approx(expect));
    }
    // Homogeneity.
    std::mt19937 rng(9);
    const auto g = random_step(rng);
    CHECK(sup_op_apply(alpha, g.scaled(3.0), 0.37) ==
          Catch::Approx(3.0 * sup_op_apply(alpha, g, 0.37)));
}

TEST_CASE("supremum operator dominates the rearrangement") {
    std::mt19937 rng(15);
    for (int k = 0; k < 20; ++k) {
        const auto f = random_step(rng);
        const auto fs = rearrange(f);
        for (double t = 0.01; t < 1.0; t *= 2.3)
            REQUIRE(sup_op_apply(0.4, f, t) >= fs(t) * (1.0 - 1e-12));
    }
}

TEST_CASE("duality pairing of the Hardy operator and its associate") {
    std::mt19937 rng(21);
    for (const auto& p : {HardyParams(Rational(1, 2), Rational(1)),
                          HardyParams(Rational(1, 3), Rational(3, 2)),
                          HardyParams(Rational(2, 3), Rational(2))}) {
        for (int k = 0; k < 8; ++k) {
            const auto f = random_step(rng, 5);
            const auto g = random_step(rng, 5);
            const double lhs = pairing_lhs(p, f, g);
            const double rhs = pairing_rhs(p, f, g);
            const double scale = std::max({std::fabs(lhs), std::fabs(rhs), 1e-3});
            REQUIRE(std::fabs(lhs - rhs) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("probe reports stable constants on the endpoint estimates") {
    // H maps L^1 into L^{1/(beta(1-alpha)), infty} with stable constants.
    const HardyParams p(Rational(1, 3), Rational(1));
    const double pr = 1.0 / (p.beta_d() * (1.0 - p.alpha_d()));
    const auto rep = boundedness_probe(
        OperatorTag::Hardy, p, SpaceSpec::lebesgue(1.0),
        SpaceSpec::lorentz_pq(pr, std::numeric_limits<double>::infinity()));
    CHECK(rep.stable);
    CHECK_FALSE(rep.diverging);
}

TEST_CASE("probe reports divergence from L1 into L-infinity") {
    const HardyParams p(Rational(1, 3), Rational(1));
    const auto rep =
        boundedness_probe(OperatorTag::Hardy, p, SpaceSpec::lebesgue(1.0),
                          SpaceSpec::lebesgue(std::numeric_limits<double>::infinity()));
    // chi_(0,a) has ||H chi||_infty ~ a^alpha / alpha while ||chi||_1 = a.
    CHECK(rep.diverging);
    CHECK_FALSE(rep.stable);
    CHECK(rep.decade_factor > 1.5);
}

TEST_CASE("probe rejects zero-norm probes") {
    const HardyParams p(Rational(1, 2), Rational(1));
    CHECK_THROWS(space_norm(SpaceSpec::lebesgue(1.0), StepFunction::zero()) == 0.0
                     ? throw std::invalid_argument("zero-norm probe")
                     : 0.0);
}

TEST_CASE("characteristic functions determine the constant into a Lorentz endpoint") {
    const HardyParams p(Rational(1, 2), Rational(1));
    const auto domain = SpaceSpec::lorentz_pq(2.0, 1.0);
    const auto range = SpaceSpec::lorentz_endpoint(
        FundamentalFunction::symbolic(PLLTerm::power(Rational(1), Chart::AtZero)));
    const auto fit = [&](bool chars_only, unsigned seed) {
        double c = 0.0;
        std::mt19937 rng(seed);
        for (int k = 0; k <= 10; ++k) {
            const auto f = chars_only ? StepFunction::indicator(0.0, std::pow(2.0, -k))
                                      : random_step(rng, 10);
            const double nd = space_norm(domain, f);
            if (nd == 0.0) continue;
            c = std::max(c, space_norm(range, apply_on_grid(OperatorTag::Hardy, p, f, 160)) / nd);
        }
        return c;
    };
    const double c_char = fit(true, 1);
    const double c_simple = fit(false, 2);
    CHECK(c_simple <= 1.05 * c_char);
}
