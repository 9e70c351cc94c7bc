#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "orlicz/young.hpp"

using namespace orlicz;

TEST_CASE("evaluation of the backends") {
    const auto sq = YoungFunction::power(1.0, Rational(2));
    CHECK(sq(3.0) == Catch::Approx(9.0));
    CHECK(sq(0.0) == 0.0);

    const auto half = YoungFunction::power(0.5, Rational(2));
    CHECK(half(2.0) == Catch::Approx(2.0));

    const auto tab = YoungFunction::tabulated({1.0, 2.0, 3.0}, {1.0, 4.0, 9.0});
    CHECK(tab(2.0) == Catch::Approx(4.0));
    CHECK(tab(2.5) == Catch::Approx(6.5));  // chord between the nodes
    CHECK(tab(0.5) == Catch::Approx(0.5));  // linear below the first node

    const auto ex = YoungFunction::custom([](double t) { return std::exp(t) - t - 1.0; }, "exp");
    CHECK(ex(1.0) == Catch::Approx(std::exp(1.0) - 2.0));
    CHECK_THROWS(ex(-1.0));
}

TEST_CASE("patched evaluation uses chords") {
    // Base t^2 with a chord over [1, 3] joining the base values 1 and 9.
    const auto base = YoungFunction::power(1.0, Rational(2));
    const PatchSegment seg{std::log(1.0), std::log(3.0), std::log(1.0), std::log(9.0)};
    const auto A = YoungFunction::patched(base, {seg});
    CHECK(A(2.0) == Catch::Approx(5.0));
    CHECK(A(0.5) == Catch::Approx(0.25));
    CHECK(A(4.0) == Catch::Approx(16.0));
    // Chord value also reachable through the log-space path.
    CHECK(std::exp(A.log_eval(std::log(2.0))) == Catch::Approx(5.0));
}

TEST_CASE("patched validation rejects bad segments") {
    const auto base = YoungFunction::power(1.0, Rational(2));
    // Chord strictly below the base function.
    const PatchSegment below{std::log(1.0), std::log(3.0), std::log(0.1), std::log(0.2)};
    CHECK_THROWS(YoungFunction::patched(base, {below}));
}

TEST_CASE("log-space evaluation matches direct evaluation") {
    const auto A = YoungFunction::symbolic(
        PLLTerm(1.0, Rational(2), Rational(1), Rational(0), Chart::AtInfinity));
    for (double t : {0.5, 5.0, 20.0, 1e6}) {
        CHECK(A.log_eval(std::log(t)) == Catch::Approx(std::log(A(t))).margin(1e-10));
    }
    // And far beyond double range.
    const double u = 5e4;
    CHECK(A.log_eval(u) == Catch::Approx(2.0 * u + std::log(u)).epsilon(1e-9));
}

TEST_CASE("inversion") {
    const auto sq = YoungFunction::power(1.0, Rational(2));
    CHECK(young_inverse(sq, 9.0) == Catch::Approx(3.0));
    const auto cube = YoungFunction::power(1.0, Rational(3));
    CHECK(young_inverse(cube, 8.0) == Catch::Approx(2.0));
    const auto ex = YoungFunction::custom([](double t) { return std::exp(t) - t - 1.0; }, "exp");
    CHECK(young_inverse(ex, std::exp(1.0) - 2.0) == Catch::Approx(1.0));
    CHECK(young_inverse(sq, 0.0) == 0.0);

    // Round trip across three decades, within the |A(t) - y| <= rtol max(y,1)
    // contract.
    for (double t = 0.01; t < 10.0; t *= 1.7) {
        const double y = cube(t);
        CHECK(std::fabs(cube(young_inverse(cube, y)) - y) <= 1e-9 * std::max(y, 1.0));
        if (y >= 1.0) CHECK(young_inverse(cube, y) == Catch::Approx(t).epsilon(1e-6));
    }
}

TEST_CASE("conjugation closed forms") {
    // t^2/2 is self-conjugate.
    const auto half_sq = YoungFunction::power(0.5, Rational(2));
    const auto conj = conjugate(half_sq);
    for (double t : {0.5, 1.0, 2.0, 7.0}) CHECK(conj(t) == Catch::Approx(0.5 * t * t).epsilon(1e-8));

    // conj of t^p/p is t^{p'}/p'.
    const double p = 3.0, pp = 1.5;
    const auto Ap = YoungFunction::power(1.0 / p, Rational(3));
    const auto Apc = conjugate(Ap);
    for (double t : {0.3, 1.0, 4.0})
        CHECK(Apc(t) == Catch::Approx(std::pow(t, pp) / pp).epsilon(1e-6));
}

TEST_CASE("symbolic conjugate matches Table-style exponents") {
    // conj of t^p log^q has exponents p' and -q/(p-1).
    const auto A = YoungFunction::symbolic(
        PLLTerm(1.0, Rational(2), Rational(1), Rational(0), Chart::AtInfinity));
    const auto ct = conjugate(A).asymptotic();
    REQUIRE(ct.has_value());
    CHECK(ct->pow == Rational(2));
    CHECK(ct->logexp == Rational(-1));
    // The attached term tracks the numeric conjugate within a bounded factor.
    const auto Ac = conjugate(A);
    for (double t : {1e4, 1e6, 1e8}) {
        const double r = Ac(t) / ct->eval(t);
        CHECK(r > 0.4);
        CHECK(r < 2.5);
    }
}

TEST_CASE("conjugate rejects linear growth") {
    const auto lin = YoungFunction::power(1.0, Rational(1));
    CHECK_THROWS(conjugate(lin));
}

TEST_CASE("conjugate pair inverse product bound") {
    std::vector<double> grid;
    for (double t = 1e-3; t < 1e3; t *= 2.1) grid.push_back(t);

    CHECK(conjugate_pair_defect(YoungFunction::power(0.5, Rational(2)), grid) < 1e-6);
    CHECK(conjugate_pair_defect(YoungFunction::power(1.0 / 3.0, Rational(3)), grid) < 1e-6);

    const auto ex = YoungFunction::custom([](double t) { return std::exp(t) - t - 1.0; }, "exp");
    CHECK(conjugate_pair_defect(ex, grid) < 1e-3);

    const auto base = YoungFunction::power(1.0, Rational(2));
    const PatchSegment seg{std::log(1.0), std::log(3.0), std::log(1.0), std::log(9.0)};
    CHECK(conjugate_pair_defect(YoungFunction::patched(base, {seg}), grid) < 1e-3);
}

TEST_CASE("biconjugation recovers a convex function") {
    const auto A = YoungFunction::power(1.0 / 3.0, Rational(3));
    const auto AA = conjugate(conjugate(A));
    for (double t : {0.1, 0.7, 2.0, 11.0, 90.0})
        CHECK(AA(t) == Catch::Approx(A(t)).epsilon(0.01));
}

TEST_CASE("E_xi closed form for powers") {
    const auto sq = YoungFunction::power(1.0, Rational(2));
    CHECK(e_xi(sq, 1.0, 2.0) == Catch::Approx(4.0 / 3.0));
    CHECK(e_xi(sq, 1.0, 1.0) == Catch::Approx(1.0 / 3.0));
    // Quadrature path agrees with the closed form.
    const auto sq_log = YoungFunction::symbolic(PLLTerm::power(Rational(2), Chart::AtInfinity),
                                                Rational(2));
    CHECK(e_xi(sq_log, 1.0, 2.0) == Catch::Approx(4.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("E_xi monotone in t") {
    const auto A = YoungFunction::symbolic(
        PLLTerm(1.0, Rational(2), Rational(1), Rational(0), Chart::AtInfinity));
    double prev = 0.0;
    for (double t = 0.25; t < 1e4; t *= 2.0) {
        const double v = e_xi(A, 0.5, t);
        REQUIRE(v > prev);
        prev = v;
    }
    CHECK(e_xi_inverse(A, 0.5, e_xi(A, 0.5, 7.0)) == Catch::Approx(7.0).epsilon(1e-6));
}

TEST_CASE("power cutoff norm closed form") {
    const auto sq = YoungFunction::power(1.0, Rational(2));
    // || t^xi chi_(0,a) || for A = t^p equals a^{xi+1/p} (xi p + 1)^{-1/p}.
    CHECK(power_cutoff_norm(sq, 1.0, 0.5) ==
          Catch::Approx(std::pow(0.5, 1.5) / std::sqrt(3.0)).epsilon(1e-9));
    CHECK(power_cutoff_norm(sq, 1.0, 0.125) ==
          Catch::Approx(std::pow(0.125, 1.5) / std::sqrt(3.0)).epsilon(1e-9));
    CHECK_THROWS(power_cutoff_norm(sq, -0.25, 0.75));
    CHECK_THROWS(power_cutoff_norm(sq, 0.0, 0.5));
}

TEST_CASE("negative xi tail norm stays finite after resplice") {
    const auto sq = YoungFunction::power(1.0, Rational(2));
    const auto r = resplice_near_zero(sq, 5);
    const double v = power_cutoff_norm(r, -0.25, 0.25);
    CHECK(v > 0.0);
    CHECK(std::isfinite(v));
}

TEST_CASE("scaling inequalities of a Young function") {
    const auto A = YoungFunction::symbolic(
        PLLTerm(1.0, Rational(2), Rational(1), Rational(0), Chart::AtInfinity));
    for (double t : {0.4, 2.0, 12.0, 300.0}) {
        for (double al : {0.1, 0.5, 0.9}) CHECK(A(al * t) <= al * A(t) * (1.0 + 1e-9));
        for (double be : {1.5, 4.0}) CHECK(A(be * t) >= be * A(t) * (1.0 - 1e-9));
    }
}

TEST_CASE("domination order") {
    const auto t3 = YoungFunction::power(1.0, Rational(3));
    const auto t2 = YoungFunction::power(1.0, Rational(2));
    const auto t2c = YoungFunction::power(5.0, Rational(2));
    const auto t2l = YoungFunction::symbolic(
        PLLTerm(1.0, Rational(2), Rational(1), Rational(0), Chart::AtInfinity));

    CHECK(dominates(t3, t2, true));
    CHECK(dominates(t2, t2c));
    CHECK_FALSE(dominates(t2, t2c, true));
    CHECK(dominates(t2l, t2, true));
    CHECK_FALSE(dominates(t2, t3));
}

TEST_CASE("convexity of difference quotients") {
    for (const auto& A :
         {YoungFunction::symbolic(PLLTerm(1.0, Rational(2), Rational(1), Rational(0),
                                          Chart::AtInfinity)),
          YoungFunction::power(1.0, Rational(3, 2))}) {
        double prev = 0.0;
        for (double t = 0.1; t < 1e4; t *= 1.3) {
            const double q = (A(t * 1.3) - A(t)) / (0.3 * t);
            REQUIRE(q >= prev * (1.0 - 1e-9));
            prev = q;
        }
    }
}
