#include "doctest.h"
#include "quadrature.hpp"
#include "surface.hpp"

#include <cmath>
#include <numbers>

using namespace lubgap;
using std::numbers::pi;

namespace {
QuadSpec tight(double rel = 1e-12) {
    QuadSpec q;
    q.rel_tol = rel;
    return q;
}
}  // namespace

TEST_CASE("integrate_1d basics") {
    CHECK(integrate_1d([](double) { return 1.0; }, 0, 1, tight()).value == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(integrate_1d([](double t) { return std::sin(t); }, 0, pi, tight()).value ==
          doctest::Approx(2.0).epsilon(1e-13));
    const double e = 1e-4;
    const QuadResult r = integrate_1d([&](double t) { return t / (e + t * t); }, 0, 1, tight());
    CHECK(r.value == doctest::Approx(0.5 * std::log(10001.0)).epsilon(1e-11));
    CHECK(r.error_estimate <= 1e-12 * std::abs(r.value));
}

TEST_CASE("integrate_1d linearity and split invariance") {
    auto f = [](double t) { return std::exp(-t) * std::cos(3 * t); };
    auto g = [](double t) { return 1.0 / (1e-3 + t * t); };
    const QuadSpec q = tight(1e-11);
    const QuadResult F = integrate_1d(f, 0, 2, q), G = integrate_1d(g, 0, 2, q);
    const QuadResult H = integrate_1d([&](double t) { return 2.0 * f(t) - 0.5 * g(t); }, 0, 2, q);
    CHECK(std::abs(H.value - (2.0 * F.value - 0.5 * G.value)) <=
          H.error_estimate + 2.0 * F.error_estimate + 0.5 * G.error_estimate + 1e-13 * std::abs(H.value));

    QuadSpec split = q;
    split.split_points = {0.3, 1.1, 0.01};
    const QuadResult G2 = integrate_1d(g, 0, 2, split);
    CHECK(std::abs(G2.value - G.value) <= G.error_estimate + G2.error_estimate + 1e-14 * G.value);
}

TEST_CASE("integrate_1d reports exhausted budgets") {
    QuadSpec q;
    q.rel_tol = 1e-14;
    q.max_subdivisions = 3;
    CHECK_THROWS_AS(integrate_1d([](double t) { return 1.0 / std::sqrt(t); }, 0, 1, q), ToleranceError);
}

TEST_CASE("graded splits stay inside the interval") {
    for (double x : graded_splits(0.0, 1.0, 0.0, 1e-3)) {
        CHECK(x > 0.0);
        CHECK(x < 1.0);
    }
}

TEST_CASE("cumulative integral table") {
    const CumulativeIntegral F([](double t) { return t * t; }, 0.0, 1.0, 1e-13);
    for (double x : {0.0, 0.1, 0.37, 0.9, 1.0}) CHECK(F(x) == doctest::Approx(x * x * x / 3).epsilon(1e-12));
    CHECK(F.total() == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("nested integral with a polynomial kernel") {
    const NestedResult r = integrate_nested([](double, double inner) { return inner; },
                                            [](double t) { return t * t; }, 0.0, 0.0, 1.0, tight());
    CHECK(r.value == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("surface integrals over the paraboloid cap") {
    GapProfile g;
    g.m = 2;
    g.r = 0.5;
    g.eps = 1e-3;
    const QuadSpec q = tight(1e-11);
    const double area = 2 * pi / 3 * (std::pow(1.25, 1.5) - 1.0);
    CHECK(integrate_surface([](const SurfacePoint&) { return 1.0; }, g, q).value ==
          doctest::Approx(area).epsilon(1e-10));
    CHECK(integrate_surface([](const SurfacePoint& s) { return s.n[2]; }, g, q).value ==
          doctest::Approx(-pi * 0.25).epsilon(1e-11));
    QuadSpec qa = q;
    qa.abs_tol = 1e-14;  // the exact value is zero
    CHECK(std::abs(integrate_surface([](const SurfacePoint& s) { return s.x[0]; }, g, qa).value) < 1e-13);
}

TEST_CASE("surface projection identity for radial integrands") {
    for (ProfileKind kind : {ProfileKind::MConvex, ProfileKind::FlatCapped}) {
        GapProfile g;
        g.kind = kind;
        g.m = kind == ProfileKind::MConvex ? 3.0 : 2.0;
        g.s = 0.1;
        g.eps = 1e-3;
        auto radial = [](const SurfacePoint& s) { return std::exp(-std::hypot(s.x[0], s.x[1])); };
        const double lhs =
            integrate_surface([&](const SurfacePoint& s) { return -radial(s) * s.n[2]; }, g, tight(1e-11)).value;
        // int_{|x'|<r} exp(-rho) dx' = 2 pi (1 - (1 + r) e^{-r})
        const double rhs = 2 * pi * (1.0 - (1.0 + g.r) * std::exp(-g.r));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    }
}

TEST_CASE("doubling the angular resolution leaves surface integrals unchanged") {
    GapProfile g;
    g.m = 3;
    g.eps = 1e-3;
    auto f = [](const SurfacePoint& s) { return s.x[0] * s.x[0] * s.n[0] * s.n[0] + s.x[1] * s.n[2]; };
    const QuadSpec q = tight(1e-11);
    const double a = integrate_surface(f, g, q).value;
    auto ring128 = [&](double rho) {
        double acc = 0.0;
        for (int k = 0; k < 128; ++k) {
            const double th = 2 * pi * k / 128;
            const double xp[2] = {rho * std::cos(th), rho * std::sin(th)};
            const SurfacePoint sp = surface_sample(g, Side::Top, xp);
            acc += f(sp) * sp.jac;
        }
        return acc * (2 * pi / 128) * rho;
    };
    QuadSpec qr = q;
    qr.split_points = profile_splits(g, 0.0, g.r);
    const double b = integrate_1d(ring128, 0.0, g.r, qr).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-10));
}

TEST_CASE("2D surface integral is arclength") {
    GapProfile g;
    g.dim = 2;
    g.m = 2;
    g.r = 0.5;
    g.eps = 1e-3;
    // x2 = (eps + x1^2)/2 so ds = sqrt(1 + x1^2) dx1
    const double len = 2 * (0.5 * (0.5 * std::sqrt(1.25) + std::asinh(0.5)));
    CHECK(integrate_surface([](const SurfacePoint&) { return 1.0; }, g, tight()).value ==
          doctest::Approx(len).epsilon(1e-11));
}
