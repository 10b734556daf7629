#include "doctest.h"
#include "asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lubgap;
using std::numbers::pi;

namespace {

ProblemParams params3(double m, Vec3 U, Vec3 w = {}) {
    ProblemParams p;
    p.profile.m = m;
    p.U = U;
    p.omega = w;
    return p;
}

ProblemParams params2(double m, Vec3 U, double w) {
    ProblemParams p;
    p.profile.dim = 2;
    p.profile.m = m;
    p.U = U;
    p.omega = {w, 0.0, 0.0};
    return p;
}

ProblemParams flat3(double s, Vec3 U, Vec3 w = {}) {
    ProblemParams p = params3(2.0, U, w);
    p.profile.kind = ProfileKind::FlatCapped;
    p.profile.s = s;
    return p;
}

const AsymptoticTerm* log_term(const AsymptoticExpansion& x) {
    for (const auto& t : x.terms)
        if (t.is_log) return &t;
    return nullptr;
}

}  // namespace

TEST_CASE("paraboloid sliding sideways") {
    const TheoremResult t = force_asymptotic(params3(2.0, {1, 0, 0}));
    REQUIRE(t.F[0].terms.size() == 1);
    CHECK(t.F[0].terms[0].is_log);
    CHECK(t.F[0].terms[0].coeff == doctest::Approx(-pi).epsilon(1e-14));
    REQUIRE(t.T[1].terms.size() == 1);
    CHECK(t.T[1].terms[0].is_log);
    CHECK(t.T[1].terms[0].coeff == doctest::Approx(pi).epsilon(1e-14));
    for (int c : {1, 2}) CHECK(t.F[c].empty());
    for (int c : {0, 2}) CHECK(t.T[c].empty());
    CHECK(t.F[0].evaluate(1e-4) == doctest::Approx(-pi * std::log(1e4)).epsilon(1e-14));
}

TEST_CASE("torque of a sliding paraboloid scales with the radius") {
    ProblemParams p = params3(2.0, {1, 0, 0});
    p.profile.R = 2.5;
    const TheoremResult t = force_asymptotic(p);
    CHECK(t.T[1].terms[0].coeff == doctest::Approx(2.5 * pi).epsilon(1e-14));
}

TEST_CASE("squeezing an m = 4 profile") {
    const TheoremResult t = force_asymptotic(params3(4.0, {0, 0, -1}));
    REQUIRE(t.F[2].terms.size() == 1);
    CHECK(t.F[2].terms[0].power == doctest::Approx(2.0));
    CHECK(t.F[2].terms[0].coeff == doctest::Approx(0.75 * pi).epsilon(1e-13));
    CHECK(t.F[2].evaluate(1e-3) > 0.0);
}

TEST_CASE("zero motion gives empty expansions") {
    for (const ProblemParams& p : {params3(2.0, {}), params3(3.5, {}), flat3(0.1, {}), params2(2.0, {}, 0.0)}) {
        const TheoremResult t = force_asymptotic(p);
        for (int c = 0; c < 3; ++c) {
            CHECK(t.F[c].empty());
            CHECK(t.T[c].empty());
        }
    }
}

TEST_CASE("flat cap squeeze leading coefficient") {
    const TheoremResult t = force_asymptotic(flat3(0.1, {0, 0, -1}));
    REQUIRE(!t.F[2].empty());
    CHECK(t.F[2].terms[0].power == doctest::Approx(3.0));
    CHECK(t.F[2].terms[0].coeff == doctest::Approx(0.023091).epsilon(1e-4));
    CHECK(t.regime.find("flat") != std::string::npos);
}

TEST_CASE("flat cap without rotation has no intervals") {
    const TheoremResult t = force_asymptotic(flat3(0.1, {0.4, -0.2, -1}));
    for (int c = 0; c < 3; ++c) CHECK(t.F[c].residual == ResidualKind::Bounded);
}

TEST_CASE("flat cap approaches the paraboloid as the cap shrinks") {
    const Vec3 U{0.5, 0.2, -1}, w{0.1, 0.3, 0.2};
    const TheoremResult a = force_asymptotic(flat3(1e-12, U, w));
    const TheoremResult b = force_asymptotic(params3(2.0, U, w));
    for (double e : {1e-3, 1e-5}) {
        for (int c = 0; c < 3; ++c) {
            CHECK(a.F[c].evaluate(e) == doctest::Approx(b.F[c].evaluate(e)).epsilon(1e-6));
            CHECK(a.T[c].evaluate(e) == doctest::Approx(b.T[c].evaluate(e)).epsilon(1e-6));
        }
    }
}

TEST_CASE("flat radius hypothesis") {
    const ProblemParams p = flat3(0.3, {0, 0, -1});
    CHECK_THROWS_AS(force_asymptotic(p), Error);
    AsymptoticOptions o;
    o.override_flat_hypothesis = true;
    const TheoremResult t = force_asymptotic(p, o);
    CHECK(!t.warnings.empty());
    CHECK(!t.F[2].empty());
}

TEST_CASE("2D paraboloid coefficients") {
    const CoefficientSet2D c = coefficients_2d(2.0, 1.0, 0.5, 1.0);
    CHECK(c.alpha11 == doctest::Approx(pi).epsilon(1e-14));
    CHECK(c.alpha33 == doctest::Approx(3 * pi / 8).epsilon(1e-14));
    const TheoremResult t = force_asymptotic(params2(2.0, {1, 0, 0}, 0.0));
    REQUIRE(t.F[0].terms.size() == 1);
    CHECK(t.F[0].terms[0].power == doctest::Approx(0.5));
    CHECK(t.F[0].terms[0].coeff == doctest::Approx(-pi).epsilon(1e-12));
}

TEST_CASE("2D torque log term at m = 5/3") {
    const TheoremResult t = force_asymptotic(params2(5.0 / 3.0, {}, 1.0));
    const AsymptoticTerm* lt = log_term(t.T[2]);
    REQUIRE(lt != nullptr);
    CHECK(lt->coeff == doctest::Approx(-3.6).epsilon(1e-12));
    CHECK(log_term(t.F[0]) == nullptr);
}

TEST_CASE("2D flat cap coefficients") {
    ProblemParams p = params2(2.0, {}, 1.0);
    p.profile.kind = ProfileKind::FlatCapped;
    p.profile.s = 0.1;
    const TheoremResult t = force_asymptotic(p);
    REQUIRE(!t.F[0].empty());
    CHECK(t.F[0].terms[0].power == doctest::Approx(3.0));
    CHECK(t.F[0].terms[0].coeff == doctest::Approx(-3.2e-4).epsilon(1e-10));
    const AsymptoticTerm* lt = log_term(t.T[2]);
    REQUIRE(lt != nullptr);
    CHECK(lt->coeff == doctest::Approx(0.45).epsilon(1e-12));
}

TEST_CASE("2D dispatch boundary at m = 3/2") {
    const TheoremResult at = force_asymptotic(params2(1.5, {1, -1, 0}, 1.0));
    const TheoremResult above = force_asymptotic(params2(1.6, {1, -1, 0}, 1.0));
    CHECK(at.regime.find("1<m<=3/2") != std::string::npos);
    CHECK(above.regime.find("m>3/2") != std::string::npos);
    CHECK(at.F[1].terms[0].power == doctest::Approx(1.0));
}

TEST_CASE("expansions are linear in the motion") {
    const Vec3 U{0.3, -0.6, -1}, w{0.2, 0.4, 0.1};
    Vec3 U3 = U, w3 = w;
    for (int c = 0; c < 3; ++c) {
        U3[c] *= -3;
        w3[c] *= -3;
    }
    for (double m : {2.0, 2.5, 4.0}) {
        const TheoremResult a = force_asymptotic(params3(m, U, w));
        const TheoremResult b = force_asymptotic(params3(m, U3, w3));
        for (int c = 0; c < 3; ++c) {
            CHECK(b.F[c].evaluate(1e-4) == doctest::Approx(-3 * a.F[c].evaluate(1e-4)).epsilon(1e-12));
            CHECK(b.T[c].evaluate(1e-4) == doctest::Approx(-3 * a.T[c].evaluate(1e-4)).epsilon(1e-12));
        }
    }
}

TEST_CASE("interval residuals are ordered") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 20; ++n) {
        const double m = 2.0 + 3.0 * u(rng);
        const TheoremResult t = force_asymptotic(params3(m, {u(rng) - 0.5, u(rng) - 0.5, -u(rng)}, {u(rng), u(rng), u(rng)}));
        CHECK(t.warnings.empty());
        for (double e : {1e-2, 1e-4, 1e-6}) {
            for (int c = 0; c < 3; ++c) {
                CHECK(t.F[c].lower_bound(e) <= t.F[c].upper_bound(e));
                CHECK(t.T[c].lower_bound(e) <= t.T[c].upper_bound(e));
            }
        }
    }
}

TEST_CASE("sign convention violations") {
    const ProblemParams p = params3(2.0, {0, 0, 1}, {0.5, 0.5, 0});
    const TheoremResult t = force_asymptotic(p);
    CHECK(!t.warnings.empty());
    for (int c = 0; c < 3; ++c) CHECK(t.F[c].residual == ResidualKind::Bounded);
    CHECK(t.F[2].evaluate(1e-3) < 0.0);

    AsymptoticOptions strict;
    strict.strict_signs = true;
    try {
        force_asymptotic(p, strict);
        FAIL("expected a sign-convention error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SignConvention);
    }
}

TEST_CASE("fit_exponent and fit_leading") {
    const ExponentFit f = fit_exponent({{1e-3, 2e3}, {1e-4, 2e4}, {1e-5, 2e5}});
    CHECK(f.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(f.intercept == doctest::Approx(std::log(2.0)).epsilon(1e-10));
    CHECK(f.residual < 1e-12);

    const ExponentFit g = fit_exponent({{1e-2, -7 * std::pow(1e-2, -0.4)}, {1e-4, -7 * std::pow(1e-4, -0.4)}, {1e-6, -7 * std::pow(1e-6, -0.4)}});
    CHECK(g.slope == doctest::Approx(-0.4).epsilon(1e-12));

    const LeadingFit l = fit_leading(1e-3, 5 * std::pow(1e-3, -0.5) + 2, 1e-5, 5 * std::pow(1e-5, -0.5) + 2, 0.5);
    CHECK(l.c == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(l.d == doctest::Approx(2.0).epsilon(1e-9));

    const LeadingFit lg =
        fit_leading(1e-3, -pi * std::log(1e3) + 1, 1e-5, -pi * std::log(1e5) + 1, 0.0, true);
    CHECK(lg.c == doctest::Approx(-pi).epsilon(1e-12));
    CHECK(lg.d == doctest::Approx(1.0).epsilon(1e-10));
}
