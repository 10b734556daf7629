#include "doctest.h"
#include "mpfr_oracle.hpp"
#include "quadrature.hpp"
#include "special.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace lubgap;
using std::numbers::pi;

TEST_CASE("gamma at integers and one half") {
    CHECK(lubgap::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(lubgap::gamma(5.0) == doctest::Approx(24.0).epsilon(1e-15));
    CHECK(lubgap::gamma(0.5) == doctest::Approx(1.7724538509055159).epsilon(1e-15));
    CHECK_THROWS_AS(lubgap::gamma(0.0), Error);
    CHECK_THROWS_AS(lubgap::gamma(-1.5), Error);
}

TEST_CASE("gamma agrees with the MPFR oracle to 1e-13") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 30.0);
    for (int n = 0; n < 50; ++n) {
        const double s = u(rng);
        const double ref = oracle::gamma(s);
        CHECK(std::abs(lubgap::gamma(s) - ref) <= 1e-13 * std::abs(ref));
    }
}

TEST_CASE("gamma_coeff table entries") {
    CHECK(gamma_coeff(1, 2, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gamma_coeff(3, 4, 2) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gamma_coeff(1, 1, 2) == doctest::Approx(pi / 2).epsilon(1e-14));
    CHECK(gamma_coeff(3, 3, 2) == doctest::Approx(pi / 8).epsilon(1e-14));
    // exact rational branch: 3 = 9/3
    CHECK(gamma_coeff(Rational{3, 1}, Rational{9, 1}, Rational{3, 1}) == 1.0 / 3.0);
    // m = 3, (3,4): (1/3) Gamma(5/3) Gamma(4/3)
    CHECK(gamma_coeff(3, 4, 3) == doctest::Approx(oracle::gamma_coeff(3, 4, 3)).epsilon(1e-14));
}

TEST_CASE("gamma_coeff against the MPFR oracle on random triples") {
    for (const auto& t : oracle::random_triples(200, 7)) {
        const double ref = oracle::gamma_coeff(t.i, t.j, t.m);
        const double v = gamma_coeff(t.i, t.j, t.m);
        CHECK(v > 0.0);
        CHECK(std::abs(v - ref) <= 1e-11 * std::abs(ref));
    }
}

TEST_CASE("gamma_coeff domain errors") {
    CHECK_THROWS_AS(gamma_coeff(1, 1, 1.0), Error);
    CHECK_THROWS_AS(gamma_coeff(1, 4, 2), Error);  // i - j/m < 0
    CHECK_THROWS_AS(gamma_coeff(0, 1, 2), Error);
}

TEST_CASE("gamma_coeff equals the Mellin-type integral times Gamma(i)") {
    // int_0^inf u^{j-1} (1 + u^m)^{-i} du = Gamma_{ij} / Gamma(i)
    const double i = 2.5, j = 1.5, m = 3.0;
    QuadSpec qs;
    qs.rel_tol = 1e-12;
    auto f = [&](double t) {
        // u = t / (1 - t) maps [0, 1) onto [0, inf)
        const double u = t / (1.0 - t);
        return std::pow(u, j - 1.0) / std::pow(1.0 + std::pow(u, m), i) / ((1.0 - t) * (1.0 - t));
    };
    const double integral = integrate_1d(f, 0.0, 1.0, qs).value;
    CHECK(integral * std::tgamma(i) == doctest::Approx(gamma_coeff(i, j, m)).epsilon(1e-9));
}

TEST_CASE("gamma_coeff approaches 1/m as i approaches j/m") {
    // Stated as a continuity property; Gamma(i - j/m) has a pole there, so
    // the value is expected to leave 1/m (see the decisions ledger).
    const double m = 2.0, j = 2.0;
    const double v = gamma_coeff(1.0 + 1e-8, j, m);
    CHECK(std::abs(v - 1.0 / m) <= 1e-6 / m);
}

namespace {

double phi_closed_m2(int i, int j, double r, double e) {
    const double L = std::log((e + r * r) / e);
    const double w = e + r * r;
    if (i == 1 && j == 1) return 0.5 * L;
    if (i == 1 && j == 3) return 0.5 * (r * r - e * L);
    if (i == 2 && j == 3) return 0.5 * (L + e / w - 1.0);
    if (i == 3 && j == 3) return 0.5 * (0.5 / e - 1.0 / w + e / (2.0 * w * w));
    return NAN;
}

}  // namespace

TEST_CASE("phi examples") {
    CHECK(phi(1, 1, 2, 1.0, 1e-4) == doctest::Approx(0.5 * std::log(1.0 + 1e4)).epsilon(1e-10));
    CHECK(phi(1, 1, 2, 1.0, 1e-4) == doctest::Approx(4.60522).epsilon(1e-5));
    CHECK(phi(1, 0, 1, 1.0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(phi(2, 3, 3, 0.0, 1e-3) == 0.0);
}

TEST_CASE("phi matches closed antiderivatives for m = 2") {
    for (auto [i, j] : {std::pair{1, 1}, {2, 3}, {3, 3}, {1, 3}}) {
        for (double r : {0.1, 0.5, 1.0}) {
            for (double e : {1e-6, 1e-4, 1e-2}) {
                const double ref = phi_closed_m2(i, j, r, e);
                CHECK(std::abs(phi(i, j, 2, r, e) - ref) <= 1e-9 * std::abs(ref));
            }
        }
    }
}

TEST_CASE("phi is decreasing in eps and increasing in r") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ui(0.5, 3.0), uj(0.0, 4.0), um(1.2, 5.0);
    for (int n = 0; n < 30; ++n) {
        const double i = ui(rng), j = uj(rng), m = um(rng);
        CHECK(phi(i, j, m, 0.5, 1e-4) > phi(i, j, m, 0.5, 1e-3));
        CHECK(phi(i, j, m, 0.6, 1e-3) > phi(i, j, m, 0.5, 1e-3));
    }
}

TEST_CASE("phi_leading shapes") {
    const AsymptoticExpansion log_case = phi_leading(1, 1, 2);
    REQUIRE(log_case.terms.size() == 1);
    CHECK(log_case.terms[0].is_log);
    CHECK(log_case.terms[0].coeff == 0.5);

    // int_0^inf u^3/(1+u^2)^3 du = 1/4, so Phi_33^(2) ~ eps^{-1}/4.
    const AsymptoticExpansion p33 = phi_leading(3, 3, 2);
    REQUIRE(p33.terms.size() == 1);
    CHECK(p33.terms[0].power == doctest::Approx(1.0));
    CHECK(p33.terms[0].coeff == doctest::Approx(0.25).epsilon(1e-14));

    CHECK(phi_leading(1, 3, 2).empty());
}

TEST_CASE("phi approaches its leading term") {
    for (auto [i, j, m] : {std::tuple{3.0, 3.0, 2.0}, {3.0, 3.0, 3.0}, {1.0, 0.0, 4.0}, {2.0, 1.0, 2.5}}) {
        const AsymptoticExpansion lead = phi_leading(i, j, m);
        REQUIRE(!lead.empty());
        REQUIRE(!lead.terms[0].is_log);
        double prev = INFINITY;
        for (double e : {1e-3, 1e-4, 1e-5}) {
            const double rel = std::abs(phi(i, j, m, 0.5, e) - lead.evaluate(e)) / lead.evaluate(e);
            CHECK(rel < prev);
            prev = rel;
        }
    }
}

TEST_CASE("psi reduces to phi at s = 0 and matches a binomial route") {
    CHECK(psi(1, 1, 0.0, 1.0, 1e-4) == doctest::Approx(phi(1, 1, 2, 1.0, 1e-4)).epsilon(1e-10));
    CHECK(psi(1, 0, 0.2, 0.0, 1e-3) == 0.0);
    // (t + s)^0 = 1: psi(3, 0, s, r, eps) = phi(3, 0, 2, r, eps)
    CHECK(psi(3, 0, 0.1, 0.5, 1e-3) == doctest::Approx(phi(3, 0, 2, 0.5, 1e-3)).epsilon(1e-10));
    // (t + s)^2 = t^2 + 2 s t + s^2
    const double s = 0.1, r = 0.5, e = 1e-3;
    const double via_phi = phi(3, 2, 2, r, e) + 2 * s * phi(3, 1, 2, r, e) + s * s * phi(3, 0, 2, r, e);
    CHECK(psi(3, 2, s, r, e) == doctest::Approx(via_phi).epsilon(1e-10));
}

TEST_CASE("expansion normalisation and intervals") {
    AsymptoticExpansion x;
    x.terms = {{1.0, 0.5, false}, {2.0, 0.0, true}, {3.0, 2.0, false}, {-1.0, 0.5, false}};
    x.normalize();
    REQUIRE(x.terms.size() == 2);
    CHECK(x.terms[0].power == 2.0);
    CHECK(x.terms[1].is_log);
    for (double e : {0.3, 1e-3, 1e-9}) CHECK(std::isfinite(x.evaluate(e)));

    AsymptoticExpansion iv;
    iv.residual = ResidualKind::Interval;
    iv.lower = {{0.5, 1.0, false}};
    iv.upper = {{2.0, 1.0, false}};
    for (double e : {0.3, 1e-3, 1e-7}) CHECK(iv.lower_bound(e) <= iv.upper_bound(e));
}
