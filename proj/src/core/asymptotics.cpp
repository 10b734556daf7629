#include "asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace lubgap {

namespace {

constexpr double kPi = std::numbers::pi;

AsymptoticTerm pw(double c, double power) { return {c, power, false}; }
AsymptoticTerm lg(double c) { return {c, 0.0, true}; }

bool near(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

std::vector<AsymptoticTerm> scaled(std::vector<AsymptoticTerm> t, double f) {
    for (auto& x : t) x.coeff *= f;
    return t;
}

void set_interval(AsymptoticExpansion& e, std::vector<AsymptoticTerm> lo, std::vector<AsymptoticTerm> hi) {
    e.residual = ResidualKind::Interval;
    e.lower = std::move(lo);
    e.upper = std::move(hi);
}

// The sandwich bounds were derived for U3 <= 0 and omega_i >= 0.
bool signs_ok(const ProblemParams& p, const AsymptoticOptions& o, TheoremResult& out) {
    if (!o.intervals) return false;
    const bool ok = p.U[2] <= 0.0 && p.omega[0] >= 0.0 && p.omega[1] >= 0.0 && p.omega[2] >= 0.0;
    if (ok) return true;
    if (o.strict_signs)
        throw Error(ErrorCode::SignConvention,
                    "interval residuals need U3 <= 0 and omega_i >= 0; got a violating input");
    out.warnings.push_back(
        "sign convention U3 <= 0, omega_i >= 0 violated: interval residuals suppressed");
    return false;
}

void finish(TheoremResult& r) {
    for (auto& e : r.F) e.normalize();
    for (auto& e : r.T) e.normalize();
}

}  // namespace

CoefficientSet3D coefficients_3d(double m, double mu, double r, double R) {
    CoefficientSet3D c;
    const double g12 = gamma_coeff(1, 2, m);
    const double g34 = gamma_coeff(3, 4, m);
    c.alpha12 = 2.0 * kPi * mu * g12;
    c.alpha34 = 1.5 * kPi * mu * g34;
    c.beta1 = 3.0 / 16.0 * kPi * mu * g34 *
              (1.0 - std::pow(2.0, 0.5 * m + 2.0) * R * std::pow(r, m - 2.0) +
               std::pow(2.0, -2.0 * m) * std::pow(r, 2.0 * m - 2.0));
    c.beta2 = 3.0 * kPi * mu * g34 *
              (1.0 - std::pow(2.0, -m) * R * std::pow(r, m - 2.0) +
               std::pow(2.0, m - 2.0) * std::pow(r, 2.0 * m - 2.0));
    return c;
}

CoefficientSet2D coefficients_2d(double m, double mu, double r, double R) {
    CoefficientSet2D c;
    c.alpha11 = 2.0 * mu * gamma_coeff(1, 1, m);
    const double g33 = gamma_coeff(3, 3, m);
    c.alpha33 = 3.0 * mu * g33;
    if (m >= 3.0 - 1e-12)
        c.alpha13 = mu / (2.0 * m) * ((18.0 + 3.0 * m) * gamma_coeff(1, 3, m) + 6.0 * m * gamma_coeff(2, 3, m));
    if (m >= 5.0 / 3.0 - 1e-12) c.alpha35 = 3.0 * mu * gamma_coeff(3, 5, m);
    c.beta = 3.0 * mu * (1.0 + 0.25 * std::pow(r, 2.0 * m - 2.0) - R * std::pow(r, m - 2.0)) * g33;
    return c;
}

TheoremResult force_asymptotic_3d(const ProblemParams& p, const AsymptoticOptions& o) {
    p.validate();
    const GapProfile& g = p.profile;
    if (g.dim != 3 || g.kind != ProfileKind::MConvex)
        throw Error(ErrorCode::Domain, "force_asymptotic_3d needs a 3D m-convex profile");
    const double m = g.m, mu = p.mu, r = g.r, R = g.R;
    const double U1 = p.U[0], U2 = p.U[1], U3 = p.U[2];
    const double w1 = p.omega[0], w2 = p.omega[1];
    const CoefficientSet3D c = coefficients_3d(m, mu, r, R);

    TheoremResult out;
    out.dim = 3;
    const bool two = near(m, 2.0);
    const bool bounds = signs_ok(p, o, out);
    const double top = 3.0 - 4.0 / m;  // largest rate

    // Shear-type leading term: |ln eps| for m = 2, eps^{-(1-2/m)} otherwise.
    auto shear = [&](double coeff) { return two ? lg(coeff) : pw(coeff, 1.0 - 2.0 / m); };

    out.F[0].terms = {shear(-(U1 - w2 * R) * c.alpha12)};
    out.F[1].terms = {shear(-(U2 + w1 * R) * c.alpha12)};
    if (!two) {
        out.F[0].terms.push_back(pw(w2 * c.alpha34, 2.0 - 4.0 / m));
        out.F[1].terms.push_back(pw(-w1 * c.alpha34, 2.0 - 4.0 / m));
    }
    out.F[2].terms = {pw(-2.0 * U3 * c.alpha34, top)};
    out.T[0].terms = {shear(-R * (U2 + w1 * R) * c.alpha12)};
    out.T[1].terms = {shear(R * (U1 - w2 * R) * c.alpha12)};

    if (bounds) {
        const double lo1 = two ? 0.25 * r * r * c.alpha34 : std::pow(2.0, -m) * std::pow(r, m) * c.alpha34;
        const double hi1 = two ? 2.0 * r * r * c.alpha34 : std::pow(2.0, 0.5 * m) * std::pow(r, m) * c.alpha34;
        set_interval(out.F[0], {pw(w2 * lo1, top)}, {pw(w2 * hi1, top)});
        // The F2 statement bounds -F2, so the interval flips.
        set_interval(out.F[1], {pw(-w1 * hi1, top)}, {pw(-w1 * lo1, top)});
        set_interval(out.F[2], {pw((w1 + w2) * r * c.alpha34, top)},
                     {pw(2.0 * (w1 + w2) * r * c.alpha34, top)});
        set_interval(out.T[0], {pw(w1 * r * r * c.beta1, top)}, {pw(w1 * r * r * c.beta2, top)});
        set_interval(out.T[1], {pw(w2 * r * r * c.beta1, top)}, {pw(w2 * r * r * c.beta2, top)});
    }
    out.regime = two ? "mconvex3d:m=2" : "mconvex3d:m>2";
    finish(out);
    return out;
}

TheoremResult force_asymptotic_3d_flat(const ProblemParams& p, const AsymptoticOptions& o) {
    p.validate();
    const GapProfile& g = p.profile;
    if (g.dim != 3 || g.kind != ProfileKind::FlatCapped)
        throw Error(ErrorCode::Domain, "force_asymptotic_3d_flat needs a 3D flat-capped profile");
    const double mu = p.mu, r = g.r, s = g.s, R = g.R;
    const double U1 = p.U[0], U2 = p.U[1], U3 = p.U[2];
    const double w1 = p.omega[0], w2 = p.omega[1];

    TheoremResult out;
    out.dim = 3;
    if (!(s < (std::sqrt(2.0) - 1.0) * r)) {
        std::ostringstream os;
        os << "flat radius s = " << s << " violates 0 < s < (sqrt(2)-1) r = " << (std::sqrt(2.0) - 1.0) * r;
        if (!o.override_flat_hypothesis) throw Error(ErrorCode::Hypothesis, os.str());
        out.warnings.push_back(os.str() + " (overridden)");
    }
    const bool bounds = signs_ok(p, o, out);

    const double g11 = gamma_coeff(1, 1, 2.0);
    const double g21 = gamma_coeff(2, 1, 2.0);
    const double g32 = gamma_coeff(3, 2, 2.0);
    // |ln eps| + 2 s Gamma11 / eps^{1/2} + s^2 / eps
    const std::vector<AsymptoticTerm> L = {lg(1.0), pw(2.0 * s * g11, 0.5), pw(s * s, 1.0)};

    out.F[0].terms = scaled(L, -kPi * mu * (U1 - w2 * R));
    out.F[1].terms = scaled(L, -kPi * mu * (U2 + w1 * R));
    out.F[2].terms = scaled({pw(0.5, 1.0), pw(3.0 * s * g21, 1.5), pw(4.0 * s * s * g32, 2.0),
                             pw(0.5 * (2.0 * r * r * s * s - std::pow(s, 4)), 3.0)},
                            -3.0 * kPi * mu * U3);
    out.T[0].terms = scaled(L, -kPi * mu * R * (U2 + w1 * R));
    out.T[1].terms = scaled(L, kPi * mu * R * (U1 - w2 * R));

    if (bounds) {
        const double s4 = std::pow(s, 4);
        const std::vector<AsymptoticTerm> B1 = scaled({pw(1.0, 1.0), pw(s4, 3.0)}, 3.0 / 16.0 * kPi * mu * (r - s) * (r - s));
        const std::vector<AsymptoticTerm> B2 =
            scaled({pw(1.0, 1.0), pw(2.0 * s4, 3.0)}, 0.75 * kPi * mu * (2.0 * r - s) * (2.0 * r - s));
        const std::vector<AsymptoticTerm> C1 = scaled({pw(1.0, 1.0), pw(s4, 3.0)}, 0.75 * kPi * mu * (r + s));
        const std::vector<AsymptoticTerm> C2 = scaled({pw(1.0, 1.0), pw(2.0 * s4, 3.0)}, 1.5 * kPi * mu * r);
        const double q = std::sqrt(2.0) * r - s;
        const std::vector<AsymptoticTerm> D1 = {
            pw(3.0 / 32.0 * kPi * mu * (-4.0 * R * q * q + (r + s) * (r + s) + std::pow(r - s, 4) / 16.0), 1.0),
            pw(-3.0 / 16.0 * kPi * mu * s4 *
                   (4.0 * R * q * q + (s - r) * (s - r) - 2.0 * r * r - std::pow(r - s, 4) / 16.0),
               3.0)};
        const std::vector<AsymptoticTerm> D2 = {
            pw(3.0 / 8.0 * kPi * mu * (-R * (r - s) * (r - s) + 4.0 * r * r + std::pow(q, 4)), 1.0),
            pw(-3.0 / 16.0 * kPi * mu * s4 * (R * (r - s) * (r - s) - 4.0 * r * r + 2.0 * s * s - std::pow(q, 4)),
               3.0)};
        set_interval(out.F[0], scaled(B1, w2), scaled(B2, w2));
        set_interval(out.F[1], scaled(B2, -w1), scaled(B1, -w1));
        set_interval(out.F[2], scaled(C1, w1 + w2), scaled(C2, w1 + w2));
        set_interval(out.T[0], scaled(D1, w1), scaled(D2, w1));
        set_interval(out.T[1], scaled(D1, w2), scaled(D2, w2));
    }
    out.regime = "flat3d";
    finish(out);
    return out;
}

TheoremResult force_asymptotic_2d(const ProblemParams& p, const AsymptoticOptions&) {
    p.validate();
    const GapProfile& g = p.profile;
    if (g.dim != 2 || g.kind != ProfileKind::MConvex)
        throw Error(ErrorCode::Domain, "force_asymptotic_2d needs a 2D m-convex profile");
    const double m = g.m, mu = p.mu, r = g.r, R = g.R;
    const double U1 = p.U[0], U2 = p.U[1], w0 = p.omega[0];
    const CoefficientSet2D c = coefficients_2d(m, mu, r, R);

    TheoremResult out;
    out.dim = 2;
    const double a1 = 1.0 - 1.0 / m, a2 = 2.0 - 3.0 / m, a3 = 3.0 - 3.0 / m;
    const double rm = std::pow(r, m);
    const bool low = m <= 1.5 + 1e-12;

    out.F[0].terms = {pw(-(U1 + w0 * R) * c.alpha11, a1), pw(-w0 * rm * c.alpha33, a3)};
    if (!low) out.F[0].terms.push_back(pw(-w0 * c.alpha33, a2));
    out.F[1].terms = {pw(-2.0 * (2.0 * U2 - w0 * r) * c.alpha33, a3)};

    auto& T = out.T[2].terms;
    T = {pw(-R * (U1 + w0 * R) * c.alpha11, a1), pw(w0 * r * r * c.beta, a3)};
    std::string tcase;
    if (low) {
        tcase = "1<m<=3/2";
    } else if (m < 5.0 / 3.0 && !near(m, 5.0 / 3.0)) {
        tcase = "3/2<m<5/3";
        T.push_back(pw(-R * w0 * c.alpha33, a2));
    } else if (near(m, 5.0 / 3.0)) {
        tcase = "m=5/3";
        T.push_back(lg(-18.0 / 5.0 * mu * w0));
        T.push_back(pw(-R * w0 * c.alpha33, a2));
    } else if (m < 3.0 && !near(m, 3.0)) {
        tcase = "5/3<m<3";
        T.push_back(pw(-R * w0 * c.alpha33, a2));
        T.push_back(pw(-w0 * c.alpha35, 3.0 - 5.0 / m));
    } else if (near(m, 3.0)) {
        tcase = "m=3";
        T.push_back(lg(1.5 * mu * w0));
        T.push_back(pw(-R * w0 * c.alpha33, a2));
        T.push_back(pw(-w0 * c.alpha35, 3.0 - 5.0 / m));
    } else {
        tcase = "m>3";
        T.push_back(pw(w0 * c.alpha13, 1.0 - 3.0 / m));
        T.push_back(pw(-R * w0 * c.alpha33, a2));
        T.push_back(pw(-w0 * c.alpha35, 3.0 - 5.0 / m));
    }
    out.regime = std::string("mconvex2d:F:") + (low ? "1<m<=3/2" : "m>3/2") + ";T:" + tcase;
    finish(out);
    return out;
}

TheoremResult force_asymptotic_2d_flat(const ProblemParams& p, const AsymptoticOptions&) {
    p.validate();
    const GapProfile& g = p.profile;
    if (g.dim != 2 || g.kind != ProfileKind::FlatCapped)
        throw Error(ErrorCode::Domain, "force_asymptotic_2d_flat needs a 2D flat-capped profile");
    const double mu = p.mu, r = g.r, s = g.s, R = g.R;
    const double U1 = p.U[0], U2 = p.U[1], w0 = p.omega[0];
    const double G11 = gamma_coeff(1, 1, 2.0), G21 = gamma_coeff(2, 1, 2.0);
    const double G31 = gamma_coeff(3, 1, 2.0), G33 = gamma_coeff(3, 3, 2.0);
    const double G35 = gamma_coeff(3, 5, 2.0);
    const double d = r - s, d2 = d * d, d4 = d2 * d2;
    const double s2 = s * s, s3 = s2 * s;
    const double V = U1 + w0 * R;

    const double a05 = 2.0 * mu * V * G11 + 3.0 * mu * w0 * G33;
    const double a10 = 2.0 * mu * V * s + 3.0 * mu * w0 * s;
    const double a15 = mu * w0 * (3.0 * d2 * G33 + 3.0 * s2 * G31);
    const double a20 = mu * w0 * (3.0 * s * d2 + 2.0 * s3);
    const double a25 = 3.0 * mu * w0 * s2 * d2 * G31;
    const double a30 = 2.0 * mu * w0 * s3 * d2;

    const double b15 = 6.0 * mu * (2.0 * U2 - w0 * r) * G33;
    const double b20 = 6.0 * mu * s * (U2 - w0 * r);
    const double b25 = 6.0 * mu * w0 * s2 * r * G31;
    const double b30 = 4.0 * mu * s * (3.0 * U2 * r * r - U2 * s2 - w0 * r * s2);

    const double c00 = 4.5 * mu * w0 * s;
    const double c10 = mu * w0 * s * (3.0 * R - s2 + 6.0) + 2.0 * mu * R * V * s;
    const double c05 = 2.0 * mu * R * V * G11 +
                       0.75 * mu * w0 * (-6.0 * s2 * G11 - 2.0 * s2 * G21 + s2 * G31 + 4.0 * R * G33 + 4.0 * G35);
    const double c15 =
        0.25 * mu * w0 * ((12.0 * R * d2 - 3.0 * d4 - 12.0 * r * r) * G33 + 12.0 * R * s2 * G31 + 36.0 * s2);
    const double c20 =
        0.25 * mu * w0 * (8.0 * s3 * R - 12.0 * s * r * r + 24.0 * s3 + 12.0 * R * s * d2 - 3.0 * s * d4);
    const double c25 = 0.25 * mu * w0 * (-12.0 * s2 * r * r + 12.0 * s2 * s2 + 12.0 * R * s2 * d2 - 3.0 * s2 * d4) * G31;
    const double c30 =
        0.5 * mu * w0 * (-20.0 * r * r * s3 + 12.0 * s3 * s2 + 20.0 * R * s3 * d2 - 5.0 * s3 * d4);

    TheoremResult out;
    out.dim = 2;
    out.F[0].terms = scaled({pw(a05, 0.5), pw(a10, 1.0), pw(a15, 1.5), pw(a20, 2.0), pw(a25, 2.5), pw(a30, 3.0)}, -1.0);
    out.F[1].terms = scaled({pw(b15, 1.5), pw(b20, 2.0), pw(-b25, 2.5), pw(b30, 3.0)}, -1.0);
    // -(gamma0 ln eps) = +gamma0 |ln eps| for eps < 1.
    out.T[2].terms = {lg(c00)};
    for (const auto& t : scaled({pw(c05, 0.5), pw(c10, 1.0), pw(c15, 1.5), pw(c20, 2.0), pw(c25, 2.5), pw(c30, 3.0)}, -1.0))
        out.T[2].terms.push_back(t);
    out.regime = "flat2d";
    finish(out);
    return out;
}

TheoremResult force_asymptotic(const ProblemParams& p, const AsymptoticOptions& o) {
    const GapProfile& g = p.profile;
    if (g.dim == 3)
        return g.kind == ProfileKind::MConvex ? force_asymptotic_3d(p, o) : force_asymptotic_3d_flat(p, o);
    return g.kind == ProfileKind::MConvex ? force_asymptotic_2d(p, o) : force_asymptotic_2d_flat(p, o);
}

ExponentFit fit_exponent(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 3) throw Error(ErrorCode::Domain, "fit_exponent: need at least 3 samples");
    double emin = samples[0].first, emax = samples[0].first;
    const bool positive = samples[0].second > 0.0;
    for (const auto& [e, v] : samples) {
        if (!(e > 0.0)) throw Error(ErrorCode::Domain, "fit_exponent: eps must be positive");
        if (v == 0.0 || !std::isfinite(v)) throw Error(ErrorCode::Domain, "fit_exponent: zero or non-finite value");
        if ((v > 0.0) != positive) throw Error(ErrorCode::Domain, "fit_exponent: values of mixed sign");
        emin = std::min(emin, e);
        emax = std::max(emax, e);
    }
    if (emax < 10.0 * emin * (1.0 - 1e-12)) throw Error(ErrorCode::Domain, "fit_exponent: eps must span a decade");

    const double n = double(samples.size());
    double sx = 0, sy = 0;
    for (const auto& [e, v] : samples) {
        sx += std::log(e);
        sy += std::log(std::abs(v));
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (const auto& [e, v] : samples) {
        const double dx = std::log(e) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(std::abs(v)) - my);
    }
    ExponentFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0;
    for (const auto& [e, v] : samples) {
        const double res = std::log(std::abs(v)) - (f.intercept + f.slope * std::log(e));
        rss += res * res;
    }
    f.residual = std::sqrt(rss / n);
    return f;
}

LeadingFit fit_leading(double eps1, double v1, double eps2, double v2, double a, bool log) {
    auto gfun = [&](double e) { return log ? std::abs(std::log(e)) : std::pow(e, -a); };
    const double g1 = gfun(eps1), g2 = gfun(eps2);
    if (g1 == g2) throw Error(ErrorCode::Domain, "fit_leading: degenerate sample pair");
    LeadingFit f;
    f.c = (v1 - v2) / (g1 - g2);
    f.d = v1 - f.c * g1;
    return f;
}

}  // namespace lubgap
