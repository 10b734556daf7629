#include "surface.hpp"

#include <numbers>

namespace lubgap {

std::vector<double> profile_splits(const GapProfile& g, double a, double b) {
    std::vector<double> s = graded_splits(a, b, 0.0, g.layer());
    if (a < 0.0 && b > 0.0) s.push_back(0.0);
    if (g.kind == ProfileKind::FlatCapped) {
        for (double c : {-g.s, g.s}) {
            if (c > a && c < b) s.push_back(c);
            for (double x : graded_splits(a, b, c, g.layer())) s.push_back(x);
        }
    }
    return s;
}

QuadResult integrate_surface(const std::function<double(const SurfacePoint&)>& g, const GapProfile& profile,
                             const QuadSpec& spec) {
    profile.validate();
    const double r = profile.r;
    QuadSpec qs = spec;
    if (profile.dim == 2) {
        qs.split_points = profile_splits(profile, -r, r);
        auto f = [&](double x1) {
            const double xp[2] = {x1, 0.0};
            const SurfacePoint sp = surface_sample(profile, Side::Top, xp);
            return g(sp) * sp.jac;
        };
        return integrate_1d(f, -r, r, qs);
    }
    constexpr int kAngles = 64;
    auto ring = [&](double rho) {
        double acc = 0.0;
        for (int a = 0; a < kAngles; ++a) {
            const double th = 2.0 * std::numbers::pi * a / kAngles;
            const double xp[2] = {rho * std::cos(th), rho * std::sin(th)};
            const SurfacePoint sp = surface_sample(profile, Side::Top, xp);
            acc += g(sp) * sp.jac;
        }
        return acc * (2.0 * std::numbers::pi / kAngles) * rho;
    };
    qs.split_points = profile_splits(profile, 0.0, r);
    return integrate_1d(ring, 0.0, r, qs);
}

}  // namespace lubgap
