#include "geometry.hpp"

#include <sstream>

namespace lubgap {

void GapProfile::validate() const {
    std::ostringstream os;
    if (dim != 2 && dim != 3) os << "dimension must be 2 or 3; ";
    if (!(eps > 0.0)) os << "eps must be positive; ";
    if (!(r > 0.0)) os << "r must be positive; ";
    if (!(R > r)) os << "R must exceed r; ";
    if (kind == ProfileKind::MConvex) {
        if (dim == 3 && !(m >= 2.0)) os << "3D profiles need m >= 2; ";
        if (dim == 2 && !(m > 1.0)) os << "2D profiles need m > 1; ";
    } else {
        if (!(s > 0.0 && s < r)) os << "flat radius s must satisfy 0 < s < r; ";
    }
    const std::string msg = os.str();
    if (!msg.empty()) throw Error(ErrorCode::Domain, "invalid gap profile: " + msg);
}

namespace {

double planar_radius(const GapProfile& g, const double* xp) {
    return g.dim == 3 ? std::hypot(xp[0], xp[1]) : std::abs(xp[0]);
}

void check_region(const GapProfile& g, const double* xp) {
    if (planar_radius(g, xp) > g.r * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "point outside the gap region |x'| <= r = " << g.r;
        throw Error(ErrorCode::OutOfRegion, os.str());
    }
}

}  // namespace

double gap(const GapProfile& g, const double* xprime) {
    check_region(g, xprime);
    return gap_value(g, xprime[0], g.dim == 3 ? xprime[1] : 0.0);
}

SurfacePoint surface_sample(const GapProfile& g, Side side, const double* xp) {
    check_region(g, xp);
    const double x2 = g.dim == 3 ? xp[1] : 0.0;
    const Jet<1> h = gap_jet<1>(g, Jet<1>::variable(xp[0], 0), Jet<1>::variable(x2, 1));
    const double sgn = side == Side::Top ? 1.0 : -1.0;
    const double g1 = 0.5 * h.d(1, 0), g2 = 0.5 * h.d(0, 1);

    SurfacePoint sp;
    const double centroid = sgn * (0.5 * g.eps + g.R);
    if (g.dim == 3) {
        sp.jac = std::sqrt(1.0 + g1 * g1 + g2 * g2);
        sp.x = {xp[0], x2, sgn * 0.5 * h.val()};
        sp.n = {g1 / sp.jac, g2 / sp.jac, -sgn / sp.jac};
        sp.nu = {xp[0], x2, sp.x[2] - centroid};
    } else {
        sp.jac = std::sqrt(1.0 + g1 * g1);
        sp.x = {xp[0], sgn * 0.5 * h.val(), 0.0};
        sp.n = {g1 / sp.jac, -sgn / sp.jac, 0.0};
        sp.nu = {xp[0], sp.x[1] - centroid, 0.0};
    }
    return sp;
}

}  // namespace lubgap
