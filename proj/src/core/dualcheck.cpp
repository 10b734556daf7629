#include "dualcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lubgap {

namespace {

// 6-point Gauss-Legendre rule on [-1, 1]; exact for the x3 polynomials
// (degree <= 8) met in the quadratic forms below.
constexpr std::array<double, 6> kGx = {-0.932469514203152027812301554493995, -0.661209386466264513661399595019906,
                                       -0.238619186083196908630501721680712, 0.238619186083196908630501721680712,
                                       0.661209386466264513661399595019906, 0.932469514203152027812301554493995};
constexpr std::array<double, 6> kGw = {0.171324492379170345040296142172732, 0.360761573048138607569833513837716,
                                       0.467913934572691047389636803907345, 0.467913934572691047389636803907345,
                                       0.360761573048138607569833513837716, 0.171324492379170345040296142172732};

// Integrands of q1, q2 (split into the x3^0 and x3^2 parts) and the
// planar Laplacians entering q3, for the squeeze-type sub-flows.
struct QTerms {
    double a1 = 0, b1 = 0, a2 = 0, b2 = 0;
    double lapA3 = 0, lapB3 = 0;
    double size_a1 = 0, size_b1 = 0;  // magnitudes of the cancelling pieces
};

QTerms qterms(const FieldModel& model, int k, double x1, double x2) {
    QTerms q;
    SqueezePart<3> s;
    double amp = 0.0;
    if (!model.squeeze_part<3>(k, x1, x2, s, amp)) return q;
    q.a1 = s.A1.d(0, 2) - s.A2.d(1, 1);
    q.b1 = 2.0 * s.B1.d(2, 0) + s.B1.d(0, 2) + s.B2.d(1, 1);
    q.size_a1 = std::abs(s.A1.d(0, 2)) + std::abs(s.A2.d(1, 1));
    q.size_b1 = 2.0 * std::abs(s.B1.d(2, 0)) + std::abs(s.B1.d(0, 2)) + std::abs(s.B2.d(1, 1));
    q.a2 = s.A2.d(2, 0) - s.A1.d(1, 1);
    q.b2 = 2.0 * s.B2.d(0, 2) + s.B2.d(2, 0) + s.B1.d(1, 1);
    q.lapA3 = s.A1.d(3, 0) + s.A1.d(1, 2) + s.A2.d(2, 1) + s.A2.d(0, 3);
    q.lapB3 = s.B1.d(3, 0) + s.B1.d(1, 2) + s.B2.d(2, 1) + s.B2.d(0, 3);
    return q;
}

bool is_squeeze(int k) { return k == 3 || k == 6; }

std::array<bool, 7> active_subflows(const ProblemParams& p) {
    const Vec3& U = p.U;
    const Vec3& w = p.omega;
    const double R = p.profile.R;
    std::array<bool, 7> a{};
    a[0] = U[0] || U[1] || U[2] || w[0] || w[1] || w[2];
    a[1] = (U[0] - w[1] * R) != 0.0;
    a[2] = (U[1] + w[0] * R) != 0.0;
    a[3] = U[2] != 0.0;
    a[4] = w[2] != 0.0;
    a[5] = w[0] != 0.0 || w[1] != 0.0;
    a[6] = a[5];
    return a;
}

// Integral of the q1 or q2 integrand pair from 0 to `to` along one axis.
std::array<double, 2> q_line(const FieldModel& model, int k, double x1, double x2, int axis, double to) {
    if (to == 0.0) return {0.0, 0.0};
    auto f = [&](double t) {
        const QTerms q = axis == 0 ? qterms(model, k, t, x2) : qterms(model, k, x1, t);
        return axis == 0 ? std::array<double, 2>{q.a1, q.b1} : std::array<double, 2>{q.a2, q.b2};
    };
    // a1 and a2 are differences of nearly equal terms; near the axes the
    // exact integrand vanishes and only a floor relative to the pieces can
    // be met.
    double size = 0.0;
    for (double t : {0.0, to}) {
        const QTerms q = axis == 0 ? qterms(model, k, t, x2) : qterms(model, k, x1, t);
        size = std::max({size, q.size_a1, q.size_b1});
    }
    QuadSpec qs;
    qs.rel_tol = 1e-11;
    qs.abs_tol = 1e-13 * std::abs(to) * size;
    const double lo = std::min(0.0, to), hi = std::max(0.0, to);
    qs.split_points = graded_splits(lo, hi, 0.0, model.profile().layer());
    const auto r = integrate_1d_vec<2>(f, lo, hi, qs);
    if (!r.converged) throw ToleranceError("q integral did not converge", r.value[0], r.error[0]);
    const double sgn = to > 0.0 ? 1.0 : -1.0;
    return {sgn * r.value[0], sgn * r.value[1]};
}

Mat3 sym(const Mat3& g) {
    Mat3 d{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) d[i][j] = 0.5 * (g[i][j] + g[j][i]);
    return d;
}

// Test stress without the pressure, given the q values at the point.
Mat3 tensor_no_pressure(const FieldModel& model, int k, const double* x, const FieldEval& fe,
                        const std::array<double, 3>& q) {
    const double mu = model.params().mu;
    Mat3 S{};
    if (k == 1 || k == 2) {
        int count = 0;
        const auto parts = model.shear_parts<2>(k, x[0], x[1], count);
        const ShearPart<2>& sp = parts[0];
        const double H = sp.H.val();
        const double B = sp.dir == 0 ? sp.H.d(1, 0) : sp.H.d(0, 1);
        S[sp.dir][2] = S[2][sp.dir] = mu * sp.c * H;
        S[2][2] = -mu * sp.c * B * x[2];
    } else if (is_squeeze(k)) {
        const Mat3 D = sym(fe.grad);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) S[i][j] = 2.0 * mu * D[i][j];
        for (int i = 0; i < 3; ++i) S[i][i] += q[i];
    }
    return S;
}

double q3_value(const QTerms& t, double mu, double z) {
    return -mu * (0.5 * t.lapA3 * z * z + 0.25 * t.lapB3 * z * z * z * z);
}

// D(u) - (S - tr S / 3) / (2 mu)
Mat3 mismatch(const Mat3& grad, const Mat3& S, double mu) {
    Mat3 M = sym(grad);
    const double tr = (S[0][0] + S[1][1] + S[2][2]) / 3.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] -= (S[i][j] - (i == j ? tr : 0.0)) / (2.0 * mu);
    return M;
}

double contract(const Mat3& a, const Mat3& b) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += a[i][j] * b[i][j];
    return s;
}

constexpr int kPairs = 28;
constexpr int pair_index(int i, int j) { return i * 7 - i * (i - 1) / 2 + (j - i); }

}  // namespace

Mat3 dual_tensor(const FieldModel& model, int k, const double* x) {
    const GapProfile& g = model.profile();
    if (g.dim != 3) throw Error(ErrorCode::Domain, "dual_tensor is defined for 3D only");
    if (k < 0 || k > 6) throw Error(ErrorCode::Domain, "sub-flow index out of range");
    Mat3 S{};
    const double rho = std::hypot(x[0], x[1]);
    if (!(rho < 0.25 * g.r)) return S;
    const double h = gap_value(g, x[0], x[1]);
    if (!(std::abs(x[2]) < 0.5 * h)) return S;
    if (k == 0 || k == 4 || k == 5) return S;

    const double mu = model.params().mu;
    const FieldEval fe = model.eval(k, x);
    std::array<double, 3> q{};
    if (is_squeeze(k)) {
        const auto l1 = q_line(model, k, x[0], x[1], 0, x[0]);
        const auto l2 = q_line(model, k, x[0], x[1], 1, x[1]);
        const double z2 = x[2] * x[2];
        q[0] = mu * (l1[0] + 3.0 * z2 * l1[1]);
        q[1] = mu * (l2[0] + 3.0 * z2 * l2[1]);
        q[2] = q3_value(qterms(model, k, x[0], x[1]), mu, x[2]);
    }
    S = tensor_no_pressure(model, k, x, fe, q);
    if (is_squeeze(k))
        for (int i = 0; i < 3; ++i) S[i][i] -= fe.p;
    return S;
}

EllMatrix ell_matrix(const FieldModel& model, const QuadSpec& spec) {
    const GapProfile& g = model.profile();
    if (g.dim != 3) throw Error(ErrorCode::Domain, "ell is defined for 3D only");
    const double mu = model.params().mu;
    const std::array<bool, 7> act = active_subflows(model.params());
    EllMatrix out{};
    bool any = false;
    for (bool a : act) any = any || a;
    if (!any) return out;

    const double rq = 0.25 * g.r;
    const double table_tol = std::max(1e-12, 0.01 * spec.rel_tol);
    using Acc = std::array<double, kPairs>;

    auto line = [&](double x2) -> Acc {
        const double a = std::sqrt(std::max(0.0, rq * rq - x2 * x2));
        if (!(a > 0.0)) return Acc{};
        // q1 tables along this line: one pair (x3^0 part, x3^2 part) per squeeze sub-flow.
        std::array<CumulativeIntegral, 4> tab;
        std::array<double, 4> at0{};
        const std::vector<double> sp = graded_splits(-a, a, 0.0, g.layer());
        for (int s = 0; s < 2; ++s) {
            const int k = s == 0 ? 3 : 6;
            if (!act[k]) continue;
            // Absolute floors from sampled piece magnitudes: the x3^0 integrand
            // of sub-flow 3 cancels to roundoff.
            double sa = 0.0, sb = 0.0;
            for (int n = 0; n <= 32; ++n) {
                const QTerms t = qterms(model, k, -a + 2.0 * a * n / 32.0, x2);
                sa = std::max(sa, t.size_a1);
                sb = std::max(sb, t.size_b1);
            }
            tab[2 * s] = CumulativeIntegral([&](double t) { return qterms(model, k, t, x2).a1; }, -a, a,
                                            table_tol, sp, 1e-13 * sa * 2.0 * a);
            tab[2 * s + 1] = CumulativeIntegral([&](double t) { return qterms(model, k, t, x2).b1; }, -a, a,
                                                table_tol, sp, 1e-13 * sb * 2.0 * a);
            at0[2 * s] = tab[2 * s](0.0);
            at0[2 * s + 1] = tab[2 * s + 1](0.0);
        }
        auto point = [&](double x1) -> Acc {
            Acc acc{};
            const double h = gap_value(g, x1, x2);
            std::array<double, 4> q1{}, q2{};  // (a, b) for k=3 then k=6
            std::array<QTerms, 2> qt{};
            for (int s = 0; s < 2; ++s) {
                const int k = s == 0 ? 3 : 6;
                if (!act[k]) continue;
                q1[2 * s] = tab[2 * s](x1) - at0[2 * s];
                q1[2 * s + 1] = tab[2 * s + 1](x1) - at0[2 * s + 1];
                const auto l2 = q_line(model, k, x1, x2, 1, x2);
                q2[2 * s] = l2[0];
                q2[2 * s + 1] = l2[1];
                qt[s] = qterms(model, k, x1, x2);
            }
            for (int n = 0; n < 6; ++n) {
                const double z = 0.5 * h * kGx[n];
                const double x[3] = {x1, x2, z};
                std::array<Mat3, 7> M{};
                for (int k = 0; k < 7; ++k) {
                    if (!act[k]) continue;
                    const FieldEval fe = model.eval_local(k, x);
                    std::array<double, 3> q{};
                    if (is_squeeze(k)) {
                        const int s = k == 3 ? 0 : 1;
                        q[0] = mu * (q1[2 * s] + 3.0 * z * z * q1[2 * s + 1]);
                        q[1] = mu * (q2[2 * s] + 3.0 * z * z * q2[2 * s + 1]);
                        q[2] = q3_value(qt[s], mu, z);
                    }
                    M[k] = mismatch(fe.grad, tensor_no_pressure(model, k, x, fe, q), mu);
                }
                const double w = mu * kGw[n] * 0.5 * h;
                for (int i = 0; i < 7; ++i) {
                    if (!act[i]) continue;
                    for (int j = i; j < 7; ++j)
                        if (act[j]) acc[pair_index(i, j)] += w * contract(M[i], M[j]);
                }
            }
            return acc;
        };
        QuadSpec inner = spec;
        inner.split_points = sp;
        const auto r = integrate_1d_vec<kPairs>(point, -a, a, inner);
        if (!r.converged) throw ToleranceError("ell inner quadrature did not converge", r.value[0], r.error[0]);
        return r.value;
    };
    QuadSpec outer = spec;
    outer.split_points = graded_splits(-rq, rq, 0.0, g.layer());
    const auto r = integrate_1d_vec<kPairs>(line, -rq, rq, outer);
    if (!r.converged) throw ToleranceError("ell outer quadrature did not converge", r.value[0], r.error[0]);
    for (int i = 0; i < 7; ++i)
        for (int j = i; j < 7; ++j) out[i][j] = out[j][i] = r.value[pair_index(i, j)];
    return out;
}

double ell(int i, int j, const FieldModel& model, const QuadSpec& spec) {
    if (i < 0 || i > 6 || j < 0 || j > 6) throw Error(ErrorCode::Domain, "sub-flow index out of range");
    const std::array<bool, 7> act = active_subflows(model.params());
    if (!act[i] || !act[j]) return 0.0;
    return ell_matrix(model, spec)[i][j];
}

double energy(const FieldModel& model, const QuadSpec& spec) {
    const GapProfile& g = model.profile();
    if (g.dim != 3) throw Error(ErrorCode::Domain, "energy is defined for 3D only");
    const ProblemParams& prm = model.params();
    const double mu = prm.mu;
    const std::array<bool, 7> act = active_subflows(prm);
    // Only sub-flow 0 has a nonzero divergence, and only through omega_1, omega_2.
    const bool need_p = prm.omega[0] != 0.0 || prm.omega[1] != 0.0;

    constexpr int kAng = 64;
    auto ring = [&](double rho) {
        double acc = 0.0;
        for (int a = 0; a < kAng; ++a) {
            const double phi = 2.0 * std::numbers::pi * (a + 0.5) / kAng;
            const double x1 = rho * std::cos(phi), x2 = rho * std::sin(phi);
            const double h = gap_value(g, x1, x2);
            double pn = 0.0;
            if (need_p) {
                const double xp[2] = {x1, x2};
                for (int k = 0; k < 7; ++k)
                    if (act[k]) pn += model.nested_pressure(k, xp);
            }
            for (int n = 0; n < 6; ++n) {
                const double x[3] = {x1, x2, 0.5 * h * kGx[n]};
                Mat3 grad{};
                double p = pn;
                for (int k = 0; k < 7; ++k) {
                    if (!act[k]) continue;
                    const FieldEval fe = model.eval_local(k, x);
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j) grad[i][j] += fe.grad[i][j];
                    p += fe.p;
                }
                const Mat3 D = sym(grad);
                const double trD = D[0][0] + D[1][1] + D[2][2];
                // (1/2) sigma : D = mu D:D - (p/2) tr D
                acc += kGw[n] * 0.5 * h * (mu * contract(D, D) - (need_p ? 0.5 * p * trD : 0.0));
            }
        }
        return std::array<double, 1>{acc * rho * 2.0 * std::numbers::pi / kAng};
    };
    QuadSpec qs = spec;
    qs.split_points = graded_splits(0.0, g.r, 0.0, g.layer());
    if (g.kind == ProfileKind::FlatCapped) {
        qs.split_points.push_back(g.s);
        for (double c : graded_splits(0.0, g.r, g.s, g.layer())) qs.split_points.push_back(c);
    }
    const auto r = integrate_1d_vec<1>(ring, 0.0, g.r, qs);
    if (!r.converged) throw ToleranceError("energy quadrature did not converge", r.value[0], r.error[0]);
    return r.value[0];
}

EllReport err_sweep(const ProblemParams& base, std::vector<double> eps_list, const QuadSpec& spec) {
    if (eps_list.size() < 3) throw Error(ErrorCode::Domain, "err_sweep: need at least 3 epsilons");
    std::sort(eps_list.begin(), eps_list.end(), std::greater<>());
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1])) throw Error(ErrorCode::Domain, "err_sweep: repeated epsilon");
    if (eps_list.front() < 10.0 * eps_list.back() * (1.0 - 1e-12))
        throw Error(ErrorCode::Domain, "err_sweep: epsilons must span a decade");

    EllReport rep;
    rep.eps = eps_list;
    std::vector<EllMatrix> mats;
    for (double e : eps_list) {
        ProblemParams p = base;
        p.profile.eps = e;
        mats.push_back(ell_matrix(FieldModel(p), spec));
    }
    const std::array<int, 4> idx = {1, 2, 3, 6};
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a; b < idx.size(); ++b) {
            EllPair pr;
            pr.i = idx[a];
            pr.j = idx[b];
            std::vector<std::pair<double, double>> samples;
            bool usable = true;
            for (std::size_t n = 0; n < eps_list.size(); ++n) {
                const double v = mats[n][pr.i][pr.j];
                pr.values.push_back(v);
                samples.push_back({eps_list[n], v});
                if (v == 0.0 || (v > 0.0) != (mats[0][pr.i][pr.j] > 0.0)) usable = false;
            }
            if (usable) {
                pr.slope = fit_exponent(samples).slope;
                pr.slope_defined = true;
                pr.bounded = pr.slope >= -0.2;
            }
            rep.pairs.push_back(pr);
        }
    }
    for (const EllMatrix& m : mats) {
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j) {
                const double den = m[i][i] * m[j][j];
                if (m[i][j] == 0.0) continue;
                const double ratio = den > 0.0 ? m[i][j] * m[i][j] / den : INFINITY;
                rep.worst_cs_ratio = std::max(rep.worst_cs_ratio, ratio);
            }
    }
    rep.cauchy_schwarz = rep.worst_cs_ratio <= 1.0 + 1e-9;
    return rep;
}

}  // namespace lubgap
