#include "crownlab/schober.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "crownlab/quadrature.hpp"

namespace crownlab
{

namespace
{

constexpr double pi = std::numbers::pi;

struct PanelSum
{
    cplx value;
    double err = 0.0;
    double l1 = 0.0;  // int |f|, sets the roundoff floor
    int evaluations = 0;
};

// 16-point Gauss-Legendre per panel; the 10-point rule on the same panel gives the error.
template <typename F>
PanelSum panels(F&& f, double lo, double hi, double width)
{
    static const auto g16 = gauss_legendre<double>(16);
    static const auto g10 = gauss_legendre<double>(10);
    PanelSum out;
    if (!(hi > lo)) return out;
    const int n = std::max(1, static_cast<int>(std::ceil((hi - lo) / width)));
    const double h = (hi - lo) / n;
    for (int p = 0; p < n; ++p)
    {
        const double c = lo + (p + 0.5) * h, d = h / 2;
        cplx s16 = 0.0, s10 = 0.0;
        for (Eigen::Index i = 0; i < g16.size(); ++i)
        {
            const cplx v = f(c + d * g16.nodes(i));
            s16 += g16.weights(i) * v;
            out.l1 += d * g16.weights(i) * std::abs(v);
        }
        for (Eigen::Index i = 0; i < g10.size(); ++i) s10 += g10.weights(i) * f(c + d * g10.nodes(i));
        out.value += d * s16;
        out.err += d * std::abs(s16 - s10);
        out.evaluations += 26;
    }
    return out;
}

double roundoff_floor(double l1)
{
    return 64 * std::numeric_limits<double>::epsilon() * l1;
}

}  // namespace

SchoberEval schober_F(cplx z, double target_err)
{
    const double x = z.real(), y = z.imag();
    if (!(y > -schober_y_max)) throw Error("InvalidArgument", "Im z below the direct-evaluation cutoff");
    auto f = [z](double t) -> cplx {
        if (t <= 0.0) return 1.0;
        return std::exp(cplx(-t * std::log(t), 0.0) + cplx(0.0, 1.0) * t * z);
    };
    // tail: |f| <= e^{-t (log t + y)} and log t + y >= kappa > 1 beyond T
    double T = std::max(2.0, 2.0 * std::exp(1.0 - y));
    auto tail = [y](double t) {
        const double k = std::log(t) + y;
        return std::exp(-t * k) / k;
    };
    while (tail(T) > target_err / 4) T *= 1.25;
    const double t0 = std::min(1.0, 2.0 / std::max(1.0, std::abs(x)));
    double width = std::min(0.5, 2.0 / std::max(1.0, std::abs(x)));
    SchoberEval out;
    out.z = z;
    out.cutoff = T;
    for (int attempt = 0; attempt < 4; ++attempt, width /= 2)
    {
        const auto head = tanh_sinh<double>(f, 0.0, t0, target_err / 4, 12);
        const PanelSum body = panels(f, t0, T, width);
        const double floor = roundoff_floor(body.l1 + std::abs(head.value));
        out.value = head.value + body.value;
        out.abs_err = head.error + body.err + tail(T);
        out.evaluations += body.evaluations;
        if (out.abs_err <= std::max(target_err, floor)) return out;
    }
    throw Error("QuadratureNotConverged", "schober_F did not reach the target error");
}

SchoberEval schober_F_rotated(cplx z, double target_err)
{
    const double x = z.real(), y = z.imag();
    const double kappa = std::abs(x) - pi / 2;
    if (!(kappa > 0.0)) throw Error("InvalidArgument", "rotated contour needs |Re z| > pi/2");
    const double sgn = x > 0 ? 1.0 : -1.0;
    auto f = [kappa, y, sgn](double s) -> cplx {
        if (s <= 0.0) return 1.0;
        return std::exp(cplx(-s * kappa, -sgn * s * (std::log(s) + y)));
    };
    const double S = std::max(std::log(4.0 / (kappa * target_err)) / kappa, 40.0 / kappa);
    const double s0 = std::min(S, 0.5 / std::max(1.0, std::abs(y)));
    const double freq = std::abs(std::log(S)) + std::abs(y) + 2.0;
    double width = std::min(2.0 / kappa, 2.0 / freq);
    SchoberEval out;
    out.z = z;
    out.cutoff = S;
    const cplx rot(0.0, sgn);
    for (int attempt = 0; attempt < 4; ++attempt, width /= 2)
    {
        const auto head = tanh_sinh<double>(f, 0.0, s0, target_err / 4, 12);
        const PanelSum body = panels(f, s0, S, width);
        out.value = rot * (head.value + body.value);
        out.abs_err = head.error + body.err + std::exp(-S * kappa) / kappa;
        out.evaluations += body.evaluations;
        if (out.abs_err <= std::max(target_err, roundoff_floor(body.l1 + 1.0))) return out;
    }
    throw Error("QuadratureNotConverged", "rotated schober_F did not reach the target error");
}

SchoberEval schober_eval(cplx z, double target_err)
{
    if (std::abs(z.real()) > pi / 2 + 1.0) return schober_F_rotated(z, target_err);
    return schober_F(z, target_err);
}

double schober_G(double y, double target_err)
{
    return schober_F(cplx(0.0, y), target_err).value.real();
}

BoundReport verify_strip_bound(int samples, double margin, std::uint64_t seed)
{
    if (!(margin > 0.0)) throw Error("InvalidArgument", "margin must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BoundReport rep;
    rep.name = "strip_bound";
    rep.worst_excess = -INFINITY;
    for (int k = 0; k < samples; ++k)
    {
        // |x| log-uniform on (pi/2 + margin, 60), y uniform on (-3, 6)
        const double ax = pi / 2 + margin * std::pow((60.0 - pi / 2) / margin, u(rng));
        const double x = u(rng) < 0.5 ? -ax : ax;
        const double y = -3.0 + 9.0 * u(rng);
        const SchoberEval e = schober_F(cplx(x, y));
        const double excess = std::abs(e.value) - 1.0 / (ax - pi / 2) - e.abs_err;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        rep.max_slack = std::max(rep.max_slack, e.abs_err);
        if (excess > 0.0) ++rep.violations;
        ++rep.samples;
    }
    return rep;
}

BoundReport verify_abs_bound(int samples, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    BoundReport rep;
    rep.name = "abs_bound";
    rep.worst_excess = -INFINITY;
    for (int k = 0; k < samples; ++k)
    {
        const double x = -30.0 + 60.0 * u(rng);
        const double y = -3.0 + 9.0 * u(rng);
        const SchoberEval e = schober_F(cplx(x, y));
        const SchoberEval g = schober_F(cplx(0.0, y));
        const double slack = e.abs_err + g.abs_err;
        const double excess = std::abs(e.value) - g.value.real() - slack;
        rep.worst_excess = std::max(rep.worst_excess, excess);
        rep.max_slack = std::max(rep.max_slack, slack);
        if (excess > 0.0) ++rep.violations;
        ++rep.samples;
    }
    return rep;
}

BoundReport verify_G_decreasing(const std::vector<double>& y_grid)
{
    BoundReport rep;
    rep.name = "G_decreasing";
    rep.worst_excess = -INFINITY;
    SchoberEval prev;
    for (size_t k = 0; k < y_grid.size(); ++k)
    {
        const SchoberEval g = schober_F(cplx(0.0, y_grid[k]));
        if (k > 0)
        {
            if (!(y_grid[k] > y_grid[k - 1])) throw Error("InvalidArgument", "y grid must increase");
            const double slack = g.abs_err + prev.abs_err;
            // strict decrease: G(y_k) < G(y_{k-1}) by more than the error budget
            const double excess = g.value.real() - prev.value.real() + slack;
            rep.worst_excess = std::max(rep.worst_excess, excess);
            rep.max_slack = std::max(rep.max_slack, slack);
            if (excess >= 0.0) ++rep.violations;
            ++rep.samples;
        }
        prev = g;
    }
    return rep;
}

double hardy_norm_closed_form(cplx b, cplx a, bool abs_d)
{
    const double c = a.real(), d = abs_d ? std::abs(a.imag()) : a.imag();
    if (!(c > 0.0)) throw Error("InvalidArgument", "Re a must be positive");
    const double a2 = std::norm(a);
    const double G = schober_G((b.imag() - pi * d) / c);
    return 4.0 / pi * a2 / c + 2.0 * pi * a2 / c * G * G;
}

HardyNormReport hardy_norm_bound(cplx b, cplx a, const std::vector<double>& y_grid)
{
    HardyNormReport rep;
    rep.b = b;
    rep.a = a;
    rep.bound = hardy_norm_closed_form(b, a);
    rep.bound_abs_d = hardy_norm_closed_form(b, a, true);
    const double c = a.real(), d = a.imag();
    const double eta = pi / 2 * std::norm(a) / c;
    rep.empirical_sup = -INFINITY;
    for (double y : y_grid)
    {
        const double rho = y + b.imag();
        const double x0 = -b.real() - rho * d / c;
        auto integrand = [&](double u) {
            const cplx w = (cplx(x0 + eta * u, y) + b) / a;
            const SchoberEval e = schober_eval(w, 1e-13);
            return eta * std::norm(e.value);
        };
        const auto q = sinh_sinh<double>(integrand, 1e-9 * std::min(rep.bound, rep.bound_abs_d), 10);
        if (!q.converged) throw Error("QuadratureNotConverged", "Hardy-norm line integral");
        if (q.value > rep.empirical_sup)
        {
            rep.empirical_sup = q.value;
            rep.argsup_y = y;
        }
        rep.error = std::max(rep.error, q.error + 1e-8 * q.value);
    }
    rep.finite = std::isfinite(rep.empirical_sup) && std::isfinite(rep.bound);
    rep.pass = rep.finite && rep.empirical_sup <= rep.bound + rep.error;
    rep.pass_abs_d = rep.finite && rep.empirical_sup <= rep.bound_abs_d + rep.error;
    return rep;
}

double log_H(double x)
{
    const double ps = std::exp(x - 1.0);  // peak of -p log p + p x, value ps there
    auto g = [x, ps](double p) -> cplx {
        if (p <= 0.0) return std::exp(-ps);
        return std::exp(-p * std::log(p) + p * x - ps);
    };
    double P = ps + 12.0 * std::sqrt(ps) + 4.0;
    while (-P * std::log(P) + P * x - ps > -80.0) P *= 1.25;
    const double t0 = std::min(1.0, ps);
    const auto head = tanh_sinh<double>(g, 0.0, t0, 1e-15, 12);
    const PanelSum body = panels(g, t0, P, std::min(1.0, std::max(0.05, std::sqrt(ps) / 2)));
    const double v = head.value.real() + body.value.real();
    if (!(v > 0.0) || !std::isfinite(v)) throw Error("QuadratureNotConverged", "log_H");
    return ps + std::log(v);
}

double nontempered_H(double x)
{
    if (std::exp(x - 1.0) > 700.0) throw Error("OverflowGuard", "H(x) peak exponent exceeds 700; use log_H");
    return std::exp(log_H(x));
}

NontemperedReport nontempered_demo(const std::vector<double>& p_list, const std::vector<double>& x_grid)
{
    for (size_t k = 1; k < x_grid.size(); ++k)
        if (!(x_grid[k] > x_grid[k - 1])) throw Error("InvalidArgument", "x grid must increase");
    NontemperedReport rep;
    rep.p_list = p_list;
    rep.x_grid = x_grid;
    std::vector<double> lh(x_grid.size());
    for (size_t k = 0; k < x_grid.size(); ++k) lh[k] = log_H(x_grid[k]);
    for (double p : p_list)
    {
        std::vector<double> r(x_grid.size());
        for (size_t k = 0; k < x_grid.size(); ++k) r[k] = lh[k] - p * x_grid[k];
        size_t start = r.size() - 1;
        while (start > 0 && r[start] > r[start - 1]) --start;
        const bool inc = r.size() >= 3 && start + 2 < r.size();
        rep.onset.push_back(inc ? x_grid[start] : std::numeric_limits<double>::quiet_NaN());
        rep.eventually_increasing.push_back(inc);
        rep.log_ratio.push_back(std::move(r));
    }
    // least squares slope of log log H on the upper half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t k = x_grid.size() / 2; k < x_grid.size(); ++k)
    {
        if (!(lh[k] > 0.0)) continue;
        const double X = x_grid[k], Y = std::log(lh[k]);
        sx += X;
        sy += Y;
        sxx += X * X;
        sxy += X * Y;
        ++n;
    }
    if (n >= 2) rep.double_exp_rate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return rep;
}

double holomorphy_residual(const std::vector<cplx>& centers, double r, int points)
{
    double worst = 0.0;
    for (cplx z0 : centers)
    {
        // trapezoid on the circle: (1/2 pi i) int F(z)/(z - z0) dz = mean of F on the circle
        cplx mean = 0.0;
        for (int k = 0; k < points; ++k)
        {
            const cplx z = z0 + r * std::exp(cplx(0.0, 2 * pi * k / points));
            mean += schober_F(z).value;
        }
        mean /= static_cast<double>(points);
        worst = std::max(worst, std::abs(mean - schober_F(z0).value));
    }
    return worst;
}

double imaginary_axis_residual(const std::vector<double>& y_grid)
{
    double worst = 0.0;
    for (double y : y_grid) worst = std::max(worst, std::abs(schober_F(cplx(0.0, y)).value.imag()));
    return worst;
}

}  // namespace crownlab
