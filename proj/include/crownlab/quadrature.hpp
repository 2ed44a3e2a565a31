#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <type_traits>
#include <vector>

#include <Eigen/Dense>

#include "crownlab/error.hpp"

namespace crownlab
{

/// Nodes and weights of a fixed rule on some interval.
template <typename Real = double>
struct QuadratureRule
{
    Eigen::Matrix<Real, Eigen::Dynamic, 1> nodes;
    Eigen::Matrix<Real, Eigen::Dynamic, 1> weights;

    Eigen::Index size() const { return nodes.size(); }

    template <typename F>
    auto integrate(F&& f) const
    {
        using T = decltype(f(Real(0)));
        T s = T(0);
        for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights(i) * f(nodes(i));
        return s;
    }
};

/// n-point Gauss-Legendre on [-1, 1] (Newton on the three-term recurrence).
template <typename Real = double>
QuadratureRule<Real> gauss_legendre(int n)
{
    if (n < 1) throw Error("InvalidArgument", "gauss_legendre needs n >= 1");
    QuadratureRule<Real> q;
    q.nodes.resize(n);
    q.weights.resize(n);
    const Real pi = Real(3.14159265358979323846264338327950288L);
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
        Real dp = 0;
        for (int it = 0; it < 100; ++it)
        {
            Real p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1;
            dp = n * (x * p1 - p0) / (x * x - 1);
            Real dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) <= 4 * std::numeric_limits<Real>::epsilon()) break;
        }
        // final derivative at the converged node
        Real p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k)
        {
            Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1;
        dp = n * (x * p1 - p0) / (x * x - 1);
        const Real w = 2 / ((1 - x * x) * dp * dp);
        q.nodes(i) = -x;
        q.nodes(n - 1 - i) = x;
        q.weights(i) = w;
        q.weights(n - 1 - i) = w;
    }
    if (n % 2 == 1) q.nodes(n / 2) = 0;
    return q;
}

/// Gauss-Legendre with `m` nodes on each of the panels between consecutive breakpoints.
template <typename Real = double>
QuadratureRule<Real> composite_gauss_legendre(const std::vector<Real>& breaks, int m)
{
    const auto base = gauss_legendre<Real>(m);
    const Eigen::Index panels = static_cast<Eigen::Index>(breaks.size()) - 1;
    QuadratureRule<Real> q;
    q.nodes.resize(panels * m);
    q.weights.resize(panels * m);
    for (Eigen::Index p = 0; p < panels; ++p)
    {
        const Real c = (breaks[p] + breaks[p + 1]) / 2, d = (breaks[p + 1] - breaks[p]) / 2;
        q.nodes.segment(p * m, m) = (c + d * base.nodes.array()).matrix();
        q.weights.segment(p * m, m) = d * base.weights;
    }
    return q;
}

/// Uniform panels of width at most h on [lo, hi].
template <typename Real = double>
QuadratureRule<Real> panel_gauss_legendre(Real lo, Real hi, Real h, int m)
{
    const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / h)));
    std::vector<Real> br(panels + 1);
    for (int i = 0; i <= panels; ++i) br[i] = lo + (hi - lo) * Real(i) / Real(panels);
    return composite_gauss_legendre<Real>(br, m);
}

template <typename T>
struct QuadResult
{
    T value{};
    double error = 0.0;
    int levels = 0;
    bool converged = false;
};

enum class DeKind { TanhSinh, ExpSinh, SinhSinh };

namespace detail
{

// Trapezoid in t over a double-exponential map, halving h until consecutive levels agree.
template <typename Real, typename F, typename Map>
auto de_integrate(F&& f, Map&& map, Real tol, int max_levels, Real t_max)
{
    using T = decltype(f(Real(0)));
    auto level_sum = [&](Real h, bool odd_only) {
        T s = T(0);
        const long n = static_cast<long>(std::ceil(t_max / h));
        for (long k = -n; k <= n; ++k)
        {
            if (odd_only && (k % 2 == 0)) continue;
            Real x, w;
            if (!map(k * h, x, w)) continue;
            if (!(w > 0) || !std::isfinite(w)) continue;
            const T fx = f(x);
            s += w * fx;
        }
        return s;
    };
    QuadResult<T> r;
    Real h = 1;
    T sum = level_sum(h, false);
    T prev = sum * h;
    for (int lev = 1; lev <= max_levels; ++lev)
    {
        h /= 2;
        sum += level_sum(h, true);
        const T cur = sum * h;
        r.error = static_cast<double>(std::abs(cur - prev));
        r.value = cur;
        r.levels = lev;
        if (lev >= 3 && r.error <= tol)
        {
            r.converged = true;
            return r;
        }
        prev = cur;
    }
    return r;
}

}  // namespace detail

/// Tanh-sinh on the finite interval [a, b]; endpoint singularities allowed.
template <typename Real = double, typename F>
auto tanh_sinh(F&& f, Real a, Real b, Real tol = Real(1e-10), int max_levels = 10)
{
    const Real d = (b - a) / 2, half_pi = Real(1.5707963267948966192313216916397514L);
    auto map = [&](Real t, Real& x, Real& w) {
        const Real u = half_pi * std::sinh(t);
        const Real e = std::exp(-2 * std::abs(u));
        const Real delta = 2 * d * e / (1 + e);  // distance to the nearer endpoint
        if (!(delta > 0)) return false;
        x = u >= 0 ? b - delta : a + delta;
        if (x <= a || x >= b) return false;
        const Real ch = std::cosh(u);
        w = d * half_pi * std::cosh(t) / (ch * ch);
        return true;
    };
    return detail::de_integrate<Real>(f, map, tol, max_levels, Real(4.5));
}

/// Exp-sinh on [a, infinity).
template <typename Real = double, typename F>
auto exp_sinh(F&& f, Real a, Real tol = Real(1e-10), int max_levels = 10)
{
    const Real half_pi = Real(1.5707963267948966192313216916397514L);
    auto map = [&](Real t, Real& x, Real& w) {
        const Real u = half_pi * std::sinh(t);
        if (u > 700 || u < -700) return false;
        const Real e = std::exp(u);
        x = a + e;
        if (x == a) return false;
        w = half_pi * std::cosh(t) * e;
        return true;
    };
    return detail::de_integrate<Real>(f, map, tol, max_levels, Real(4.5));
}

/// Sinh-sinh on the whole real line.
template <typename Real = double, typename F>
auto sinh_sinh(F&& f, Real tol = Real(1e-10), int max_levels = 10)
{
    const Real half_pi = Real(1.5707963267948966192313216916397514L);
    auto map = [&](Real t, Real& x, Real& w) {
        const Real u = half_pi * std::sinh(t);
        if (std::abs(u) > 700) return false;
        x = std::sinh(u);
        w = half_pi * std::cosh(t) * std::cosh(u);
        return true;
    };
    return detail::de_integrate<Real>(f, map, tol, max_levels, Real(4.5));
}

}  // namespace crownlab
