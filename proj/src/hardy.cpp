#include "crownlab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "crownlab/lie.hpp"

namespace crownlab
{

namespace
{

constexpr cplx I1{0.0, 1.0};
constexpr double pi = std::numbers::pi;

double binom(int n, int k)
{
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

// <K^{(m)}_a, K^{(n)}_b> from the Fourier picture K^{(n)}_w <-> (-ip)^n/n! e^{-i conj(w) p}.
cplx kernel_pair(cplx a, int m, cplx b, int n)
{
    const cplx d = a - std::conj(b);
    if (!(d.imag() > 0.0)) throw Error("InvalidPoint", "pairing needs an interior point");
    return std::pow(I1, m) * std::pow(-I1, n) * binom(m + n, m) / std::pow(-I1 * d, m + n + 1);
}

}  // namespace

KernelSpan kernel(cplx w, cplx coeff, int order)
{
    return KernelSpan{{KernelTerm{coeff, w, order}}};
}

KernelSpan operator+(const KernelSpan& u, const KernelSpan& v)
{
    KernelSpan r = u;
    r.terms.insert(r.terms.end(), v.terms.begin(), v.terms.end());
    return r;
}

KernelSpan operator*(cplx c, const KernelSpan& v)
{
    KernelSpan r = v;
    for (auto& t : r.terms) t.coeff *= c;
    return r;
}

bool is_interior(const KernelSpan& v)
{
    for (const auto& t : v.terms)
        if (!(t.point.imag() > 0.0)) return false;
    return true;
}

cplx evaluate(const KernelSpan& v, cplx z)
{
    cplx s = 0.0;
    for (const auto& t : v.terms) s += t.coeff * I1 / std::pow(z - std::conj(t.point), t.order + 1);
    return s;
}

cplx inner(const KernelSpan& u, const KernelSpan& v)
{
    cplx s = 0.0;
    for (const auto& p : u.terms)
        for (const auto& q : v.terms)
            s += std::conj(p.coeff) * q.coeff * kernel_pair(p.point, p.order, q.point, q.order);
    return s;
}

Eigen::MatrixXcd gram(const std::vector<KernelSpan>& vs)
{
    const Eigen::Index n = static_cast<Eigen::Index>(vs.size());
    Eigen::MatrixXcd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i; j < n; ++j)
        {
            G(i, j) = inner(vs[i], vs[j]);
            G(j, i) = std::conj(G(i, j));
        }
    return G;
}

KernelSpan act_affine(double b, double a, const KernelSpan& v)
{
    if (!(a > 0.0)) throw Error("InvalidGroupElement", "a must be positive");
    KernelSpan r = v;
    for (auto& t : r.terms)
    {
        t.coeff *= std::pow(a, t.order + 0.5);
        t.point = a * t.point - b;
    }
    return r;
}

KernelSpan act_sl2(const CMat2& g, const KernelSpan& v)
{
    if (g.imag().cwiseAbs().maxCoeff() != 0.0) throw Error("InvalidGroupElement", "g must be real");
    if (std::abs(g.determinant() - 1.0) > 1e-12) throw Error("InvalidGroupElement", "det g != 1");
    KernelSpan r = v;
    for (auto& t : r.terms)
    {
        if (t.order != 0) throw Error("Unsupported", "act_sl2 acts on order-0 kernels");
        const cplx den = g(1, 0) * t.point + g(1, 1);
        if (std::abs(den) < 1e-14) throw Error("PoleHit", "c w + d vanishes");
        t.coeff *= std::conj(1.0 / den);
        t.point = mobius(g, t.point);
    }
    return r;
}

KernelSpan modular_flow(cplx tau, const KernelSpan& v, FlowConvention conv, bool allow_boundary)
{
    KernelSpan r = v;
    for (auto& t : r.terms)
    {
        const double scale = std::abs(t.point);
        t.coeff *= std::exp((t.order + 0.5) * tau);
        t.point *= conv == FlowConvention::Holomorphic ? std::exp(std::conj(tau)) : std::exp(tau);
        if (allow_boundary && std::abs(t.point.imag()) <= 1e-12 * scale) t.point = t.point.real();
        const bool ok = allow_boundary ? t.point.imag() >= 0.0 : t.point.imag() > 0.0;
        if (!ok) throw Error("LeftDomain", "continued kernel point left the upper half-plane");
    }
    return r;
}

KernelSpan conjugation_J(const KernelSpan& v)
{
    KernelSpan r = v;
    for (auto& t : r.terms)
    {
        t.coeff = (t.order % 2 ? -1.0 : 1.0) * std::conj(t.coeff);
        t.point = -std::conj(t.point);
    }
    return r;
}

const std::vector<cplx>& evaluation_grid()
{
    static const std::vector<cplx> grid = [] {
        std::vector<cplx> g;
        for (double y : {0.5, 1.0, 2.0, 4.0})
            for (int k = 0; k < 8; ++k) g.emplace_back(-3.5 + k, y);
        return g;
    }();
    return grid;
}

double grid_distance(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g)
{
    double d = 0.0;
    for (cplx z : evaluation_grid()) d = std::max(d, std::abs(f(z) - g(z)));
    return d;
}

bool is_J_fixed(const KernelSpan& v, double tol)
{
    const KernelSpan Jv = conjugation_J(v);
    return grid_distance([&](cplx z) { return evaluate(v, z); },
                         [&](cplx z) { return evaluate(Jv, z); }) <= tol;
}

KernelSpan dU(cplx xc, cplx hc, const KernelSpan& v)
{
    KernelSpan r;
    for (const auto& t : v.terms)
    {
        const int n = t.order;
        // d/ds K^{(n)}_{w - s} = -(n+1) K^{(n+1)}_w
        if (xc != 0.0) r.terms.push_back({-xc * t.coeff * double(n + 1), t.point, n + 1});
        // d/dt e^{(n+1/2)t} K^{(n)}_{e^t w} = (n+1/2) K^{(n)}_w + (n+1) conj(w) K^{(n+1)}_w
        if (hc != 0.0)
        {
            r.terms.push_back({hc * t.coeff * (n + 0.5), t.point, n});
            r.terms.push_back({hc * t.coeff * double(n + 1) * std::conj(t.point), t.point, n + 1});
        }
    }
    return r;
}

KernelSpan beta_plus(const KernelSpan& v, FlowConvention conv, bool check_J)
{
    if (check_J && !is_J_fixed(v)) throw Error("NotJFixed", "beta+ needs a J-fixed vector");
    return modular_flow(cplx(0.0, -pi / 2), v, conv, true);
}

KernelSpan beta_minus(const KernelSpan& v, FlowConvention conv, bool check_J)
{
    if (check_J && !is_J_fixed(v)) throw Error("NotJFixed", "beta- needs a J-fixed vector");
    return modular_flow(cplx(0.0, pi / 2), v, conv, true);
}

ExtrapolatedPairings beta_plus_pairings(const KernelSpan& v, const std::vector<KernelSpan>& panel,
                                        FlowConvention conv, int steps, double eps0)
{
    const Eigen::Index np = static_cast<Eigen::Index>(panel.size());
    std::vector<Eigen::VectorXcd> R(steps);
    for (int j = 0; j < steps; ++j)
    {
        const double eps = eps0 * std::pow(0.5, j);
        const KernelSpan w = modular_flow(cplx(0.0, -pi / 2 + eps), v, conv);
        R[j].resize(np);
        for (Eigen::Index k = 0; k < np; ++k) R[j](k) = inner(panel[k], w);
    }
    // Richardson table for an expansion in integer powers of eps
    Eigen::VectorXcd prev_best = R[steps - 1];
    for (int lev = 1; lev < steps; ++lev)
    {
        const double f = std::pow(2.0, lev);
        for (int j = steps - 1; j >= lev; --j) R[j] = (f * R[j] - R[j - 1]) / (f - 1.0);
        if (lev == steps - 2) prev_best = R[steps - 1];
    }
    ExtrapolatedPairings out;
    out.values = R[steps - 1];
    out.error = (out.values - prev_best).cwiseAbs().maxCoeff();
    return out;
}

std::vector<KernelSpan> pairing_panel(int n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ure(-3.0, 3.0), uim(0.3, 3.0);
    std::vector<KernelSpan> p;
    for (int k = 0; k < n; ++k)
    {
        const double re = ure(rng);
        const double im = uim(rng);
        p.push_back(kernel(cplx(re, im)));
    }
    return p;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
    return v;
}

GrowthFit growth_fit(const KernelSpan& v, const std::vector<double>& t_grid)
{
    GrowthFit fit;
    const Eigen::Index n = static_cast<Eigen::Index>(t_grid.size());
    if (n < 2) throw Error("InvalidArgument", "growth_fit needs at least two t values");
    Eigen::MatrixXd A(n, 2);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i)
    {
        const double t = t_grid[i];
        if (!(std::abs(t) < pi / 2)) throw Error("FlowUndefined", "|t| must be < pi/2");
        KernelSpan w;
        try
        {
            w = modular_flow(cplx(0.0, t), v);
        }
        catch (const Error&)
        {
            throw Error("FlowUndefined", "continued orbit leaves the domain");
        }
        const double n2 = inner(w, w).real();
        fit.t_samples.push_back(t);
        fit.norms2.push_back(n2);
        A(i, 0) = 1.0;
        A(i, 1) = -std::log(pi / 2 - std::abs(t));
        y(i) = std::log(n2);
    }
    const Eigen::Vector2d c = A.colPivHouseholderQr().solve(y);
    fit.C = std::exp(c(0));
    fit.N = c(1);
    fit.residual = (A * c - y).cwiseAbs().maxCoeff();
    return fit;
}

ZetaReport zeta_equivariance_check(double xc, double hc, const KernelSpan& v, FlowConvention conv)
{
    static const auto aff = catalog("aff");
    static const auto es = euler_structure(aff.algebra, aff.elements.at("h"));
    const Eigen::Vector2cd zx = es.zeta * Eigen::Vector2cd(xc, hc);
    const auto panel = pairing_panel();
    ZetaReport rep;
    if (v.empty())
    {
        rep.lhs = rep.rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(panel.size()));
        return rep;
    }
    const auto lhs = beta_plus_pairings(dU(xc, hc, v), panel, conv);
    const KernelSpan rhs_vec = dU(zx(0), zx(1), beta_plus(v, conv, false));
    rep.lhs = lhs.values;
    rep.rhs.resize(lhs.values.size());
    for (Eigen::Index k = 0; k < rep.rhs.size(); ++k) rep.rhs(k) = inner(panel[k], rhs_vec);
    rep.max_deviation = (rep.lhs - rep.rhs).cwiseAbs().maxCoeff();
    rep.extrapolation_error = lhs.error;
    return rep;
}

CauchyVector::CauchyVector(cplx phase, std::function<double(double)> density, double lo, double hi,
                           double panel_width, int m)
    : phase_(phase), psi_(std::move(density)), lo_(lo), hi_(hi), h_(panel_width), m_(m)
{
    if (!(hi > lo)) throw Error("InvalidSupport", "support must satisfy lo < hi");
    if (std::abs(std::abs(phase) - 1.0) > 1e-12) throw Error("InvalidPhase", "phase must be unimodular");
    zero_ = !psi_;
    if (zero_) return;
    rule_ = panel_gauss_legendre<double>(lo, hi, panel_width, m);
    samples_.resize(rule_.size());
    for (Eigen::Index k = 0; k < rule_.size(); ++k) samples_(k) = psi_(rule_.nodes(k));
    zero_ = samples_.cwiseAbs().maxCoeff() == 0.0;
}

double CauchyVector::density(double x) const
{
    if (!psi_ || x < lo_ || x > hi_) return 0.0;
    return psi_(x);
}

cplx CauchyVector::operator()(cplx z) const
{
    if (zero_) return 0.0;
    cplx s = 0.0;
    for (Eigen::Index k = 0; k < rule_.size(); ++k)
        s += rule_.weights(k) * samples_(k) * I1 / (z - rule_.nodes(k));
    return phase_ * s;
}

CauchyVector zero_cauchy()
{
    return CauchyVector(1.0, nullptr, 0.0, 1.0);
}

CauchyVector scale(cplx c, const CauchyVector& v)
{
    if (c == 0.0 || v.is_zero()) return zero_cauchy();
    const double r = std::abs(c);
    auto psi = v.density_fn();
    return CauchyVector(v.phase() * c / r, [psi, r](double x) { return r * psi(x); }, v.lo(), v.hi(),
                        v.panel_width(), v.nodes_per_panel());
}

CauchyVector act_affine(double b, double a, const CauchyVector& v)
{
    if (!(a > 0.0)) throw Error("InvalidGroupElement", "a must be positive");
    if (v.is_zero()) return v;
    auto psi = v.density_fn();
    const double s = 1.0 / std::sqrt(a);
    return CauchyVector(v.phase(), [psi, a, b, s](double x) { return s * psi((x + b) / a); },
                        a * v.lo() - b, a * v.hi() - b, v.panel_width(), v.nodes_per_panel());
}

CauchyVector conjugation_J(const CauchyVector& v)
{
    if (v.is_zero()) return v;
    auto psi = v.density_fn();
    return CauchyVector(std::conj(v.phase()), [psi](double x) { return psi(-x); }, -v.hi(), -v.lo(),
                        v.panel_width(), v.nodes_per_panel());
}

Eigen::MatrixXcd cauchy_gram(const std::vector<CauchyVector>& vs, double panel_width, int m)
{
    const Eigen::Index nv = static_cast<Eigen::Index>(vs.size());
    Eigen::MatrixXcd G = Eigen::MatrixXcd::Zero(nv, nv);
    std::vector<double> ends;
    for (const auto& v : vs)
        if (!v.is_zero())
        {
            ends.push_back(v.lo());
            ends.push_back(v.hi());
        }
    if (ends.empty()) return G;
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    std::vector<double> br = {ends.front()};
    for (size_t i = 1; i < ends.size(); ++i)
    {
        const int panels = std::max(1, static_cast<int>(std::ceil((ends[i] - ends[i - 1]) / panel_width)));
        for (int p = 1; p <= panels; ++p) br.push_back(ends[i - 1] + (ends[i] - ends[i - 1]) * p / panels);
    }
    if (br.size() < 2) return G;
    const auto X = composite_gauss_legendre<double>(br, m);
    const auto T = composite_gauss_legendre<double>(br, m + 1);
    Eigen::MatrixXd A(nv, X.size()), B(nv, T.size()), UX(nv, X.size());
    for (Eigen::Index v = 0; v < nv; ++v)
    {
        for (Eigen::Index k = 0; k < X.size(); ++k) UX(v, k) = vs[v].is_zero() ? 0.0 : vs[v].density(X.nodes(k));
        for (Eigen::Index k = 0; k < T.size(); ++k)
            B(v, k) = (vs[v].is_zero() ? 0.0 : vs[v].density(T.nodes(k))) * T.weights(k);
        A.row(v) = UX.row(v).cwiseProduct(X.weights.transpose());
    }
    // M(u,v) = sum_ij A(u,i) B(v,j) / (X_i - T_j), blocked over i
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(nv, nv);
    const Eigen::Index block = 512;
    for (Eigen::Index i0 = 0; i0 < X.size(); i0 += block)
    {
        const Eigen::Index nb = std::min(block, X.size() - i0);
        Eigen::MatrixXd D(nb, T.size());
        for (Eigen::Index i = 0; i < nb; ++i)
            D.row(i) = (X.nodes(i0 + i) - T.nodes.array()).inverse().transpose();
        M.noalias() += A.middleCols(i0, nb) * (D * B.transpose());
    }
    const Eigen::MatrixXd Ipv = 0.5 * (M - M.transpose());
    const Eigen::MatrixXd R = pi * A * UX.transpose();
    for (Eigen::Index u = 0; u < nv; ++u)
        for (Eigen::Index v = 0; v < nv; ++v)
            G(u, v) = std::conj(vs[u].phase()) * vs[v].phase() * cplx(R(u, v), Ipv(u, v));
    return G;
}

cplx inner(const KernelSpan& u, const CauchyVector& v)
{
    if (v.is_zero()) return 0.0;
    cplx s = 0.0;
    const auto& r = v.rule();
    for (const auto& t : u.terms)
    {
        if (!(t.point.imag() > 0.0)) throw Error("InvalidPoint", "kernel pairing needs interior points");
        cplx acc = 0.0;
        for (Eigen::Index k = 0; k < r.size(); ++k)
            acc += r.weights(k) * v.samples()(k) * I1 / std::pow(t.point - r.nodes(k), t.order + 1);
        s += std::conj(t.coeff) * (t.order % 2 ? -1.0 : 1.0) * acc;
    }
    return v.phase() * s;
}

cplx continued_value(const CauchyVector& v, cplx tau, cplx z)
{
    if (v.is_zero()) return 0.0;
    const auto& r = v.rule();
    const cplx e = std::exp(tau);
    cplx s = 0.0;
    for (Eigen::Index k = 0; k < r.size(); ++k) s += r.weights(k) * v.samples()(k) * I1 / (z - e * r.nodes(k));
    return v.phase() * std::exp(tau / 2.0) * s;
}

namespace
{

double endpoint_deviation(const CauchyVector& v, double theta)
{
    const CauchyVector Jv = conjugation_J(v);
    double dev = 0.0, ref = 0.0;
    for (cplx z : evaluation_grid())
    {
        const cplx j = Jv(z);
        dev = std::max(dev, std::abs(continued_value(v, cplx(0.0, theta), z) - j));
        ref = std::max(ref, std::abs(j));
    }
    return ref > 0.0 ? dev / ref : dev;
}

}  // namespace

double kms_endpoint_deviation(const CauchyVector& v)
{
    if (v.is_zero()) return 0.0;
    return endpoint_deviation(v, pi);
}

KmsResult kms_test(const CauchyVector& v)
{
    if (v.is_zero()) return {0.0, 0};
    // the kernel parameter e^{-i theta} x stays in the closed upper half-plane for theta in [0, pi]
    // iff x <= 0, and for theta in [-pi, 0] iff x >= 0
    int strip;
    if (v.hi() < 0.0)
        strip = 1;
    else if (v.lo() > 0.0)
        strip = -1;
    else
        throw Error("ContinuationLeftDomain", "support touches or crosses 0");
    return {endpoint_deviation(v, strip * pi), strip};
}

QuadResult<cplx> l2_bridge(const std::function<cplx(double)>& f, cplx z, double tol)
{
    if (!(z.imag() > 0.0)) throw Error("InvalidPoint", "z must lie in the upper half-plane");
    auto g = [&](double p) -> cplx {
        const double damp = -z.imag() * p;
        if (damp < -745.0) return 0.0;
        return std::exp(I1 * z * p) * f(p);
    };
    auto r = exp_sinh<double>(g, 0.0, tol, 12);
    if (!r.converged) throw Error("QuadratureNotConverged", "l2_bridge node doubling disagrees");
    return r;
}

QuadResult<double> l2_norm2(const std::function<cplx(double)>& f, double tol)
{
    auto r = exp_sinh<double>([&](double p) { return std::norm(f(p)); }, 0.0, tol, 12);
    if (!r.converged) throw Error("QuadratureNotConverged", "l2_norm2 node doubling disagrees");
    return r;
}

double cauchy_riemann_residual(const std::function<cplx(cplx)>& f, const std::vector<cplx>& grid, double h)
{
    double r = 0.0;
    for (cplx z : grid)
    {
        const cplx fx = (f(z + h) - f(z - h)) / (2 * h);
        const cplx fy = (f(z + I1 * h) - f(z - I1 * h)) / (2 * h);
        r = std::max(r, std::abs(fx + I1 * fy));
    }
    return r;
}

}  // namespace crownlab
