#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "crownlab/crown.hpp"
#include "crownlab/quadrature.hpp"

namespace crownlab
{

/// c * K^{(n)}_w with K^{(n)}_w(z) = i / (z - conj(w))^{n+1}. Real w is a boundary kernel.
struct KernelTerm
{
    cplx coeff{1.0, 0.0};
    cplx point{0.0, 1.0};
    int order = 0;
};

struct KernelSpan
{
    std::vector<KernelTerm> terms;

    bool empty() const { return terms.empty(); }
};

KernelSpan kernel(cplx w, cplx coeff = 1.0, int order = 0);
KernelSpan operator+(const KernelSpan& u, const KernelSpan& v);
KernelSpan operator*(cplx c, const KernelSpan& v);

/// True when every point is strictly inside C_+.
bool is_interior(const KernelSpan& v);

cplx evaluate(const KernelSpan& v, cplx z);

/// <u, v>, conjugate-linear in u. At least one side of every pair must be interior.
cplx inner(const KernelSpan& u, const KernelSpan& v);
Eigen::MatrixXcd gram(const std::vector<KernelSpan>& vs);

/// U(b,a), a > 0: K^{(n)}_w -> a^{n+1/2} K^{(n)}_{a w - b}.
KernelSpan act_affine(double b, double a, const KernelSpan& v);

/// Pi_+(g) for real g in SL2(R): K_w -> conj(1 / (g10 w + g11)) K_{g.w}. Order-0 terms only.
KernelSpan act_sl2(const CMat2& g, const KernelSpan& v);

/// Continuation rule of the dilation orbit t -> U(0, e^t) v to complex tau.
enum class FlowConvention
{
    Holomorphic,  // K^{(n)}_w -> e^{(n+1/2) tau} K^{(n)}_{e^{conj tau} w}
    Rotation      // K_w -> e^{tau/2} K_{e^{tau} w}; agrees for real tau only
};

/// Applies the continued dilation orbit. Throws LeftDomain if a point leaves C_+
/// (points may land on R when allow_boundary is set).
KernelSpan modular_flow(cplx tau, const KernelSpan& v,
                        FlowConvention conv = FlowConvention::Holomorphic, bool allow_boundary = false);

/// (J f)(z) = conj(f(-conj z)): c K^{(n)}_w -> (-1)^n conj(c) K^{(n)}_{-conj w}.
KernelSpan conjugation_J(const KernelSpan& v);

/// Fixed 32-point evaluation grid in C_+.
const std::vector<cplx>& evaluation_grid();

/// max |f(z) - g(z)| over the evaluation grid.
double grid_distance(const std::function<cplx(cplx)>& f, const std::function<cplx(cplx)>& g);

bool is_J_fixed(const KernelSpan& v, double tol = 1e-12);

/// Infinitesimal action dU(X) for X = xc * x + hc * h in aff (x translation, h dilation);
/// complex coefficients give the complex-linear extension.
KernelSpan dU(cplx xc, cplx hc, const KernelSpan& v);

/// Boundary value lim_{t -> -pi/2} U(it) v (closed form). NotJFixed unless check_J is off.
KernelSpan beta_plus(const KernelSpan& v, FlowConvention conv = FlowConvention::Holomorphic,
                     bool check_J = true);
KernelSpan beta_minus(const KernelSpan& v, FlowConvention conv = FlowConvention::Holomorphic,
                      bool check_J = true);

/// Pairings <p_k, U(it) v> extrapolated to t -> -pi/2 (Richardson, geometric steps).
struct ExtrapolatedPairings
{
    Eigen::VectorXcd values;
    double error = 0.0;
};
ExtrapolatedPairings beta_plus_pairings(const KernelSpan& v, const std::vector<KernelSpan>& panel,
                                        FlowConvention conv = FlowConvention::Holomorphic,
                                        int steps = 8, double eps0 = 0.05);

/// 16 seeded interior kernels used as a pairing panel.
std::vector<KernelSpan> pairing_panel(int n = 16, std::uint64_t seed = 1234);

struct GrowthFit
{
    double C = 0.0;
    double N = 0.0;
    double residual = 0.0;
    std::vector<double> t_samples;
    std::vector<double> norms2;
};

/// Least squares of log ||U(it) v||^2 = log C - N log(pi/2 - |t|).
GrowthFit growth_fit(const KernelSpan& v, const std::vector<double>& t_grid);

std::vector<double> linspace(double lo, double hi, int n);

struct ZetaReport
{
    double max_deviation = 0.0;
    double extrapolation_error = 0.0;
    Eigen::VectorXcd lhs, rhs;
};

/// beta+ o dU(X) against dU(zeta X) o beta+, X = xc x + hc h, zeta from the Euler structure of aff.
ZetaReport zeta_equivariance_check(double xc, double hc, const KernelSpan& v,
                                   FlowConvention conv = FlowConvention::Holomorphic);

/// phase * int psi(x) K_x dx with psi real on [lo, hi], sampled on two interlaced
/// composite Gauss-Legendre grids (m and m+1 nodes per panel).
class CauchyVector
{
public:
    CauchyVector() = default;
    CauchyVector(cplx phase, std::function<double(double)> density, double lo, double hi,
                 double panel_width = 0.1, int m = 16);

    cplx phase() const { return phase_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    bool is_zero() const { return zero_; }
    double density(double x) const;
    const std::function<double(double)>& density_fn() const { return psi_; }
    const QuadratureRule<double>& rule() const { return rule_; }
    const Eigen::VectorXd& samples() const { return samples_; }
    double panel_width() const { return h_; }
    int nodes_per_panel() const { return m_; }

    /// xi(z), z in C_+.
    cplx operator()(cplx z) const;

private:
    cplx phase_{1.0, 0.0};
    std::function<double(double)> psi_;
    double lo_ = 0.0, hi_ = 0.0, h_ = 0.1;
    int m_ = 16;
    bool zero_ = true;
    QuadratureRule<double> rule_;
    Eigen::VectorXd samples_;
};

CauchyVector zero_cauchy();
CauchyVector scale(cplx c, const CauchyVector& v);  // phase rotation by c/|c| and density by |c|
CauchyVector act_affine(double b, double a, const CauchyVector& v);
CauchyVector conjugation_J(const CauchyVector& v);

/// Gram matrix of Cauchy vectors on a common grid; PV part antisymmetrized over interlaced nodes.
Eigen::MatrixXcd cauchy_gram(const std::vector<CauchyVector>& vs, double panel_width = 0.1, int m = 16);

/// <K_w-span, xi> by direct quadrature.
cplx inner(const KernelSpan& u, const CauchyVector& v);

/// Continued orbit evaluated pointwise: phase int psi(x) e^{tau/2} i / (z - e^{tau} x) dx.
cplx continued_value(const CauchyVector& v, cplx tau, cplx z);

struct KmsResult
{
    double deviation = 0.0;  // max |U(i s pi) xi - J xi| / max |J xi| on the grid
    int strip = 0;           // +1 upper strip, -1 lower strip, 0 for xi = 0
};

/// Endpoint identity U(i pi) xi = J xi evaluated by the pointwise formula above (no domain check).
double kms_endpoint_deviation(const CauchyVector& v);

/// KMS membership: the continuation must run inside the strip the support allows (supports in
/// (-inf,0) continue into 0 < Im tau < pi, supports in (0,inf) into -pi < Im tau < 0).
/// A support touching or crossing 0 throws ContinuationLeftDomain.
KmsResult kms_test(const CauchyVector& v);

/// Sign s of the boundary points s*y (y > 0) carrying E = {e^{-i pi/4} K_{s y}}.
constexpr int boundary_sign = -1;

/// F(z) = int_0^inf e^{izp} f(p) dp with exp-sinh node doubling.
QuadResult<cplx> l2_bridge(const std::function<cplx(double)>& f, cplx z, double tol = 1e-10);

/// int_0^inf |f|^2 dp with exp-sinh.
QuadResult<double> l2_norm2(const std::function<cplx(double)>& f, double tol = 1e-10);

/// max over the grid of |d f/d x + i d f/d y| by central differences.
double cauchy_riemann_residual(const std::function<cplx(cplx)>& f, const std::vector<cplx>& grid,
                               double h = 1e-4);

}  // namespace crownlab
