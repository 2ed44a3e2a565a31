#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "crownlab/error.hpp"

namespace crownlab
{

using cplx = std::complex<double>;

/// F(0) = int_0^inf t^{-t} dt (30-digit reference).
inline constexpr double schober_F0 = 1.99545595750013800041872469845;

/// Direct evaluation requires Im z > -schober_y_max (the integrand peaks at e^{e^{-Im z - 1}}).
inline constexpr double schober_y_max = 6.0;

struct SchoberEval
{
    cplx z;
    cplx value;
    double abs_err = 0.0;
    double cutoff = 0.0;  // truncation point of the t-integral
    int evaluations = 0;  // panel evaluations
};

/// F(z) = int_0^inf t^{-t} e^{itz} dt on the real t-axis: tanh-sinh near 0, Gauss-Legendre panels
/// up to the cutoff, analytic tail bound.
SchoberEval schober_F(cplx z, double target_err = 1e-12);

/// Same function through the rotated contour t = +-i s, valid for |Re z| > pi/2:
/// F(z) = +-i int_0^inf e^{-s(|x| - pi/2)} e^{-+ i s (log s + y)} ds.
SchoberEval schober_F_rotated(cplx z, double target_err = 1e-12);

/// Rotated contour where it converges fast (|Re z| > pi/2 + 1), real axis otherwise.
SchoberEval schober_eval(cplx z, double target_err = 1e-12);

/// G(y) = F(iy).
double schober_G(double y, double target_err = 1e-12);

struct BoundReport
{
    std::string name;
    int samples = 0;
    int violations = 0;
    double worst_excess = 0.0;  // max of lhs - rhs - slack (negative when all hold)
    double max_slack = 0.0;
};

/// |F(x+iy)| <= 1/(|x| - pi/2) for |x| > pi/2 + margin.
BoundReport verify_strip_bound(int samples, double margin, std::uint64_t seed);

/// |F(x+iy)| <= G(y).
BoundReport verify_abs_bound(int samples, std::uint64_t seed);

/// G strictly decreasing along the grid.
BoundReport verify_G_decreasing(const std::vector<double>& y_grid);

struct HardyNormReport
{
    cplx b, a;
    double bound = 0.0;            // closed form with d
    double bound_abs_d = 0.0;      // closed form with |d|
    double empirical_sup = 0.0;
    double argsup_y = 0.0;
    double error = 0.0;
    bool finite = false;
    bool pass = false;             // empirical sup <= bound
    bool pass_abs_d = false;       // empirical sup <= bound_abs_d
};

/// 4/pi |a|^2/c + 2 pi |a|^2/c G((Im b - pi d)/c)^2 with a = c + i d. The G-term evaluates G at
/// the smallest Im((x + i rho)/a) on the central interval only when d >= 0; with abs_d the
/// bound uses |d| and covers both signs.
double hardy_norm_closed_form(cplx b, cplx a, bool abs_d = false);

/// sup over y_grid of int |F((x + iy + b)/a)|^2 dx against the closed form.
HardyNormReport hardy_norm_bound(cplx b, cplx a, const std::vector<double>& y_grid);

/// H(x) = int_0^inf p^{-p} e^{px} dp = G(-x). OverflowGuard when the peak exponent exceeds 700.
double nontempered_H(double x);
/// log H(x), evaluated around the peak p* = e^{x-1}.
double log_H(double x);

struct NontemperedReport
{
    std::vector<double> p_list;
    std::vector<double> x_grid;
    std::vector<std::vector<double>> log_ratio;  // log(H(x) / e^{px})
    std::vector<double> onset;                   // x from which the ratio increases strictly (NaN if never)
    std::vector<bool> eventually_increasing;
    double double_exp_rate = 0.0;                // slope of log log H over the upper half of the grid
};

NontemperedReport nontempered_demo(const std::vector<double>& p_list, const std::vector<double>& x_grid);

/// max |F(z0) - (1/2 pi i) contour integral F(z)/(z - z0) dz| over centers, circle radius r.
double holomorphy_residual(const std::vector<cplx>& centers, double r = 0.25, int points = 64);

/// max |Im F(iy)| over the grid.
double imaginary_axis_residual(const std::vector<double>& y_grid);

}  // namespace crownlab
