#include <doctest.h>

#include <numbers>

#include "crownlab/quadrature.hpp"
#include "crownlab/hardy.hpp"
#include "crownlab/schober.hpp"

using namespace crownlab;

TEST_CASE("value at the origin")
{
    const SchoberEval f = schober_F(0.0);
    CHECK(std::abs(f.value - schober_F0) < 1e-13);
    CHECK(schober_G(0.0) == doctest::Approx(schober_F0).epsilon(1e-13));
}

TEST_CASE("independent quadrature of t^{-t} e^{itz}")
{
    // plain composite Gauss-Legendre on [0, 40] after t = s^2 (smooths the t log t term at 0)
    const cplx z(0.7, 0.4);
    std::vector<double> br;
    for (int k = 0; k <= 400; ++k) br.push_back(std::sqrt(40.0) * k / 400.0);
    const auto q = composite_gauss_legendre<double>(br, 12);
    const cplx ref = q.integrate([z](double s) {
        const double t = s * s;
        return t == 0.0 ? cplx(0.0) : 2.0 * s * std::exp(-t * std::log(t) + cplx(0.0, 1.0) * t * z);
    });
    CHECK(std::abs(schober_F(z).value - ref) < 1e-10);
}

TEST_CASE("rotated contour agrees with the real axis")
{
    for (cplx z : {cplx(3.0, 0.5), cplx(-2.5, -0.7), cplx(4.0, 2.0)})
    {
        const SchoberEval a = schober_F(z), b = schober_F_rotated(z);
        CHECK(std::abs(a.value - b.value) < 1e-10);
    }
    CHECK_THROWS_AS(schober_F_rotated(cplx(0.5, 0.0)), Error);
}

TEST_CASE("bounds on small samples")
{
    const BoundReport s = verify_strip_bound(200, 0.05, 11);
    CHECK(s.violations == 0);
    const BoundReport a = verify_abs_bound(200, 11);
    CHECK(a.violations == 0);
    CHECK(verify_G_decreasing({-2.0, -1.0, 0.0, 1.0, 3.0, 6.0}).violations == 0);
    CHECK(imaginary_axis_residual({-1.0, 0.0, 2.0}) < 1e-12);
    CHECK(holomorphy_residual({cplx(0.3, 0.2), cplx(-2.0, 1.0)}) < 1e-10);
}

TEST_CASE("Hardy norm closed form")
{
    // d = 0: both forms agree
    CHECK(hardy_norm_closed_form(cplx(0.2, 0.1), 1.5) == hardy_norm_closed_form(cplx(0.2, 0.1), 1.5, true));
    const HardyNormReport r = hardy_norm_bound(cplx(0.1, 0.2), cplx(1.2, 0.3), {0.01, 0.5, 2.0});
    CHECK(r.finite);
    CHECK(r.pass);
    CHECK(r.empirical_sup <= r.bound);
}

TEST_CASE("H grows faster than any exponential")
{
    CHECK(std::log(nontempered_H(2.0)) == doctest::Approx(log_H(2.0)).epsilon(1e-10));
    CHECK(nontempered_H(0.0) == doctest::Approx(schober_F0).epsilon(1e-12));
    const NontemperedReport n = nontempered_demo({1.0, 10.0}, linspace(0.0, 10.0, 51));
    for (bool b : n.eventually_increasing) CHECK(b);
    CHECK(n.double_exp_rate > 0.9);
    CHECK_THROWS_AS(nontempered_H(10.0), Error);
}
