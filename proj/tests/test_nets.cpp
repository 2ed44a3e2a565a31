#include <doctest.h>

#include <numbers>

#include "crownlab/nets.hpp"
#include "crownlab/quadrature.hpp"

using namespace crownlab;

namespace
{

const cplx I1(0.0, 1.0);

double haar_mass(const TestFunction& phi)
{
    const auto gl = gauss_legendre<double>(64);
    const Box& b = phi.support;
    const double bc = (b.b_lo + b.b_hi) / 2, bh = (b.b_hi - b.b_lo) / 2;
    const double ac = (b.a_lo + b.a_hi) / 2, ah = (b.a_hi - b.a_lo) / 2;
    double s = 0.0;
    for (Eigen::Index i = 0; i < gl.size(); ++i)
        for (Eigen::Index j = 0; j < gl.size(); ++j)
        {
            const double a = ac + ah * gl.nodes(j);
            s += gl.weights(i) * gl.weights(j) * bh * ah * phi(bc + bh * gl.nodes(i), a) / (a * a);
        }
    return s;
}

}  // namespace

TEST_CASE("smearing is a delta sequence")
{
    // phi concentrating at g0 = (b0, a0) gives U(g0) e^{-i pi/4} K_{-y} = a0^{1/2} e^{-i pi/4} K_{-a0 y - b0}
    const double b0 = 0.4, a0 = 1.3, y = 0.7;
    const cplx w(0.2, 0.8);
    const cplx target =
        std::sqrt(a0) * std::exp(-I1 * std::numbers::pi / 4.0) * evaluate(kernel(-a0 * y - b0), w);
    double prev = INFINITY;
    for (double eps : {0.08, 0.04, 0.02})
    {
        const TestFunction phi = bump(Box{b0 - eps, b0 + eps, a0 - eps, a0 + eps});
        const NetElement e = smear(phi, boundary_point(y));
        const double err = std::abs(inner(kernel(w), e.vec) / haar_mass(phi) - target);
        CHECK(err < prev);
        prev = err;
    }
    CHECK(prev < 2e-3 * std::abs(target));
}

TEST_CASE("translation covariance")
{
    const Box box{-0.1, 0.1, 0.9, 1.1};
    const double b0 = 0.5, a0 = 1.4;
    const CauchyVector u = smear(bump(box), boundary_point(0.5)).vec;
    const CauchyVector moved = act_affine(b0, a0, u);
    const CauchyVector direct = smear(bump(translate(box, b0, a0)), boundary_point(0.5)).vec;
    for (cplx z : {cplx(0.0, 0.5), cplx(-1.0, 1.0), cplx(2.0, 0.3)})
        CHECK(std::abs(moved(z) - direct(z)) < 1e-8 * std::abs(direct(z)));
}

TEST_CASE("regions")
{
    CHECK_THROWS_AS(box_region(Box{0.1, -0.1, 0.9, 1.1}), Error);
    CHECK_THROWS_AS(box_region(Box{-0.1, 0.1, -0.5, 1.1}), Error);
    CHECK_THROWS_AS(translate(Box{}, 0.0, -1.0), Error);
    const Box b = parse_box("-1, 1, 0.5, 2");
    CHECK(b.b_lo == -1.0);
    CHECK(b.a_hi == 2.0);
    CHECK_THROWS_AS(parse_box("1,2,3"), Error);
}

TEST_CASE("local net membership")
{
    const Box box{-0.07, 0.07, 0.93, 1.07};
    const OpenRegion reg = box_region(box);
    const CauchyVector v = smear(bump(box), boundary_point(0.5)).vec;
    CHECK(regnet_membership(v, reg, 1, 16));
    CHECK_FALSE(regnet_membership(scale(I1, v), reg, 1, 16));
    try
    {
        coset_samples(wedge_region(-1), 1, 8, 1);
        FAIL("expected NoCosetSamples");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == "NoCosetSamples");
    }
    const auto g = coset_samples(reg, 1, 32, 3);
    CHECK(g.size() == 32);
}

TEST_CASE("projection deficits are monotone")
{
    const Box box{-0.07, 0.07, 0.93, 1.07};
    const auto span = smear_family(bump(box), laguerre_family(12));
    const DeficitCurve c = projection_deficits(span, {kernel(I1)}, {2, 6, 12});
    REQUIRE(c.deficits.size() == 1);
    for (size_t k = 1; k < c.deficits[0].size(); ++k) CHECK(c.deficits[0][k] <= c.deficits[0][k - 1] + 1e-12);
    CHECK(c.deficits[0].back() < 0.5);
}

TEST_CASE("wedge orientation")
{
    const BwOrientation o = bw_orientation();
    CHECK(o.sign == 1);
    CHECK(o.deviation_plus < 1e-8);
    CHECK(o.deviation_minus > 0.5);
}
