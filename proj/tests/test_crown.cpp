#include <doctest.h>

#include <numbers>
#include <random>

#include "crownlab/crown.hpp"
#include "crownlab/hardy.hpp"

using namespace crownlab;

TEST_CASE("group law")
{
    const CAffine g{cplx(0.3, -0.2), cplx(1.5, 0.4)}, h{cplx(-1.0, 0.7), cplx(0.2, -0.9)}, k{cplx(2.0, 0.1), cplx(0.5, 0.5)};
    const CAffine l = affine_mul(affine_mul(g, h), k), r = affine_mul(g, affine_mul(h, k));
    CHECK(std::abs(l.b - r.b) < 1e-14);
    CHECK(std::abs(l.a - r.a) < 1e-14);
    const CAffine e = affine_mul(g, affine_inv(g));
    CHECK(std::abs(e.b) < 1e-15);
    CHECK(std::abs(e.a - 1.0) < 1e-15);
    const CAffine t = tau_bar_aff(tau_bar_aff(g));
    CHECK(std::abs(t.b - g.b) + std::abs(t.a - g.a) == 0.0);
    CHECK_THROWS_AS(affine_inv(CAffine{1.0, 0.0}), Error);
}

TEST_CASE("iota is a homomorphism and matches the Mobius action")
{
    const CAffine g{cplx(0.3, -0.2), cplx(1.5, 0.4)}, h{cplx(-1.0, 0.7), cplx(0.2, -0.9)};
    const CMat2 lhs = iota(affine_mul(g, h)), rhs = iota(g) * iota(h);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
    CHECK(std::abs(iota(g).determinant() - 1.0) < 1e-14);
    const cplx z(0.4, 1.3);
    CHECK(std::abs(mobius(iota(g), z) - (g.a * z - g.b)) < 1e-13);
}

TEST_CASE("domain membership")
{
    const DomainTag xi2 = parse_domain("xi2");
    CHECK(in_domain(xi2, CAffine{cplx(0.0, 0.4), cplx(0.5, 3.0)}));
    CHECK_FALSE(in_domain(xi2, CAffine{cplx(0.0, 0.6), cplx(0.5, 3.0)}));
    CHECK(in_domain(parse_domain("xi1"), CAffine{cplx(0.0, 5.0), cplx(0.1, 0.0)}));
    CHECK_FALSE(in_domain(parse_domain("xiplus:2"), CAffine{cplx(0.0, -3.0), cplx(1.0, 0.0)}));
    CHECK(in_domain(parse_domain("ximinus:2"), CAffine{cplx(0.0, -3.0), cplx(1.0, 0.0)}));
    CHECK_THROWS_AS(parse_domain("xi3"), Error);
    CHECK_THROWS_AS(parse_domain("xiplus:-1"), Error);
    CHECK_THROWS_AS(parse_domain("xiplus:abc"), Error);

    // Xi2 is the iota-preimage of the SL2(C) crown, checked against the two half-plane images
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const DomainTag sl = parse_domain("sl2c");
    for (int k = 0; k < 2000; ++k)
    {
        const CAffine g{cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
        if (std::abs(g.a) < 1e-3 || (g.a.imag() == 0.0 && g.a.real() <= 0.0)) continue;
        const cplx up = g.a * cplx(0, 1) - g.b, down = g.a * cplx(0, -1) - g.b;
        const bool oracle = up.imag() > 0 && down.imag() < 0;
        CHECK(in_domain(xi2, g) == oracle);
        CHECK(in_domain(sl, iota(g)) == oracle);
    }
}

TEST_CASE("Cr2 on xi2 and the PoleHit guard")
{
    std::vector<double> t;
    for (int k = 1; k < 20; ++k) t.push_back(-std::numbers::pi / 2 + std::numbers::pi * k / 20);
    const Cr2Report r = cr2_sweep(parse_domain("xi2"), 300, t, 3);
    CHECK(r.failures == 0);
    CHECK(r.worst_margin > 0.0);
    CMat2 g;
    g << 1.0, 0.0, 1.0, 0.0;
    CHECK_THROWS_AS(mobius(g, 0.0), Error);
}

TEST_CASE("wedge membership")
{
    CHECK(wedge_membership_aff(CAffine{0.5, 2.0}, 1));
    CHECK_FALSE(wedge_membership_aff(CAffine{-0.5, 2.0}, 1));
    CHECK(wedge_membership_aff(CAffine{-0.5, 2.0}, -1));
}
