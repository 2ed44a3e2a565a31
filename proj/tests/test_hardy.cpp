#include <doctest.h>

#include <numbers>

#include "crownlab/crown.hpp"
#include "crownlab/hardy.hpp"
#include "crownlab/quadrature.hpp"

using namespace crownlab;

namespace
{

constexpr double pi = std::numbers::pi;
const cplx I1(0.0, 1.0);

// (1/2pi) int conj(f(x)) g(x) dx over the real line, via x = tan(theta).
cplx boundary_inner(const KernelSpan& f, const KernelSpan& g)
{
    const auto gl = gauss_legendre<double>(2000);
    cplx s = 0.0;
    for (Eigen::Index k = 0; k < gl.size(); ++k)
    {
        const double th = pi / 2 * gl.nodes(k), x = std::tan(th), c = std::cos(th);
        s += gl.weights(k) * pi / 2 / (c * c) * std::conj(evaluate(f, x)) * evaluate(g, x);
    }
    return s / (2 * pi);
}

double max_grid_diff(const KernelSpan& u, const KernelSpan& v)
{
    return grid_distance([&](cplx z) { return evaluate(u, z); }, [&](cplx z) { return evaluate(v, z); });
}

}  // namespace

TEST_CASE("kernel pairings")
{
    CHECK(std::abs(inner(kernel(I1), kernel(2.0 * I1)) - 1.0 / 3.0) < 1e-15);
    const cplx w(0.3, 0.7), v(-1.1, 1.9);
    // reproducing property
    CHECK(std::abs(inner(kernel(w), kernel(v)) - evaluate(kernel(v), w)) < 1e-14);
    // against the boundary L2 pairing
    CHECK(std::abs(inner(kernel(w), kernel(v)) - boundary_inner(kernel(w), kernel(v))) < 1e-9);
    CHECK(std::abs(inner(kernel(w, 1.0, 1), kernel(v, 1.0, 2)) -
                   boundary_inner(kernel(w, 1.0, 1), kernel(v, 1.0, 2))) < 1e-9);
    CHECK_THROWS_AS(inner(kernel(1.0), kernel(-1.0)), Error);
}

TEST_CASE("l2 bridge reproduces the kernel")
{
    const cplx w(0.4, 0.8), z(-0.5, 1.2);
    const auto r = l2_bridge([w](double p) { return std::exp(-I1 * std::conj(w) * p); }, z);
    CHECK(r.converged);
    CHECK(std::abs(r.value - evaluate(kernel(w), z)) < 1e-9);
}

TEST_CASE("derivative of the representation by finite differences")
{
    const KernelSpan v = kernel(cplx(0.3, 1.1), cplx(0.5, -0.2)) + kernel(cplx(-0.8, 0.6), 1.0, 1);
    const double e = 1e-5;
    const KernelSpan dx = dU(1.0, 0.0, v);
    const KernelSpan fx = (1.0 / (2 * e)) * (act_affine(e, 1.0, v) + (-1.0) * act_affine(-e, 1.0, v));
    CHECK(max_grid_diff(dx, fx) < 1e-7);
    const KernelSpan dh = dU(0.0, 1.0, v);
    const KernelSpan fh = (1.0 / (2 * e)) * (act_affine(0.0, std::exp(e), v) + (-1.0) * act_affine(0.0, std::exp(-e), v));
    CHECK(max_grid_diff(dh, fh) < 1e-7);
}

TEST_CASE("SL2(R) action is unitary and extends the affine action")
{
    CMat2 g;
    g << 0.6, -1.3, 0.8, (1.0 - 1.3 * 0.8) / 0.6;
    REQUIRE(std::abs(g.determinant() - 1.0) < 1e-12);
    const KernelSpan u = kernel(cplx(0.2, 0.9), cplx(1.0, 0.3)), v = kernel(cplx(-1.0, 2.0));
    CHECK(std::abs(inner(act_sl2(g, u), act_sl2(g, v)) - inner(u, v)) < 1e-13);
    const CAffine h{0.7, 1.8};
    CHECK(max_grid_diff(act_sl2(iota(h), v), act_affine(0.7, 1.8, v)) < 1e-13);
}

TEST_CASE("modular flow norm and J")
{
    for (double y : {0.5, 2.0})
        for (double t : {-1.2, 0.0, 0.9})
        {
            const KernelSpan w = modular_flow(cplx(0.0, t), kernel(y * I1));
            CHECK(inner(w, w).real() == doctest::Approx(1.0 / (2 * y * std::cos(t))).epsilon(1e-13));
        }
    CHECK(is_J_fixed(kernel(0.7 * I1)));
    CHECK_FALSE(is_J_fixed(kernel(cplx(0.3, 0.7))));
    CHECK(is_J_fixed(kernel(cplx(0.3, 0.7)) + kernel(cplx(-0.3, 0.7))));
    CHECK_THROWS_AS(modular_flow(cplx(0.0, 2.0), kernel(I1)), Error);
}

TEST_CASE("boundary map")
{
    const double y = 1.3;
    const KernelSpan b = beta_plus(kernel(y * I1));
    REQUIRE(b.terms.size() == 1);
    CHECK(std::abs(b.terms[0].point - cplx(boundary_sign * y, 0.0)) < 1e-15);
    CHECK(std::abs(b.terms[0].coeff - std::exp(-I1 * pi / 4.0)) < 1e-15);
    const auto panel = pairing_panel();
    const auto ex = beta_plus_pairings(kernel(y * I1), panel);
    for (size_t k = 0; k < panel.size(); ++k) CHECK(std::abs(ex.values(k) - inner(panel[k], b)) < 1e-10);
    CHECK_THROWS_AS(beta_plus(kernel(cplx(0.2, 1.0))), Error);
}

TEST_CASE("growth exponent of the continued orbit")
{
    const GrowthFit f = growth_fit(kernel(I1), linspace(1.2, 1.5707, 32));
    CHECK(f.N == doctest::Approx(1.0).epsilon(0.01));
    CHECK_THROWS_AS(growth_fit(kernel(I1), {0.0, pi / 2}), Error);
}

TEST_CASE("KMS condition for Cauchy vectors")
{
    const cplx ph = std::exp(-I1 * pi / 4.0);
    auto psi = [](double x) {
        const double t = (x + 1.25) / 0.75;
        return std::abs(t) < 1 ? std::exp(-1.0 / (1 - t * t)) : 0.0;
    };
    const CauchyVector v(ph, psi, -2.0, -0.5);
    CHECK(kms_endpoint_deviation(v) < 1e-10);
    const KmsResult k = kms_test(v);
    CHECK(k.strip == 1);
    CHECK(k.deviation < 1e-8);
    CHECK(kms_test(scale(I1, v)).deviation > 0.1);
    // J acts as the reflection x -> -x with conjugated phase
    const CauchyVector Jv = conjugation_J(v);
    CHECK(Jv.lo() == doctest::Approx(0.5));
    CHECK(std::abs(Jv.phase() - std::conj(ph)) < 1e-15);
    // pairing with a kernel is evaluation
    const cplx z(0.1, 0.9);
    CHECK(std::abs(inner(kernel(z), v) - v(z)) < 1e-12);
    const CauchyVector straddle(ph, [](double) { return 1.0; }, -0.5, 0.5);
    CHECK_THROWS_AS(kms_test(straddle), Error);
}
