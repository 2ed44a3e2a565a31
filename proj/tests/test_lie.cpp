#include <doctest.h>

#include "crownlab/lie.hpp"

using namespace crownlab;

namespace
{

Eigen::MatrixXd comm(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b)
{
    return a * b - b * a;
}

}  // namespace

TEST_CASE("sl3 brackets agree with matrix commutators")
{
    const auto e = catalog("sl3");
    std::vector<Eigen::MatrixXd> basis;
    for (const auto& n : e.algebra.names) basis.push_back(e.matrices.at(n));
    for (int i = 0; i < e.algebra.dim(); ++i)
        for (int j = 0; j < e.algebra.dim(); ++j)
        {
            const auto v = bracket(e.algebra, e.algebra.basis(i), e.algebra.basis(j));
            Eigen::MatrixXd m = Eigen::MatrixXd::Zero(3, 3);
            for (int k = 0; k < e.algebra.dim(); ++k) m += v(k) * basis[k];
            CHECK((m - comm(basis[i], basis[j])).cwiseAbs().maxCoeff() < 1e-12);
        }
    // [E12, E23] = E13
    const auto v = bracket(e.algebra, e.algebra.basis(0), e.algebra.basis(3));
    CHECK(v(1) == doctest::Approx(1.0));
    CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("Euler elements")
{
    const auto sl2 = catalog("sl2");
    const auto h = sl2.elements.at("h");
    CHECK(is_euler(sl2.algebra, h));
    CHECK_FALSE(is_euler(sl2.algebra, Eigen::VectorXd(2.0 * h)));
    CHECK_FALSE(is_euler(sl2.algebra, sl2.elements.at("e")));
    CHECK_FALSE(is_euler(sl2.algebra, Eigen::VectorXd(Eigen::VectorXd::Zero(3))));

    const auto es = euler_structure(sl2.algebra, h);
    CHECK(es.spectrum == std::vector<int>{-1, 0, 1});
    const Eigen::MatrixXd sum = es.projector(-1) + es.projector(0) + es.projector(1);
    CHECK((sum - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((es.tau * es.tau - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

    // tau is an automorphism
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
        {
            const Eigen::VectorXd lhs = es.tau * bracket(sl2.algebra, sl2.algebra.basis(i), sl2.algebra.basis(j));
            const Eigen::VectorXd rhs =
                bracket(sl2.algebra, Eigen::VectorXd(es.tau.col(i)), Eigen::VectorXd(es.tau.col(j)));
            CHECK((lhs - rhs).norm() < 1e-12);
        }

    CHECK_THROWS_AS(euler_structure(sl2.algebra, Eigen::VectorXd(2.0 * h)), Error);
}

TEST_CASE("split oscillator classification")
{
    const auto g = catalog("split_oscillator").algebra;
    Eigen::VectorXd x(4);
    x << 0.3, -1.2, 2.0, 1.0;
    CHECK(classify_euler_split_oscillator(g, x));
    CHECK(is_euler(g, x));
    x(3) = -1.0;
    CHECK(classify_euler_split_oscillator(g, x));
    CHECK(is_euler(g, x));
    x(3) = 0.5;
    CHECK_FALSE(classify_euler_split_oscillator(g, x));
    CHECK_FALSE(is_euler(g, x));
    x(3) = 0.0;
    CHECK_FALSE(is_euler(g, x));
    CHECK_THROWS_AS(classify_euler_split_oscillator(catalog("sl2").algebra, Eigen::VectorXd(Eigen::VectorXd::Zero(3))), Error);
}

TEST_CASE("solvable splitting")
{
    const auto osc = catalog("split_oscillator");
    const auto n = solvable_splitting(osc.algebra, osc.elements.at("h"));
    CHECK(n.cols() == 3);
    // the ideal is span(z, q, p): orthogonal to h
    CHECK(std::abs(n.col(0).dot(osc.elements.at("h"))) + std::abs(n.col(1).dot(osc.elements.at("h"))) +
              std::abs(n.col(2).dot(osc.elements.at("h"))) <
          1e-12);

    try
    {
        solvable_splitting(osc.algebra, osc.elements.at("z"));
        FAIL("expected CentralElement");
    }
    catch (const Error& e)
    {
        CHECK(e.code() == "CentralElement");
    }
    CHECK_THROWS_AS(solvable_splitting(catalog("sl2").algebra, catalog("sl2").elements.at("h")), Error);
}

TEST_CASE("invalid structure constants")
{
    std::vector<Eigen::MatrixXd> c(2, Eigen::MatrixXd::Zero(2, 2));
    c[1](0, 0) = 1.0;  // [e1, e0] = e0 without [e0, e1] = -e0
    CHECK_THROWS_AS(make_algebra<double>({"a", "b"}, c), Error);
}

TEST_CASE("long double instantiation")
{
    const auto g = catalog("aff").algebra;
    LieAlgebra<long double> gl;
    gl.names = g.names;
    for (const auto& m : g.c) gl.c.push_back(m.cast<long double>());
    CHECK(is_euler<long double>(gl, gl.basis(1)));
    CHECK_FALSE(is_euler<long double>(gl, gl.basis(0)));
}
