#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "crownlab/error.hpp"

namespace crownlab
{

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// Coordinates in the basis of the parent algebra.
template <typename Scalar>
using LieElement = VectorX<Scalar>;

/// Real Lie algebra by structure constants: c[i](j,k) is the e_k coefficient of [e_i, e_j].
template <typename Scalar = double>
struct LieAlgebra
{
    std::vector<std::string> names;
    std::vector<MatrixX<Scalar>> c;

    int dim() const { return static_cast<int>(c.size()); }

    LieElement<Scalar> basis(int i) const { return LieElement<Scalar>::Unit(dim(), i); }

    int index(const std::string& name) const
    {
        for (int i = 0; i < dim(); ++i)
            if (names[i] == name) return i;
        throw Error("UnknownBasisName", name);
    }
};

template <typename Scalar>
LieElement<Scalar> bracket(const LieAlgebra<Scalar>& g, const LieElement<Scalar>& a,
                           const LieElement<Scalar>& b)
{
    if (a.size() != g.dim() || b.size() != g.dim())
        throw Error("DimensionMismatch", "bracket operands do not match algebra dimension");
    LieElement<Scalar> r = LieElement<Scalar>::Zero(g.dim());
    for (int i = 0; i < g.dim(); ++i)
        if (a(i) != Scalar(0)) r += a(i) * (g.c[i].transpose() * b);
    return r;
}

/// Matrix of ad x acting on coordinate columns.
template <typename Scalar>
MatrixX<Scalar> ad(const LieAlgebra<Scalar>& g, const LieElement<Scalar>& x)
{
    if (x.size() != g.dim()) throw Error("DimensionMismatch", "ad: wrong element length");
    MatrixX<Scalar> A = MatrixX<Scalar>::Zero(g.dim(), g.dim());
    for (int i = 0; i < g.dim(); ++i)
        if (x(i) != Scalar(0)) A += x(i) * g.c[i].transpose();
    return A;
}

template <typename Scalar>
Scalar antisymmetry_residual(const LieAlgebra<Scalar>& g)
{
    Scalar r(0);
    for (int i = 0; i < g.dim(); ++i)
        for (int j = 0; j < g.dim(); ++j)
            r = std::max(r, (g.c[i].row(j) + g.c[j].row(i)).cwiseAbs().maxCoeff());
    return r;
}

template <typename Scalar>
Scalar jacobi_residual(const LieAlgebra<Scalar>& g)
{
    Scalar r(0);
    const int n = g.dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
            {
                auto ei = g.basis(i), ej = g.basis(j), ek = g.basis(k);
                LieElement<Scalar> s = bracket(g, ei, bracket(g, ej, ek)) +
                                       bracket(g, ej, bracket(g, ek, ei)) +
                                       bracket(g, ek, bracket(g, ei, ej));
                r = std::max(r, s.cwiseAbs().maxCoeff());
            }
    return r;
}

/// Validated construction; throws InvalidStructure when antisymmetry or Jacobi fail at tol.
template <typename Scalar>
LieAlgebra<Scalar> make_algebra(std::vector<std::string> names, std::vector<MatrixX<Scalar>> c,
                                Scalar tol = Scalar(1e-12))
{
    const int n = static_cast<int>(c.size());
    if (n == 0) throw Error("InvalidStructure", "empty algebra");
    if (static_cast<int>(names.size()) != n) throw Error("InvalidStructure", "names/dim mismatch");
    for (const auto& m : c)
        if (m.rows() != n || m.cols() != n) throw Error("InvalidStructure", "c must be dim^3");
    LieAlgebra<Scalar> g{std::move(names), std::move(c)};
    if (antisymmetry_residual(g) > tol) throw Error("InvalidStructure", "c not antisymmetric");
    if (jacobi_residual(g) > tol) throw Error("InvalidStructure", "Jacobi identity fails");
    return g;
}

/// Monic minimal polynomial of A, coefficients low to high, from the first linear dependency
/// among vec(I), vec(A), vec(A^2), ...
template <typename Scalar>
VectorX<Scalar> minimal_polynomial(const MatrixX<Scalar>& A, Scalar tol = Scalar(1e-10))
{
    const Eigen::Index n = A.rows();
    MatrixX<Scalar> K(n * n, 0);
    MatrixX<Scalar> P = MatrixX<Scalar>::Identity(n, n);
    for (Eigen::Index d = 0; d <= n; ++d)
    {
        Eigen::Map<const VectorX<Scalar>> v(P.data(), n * n);
        if (d > 0)
        {
            VectorX<Scalar> x = K.colPivHouseholderQr().solve(v);
            Scalar scale = std::max(Scalar(1), v.cwiseAbs().maxCoeff());
            if ((K * x - v).cwiseAbs().maxCoeff() <= tol * scale)
            {
                VectorX<Scalar> m(d + 1);
                m.head(d) = -x;
                m(d) = Scalar(1);
                return m;
            }
        }
        K.conservativeResize(Eigen::NoChange, d + 1);
        K.col(d) = v;
        P = (P * A).eval();
    }
    throw Error("Internal", "no polynomial dependency up to degree n");
}

/// Euler test: ad x != 0 and its minimal polynomial divides t^3 - t.
template <typename Scalar>
bool is_euler(const LieAlgebra<Scalar>& g, const LieElement<Scalar>& x, Scalar tol = Scalar(1e-10))
{
    const MatrixX<Scalar> A = ad(g, x);
    if (A.cwiseAbs().maxCoeff() <= tol) return false;
    VectorX<Scalar> m = minimal_polynomial(A, tol);
    if (m.size() > 4) return false;
    // remainder of t^3 - t modulo m
    std::vector<Scalar> r = {Scalar(0), Scalar(-1), Scalar(0), Scalar(1)};
    const int d = static_cast<int>(m.size()) - 1;
    for (int k = 3; k >= d; --k)
    {
        Scalar q = r[k];
        for (int j = 0; j <= d; ++j) r[k - d + j] -= q * m(j);
    }
    for (int k = 0; k < d; ++k)
        if (std::abs(r[k]) > tol) return false;
    return true;
}

template <typename Scalar>
struct EulerStructure
{
    LieElement<Scalar> h;
    std::array<MatrixX<Scalar>, 3> P;  // P[0] = P_{-1}, P[1] = P_0, P[2] = P_{+1}
    MatrixX<Scalar> tau;
    MatrixX<std::complex<Scalar>> zeta;
    std::vector<int> spectrum;  // eigenvalues of ad h with multiplicity, ascending

    const MatrixX<Scalar>& projector(int lambda) const { return P[lambda + 1]; }
};

/// Orthonormal basis (columns) of the column space of M, rank decided at tol.
template <typename Scalar>
MatrixX<Scalar> range_basis(const MatrixX<Scalar>& M, Scalar tol = Scalar(1e-9))
{
    if (M.cols() == 0) return MatrixX<Scalar>(M.rows(), 0);
    Eigen::JacobiSVD<MatrixX<Scalar>> svd(M, Eigen::ComputeThinU);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return svd.matrixU().leftCols(r);
}

/// Orthonormal basis (columns) of ker M.
template <typename Scalar>
MatrixX<Scalar> kernel_basis(const MatrixX<Scalar>& M, Scalar tol = Scalar(1e-9))
{
    Eigen::JacobiSVD<MatrixX<Scalar>> svd(M, Eigen::ComputeFullV);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return svd.matrixV().rightCols(M.cols() - r);
}

template <typename Scalar>
EulerStructure<Scalar> euler_structure(const LieAlgebra<Scalar>& g, const LieElement<Scalar>& h)
{
    if (!is_euler(g, h)) throw Error("NotEuler", "ad h is not a nonzero diagonalizable {-1,0,1} map");
    using C = std::complex<Scalar>;
    const MatrixX<Scalar> A = ad(g, h);
    const MatrixX<Scalar> I = MatrixX<Scalar>::Identity(g.dim(), g.dim());
    EulerStructure<Scalar> es;
    es.h = h;
    for (int lambda = -1; lambda <= 1; ++lambda)
    {
        MatrixX<Scalar> P = I;
        for (int mu = -1; mu <= 1; ++mu)
            if (mu != lambda) P = (P * (A - Scalar(mu) * I) / Scalar(lambda - mu)).eval();
        es.P[lambda + 1] = P;
    }
    es.tau = es.P[1] - es.P[0] - es.P[2];
    const C mi(0, -1);
    es.zeta = es.P[1].template cast<C>() + mi * es.P[2].template cast<C>() -
              mi * es.P[0].template cast<C>();
    for (int lambda = -1; lambda <= 1; ++lambda)
    {
        const int mult = static_cast<int>(std::lround(es.P[lambda + 1].trace()));
        for (int k = 0; k < mult; ++k) es.spectrum.push_back(lambda);
    }
    return es;
}

/// Infinitesimal wedge data: Omega' is a coordinate box in g^{-tau} (default the open unit box
/// (0,1)^m in the orthonormal basis below); Omega = (P_1 - P_{-1}) Omega'.
template <typename Scalar>
struct WedgeData
{
    MatrixX<Scalar> omega_prime_basis;
    MatrixX<Scalar> omega_basis;
    MatrixX<Scalar> centralizer_basis;
    VectorX<Scalar> box_lo, box_hi;
};

template <typename Scalar>
WedgeData<Scalar> wedge_data(const LieAlgebra<Scalar>& g, const EulerStructure<Scalar>& es)
{
    WedgeData<Scalar> w;
    w.omega_prime_basis = range_basis<Scalar>(es.P[0] + es.P[2]);
    w.omega_basis = (es.P[2] - es.P[0]) * w.omega_prime_basis;
    w.centralizer_basis = kernel_basis<Scalar>(ad(g, es.h));
    w.box_lo = VectorX<Scalar>::Zero(w.omega_prime_basis.cols());
    w.box_hi = VectorX<Scalar>::Ones(w.omega_prime_basis.cols());
    return w;
}

/// Basis (columns) of [a, b] for subspaces given by column bases.
template <typename Scalar>
MatrixX<Scalar> bracket_span(const LieAlgebra<Scalar>& g, const MatrixX<Scalar>& a,
                             const MatrixX<Scalar>& b)
{
    MatrixX<Scalar> S(g.dim(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.cols(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            S.col(i * b.cols() + j) = bracket<Scalar>(g, a.col(i), b.col(j));
    return range_basis<Scalar>(S);
}

/// Dimensions of g, [g,g], [[g,g],[g,g]], ... until it stabilizes.
template <typename Scalar>
std::vector<int> derived_series_dims(const LieAlgebra<Scalar>& g)
{
    MatrixX<Scalar> D = MatrixX<Scalar>::Identity(g.dim(), g.dim());
    std::vector<int> dims = {g.dim()};
    while (true)
    {
        MatrixX<Scalar> next = bracket_span<Scalar>(g, D, D);
        dims.push_back(static_cast<int>(next.cols()));
        if (next.cols() == 0 || next.cols() == D.cols()) break;
        D = next;
    }
    return dims;
}

template <typename Scalar>
bool is_solvable(const LieAlgebra<Scalar>& g)
{
    return derived_series_dims(g).back() == 0;
}

/// Codimension-one ideal n with [g,g] in n and h not in n, for solvable g and non-central Euler h.
template <typename Scalar>
MatrixX<Scalar> solvable_splitting(const LieAlgebra<Scalar>& g, const LieElement<Scalar>& h,
                                   Scalar tol = Scalar(1e-12))
{
    if (!is_solvable(g)) throw Error("NotSolvable", "derived series does not reach 0");
    if (ad(g, h).cwiseAbs().maxCoeff() <= tol) throw Error("CentralElement", "ad h = 0");
    if (!is_euler(g, h)) throw Error("NotEuler", "h is not an Euler element");
    const MatrixX<Scalar> I = MatrixX<Scalar>::Identity(g.dim(), g.dim());
    const MatrixX<Scalar> D = bracket_span<Scalar>(g, I, I);
    const LieElement<Scalar> w = h - D * (D.transpose() * h);
    if (w.norm() <= Scalar(1e-9)) throw Error("Internal", "h lies in [g,g]");
    MatrixX<Scalar> n = kernel_basis<Scalar>(w.transpose());
    for (Eigen::Index i = 0; i < g.dim(); ++i)
        for (Eigen::Index j = 0; j < n.cols(); ++j)
        {
            LieElement<Scalar> v = bracket<Scalar>(g, g.basis(static_cast<int>(i)), n.col(j));
            if ((v - n * (n.transpose() * v)).cwiseAbs().maxCoeff() > Scalar(1e-10))
                throw Error("Internal", "splitting is not an ideal");
        }
    return n;
}

/// {v : rho(n) v = 0 for all n}, as orthonormal columns.
template <typename Scalar>
MatrixX<Scalar> fixed_subspace(const std::vector<MatrixX<Scalar>>& rho_n, int dim)
{
    if (rho_n.empty()) return MatrixX<Scalar>::Identity(dim, dim);
    MatrixX<Scalar> S(dim * static_cast<int>(rho_n.size()), dim);
    for (size_t i = 0; i < rho_n.size(); ++i) S.middleRows(i * dim, dim) = rho_n[i];
    return kernel_basis<Scalar>(S);
}

/// Max distance of rho(x) W from W over the given operators.
template <typename Scalar>
Scalar invariance_residual(const MatrixX<Scalar>& W, const std::vector<MatrixX<Scalar>>& rho)
{
    Scalar r(0);
    for (const auto& R : rho)
    {
        MatrixX<Scalar> img = R * W;
        r = std::max(r, (img - W * (W.transpose() * img)).cwiseAbs().maxCoeff());
    }
    return r;
}

// Built-in algebras.
struct CatalogEntry
{
    LieAlgebra<double> algebra;
    std::map<std::string, LieElement<double>> elements;  // named elements (h, q, p, z, x, ...)
    std::map<std::string, Eigen::MatrixXd> matrices;      // matrix realization when available
};

CatalogEntry catalog(const std::string& name);
std::vector<std::string> catalog_names();

/// Structure constants of the span of linearly independent matrices closed under commutator.
LieAlgebra<double> algebra_from_matrices(const std::vector<std::string>& names,
                                         const std::vector<Eigen::MatrixXd>& basis);

/// Coordinates of a matrix in the given matrix basis (least squares, exact for members).
LieElement<double> matrix_coordinates(const std::vector<Eigen::MatrixXd>& basis,
                                      const Eigen::MatrixXd& m);

/// true iff the h-coordinate is +-1 (tol 1e-10); algebra must be the split oscillator.
bool classify_euler_split_oscillator(const LieAlgebra<double>& g, const LieElement<double>& x);

}  // namespace crownlab
