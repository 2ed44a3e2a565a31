#include "crownlab/lie.hpp"

namespace crownlab
{

namespace
{

using Eigen::MatrixXd;

MatrixXd E(int i, int j, int n = 3)
{
    MatrixXd m = MatrixXd::Zero(n, n);
    m(i - 1, j - 1) = 1.0;
    return m;
}

// [e_i, e_j] = sum_k c[i](j,k) e_k from a list of (i, j, k, value) relations.
LieAlgebra<double> from_relations(std::vector<std::string> names,
                                  const std::vector<std::tuple<int, int, int, double>>& rel)
{
    const int n = static_cast<int>(names.size());
    std::vector<MatrixXd> c(n, MatrixXd::Zero(n, n));
    for (auto [i, j, k, v] : rel)
    {
        c[i](j, k) += v;
        c[j](i, k) -= v;
    }
    return make_algebra<double>(std::move(names), std::move(c));
}

}  // namespace

LieElement<double> matrix_coordinates(const std::vector<MatrixXd>& basis, const MatrixXd& m)
{
    const Eigen::Index n2 = m.size();
    MatrixXd B(n2, basis.size());
    for (size_t i = 0; i < basis.size(); ++i) B.col(i) = Eigen::Map<const Eigen::VectorXd>(basis[i].data(), n2);
    return B.colPivHouseholderQr().solve(Eigen::Map<const Eigen::VectorXd>(m.data(), n2));
}

LieAlgebra<double> algebra_from_matrices(const std::vector<std::string>& names,
                                         const std::vector<MatrixXd>& basis)
{
    const int n = static_cast<int>(basis.size());
    std::vector<MatrixXd> c(n, MatrixXd::Zero(n, n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
        {
            MatrixXd comm = basis[i] * basis[j] - basis[j] * basis[i];
            Eigen::VectorXd x = matrix_coordinates(basis, comm);
            MatrixXd back = MatrixXd::Zero(comm.rows(), comm.cols());
            for (int k = 0; k < n; ++k) back += x(k) * basis[k];
            if ((back - comm).cwiseAbs().maxCoeff() > 1e-12)
                throw Error("InvalidStructure", "matrix span not closed under commutator");
            c[i].row(j) = x.transpose();
        }
    return make_algebra<double>(names, std::move(c));
}

std::vector<std::string> catalog_names()
{
    return {"aff", "sl2", "heis", "split_oscillator", "sl3"};
}

CatalogEntry catalog(const std::string& name)
{
    CatalogEntry e;
    if (name == "aff")
    {
        // basis (x, h), [h,x] = x
        e.algebra = from_relations({"x", "h"}, {{1, 0, 0, 1.0}});
        e.elements["x"] = e.algebra.basis(0);
        e.elements["h"] = e.algebra.basis(1);
    }
    else if (name == "sl2")
    {
        MatrixXd h = 0.5 * (E(1, 1, 2) - E(2, 2, 2));
        std::vector<MatrixXd> basis = {h, E(1, 2, 2), E(2, 1, 2)};
        e.algebra = algebra_from_matrices({"h", "e", "f"}, basis);
        e.matrices = {{"h", basis[0]}, {"e", basis[1]}, {"f", basis[2]}};
        for (int i = 0; i < 3; ++i) e.elements[e.algebra.names[i]] = e.algebra.basis(i);
    }
    else if (name == "heis")
    {
        // basis (z, q, p), [q,p] = z
        e.algebra = from_relations({"z", "q", "p"}, {{1, 2, 0, 1.0}});
        for (int i = 0; i < 3; ++i) e.elements[e.algebra.names[i]] = e.algebra.basis(i);
    }
    else if (name == "split_oscillator")
    {
        // basis (z, q, p, h): [q,p] = z, [h,q] = q, [h,p] = -p, [h,z] = 0
        e.algebra = from_relations({"z", "q", "p", "h"},
                                   {{1, 2, 0, 1.0}, {3, 1, 1, 1.0}, {3, 2, 2, -1.0}});
        for (int i = 0; i < 4; ++i) e.elements[e.algebra.names[i]] = e.algebra.basis(i);
    }
    else if (name == "sl3")
    {
        std::vector<MatrixXd> basis = {E(1, 2), E(1, 3), E(2, 1), E(2, 3),
                                       E(3, 1), E(3, 2), E(1, 1) - E(2, 2), E(2, 2) - E(3, 3)};
        e.algebra = algebra_from_matrices(
            {"E12", "E13", "E21", "E23", "E31", "E32", "H12", "H23"}, basis);
        for (int i = 0; i < 8; ++i) e.matrices[e.algebra.names[i]] = basis[i];
        // split oscillator inside sl3
        MatrixXd h = MatrixXd::Zero(3, 3);
        h.diagonal() << 1.0 / 3.0, -2.0 / 3.0, 1.0 / 3.0;
        const std::map<std::string, MatrixXd> osc = {{"h", h}, {"q", E(1, 2)}, {"p", E(2, 3)}, {"z", E(1, 3)}};
        for (const auto& [k, m] : osc)
        {
            e.matrices[k] = m;
            e.elements[k] = matrix_coordinates(basis, m);
        }
    }
    else
    {
        throw Error("UnknownAlgebra", name);
    }
    return e;
}

bool classify_euler_split_oscillator(const LieAlgebra<double>& g, const LieElement<double>& x)
{
    static const LieAlgebra<double> ref = catalog("split_oscillator").algebra;
    bool same = g.dim() == ref.dim() && g.names == ref.names;
    for (int i = 0; same && i < g.dim(); ++i) same = (g.c[i] - ref.c[i]).cwiseAbs().maxCoeff() <= 1e-12;
    if (!same) throw Error("WrongAlgebra", "expected the split oscillator with basis (z,q,p,h)");
    if (x.size() != 4) throw Error("DimensionMismatch", "element length");
    return std::abs(std::abs(x(3)) - 1.0) <= 1e-10;
}

}  // namespace crownlab
