#include "feedcanon/float_linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "feedcanon/exact_linalg.hpp"

namespace feedcanon {

namespace {

Eigen::MatrixXcd to_eigen(const MatF& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

MatF from_eigen(const Eigen::MatrixXcd& e) {
    MatF m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
    for (int i = 0; i < e.rows(); ++i)
        for (int j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

}  // namespace

bool all_finite(const MatF& m) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

std::vector<double> singular_values(const MatF& m) {
    if (m.empty()) return {};
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(to_eigen(m));
    const auto& s = dec.singularValues();
    return {s.data(), s.data() + s.size()};
}

int numeric_rank(const MatF& m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("numeric_rank: tol must be positive");
    if (!all_finite(m)) throw std::invalid_argument("numeric_rank: non-finite entries");
    if (m.empty()) return 0;
    const std::vector<double> s = singular_values(m);
    if (s.empty() || s.front() == 0.0) return 0;
    int r = 0;
    for (double v : s)
        if (v > tol * s.front()) ++r;
    return r;
}

Svd svd(const MatF& m) {
    Svd out;
    if (m.empty()) {
        out.U = MatF::identity(m.rows());
        out.V = MatF::identity(m.cols());
        return out;
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> dec(to_eigen(m), Eigen::ComputeFullU | Eigen::ComputeFullV);
    out.U = from_eigen(dec.matrixU());
    out.V = from_eigen(dec.matrixV());
    const auto& s = dec.singularValues();
    out.sigma.assign(s.data(), s.data() + s.size());
    return out;
}

MatF solve(const MatF& a, const MatF& b) {
    if (a.rows() != a.cols()) throw std::invalid_argument("solve: matrix not square");
    if (a.rows() != b.rows()) throw std::invalid_argument("solve: shape mismatch");
    if (a.rows() == 0) return MatF(0, b.cols());
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(to_eigen(a));
    if (!lu.isInvertible()) throw SingularMatrixError("solve: numerically singular matrix");
    return from_eigen(lu.solve(to_eigen(b)));
}

MatF inverse(const MatF& a) { return solve(a, MatF::identity(a.rows())); }

bool is_invertible(const MatF& a) {
    if (a.rows() != a.cols()) return false;
    if (a.rows() == 0) return true;
    return Eigen::FullPivLU<Eigen::MatrixXcd>(to_eigen(a)).isInvertible();
}

Eig eigendecompose(const MatF& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("eigendecompose: matrix not square");
    Eig out;
    if (m.rows() == 0) {
        out.vectors = MatF(0, 0);
        return out;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), true);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigendecompose: did not converge");
    const auto& v = es.eigenvalues();
    out.values.assign(v.data(), v.data() + v.size());
    out.vectors = from_eigen(es.eigenvectors());
    return out;
}

}  // namespace feedcanon
