#include "feedcanon/orbit.hpp"

#include "feedcanon/exact_linalg.hpp"
#include "feedcanon/float_linalg.hpp"

namespace feedcanon {

template <class T>
Matrix<T> tangent_jacobian(const MatrixTripleT<T>& t) {
    const int m = t.m(), n = t.n();
    const int cols = m * m + n * n + 2 * n * m;
    Matrix<T> j(m * (n + 2 * m), cols);
    const Matrix<T> im = Matrix<T>::identity(m);
    const Matrix<T> in = Matrix<T>::identity(n);
    const int off_p = m * m, off_u = m * m + n * n, off_v = off_u + n * m;
    // dC
    j.set_block(0, 0, -kron(im, t.C.transpose()));
    j.set_block(0, off_p, kron(t.C, in));
    // dB
    j.set_block(m * n, 0, kron(t.B, im) - kron(im, t.B.transpose()));
    j.set_block(m * n, off_v, kron(t.C, im));
    // dA
    j.set_block(m * n + m * m, 0, kron(t.A, im) - kron(im, t.A.transpose()));
    j.set_block(m * n + m * m, off_u, kron(t.C, im));
    return j;
}

template <class T>
Matrix<T> pair_tangent_jacobian(const MatrixPairT<T>& p) {
    const int m = p.m(), n = p.n();
    const int cols = m * m + n * n + n * m;
    Matrix<T> j(m * (n + m), cols);
    const Matrix<T> im = Matrix<T>::identity(m);
    const Matrix<T> in = Matrix<T>::identity(n);
    // dB
    j.set_block(0, 0, -kron(im, p.B.transpose()));
    j.set_block(0, m * m, kron(p.B, in));
    // dA
    j.set_block(m * n, 0, kron(p.A, im) - kron(im, p.A.transpose()));
    j.set_block(m * n, m * m + n * n, kron(p.B, im));
    return j;
}

namespace {

OrbitReport make_report(int m, int n, int ambient, int group, int rank) {
    OrbitReport r;
    r.m = m;
    r.n = n;
    r.ambient_dim = ambient;
    r.group_dim = group;
    r.orbit_dim = rank;
    r.stabilizer_dim = group - rank;
    r.rigid = rank == ambient;
    return r;
}

}  // namespace

OrbitReport orbit_dimension(const TripleX& t) {
    const int m = t.m(), n = t.n();
    return make_report(m, n, m * (n + 2 * m), m * m + n * n + 2 * n * m,
                       exact_rank(tangent_jacobian(t)));
}

OrbitReport orbit_dimension(const TripleF& t, double tol) {
    const int m = t.m(), n = t.n();
    return make_report(m, n, m * (n + 2 * m), m * m + n * n + 2 * n * m,
                       numeric_rank(tangent_jacobian(t), tol));
}

OrbitReport pair_orbit_dimension(const PairX& p) {
    const int m = p.m(), n = p.n();
    return make_report(m, n, m * (n + m), m * m + n * n + n * m,
                       exact_rank(pair_tangent_jacobian(p)));
}

OrbitReport pair_orbit_dimension(const PairF& p, double tol) {
    const int m = p.m(), n = p.n();
    return make_report(m, n, m * (n + m), m * m + n * n + n * m,
                       numeric_rank(pair_tangent_jacobian(p), tol));
}

template Matrix<Rat> tangent_jacobian(const MatrixTripleT<Rat>&);
template Matrix<Cplx> tangent_jacobian(const MatrixTripleT<Cplx>&);
template Matrix<Rat> pair_tangent_jacobian(const MatrixPairT<Rat>&);
template Matrix<Cplx> pair_tangent_jacobian(const MatrixPairT<Cplx>&);

}  // namespace feedcanon
