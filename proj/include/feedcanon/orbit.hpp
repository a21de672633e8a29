#pragma once

#include "feedcanon/matrix.hpp"
#include "feedcanon/pairs.hpp"
#include "feedcanon/triples.hpp"

namespace feedcanon {

/// Dimensions of the group action at one point. The stabilizer is the
/// corank of the linearized action within the group; rigid means the
/// orbit fills the ambient space.
struct OrbitReport {
    int m = 0;
    int n = 0;
    int ambient_dim = 0;     // m(n+2m) for triples, m(n+m) for pairs
    int group_dim = 0;       // m^2+n^2+2mn for triples, m^2+n^2+mn for pairs
    int orbit_dim = 0;
    int stabilizer_dim = 0;
    bool rigid = false;
};

/// Differential of the action at the identity, with parameter directions
/// ordered (S., P., U., V.), each vectorized row-major, and rows stacked
/// as (vec dC, vec dB, vec dA):
///   dC = C P. - S. C,  dB = C V. + B S. - S. B,  dA = C U. + A S. - S. A.
template <class T>
Matrix<T> tangent_jacobian(const MatrixTripleT<T>& t);

/// Pair analogue with parameters (S., P., U.):
///   dB = B P. - S. B,  dA = B U. + A S. - S. A.
template <class T>
Matrix<T> pair_tangent_jacobian(const MatrixPairT<T>& p);

OrbitReport orbit_dimension(const TripleX& t);
OrbitReport orbit_dimension(const TripleF& t, double tol);
OrbitReport pair_orbit_dimension(const PairX& p);
OrbitReport pair_orbit_dimension(const PairF& p, double tol);

}  // namespace feedcanon
