#pragma once

// Seeded generators and brute-force oracles shared by the unit tests.

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <map>
#include <queue>
#include <random>
#include <vector>

#include "chanmom/exact_matrix.hpp"
#include "chanmom/symmgroup.hpp"

namespace testsupport {

using chanmom::Permutation;
using chanmom::Rational;
using CMatrix = Eigen::MatrixXcd;

inline Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(20240611);
    return g;
}

inline Permutation random_permutation(int t, std::mt19937_64& g = rng()) {
    std::vector<int> img(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) img[static_cast<std::size_t>(i)] = i;
    std::shuffle(img.begin(), img.end(), g);
    return Permutation(img);
}

inline CMatrix random_complex(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& g = rng()) {
    std::normal_distribution<double> n(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = {n(g), n(g)};
    return m;
}

inline CMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& g = rng()) {
    const CMatrix a = random_complex(dim, dim, g);
    return (a + a.adjoint()) / 2.0;
}

inline CMatrix random_state(Eigen::Index dim, std::mt19937_64& g = rng()) {
    const CMatrix a = random_complex(dim, dim, g);
    CMatrix rho = a * a.adjoint();
    return rho / rho.trace();
}

// Minimal number of transpositions by breadth-first search on the Cayley graph.
inline int bfs_transposition_distance(const Permutation& sigma) {
    const int t = sigma.t();
    std::map<std::vector<int>, int> dist;
    std::queue<std::vector<int>> q;
    std::vector<int> id(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) id[static_cast<std::size_t>(i)] = i;
    dist[id] = 0;
    q.push(id);
    while (!q.empty()) {
        auto cur = q.front();
        q.pop();
        if (cur == sigma.images()) return dist[cur];
        for (int a = 0; a < t; ++a)
            for (int b = a + 1; b < t; ++b) {
                auto nxt = cur;
                std::swap(nxt[static_cast<std::size_t>(a)], nxt[static_cast<std::size_t>(b)]);
                if (!dist.count(nxt)) {
                    dist[nxt] = dist[cur] + 1;
                    q.push(nxt);
                }
            }
    }
    return -1;
}

inline std::vector<Permutation> all_permutations(int t) {
    std::vector<int> img(static_cast<std::size_t>(t));
    for (int i = 0; i < t; ++i) img[static_cast<std::size_t>(i)] = i;
    std::vector<Permutation> out;
    do out.emplace_back(img);
    while (std::next_permutation(img.begin(), img.end()));
    return out;
}

// Plain Gauss-Jordan inverse over rationals, an independent route to the Weingarten matrix.
inline chanmom::ExactMatrix gauss_jordan_inverse(const chanmom::ExactMatrix& a) {
    const std::size_t n = a.rows();
    chanmom::ExactMatrix m = a;
    chanmom::ExactMatrix inv = chanmom::ExactMatrix::identity(n);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == 0) ++p;
        if (p == n) throw std::runtime_error("singular");
        for (std::size_t j = 0; j < n; ++j) {
            std::swap(m(p, j), m(c, j));
            std::swap(inv(p, j), inv(c, j));
        }
        const Rational piv = m(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            m(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m(r, c) == 0) continue;
            const Rational f = m(r, c);
            for (std::size_t j = 0; j < n; ++j) {
                m(r, j) -= f * m(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

// Operator on (C^d)^{(x)t}: output slot sigma(j) carries input slot j.
inline CMatrix permutation_matrix(const Permutation& sigma, Eigen::Index d) {
    const int t = sigma.t();
    Eigen::Index dt = 1;
    for (int i = 0; i < t; ++i) dt *= d;
    CMatrix p = CMatrix::Zero(dt, dt);
    std::vector<Eigen::Index> in(static_cast<std::size_t>(t)), out(static_cast<std::size_t>(t));
    for (Eigen::Index col = 0; col < dt; ++col) {
        Eigen::Index x = col;
        for (int j = t - 1; j >= 0; --j, x /= d) in[static_cast<std::size_t>(j)] = x % d;
        for (int j = 0; j < t; ++j) out[static_cast<std::size_t>(sigma[j])] = in[static_cast<std::size_t>(j)];
        Eigen::Index row = 0;
        for (int j = 0; j < t; ++j) row = row * d + out[static_cast<std::size_t>(j)];
        p(row, col) = 1.0;
    }
    return p;
}

inline CMatrix kron2(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace testsupport
