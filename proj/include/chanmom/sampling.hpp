#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

namespace chanmom {

using Rng = std::mt19937_64;

// Haar-distributed isometry (first `cols` columns of a Haar unitary) via QR of a complex Gaussian matrix.
Eigen::MatrixXcd haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng);
Eigen::MatrixXcd haar_unitary(Eigen::Index dim, Rng& rng);

// Stinespring Kraus operators of a channel drawn from the cHaar ensemble (system d, environment dE).
std::vector<Eigen::MatrixXcd> chaar_kraus(Eigen::Index d, Eigen::Index dE, Rng& rng);

// Running mean / variance accumulator.
struct Welford {
    std::size_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const Welford& o);
    double variance() const { return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0; }
    double stderr_() const;
};

// Splits `samples` over `threads` workers with seeds seed + worker index; merged in worker order.
Welford parallel_sample(std::size_t samples, std::uint64_t seed, int threads, const std::function<double(Rng&)>& draw);
// Same partition, returning the draws in worker order.
std::vector<double> parallel_draws(std::size_t samples, std::uint64_t seed, int threads, const std::function<double(Rng&)>& draw);

}  // namespace chanmom
