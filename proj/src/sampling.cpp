#include "chanmom/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace chanmom {

Eigen::MatrixXcd haar_isometry(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd z(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) {
            const double re = g(rng);
            const double im = g(rng);
            z(i, j) = {re, im};
        }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols);
    const Eigen::MatrixXcd& r = qr.matrixQR();
    for (Eigen::Index j = 0; j < cols; ++j) {
        const std::complex<double> rjj = r(j, j);
        const double a = std::abs(rjj);
        if (a > 0) q.col(j) *= rjj / a;
    }
    return q;
}

Eigen::MatrixXcd haar_unitary(Eigen::Index dim, Rng& rng) { return haar_isometry(dim, dim, rng); }

std::vector<Eigen::MatrixXcd> chaar_kraus(Eigen::Index d, Eigen::Index dE, Rng& rng) {
    // V|psi> = U(|psi> ⊗ |0>); row index of V is s * dE + a
    const Eigen::MatrixXcd v = haar_isometry(d * dE, d, rng);
    std::vector<Eigen::MatrixXcd> kraus(static_cast<std::size_t>(dE), Eigen::MatrixXcd(d, d));
    for (Eigen::Index a = 0; a < dE; ++a)
        for (Eigen::Index s = 0; s < d; ++s) kraus[static_cast<std::size_t>(a)].row(s) = v.row(s * dE + a);
    return kraus;
}

void Welford::add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
}

void Welford::merge(const Welford& o) {
    if (o.n == 0) return;
    if (n == 0) {
        *this = o;
        return;
    }
    const double total = static_cast<double>(n + o.n);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.n) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
}

double Welford::stderr_() const { return n > 1 ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }

Welford parallel_sample(std::size_t samples, std::uint64_t seed, int threads, const std::function<double(Rng&)>& draw) {
    const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    std::vector<Welford> parts(workers);
    auto run = [&](std::size_t w) {
        Rng rng(seed + w);
        const std::size_t begin = samples * w / workers;
        const std::size_t end = samples * (w + 1) / workers;
        for (std::size_t i = begin; i < end; ++i) parts[w].add(draw(rng));
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    Welford total;
    for (const auto& p : parts) total.merge(p);
    return total;
}

std::vector<double> parallel_draws(std::size_t samples, std::uint64_t seed, int threads, const std::function<double(Rng&)>& draw) {
    const std::size_t workers = static_cast<std::size_t>(std::max(1, threads));
    std::vector<double> out(samples);
    auto run = [&](std::size_t w) {
        Rng rng(seed + w);
        for (std::size_t i = samples * w / workers; i < samples * (w + 1) / workers; ++i) out[i] = draw(rng);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
        for (auto& th : pool) th.join();
    }
    return out;
}

}  // namespace chanmom
