#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "chanmom/localized.hpp"
#include "chanmom/types.hpp"

namespace chanmom {

// k = 1 transfer matrix of a Haar, cHaar or Depolarize ensemble.
TransferMatrix transfer(const EnsembleSpec& spec, BasisTag::Kind basis = BasisTag::Kind::Permutation);
// tau (X tau)^{k-1}
TransferMatrix concatenate(const TransferMatrix& tau, const Gram& gram, int k);
// transfer(spec) concatenated spec.k times
TransferMatrix transfer_k(const EnsembleSpec& spec, BasisTag::Kind basis = BasisTag::Kind::Permutation);

// Closed-form localized transfer of k concatenated t=2 cHaar ensembles, order (e, tau).
TransferMatrix exact_t2_chaar(int k, long d, long dE);

Rational norm_squared(const TransferMatrix& tau, const Gram& gram);
Rational trace(const TransferMatrix& tau, const Gram& gram);
double norm_squared_f(const Eigen::MatrixXd& tau, const Eigen::MatrixXd& gram);
double trace_f(const Eigen::MatrixXd& tau, const Eigen::MatrixXd& gram);

struct SpectralReport {
    std::vector<std::complex<double>> eigenvalues;  // descending modulus
    Eigen::VectorXd leading_right;                  // normalized to 1 at the identity
    Eigen::VectorXd leading_left;                   // normalized to unit max-norm
    std::vector<double> residuals;                  // per eigenpair, relative
    double psi_residual = 0.0;                      // |tau X psi - psi|_inf with psi = (d dE)^{-|sigma|}
};

SpectralReport spectrum(const EnsembleSpec& spec);

double design_distance_depolarize(const EnsembleSpec& spec);

struct HierarchyRow {
    int t = 0;
    int k = 0;
    long d = 0;
    long dE = 0;
    Rational norm2;
    Rational trace;
    double eps_dep = 0.0;
    std::vector<std::string> flags;
};

struct HierarchyResult {
    std::vector<HierarchyRow> rows;
    std::vector<std::string> skipped;     // grid points violating d*dE >= t
    std::size_t bound_violations = 0;
    std::size_t de_monotonicity_flags = 0;
    std::size_t k_monotonicity_flags = 0;
};

HierarchyResult hierarchy_scan(const std::vector<int>& t_list, const std::vector<int>& k_list, const std::vector<long>& d_list,
                               const std::vector<DERule>& de_rules, int threads = 1);

struct InvarianceCheck {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
};

std::vector<InvarianceCheck> invariance_checks(const EnsembleSpec& a, const EnsembleSpec& b);

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t samples = 0;
};

// Monte-Carlo estimate of the squared moment-operator norm from sampled channel pairs.
McEstimate frame_potential_mc(const EnsembleSpec& spec, std::size_t samples, std::uint64_t seed, int threads = 1);

}  // namespace chanmom
