#pragma once

#include <Eigen/Dense>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "chanmom/types.hpp"

namespace chanmom {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct IncompleteKraus : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CPViolation : std::runtime_error {
    double min_eigenvalue;
    CPViolation(const std::string& msg, double ev) : std::runtime_error(msg), min_eigenvalue(ev) {}
};

struct KrausSet {
    std::vector<CMatrix> ops;

    Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }
    // max-abs deviation of sum K^dagger K from the identity
    double completeness_error() const;
};

// Row-major flattening: |a><b| -> |ab>>.
CVector vectorize(const CMatrix& x);
CMatrix unvectorize(const CVector& v, Eigen::Index dim);

CMatrix kron(const CMatrix& a, const CMatrix& b);

CMatrix apply_channel(const KrausSet& k, const CMatrix& rho);

// Superoperator of the t-fold tensor power of the channel: sum over Kraus tuples of K..K (x) K*..K*.
CMatrix kraus_to_super(const KrausSet& k, int t, double tol = 1e-12);
// Reorders the tensor power of a single-copy superoperator into the t-copy row-major layout.
CMatrix tensor_power_super(const CMatrix& s1, Eigen::Index d, int t);

KrausSet identity_channel(Eigen::Index d);
KrausSet depolarizing_channel(Eigen::Index d);
KrausSet standard_noise(NoiseKind kind, double gamma);

bool is_trace_preserving(const CMatrix& super, Eigen::Index dim, double tol = 1e-12);
bool is_unital(const CMatrix& super, Eigen::Index dim, double tol = 1e-12);

// Single-qubit Paulis indexed I, X, Y, Z.
CMatrix pauli(char label);
// Tensor product of labels over {I,X,Y,Z}; labels[0] is the most significant qubit.
CMatrix pauli_string(int n, const std::string& labels);
// All 4^n labels, identity first, in base-4 order I < X < Y < Z.
std::vector<std::string> pauli_labels(int n);

// Pauli transfer R(P,S) = Tr[P Lambda(S)] / d over pauli_labels(n).
Eigen::MatrixXd pauli_transfer(const KrausSet& k, int n);
Eigen::MatrixXd pauli_transfer_from_super(const CMatrix& super, int n);

// Structured noise: unit (I,I) entry, diagonal 1 - gamma(P), first column eta(P), all else zero.
struct NoiseModel {
    int n = 1;
    std::map<std::string, double> gamma;
    std::map<std::string, double> eta;

    long d() const { return 1L << n; }
    static NoiseModel uniform(int n, double gamma, double eta = 0.0, const std::string& eta_label = "");
};

Eigen::MatrixXd noise_transfer(const NoiseModel& m);
// Choi matrix of a single-copy superoperator, normalized to unit trace for channels.
CMatrix choi_matrix(const CMatrix& super, Eigen::Index d);
double min_choi_eigenvalue(const CMatrix& super, Eigen::Index d);

struct NoiseSuper {
    CMatrix super;              // t-fold superoperator
    Eigen::MatrixXd transfer;   // t-fold Pauli-basis transfer, strings in tensor order
};

// Throws CPViolation when the single-copy Choi matrix has an eigenvalue below -tol.
NoiseSuper noise_model_super(const NoiseModel& m, int t, double tol = 1e-10);

}  // namespace chanmom
