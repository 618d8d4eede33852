#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chanmom/channels.hpp"
#include "chanmom/types.hpp"

namespace chanmom {

struct ResourceCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonInvolutory : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Pauli string on n qubits as bit masks; qubit 0 is the most significant bit.
struct PauliMonomial {
    int n = 0;
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    static PauliMonomial from_labels(const std::string& labels);
    std::string labels() const;
    CMatrix matrix() const;
    std::uint64_t support() const { return x | z; }
    // G (x) I and I (x) G on 2n qubits (first copy in the high bits), and G (x) G.
    PauliMonomial first_copy() const;
    PauliMonomial second_copy() const;
    PauliMonomial both_copies() const;
};

CMatrix pauli_left(const PauliMonomial& p, const CMatrix& m);
CMatrix pauli_right(const CMatrix& m, const PauliMonomial& p);

// Average of exp(-i theta G) X exp(i theta G) over uniform theta, for an involutory G.
CMatrix gate_twirl_t1(const CMatrix& x, const CMatrix& g);
CMatrix gate_twirl_t1(const CMatrix& x, const PauliMonomial& g);
// Same average for the two-copy conjugation by exp(-i theta G) (x) exp(-i theta G).
CMatrix gate_twirl_t2(const CMatrix& x, const CMatrix& g);
CMatrix gate_twirl_t2(const CMatrix& x, const PauliMonomial& g);

std::vector<PauliMonomial> circuit_generators(int n, Ansatz ansatz);
CMatrix initial_state(int n, InitialState s);

// Applies a single-qubit Kraus channel to qubit `bit` (0 = most significant) of a 2^m-dimensional operator.
void apply_qubit_channel(CMatrix& m, const KrausSet& k, int num_qubits, int qubit);

struct EvolveResult {
    std::vector<double> purities;  // after each layer
    CMatrix state;                 // two-copy state after the last layer
};

EvolveResult evolve(const CircuitSpec& spec);

struct ReferencePurities {
    double depolarize = 0.0;
    double haar = 0.0;
    double chaar = 0.0;
};

// Purities of the averaged two-copy output on a pure input, d = 2^n.
ReferencePurities reference_purities(int n, long dE);
// Coefficients (a, b) of E[rho' (x) rho'] = a I + b S for the cHaar ensemble.
std::pair<double, double> chaar_two_copy_coefficients(double d, double dE, double tr, double tr2);

enum class CompositeKind { HaarUnitaries, SingleGenerator };

// Squared HS norm of (N^{(x)t} T)^k with T the t-th moment operator of the unitary component.
double composite_noise_norm(CompositeKind kind, const NoiseModel& noise, int t, int k, const std::string& generator = "");

struct ReferenceKind {
    enum class Kind { Haar, CHaar, Depolarize };
    Kind kind = Kind::Haar;
    long dE = 1;
};

struct MomentValues {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
};

MomentValues variance_reference(const CMatrix& rho, const CMatrix& o, const ReferenceKind& ref);

struct MomentEstimate {
    double mean = 0.0;
    double mean_err = 0.0;
    double second_moment = 0.0;
    double second_err = 0.0;
    double variance = 0.0;
    double variance_err = 0.0;
    std::size_t samples = 0;
};

// Sample statistics of Tr[Lambda(rho) O] for channels drawn from the ensemble.
MomentEstimate mc_expectation_moments(const EnsembleSpec& spec, const CMatrix& rho, const CMatrix& o, std::size_t samples,
                                      std::uint64_t seed, int threads = 1);

// One noisy circuit run with sampled angles applied to a single-copy density matrix.
CMatrix run_noisy_circuit(const CircuitSpec& spec, const std::vector<double>& thetas, const CMatrix& rho);

// E[Tr[rho' O]^2] from the exact two-copy evolution.
double exact_second_moment(const CircuitSpec& spec, const CMatrix& o);

}  // namespace chanmom
