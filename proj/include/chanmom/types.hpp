#pragma once

#include <Eigen/Dense>

#include <string>

#include "chanmom/exact_matrix.hpp"

namespace chanmom {

enum class Ansatz { HEA, MAT };
enum class NoiseKind { None, BitFlip, Dephasing, LocalDepolarizing, AmplitudeDamping };
enum class InitialState { ZeroState, PlusState };

struct CircuitSpec {
    int n = 3;
    Ansatz ansatz = Ansatz::HEA;
    int layers = 30;
    NoiseKind noise = NoiseKind::None;
    double gamma = 0.0;
    InitialState initial = InitialState::ZeroState;
    bool full_register_noise = false;  // noise on every qubit after each gate instead of the gate's support
    int max_qubits = 5;
};

CircuitSpec default_circuit(int n, Ansatz ansatz, int layers, NoiseKind noise, double gamma);

struct EnsembleSpec {
    enum class Kind { Haar, CHaar, Depolarize, NoisyCircuit };
    Kind kind = Kind::Haar;
    int t = 2;
    long d = 2;
    long dE = 1;
    int k = 1;
    CircuitSpec circuit;

    static EnsembleSpec haar(int t, long d, int k = 1);
    static EnsembleSpec chaar(int t, long d, long dE, int k = 1);
    static EnsembleSpec depolarize(int t, long d, int k = 1);
    static EnsembleSpec noisy_circuit(const CircuitSpec& c, int t = 2, int k = 1);

    bool unital() const { return kind == Kind::Haar || kind == Kind::Depolarize || (kind == Kind::CHaar && dE == 1); }
    std::string label() const;
};

struct BasisTag {
    enum class Kind { Permutation, Localized };
    Kind kind = Kind::Permutation;
    int t = 1;
    long d = 2;

    bool operator==(const BasisTag& o) const { return kind == o.kind && t == o.t && d == o.d; }
};

// t! x t! coefficients of a moment operator in a permutation-indexed basis.
struct TransferMatrix {
    BasisTag basis;
    EnsembleSpec ensemble;
    int k = 1;
    bool exact = true;
    ExactMatrix q;      // valid when exact
    Eigen::MatrixXd f;  // valid when !exact

    Eigen::MatrixXd values() const { return exact ? q.to_double() : f; }
    std::size_t dim() const { return exact ? q.rows() : static_cast<std::size_t>(f.rows()); }
};

// Gram matrix carried together with the basis it belongs to.
struct Gram {
    BasisTag basis;
    ExactMatrix q;
};

std::string to_string(Ansatz a);
std::string to_string(NoiseKind k);
std::string to_string(InitialState s);
Ansatz parse_ansatz(const std::string& s);
NoiseKind parse_noise(const std::string& s);

}  // namespace chanmom
