#include "chanmom/types.hpp"

#include <stdexcept>

namespace chanmom {

CircuitSpec default_circuit(int n, Ansatz ansatz, int layers, NoiseKind noise, double gamma) {
    CircuitSpec c;
    c.n = n;
    c.ansatz = ansatz;
    c.layers = layers;
    c.noise = noise;
    c.gamma = gamma;
    c.initial = ansatz == Ansatz::HEA ? InitialState::ZeroState : InitialState::PlusState;
    return c;
}

EnsembleSpec EnsembleSpec::haar(int t, long d, int k) {
    EnsembleSpec s;
    s.kind = Kind::Haar;
    s.t = t;
    s.d = d;
    s.k = k;
    return s;
}

EnsembleSpec EnsembleSpec::chaar(int t, long d, long dE, int k) {
    EnsembleSpec s;
    s.kind = Kind::CHaar;
    s.t = t;
    s.d = d;
    s.dE = dE;
    s.k = k;
    return s;
}

EnsembleSpec EnsembleSpec::depolarize(int t, long d, int k) {
    EnsembleSpec s;
    s.kind = Kind::Depolarize;
    s.t = t;
    s.d = d;
    s.k = k;
    return s;
}

EnsembleSpec EnsembleSpec::noisy_circuit(const CircuitSpec& c, int t, int k) {
    EnsembleSpec s;
    s.kind = Kind::NoisyCircuit;
    s.t = t;
    s.d = 1L << c.n;
    s.k = k;
    s.circuit = c;
    return s;
}

std::string EnsembleSpec::label() const {
    switch (kind) {
        case Kind::Haar: return "haar";
        case Kind::CHaar: return "chaar";
        case Kind::Depolarize: return "depolarize";
        case Kind::NoisyCircuit: return "circuit";
    }
    return "?";
}

std::string to_string(Ansatz a) { return a == Ansatz::HEA ? "HEA" : "MAT"; }

std::string to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::None: return "none";
        case NoiseKind::BitFlip: return "BF";
        case NoiseKind::Dephasing: return "D";
        case NoiseKind::LocalDepolarizing: return "LD";
        case NoiseKind::AmplitudeDamping: return "AD";
    }
    return "?";
}

std::string to_string(InitialState s) { return s == InitialState::ZeroState ? "zero" : "plus"; }

Ansatz parse_ansatz(const std::string& s) {
    if (s == "HEA" || s == "hea") return Ansatz::HEA;
    if (s == "MAT" || s == "mat") return Ansatz::MAT;
    throw std::invalid_argument("unknown ansatz: " + s);
}

NoiseKind parse_noise(const std::string& s) {
    if (s == "none") return NoiseKind::None;
    if (s == "BF" || s == "bitflip") return NoiseKind::BitFlip;
    if (s == "D" || s == "dephasing") return NoiseKind::Dephasing;
    if (s == "LD" || s == "depolarizing") return NoiseKind::LocalDepolarizing;
    if (s == "AD" || s == "amplitude") return NoiseKind::AmplitudeDamping;
    throw std::invalid_argument("unknown noise kind: " + s);
}

}  // namespace chanmom
