#include "chanmom/twirlsim.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "chanmom/sampling.hpp"
#include "chanmom/symmgroup.hpp"
#include "chanmom/weingarten.hpp"

namespace chanmom {

namespace {

using cd = std::complex<double>;

cd i_power(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

void require_involutory(const CMatrix& g) {
    if (g.rows() != g.cols()) throw NonInvolutory("generator must be square");
    const double dev = (g * g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
    if (dev > 1e-10) throw NonInvolutory("generator does not square to the identity (deviation " + std::to_string(dev) + ")");
}

Eigen::Index dim_of(int qubits) { return Eigen::Index{1} << qubits; }

// t-copy permutation operator: slot sigma(j) of the output carries the index of input slot j.
CMatrix permutation_operator(const Permutation& sigma, Eigen::Index d) {
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

CMatrix haar_moment_super(int t, Eigen::Index d) {
    const PermTable& tab = perm_table(t);
    const Eigen::MatrixXd w = weingarten_matrix_f(t, static_cast<double>(d));
    const Eigen::Index n = static_cast<Eigen::Index>(tab.count());
    std::vector<CVector> vecs;
    for (std::size_t i = 0; i < tab.count(); ++i) vecs.push_back(vectorize(permutation_operator(tab.at(i), d)));
    CMatrix v(vecs.front().size(), n);
    for (Eigen::Index i = 0; i < n; ++i) v.col(i) = vecs[static_cast<std::size_t>(i)];
    double dt = 1.0;
    for (int i = 0; i < t; ++i) dt *= static_cast<double>(d);
    return v * w.cast<cd>() * v.adjoint() / dt;
}

CMatrix map_to_super(Eigen::Index dim, const std::function<CMatrix(const CMatrix&)>& f) {
    CMatrix s(dim * dim, dim * dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b) {
            CMatrix e = CMatrix::Zero(dim, dim);
            e(a, b) = 1.0;
            s.col(a * dim + b) = vectorize(f(e));
        }
    return s;
}

MomentEstimate summarize(const std::vector<double>& xs) {
    MomentEstimate est;
    const double n = static_cast<double>(xs.size());
    est.samples = xs.size();
    double s1 = 0.0;
    for (double x : xs) s1 += x;
    est.mean = s1 / n;
    double c2 = 0.0, c4 = 0.0, q = 0.0, q2 = 0.0;
    for (double x : xs) {
        const double dx = x - est.mean;
        c2 += dx * dx;
        c4 += dx * dx * dx * dx;
        q += x * x;
    }
    est.second_moment = q / n;
    for (double x : xs) {
        const double dq = x * x - est.second_moment;
        q2 += dq * dq;
    }
    est.variance = n > 1 ? c2 / (n - 1) : 0.0;
    est.mean_err = std::sqrt(est.variance / n);
    est.second_err = n > 1 ? std::sqrt(q2 / (n - 1) / n) : 0.0;
    const double mu4 = c4 / n;
    const double pop_var = c2 / n;
    est.variance_err = std::sqrt(std::max(0.0, mu4 - pop_var * pop_var) / n);
    return est;
}

}  // namespace

PauliMonomial PauliMonomial::from_labels(const std::string& labels) {
    PauliMonomial p;
    p.n = static_cast<int>(labels.size());
    if (p.n > 31) throw std::invalid_argument("Pauli string too long");
    for (int q = 0; q < p.n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (p.n - 1 - q);
        switch (labels[static_cast<std::size_t>(q)]) {
            case 'I': break;
            case 'X': p.x |= bit; break;
            case 'Y': p.x |= bit; p.z |= bit; break;
            case 'Z': p.z |= bit; break;
            default: throw std::invalid_argument("invalid Pauli label in " + labels);
        }
    }
    return p;
}

std::string PauliMonomial::labels() const {
    std::string s(static_cast<std::size_t>(n), 'I');
    for (int q = 0; q < n; ++q) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - q);
        const bool bx = x & bit, bz = z & bit;
        s[static_cast<std::size_t>(q)] = bx ? (bz ? 'Y' : 'X') : (bz ? 'Z' : 'I');
    }
    return s;
}

CMatrix PauliMonomial::matrix() const { return pauli_string(n, labels()); }

PauliMonomial PauliMonomial::first_copy() const { return {2 * n, x << n, z << n}; }
PauliMonomial PauliMonomial::second_copy() const { return {2 * n, x, z}; }
PauliMonomial PauliMonomial::both_copies() const { return {2 * n, (x << n) | x, (z << n) | z}; }

CMatrix pauli_left(const PauliMonomial& p, const CMatrix& m) {
    const Eigen::Index dim = dim_of(p.n);
    if (m.rows() != dim) throw std::invalid_argument("pauli_left: dimension mismatch");
    const cd base = i_power(std::popcount(p.x & p.z));
    CMatrix out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        const cd* src = m.data() + c * m.rows();
        cd* dst = out.data() + c * m.rows();
        for (Eigen::Index r = 0; r < dim; ++r) {
            const cd ph = (std::popcount(static_cast<std::uint64_t>(r) & p.z) & 1) ? -base : base;
            dst[static_cast<std::uint64_t>(r) ^ p.x] = ph * src[r];
        }
    }
    return out;
}

CMatrix pauli_right(const CMatrix& m, const PauliMonomial& p) {
    const Eigen::Index dim = dim_of(p.n);
    if (m.cols() != dim) throw std::invalid_argument("pauli_right: dimension mismatch");
    const cd base = i_power(std::popcount(p.x & p.z));
    CMatrix out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < dim; ++c) {
        const cd ph = (std::popcount(static_cast<std::uint64_t>(c) & p.z) & 1) ? -base : base;
        out.col(c) = m.col(static_cast<Eigen::Index>(static_cast<std::uint64_t>(c) ^ p.x)) * ph;
    }
    return out;
}

CMatrix gate_twirl_t1(const CMatrix& x, const CMatrix& g) {
    require_involutory(g);
    return (x + g * x * g) / 2.0;
}

CMatrix gate_twirl_t1(const CMatrix& x, const PauliMonomial& g) { return (x + pauli_right(pauli_left(g, x), g)) / 2.0; }

CMatrix gate_twirl_t2(const CMatrix& x, const CMatrix& g) {
    require_involutory(g);
    const CMatrix id = CMatrix::Identity(g.rows(), g.cols());
    const CMatrix gg = kron(g, g);
    const CMatrix g2 = kron(g, id) + kron(id, g);
    return 0.375 * (x + gg * x * gg) - 0.125 * (gg * x + x * gg) + 0.125 * (g2 * x * g2);
}

CMatrix gate_twirl_t2(const CMatrix& x, const PauliMonomial& g) {
    const PauliMonomial gg = g.both_copies();
    const PauliMonomial g1 = g.first_copy();
    const PauliMonomial g2 = g.second_copy();
    const CMatrix left = pauli_left(gg, x);
    const CMatrix sum = pauli_left(g1, x) + pauli_left(g2, x);
    return 0.375 * (x + pauli_right(left, gg)) - 0.125 * (left + pauli_right(x, gg)) +
           0.125 * (pauli_right(sum, g1) + pauli_right(sum, g2));
}

std::vector<PauliMonomial> circuit_generators(int n, Ansatz ansatz) {
    std::vector<PauliMonomial> gens;
    auto single = [&](char c, int q) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(q)] = c;
        gens.push_back(PauliMonomial::from_labels(s));
    };
    for (int q = 0; q < n; ++q) single('X', q);
    if (ansatz == Ansatz::HEA)
        for (int q = 0; q < n; ++q) single('Y', q);
    for (int q = 0; q + 1 < n; ++q) {
        std::string s(static_cast<std::size_t>(n), 'I');
        s[static_cast<std::size_t>(q)] = 'Z';
        s[static_cast<std::size_t>(q + 1)] = 'Z';
        gens.push_back(PauliMonomial::from_labels(s));
    }
    return gens;
}

CMatrix initial_state(int n, InitialState s) {
    const Eigen::Index d = dim_of(n);
    if (s == InitialState::PlusState) return CMatrix::Constant(d, d, 1.0 / static_cast<double>(d));
    CMatrix rho = CMatrix::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
}

void apply_qubit_channel(CMatrix& m, const KrausSet& k, int num_qubits, int qubit) {
    const Eigen::Index dim = dim_of(num_qubits);
    if (m.rows() != dim || m.cols() != dim) throw std::invalid_argument("apply_qubit_channel: dimension mismatch");
    if (k.dim() != 2) throw std::invalid_argument("apply_qubit_channel: single-qubit Kraus operators required");
    const Eigen::Index stride = Eigen::Index{1} << (num_qubits - 1 - qubit);
    // acts on each 2x2 block (r0|r1) x (c0|c1) through the 4x4 single-qubit superoperator
    CMatrix s = CMatrix::Zero(4, 4);
    for (const auto& op : k.ops) s += kron(op, op.conjugate());
    cd* data = m.data();
    for (Eigen::Index c0 = 0; c0 < dim; ++c0) {
        if (c0 & stride) continue;
        cd* col0 = data + c0 * dim;
        cd* col1 = data + (c0 | stride) * dim;
        for (Eigen::Index r0 = 0; r0 < dim; ++r0) {
            if (r0 & stride) continue;
            const Eigen::Index r1 = r0 | stride;
            const cd v0 = col0[r0], v1 = col1[r0], v2 = col0[r1], v3 = col1[r1];
            col0[r0] = s(0, 0) * v0 + s(0, 1) * v1 + s(0, 2) * v2 + s(0, 3) * v3;
            col1[r0] = s(1, 0) * v0 + s(1, 1) * v1 + s(1, 2) * v2 + s(1, 3) * v3;
            col0[r1] = s(2, 0) * v0 + s(2, 1) * v1 + s(2, 2) * v2 + s(2, 3) * v3;
            col1[r1] = s(3, 0) * v0 + s(3, 1) * v1 + s(3, 2) * v2 + s(3, 3) * v3;
        }
    }
}

EvolveResult evolve(const CircuitSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("evolve: n must be >= 1");
    if (spec.n > spec.max_qubits)
        throw ResourceCapExceeded("evolve: n = " + std::to_string(spec.n) + " exceeds the qubit cap " + std::to_string(spec.max_qubits));
    if (spec.layers < 0) throw std::invalid_argument("evolve: layers must be >= 0");
    const int n = spec.n;
    const CMatrix rho = initial_state(n, spec.initial);
    EvolveResult res;
    res.state = kron(rho, rho);
    const bool noisy = spec.noise != NoiseKind::None && spec.gamma > 0.0;
    const KrausSet noise = standard_noise(spec.noise, spec.gamma);
    const auto gens = circuit_generators(n, spec.ansatz);
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (int l = 0; l < spec.layers; ++l) {
        for (const auto& g : gens) {
            res.state = gate_twirl_t2(res.state, g);
            if (!noisy) continue;
            const std::uint64_t touched = spec.full_register_noise ? all : g.support();
            for (int q = 0; q < n; ++q) {
                if (!(touched & (std::uint64_t{1} << (n - 1 - q)))) continue;
                apply_qubit_channel(res.state, noise, 2 * n, q);
                apply_qubit_channel(res.state, noise, 2 * n, n + q);
            }
        }
        res.purities.push_back(res.state.squaredNorm());
    }
    return res;
}

std::pair<double, double> chaar_two_copy_coefficients(double d, double dE, double tr, double tr2) {
    const double pref = 1.0 / (d * d) / (1.0 - 1.0 / (d * d * dE * dE));
    const double a = pref * (tr * tr - tr2 / (d * dE));
    const double b = pref * (tr2 - tr * tr / (d * dE)) / dE;
    return {a, b};
}

ReferencePurities reference_purities(int n, long dE) {
    if (n < 1 || dE < 1) throw std::invalid_argument("reference_purities: need n >= 1, dE >= 1");
    const double d = static_cast<double>(dim_of(n));
    ReferencePurities r;
    r.depolarize = 1.0 / (d * d);
    r.haar = 2.0 / (d * (d + 1.0));
    const auto [a, b] = chaar_two_copy_coefficients(d, static_cast<double>(dE), 1.0, 1.0);
    r.chaar = a * a * d * d + 2.0 * a * b * d + b * b * d * d;
    return r;
}

double composite_noise_norm(CompositeKind kind, const NoiseModel& noise, int t, int k, const std::string& generator) {
    if (t < 1 || k < 1) throw std::invalid_argument("composite_noise_norm: need t >= 1 and k >= 1");
    const Eigen::Index d = noise.d();
    CMatrix unitary;
    if (kind == CompositeKind::HaarUnitaries) {
        unitary = haar_moment_super(t, d);
    } else {
        if (t > 2) throw std::invalid_argument("composite_noise_norm: single-generator twirls are implemented for t <= 2");
        const PauliMonomial g = PauliMonomial::from_labels(generator.empty() ? std::string(static_cast<std::size_t>(noise.n), 'Z') : generator);
        if (g.n != noise.n) throw std::invalid_argument("composite_noise_norm: generator length differs from the noise model");
        if (t == 1)
            unitary = map_to_super(d, [&](const CMatrix& x) { return gate_twirl_t1(x, g); });
        else
            unitary = map_to_super(d * d, [&](const CMatrix& x) { return gate_twirl_t2(x, g); });
    }
    const CMatrix step = noise_model_super(noise, t).super * unitary;
    CMatrix m = step;
    for (int i = 1; i < k; ++i) m = step * m;
    return m.squaredNorm();
}

MomentValues variance_reference(const CMatrix& rho, const CMatrix& o, const ReferenceKind& ref) {
    const double d = static_cast<double>(rho.rows());
    const double tr = rho.trace().real();
    const double tr_o = o.trace().real();
    MomentValues v;
    v.mean = tr * tr_o / d;
    if (ref.kind == ReferenceKind::Kind::Depolarize) {
        v.second_moment = tr * tr * tr_o * tr_o / (d * d);
        v.variance = 0.0;
        return v;
    }
    const double de = ref.kind == ReferenceKind::Kind::Haar ? 1.0 : static_cast<double>(ref.dE);
    const double tr2 = (rho * rho).trace().real();
    const double tr_o2 = (o * o).trace().real();
    const auto [a, b] = chaar_two_copy_coefficients(d, de, tr, tr2);
    v.second_moment = a * tr_o * tr_o + b * tr_o2;
    // the closed form of the variance, not the difference of two rounded numbers
    const double pref = 1.0 / (d * d) / (1.0 - 1.0 / (d * d * de * de));
    v.variance = pref * ((tr * tr / (d * d * de * de) - tr2 / (d * de)) * tr_o * tr_o + (tr2 - tr * tr / (d * de)) * tr_o2 / de);
    return v;
}

CMatrix run_noisy_circuit(const CircuitSpec& spec, const std::vector<double>& thetas, const CMatrix& rho) {
    const auto gens = circuit_generators(spec.n, spec.ansatz);
    if (thetas.size() != gens.size() * static_cast<std::size_t>(spec.layers))
        throw std::invalid_argument("run_noisy_circuit: expected one angle per gate");
    const bool noisy = spec.noise != NoiseKind::None && spec.gamma > 0.0;
    const KrausSet noise = standard_noise(spec.noise, spec.gamma);
    const std::uint64_t all = (std::uint64_t{1} << spec.n) - 1;
    CMatrix r = rho;
    std::size_t idx = 0;
    for (int l = 0; l < spec.layers; ++l)
        for (const auto& g : gens) {
            const double c = std::cos(thetas[idx]), s = std::sin(thetas[idx]);
            ++idx;
            const CMatrix gr = pauli_left(g, r);
            const CMatrix rg = pauli_right(r, g);
            r = c * c * r + s * s * pauli_right(gr, g) + cd(0, c * s) * (rg - gr);
            if (!noisy) continue;
            const std::uint64_t touched = spec.full_register_noise ? all : g.support();
            for (int q = 0; q < spec.n; ++q)
                if (touched & (std::uint64_t{1} << (spec.n - 1 - q))) apply_qubit_channel(r, noise, spec.n, q);
        }
    return r;
}

double exact_second_moment(const CircuitSpec& spec, const CMatrix& o) {
    const EvolveResult res = evolve(spec);
    return (res.state * kron(o, o)).trace().real();
}

MomentEstimate mc_expectation_moments(const EnsembleSpec& spec, const CMatrix& rho, const CMatrix& o, std::size_t samples,
                                      std::uint64_t seed, int threads) {
    if (samples < 2) throw std::invalid_argument("mc_expectation_moments: at least two samples required");
    if (spec.kind == EnsembleSpec::Kind::Depolarize) {
        const double d = static_cast<double>(rho.rows());
        const double x = rho.trace().real() * o.trace().real() / d;
        MomentEstimate est;
        est.samples = samples;
        est.mean = x;
        est.second_moment = x * x;
        return est;
    }
    std::function<double(Rng&)> draw;
    if (spec.kind == EnsembleSpec::Kind::NoisyCircuit) {
        const CircuitSpec c = spec.circuit;
        const std::size_t gates = circuit_generators(c.n, c.ansatz).size() * static_cast<std::size_t>(c.layers);
        draw = [c, gates, &rho, &o](Rng& rng) {
            std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
            std::vector<double> th(gates);
            for (auto& x : th) x = u(rng);
            return (run_noisy_circuit(c, th, rho) * o).trace().real();
        };
    } else {
        const Eigen::Index d = spec.d;
        const Eigen::Index de = spec.kind == EnsembleSpec::Kind::CHaar ? spec.dE : 1;
        if (rho.rows() != d) throw std::invalid_argument("mc_expectation_moments: state dimension differs from the ensemble");
        draw = [d, de, &rho, &o](Rng& rng) {
            const auto kraus = chaar_kraus(d, de, rng);
            double x = 0.0;
            for (const auto& k : kraus) x += (k * rho * k.adjoint() * o).trace().real();
            return x;
        };
    }
    return summarize(parallel_draws(samples, seed, threads, draw));
}

}  // namespace chanmom
