#include "chanmom/channels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace chanmom {

namespace {

Eigen::Index ipow(Eigen::Index b, int e) {
    Eigen::Index r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw std::invalid_argument("noise strength must lie in [0, 1]");
}

}  // namespace

double KrausSet::completeness_error() const {
    if (ops.empty()) return 1.0;
    CMatrix s = CMatrix::Zero(dim(), dim());
    for (const auto& k : ops) s += k.adjoint() * k;
    return (s - CMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

CVector vectorize(const CMatrix& x) {
    if (x.rows() != x.cols()) throw std::invalid_argument("vectorize expects a square operator");
    CVector v(x.size());
    for (Eigen::Index a = 0; a < x.rows(); ++a)
        for (Eigen::Index b = 0; b < x.cols(); ++b) v(a * x.cols() + b) = x(a, b);
    return v;
}

CMatrix unvectorize(const CVector& v, Eigen::Index dim) {
    if (v.size() != dim * dim) throw std::invalid_argument("unvectorize: size mismatch");
    CMatrix x(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a)
        for (Eigen::Index b = 0; b < dim; ++b) x(a, b) = v(a * dim + b);
    return x;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

CMatrix apply_channel(const KrausSet& k, const CMatrix& rho) {
    CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& op : k.ops) out += op * rho * op.adjoint();
    return out;
}

CMatrix kraus_to_super(const KrausSet& k, int t, double tol) {
    if (t < 1) throw std::invalid_argument("kraus_to_super: t must be >= 1");
    const double err = k.completeness_error();
    if (err > tol) throw IncompleteKraus("Kraus set violates completeness by " + std::to_string(err));
    const Eigen::Index d = k.dim();
    const Eigen::Index dt = ipow(d, t);
    const std::size_t r = k.ops.size();
    CMatrix s = CMatrix::Zero(dt * dt, dt * dt);
    std::vector<std::size_t> idx(static_cast<std::size_t>(t), 0);
    while (true) {
        CMatrix a = k.ops[idx[0]];
        for (int c = 1; c < t; ++c) a = kron(a, k.ops[idx[static_cast<std::size_t>(c)]]);
        s += kron(a, a.conjugate());
        int pos = t - 1;
        while (pos >= 0 && ++idx[static_cast<std::size_t>(pos)] == r) idx[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
    return s;
}

CMatrix tensor_power_super(const CMatrix& s1, Eigen::Index d, int t) {
    if (s1.rows() != d * d || s1.cols() != d * d) throw std::invalid_argument("tensor_power_super: size mismatch");
    const Eigen::Index dt = ipow(d, t);
    const Eigen::Index n = dt * dt;
    CMatrix out(n, n);
    // digit c of a t-copy index, most significant copy first
    auto digit = [&](Eigen::Index x, int c) { return (x / ipow(d, t - 1 - c)) % d; };
    for (Eigen::Index row = 0; row < n; ++row) {
        const Eigen::Index al = row / dt, be = row % dt;
        for (Eigen::Index col = 0; col < n; ++col) {
            const Eigen::Index al2 = col / dt, be2 = col % dt;
            std::complex<double> v = 1.0;
            for (int c = 0; c < t && v != 0.0; ++c)
                v *= s1(digit(al, c) * d + digit(be, c), digit(al2, c) * d + digit(be2, c));
            out(row, col) = v;
        }
    }
    return out;
}

KrausSet identity_channel(Eigen::Index d) { return {{CMatrix::Identity(d, d)}}; }

KrausSet depolarizing_channel(Eigen::Index d) {
    // Kraus operators |a><b| / sqrt(d)
    KrausSet k;
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
            CMatrix m = CMatrix::Zero(d, d);
            m(a, b) = 1.0 / std::sqrt(static_cast<double>(d));
            k.ops.push_back(m);
        }
    return k;
}

KrausSet standard_noise(NoiseKind kind, double gamma) {
    check_gamma(gamma);
    const double keep = std::sqrt(1.0 - gamma);
    switch (kind) {
        case NoiseKind::None: return identity_channel(2);
        case NoiseKind::BitFlip: return {{keep * pauli('I'), std::sqrt(gamma) * pauli('X')}};
        case NoiseKind::Dephasing: return {{keep * pauli('I'), std::sqrt(gamma) * pauli('Z')}};
        case NoiseKind::LocalDepolarizing: {
            const double p = std::sqrt(gamma / 3.0);
            return {{keep * pauli('I'), p * pauli('X'), p * pauli('Y'), p * pauli('Z')}};
        }
        case NoiseKind::AmplitudeDamping: {
            CMatrix k1 = CMatrix::Zero(2, 2), k2 = CMatrix::Zero(2, 2);
            k1(0, 1) = std::sqrt(gamma);
            k2(0, 0) = 1.0;
            k2(1, 1) = keep;
            return {{k1, k2}};
        }
    }
    throw std::invalid_argument("unknown noise kind");
}

bool is_trace_preserving(const CMatrix& super, Eigen::Index dim, double tol) {
    const CVector id = vectorize(CMatrix::Identity(dim, dim));
    return (super.adjoint() * id - id).cwiseAbs().maxCoeff() <= tol;
}

bool is_unital(const CMatrix& super, Eigen::Index dim, double tol) {
    const CVector id = vectorize(CMatrix::Identity(dim, dim));
    return (super * id - id).cwiseAbs().maxCoeff() <= tol;
}

CMatrix pauli(char label) {
    using C = std::complex<double>;
    CMatrix m(2, 2);
    switch (label) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument(std::string("invalid Pauli label: ") + label);
    }
    return m;
}

CMatrix pauli_string(int n, const std::string& labels) {
    if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("pauli_string: label count differs from n");
    CMatrix m = CMatrix::Identity(1, 1);
    for (char c : labels) m = kron(m, pauli(c));
    return m;
}

std::vector<std::string> pauli_labels(int n) {
    static const char alphabet[4] = {'I', 'X', 'Y', 'Z'};
    const std::size_t count = static_cast<std::size_t>(ipow(4, n));
    std::vector<std::string> out(count, std::string(static_cast<std::size_t>(n), 'I'));
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t x = i;
        for (int q = n - 1; q >= 0; --q, x /= 4) out[i][static_cast<std::size_t>(q)] = alphabet[x % 4];
    }
    return out;
}

Eigen::MatrixXd pauli_transfer_from_super(const CMatrix& super, int n) {
    const auto labels = pauli_labels(n);
    const Eigen::Index d = ipow(2, n);
    std::vector<CVector> vecs;
    for (const auto& l : labels) vecs.push_back(vectorize(pauli_string(n, l)));
    const Eigen::Index m = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd r(m, m);
    for (Eigen::Index s = 0; s < m; ++s) {
        const CVector img = super * vecs[static_cast<std::size_t>(s)];
        for (Eigen::Index p = 0; p < m; ++p) r(p, s) = vecs[static_cast<std::size_t>(p)].dot(img).real() / static_cast<double>(d);
    }
    return r;
}

Eigen::MatrixXd pauli_transfer(const KrausSet& k, int n) { return pauli_transfer_from_super(kraus_to_super(k, 1), n); }

NoiseModel NoiseModel::uniform(int n, double gamma, double eta, const std::string& eta_label) {
    NoiseModel m;
    m.n = n;
    const auto labels = pauli_labels(n);
    for (std::size_t i = 1; i < labels.size(); ++i) m.gamma[labels[i]] = gamma;
    if (eta != 0.0) {
        if (eta_label.empty()) {
            for (std::size_t i = 1; i < labels.size(); ++i) m.eta[labels[i]] = eta;
        } else {
            m.eta[eta_label] = eta;
        }
    }
    return m;
}

Eigen::MatrixXd noise_transfer(const NoiseModel& m) {
    const auto labels = pauli_labels(m.n);
    const Eigen::Index k = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(k, k);
    r(0, 0) = 1.0;
    for (Eigen::Index p = 1; p < k; ++p) {
        const auto& l = labels[static_cast<std::size_t>(p)];
        const auto g = m.gamma.find(l);
        const auto e = m.eta.find(l);
        r(p, p) = 1.0 - (g == m.gamma.end() ? 0.0 : g->second);
        r(p, 0) = e == m.eta.end() ? 0.0 : e->second;
    }
    for (const auto& [l, v] : m.gamma)
        if (static_cast<int>(l.size()) != m.n || l == std::string(static_cast<std::size_t>(m.n), 'I'))
            throw std::invalid_argument("noise model: invalid gamma label " + l);
    for (const auto& [l, v] : m.eta)
        if (static_cast<int>(l.size()) != m.n || l == std::string(static_cast<std::size_t>(m.n), 'I'))
            throw std::invalid_argument("noise model: invalid eta label " + l);
    return r;
}

CMatrix choi_matrix(const CMatrix& super, Eigen::Index d) {
    CMatrix j = CMatrix::Zero(d * d, d * d);
    for (Eigen::Index a = 0; a < d; ++a)
        for (Eigen::Index b = 0; b < d; ++b) {
            CVector e = CVector::Zero(d * d);
            e(a * d + b) = 1.0;
            const CMatrix img = unvectorize(super * e, d);
            j.block(a * d, b * d, d, d) = img / static_cast<double>(d);
        }
    return j;
}

double min_choi_eigenvalue(const CMatrix& super, Eigen::Index d) {
    const CMatrix j = choi_matrix(super, d);
    Eigen::SelfAdjointEigenSolver<CMatrix> es((j + j.adjoint()) / 2.0);
    return es.eigenvalues().minCoeff();
}

NoiseSuper noise_model_super(const NoiseModel& m, int t, double tol) {
    if (t < 1) throw std::invalid_argument("noise_model_super: t must be >= 1");
    const Eigen::MatrixXd r = noise_transfer(m);
    const auto labels = pauli_labels(m.n);
    const Eigen::Index d = m.d();
    std::vector<CVector> vecs;
    for (const auto& l : labels) vecs.push_back(vectorize(pauli_string(m.n, l)));
    CMatrix s1 = CMatrix::Zero(d * d, d * d);
    for (Eigen::Index p = 0; p < r.rows(); ++p)
        for (Eigen::Index s = 0; s < r.cols(); ++s)
            if (r(p, s) != 0.0)
                s1 += (r(p, s) / static_cast<double>(d)) * vecs[static_cast<std::size_t>(p)] * vecs[static_cast<std::size_t>(s)].adjoint();
    const double ev = min_choi_eigenvalue(s1, d);
    if (ev < -tol) throw CPViolation("noise model is not completely positive; min Choi eigenvalue " + std::to_string(ev), ev);
    NoiseSuper out;
    out.super = t == 1 ? s1 : tensor_power_super(s1, d, t);
    out.transfer = r;
    for (int c = 1; c < t; ++c) {
        Eigen::MatrixXd next(out.transfer.rows() * r.rows(), out.transfer.cols() * r.cols());
        for (Eigen::Index i = 0; i < out.transfer.rows(); ++i)
            for (Eigen::Index j = 0; j < out.transfer.cols(); ++j)
                next.block(i * r.rows(), j * r.cols(), r.rows(), r.cols()) = out.transfer(i, j) * r;
        out.transfer = next;
    }
    return out;
}

}  // namespace chanmom
