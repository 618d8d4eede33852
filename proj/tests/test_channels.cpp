#include "doctest.h"

#include "chanmom/channels.hpp"
#include "support.hpp"

using namespace chanmom;
using testsupport::kron2;

namespace {

constexpr NoiseKind kAllNoise[] = {NoiseKind::BitFlip, NoiseKind::Dephasing, NoiseKind::LocalDepolarizing, NoiseKind::AmplitudeDamping};

// Lambda^{(x)2}(X) by summing Kraus pairs directly.
CMatrix two_fold(const KrausSet& k, const CMatrix& x) {
    CMatrix out = CMatrix::Zero(x.rows(), x.cols());
    for (const auto& a : k.ops)
        for (const auto& b : k.ops) {
            const CMatrix ab = kron2(a, b);
            out += ab * x * ab.adjoint();
        }
    return out;
}

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("vectorization is row major") {
    const CVector v = vectorize(CMatrix::Identity(2, 2));
    CHECK(v(0) == std::complex<double>(1));
    CHECK(v(1) == std::complex<double>(0));
    CHECK(v(2) == std::complex<double>(0));
    CHECK(v(3) == std::complex<double>(1));
    CMatrix e01 = CMatrix::Zero(2, 2);
    e01(0, 1) = 1.0;
    CHECK(vectorize(e01)(1) == std::complex<double>(1));
    auto& g = testsupport::rng();
    for (int rep = 0; rep < 20; ++rep) {
        const CMatrix x = testsupport::random_complex(3, 3, g);
        const CMatrix y = testsupport::random_complex(3, 3, g);
        CHECK(std::abs(vectorize(x).dot(vectorize(y)) - (x.adjoint() * y).trace()) < 1e-12);
        CHECK(max_abs(unvectorize(vectorize(x), 3) - x) == 0.0);
    }
}

TEST_CASE("standard noise channels") {
    for (NoiseKind kind : kAllNoise) {
        const auto zero = standard_noise(kind, 0.0);
        const CMatrix rho = testsupport::random_state(2);
        CHECK(max_abs(apply_channel(zero, rho) - rho) < 1e-15);
        for (double gam : {0.0, 0.1, 0.5, 1.0}) CHECK(standard_noise(kind, gam).completeness_error() < 1e-14);
        CHECK_THROWS(standard_noise(kind, -0.1));
        CHECK_THROWS(standard_noise(kind, 1.1));
    }
    CMatrix z0 = CMatrix::Zero(2, 2);
    z0(0, 0) = 1.0;
    CHECK(max_abs(apply_channel(standard_noise(NoiseKind::BitFlip, 0.5), z0) - CMatrix::Identity(2, 2) / 2.0) < 1e-15);
    CMatrix one = CMatrix::Zero(2, 2);
    one(1, 1) = 1.0;
    CHECK(max_abs(apply_channel(standard_noise(NoiseKind::AmplitudeDamping, 1.0), one) - z0) < 1e-15);
    // local depolarizing: Bloch vector shrinks by 1 - 4 gamma / 3
    const CMatrix x = pauli('X');
    CHECK(max_abs(apply_channel(standard_noise(NoiseKind::LocalDepolarizing, 0.3), x) - (1.0 - 0.4) * x) < 1e-14);
    CHECK(max_abs(apply_channel(standard_noise(NoiseKind::Dephasing, 0.25), x) - 0.5 * x) < 1e-14);
}

TEST_CASE("superoperators") {
    auto& g = testsupport::rng();
    const auto id = kraus_to_super(identity_channel(2), 2);
    CHECK(max_abs(id - CMatrix::Identity(16, 16)) < 1e-15);
    for (NoiseKind kind : kAllNoise) {
        const auto k = standard_noise(kind, 0.3);
        const CMatrix s1 = kraus_to_super(k, 1);
        const CMatrix s2 = kraus_to_super(k, 2);
        CHECK(max_abs(tensor_power_super(s1, 2, 2) - s2) < 1e-12);
        const CMatrix x = testsupport::random_complex(4, 4, g);
        CHECK(max_abs(unvectorize(s2 * vectorize(x), 4) - two_fold(k, x)) < 1e-12);
        CHECK(is_trace_preserving(s1, 2));
        CHECK(is_trace_preserving(s2, 4));
        CHECK(is_unital(s1, 2) == (kind != NoiseKind::AmplitudeDamping));
        CHECK(min_choi_eigenvalue(s1, 2) > -1e-12);
    }
    KrausSet bad;
    bad.ops.push_back(pauli('X') * 0.5);
    CHECK_THROWS_AS(kraus_to_super(bad, 1), IncompleteKraus);
    const CMatrix dep = kraus_to_super(depolarizing_channel(3), 1);
    const CMatrix rho = testsupport::random_state(3, g);
    CHECK(max_abs(unvectorize(dep * vectorize(rho), 3) - CMatrix::Identity(3, 3) / 3.0) < 1e-14);
    CHECK(std::abs(choi_matrix(dep, 3).trace() - 1.0) < 1e-14);
}

TEST_CASE("pauli strings") {
    CHECK(max_abs(pauli_string(3, "III") - CMatrix::Identity(8, 8)) == 0.0);
    CHECK(max_abs(pauli_string(2, "XZ") - kron2(pauli('X'), pauli('Z'))) == 0.0);
    CHECK(max_abs(pauli('X') * pauli('Y') - std::complex<double>(0, 1) * pauli('Z')) < 1e-15);
    const auto labels = pauli_labels(2);
    CHECK(labels.size() == 16);
    CHECK(labels[0] == "II");
    CHECK(labels[1] == "IX");
    CHECK(labels[15] == "ZZ");
    for (const auto& a : labels)
        for (const auto& b : labels) {
            const auto ov = (pauli_string(2, a).adjoint() * pauli_string(2, b)).trace() / 4.0;
            CHECK(std::abs(ov - (a == b ? 1.0 : 0.0)) < 1e-15);
        }
}

TEST_CASE("pauli transfer") {
    const double gam = 0.3;
    const auto r = pauli_transfer(standard_noise(NoiseKind::AmplitudeDamping, gam), 1);
    // order I, X, Y, Z
    CHECK(std::abs(r(0, 0) - 1.0) < 1e-14);
    CHECK(std::abs(r(3, 0) - gam) < 1e-14);
    CHECK(std::abs(r(1, 1) - std::sqrt(1.0 - gam)) < 1e-14);
    CHECK(std::abs(r(2, 2) - std::sqrt(1.0 - gam)) < 1e-14);
    CHECK(std::abs(r(3, 3) - (1.0 - gam)) < 1e-14);
    CHECK(std::abs(r(0, 3)) < 1e-14);
    const auto b = pauli_transfer(standard_noise(NoiseKind::BitFlip, gam), 1);
    CHECK(std::abs(b(1, 1) - 1.0) < 1e-14);
    CHECK(std::abs(b(3, 3) - (1.0 - 2.0 * gam)) < 1e-14);
    const CMatrix s = kraus_to_super(standard_noise(NoiseKind::AmplitudeDamping, gam), 1);
    CHECK((pauli_transfer_from_super(s, 1) - r).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("structured noise model") {
    const auto zero = noise_model_super(NoiseModel::uniform(1, 0.0), 2);
    CHECK(max_abs(zero.super - CMatrix::Identity(16, 16)) < 1e-14);
    for (int n : {1, 2}) {
        NoiseModel m = NoiseModel::uniform(n, 0.2, 0.05, std::string(static_cast<std::size_t>(n), 'Z'));
        const auto ns = noise_model_super(m, 1);
        CHECK((pauli_transfer_from_super(ns.super, n) - noise_transfer(m)).cwiseAbs().maxCoeff() < 1e-13);
        CHECK(is_trace_preserving(ns.super, m.d()));
        CHECK_FALSE(is_unital(ns.super, m.d()));
        const auto n2 = noise_model_super(m, 2);
        CHECK(max_abs(n2.super - tensor_power_super(ns.super, m.d(), 2)) < 1e-13);
        // t-fold transfer is the tensor power of the single-copy transfer
        const Eigen::MatrixXd r = noise_transfer(m);
        Eigen::MatrixXd rr(r.rows() * r.rows(), r.cols() * r.cols());
        for (Eigen::Index i = 0; i < r.rows(); ++i)
            for (Eigen::Index j = 0; j < r.cols(); ++j) rr.block(i * r.rows(), j * r.cols(), r.rows(), r.cols()) = r(i, j) * r;
        CHECK((n2.transfer - rr).cwiseAbs().maxCoeff() < 1e-13);
    }
    // amplitude damping is an instance of the structured model
    NoiseModel ad;
    ad.n = 1;
    ad.gamma = {{"X", 1.0 - std::sqrt(0.7)}, {"Y", 1.0 - std::sqrt(0.7)}, {"Z", 0.3}};
    ad.eta = {{"Z", 0.3}};
    CHECK(max_abs(noise_model_super(ad, 1).super - kraus_to_super(standard_noise(NoiseKind::AmplitudeDamping, 0.3), 1)) < 1e-14);
}

TEST_CASE("invalid noise models are rejected") {
    NoiseModel bad = NoiseModel::uniform(1, 0.0, 0.5, "Z");
    CHECK_THROWS_AS(noise_model_super(bad, 1), CPViolation);
    try {
        noise_model_super(bad, 1);
    } catch (const CPViolation& e) {
        CHECK(e.min_eigenvalue < 0.0);
    }
    NoiseModel wrong = NoiseModel::uniform(1, 0.1);
    wrong.gamma["XX"] = 0.1;
    CHECK_THROWS_AS(noise_transfer(wrong), std::invalid_argument);
    // valid grid of (gamma, eta)
    for (double gam : {0.05, 0.1, 0.5, 0.75})
        for (double eta : {0.0, 0.01, 0.02}) CHECK_NOTHROW(noise_model_super(NoiseModel::uniform(1, gam, eta, "Z"), 2));
}
