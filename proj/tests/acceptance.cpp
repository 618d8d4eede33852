// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <Eigen/Dense>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chanmom/channels.hpp"
#include "chanmom/localized.hpp"
#include "chanmom/moments.hpp"
#include "chanmom/twirlsim.hpp"
#include "chanmom/weingarten.hpp"

using namespace chanmom;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

template <typename... Args>
std::string fmt(const char* f, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Rational frac(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Outcome weingarten_exactness() {
    const auto t0 = Clock::now();
    Outcome o;
    int cases = 0;
    for (int t = 1; t <= 5; ++t)
        for (long d : {static_cast<long>(t), static_cast<long>(t) + 1, 8L}) {
            ++cases;
            if (gram_matrix(t, d) * weingarten_matrix(t, d) != ExactMatrix::identity(perm_table(t).count())) {
                o.pass = false;
                o.detail += fmt("mismatch t=%d d=%ld; ", t, d);
            }
        }
    const double s = seconds_since(t0);
    o.pass = o.pass && s < 10.0;
    o.detail += fmt("%d (t,d) pairs exact, %.2f s (limit 10 s)", cases, s);
    return o;
}

Outcome haar_norms() {
    Outcome o;
    int cases = 0;
    for (int t = 2; t <= 4; ++t)
        for (long d = t; d <= 8; ++d) {
            ++cases;
            const auto tau = transfer(EnsembleSpec::haar(t, d));
            const Gram g = gram_for(tau.basis);
            const Rational f(factorial(t));
            if (norm_squared(tau, g) != f || trace(tau, g) != f) {
                o.pass = false;
                o.detail += fmt("t=%d d=%ld: norm2=%s; ", t, d, to_string(norm_squared(tau, g)).c_str());
            }
        }
    o.detail += fmt("norm2 = trace = t! exactly on %d (t,d) points, t in {2,3,4}, d in t..8", cases);
    return o;
}

Outcome chaar_closed_forms() {
    Outcome o;
    for (long d : {2L, 3L, 4L})
        for (long de : {1L, 2L, 4L, 9L}) {
            const auto loc = to_localized(transfer(EnsembleSpec::chaar(2, d, de)));
            const long den = d * d * de * de - 1;
            if (loc.q(1, 0) != frac(de - 1, den) || loc.q(1, 1) != frac(de, den) || loc.q(0, 0) != 1 || loc.q(0, 1) != 0) {
                o.pass = false;
                o.detail += fmt("d=%ld dE=%ld: (%s, %s); ", d, de, to_string(loc.q(1, 0)).c_str(), to_string(loc.q(1, 1)).c_str());
            }
        }
    o.detail += "(l_tau,l_e) = (dE-1)/(d^2 dE^2-1) and (l_tau,l_tau) = dE/(d^2 dE^2-1) exactly, 12 (d,dE) points";
    return o;
}

Outcome concatenation_oracle() {
    Outcome o;
    int cases = 0;
    for (long d : {2L, 3L, 4L})
        for (long de : {1L, 2L, 4L, 9L}) {
            const auto perm = transfer(EnsembleSpec::chaar(2, d, de));
            const Gram gp = gram_for(perm.basis);
            for (int k = 1; k <= 6; ++k) {
                ++cases;
                const auto expect = exact_t2_chaar(k, d, de);
                const auto via_perm = to_localized(concatenate(perm, gp, k));
                if (via_perm.q != expect.q) {
                    o.pass = false;
                    o.detail += fmt("d=%ld dE=%ld k=%d; ", d, de, k);
                }
            }
        }
    o.detail += fmt("concatenate == exact_t2_chaar entrywise on %d (d,dE,k) points", cases);
    return o;
}

Outcome spectrum_checks() {
    Outcome o;
    double worst_lambda = 0.0, worst_psi = 0.0, worst_lead = 0.0;
    int cases = 0;
    for (long d = 2; d <= 8; ++d)
        for (long de = 1; de <= 8; ++de) {
            const auto rep = spectrum(EnsembleSpec::chaar(2, d, de));
            const double lam = static_cast<double>(de * (d * d - 1)) / static_cast<double>(d * d * de * de - 1);
            double best = 1e300;
            for (std::size_t i = 1; i < rep.eigenvalues.size(); ++i) best = std::min(best, std::abs(rep.eigenvalues[i] - lam));
            worst_lambda = std::max(worst_lambda, best);
        }
    for (int t = 2; t <= 4; ++t)
        for (long d = 2; d <= 8; ++d)
            for (long de = 1; de <= 8; ++de) {
                if (d * de < t) continue;
                ++cases;
                const auto rep = spectrum(EnsembleSpec::chaar(t, d, de));
                worst_psi = std::max(worst_psi, rep.psi_residual);
                worst_lead = std::max({worst_lead, std::abs(rep.eigenvalues[0] - 1.0), rep.residuals[0]});
            }
    o.pass = worst_lambda < 1e-10 && worst_psi < 1e-10 && worst_lead < 1e-10;
    o.detail = fmt("t=2 eigenvalue dev %.1e; leading pair on %d points: psi residual %.1e, lambda/residual %.1e (tol 1e-10)", worst_lambda,
                   cases, worst_psi, worst_lead);
    return o;
}

Outcome hierarchy() {
    const auto t0 = Clock::now();
    std::vector<long> ds;
    for (long d = 2; d <= 8; ++d) ds.push_back(d);
    const auto res = hierarchy_scan({2, 3, 4}, {1, 3}, ds, {DERule::parse("1"), DERule::parse("2"), DERule::parse("d"), DERule::parse("d2")});
    const double s = seconds_since(t0);
    Outcome o;
    o.pass = res.bound_violations == 0 && res.de_monotonicity_flags == 0 && res.k_monotonicity_flags == 0 && s < 300.0 && !res.rows.empty();
    o.detail = fmt("%zu rows, %zu skipped (d*dE < t), violations %zu, dE flags %zu, k flags %zu, %.2f s (limit 300 s)", res.rows.size(),
                   res.skipped.size(), res.bound_violations, res.de_monotonicity_flags, res.k_monotonicity_flags, s);
    return o;
}

Outcome block_structure() {
    Outcome o;
    const auto& tab = perm_table(4);
    const long d = 5;
    const auto h = to_localized(haar_transfer_perm(4, d)).q;
    const auto c = to_localized(chaar_transfer_perm(4, d, 3)).q;
    int zero_mismatch = 0;
    for (std::size_t i = 0; i < tab.count(); ++i)
        for (std::size_t j = 0; j < tab.count(); ++j) {
            const auto si = tab.support_of(i), sj = tab.support_of(j);
            if ((h(i, j) == 0) != (si != sj)) ++zero_mismatch;
            if ((c(i, j) == 0) != ((si & sj) != sj)) ++zero_mismatch;
        }
    int expo_mismatch = 0, class_mismatch = 0, mixed = 0, entries = 0;
    for (int t = 2; t <= 4; ++t) {
        const auto& tb = perm_table(t);
        for (auto kind : {EnsembleSpec::Kind::Haar, EnsembleSpec::Kind::CHaar}) {
            const DERule rule{DERule::Kind::DSquared, 0};
            const auto e = scaling_exponents(kind, t, 8, 16, rule);
            const auto far = scaling_exponents(kind, t, 1024, 2048, rule);
            for (std::size_t i = 0; i < tb.count(); ++i)
                for (std::size_t j = 0; j < tb.count(); ++j) {
                    const auto si = tb.support_of(i), sj = tb.support_of(j);
                    const bool zero_expected = kind == EnsembleSpec::Kind::Haar ? si != sj : (si & sj) != sj;
                    if (e[i][j].structural_zero != zero_expected) ++zero_mismatch;
                    if (e[i][j].structural_zero) continue;
                    ++entries;
                    if (tb.size_of(i) == 1) {
                        // transposition rows: 1/(d^2-1) for Haar, O(d^-4) at dE = d^2 for cHaar
                        const int want = kind == EnsembleSpec::Kind::Haar ? 2 : 4;
                        if (e[i][j].exponent != want || e[i][j].mixed) ++expo_mismatch;
                        continue;
                    }
                    if (e[i][j].mixed) ++mixed;
                    // leading order taken where subleading terms are below 1e-4
                    if (std::abs(far[i][j].estimate - far[i][j].exponent) > 1e-3 || far[i][j].exponent != e[i][j].exponent) ++class_mismatch;
                }
        }
    }
    o.pass = zero_mismatch == 0 && expo_mismatch == 0 && class_mismatch == 0;
    o.detail = fmt("t=4 zero pattern mismatches %d; transposition exponent mismatches %d; %d nonzero entries (t<=4), rounded d={8,16} "
                   "exponent differs from leading order in %d; %d entries beyond the 0.1 mixed-order tolerance at d={8,16}",
                   zero_mismatch, expo_mismatch, entries, class_mismatch, mixed);
    return o;
}

CMatrix rotation(const CMatrix& g, double theta) {
    return std::cos(theta) * CMatrix::Identity(g.rows(), g.cols()) - std::complex<double>(0, std::sin(theta)) * g;
}

// (1/N) sum_theta (U (x) U) (x) conj(U (x) U) on row-major vectorized two-copy operators.
CMatrix quadrature_super(const CMatrix& g, int points) {
    const Eigen::Index dim = g.rows() * g.rows();
    CMatrix acc = CMatrix::Zero(dim * dim, dim * dim);
    for (int j = 0; j < points; ++j) {
        const CMatrix u = rotation(g, 2.0 * std::numbers::pi * j / points);
        const CMatrix uu = kron(u, u);
        acc += kron(uu, uu.conjugate());
    }
    return acc / static_cast<double>(points);
}

Outcome twirl_quadrature() {
    Outcome o;
    std::mt19937_64 rng(424242);
    std::normal_distribution<double> nd(0.0, 1.0);
    double worst8 = 0.0, worst4096 = 0.0;
    const std::vector<std::string> gens = {"XI", "IX", "YI", "IY", "ZZ"};
    for (const auto& l : gens) {
        const auto p = PauliMonomial::from_labels(l);
        const CMatrix q8 = quadrature_super(p.matrix(), 8);
        const CMatrix q4096 = quadrature_super(p.matrix(), 4096);
        for (int rep = 0; rep < 100; ++rep) {
            CMatrix x(16, 16);
            for (Eigen::Index i = 0; i < 16; ++i)
                for (Eigen::Index j = 0; j < 16; ++j) x(i, j) = {nd(rng), nd(rng)};
            const CVector fast = vectorize(gate_twirl_t2(x, p));
            const CVector v = vectorize(x);
            worst8 = std::max(worst8, (q8 * v - fast).cwiseAbs().maxCoeff());
            worst4096 = std::max(worst4096, (q4096 * v - fast).cwiseAbs().maxCoeff());
        }
    }
    o.pass = worst8 < 1e-10 && worst4096 < 1e-10;
    o.detail = fmt("n=2, generators XI,IX,YI,IY,ZZ x 100 inputs: max dev 8-point %.1e, 4096-point %.1e (tol 1e-10)", worst8, worst4096);
    return o;
}

Outcome circuit_experiment() {
    Outcome o;
    std::ostringstream det;
    for (int n : {3, 4}) {
        const auto ref = reference_purities(n, 1);
        auto final_purity = [&](Ansatz a, NoiseKind k, double g, int layers) {
            return evolve(default_circuit(n, a, layers, k, g)).purities.back();
        };
        const double hea = final_purity(Ansatz::HEA, NoiseKind::None, 0.0, 30);
        const double hea_dev = std::abs(hea / ref.haar - 1.0);
        bool ok = hea_dev < 0.02;
        double ld_dev = 0.0, d_dev = 0.0;
        for (double g : {0.1, 0.2, 0.3}) {
            ld_dev = std::max(ld_dev, std::abs(final_purity(Ansatz::HEA, NoiseKind::LocalDepolarizing, g, 50) / ref.depolarize - 1.0));
            d_dev = std::max(d_dev, std::abs(final_purity(Ansatz::HEA, NoiseKind::Dephasing, g, 50) / ref.depolarize - 1.0));
        }
        ok = ok && ld_dev < 0.02 && d_dev < 0.02;
        const double mat = final_purity(Ansatz::MAT, NoiseKind::None, 0.0, 30);
        ok = ok && mat > 1.05 * ref.haar;
        const double ad1 = final_purity(Ansatz::HEA, NoiseKind::AmplitudeDamping, 0.1, 50);
        const double ad3 = final_purity(Ansatz::HEA, NoiseKind::AmplitudeDamping, 0.3, 50);
        ok = ok && ad3 > ad1;
        o.pass = o.pass && ok;
        det << fmt("n=%d: HEA dev %.2g%%, LD dev %.2g%%, D dev %.2g%%, MAT/Haar %.3f, AD(0.3)/AD(0.1) %.3f; ", n, 100 * hea_dev, 100 * ld_dev,
                   100 * d_dev, mat / ref.haar, ad3 / ad1);
    }
    o.detail = det.str();
    return o;
}

Outcome monte_carlo() {
    Outcome o;
    const auto h = frame_potential_mc(EnsembleSpec::haar(2, 2), 100000, 2024);
    const auto cspec = EnsembleSpec::chaar(2, 2, 2);
    const double exact = to_double(norm_squared(transfer(cspec), gram_for({BasisTag::Kind::Permutation, 2, 2})));
    const auto c = frame_potential_mc(cspec, 100000, 2025);
    const CMatrix rho = initial_state(2, InitialState::ZeroState);
    const auto dep = variance_reference(rho, pauli_string(2, "ZX"), {ReferenceKind::Kind::Depolarize, 1});
    const double zh = std::abs(h.mean - 2.0) / h.stderr_;
    const double zc = std::abs(c.mean - exact) / c.stderr_;
    o.pass = zh < 3.0 && zc < 3.0 && dep.variance == 0.0;
    o.detail = fmt("Haar %.4f +- %.4f (%.2f sigma from 2); cHaar %.4f +- %.4f (%.2f sigma from %.4f); Depolarize variance %g", h.mean, h.stderr_,
                   zh, c.mean, c.stderr_, zc, exact, dep.variance);
    return o;
}

Outcome noise_scaling() {
    Outcome o;
    std::ostringstream det;
    for (double g : {0.05, 0.1}) {
        // least-squares slope of log(norm2 - 1) against k
        double sk = 0, sy = 0, skk = 0, sky = 0;
        const int kmax = 6;
        for (int k = 1; k <= kmax; ++k) {
            const double y = std::log(composite_noise_norm(CompositeKind::HaarUnitaries, NoiseModel::uniform(2, g), 2, k) - 1.0);
            sk += k;
            sy += y;
            skk += k * k;
            sky += k * y;
        }
        const double slope = (kmax * sky - sk * sy) / (kmax * skk - sk * sk);
        const double want = 4.0 * std::log(1.0 - g);
        const double rel = std::abs(slope / want - 1.0);
        o.pass = o.pass && rel < 0.10;
        det << fmt("gamma=%.2f slope %.5f vs %.5f (rel %.1e); ", g, slope, want, rel);
    }
    // eta floor at a damping strong enough that (1-gamma)^{4k} is negligible for k >= 3
    const double g = 0.75;
    std::vector<double> floor_at;
    for (double eta : {0.01, 0.02}) {
        double lo = 1e300, hi = 0.0;
        for (int k = 3; k <= 6; ++k) {
            const double v = composite_noise_norm(CompositeKind::HaarUnitaries, NoiseModel::uniform(2, g, eta), 2, k) - 1.0;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        const bool flat = hi / lo - 1.0 < 0.10;
        o.pass = o.pass && flat && lo > 0.0;
        floor_at.push_back(hi);
        det << fmt("eta=%.2f floor %.4e (k=3..6 spread %.1e); ", eta, hi, hi / lo - 1.0);
    }
    const double ratio = floor_at[1] / floor_at[0];
    o.pass = o.pass && std::abs(ratio / 4.0 - 1.0) < 0.15;
    det << fmt("floor ratio %.4f (target 4)", ratio);
    o.detail = det.str();
    return o;
}

Outcome invariance() {
    Outcome o;
    int checks = 0, failed = 0;
    bool seen[4] = {false, false, false, false};
    const char* kinds[4] = {"dep_right_invariance", "dep_left_invariance", "haar_chaar_", "chaar_not_idempotent"};
    for (int t = 1; t <= 3; ++t)
        for (long d : {std::max(2L, static_cast<long>(t)), 4L})
            for (long de : {1L, 2L, 3L}) {
                const auto ch = EnsembleSpec::chaar(t, d, de);
                for (const auto& [a, b] : std::vector<std::pair<EnsembleSpec, EnsembleSpec>>{
                         {EnsembleSpec::depolarize(t, d), ch}, {EnsembleSpec::depolarize(t, d), EnsembleSpec::haar(t, d)}, {EnsembleSpec::haar(t, d), ch}}) {
                    for (const auto& c : invariance_checks(a, b)) {
                        ++checks;
                        if (!c.passed) {
                            ++failed;
                            o.detail += c.name + " failed; ";
                        }
                        for (int i = 0; i < 4; ++i)
                            if (c.name.rfind(kinds[i], 0) == 0) seen[i] = true;
                    }
                }
            }
    o.pass = failed == 0 && seen[0] && seen[1] && seen[2] && seen[3];
    o.detail += fmt("%d exact transfer-level checks for t<=3, %d failed", checks, failed);
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"weingarten exactness", weingarten_exactness},
        {"haar norms", haar_norms},
        {"chaar closed forms", chaar_closed_forms},
        {"concatenation oracle", concatenation_oracle},
        {"spectrum", spectrum_checks},
        {"hierarchy scan", hierarchy},
        {"block structure", block_structure},
        {"two-copy gate twirl", twirl_quadrature},
        {"circuit experiment", circuit_experiment},
        {"monte carlo", monte_carlo},
        {"noise scaling", noise_scaling},
        {"invariance suite", invariance},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome out;
        try {
            out = criteria[i].second();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        failures += !out.pass;
        std::printf("%s %2zu %s: %s\n", out.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
