#include "chanmom/moments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "chanmom/channels.hpp"
#include "chanmom/sampling.hpp"
#include "chanmom/symmgroup.hpp"
#include "chanmom/weingarten.hpp"

namespace chanmom {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }


TransferMatrix depolarize_transfer(int t, long d) {
    const PermTable& tab = perm_table(t);
    TransferMatrix tm;
    tm.basis = {BasisTag::Kind::Permutation, t, d};
    tm.ensemble = EnsembleSpec::depolarize(t, d);
    tm.q = ExactMatrix(tab.count(), tab.count());
    tm.q(tab.identity_index(), tab.identity_index()) = 1;
    return tm;
}

}  // namespace

TransferMatrix transfer(const EnsembleSpec& spec, BasisTag::Kind basis) {
    if (spec.d < 1 || spec.dE < 1) throw std::invalid_argument("dimensions must be positive");
    TransferMatrix tm;
    switch (spec.kind) {
        case EnsembleSpec::Kind::Haar: tm = haar_transfer_perm(spec.t, spec.d); break;
        case EnsembleSpec::Kind::CHaar: tm = chaar_transfer_perm(spec.t, spec.d, spec.dE); break;
        case EnsembleSpec::Kind::Depolarize: tm = depolarize_transfer(spec.t, spec.d); break;
        default: throw std::invalid_argument("transfer: circuit ensembles have no permutation-basis transfer");
    }
    tm.ensemble = spec;
    tm.ensemble.k = 1;
    tm.k = 1;
    if (basis == BasisTag::Kind::Localized) tm = to_localized(tm);
    return tm;
}

TransferMatrix concatenate(const TransferMatrix& tau, const Gram& gram, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (!(gram.basis == tau.basis)) throw std::invalid_argument("Gram basis does not match transfer basis");
    TransferMatrix out = tau;
    out.k = tau.k * k;
    out.ensemble.k = out.k;
    if (tau.exact) {
        const ExactMatrix step = gram.q * tau.q;
        for (int i = 1; i < k; ++i) out.q = out.q * step;
    } else {
        const Eigen::MatrixXd step = gram.q.to_double() * tau.f;
        for (int i = 1; i < k; ++i) out.f = out.f * step;
    }
    return out;
}

TransferMatrix transfer_k(const EnsembleSpec& spec, BasisTag::Kind basis) {
    TransferMatrix tm = transfer(spec, basis);
    if (spec.k == 1) return tm;
    return concatenate(tm, gram_for(tm.basis), spec.k);
}

TransferMatrix exact_t2_chaar(int k, long d, long dE) {
    if (k < 1 || d < 2 || dE < 1) throw std::invalid_argument("exact_t2_chaar: need k >= 1, d >= 2, dE >= 1");
    const Rational d2(d * d);
    const Rational de(dE);
    const Rational den = d2 * de * de - 1;
    const Rational a = (de - 1) / den;
    const Rational r = de * (d2 - 1) / den;
    Rational geometric = 1;
    Rational rs = 1;
    for (int s = 1; s < k; ++s) {
        rs *= r;
        geometric += rs;
    }
    TransferMatrix tm;
    tm.basis = {BasisTag::Kind::Localized, 2, d};
    tm.ensemble = EnsembleSpec::chaar(2, d, dE, k);
    tm.k = k;
    tm.q = ExactMatrix(2, 2);
    tm.q(0, 0) = 1;
    tm.q(0, 1) = 0;
    tm.q(1, 0) = a * geometric;
    tm.q(1, 1) = rational_pow(r, k) / (d2 - 1);
    return tm;
}

Rational norm_squared(const TransferMatrix& tau, const Gram& gram) {
    if (!tau.exact) throw std::invalid_argument("norm_squared: exact transfer required; use norm_squared_f");
    if (!(gram.basis == tau.basis)) throw std::invalid_argument("Gram basis does not match transfer basis");
    // sum tau(P,S) tau(Q,T) X(P,Q) X(S,T) = Tr[X tau X tau^T]
    const ExactMatrix a = gram.q * tau.q;
    const ExactMatrix b = gram.q * tau.q.transpose();
    Rational s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0 && b(j, i) != 0) s += a(i, j) * b(j, i);
    return s;
}

Rational trace(const TransferMatrix& tau, const Gram& gram) {
    if (!tau.exact) throw std::invalid_argument("trace: exact transfer required; use trace_f");
    if (!(gram.basis == tau.basis)) throw std::invalid_argument("Gram basis does not match transfer basis");
    Rational s = 0;
    for (std::size_t i = 0; i < tau.q.rows(); ++i)
        for (std::size_t j = 0; j < tau.q.cols(); ++j)
            if (tau.q(i, j) != 0) s += tau.q(i, j) * gram.q(j, i);
    return s;
}

double norm_squared_f(const Eigen::MatrixXd& tau, const Eigen::MatrixXd& gram) {
    return ((gram * tau) * (gram * tau.transpose())).trace();
}

double trace_f(const Eigen::MatrixXd& tau, const Eigen::MatrixXd& gram) { return (tau * gram).trace(); }

SpectralReport spectrum(const EnsembleSpec& spec) {
    const int t = spec.t;
    const PermTable& tab = perm_table(t);
    Eigen::MatrixXd tau;
    switch (spec.kind) {
        case EnsembleSpec::Kind::Haar: tau = weingarten_matrix_f(t, static_cast<double>(spec.d)); break;
        case EnsembleSpec::Kind::CHaar: tau = chaar_transfer_perm_f(t, static_cast<double>(spec.d), static_cast<double>(spec.dE)).f; break;
        case EnsembleSpec::Kind::Depolarize: tau = depolarize_transfer(t, spec.d).q.to_double(); break;
        default: throw std::invalid_argument("spectrum: unsupported ensemble");
    }
    const Eigen::MatrixXd x = gram_matrix_f(t, static_cast<double>(spec.d));
    Eigen::MatrixXd mod = tau * x;
    if (spec.k > 1) {
        Eigen::MatrixXd p = mod;
        for (int i = 1; i < spec.k; ++i) p = p * mod;
        mod = p;
    }
    SpectralReport rep;
    Eigen::EigenSolver<Eigen::MatrixXd> es(mod);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectrum: eigen-solver did not converge");
    const Eigen::VectorXcd ev = es.eigenvalues();
    const Eigen::MatrixXcd vecs = es.eigenvectors();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(ev.size()));
    for (Eigen::Index i = 0; i < ev.size(); ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ma = std::abs(ev(a)), mb = std::abs(ev(b));
        if (std::abs(ma - mb) > 1e-13) return ma > mb;
        return ev(a).real() > ev(b).real();
    });
    const Eigen::MatrixXcd modc = mod.cast<std::complex<double>>();
    for (Eigen::Index i : order) {
        rep.eigenvalues.push_back(ev(i));
        const Eigen::VectorXcd v = vecs.col(i);
        rep.residuals.push_back((modc * v - ev(i) * v).norm() / std::max(v.norm(), 1e-300));
    }
    // leading pair: eigenvalue closest to 1
    Eigen::Index lead = 0;
    for (Eigen::Index i = 1; i < ev.size(); ++i)
        if (std::abs(ev(i) - 1.0) < std::abs(ev(lead) - 1.0)) lead = i;
    Eigen::VectorXcd right = vecs.col(lead);
    const std::size_t e = tab.identity_index();
    if (std::abs(right(static_cast<Eigen::Index>(e))) > 1e-300) right /= right(static_cast<Eigen::Index>(e));
    rep.leading_right = right.real();
    Eigen::EigenSolver<Eigen::MatrixXd> esl(mod.transpose());
    const Eigen::VectorXcd evl = esl.eigenvalues();
    Eigen::Index leadl = 0;
    for (Eigen::Index i = 1; i < evl.size(); ++i)
        if (std::abs(evl(i) - 1.0) < std::abs(evl(leadl) - 1.0)) leadl = i;
    Eigen::VectorXcd left = esl.eigenvectors().col(leadl);
    Eigen::Index arg = 0;
    left.cwiseAbs().maxCoeff(&arg);
    left /= left(arg);
    rep.leading_left = left.real();
    if (spec.kind != EnsembleSpec::Kind::Depolarize) {
        const double base = static_cast<double>(spec.d) * static_cast<double>(spec.kind == EnsembleSpec::Kind::CHaar ? spec.dE : 1);
        Eigen::VectorXd psi(static_cast<Eigen::Index>(tab.count()));
        for (std::size_t i = 0; i < tab.count(); ++i) psi(static_cast<Eigen::Index>(i)) = std::pow(base, -tab.size_of(i));
        rep.psi_residual = (mod * psi - psi).cwiseAbs().maxCoeff();
    }
    return rep;
}

double design_distance_depolarize(const EnsembleSpec& spec) {
    const TransferMatrix tm = transfer_k(spec);
    const Rational n2 = norm_squared(tm, gram_for(tm.basis));
    const double r = Rational(n2 - 1).get_d();
    if (r < -1e-12) throw std::runtime_error("design distance: negative radicand, norm computation inconsistent");
    return std::sqrt(std::max(0.0, r));
}

HierarchyResult hierarchy_scan(const std::vector<int>& t_list, const std::vector<int>& k_list, const std::vector<long>& d_list,
                               const std::vector<DERule>& de_rules, int threads) {
    struct Point {
        int t;
        int k;
        long d;
        long dE;
    };
    HierarchyResult res;
    std::vector<Point> grid;
    for (int t : t_list)
        for (int k : k_list)
            for (long d : d_list) {
                std::vector<long> des;
                for (const auto& r : de_rules) des.push_back(r.apply(d));
                std::sort(des.begin(), des.end());
                des.erase(std::unique(des.begin(), des.end()), des.end());
                for (long dE : des) {
                    if (d * dE < t) {
                        res.skipped.push_back("t=" + std::to_string(t) + ",k=" + std::to_string(k) + ",d=" + std::to_string(d) +
                                              ",dE=" + std::to_string(dE));
                        continue;
                    }
                    grid.push_back({t, k, d, dE});
                }
            }
    res.rows.resize(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            const Point& p = grid[i];
            const TransferMatrix tm = transfer_k(EnsembleSpec::chaar(p.t, p.d, p.dE, p.k));
            const Gram g = gram_for(tm.basis);
            HierarchyRow& row = res.rows[i];
            row.t = p.t;
            row.k = p.k;
            row.d = p.d;
            row.dE = p.dE;
            row.norm2 = norm_squared(tm, g);
            row.trace = trace(tm, g);
            row.eps_dep = std::sqrt(std::max(0.0, Rational(row.norm2 - 1).get_d()));
        }
    };
    const int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    std::map<std::tuple<int, int, long, long>, std::size_t> at;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        auto& r = res.rows[i];
        at[{r.t, r.k, r.d, r.dE}] = i;
        if (r.norm2 < 1 || r.norm2 > Rational(factorial(r.t))) {
            r.flags.push_back("bound");
            ++res.bound_violations;
        }
    }
    // monotone nonincreasing in dE at fixed (t,k,d) and in k at fixed (t,d,dE)
    for (auto it = at.begin(); it != at.end(); ++it) {
        auto nx = std::next(it);
        if (nx == at.end()) break;
        const auto& [t, k, d, dE] = it->first;
        const auto& [t2, k2, d2, dE2] = nx->first;
        if (t == t2 && k == k2 && d == d2 && res.rows[nx->second].norm2 > res.rows[it->second].norm2) {
            res.rows[nx->second].flags.push_back("nonmonotone_dE");
            ++res.de_monotonicity_flags;
        }
    }
    std::map<std::tuple<int, long, long, int>, std::size_t> byk;
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
        const auto& r = res.rows[i];
        byk[{r.t, r.d, r.dE, r.k}] = i;
    }
    for (auto it = byk.begin(); it != byk.end(); ++it) {
        auto nx = std::next(it);
        if (nx == byk.end()) break;
        const auto& [t, d, dE, k] = it->first;
        const auto& [t2, d2, dE2, k2] = nx->first;
        if (t == t2 && d == d2 && dE == dE2 && res.rows[nx->second].norm2 > res.rows[it->second].norm2) {
            res.rows[nx->second].flags.push_back("nonmonotone_k");
            ++res.k_monotonicity_flags;
        }
    }
    return res;
}

std::vector<InvarianceCheck> invariance_checks(const EnsembleSpec& a, const EnsembleSpec& b) {
    if (a.t != b.t || a.d != b.d) throw std::invalid_argument("invariance_checks: incompatible (t, d)");
    const TransferMatrix ta = transfer(a);
    const TransferMatrix tb = transfer(b);
    const ExactMatrix x = gram_matrix(a.t, a.d);
    auto product = [&](const ExactMatrix& p, const ExactMatrix& q) { return p * x * q; };
    auto equal_check = [&](const std::string& name, const ExactMatrix& lhs, const ExactMatrix& rhs) {
        InvarianceCheck c;
        c.name = name;
        c.passed = lhs == rhs;
        c.deviation = max_abs((lhs - rhs).to_double());
        return c;
    };
    std::vector<InvarianceCheck> out;
    const std::pair<const EnsembleSpec*, const TransferMatrix*> sides[2] = {{&a, &ta}, {&b, &tb}};
    for (int s = 0; s < 2; ++s) {
        const auto& [sp, tp] = sides[s];
        const auto& [op, to] = sides[1 - s];
        const std::string lbl = sp->label() + "," + op->label();
        if (sp->kind == EnsembleSpec::Kind::Depolarize) {
            out.push_back(equal_check("dep_right_invariance[" + lbl + "]", product(tp->q, to->q), tp->q));
            if (op->unital()) out.push_back(equal_check("dep_left_invariance[" + lbl + "]", product(to->q, tp->q), tp->q));
        }
        if (sp->kind == EnsembleSpec::Kind::Haar && op->kind == EnsembleSpec::Kind::CHaar) {
            out.push_back(equal_check("haar_chaar_left[" + lbl + "]", product(tp->q, to->q), to->q));
            out.push_back(equal_check("haar_chaar_right[" + lbl + "]", product(to->q, tp->q), to->q));
        }
    }
    for (const auto* sp : {&a, &b}) {
        if (sp->kind == EnsembleSpec::Kind::CHaar && sp->t > 1 && sp->dE > 1) {
            const TransferMatrix& tm = sp == &a ? ta : tb;
            const ExactMatrix mod = tm.q * x;
            InvarianceCheck c;
            c.name = "chaar_not_idempotent[" + sp->label() + "]";
            c.deviation = max_abs((mod * mod - mod).to_double());
            c.passed = c.deviation > 1e-6;
            out.push_back(c);
            if (&a == &b) break;
        }
    }
    return out;
}

McEstimate frame_potential_mc(const EnsembleSpec& spec, std::size_t samples, std::uint64_t seed, int threads) {
    if (samples < 100) throw std::invalid_argument("frame_potential_mc: at least 100 samples required");
    McEstimate est;
    est.samples = samples;
    if (spec.kind == EnsembleSpec::Kind::Depolarize) {
        est.mean = 1.0;
        return est;
    }
    if (spec.kind != EnsembleSpec::Kind::Haar && spec.kind != EnsembleSpec::Kind::CHaar)
        throw std::invalid_argument("frame_potential_mc: Haar or cHaar ensemble required");
    const Eigen::Index d = spec.d;
    const Eigen::Index dE = spec.kind == EnsembleSpec::Kind::CHaar ? spec.dE : 1;
    const int t = spec.t;
    const int k = spec.k;
    auto draw = [=](Rng& rng) {
        // a concatenation of k channels is sampled as a product of k independent draws
        auto channel = [&](Rng& g) {
            Eigen::MatrixXcd s = Eigen::MatrixXcd::Identity(d * d, d * d);
            for (int i = 0; i < k; ++i) {
                const auto kraus = chaar_kraus(d, dE, g);
                Eigen::MatrixXcd step = Eigen::MatrixXcd::Zero(d * d, d * d);
                for (const auto& kr : kraus) step += kron(kr, kr.conjugate());
                s = step * s;
            }
            return s;
        };
        if (k == 1) {
            const auto ka = chaar_kraus(d, dE, rng);
            const auto kb = chaar_kraus(d, dE, rng);
            double overlap = 0.0;
            for (const auto& x : ka)
                for (const auto& y : kb) overlap += std::norm((x.adjoint() * y).trace());
            return std::pow(overlap, t);
        }
        const Eigen::MatrixXcd sa = channel(rng);
        const Eigen::MatrixXcd sb = channel(rng);
        return std::pow((sa.adjoint() * sb).trace().real(), t);
    };
    const Welford w = parallel_sample(samples, seed, threads, draw);
    est.mean = w.mean;
    est.stderr_ = w.stderr_();
    return est;
}

}  // namespace chanmom
