#include "chanmom/localized.hpp"

#include <cmath>
#include <stdexcept>

#include "chanmom/symmgroup.hpp"
#include "chanmom/weingarten.hpp"

namespace chanmom {

namespace {

template <typename M>
M sum_over_superpermutations(const PermTable& tab, const M& a) {
    // returns Z^T a Z with Z(eta, sigma) = [sigma ⊆ eta]
    const std::size_t n = tab.count();
    M right(n, n);
    for (std::size_t kappa = 0; kappa < n; ++kappa)
        for (std::size_t pi : tab.below(kappa))
            for (std::size_t eta = 0; eta < n; ++eta) right(eta, pi) += a(eta, kappa);
    M out(n, n);
    for (std::size_t eta = 0; eta < n; ++eta)
        for (std::size_t sigma : tab.below(eta))
            for (std::size_t pi = 0; pi < n; ++pi) out(sigma, pi) += right(eta, pi);
    return out;
}

struct DenseD {
    Eigen::MatrixXd m;
    DenseD(std::size_t r, std::size_t c) : m(Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))) {}
    double& operator()(std::size_t i, std::size_t j) { return m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
    double operator()(std::size_t i, std::size_t j) const { return m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); }
};

}  // namespace

ExactMatrix phi_matrix(int t) {
    const PermTable& tab = perm_table(t);
    const std::size_t n = tab.count();
    ExactMatrix m(n, n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t p : tab.below(s)) m(s, p) = static_cast<long>(mobius(tab.at(tab.product(tab.inverse(p), s))));
    return m;
}

ExactMatrix phi_inverse(int t) {
    const PermTable& tab = perm_table(t);
    const std::size_t n = tab.count();
    ExactMatrix m(n, n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t p : tab.below(s)) m(s, p) = 1;
    return m;
}

ExactMatrix localized_gram(int t, long d) {
    const PermTable& tab = perm_table(t);
    const std::size_t n = tab.count();
    std::vector<Integer> pw(2 * static_cast<std::size_t>(t) + 1);
    for (std::size_t s = 0; s < pw.size(); ++s) mpz_ui_pow_ui(pw[s].get_mpz_t(), static_cast<unsigned long>(d), s);
    // c(eta, kappa) = d^{|eta| + |kappa| - |eta^{-1} kappa|}, the Gram of normalized permutations
    std::vector<Integer> c(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            c[i * n + j] = pw[static_cast<std::size_t>(tab.size_of(i) + tab.size_of(j) - tab.distance(i, j))];
    std::vector<std::vector<std::pair<std::size_t, long>>> phi(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t p : tab.below(s)) phi[s].emplace_back(p, static_cast<long>(mobius(tab.at(tab.product(tab.inverse(p), s)))));
    std::vector<Integer> left(n * n);
    for (std::size_t s = 0; s < n; ++s)
        for (const auto& [eta, mu] : phi[s])
            for (std::size_t j = 0; j < n; ++j) left[s * n + j] += c[eta * n + j] * mu;
    ExactMatrix g(n, n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t p = 0; p < n; ++p) {
            Integer acc = 0;
            for (const auto& [kappa, mu] : phi[p]) acc += left[s * n + kappa] * mu;
            g(s, p) = Rational(acc);
        }
    return g;
}

Gram gram_for(const BasisTag& basis) {
    Gram g;
    g.basis = basis;
    g.q = basis.kind == BasisTag::Kind::Permutation ? gram_matrix(basis.t, basis.d) : localized_gram(basis.t, basis.d);
    return g;
}

TransferMatrix to_localized(const TransferMatrix& tau) {
    if (tau.basis.kind != BasisTag::Kind::Permutation) throw std::invalid_argument("to_localized expects a permutation-basis transfer");
    const PermTable& tab = perm_table(tau.basis.t);
    const std::size_t n = tab.count();
    TransferMatrix out = tau;
    out.basis.kind = BasisTag::Kind::Localized;
    if (tau.exact) {
        const auto chi = character_vector(tau.basis.t, tau.basis.d);
        ExactMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (tau.q(i, j) != 0) a(i, j) = chi[i] * tau.q(i, j) * chi[j];
        out.q = sum_over_superpermutations(tab, a);
    } else {
        DenseD a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                a(i, j) = std::pow(static_cast<double>(tau.basis.d), -tab.size_of(i) - tab.size_of(j)) *
                          tau.f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        out.f = sum_over_superpermutations(tab, a).m;
    }
    return out;
}

long DERule::apply(long d) const {
    switch (kind) {
        case Kind::Fixed: return value;
        case Kind::D: return d;
        case Kind::DSquared: return d * d;
    }
    return value;
}

std::string DERule::name() const {
    switch (kind) {
        case Kind::Fixed: return std::to_string(value);
        case Kind::D: return "d";
        case Kind::DSquared: return "d2";
    }
    return "?";
}

DERule DERule::parse(const std::string& text) {
    if (text == "d") return {Kind::D, 0};
    if (text == "d2" || text == "d^2" || text == "dd") return {Kind::DSquared, 0};
    std::size_t pos = 0;
    long v = std::stol(text, &pos);
    if (pos != text.size() || v < 1) throw std::invalid_argument("invalid dE rule: " + text);
    return {Kind::Fixed, v};
}

ExponentMatrix scaling_exponents(EnsembleSpec::Kind kind, int t, long d1, long d2, DERule rule) {
    if (d1 < t || d2 < t || d1 == d2) throw std::invalid_argument("scaling_exponents needs two distinct dimensions >= t");
    auto localized_at = [&](long d) {
        switch (kind) {
            case EnsembleSpec::Kind::Haar: return to_localized(haar_transfer_perm(t, d));
            case EnsembleSpec::Kind::CHaar: return to_localized(chaar_transfer_perm(t, d, rule.apply(d)));
            default: throw std::invalid_argument("scaling_exponents supports Haar and cHaar");
        }
    };
    const TransferMatrix a = localized_at(d1);
    const TransferMatrix b = localized_at(d2);
    const std::size_t n = a.q.rows();
    ExponentMatrix out(n, std::vector<ExponentEntry>(n));
    const double lr = std::log(static_cast<double>(d2) / static_cast<double>(d1));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            ExponentEntry& e = out[i][j];
            if (a.q(i, j) == 0 && b.q(i, j) == 0) {
                e.structural_zero = true;
                continue;
            }
            if (a.q(i, j) == 0 || b.q(i, j) == 0) {
                e.mixed = true;
                continue;
            }
            // exponent l in |entry| ~ d^{-l}
            const Rational ratio = abs(a.q(i, j) / b.q(i, j));
            e.estimate = std::log(ratio.get_d()) / lr;
            e.exponent = static_cast<int>(std::lround(e.estimate));
            e.mixed = std::abs(e.estimate - e.exponent) >= 0.1;
        }
    return out;
}

}  // namespace chanmom
