#include "chanmom/weingarten.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace chanmom {

namespace {

std::vector<Rational> inverse_powers(long d, int t) {
    std::vector<Rational> p(static_cast<std::size_t>(t) + 1);
    for (int s = 0; s <= t; ++s) p[static_cast<std::size_t>(s)] = inverse_power(d, s);
    return p;
}

std::vector<Rational> solve_weingarten_function(int t, long d) {
    const PermTable& tab = perm_table(t);
    const std::size_t n = tab.count();
    // d^t X has integer entries d^{#cycles(sigma^{-1} pi)}
    std::vector<Integer> pw(static_cast<std::size_t>(t) + 1);
    for (int s = 0; s <= t; ++s) mpz_ui_pow_ui(pw[static_cast<std::size_t>(s)].get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(s));
    ExactMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Rational(pw[static_cast<std::size_t>(t - tab.distance(i, j))]);
    std::vector<Rational> rhs(n, Rational(0));
    rhs[tab.identity_index()] = 1;
    std::vector<Rational> w;
    try {
        w = bareiss_solve(a, rhs);
    } catch (const SingularMatrix&) {
        throw SingularGram("Gram matrix is singular for t=" + std::to_string(t) + ", d=" + std::to_string(d));
    }
    const Rational scale(pw[static_cast<std::size_t>(t)]);
    for (auto& x : w) x *= scale;
    return w;
}

}  // namespace

ExactMatrix gram_matrix(int t, long d) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    const PermTable& tab = perm_table(t);
    const auto p = inverse_powers(d, t);
    const std::size_t n = tab.count();
    ExactMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = p[static_cast<std::size_t>(tab.distance(i, j))];
    return g;
}

Eigen::MatrixXd gram_matrix_f(int t, double d) {
    const PermTable& tab = perm_table(t);
    const auto n = static_cast<Eigen::Index>(tab.count());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            g(i, j) = std::pow(d, -tab.distance(static_cast<std::size_t>(i), static_cast<std::size_t>(j)));
    return g;
}

std::vector<Rational> weingarten_function(int t, long d) {
    if (d < 1) throw std::invalid_argument("d must be >= 1");
    static std::mutex mu;
    static std::map<std::pair<int, long>, std::vector<Rational>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({t, d});
        if (it != cache.end()) return it->second;
    }
    auto w = solve_weingarten_function(t, d);
    std::lock_guard<std::mutex> lock(mu);
    if (cache.size() > 4096) cache.clear();
    cache.emplace(std::make_pair(t, d), w);
    return w;
}

ExactMatrix weingarten_matrix(int t, long d) {
    const auto w = weingarten_function(t, d);
    const PermTable& tab = perm_table(t);
    const std::size_t n = tab.count();
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = w[tab.product(tab.inverse(j), i)];
    return m;
}

Eigen::MatrixXd weingarten_matrix_f(int t, double d) {
    if (d < t) throw SingularGram("Gram matrix is singular for d < t");
    return gram_matrix_f(t, d).partialPivLu().inverse();
}

Rational jucys_murphy_sum(int t, long d) {
    Rational r(binomial(d + t - 1, t) * factorial(t));
    return r * inverse_power(d, t);
}

std::vector<Rational> character_vector(int t, long d) {
    const PermTable& tab = perm_table(t);
    const auto p = inverse_powers(d, t);
    std::vector<Rational> c(tab.count());
    for (std::size_t i = 0; i < tab.count(); ++i) c[i] = p[static_cast<std::size_t>(tab.size_of(i))];
    return c;
}

TransferMatrix haar_transfer_perm(int t, long d) {
    TransferMatrix tm;
    tm.basis = {BasisTag::Kind::Permutation, t, d};
    tm.ensemble = EnsembleSpec::haar(t, d);
    tm.q = weingarten_matrix(t, d);
    return tm;
}

TransferMatrix chaar_transfer_perm(int t, long d, long dE) {
    if (dE < 1) throw std::invalid_argument("dE must be >= 1");
    const long dd = d * dE;
    if (dd < t)
        throw SingularGram("Gram matrix is singular for d*dE < t (t=" + std::to_string(t) + ", d*dE=" + std::to_string(dd) + ")");
    TransferMatrix tm;
    tm.basis = {BasisTag::Kind::Permutation, t, d};
    tm.ensemble = EnsembleSpec::chaar(t, d, dE);
    tm.q = weingarten_matrix(t, dd);
    const auto chi = character_vector(t, dE);
    for (std::size_t i = 0; i < tm.q.rows(); ++i)
        if (chi[i] != 1)
            for (std::size_t j = 0; j < tm.q.cols(); ++j) tm.q(i, j) *= chi[i];
    return tm;
}

TransferMatrix chaar_transfer_perm_f(int t, double d, double dE) {
    TransferMatrix tm;
    tm.basis = {BasisTag::Kind::Permutation, t, static_cast<long>(d)};
    tm.ensemble = EnsembleSpec::chaar(t, static_cast<long>(d), static_cast<long>(dE));
    tm.exact = false;
    tm.f = weingarten_matrix_f(t, d * dE);
    const PermTable& tab = perm_table(t);
    for (Eigen::Index i = 0; i < tm.f.rows(); ++i) tm.f.row(i) *= std::pow(dE, -tab.size_of(static_cast<std::size_t>(i)));
    return tm;
}

}  // namespace chanmom
