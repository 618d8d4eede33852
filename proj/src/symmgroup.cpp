#include "chanmom/symmgroup.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

namespace chanmom {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || static_cast<std::size_t>(v) >= images_.size() || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("images do not form a bijection");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Permutation Permutation::identity(int t) {
    std::vector<int> im(static_cast<std::size_t>(t));
    std::iota(im.begin(), im.end(), 0);
    return Permutation(std::move(im));
}

Permutation Permutation::transposition(int t, int a, int b) { return from_cycles(t, {{a, b}}); }

Permutation Permutation::from_cycles(int t, const std::vector<Cycle>& cycles) {
    std::vector<int> im(static_cast<std::size_t>(t));
    std::iota(im.begin(), im.end(), 0);
    std::vector<bool> used(static_cast<std::size_t>(t), false);
    for (const auto& c : cycles) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            int from = c[i];
            if (from < 0 || from >= t || used[static_cast<std::size_t>(from)])
                throw std::invalid_argument("cycles are not disjoint on [t]");
            used[static_cast<std::size_t>(from)] = true;
            im[static_cast<std::size_t>(from)] = c[(i + 1) % c.size()];
        }
    }
    return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<int> im(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) im[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Permutation(std::move(im));
}

std::vector<Cycle> Permutation::cycles() const {
    std::vector<Cycle> out;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (seen[s]) continue;
        Cycle c;
        std::size_t i = s;
        while (!seen[i]) {
            seen[i] = true;
            c.push_back(static_cast<int>(i));
            i = static_cast<std::size_t>(images_[i]);
        }
        if (c.size() > 1) out.push_back(std::move(c));
    }
    return out;
}

int Permutation::cycle_count() const {
    int n = 0;
    std::vector<bool> seen(images_.size(), false);
    for (std::size_t s = 0; s < images_.size(); ++s) {
        if (seen[s]) continue;
        ++n;
        for (std::size_t i = s; !seen[i]; i = static_cast<std::size_t>(images_[i])) seen[i] = true;
    }
    return n;
}

std::uint32_t Permutation::support_mask() const {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != static_cast<int>(i)) m |= (1u << i);
    return m;
}

bool Permutation::is_identity() const { return support_mask() == 0; }

std::string Permutation::to_string() const {
    auto cs = cycles();
    if (cs.empty()) return "e";
    std::ostringstream os;
    for (const auto& c : cs) {
        os << '(';
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
        os << ')';
    }
    return os.str();
}

Permutation compose(const Permutation& a, const Permutation& b) {
    if (a.t() != b.t()) throw OrderMismatch("compose: order mismatch");
    std::vector<int> im(static_cast<std::size_t>(a.t()));
    for (int i = 0; i < a.t(); ++i) im[static_cast<std::size_t>(i)] = a[b[i]];
    return Permutation(std::move(im));
}

int size(const Permutation& sigma) { return sigma.t() - sigma.cycle_count(); }

std::vector<int> support(const Permutation& sigma) {
    std::vector<int> s;
    for (int i = 0; i < sigma.t(); ++i)
        if (sigma[i] != i) s.push_back(i);
    return s;
}

bool is_subpermutation(const Permutation& pi, const Permutation& sigma) {
    if (pi.t() != sigma.t()) throw OrderMismatch("is_subpermutation: order mismatch");
    return size(compose(pi.inverse(), sigma)) == size(sigma) - size(pi);
}

long long catalan(int n) {
    long long c = 1;
    for (int k = 0; k < n; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

long long derangements(int l) {
    if (l == 0) return 1;
    if (l == 1) return 0;
    long long a = 1, b = 0;  // !0, !1
    for (int n = 2; n <= l; ++n) {
        long long c = (n - 1) * (a + b);
        a = b;
        b = c;
    }
    return b;
}

long long mobius(const Permutation& sigma) {
    long long m = 1;
    for (const auto& c : sigma.cycles()) {
        const int sz = static_cast<int>(c.size()) - 1;
        m *= ((sz % 2) ? -1 : 1) * catalan(sz);
    }
    return m;
}

long long subpermutation_count(const Permutation& sigma) {
    long long n = 1;
    for (const auto& c : sigma.cycles()) n *= catalan(static_cast<int>(c.size()));
    return n;
}

Rational character(const Permutation& sigma, long d) { return inverse_power(d, size(sigma)); }

Rational character(const Permutation& sigma, const Permutation& pi, long d) {
    return inverse_power(d, size(compose(sigma.inverse(), pi)));
}

std::vector<std::vector<std::vector<int>>> noncrossing_partitions(int l) {
    std::vector<std::vector<std::vector<int>>> out;
    if (l == 0) {
        out.emplace_back();
        return out;
    }
    // restricted growth strings enumerate all set partitions; crossing ones are dropped
    std::vector<int> rg(static_cast<std::size_t>(l), 0);
    while (true) {
        bool crossing = false;
        for (int a = 0; a < l && !crossing; ++a)
            for (int b = a + 1; b < l && !crossing; ++b)
                for (int c = b + 1; c < l && !crossing; ++c)
                    for (int d = c + 1; d < l && !crossing; ++d)
                        if (rg[a] == rg[c] && rg[b] == rg[d] && rg[a] != rg[b]) crossing = true;
        if (!crossing) {
            int blocks = *std::max_element(rg.begin(), rg.end()) + 1;
            std::vector<std::vector<int>> part(static_cast<std::size_t>(blocks));
            for (int i = 0; i < l; ++i) part[static_cast<std::size_t>(rg[i])].push_back(i);
            out.push_back(std::move(part));
        }
        int i = l - 1;
        while (i > 0) {
            int mx = *std::max_element(rg.begin(), rg.begin() + i);
            if (rg[i] <= mx) break;
            --i;
        }
        if (i == 0) break;
        ++rg[i];
        for (int j = i + 1; j < l; ++j) rg[j] = 0;
    }
    return out;
}

std::vector<Permutation> enumerate_subpermutations(const Permutation& sigma) {
    const int t = sigma.t();
    std::vector<std::vector<int>> partial{std::vector<int>(static_cast<std::size_t>(t))};
    std::iota(partial[0].begin(), partial[0].end(), 0);
    for (const auto& cyc : sigma.cycles()) {
        const int l = static_cast<int>(cyc.size());
        std::vector<std::vector<int>> next;
        for (const auto& part : noncrossing_partitions(l)) {
            for (const auto& base : partial) {
                auto im = base;
                for (const auto& block : part)
                    for (std::size_t i = 0; i < block.size(); ++i)
                        im[static_cast<std::size_t>(cyc[static_cast<std::size_t>(block[i])])] =
                            cyc[static_cast<std::size_t>(block[(i + 1) % block.size()])];
                next.push_back(std::move(im));
            }
        }
        partial = std::move(next);
    }
    std::vector<Permutation> out;
    out.reserve(partial.size());
    for (auto& im : partial) out.emplace_back(std::move(im));
    std::sort(out.begin(), out.end());
    return out;
}

int max_order() {
    static const int cap = [] {
        const char* env = std::getenv("CHANNEL_MOMENTS_MAX_T");
        if (env == nullptr) return 6;
        int v = std::atoi(env);
        return v >= 1 ? v : 6;
    }();
    return cap;
}

void check_order(int t) {
    if (t < 1) throw std::invalid_argument("order t must be >= 1");
    if (t > max_order())
        throw std::invalid_argument("order t=" + std::to_string(t) + " exceeds cap " + std::to_string(max_order()) +
                                    " (set CHANNEL_MOMENTS_MAX_T)");
}

PermTable::PermTable(int t) : t_(t) {
    check_order(t);
    std::vector<int> im(static_cast<std::size_t>(t));
    std::iota(im.begin(), im.end(), 0);
    do {
        perms_.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    std::stable_sort(perms_.begin(), perms_.end(), [](const Permutation& a, const Permutation& b) {
        const auto ma = a.support_mask(), mb = b.support_mask();
        const int pa = std::popcount(ma), pb = std::popcount(mb);
        if (pa != pb) return pa < pb;
        if (ma != mb) return ma < mb;
        return a.images() < b.images();
    });
    const std::size_t n = perms_.size();
    lookup_.assign(n, 0);
    sizes_.resize(n);
    supports_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        lookup_[lehmer(perms_[i].images())] = i;
        sizes_[i] = size(perms_[i]);
        supports_[i] = perms_[i].support_mask();
    }
    inv_.resize(n);
    for (std::size_t i = 0; i < n; ++i) inv_[i] = index_of(perms_[i].inverse());
    mult_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) mult_[a * n + b] = index_of(compose(perms_[a], perms_[b]));
    below_.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        for (const auto& p : enumerate_subpermutations(perms_[s])) below_[s].push_back(index_of(p));
        std::sort(below_[s].begin(), below_[s].end());
    }
}

std::size_t PermTable::lehmer(const std::vector<int>& images) const {
    std::size_t code = 0;
    const std::size_t n = images.size();
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t smaller = 0;
        for (std::size_t j = i + 1; j < n; ++j)
            if (images[j] < images[i]) ++smaller;
        code = code * (n - i) + smaller;
    }
    return code;
}

std::size_t PermTable::index_of(const Permutation& p) const {
    if (p.t() != t_) throw OrderMismatch("permutation order does not match table");
    return lookup_[lehmer(p.images())];
}

bool PermTable::is_below(std::size_t pi, std::size_t sigma) const {
    const auto& b = below_[sigma];
    return std::binary_search(b.begin(), b.end(), pi);
}

const PermTable& perm_table(int t) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<PermTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(t);
    if (it == cache.end()) it = cache.emplace(t, std::make_unique<PermTable>(t)).first;
    return *it->second;
}

}  // namespace chanmom
