#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "chanmom/rational.hpp"

namespace chanmom {

// Cycle in standard notation: indices[i] maps to indices[i + 1] (cyclically).
using Cycle = std::vector<int>;

class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int t);
    static Permutation transposition(int t, int a, int b);
    static Permutation from_cycles(int t, const std::vector<Cycle>& cycles);

    int t() const { return static_cast<int>(images_.size()); }
    int operator[](int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;
    std::vector<Cycle> cycles() const;  // non-trivial cycles only, each starting at its smallest index
    int cycle_count() const;            // fixed points included
    std::uint32_t support_mask() const;
    bool is_identity() const;
    std::string to_string() const;      // "e" or "(0 1 2)(3 4)"

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator!=(const Permutation& o) const { return images_ != o.images_; }
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

private:
    std::vector<int> images_;
};

struct OrderMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

Permutation compose(const Permutation& a, const Permutation& b);  // (a b)[i] = a[b[i]]
int size(const Permutation& sigma);
std::vector<int> support(const Permutation& sigma);
bool is_subpermutation(const Permutation& pi, const Permutation& sigma);
std::vector<Permutation> enumerate_subpermutations(const Permutation& sigma);
long long mobius(const Permutation& sigma);
Rational character(const Permutation& sigma, long d);
Rational character(const Permutation& sigma, const Permutation& pi, long d);

long long catalan(int n);
long long derangements(int l);
long long subpermutation_count(const Permutation& sigma);  // product of Catalan(cycle length)

// Non-crossing set partitions of {0, ..., l-1}; each block listed in increasing order.
std::vector<std::vector<std::vector<int>>> noncrossing_partitions(int l);

// Order cap for S_t computations; CHANNEL_MOMENTS_MAX_T overrides the default of 6.
int max_order();
void check_order(int t);

// Canonical enumeration of S_t with lookup and multiplication tables.
class PermTable {
public:
    explicit PermTable(int t);

    int t() const { return t_; }
    std::size_t count() const { return perms_.size(); }
    const Permutation& at(std::size_t i) const { return perms_[i]; }
    const std::vector<Permutation>& all() const { return perms_; }
    std::size_t index_of(const Permutation& p) const;
    std::size_t identity_index() const { return 0; }
    int size_of(std::size_t i) const { return sizes_[i]; }
    std::uint32_t support_of(std::size_t i) const { return supports_[i]; }
    std::size_t product(std::size_t a, std::size_t b) const { return mult_[a * perms_.size() + b]; }
    std::size_t inverse(std::size_t a) const { return inv_[a]; }
    // size of a^{-1} b
    int distance(std::size_t a, std::size_t b) const { return sizes_[product(inv_[a], b)]; }
    // indices of all pi with pi ⊆ sigma
    const std::vector<std::size_t>& below(std::size_t sigma) const { return below_[sigma]; }
    bool is_below(std::size_t pi, std::size_t sigma) const;

private:
    std::size_t lehmer(const std::vector<int>& images) const;

    int t_;
    std::vector<Permutation> perms_;
    std::vector<int> sizes_;
    std::vector<std::uint32_t> supports_;
    std::vector<std::size_t> lookup_;  // lehmer code -> canonical index
    std::vector<std::size_t> mult_;
    std::vector<std::size_t> inv_;
    std::vector<std::vector<std::size_t>> below_;
};

const PermTable& perm_table(int t);  // cached, thread-safe

}  // namespace chanmom
