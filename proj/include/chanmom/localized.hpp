#pragma once

#include <string>
#include <vector>

#include "chanmom/exact_matrix.hpp"
#include "chanmom/types.hpp"

namespace chanmom {

// phi(sigma, pi) = mobius(pi^{-1} sigma) when pi ⊆ sigma.
ExactMatrix phi_matrix(int t);
// Zeta matrix of the sub-permutation order: entry 1 when pi ⊆ sigma.
ExactMatrix phi_inverse(int t);

// Overlaps of localized permutation operators, normalized by d^t.
ExactMatrix localized_gram(int t, long d);

// Gram matrix of the given basis (normalized permutation Gram or localized Gram).
Gram gram_for(const BasisTag& basis);

TransferMatrix to_localized(const TransferMatrix& tau);

// Environment dimension as a function of the system dimension.
struct DERule {
    enum class Kind { Fixed, D, DSquared };
    Kind kind = Kind::Fixed;
    long value = 1;

    long apply(long d) const;
    std::string name() const;
    static DERule parse(const std::string& text);  // "1", "2", ..., "d", "d2"
};

struct ExponentEntry {
    bool structural_zero = false;
    bool mixed = false;
    int exponent = 0;
    double estimate = 0.0;
};
using ExponentMatrix = std::vector<std::vector<ExponentEntry>>;

// Leading 1/d exponents of localized transfer entries, estimated from two dimensions.
ExponentMatrix scaling_exponents(EnsembleSpec::Kind kind, int t, long d1, long d2, DERule rule = {DERule::Kind::DSquared, 0});

}  // namespace chanmom
