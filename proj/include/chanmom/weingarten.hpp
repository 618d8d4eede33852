#pragma once

#include <Eigen/Dense>

#include <stdexcept>

#include "chanmom/exact_matrix.hpp"
#include "chanmom/symmgroup.hpp"
#include "chanmom/types.hpp"

namespace chanmom {

struct SingularGram : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Normalized Gram matrix of permutation operators: entry (sigma, pi) = d^{-|sigma^{-1} pi|}, canonical order.
ExactMatrix gram_matrix(int t, long d);
Eigen::MatrixXd gram_matrix_f(int t, double d);

// Exact inverse of the Gram matrix; throws SingularGram when d < t.
ExactMatrix weingarten_matrix(int t, long d);
Eigen::MatrixXd weingarten_matrix_f(int t, double d);

// Weingarten function on S_t: weingarten_matrix(t,d)(sigma, pi) = wg[index of pi^{-1} sigma].
std::vector<Rational> weingarten_function(int t, long d);

Rational jucys_murphy_sum(int t, long d);

// Haar transfer in the permutation basis: the Weingarten matrix at dimension d.
TransferMatrix haar_transfer_perm(int t, long d);
// cHaar transfer: entry (sigma, pi) = dE^{-|sigma|} W_{d dE}(sigma, pi).
TransferMatrix chaar_transfer_perm(int t, long d, long dE);
TransferMatrix chaar_transfer_perm_f(int t, double d, double dE);

// Diagonal of characters d^{-|sigma|} in canonical order.
std::vector<Rational> character_vector(int t, long d);

}  // namespace chanmom
