#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "chanmom/rational.hpp"

namespace chanmom {

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense row-major matrix of exact rationals.
class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);

    static ExactMatrix identity(std::size_t n);
    static ExactMatrix from_double_exact(const Eigen::MatrixXd& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    ExactMatrix transpose() const;
    Rational trace() const;
    bool is_zero() const;
    Eigen::MatrixXd to_double() const;

    ExactMatrix operator+(const ExactMatrix& o) const;
    ExactMatrix operator-(const ExactMatrix& o) const;
    ExactMatrix operator*(const ExactMatrix& o) const;
    ExactMatrix operator*(const Rational& s) const;
    bool operator==(const ExactMatrix& o) const;
    bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

    std::vector<Rational> apply(const std::vector<Rational>& v) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// Fraction-free (Bareiss) elimination after clearing denominators row by row.
std::vector<Rational> bareiss_solve(const ExactMatrix& a, const std::vector<Rational>& b);
ExactMatrix bareiss_inverse(const ExactMatrix& a);
Rational bareiss_determinant(const ExactMatrix& a);

}  // namespace chanmom
