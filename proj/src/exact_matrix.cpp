#include "chanmom/exact_matrix.hpp"

#include <utility>

namespace chanmom {

namespace {

Integer lcm_of_denominators(const std::vector<Rational>& v, std::size_t begin, std::size_t end) {
    Integer l = 1;
    for (std::size_t i = begin; i < end; ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v[i].get_den_mpz_t());
    return l;
}

struct IntegerForm {
    std::vector<Integer> entries;
    Integer scale;  // original = entries / scale
};

IntegerForm integerize(const std::vector<Rational>& v) {
    IntegerForm f;
    f.scale = lcm_of_denominators(v, 0, v.size());
    f.entries.resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        mpz_divexact(f.entries[i].get_mpz_t(), f.scale.get_mpz_t(), v[i].get_den_mpz_t());
        f.entries[i] *= v[i].get_num();
    }
    return f;
}

// Forward Bareiss elimination on an n x (n + extra) integer array; returns the sign of the row permutation.
int bareiss_forward(std::vector<Integer>& m, std::size_t n, std::size_t width) {
    Integer prev = 1;
    Integer tmp;
    int sign = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (p < n && m[p * width + k] == 0) ++p;
        if (p == n) throw SingularMatrix("matrix is singular");
        if (p != k) {
            for (std::size_t j = 0; j < width; ++j) std::swap(m[p * width + j], m[k * width + j]);
            sign = -sign;
        }
        const Integer& pivot = m[k * width + k];
        for (std::size_t i = k + 1; i < n; ++i) {
            Integer& lead = m[i * width + k];
            for (std::size_t j = k + 1; j < width; ++j) {
                Integer& target = m[i * width + j];
                mpz_mul(tmp.get_mpz_t(), pivot.get_mpz_t(), target.get_mpz_t());
                mpz_submul(tmp.get_mpz_t(), lead.get_mpz_t(), m[k * width + j].get_mpz_t());
                mpz_divexact(target.get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            lead = 0;
        }
        prev = pivot;
    }
    return sign;
}

std::vector<Integer> scaled_rows(const ExactMatrix& a, std::size_t width, std::vector<Integer>& row_scale) {
    const std::size_t n = a.rows();
    std::vector<Integer> m(n * width);
    row_scale.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        Integer l = 1;
        for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
        row_scale[i] = l;
        for (std::size_t j = 0; j < n; ++j) {
            mpz_divexact(m[i * width + j].get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
            m[i * width + j] *= a(i, j).get_num();
        }
    }
    return m;
}

}  // namespace

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
    ExactMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

ExactMatrix ExactMatrix::from_double_exact(const Eigen::MatrixXd& src) {
    ExactMatrix m(static_cast<std::size_t>(src.rows()), static_cast<std::size_t>(src.cols()));
    for (Eigen::Index i = 0; i < src.rows(); ++i)
        for (Eigen::Index j = 0; j < src.cols(); ++j) m(i, j) = Rational(src(i, j));
    return m;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

Rational ExactMatrix::trace() const {
    Rational s = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
}

bool ExactMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

Eigen::MatrixXd ExactMatrix::to_double() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
    return m;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    ExactMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] + o.data_[i];
    return m;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
    ExactMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] - o.data_[i];
    return m;
}

ExactMatrix ExactMatrix::operator*(const Rational& s) const {
    ExactMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) m.data_[i] = data_[i] * s;
    return m;
}

// Product over a common denominator so the inner loop is pure integer multiply-add.
ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    const IntegerForm a = integerize(data_);
    const IntegerForm b = integerize(o.data_);
    std::vector<Integer> acc(rows_ * o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& aik = a.entries[i * cols_ + k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Integer& bkj = b.entries[k * o.cols_ + j];
                if (bkj == 0) continue;
                mpz_addmul(acc[i * o.cols_ + j].get_mpz_t(), aik.get_mpz_t(), bkj.get_mpz_t());
            }
        }
    }
    const Integer scale = a.scale * b.scale;
    ExactMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < acc.size(); ++i) {
        m.data_[i] = Rational(acc[i], scale);
        m.data_[i].canonicalize();
    }
    return m;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<Rational> ExactMatrix::apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("shape mismatch");
    std::vector<Rational> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<Rational> bareiss_solve(const ExactMatrix& a, const std::vector<Rational>& b) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.size() != n) throw std::invalid_argument("shape mismatch");
    const std::size_t width = n + 1;
    std::vector<Integer> row_scale;
    std::vector<Integer> m = scaled_rows(a, width, row_scale);
    for (std::size_t i = 0; i < n; ++i) {
        Rational rhs = b[i] * Rational(row_scale[i]);
        // rhs may be fractional; fold its denominator into the whole row
        if (rhs.get_den() != 1) {
            for (std::size_t j = 0; j < n; ++j) m[i * width + j] *= rhs.get_den();
        }
        m[i * width + n] = rhs.get_num();
    }
    bareiss_forward(m, n, width);
    std::vector<Rational> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        Rational s(m[ii * width + n]);
        for (std::size_t j = ii + 1; j < n; ++j)
            if (m[ii * width + j] != 0) s -= Rational(m[ii * width + j]) * x[j];
        x[ii] = s / Rational(m[ii * width + ii]);
    }
    return x;
}

ExactMatrix bareiss_inverse(const ExactMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("matrix not square");
    const std::size_t width = 2 * n;
    std::vector<Integer> row_scale;
    std::vector<Integer> m = scaled_rows(a, width, row_scale);
    for (std::size_t i = 0; i < n; ++i) m[i * width + n + i] = row_scale[i];
    bareiss_forward(m, n, width);
    ExactMatrix inv(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t ii = n; ii-- > 0;) {
            Rational s(m[ii * width + n + c]);
            for (std::size_t j = ii + 1; j < n; ++j)
                if (m[ii * width + j] != 0) s -= Rational(m[ii * width + j]) * inv(j, c);
            inv(ii, c) = s / Rational(m[ii * width + ii]);
        }
    }
    return inv;
}

Rational bareiss_determinant(const ExactMatrix& a) {
    const std::size_t n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("matrix not square");
    if (n == 0) return 1;
    std::vector<Integer> row_scale;
    std::vector<Integer> m = scaled_rows(a, n, row_scale);
    int sign = 1;
    try {
        sign = bareiss_forward(m, n, n);
    } catch (const SingularMatrix&) {
        return 0;
    }
    Rational det(m[n * n - 1]);
    Integer scale = 1;
    for (const auto& s : row_scale) scale *= s;
    det /= Rational(scale);
    return sign > 0 ? det : Rational(-det);
}

}  // namespace chanmom
