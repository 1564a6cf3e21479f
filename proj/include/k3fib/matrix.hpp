#pragma once

#include "k3fib/numeric.hpp"

#include <initializer_list>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

namespace k3fib {

/// Dense row-major matrix over an exact ring.
template <typename T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<long>> init)
    {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) {
                throw LatticeError("ragged matrix literal");
            }
            for (long v : row) {
                data_.emplace_back(v);
            }
        }
    }

    static Matrix from_rows(const std::vector<std::vector<T>>& rows, std::size_t cols = 0)
    {
        Matrix m(rows.size(), rows.empty() ? cols : rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_) {
                throw LatticeError("ragged row list");
            }
            for (std::size_t j = 0; j < m.cols_; ++j) {
                m(i, j) = rows[i][j];
            }
        }
        return m;
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1;
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> row_vector(std::size_t i) const
    {
        auto r = row(i);
        return {r.begin(), r.end()};
    }

    std::vector<std::vector<T>> row_list() const
    {
        std::vector<std::vector<T>> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            out.push_back(row_vector(i));
        }
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            std::swap((*this)(a, j), (*this)(b, j));
        }
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) {
            return;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            std::swap((*this)(i, a), (*this)(i, b));
        }
    }

    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const T& factor)
    {
        if (factor == 0) {
            return;
        }
        for (std::size_t j = 0; j < cols_; ++j) {
            (*this)(dst, j) += factor * (*this)(src, j);
        }
    }

    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const T& factor)
    {
        if (factor == 0) {
            return;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            (*this)(i, dst) += factor * (*this)(i, src);
        }
    }

    void append_row(std::span<const T> values)
    {
        if (rows_ == 0 && cols_ == 0) {
            cols_ = values.size();
        }
        if (values.size() != cols_) {
            throw LatticeError("appended row has wrong length");
        }
        data_.insert(data_.end(), values.begin(), values.end());
        ++rows_;
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                t(j, i) = (*this)(i, j);
            }
        }
        return t;
    }

    Matrix rows_subset(std::size_t first, std::size_t count) const
    {
        Matrix out(count, cols_);
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                out(i, j) = (*this)(first + i, j);
            }
        }
        return out;
    }

    bool is_symmetric() const
    {
        if (rows_ != cols_) {
            return false;
        }
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = i + 1; j < cols_; ++j) {
                if ((*this)(i, j) != (*this)(j, i)) {
                    return false;
                }
            }
        }
        return true;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_) {
            throw LatticeError("matrix product dimension mismatch");
        }
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == 0) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    c(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    friend std::ostream& operator<<(std::ostream& os, const Matrix& m)
    {
        os << '[';
        for (std::size_t i = 0; i < m.rows_; ++i) {
            os << (i ? ", [" : "[");
            for (std::size_t j = 0; j < m.cols_; ++j) {
                os << (j ? ", " : "") << m(i, j);
            }
            os << ']';
        }
        return os << ']';
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m)
{
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            r(i, j) = m(i, j);
        }
    }
    return r;
}

inline IntMatrix to_integer(const RatMatrix& m)
{
    IntMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!is_integral(m(i, j))) {
                throw LatticeError("matrix has non-integral entry " + m(i, j).get_str());
            }
            r(i, j) = m(i, j).get_num();
        }
    }
    return r;
}

/// v * M for a row vector v.
template <typename T>
std::vector<T> row_times(std::span<const T> v, const Matrix<T>& m)
{
    if (v.size() != m.rows()) {
        throw LatticeError("vector-matrix dimension mismatch");
    }
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t k = 0; k < m.rows(); ++k) {
        if (v[k] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[j] += v[k] * m(k, j);
        }
    }
    return out;
}

template <typename T>
std::vector<T> row_times(const std::vector<T>& v, const Matrix<T>& m)
{
    return row_times(std::span<const T>(v), m);
}

/// u * G * v^T
template <typename T>
T bilinear(std::span<const T> u, const Matrix<T>& g, std::span<const T> v)
{
    T s = 0;
    for (std::size_t i = 0; i < g.rows(); ++i) {
        if (u[i] == 0) {
            continue;
        }
        T t = 0;
        for (std::size_t j = 0; j < g.cols(); ++j) {
            t += g(i, j) * v[j];
        }
        s += u[i] * t;
    }
    return s;
}

template <typename T>
T bilinear(const std::vector<T>& u, const Matrix<T>& g, const std::vector<T>& v)
{
    return bilinear(std::span<const T>(u), g, std::span<const T>(v));
}

/// B * G * B^T
template <typename T>
Matrix<T> congruence(const Matrix<T>& basis, const Matrix<T>& gram)
{
    return basis * gram * basis.transpose();
}

inline Matrix<Integer> block_diagonal(const std::vector<IntMatrix>& blocks)
{
    std::size_t n = 0;
    for (const auto& b : blocks) {
        n += b.rows();
    }
    IntMatrix out(n, n);
    std::size_t off = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i) {
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(off + i, off + j) = b(i, j);
            }
        }
        off += b.rows();
    }
    return out;
}

} // namespace k3fib
