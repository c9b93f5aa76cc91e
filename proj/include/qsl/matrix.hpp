#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qsl {

/// Row-major dense real matrix. Only what the truncated-basis code needs.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix square(std::size_t n) { return Matrix(n, n); }

    static Matrix diagonal(std::span<const double> values)
    {
        Matrix out = square(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
        return out;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const
    {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    /// Leading rows x cols block.
    Matrix block(std::size_t rows, std::size_t cols) const
    {
        if (rows > rows_ || cols > cols_) throw std::invalid_argument("Matrix::block: block exceeds matrix");
        Matrix out(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) out(i, j) = (*this)(i, j);
        return out;
    }

    Matrix& operator+=(const Matrix& other)
    {
        check_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
        return *this;
    }

    Matrix& operator*=(double s) noexcept
    {
        for (auto& v : data_) v *= s;
        return *this;
    }

    /// Adds s * other in place.
    Matrix& add_scaled(const Matrix& other, double s)
    {
        check_same_shape(other);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += s * other.data_[k];
        return *this;
    }

    double frobenius_norm() const noexcept
    {
        double acc = 0.0;
        for (double v : data_) acc += v * v;
        return std::sqrt(acc);
    }

    double trace() const noexcept
    {
        double acc = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) acc += (*this)(i, i);
        return acc;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    void check_same_shape(const Matrix& other) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("Matrix: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// (A + A^T) / 2. The result is symmetric bit-for-bit.
inline Matrix symmetrized(const Matrix& a)
{
    if (!a.is_square()) throw std::invalid_argument("symmetrized: matrix is not square");
    Matrix out = Matrix::square(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        out(i, i) = a(i, i);
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            out(i, j) = v;
            out(j, i) = v;
        }
    }
    return out;
}

}  // namespace qsl
