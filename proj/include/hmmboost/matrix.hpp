#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace hmmboost {

// Dense row-major matrix of doubles. Small helper used for HMM parameter
// matrices and score tables; not a linear-algebra library.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    double* row(std::size_t i) { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const { return data_.data() + i * cols_; }

    double row_sum(std::size_t i) const {
        const double* r = row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < cols_; ++j) s += r[j];
        return s;
    }

    // Divides row i by its sum. Rows summing to zero are left untouched.
    void normalize_row(std::size_t i) {
        const double s = row_sum(i);
        if (s <= 0.0) return;
        double* r = row(i);
        for (std::size_t j = 0; j < cols_; ++j) r[j] /= s;
    }

    bool operator==(const Matrix& other) const = default;

    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

}  // namespace hmmboost
