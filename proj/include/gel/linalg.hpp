#pragma once

#include "gel/scalar.hpp"

#include <cstddef>
#include <vector>

namespace gel {

using Vec = std::vector<Scalar>;

/// Dense exact matrix, row-major.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    /// Columns given as vectors of equal length.
    static Matrix from_columns(const std::vector<Vec> &cols, std::size_t rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar &at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar &at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vec apply(const Vec &v) const;
    Vec column(std::size_t c) const;
    Matrix operator*(const Matrix &o) const;
    Matrix adjoint() const;
    bool is_zero() const;

    friend bool operator==(const Matrix &a, const Matrix &b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Subspace of Q(i)^n held as a reduced row echelon basis. The basis is
/// canonical, so operator== decides equality of subspaces.
class Subspace {
  public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}

    static Subspace span(std::size_t ambient, const std::vector<Vec> &gens);
    static Subspace whole(std::size_t ambient);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vec> &basis() const { return rows_; }
    const std::vector<std::size_t> &pivots() const { return pivots_; }

    /// Remainder of v after elimination against the basis; zero iff v lies
    /// in the subspace. The remainder vanishes on every pivot column.
    Vec reduce(const Vec &v) const;
    bool contains(const Vec &v) const;
    bool contains(const Subspace &other) const;
    Subspace plus(const Subspace &other) const;

    friend bool operator==(const Subspace &a, const Subspace &b) {
        return a.ambient_ == b.ambient_ && a.rows_ == b.rows_;
    }

  private:
    std::size_t ambient_;
    std::vector<Vec> rows_;
    std::vector<std::size_t> pivots_;
};

bool is_zero(const Vec &v);
std::size_t rank(const Matrix &m);

} // namespace gel
