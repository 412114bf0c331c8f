#include "gel/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace gel {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec> &cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows)
            throw std::invalid_argument("column length mismatch");
        for (std::size_t r = 0; r < rows; ++r)
            m.at(r, c) = cols[c][r];
    }
    return m;
}

Vec Matrix::apply(const Vec &v) const {
    if (v.size() != cols_)
        throw std::invalid_argument("dimension mismatch");
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (!at(r, c).is_zero() && !v[c].is_zero())
                out[r] += at(r, c) * v[c];
    return out;
}

Vec Matrix::column(std::size_t c) const {
    Vec out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = at(r, c);
    return out;
}

Matrix Matrix::operator*(const Matrix &o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("dimension mismatch");
    Matrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero())
                    m.at(i, j) += at(i, k) * o.at(k, j);
        }
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            m.at(c, r) = at(r, c).conj();
    return m;
}

bool Matrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar &s) { return s.is_zero(); });
}

bool is_zero(const Vec &v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar &s) { return s.is_zero(); });
}

Subspace Subspace::whole(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
        Vec e(ambient);
        e[i] = 1;
        s.rows_.push_back(std::move(e));
        s.pivots_.push_back(i);
    }
    return s;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vec> &gens) {
    // Gauss-Jordan: each incoming vector is reduced against the current
    // basis, normalized, and then eliminated from the existing rows.
    Subspace s(ambient);
    for (const auto &g : gens) {
        if (g.size() != ambient)
            throw std::invalid_argument("vector length mismatch");
        Vec v = s.reduce(g);
        auto it = std::find_if(v.begin(), v.end(), [](const Scalar &x) { return !x.is_zero(); });
        if (it == v.end())
            continue;
        std::size_t p = static_cast<std::size_t>(it - v.begin());
        Scalar inv = Scalar(1) / v[p];
        for (auto &x : v)
            if (!x.is_zero())
                x *= inv;
        for (auto &row : s.rows_) {
            if (row[p].is_zero())
                continue;
            Scalar f = row[p];
            for (std::size_t j = 0; j < ambient; ++j)
                if (!v[j].is_zero())
                    row[j] -= f * v[j];
        }
        auto pos = std::lower_bound(s.pivots_.begin(), s.pivots_.end(), p);
        auto idx = pos - s.pivots_.begin();
        s.pivots_.insert(pos, p);
        s.rows_.insert(s.rows_.begin() + idx, std::move(v));
    }
    return s;
}

Vec Subspace::reduce(const Vec &v) const {
    if (v.size() != ambient_)
        throw std::invalid_argument("vector length mismatch");
    Vec r = v;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        std::size_t p = pivots_[i];
        if (r[p].is_zero())
            continue;
        Scalar f = r[p];
        for (std::size_t j = 0; j < ambient_; ++j)
            if (!rows_[i][j].is_zero())
                r[j] -= f * rows_[i][j];
    }
    return r;
}

bool Subspace::contains(const Vec &v) const { return is_zero(reduce(v)); }

bool Subspace::contains(const Subspace &other) const {
    return std::all_of(other.rows_.begin(), other.rows_.end(),
                       [this](const Vec &v) { return contains(v); });
}

Subspace Subspace::plus(const Subspace &other) const {
    std::vector<Vec> gens = rows_;
    gens.insert(gens.end(), other.rows_.begin(), other.rows_.end());
    return span(ambient_, gens);
}

std::size_t rank(const Matrix &m) {
    std::vector<Vec> cols;
    for (std::size_t c = 0; c < m.cols(); ++c)
        cols.push_back(m.column(c));
    return Subspace::span(m.rows(), cols).dim();
}

} // namespace gel
