#pragma once

#include <affdual/scalar.hpp>

#include <cassert>
#include <optional>
#include <stdexcept>
#include <vector>

namespace affdual {

using Vector = std::vector<Scalar>;

inline Vector zero_vector(std::size_t n) { return Vector(n, Scalar(0)); }

inline Vector unit_vector(std::size_t n, std::size_t i) {
    Vector v = zero_vector(n);
    v[i] = 1;
    return v;
}

inline Scalar dot(const Vector& x, const Vector& y) {
    assert(x.size() == y.size());
    Scalar s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

inline Vector operator+(const Vector& x, const Vector& y) {
    Vector r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += y[i];
    return r;
}

inline Vector operator-(const Vector& x, const Vector& y) {
    Vector r(x);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
    return r;
}

inline Vector operator-(const Vector& x) {
    Vector r(x);
    for (auto& c : r) c = -c;
    return r;
}

inline Vector operator*(const Scalar& s, const Vector& x) {
    Vector r(x);
    for (auto& c : r) c *= s;
    return r;
}

inline bool is_zero(const Vector& x) {
    for (const auto& c : x)
        if (c != 0) return false;
    return true;
}

inline std::size_t hash_value(const Vector& v) {
    std::size_t h = v.size();
    for (const auto& c : v) h = hash_combine(h, hash_value(c));
    return h;
}

// Dense row-major matrix over Scalar.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    static Matrix from_rows(const std::vector<Vector>& rows) {
        if (rows.empty()) return {};
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
        return m;
    }

    static Matrix from_columns(const std::vector<Vector>& cols, std::size_t n_rows) {
        Matrix m(n_rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < n_rows; ++i) m(i, j) = cols[j][i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Vector row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
    Vector column(std::size_t j) const {
        Vector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        assert(a.cols_ == b.rows_);
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Scalar& bkj = b(k, j);
                    if (bkj != 0) c(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend Vector operator*(const Matrix& a, const Vector& x) {
        assert(a.cols_ == x.size());
        Vector y = zero_vector(a.rows_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Scalar& aik = a(i, k);
                if (aik != 0 && x[k] != 0) y[i] += aik * x[k];
            }
        return y;
    }

    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        Matrix c(a);
        for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
        return c;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    const std::vector<Scalar>& data() const { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

inline std::size_t hash_value(const Matrix& m) {
    std::size_t h = hash_combine(m.rows(), m.cols());
    for (const auto& c : m.data()) h = hash_combine(h, hash_value(c));
    return h;
}

// Reduced row echelon form of [m | rhs]; pivot columns refer to m.
struct RowReduction {
    Matrix reduced;
    Vector rhs;
    std::vector<std::size_t> pivots;
    bool consistent = true;
};

inline RowReduction row_reduce(const Matrix& m, Vector rhs) {
    RowReduction out{m, std::move(rhs), {}, true};
    Matrix& a = out.reduced;
    Vector& b = out.rhs;
    const bool with_rhs = !b.empty();
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        if (p != r) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
            if (with_rhs) std::swap(b[p], b[r]);
        }
        Scalar inv = 1 / a(r, c);
        for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
        if (with_rhs) b[r] *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == r || a(i, c) == 0) continue;
            Scalar f = a(i, c);
            for (std::size_t j = c; j < a.cols(); ++j)
                if (a(r, j) != 0) a(i, j) -= f * a(r, j);
            if (with_rhs) b[i] -= f * b[r];
        }
        out.pivots.push_back(c);
        ++r;
    }
    if (with_rhs)
        for (std::size_t i = r; i < a.rows(); ++i)
            if (b[i] != 0) out.consistent = false;
    return out;
}

inline std::size_t rank(const Matrix& m) { return row_reduce(m, {}).pivots.size(); }

// Basis of {x : m x = 0}.
inline std::vector<Vector> null_space(const Matrix& m) {
    auto rr = row_reduce(m, {});
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : rr.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v = zero_vector(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < rr.pivots.size(); ++i) v[rr.pivots[i]] = -rr.reduced(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// One solution of m x = rhs (free variables zero), if any.
inline std::optional<Vector> solve(const Matrix& m, const Vector& rhs) {
    auto rr = row_reduce(m, rhs);
    if (!rr.consistent) return std::nullopt;
    Vector x = zero_vector(m.cols());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) x[rr.pivots[i]] = rr.rhs[i];
    return x;
}

// Linearly independent subset spanning the same space (column order kept).
inline std::vector<Vector> independent_subset(const std::vector<Vector>& vs, std::size_t dim) {
    std::vector<Vector> kept;
    for (const auto& v : vs) {
        auto trial = kept;
        trial.push_back(v);
        if (rank(Matrix::from_rows(trial)) == trial.size()) kept = std::move(trial);
        if (kept.size() == dim) break;
    }
    return kept;
}

inline std::vector<Vector> column_space(const Matrix& m) {
    auto rr = row_reduce(m, {});
    std::vector<Vector> basis;
    for (auto p : rr.pivots) basis.push_back(m.column(p));
    return basis;
}

// Orthogonal projection of x onto span(basis); basis must be independent.
inline Vector project_onto_span(const Vector& x, const std::vector<Vector>& basis) {
    if (basis.empty()) return zero_vector(x.size());
    const std::size_t k = basis.size();
    Matrix gram(k, k);
    Vector rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(basis[i], basis[j]);
        rhs[i] = dot(basis[i], x);
    }
    auto coef = solve(gram, rhs);
    if (!coef) throw std::logic_error("project_onto_span: dependent basis");
    Vector p = zero_vector(x.size());
    for (std::size_t i = 0; i < k; ++i) p = p + (*coef)[i] * basis[i];
    return p;
}

}  // namespace affdual
