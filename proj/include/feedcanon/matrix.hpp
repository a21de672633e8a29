#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "feedcanon/scalar.hpp"

namespace feedcanon {

/// Dense row-major matrix over one scalar field. Degenerate 0 x n and
/// n x 0 shapes are legal values: there is exactly one matrix of each
/// such size and it behaves as the zero map.
template <class T>
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, ScalarOps<T>::zero()) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative dimension");
    }
    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = static_cast<int>(init.size());
        cols_ = rows_ == 0 ? 0 : static_cast<int>(init.begin()->size());
        data_.reserve(static_cast<size_t>(rows_) * cols_);
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix zeros(int r, int c) { return Matrix(r, c); }
    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = ScalarOps<T>::one();
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }
    bool same_shape(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i) * cols_ + j];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
        return data_[static_cast<size_t>(i) * cols_ + j];
    }

    bool is_zero() const {
        for (const T& x : data_)
            if (!ScalarOps<T>::is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    Matrix conj_transpose() const {
        Matrix r(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) r(j, i) = ScalarOps<T>::conj((*this)(i, j));
        return r;
    }

    Matrix block(int i0, int j0, int p, int q) const {
        if (i0 < 0 || j0 < 0 || p < 0 || q < 0 || i0 + p > rows_ || j0 + q > cols_)
            throw std::invalid_argument("Matrix::block: out of range");
        Matrix r(p, q);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < q; ++j) r(i, j) = (*this)(i0 + i, j0 + j);
        return r;
    }
    void set_block(int i0, int j0, const Matrix& m) {
        if (i0 < 0 || j0 < 0 || i0 + m.rows_ > rows_ || j0 + m.cols_ > cols_)
            throw std::invalid_argument("Matrix::set_block: out of range");
        for (int i = 0; i < m.rows_; ++i)
            for (int j = 0; j < m.cols_; ++j) (*this)(i0 + i, j0 + j) = m(i, j);
    }

    void swap_rows(int a, int b) {
        for (int j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(int a, int b) {
        for (int i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        if (!a.same_shape(b)) throw std::invalid_argument("Matrix +: shape mismatch");
        Matrix r = a;
        for (size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] + b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a, const Matrix& b) {
        if (!a.same_shape(b)) throw std::invalid_argument("Matrix -: shape mismatch");
        Matrix r = a;
        for (size_t k = 0; k < r.data_.size(); ++k) r.data_[k] = r.data_[k] - b.data_[k];
        return r;
    }
    friend Matrix operator-(const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.data_) x = -x;
        return r;
    }
    friend Matrix operator*(const T& s, const Matrix& a) {
        Matrix r = a;
        for (auto& x : r.data_) x = s * x;
        return r;
    }
    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix *: inner dimension mismatch");
        Matrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (ScalarOps<T>::is_zero(aik)) continue;
                for (int j = 0; j < b.cols_; ++j) r(i, j) = r(i, j) + aik * b(k, j);
            }
        return r;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

    const std::vector<T>& data() const { return data_; }
    std::vector<T>& data() { return data_; }

  private:
    int rows_;
    int cols_;
    std::vector<T> data_;
};

using MatX = Matrix<Rat>;   // exact field
using MatF = Matrix<Cplx>;  // floating field

/// sqrt of the sum of squared entry moduli; 0 for empty matrices. Exact
/// entries are converted to float only for the final square root.
template <class T>
double frobenius_norm(const Matrix<T>& m) {
    if constexpr (ScalarOps<T>::exact) {
        mpq_class s = 0;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) s += m(i, j).abs2();
        return std::sqrt(s.get_d());
    } else {
        double s = 0.0;
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) s += ScalarOps<T>::abs2(m(i, j));
        return std::sqrt(s);
    }
}

/// k x k lower bidiagonal Jordan block: diagonal lambda, subdiagonal 1.
template <class T>
Matrix<T> make_jordan(int k, const T& lambda) {
    if (k < 1) throw std::invalid_argument("make_jordan: k must be >= 1");
    Matrix<T> j(k, k);
    for (int i = 0; i < k; ++i) j(i, i) = lambda;
    for (int i = 1; i < k; ++i) j(i, i - 1) = ScalarOps<T>::one();
    return j;
}

/// F_rl = [I_r | 0], r x l.
template <class T>
Matrix<T> make_F(int r, int l) {
    if (r < 0 || r > l) throw std::invalid_argument("make_F: require 0 <= r <= l");
    Matrix<T> m(r, l);
    for (int i = 0; i < r; ++i) m(i, i) = ScalarOps<T>::one();
    return m;
}

/// G_rl = [0 | I_r], r x l.
template <class T>
Matrix<T> make_G(int r, int l) {
    if (r < 0 || r > l) throw std::invalid_argument("make_G: require 0 <= r <= l");
    Matrix<T> m(r, l);
    for (int i = 0; i < r; ++i) m(i, l - r + i) = ScalarOps<T>::one();
    return m;
}

/// Block-diagonal sum. Degenerate sizes follow the zero-map conventions:
/// A (+) 0_{m,0} stacks m zero rows under A, A (+) 0_{0,n} pads n zero
/// columns on the right.
template <class T>
Matrix<T> block_diag(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

/// Componentwise block-diagonal sum of matrix t-tuples.
template <class T>
std::vector<Matrix<T>> direct_sum(const std::vector<std::vector<Matrix<T>>>& tuples) {
    if (tuples.empty()) throw std::invalid_argument("direct_sum: empty input");
    const size_t arity = tuples.front().size();
    for (const auto& t : tuples)
        if (t.size() != arity) throw std::invalid_argument("direct_sum: arity mismatch");
    std::vector<Matrix<T>> acc = tuples.front();
    for (size_t k = 1; k < tuples.size(); ++k)
        for (size_t c = 0; c < arity; ++c) acc[c] = block_diag(acc[c], tuples[k][c]);
    return acc;
}

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Matrix<T> r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Matrix<T> r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

/// Kronecker product with row-major vectorization semantics:
/// vec(L X R) = (L kron R^T) vec(X).
template <class T>
Matrix<T> kron(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> r(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (ScalarOps<T>::is_zero(a(i, j))) continue;
            for (int p = 0; p < b.rows(); ++p)
                for (int q = 0; q < b.cols(); ++q)
                    r(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return r;
}

/// Row-major vectorization as a column vector.
template <class T>
Matrix<T> vec(const Matrix<T>& m) {
    Matrix<T> v(m.rows() * m.cols(), 1);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) v(i * m.cols() + j, 0) = m(i, j);
    return v;
}

inline MatF to_float(const MatX& m) {
    MatF r(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).to_complex();
    return r;
}

template <class T>
double max_abs(const Matrix<T>& m) {
    double best = 0.0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            best = std::max(best, std::sqrt(ScalarOps<T>::abs2(m(i, j))));
    return best;
}

}  // namespace feedcanon
