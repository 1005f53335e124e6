#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "dgln/jet.hpp"

namespace dgln {

// Dense matrix over an exact scalar (Rat, Jet, Jet2). Dimensions are fixed at
// construction; all operations return new values.
template <class S>
class MatT {
public:
    MatT() = default;
    MatT(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    MatT(std::initializer_list<std::initializer_list<S>> rows) {
        rows_ = rows.size();
        cols_ = rows_ ? rows.begin()->size() : 0;
        e_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw DimensionError("ragged initializer");
            for (const auto& x : r) e_.push_back(x);
        }
    }

    static MatT identity(std::size_t n) {
        MatT m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = from_rat<S>(Rat(1));
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    S& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
    const S& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

    // Submatrix by explicit (0-based) index lists, order preserved.
    MatT sub(const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) const {
        MatT m(ri.size(), ci.size());
        for (std::size_t a = 0; a < ri.size(); ++a)
            for (std::size_t b = 0; b < ci.size(); ++b) m(a, b) = (*this)(ri[a], ci[b]);
        return m;
    }

    std::vector<S> column(std::size_t j) const {
        std::vector<S> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, const std::vector<S>& c) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = c[i];
    }

    std::vector<S> row_vec(std::size_t i) const {
        std::vector<S> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
        return r;
    }

    MatT transpose() const {
        MatT m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend MatT operator+(const MatT& a, const MatT& b) {
        a.check_same(b);
        MatT m(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] + b.e_[k];
        return m;
    }
    friend MatT operator-(const MatT& a, const MatT& b) {
        a.check_same(b);
        MatT m(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = a.e_[k] - b.e_[k];
        return m;
    }
    friend MatT operator-(const MatT& a) {
        MatT m(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = -a.e_[k];
        return m;
    }
    friend MatT operator*(const MatT& a, const MatT& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        MatT m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const S& aik = a(i, k);
                if (is_zero(aik)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
            }
        return m;
    }
    friend MatT operator*(const S& s, const MatT& a) {
        MatT m(a.rows_, a.cols_);
        for (std::size_t k = 0; k < a.e_.size(); ++k) m.e_[k] = s * a.e_[k];
        return m;
    }
    friend bool operator==(const MatT& a, const MatT& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const MatT& a, const MatT& b) { return !(a == b); }

    std::vector<S> apply(const std::vector<S>& v) const {
        if (v.size() != cols_) throw DimensionError("matrix-vector shape mismatch");
        std::vector<S> r(rows_, from_rat<S>(Rat(0)));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

private:
    void check_same(const MatT& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("matrix shape mismatch");
    }

    std::size_t rows_ = 0, cols_ = 0;
    std::vector<S> e_;
};

using Mat = MatT<Rat>;
using JetMat = MatT<Jet>;

template <class S>
MatT<S> hconcat(const MatT<S>& a, const MatT<S>& b) {
    if (a.rows() != b.rows()) throw DimensionError("hconcat row mismatch");
    MatT<S> m(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

template <class T>
MatT<T> val_part(const MatT<JetT<T>>& m) {
    MatT<T> v(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j).val;
    return v;
}

template <class T>
MatT<T> der_part(const MatT<JetT<T>>& m) {
    MatT<T> v(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j).der;
    return v;
}

// Lifts a matrix one level up the jet tower, with zero derivative part.
template <class T>
MatT<JetT<T>> jet_lift(const MatT<T>& m) {
    MatT<JetT<T>> v(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = JetT<T>(m(i, j));
    return v;
}

template <class T>
MatT<JetT<T>> jet_pair(const MatT<T>& val, const MatT<T>& der) {
    if (val.rows() != der.rows() || val.cols() != der.cols()) throw DimensionError("jet_pair shape mismatch");
    MatT<JetT<T>> v(val.rows(), val.cols());
    for (std::size_t i = 0; i < val.rows(); ++i)
        for (std::size_t j = 0; j < val.cols(); ++j) v(i, j) = JetT<T>(val(i, j), der(i, j));
    return v;
}

template <class S>
S trace(const MatT<S>& m) {
    if (!m.square()) throw DimensionError("trace of non-square matrix");
    S t = from_rat<S>(Rat(0));
    for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
    return t;
}

// tr(a*b) without forming the product.
template <class S>
S trace_prod(const MatT<S>& a, const MatT<S>& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) throw DimensionError("trace_prod shape mismatch");
    S t = from_rat<S>(Rat(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
    return t;
}

inline std::vector<std::size_t> range_idx(std::size_t lo, std::size_t hi) {  // [lo, hi), 0-based
    std::vector<std::size_t> v;
    v.reserve(hi > lo ? hi - lo : 0);
    for (std::size_t k = lo; k < hi; ++k) v.push_back(k);
    return v;
}

}  // namespace dgln
