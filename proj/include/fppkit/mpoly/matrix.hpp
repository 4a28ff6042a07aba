#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fppkit/exact/ring.hpp"

namespace fppkit::mpoly {

using exact::RingTraits;

// Row-major dense matrix over one of the coefficient rings.
template <class C>
class DenseMatrix {
 public:
  using R = RingTraits<C>;

  DenseMatrix(std::size_t rows, std::size_t cols, const C& proto)
      : r_(rows), c_(cols), proto_(R::zero_like(proto)), a_(rows * cols, proto_) {}

  static DenseMatrix identity(std::size_t n, const C& proto) {
    DenseMatrix m(n, n, proto);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = R::one_like(proto);
    return m;
  }
  static DenseMatrix from_rows(const std::vector<std::vector<C>>& rows, const C& proto) {
    std::size_t cols = rows.empty() ? 0 : rows[0].size();
    DenseMatrix m(rows.size(), cols, proto);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw InvalidInput("ragged matrix rows");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  const C& proto() const { return proto_; }
  C& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const C& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.c_ != b.r_) throw InvalidInput("matrix product shape mismatch");
    DenseMatrix m(a.r_, b.c_, a.proto_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t k = 0; k < a.c_; ++k) {
        const C& x = a(i, k);
        if (R::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.c_; ++j) m(i, j) = m(i, j) + x * b(k, j);
      }
    return m;
  }
  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw InvalidInput("matrix sum shape mismatch");
    DenseMatrix m(a);
    for (std::size_t i = 0; i < m.a_.size(); ++i) m.a_[i] = m.a_[i] + b.a_[i];
    return m;
  }
  DenseMatrix scaled(const C& s) const {
    DenseMatrix m(*this);
    for (auto& x : m.a_) x = x * s;
    return m;
  }
  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) return false;
    for (std::size_t i = 0; i < a.a_.size(); ++i)
      if (!(a.a_[i] == b.a_[i])) return false;
    return true;
  }

  C trace() const {
    C t = proto_;
    for (std::size_t i = 0; i < std::min(r_, c_); ++i) t = t + (*this)(i, i);
    return t;
  }

  struct Echelon {
    DenseMatrix reduced;        // reduced row echelon form
    DenseMatrix transform;      // transform * input = reduced
    std::vector<std::size_t> pivots;
  };

  // Gauss-Jordan with first-nonzero pivoting; requires a field.
  Echelon rref() const {
    if (!R::is_field(proto_)) throw NotAField("row reduction needs a field, got " + R::tag(proto_));
    DenseMatrix m(*this);
    DenseMatrix t = identity(r_, proto_);
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t col = 0; col < c_ && row < r_; ++col) {
      std::size_t sel = r_;
      for (std::size_t i = row; i < r_; ++i)
        if (!R::is_zero(m(i, col))) {
          sel = i;
          break;
        }
      if (sel == r_) continue;
      m.swap_rows(row, sel);
      t.swap_rows(row, sel);
      C inv = R::inverse(m(row, col));
      m.scale_row(row, inv);
      t.scale_row(row, inv);
      for (std::size_t i = 0; i < r_; ++i) {
        if (i == row || R::is_zero(m(i, col))) continue;
        C f = m(i, col);
        m.sub_row(i, row, f);
        t.sub_row(i, row, f);
      }
      piv.push_back(col);
      ++row;
    }
    return {std::move(m), std::move(t), std::move(piv)};
  }

  std::size_t rank() const { return rref().pivots.size(); }

  std::optional<DenseMatrix> inverse() const {
    if (r_ != c_) throw InvalidInput("inverse of a non-square matrix");
    auto e = rref();
    if (e.pivots.size() != r_) return std::nullopt;
    return e.transform;
  }

  C determinant() const {
    if (r_ != c_) throw InvalidInput("determinant of a non-square matrix");
    if (!R::is_field(proto_)) throw NotAField("determinant needs a field here");
    DenseMatrix m(*this);
    C det = R::one_like(proto_);
    for (std::size_t col = 0; col < c_; ++col) {
      std::size_t sel = r_;
      for (std::size_t i = col; i < r_; ++i)
        if (!R::is_zero(m(i, col))) {
          sel = i;
          break;
        }
      if (sel == r_) return proto_;
      if (sel != col) {
        m.swap_rows(col, sel);
        det = -det;
      }
      det = det * m(col, col);
      C inv = R::inverse(m(col, col));
      for (std::size_t i = col + 1; i < r_; ++i) {
        if (R::is_zero(m(i, col))) continue;
        m.sub_row(i, col, m(i, col) * inv);
      }
    }
    return det;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void scale_row(std::size_t i, const C& s) {
    for (std::size_t j = 0; j < c_; ++j) (*this)(i, j) = (*this)(i, j) * s;
  }
  // row_i -= f * row_k
  void sub_row(std::size_t i, std::size_t k, const C& f) {
    for (std::size_t j = 0; j < c_; ++j)
      if (!R::is_zero((*this)(k, j))) (*this)(i, j) = (*this)(i, j) - f * (*this)(k, j);
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < r_; ++i) {
      for (std::size_t j = 0; j < c_; ++j) {
        if (j) out += " ";
        out += R::to_string((*this)(i, j));
      }
      out += "\n";
    }
    return out;
  }

 private:
  std::size_t r_, c_;
  C proto_;
  std::vector<C> a_;
};

}  // namespace fppkit::mpoly
