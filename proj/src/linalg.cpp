#include "autorb/linalg.hpp"

#include <algorithm>

namespace autorb {

Mat::Mat(const Field& f, int rows, int cols) : f_(&f), rows_(rows), cols_(cols) {
  if (rows < 1 || cols < 1 || rows * cols > kMaxCells)
    throw dim_error("unsupported matrix size");
  e_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

Mat Mat::identity(const Field& f, int n) {
  Mat m(f, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mat Mat::from_rows(const Field& f,
                   std::initializer_list<std::initializer_list<int>> rows) {
  int r = static_cast<int>(rows.size());
  if (r == 0) throw dim_error("empty matrix");
  int c = static_cast<int>(rows.begin()->size());
  Mat m(f, r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) throw dim_error("ragged rows");
    int j = 0;
    for (int v : row) m.set(i, j++, v);
    ++i;
  }
  return m;
}

std::size_t Mat::index(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw dim_error("matrix index out of range");
  return static_cast<std::size_t>(r) * cols_ + c;
}

void Mat::set(int r, int c, int code) {
  if (code < 0 || code >= f_->q()) throw field_error("entry code out of range");
  e_[index(r, c)] = static_cast<uint16_t>(code);
}

void Mat::require_same_field(const Mat& o) const {
  if (f_ != o.f_) throw field_error("matrices over different fields");
}

Mat Mat::operator*(const Mat& rhs) const {
  require_same_field(rhs);
  if (cols_ != rhs.rows_) throw dim_error("inner dimensions differ");
  Mat r(*f_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < rhs.cols_; ++j) {
      int acc = 0;
      for (int t = 0; t < cols_; ++t)
        acc = f_->add(acc, f_->mul(e_[static_cast<std::size_t>(i) * cols_ + t],
                                   rhs.e_[static_cast<std::size_t>(t) * rhs.cols_ + j]));
      r.e_[static_cast<std::size_t>(i) * rhs.cols_ + j] = static_cast<uint16_t>(acc);
    }
  return r;
}

Mat Mat::operator+(const Mat& rhs) const {
  require_same_field(rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw dim_error("shape mismatch");
  Mat r(*f_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = static_cast<uint16_t>(f_->add(e_[i], rhs.e_[i]));
  return r;
}

Mat Mat::operator-(const Mat& rhs) const {
  require_same_field(rhs);
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw dim_error("shape mismatch");
  Mat r(*f_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = static_cast<uint16_t>(f_->sub(e_[i], rhs.e_[i]));
  return r;
}

Mat Mat::scaled(int code) const {
  Mat r(*f_, rows_, cols_);
  for (std::size_t i = 0; i < e_.size(); ++i)
    r.e_[i] = static_cast<uint16_t>(f_->mul(e_[i], code));
  return r;
}

Mat Mat::inverse() const {
  if (rows_ != cols_) throw dim_error("inverse of non-square matrix");
  int n = rows_;
  Mat a(*this);
  Mat inv = identity(*f_, n);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) throw singular_error("matrix is singular");
    if (pivot != col) {
      for (int c = 0; c < n; ++c) {
        std::swap(a.e_[a.index(col, c)], a.e_[a.index(pivot, c)]);
        std::swap(inv.e_[inv.index(col, c)], inv.e_[inv.index(pivot, c)]);
      }
    }
    int s = f_->inv(a.at(col, col));
    for (int c = 0; c < n; ++c) {
      a.set(col, c, f_->mul(a.at(col, c), s));
      inv.set(col, c, f_->mul(inv.at(col, c), s));
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      int factor = a.at(r, col);
      if (factor == 0) continue;
      for (int c = 0; c < n; ++c) {
        a.set(r, c, f_->sub(a.at(r, c), f_->mul(factor, a.at(col, c))));
        inv.set(r, c, f_->sub(inv.at(r, c), f_->mul(factor, inv.at(col, c))));
      }
    }
  }
  return inv;
}

bool Mat::invertible() const {
  return rows_ == cols_ && rank() == rows_;
}

int Mat::rank() const {
  Mat a(*this);
  int r = 0;
  for (int col = 0; col < cols_ && r < rows_; ++col) {
    int pivot = -1;
    for (int row = r; row < rows_; ++row)
      if (a.at(row, col) != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int c = 0; c < cols_; ++c)
        std::swap(a.e_[a.index(r, c)], a.e_[a.index(pivot, c)]);
    int s = f_->inv(a.at(r, col));
    for (int c = 0; c < cols_; ++c) a.set(r, c, f_->mul(a.at(r, c), s));
    for (int row = 0; row < rows_; ++row) {
      if (row == r) continue;
      int factor = a.at(row, col);
      if (factor == 0) continue;
      for (int c = 0; c < cols_; ++c)
        a.set(row, c, f_->sub(a.at(row, c), f_->mul(factor, a.at(r, c))));
    }
    ++r;
  }
  return r;
}

int Mat::det() const {
  if (rows_ != cols_) throw dim_error("determinant of non-square matrix");
  Mat a(*this);
  int n = rows_;
  int d = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r)
      if (a.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < n; ++c)
        std::swap(a.e_[a.index(col, c)], a.e_[a.index(pivot, c)]);
      d = f_->neg(d);
    }
    d = f_->mul(d, a.at(col, col));
    int s = f_->inv(a.at(col, col));
    for (int r = col + 1; r < n; ++r) {
      int factor = f_->mul(a.at(r, col), s);
      if (factor == 0) continue;
      for (int c = col; c < n; ++c)
        a.set(r, c, f_->sub(a.at(r, c), f_->mul(factor, a.at(col, c))));
    }
  }
  return d;
}

Mat Mat::transposed() const {
  Mat r(*f_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.set(j, i, at(i, j));
  return r;
}

Mat Mat::frobenius(int power) const {
  Mat r(*this);
  for (int t = 0; t < power; ++t)
    for (auto& x : r.e_) x = static_cast<uint16_t>(f_->frobenius(x));
  return r;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (at(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

bool Mat::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](uint16_t x) { return x == 0; });
}

bool Mat::operator==(const Mat& o) const {
  return f_ == o.f_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

void Mat::encode(std::string& out) const {
  if (f_->q() <= 256) {
    for (uint16_t x : e_) out.push_back(static_cast<char>(x));
  } else {
    for (uint16_t x : e_) {
      out.push_back(static_cast<char>(x & 0xff));
      out.push_back(static_cast<char>(x >> 8));
    }
  }
}

std::string Mat::str() const {
  std::string s = "[";
  for (int i = 0; i < rows_; ++i) {
    s += (i ? ",[" : "[");
    for (int j = 0; j < cols_; ++j) {
      if (j) s += ",";
      s += f_->elem_name(at(i, j));
    }
    s += "]";
  }
  s += "]";
  return s;
}

std::pair<Mat, Mat> rank_normal_decomposition(const Mat& a) {
  const Field& f = a.field();
  Mat w(a);
  Mat e = Mat::identity(f, a.rows());
  Mat fc = Mat::identity(f, a.cols());

  auto swap_rows = [&](Mat& m, int r1, int r2) {
    for (int c = 0; c < m.cols(); ++c) {
      int t = m.at(r1, c);
      m.set(r1, c, m.at(r2, c));
      m.set(r2, c, t);
    }
  };
  auto swap_cols = [&](Mat& m, int c1, int c2) {
    for (int r = 0; r < m.rows(); ++r) {
      int t = m.at(r, c1);
      m.set(r, c1, m.at(r, c2));
      m.set(r, c2, t);
    }
  };

  int steps = std::min(a.rows(), a.cols());
  int r = 0;
  for (; r < steps; ++r) {
    int pi = -1, pj = -1;
    for (int i = r; i < w.rows() && pi < 0; ++i)
      for (int j = r; j < w.cols(); ++j)
        if (w.at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi < 0) break;
    if (pi != r) {
      swap_rows(w, pi, r);
      swap_rows(e, pi, r);
    }
    if (pj != r) {
      swap_cols(w, pj, r);
      swap_cols(fc, pj, r);
    }
    int s = f.inv(w.at(r, r));
    for (int c = 0; c < w.cols(); ++c) w.set(r, c, f.mul(w.at(r, c), s));
    for (int c = 0; c < e.cols(); ++c) e.set(r, c, f.mul(e.at(r, c), s));
    for (int i = 0; i < w.rows(); ++i) {
      if (i == r) continue;
      int factor = w.at(i, r);
      if (factor == 0) continue;
      for (int c = 0; c < w.cols(); ++c)
        w.set(i, c, f.sub(w.at(i, c), f.mul(factor, w.at(r, c))));
      for (int c = 0; c < e.cols(); ++c)
        e.set(i, c, f.sub(e.at(i, c), f.mul(factor, e.at(r, c))));
    }
    for (int j = 0; j < w.cols(); ++j) {
      if (j == r) continue;
      int factor = w.at(r, j);
      if (factor == 0) continue;
      for (int i = 0; i < w.rows(); ++i)
        w.set(i, j, f.sub(w.at(i, j), f.mul(factor, w.at(i, r))));
      for (int i = 0; i < fc.rows(); ++i)
        fc.set(i, j, f.sub(fc.at(i, j), f.mul(factor, fc.at(i, r))));
    }
  }

  Mat check = (e * a) * fc;
  for (int i = 0; i < check.rows(); ++i)
    for (int j = 0; j < check.cols(); ++j)
      if (check.at(i, j) != ((i == j && i < r) ? 1 : 0))
        throw structure_error("rank normal form accumulation failed");
  return {e, fc};
}

Mat complete_to_invertible(const Field& f, const std::vector<int>& first_row) {
  int n = static_cast<int>(first_row.size());
  Mat w(f, n, n);
  for (int j = 0; j < n; ++j) w.set(0, j, first_row[j]);
  if (w.rank() != 1) throw structure_error("first row must be nonzero");
  int filled = 1;
  for (int unit = 0; unit < n && filled < n; ++unit) {
    Mat trial(w);
    trial.set(filled, unit, 1);
    if (trial.rank() == filled + 1) {
      w.set(filled, unit, 1);
      ++filled;
    }
  }
  if (filled != n) throw structure_error("could not complete to a basis");
  return w;
}

}  // namespace autorb
