#include "susmat/matrix.hpp"

#include <stdexcept>

namespace susmat {

Mat::Mat(Ring ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
  a_.assign(static_cast<std::size_t>(rows) * cols, ring_.zero());
}

Mat Mat::identity(const Ring& ring, int n) {
  Mat m(ring, n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = ring.one();
  return m;
}

Scalar& Mat::at(int i, int j) {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw std::out_of_range("matrix index out of range");
  return a_[static_cast<std::size_t>(i) * cols_ + j];
}

const Scalar& Mat::at(int i, int j) const {
  if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
    throw std::out_of_range("matrix index out of range");
  return a_[static_cast<std::size_t>(i) * cols_ + j];
}

Mat Mat::transpose() const {
  Mat t(ring_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Mat Mat::operator-() const {
  Mat r(ring_, rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(i, j) = -at(i, j);
  return r;
}

bool Mat::is_zero() const {
  for (const auto& s : a_)
    if (!s.is_zero()) return false;
  return true;
}

bool Mat::is_identity() const {
  if (rows_ != cols_) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      if (i == j ? !at(i, j).is_one() : !at(i, j).is_zero()) return false;
    }
  return true;
}

void Mat::set_block(int r0, int c0, const Mat& b) {
  if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
    throw std::out_of_range("block does not fit");
  for (int i = 0; i < b.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) at(r0 + i, c0 + j) = b.at(i, j);
}

Mat Mat::block(int r0, int c0, int rows, int cols) const {
  if (r0 < 0 || c0 < 0 || r0 + rows > rows_ || c0 + cols > cols_)
    throw std::out_of_range("block out of range");
  Mat b(ring_, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

static void require_same_ring_mat(const Mat& a, const Mat& b, const char* op) {
  if (!a.ring().same(b.ring()))
    throw std::invalid_argument(std::string("ring mismatch in matrix ") + op);
}

Mat operator+(const Mat& a, const Mat& b) {
  require_same_ring_mat(a, b, "+");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix shape mismatch in +");
  Mat r(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] + b.a_[k];
  return r;
}

Mat operator-(const Mat& a, const Mat& b) {
  require_same_ring_mat(a, b, "-");
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw std::invalid_argument("matrix shape mismatch in -");
  Mat r(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = a.a_[k] - b.a_[k];
  return r;
}

Mat operator*(const Mat& a, const Mat& b) {
  require_same_ring_mat(a, b, "*");
  if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch in *");
  Mat r(a.ring_, a.rows_, b.cols_);
  for (int i = 0; i < a.rows_; ++i)
    for (int k = 0; k < a.cols_; ++k) {
      const Scalar& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < b.cols_; ++j) {
        const Scalar& bkj = b.at(k, j);
        if (bkj.is_zero()) continue;
        r.at(i, j) += aik * bkj;
      }
    }
  return r;
}

Mat operator*(const Scalar& s, const Mat& a) {
  Mat r(a.ring_, a.rows_, a.cols_);
  for (std::size_t k = 0; k < a.a_.size(); ++k) r.a_[k] = s * a.a_[k];
  return r;
}

bool operator==(const Mat& a, const Mat& b) {
  if (!a.ring().same(b.ring())) return false;
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.a_.size(); ++k)
    if (a.a_[k] != b.a_[k]) return false;
  return true;
}

std::string Mat::to_text() const {
  std::string out;
  for (int i = 0; i < rows_; ++i) {
    out += '(';
    for (int j = 0; j < cols_; ++j) {
      if (j) out += ", ";
      out += at(i, j).to_string();
    }
    out += ')';
    if (i + 1 < rows_) out += '\n';
  }
  return out;
}

nlohmann::json mat_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<Scalar> mat_apply(const Mat& m, const std::vector<Scalar>& v) {
  if (static_cast<int>(v.size()) != m.cols())
    throw std::invalid_argument("vector length mismatch in mat_apply");
  std::vector<Scalar> r(static_cast<std::size_t>(m.rows()), m.ring().zero());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

std::vector<Scalar> row_apply(const std::vector<Scalar>& v, const Mat& m) {
  if (static_cast<int>(v.size()) != m.rows())
    throw std::invalid_argument("vector length mismatch in row_apply");
  std::vector<Scalar> r(static_cast<std::size_t>(m.cols()), m.ring().zero());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) r[j] += v[i] * m.at(i, j);
  return r;
}

// ---------------------------------------------------------------------------
// Determinant

static Scalar det_berkowitz(const Mat& m) {
  const int n = m.rows();
  const Ring& ring = m.ring();
  // V accumulates characteristic polynomial coefficients, leading 1 first.
  std::vector<Scalar> v{ring.one(), -m.at(0, 0)};
  for (int i = 1; i < n; ++i) {
    // s_0 = a_ii, s_k = R * M^{k-1} * C for the leading i x i principal block.
    std::vector<Scalar> s;
    s.reserve(i + 1);
    s.push_back(m.at(i, i));
    std::vector<Scalar> cur(static_cast<std::size_t>(i), ring.zero());
    for (int r = 0; r < i; ++r) cur[r] = m.at(r, i);
    for (int k = 1; k <= i; ++k) {
      Scalar acc = ring.zero();
      for (int t = 0; t < i; ++t) acc += m.at(i, t) * cur[t];
      s.push_back(acc);
      if (k < i) {
        std::vector<Scalar> nxt(static_cast<std::size_t>(i), ring.zero());
        for (int r = 0; r < i; ++r)
          for (int t = 0; t < i; ++t) nxt[r] += m.at(r, t) * cur[t];
        cur = std::move(nxt);
      }
    }
    // Multiply by the lower-triangular Toeplitz matrix of (1, -s_0, -s_1, ...).
    std::vector<Scalar> w(static_cast<std::size_t>(i) + 2, ring.zero());
    for (int r = 0; r <= i + 1; ++r) {
      Scalar acc = r <= i ? v[r] : ring.zero();
      for (int c = 0; c < r && c <= i; ++c) acc -= s[r - c - 1] * v[c];
      w[r] = acc;
    }
    v = std::move(w);
  }
  return n % 2 == 0 ? v[n] : -v[n];
}

Scalar det_division_free(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const int n = m.rows();
  const Ring& ring = m.ring();
  switch (n) {
    case 0:
      return ring.one();
    case 1:
      return m.at(0, 0);
    case 2:
      return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
    case 3:
      return m.at(0, 0) * (m.at(1, 1) * m.at(2, 2) - m.at(1, 2) * m.at(2, 1)) -
             m.at(0, 1) * (m.at(1, 0) * m.at(2, 2) - m.at(1, 2) * m.at(2, 0)) +
             m.at(0, 2) * (m.at(1, 0) * m.at(2, 1) - m.at(1, 1) * m.at(2, 0));
    default:
      return det_berkowitz(m);
  }
}

}  // namespace susmat
