#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "susmat/ring.hpp"

namespace susmat {

// Dense matrix of ring scalars, row-major. All entries live in one ring;
// 0-row / 0-column matrices are legal (they show up as empty blocks at the
// lowest ranks).
class Mat {
 public:
  Mat(Ring ring, int rows, int cols);
  static Mat identity(const Ring& ring, int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Ring& ring() const { return ring_; }

  Scalar& at(int i, int j);
  const Scalar& at(int i, int j) const;

  Mat transpose() const;
  Mat operator-() const;
  bool is_zero() const;
  bool is_identity() const;

  void set_block(int r0, int c0, const Mat& b);
  Mat block(int r0, int c0, int rows, int cols) const;

  friend Mat operator+(const Mat& a, const Mat& b);
  friend Mat operator-(const Mat& a, const Mat& b);
  friend Mat operator*(const Mat& a, const Mat& b);
  friend Mat operator*(const Scalar& s, const Mat& a);
  friend bool operator==(const Mat& a, const Mat& b);
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  std::string to_text() const;  // one "(e1, e2, ...)" line per row

 private:
  Ring ring_;
  int rows_;
  int cols_;
  std::vector<Scalar> a_;
};

std::vector<Scalar> mat_apply(const Mat& m, const std::vector<Scalar>& v);
std::vector<Scalar> row_apply(const std::vector<Scalar>& v, const Mat& m);

// Determinant without ring division: hardcoded expansion up to 3x3,
// Berkowitz above that. Works over every backend.
Scalar det_division_free(const Mat& m);

// Row-major array of entry strings.
nlohmann::json mat_to_json(const Mat& m);

}  // namespace susmat
