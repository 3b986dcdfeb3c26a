#pragma once
#include <cstdint>
#include <optional>
#include <vector>

namespace motivic {

// dense vector over F_p: bit-packed for p = 2, one byte per entry otherwise
class Vec {
 public:
  Vec() = default;
  Vec(int p, int n);
  int p() const { return p_; }
  int size() const { return n_; }
  int get(int i) const;
  void set(int i, int v);
  void add(int i, int v);
  // this += c * x
  void axpy(int c, const Vec& x);
  void scale(int c);
  bool is_zero() const;
  int first_nonzero() const;
  bool operator==(const Vec& o) const;
  std::vector<int> to_ints() const;

 private:
  int p_ = 2, n_ = 0;
  std::vector<uint64_t> w_;
  std::vector<uint8_t> b_;
};

struct Matrix {
  int p = 2, cols = 0;
  std::vector<Vec> rows;
  Matrix() = default;
  Matrix(int p_, int nrows, int ncols) : p(p_), cols(ncols), rows(nrows, Vec(p_, ncols)) {}
  int nrows() const { return static_cast<int>(rows.size()); }
  static Matrix identity(int p, int n);
};

struct Echelon {
  int rank = 0;
  std::vector<int> pivots;  // pivot column of row r, r < rank
};

// reduced row echelon form in place over the first col_limit columns (all if < 0);
// pivots taken left to right, pivot row = lowest-index candidate
Echelon row_reduce(Matrix& m, int col_limit = -1);
// same result, no OpenMP; kept as the reference for tests and benchmarks
Echelon row_reduce_serial(Matrix& m, int col_limit = -1);

int rank(Matrix m);
// a map is given by the images of the source basis (one row per source vector);
// returns a basis of {x : sum x_i row_i = 0}
Matrix kernel(const Matrix& images);
// basis of the row span, reduced
Matrix image(const Matrix& images);
// x with sum x_i row_i = target, if any
std::optional<Vec> solve(const Matrix& images, const Vec& target);

// incremental echelon basis of a subspace
class Reducer {
 public:
  Reducer(int p, int n) : p_(p), n_(n) {}
  // reduces v against the basis; returns true if v became zero
  bool reduce(Vec& v) const;
  // inserts v (after reduction); returns false if dependent
  bool insert(Vec v);
  int dim() const { return static_cast<int>(basis_.size()); }
  int size() const { return n_; }
  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return piv_; }

 private:
  int p_, n_;
  std::vector<Vec> basis_;  // each normalized at its pivot
  std::vector<int> piv_;
};

// reduces v against a reducer that also tracks how each basis vector was built from
// original inputs; used for solving and lifting
class TrackingReducer {
 public:
  TrackingReducer(int p, int n, int ninputs) : p_(p), n_(n), m_(ninputs) {}
  // adds input number k with value v
  void insert(Vec v, int k);
  // if target lies in the span, returns coefficients over the inputs
  std::optional<Vec> express(Vec target) const;
  int dim() const { return static_cast<int>(basis_.size()); }

 private:
  int p_, n_, m_;
  std::vector<Vec> basis_, combo_;
  std::vector<int> piv_;
};

}  // namespace motivic
