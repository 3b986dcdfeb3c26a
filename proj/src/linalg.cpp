#include "motivic/linalg.hpp"

#include <bit>
#include <stdexcept>

#include "motivic/ring.hpp"

namespace motivic {

Vec::Vec(int p, int n) : p_(p), n_(n) {
  if (p == 2)
    w_.assign((n + 63) / 64, 0);
  else
    b_.assign(n, 0);
}

int Vec::get(int i) const {
  if (p_ == 2) return static_cast<int>((w_[i >> 6] >> (i & 63)) & 1u);
  return b_[i];
}

void Vec::set(int i, int v) {
  v = modp(v, p_);
  if (p_ == 2) {
    uint64_t bit = uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= bit;
    else
      w_[i >> 6] &= ~bit;
  } else {
    b_[i] = static_cast<uint8_t>(v);
  }
}

void Vec::add(int i, int v) { set(i, get(i) + v); }

void Vec::axpy(int c, const Vec& x) {
  c = modp(c, p_);
  if (!c) return;
  if (p_ == 2) {
    for (size_t k = 0; k < w_.size(); ++k) w_[k] ^= x.w_[k];
    return;
  }
  const int p = p_;
  for (int k = 0; k < n_; ++k)
    if (x.b_[k]) b_[k] = static_cast<uint8_t>((b_[k] + c * x.b_[k]) % p);
}

void Vec::scale(int c) {
  c = modp(c, p_);
  if (p_ == 2) {
    if (!c) std::fill(w_.begin(), w_.end(), 0);
    return;
  }
  for (auto& v : b_) v = static_cast<uint8_t>(v * c % p_);
}

bool Vec::is_zero() const { return first_nonzero() < 0; }

int Vec::first_nonzero() const {
  if (p_ == 2) {
    for (size_t k = 0; k < w_.size(); ++k)
      if (w_[k]) return static_cast<int>(k * 64 + std::countr_zero(w_[k]));
    return -1;
  }
  for (int k = 0; k < n_; ++k)
    if (b_[k]) return k;
  return -1;
}

bool Vec::operator==(const Vec& o) const {
  return p_ == o.p_ && n_ == o.n_ && w_ == o.w_ && b_ == o.b_;
}

std::vector<int> Vec::to_ints() const {
  std::vector<int> r(n_);
  for (int i = 0; i < n_; ++i) r[i] = get(i);
  return r;
}

Matrix Matrix::identity(int p, int n) {
  Matrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.rows[i].set(i, 1);
  return m;
}

namespace {

template <bool Parallel>
Echelon reduce_impl(Matrix& m, int col_limit) {
  Echelon e;
  const int p = m.p;
  const int nr = m.nrows();
  const int nc = col_limit < 0 ? m.cols : col_limit;
  int r = 0;
  for (int c = 0; c < nc && r < nr; ++c) {
    int piv = -1;
    for (int i = r; i < nr; ++i)
      if (m.rows[i].get(c)) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    // keep the original relative order of the remaining rows
    if (piv != r) {
      Vec t = std::move(m.rows[piv]);
      for (int i = piv; i > r; --i) m.rows[i] = std::move(m.rows[i - 1]);
      m.rows[r] = std::move(t);
    }
    m.rows[r].scale(inv_mod(m.rows[r].get(c), p));
    const Vec& pr = m.rows[r];
    if constexpr (Parallel) {
#pragma omp parallel for schedule(static) if (nr > 128)
      for (int i = 0; i < nr; ++i) {
        if (i == r) continue;
        int v = m.rows[i].get(c);
        if (v) m.rows[i].axpy(p - v, pr);
      }
    } else {
      for (int i = 0; i < nr; ++i) {
        if (i == r) continue;
        int v = m.rows[i].get(c);
        if (v) m.rows[i].axpy(p - v, pr);
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;
  return e;
}

}  // namespace

Echelon row_reduce(Matrix& m, int col_limit) { return reduce_impl<true>(m, col_limit); }
Echelon row_reduce_serial(Matrix& m, int col_limit) { return reduce_impl<false>(m, col_limit); }

int rank(Matrix m) { return row_reduce(m).rank; }

Matrix kernel(const Matrix& images) {
  const int n = images.nrows(), c = images.cols, p = images.p;
  Matrix aug(p, n, c + n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < c; ++j)
      if (int v = images.rows[i].get(j)) aug.rows[i].set(j, v);
    aug.rows[i].set(c + i, 1);
  }
  Echelon e = row_reduce(aug, c);
  Matrix k(p, 0, n);
  for (int i = e.rank; i < n; ++i) {
    Vec v(p, n);
    for (int j = 0; j < n; ++j) v.set(j, aug.rows[i].get(c + j));
    k.rows.push_back(std::move(v));
  }
  // canonical form of the kernel basis
  row_reduce(k);
  return k;
}

Matrix image(const Matrix& images) {
  Matrix m = images;
  Echelon e = row_reduce(m);
  m.rows.resize(e.rank);
  return m;
}

std::optional<Vec> solve(const Matrix& images, const Vec& target) {
  TrackingReducer tr(images.p, images.cols, images.nrows());
  for (int i = 0; i < images.nrows(); ++i) tr.insert(images.rows[i], i);
  return tr.express(target);
}

bool Reducer::reduce(Vec& v) const {
  for (size_t k = 0; k < basis_.size(); ++k) {
    int c = v.get(piv_[k]);
    if (c) v.axpy(p_ - c, basis_[k]);
  }
  return v.is_zero();
}

bool Reducer::insert(Vec v) {
  if (reduce(v)) return false;
  int c = v.first_nonzero();
  v.scale(inv_mod(v.get(c), p_));
  // keep basis fully reduced so that reduce() needs a single pass
  for (auto& b : basis_) {
    int x = b.get(c);
    if (x) b.axpy(p_ - x, v);
  }
  basis_.push_back(std::move(v));
  piv_.push_back(c);
  return true;
}

void TrackingReducer::insert(Vec v, int k) {
  Vec combo(p_, m_);
  combo.set(k, 1);
  for (size_t j = 0; j < basis_.size(); ++j) {
    int c = v.get(piv_[j]);
    if (c) {
      v.axpy(p_ - c, basis_[j]);
      combo.axpy(p_ - c, combo_[j]);
    }
  }
  int c = v.first_nonzero();
  if (c < 0) return;
  int s = inv_mod(v.get(c), p_);
  v.scale(s);
  combo.scale(s);
  for (size_t j = 0; j < basis_.size(); ++j) {
    int x = basis_[j].get(c);
    if (x) {
      basis_[j].axpy(p_ - x, v);
      combo_[j].axpy(p_ - x, combo);
    }
  }
  basis_.push_back(std::move(v));
  combo_.push_back(std::move(combo));
  piv_.push_back(c);
}

std::optional<Vec> TrackingReducer::express(Vec target) const {
  Vec out(p_, m_);
  for (size_t j = 0; j < basis_.size(); ++j) {
    int c = target.get(piv_[j]);
    if (c) {
      target.axpy(p_ - c, basis_[j]);
      out.axpy(c, combo_[j]);
    }
  }
  if (!target.is_zero()) return std::nullopt;
  return out;
}

}  // namespace motivic
