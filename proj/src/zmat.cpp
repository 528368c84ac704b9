#include "exhom/zmat.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <utility>

#include "exhom/error.hpp"

namespace exhom {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorKind::rank_mismatch, "ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_columns(std::size_t rows,
                                  std::span<const std::vector<std::int64_t>> columns) {
  IntMatrix m(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw Error(ErrorKind::rank_mismatch, "column length");
    for (std::size_t i = 0; i < rows; ++i) {
      m(i, j) = static_cast<long>(columns[j][i]);
    }
  }
  return m;
}

IntMatrix IntMatrix::hstack(std::span<const IntMatrix> blocks) {
  if (blocks.empty()) return {};
  std::size_t rows = blocks.front().rows();
  std::size_t cols = 0;
  for (const auto& b : blocks) {
    if (b.rows() != rows) throw Error(ErrorKind::rank_mismatch, "hstack row counts differ");
    cols += b.cols();
  }
  IntMatrix m(rows, cols);
  std::size_t off = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < rows; ++i) {
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, off + j) = b(i, j);
    }
    off += b.cols();
  }
  return m;
}

IntVector IntMatrix::row(std::size_t i) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return x == 0; });
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows_; ++i) {
    out << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) out << ' ';
      out << (*this)(i, j).get_str();
    }
    out << "]\n";
  }
  return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::rank_mismatch, "matrix product dimensions");
  IntMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::rank_mismatch, "matrix sum dimensions");
  }
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  }
  return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::rank_mismatch, "matrix difference dimensions");
  }
  IntMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  }
  return c;
}

IntVector row_times(const IntVector& v, const IntMatrix& a) {
  if (v.size() != a.rows()) throw Error(ErrorKind::rank_mismatch, "row vector length");
  IntVector out(a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < a.cols(); ++j) out[j] += v[i] * a(i, j);
  }
  return out;
}

std::string AbelianGroupShape::to_string() const {
  std::string out;
  if (free_rank == 1) {
    out = "Z";
  } else if (free_rank > 1) {
    out = "Z^" + std::to_string(free_rank);
  }
  for (const Integer& t : torsion) {
    if (!out.empty()) out += " + ";
    out += "Z/" + t.get_str();
  }
  return out.empty() ? "0" : out;
}

namespace {

// Elimination state; U and V are only maintained when `track` is set.
class SmithReducer {
 public:
  SmithReducer(const IntMatrix& a, bool track) : d_(a), track_(track) {
    if (track_) {
      u_ = IntMatrix::identity(a.rows());
      v_ = IntMatrix::identity(a.cols());
    }
  }

  void run() {
    const std::size_t m = d_.rows();
    const std::size_t n = d_.cols();
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
      if (!move_smallest(t, t, m, t, n)) break;
      for (;;) {
        clear_line(t);
        if (!line_is_clear(t)) {
          move_smallest_in_line(t);
          continue;
        }
        auto bad = non_divisible(t);
        if (!bad) break;
        add_row(bad->first, t, 1);
      }
      if (d_(t, t) < 0) negate_row(t);
    }
  }

  IntMatrix& d() { return d_; }
  IntMatrix& u() { return u_; }
  IntMatrix& v() { return v_; }

 private:
  // Moves the smallest nonzero |entry| of the block [r0,r1) x [c0,c1) to (t,t).
  bool move_smallest(std::size_t t, std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) {
    bool found = false;
    std::size_t bi = 0;
    std::size_t bj = 0;
    Integer best;
    for (std::size_t i = r0; i < r1; ++i) {
      for (std::size_t j = c0; j < c1; ++j) {
        const Integer& x = d_(i, j);
        if (x == 0) continue;
        Integer ax = abs(x);
        if (!found || ax < best) {
          found = true;
          best = ax;
          bi = i;
          bj = j;
        }
      }
    }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  void move_smallest_in_line(std::size_t t) {
    std::size_t bi = t;
    std::size_t bj = t;
    Integer best = abs(d_(t, t));
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      if (d_(i, t) != 0 && (best == 0 || abs(d_(i, t)) < best)) {
        best = abs(d_(i, t));
        bi = i;
        bj = t;
      }
    }
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      if (d_(t, j) != 0 && (best == 0 || abs(d_(t, j)) < best)) {
        best = abs(d_(t, j));
        bi = t;
        bj = j;
      }
    }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  void clear_line(std::size_t t) {
    const Integer p = d_(t, t);
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      if (d_(i, t) == 0) continue;
      Integer q = d_(i, t) / p;
      if (q != 0) add_row(t, i, -q);
    }
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      if (d_(t, j) == 0) continue;
      Integer q = d_(t, j) / p;
      if (q != 0) add_col(t, j, -q);
    }
  }

  bool line_is_clear(std::size_t t) const {
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      if (d_(i, t) != 0) return false;
    }
    for (std::size_t j = t + 1; j < d_.cols(); ++j) {
      if (d_(t, j) != 0) return false;
    }
    return true;
  }

  std::optional<std::pair<std::size_t, std::size_t>> non_divisible(std::size_t t) const {
    const Integer& p = d_(t, t);
    for (std::size_t i = t + 1; i < d_.rows(); ++i) {
      for (std::size_t j = t + 1; j < d_.cols(); ++j) {
        if (d_(i, j) % p != 0) return std::make_pair(i, j);
      }
    }
    return std::nullopt;
  }

  // row dst += k * row src
  void add_row(std::size_t src, std::size_t dst, const Integer& k) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(dst, j) += k * d_(src, j);
    if (track_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(dst, j) += k * u_(src, j);
    }
  }

  void add_col(std::size_t src, std::size_t dst, const Integer& k) {
    for (std::size_t i = 0; i < d_.rows(); ++i) d_(i, dst) += k * d_(i, src);
    if (track_) {
      for (std::size_t i = 0; i < v_.rows(); ++i) v_(i, dst) += k * v_(i, src);
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < d_.cols(); ++j) std::swap(d_(a, j), d_(b, j));
    if (track_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) std::swap(u_(a, j), u_(b, j));
    }
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < d_.rows(); ++i) std::swap(d_(i, a), d_(i, b));
    if (track_) {
      for (std::size_t i = 0; i < v_.rows(); ++i) std::swap(v_(i, a), v_(i, b));
    }
  }

  void negate_row(std::size_t t) {
    for (std::size_t j = 0; j < d_.cols(); ++j) d_(t, j) = -d_(t, j);
    if (track_) {
      for (std::size_t j = 0; j < u_.cols(); ++j) u_(t, j) = -u_(t, j);
    }
  }

  IntMatrix d_;
  IntMatrix u_;
  IntMatrix v_;
  bool track_;
};

}  // namespace

SmithForm snf(const IntMatrix& a) {
  SmithReducer r(a, true);
  r.run();
  return {std::move(r.u()), std::move(r.d()), std::move(r.v())};
}

std::vector<Integer> smith_invariants(const IntMatrix& a) {
  SmithReducer r(a, false);
  r.run();
  std::vector<Integer> out;
  for (std::size_t t = 0; t < std::min(a.rows(), a.cols()); ++t) {
    if (r.d()(t, t) != 0) out.push_back(r.d()(t, t));
  }
  return out;
}

std::size_t rank_q(const IntMatrix& a) { return smith_invariants(a).size(); }

AbelianGroupShape cokernel(const IntMatrix& a) {
  auto inv = smith_invariants(a);
  AbelianGroupShape s;
  s.free_rank = a.rows() - inv.size();
  for (const Integer& d : inv) {
    if (d > 1) s.torsion.push_back(d);
  }
  return s;
}

std::vector<IntVector> row_hermite(std::vector<IntVector> rows) {
  if (rows.empty()) return rows;
  const std::size_t n = rows.front().size();
  std::size_t top = 0;
  for (std::size_t c = 0; c < n && top < rows.size(); ++c) {
    // gcd-combine column c into row `top`
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t i = top; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        if (best == rows.size() || abs(rows[i][c]) < abs(rows[best][c])) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool cleared = true;
      for (std::size_t i = top + 1; i < rows.size(); ++i) {
        if (rows[i][c] == 0) continue;
        Integer q = rows[i][c] / rows[top][c];
        for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[top][j];
        if (rows[i][c] != 0) cleared = false;
      }
      if (cleared) break;
    }
    if (top >= rows.size() || rows[top][c] == 0) continue;
    if (rows[top][c] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t i = 0; i < top; ++i) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), rows[i][c].get_mpz_t(), rows[top][c].get_mpz_t());
      if (q == 0) continue;
      for (std::size_t j = 0; j < n; ++j) rows[i][j] -= q * rows[top][j];
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

std::vector<IntVector> left_annihilator(const IntMatrix& a) {
  SmithForm f = snf(a);
  std::size_t r = 0;
  while (r < std::min(a.rows(), a.cols()) && f.D(r, r) != 0) ++r;
  std::vector<IntVector> rows;
  for (std::size_t i = r; i < a.rows(); ++i) rows.push_back(f.U.row(i));
  return row_hermite(std::move(rows));
}

bool is_unimodular(const IntMatrix& a) {
  if (a.rows() != a.cols()) return false;
  auto inv = smith_invariants(a);
  return inv.size() == a.rows() &&
         std::all_of(inv.begin(), inv.end(), [](const Integer& d) { return d == 1; });
}

IntMatrix unimodular_inverse(const IntMatrix& a) {
  if (!is_unimodular(a)) throw Error(ErrorKind::precondition, "matrix is not unimodular");
  SmithForm f = snf(a);
  // U A V = I, so A^-1 = V U.
  return f.V * f.U;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (const Integer& x : v) g = gcd(g, x);
  return g;
}

std::string to_string(const IntVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].get_str();
  }
  return out + ")";
}

}  // namespace exhom
