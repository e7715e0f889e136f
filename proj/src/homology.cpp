#include "gpforge/homology.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

#include "gpforge/errors.hpp"

namespace gpforge {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
  if (data_.size() != rows * cols) throw InputError("matrix data does not match its dimensions");
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("matrix dimensions do not agree");
  IntegerMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const BigInt& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c.at(i, j) += x * b.at(k, j);
    }
  }
  return c;
}

BigInt determinant(const IntegerMatrix& a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  std::size_t n = a.rows();
  if (n == 0) return 1;
  IntegerMatrix m = a;
  BigInt sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m.at(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
      }
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(i, c), m.at(j, c));
}

void swap_cols(IntegerMatrix& m, std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t r = 0; r < m.rows(); ++r) std::swap(m.at(r, i), m.at(r, j));
}

// row_target -= q * row_source
void add_row_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (m.at(source, c) != 0) m.at(target, c) -= q * m.at(source, c);
  }
}

// col_target -= q * col_source
void add_col_multiple(IntegerMatrix& m, std::size_t target, std::size_t source, const BigInt& q) {
  if (q == 0) return;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (m.at(r, source) != 0) m.at(r, target) -= q * m.at(r, source);
  }
}

// Dense Smith form. Transforms are tracked only when `u`/`v` are given.
void smith_in_place(IntegerMatrix& a, IntegerMatrix* u, IntegerMatrix* v) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      std::size_t pr = m;
      std::size_t pc = n;
      for (std::size_t i = t; i < m; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a.at(i, j) == 0) continue;
          if (pr == m || abs(a.at(i, j)) < abs(a.at(pr, pc))) {
            pr = i;
            pc = j;
          }
        }
      }
      if (pr == m) return;  // the remaining block is zero
      swap_rows(a, t, pr);
      if (u) swap_rows(*u, t, pr);
      swap_cols(a, t, pc);
      if (v) swap_cols(*v, t, pc);

      bool clean = true;
      const BigInt pivot = a.at(t, t);
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a.at(i, t) == 0) continue;
        BigInt q = a.at(i, t) / pivot;
        add_row_multiple(a, i, t, q);
        if (u) add_row_multiple(*u, i, t, q);
        if (a.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a.at(t, j) == 0) continue;
        BigInt q = a.at(t, j) / pivot;
        add_col_multiple(a, j, t, q);
        if (v) add_col_multiple(*v, j, t, q);
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // a smaller remainder now exists; pick it as pivot

      // Divisibility: fold a row with a non-multiple entry into row t.
      std::size_t bad_row = m;
      for (std::size_t i = t + 1; i < m && bad_row == m; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a.at(i, j) % pivot != 0) {
            bad_row = i;
            break;
          }
        }
      }
      if (bad_row == m) break;
      add_row_multiple(a, t, bad_row, -1);
      if (u) add_row_multiple(*u, t, bad_row, -1);
    }
    if (a.at(t, t) < 0) {
      for (std::size_t c = 0; c < n; ++c) a.at(t, c) = -a.at(t, c);
      if (u) {
        for (std::size_t c = 0; c < m; ++c) u->at(t, c) = -u->at(t, c);
      }
    }
  }
}

std::vector<BigInt> diagonal_factors(const IntegerMatrix& d) {
  std::vector<BigInt> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) {
    if (d.at(i, i) != 0) out.push_back(d.at(i, i));
  }
  return out;
}

}  // namespace

SnfResult smith_normal_form(const IntegerMatrix& a) {
  SnfResult r{a, IntegerMatrix::identity(a.rows()), IntegerMatrix::identity(a.cols()), {}};
  smith_in_place(r.D, &r.U, &r.V);
  r.invariant_factors = diagonal_factors(r.D);
  return r;
}

void SparseMatrix::add(std::size_t row, std::size_t col, const BigInt& value) {
  if (row >= rows || col >= cols) throw InputError("sparse matrix index out of range");
  auto& column = columns[col];
  BigInt& slot = column[row];
  slot += value;
  if (slot == 0) column.erase(row);
}

SparseMatrix SparseMatrix::from_dense(const IntegerMatrix& a) {
  SparseMatrix s(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j) != 0) s.columns[j][i] = a.at(i, j);
    }
  }
  return s;
}

IntegerMatrix SparseMatrix::to_dense() const {
  IntegerMatrix d(rows, cols);
  for (std::size_t j = 0; j < cols; ++j) {
    for (const auto& [i, value] : columns[j]) d.at(i, j) = value;
  }
  return d;
}

std::vector<BigInt> invariant_factors(const SparseMatrix& a) {
  std::vector<std::map<std::size_t, BigInt>> cols = a.columns;
  std::vector<std::set<std::size_t>> row_cols(a.rows);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (const auto& [i, value] : cols[j]) row_cols[i].insert(j);
  }
  std::set<std::pair<std::size_t, std::size_t>> queue;  // (nonzeros, column)
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (!cols[j].empty()) queue.emplace(cols[j].size(), j);
  }

  std::size_t unit_pivots = 0;
  while (!queue.empty()) {
    auto [count, c] = *queue.begin();
    queue.erase(queue.begin());
    // A unit entry whose row is shortest keeps fill-in low. Columns without
    // units leave the queue until an update touches them again.
    std::size_t pivot_row = a.rows;
    for (const auto& [i, value] : cols[c]) {
      if (abs(value) != 1) continue;
      if (pivot_row == a.rows || row_cols[i].size() < row_cols[pivot_row].size()) pivot_row = i;
    }
    if (pivot_row == a.rows) continue;
    const BigInt pivot = cols[c].at(pivot_row);

    std::vector<std::size_t> others(row_cols[pivot_row].begin(), row_cols[pivot_row].end());
    for (std::size_t c2 : others) {
      if (c2 == c) continue;
      queue.erase({cols[c2].size(), c2});
      BigInt factor = cols[c2].at(pivot_row) * pivot;  // pivot is its own inverse
      for (const auto& [i, value] : cols[c]) {
        BigInt& slot = cols[c2][i];
        bool was_zero = slot == 0;
        slot -= factor * value;
        if (slot == 0) {
          cols[c2].erase(i);
          row_cols[i].erase(c2);
        } else if (was_zero) {
          row_cols[i].insert(c2);
        }
      }
      if (!cols[c2].empty()) queue.emplace(cols[c2].size(), c2);
    }
    for (const auto& [i, value] : cols[c]) row_cols[i].erase(c);
    cols[c].clear();
    ++unit_pivots;
  }

  // Dense Smith form of whatever survived.
  std::vector<std::size_t> live_cols;
  std::map<std::size_t, std::size_t> live_rows;
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].empty()) continue;
    live_cols.push_back(j);
    for (const auto& [i, value] : cols[j]) live_rows.emplace(i, 0);
  }
  std::size_t next = 0;
  for (auto& [i, index] : live_rows) index = next++;
  IntegerMatrix rest(live_rows.size(), live_cols.size());
  for (std::size_t k = 0; k < live_cols.size(); ++k) {
    for (const auto& [i, value] : cols[live_cols[k]]) rest.at(live_rows.at(i), k) = value;
  }
  smith_in_place(rest, nullptr, nullptr);
  std::vector<BigInt> factors(unit_pivots, BigInt(1));
  for (auto& f : diagonal_factors(rest)) factors.push_back(std::move(f));
  return factors;
}

std::string AbelianGroup::format() const {
  std::ostringstream out;
  out << "rank=" << rank << " torsion=[";
  for (std::size_t i = 0; i < torsion.size(); ++i) out << (i ? "," : "") << torsion[i];
  out << ']';
  return out.str();
}

AbelianGroup cokernel(std::size_t rows, const std::vector<BigInt>& factors) {
  AbelianGroup g;
  g.rank = rows - factors.size();
  for (const auto& f : factors) {
    if (f > 1) g.torsion.push_back(f);
  }
  return g;
}

IntegerMatrix relation_matrix(const Presentation& p) {
  IntegerMatrix m(p.relator_count(), p.generator_count());
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    for (const auto& l : p.relators[i].letters()) {
      auto g = p.alphabet.index_of(l.symbol);
      if (!g) throw AlphabetMismatch("relator uses undeclared generator '" + l.symbol + "'");
      m.at(i, *g) += l.exponent;
    }
  }
  return m;
}

AbelianGroup abelianization(const Presentation& p) {
  // The group is the cokernel of the transpose (generators x relators).
  IntegerMatrix rel = relation_matrix(p);
  SparseMatrix t(rel.cols(), rel.rows());
  for (std::size_t i = 0; i < rel.rows(); ++i) {
    for (std::size_t j = 0; j < rel.cols(); ++j) {
      if (rel.at(i, j) != 0) t.columns[i][j] = rel.at(i, j);
    }
  }
  return cokernel(p.generator_count(), invariant_factors(t));
}

std::array<AbelianGroup, 3> complex_homology(const ChainComplexData& c) {
  const SparseMatrix& d1 = c.d1;
  const SparseMatrix& d2 = c.d2;
  if (d1.cols != d2.rows) throw InvalidComplexError("boundary matrix dimensions do not chain");
  for (std::size_t j = 0; j < d2.cols; ++j) {
    std::map<std::size_t, BigInt> image;
    for (const auto& [e, coeff] : d2.columns[j]) {
      for (const auto& [v, x] : d1.columns[e]) image[v] += coeff * x;
    }
    for (const auto& [v, x] : image) {
      if (x != 0) throw InvalidComplexError("d1 * d2 is nonzero at 2-cell " + std::to_string(j));
    }
  }
  std::vector<BigInt> f1 = invariant_factors(d1);
  std::vector<BigInt> f2 = invariant_factors(d2);
  AbelianGroup h0 = cokernel(d1.rows, f1);
  AbelianGroup h1 = cokernel(d1.cols - f1.size(), f2);
  AbelianGroup h2;
  h2.rank = d2.cols - f2.size();
  return {h0, h1, h2};
}

}  // namespace gpforge
