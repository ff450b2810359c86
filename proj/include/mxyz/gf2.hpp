#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace mxyz::gf2 {

/// Dense bit vector packed into 64-bit words.
using BitVec = std::vector<uint64_t>;

inline BitVec make_bitvec(std::size_t nbits) { return BitVec((nbits + 63) / 64, 0); }

inline bool get(const BitVec& v, std::size_t i) { return (v[i >> 6] >> (i & 63)) & 1u; }
inline void set(BitVec& v, std::size_t i) { v[i >> 6] |= uint64_t{1} << (i & 63); }
inline void flip(BitVec& v, std::size_t i) { v[i >> 6] ^= uint64_t{1} << (i & 63); }

inline void xor_into(BitVec& a, const BitVec& b) {
  for (std::size_t w = 0; w < a.size(); ++w) a[w] ^= b[w];
}

inline bool is_zero(const BitVec& v) {
  for (uint64_t w : v)
    if (w) return false;
  return true;
}

inline std::optional<std::size_t> lowest_set(const BitVec& v) {
  for (std::size_t w = 0; w < v.size(); ++w)
    if (v[w]) return (w << 6) + static_cast<std::size_t>(__builtin_ctzll(v[w]));
  return std::nullopt;
}

/// Incremental row-reduced GF(2) basis with per-row combination tracking.
/// Rows are kept in reduced echelon form with unique pivot columns, so rank,
/// span membership, and decomposition witnesses all come from one structure.
class RowBasis {
 public:
  explicit RowBasis(std::size_t row_bits, std::size_t combo_bits = 0)
      : row_bits_(row_bits), combo_bits_(combo_bits) {}

  std::size_t rank() const { return rows_.size(); }

  /// Inserts `row` (with its combination tag); returns false if dependent.
  bool insert(BitVec row, BitVec combo = {}) {
    if (combo.empty()) combo = make_bitvec(combo_bits_ ? combo_bits_ : 1);
    for (const Entry& e : rows_) {
      if (get(row, e.pivot)) {
        xor_into(row, e.row);
        xor_into(combo, e.combo);
      }
    }
    auto piv = lowest_set(row);
    if (!piv) return false;
    // back-eliminate to keep reduced form
    for (Entry& e : rows_) {
      if (get(e.row, *piv)) {
        xor_into(e.row, row);
        xor_into(e.combo, combo);
      }
    }
    rows_.push_back({*piv, std::move(row), std::move(combo)});
    std::size_t i = rows_.size();
    while (i > 1 && rows_[i - 1].pivot < rows_[i - 2].pivot) {
      std::swap(rows_[i - 1], rows_[i - 2]);
      --i;
    }
    return true;
  }

  /// Reduces `row` against the basis; on full cancellation returns the
  /// member combination, otherwise nullopt.
  std::optional<BitVec> reduce(BitVec row) const {
    BitVec combo = make_bitvec(combo_bits_ ? combo_bits_ : 1);
    for (const Entry& e : rows_) {
      if (get(row, e.pivot)) {
        xor_into(row, e.row);
        xor_into(combo, e.combo);
      }
    }
    if (is_zero(row)) return combo;
    return std::nullopt;
  }

  bool contains(const BitVec& row) const { return reduce(row).has_value(); }

  const BitVec& row(std::size_t i) const { return rows_[i].row; }
  std::size_t pivot(std::size_t i) const { return rows_[i].pivot; }

 private:
  struct Entry {
    std::size_t pivot;
    BitVec row;
    BitVec combo;
  };
  std::size_t row_bits_;
  std::size_t combo_bits_;
  std::vector<Entry> rows_;
};

/// Basis of { x : M x = 0 } for an m-row, ncols-column bit matrix.
inline std::vector<BitVec> nullspace(const std::vector<BitVec>& mat,
                                     std::size_t ncols) {
  std::vector<BitVec> m = mat;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t col = 0; col < ncols && r < m.size(); ++col) {
    std::size_t sel = r;
    while (sel < m.size() && !get(m[sel], col)) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != r && get(m[i], col)) xor_into(m[i], m[r]);
    pivot_col.push_back(col);
    ++r;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    BitVec v = make_bitvec(ncols);
    set(v, f);
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      if (get(m[i], f)) set(v, pivot_col[i]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace mxyz::gf2
