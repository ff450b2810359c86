#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mxyz/gf2.hpp"
#include "mxyz/pauli.hpp"

namespace mxyz {

inline gf2::BitVec symplectic_row(const PauliWord& p) {
  const std::size_t n = p.num_qubits();
  gf2::BitVec row = gf2::make_bitvec(2 * n);
  for (std::size_t q = 0; q < n; ++q) {
    if (p.xbit(q)) gf2::set(row, q);
    if (p.zbit(q)) gf2::set(row, n + q);
  }
  return row;
}

inline PauliWord from_symplectic_row(const gf2::BitVec& row, std::size_t n) {
  PauliWord p(n);
  for (std::size_t q = 0; q < n; ++q) {
    const unsigned v = (gf2::get(row, q) ? 1u : 0u) | (gf2::get(row, n + q) ? 2u : 0u);
    p.set_letter(q, static_cast<PauliLetter>(v));
  }
  return p;
}

inline uint8_t symplectic_product_rows(const gf2::BitVec& a, const gf2::BitVec& b,
                                       std::size_t n) {
  // <a, b> = a_x . b_z + a_z . b_x over GF(2), halves packed as [x || z].
  uint64_t acc = 0;
  for (std::size_t q = 0; q < n; ++q)
    acc ^= static_cast<uint64_t>((gf2::get(a, q) & gf2::get(b, n + q)) ^
                                 (gf2::get(a, n + q) & gf2::get(b, q)));
  return static_cast<uint8_t>(acc & 1u);
}

/// Ordered list of PauliWords with a cached row-reduced symplectic basis.
/// All span queries are phase-blind; phases are recomputed by ordered
/// multiplication when a caller asks for a product.
class OperatorSet {
 public:
  OperatorSet() : n_(0) {}
  explicit OperatorSet(std::size_t n) : n_(n) {}
  explicit OperatorSet(std::vector<PauliWord> members)
      : n_(members.empty() ? 0 : members[0].num_qubits()),
        members_(std::move(members)) {}

  std::size_t num_qubits() const { return n_; }
  std::size_t size() const { return members_.size(); }
  const PauliWord& member(std::size_t i) const { return members_[i]; }
  const std::vector<PauliWord>& members() const { return members_; }

  void add(PauliWord p) {
    if (members_.empty() && n_ == 0) n_ = p.num_qubits();
    members_.push_back(std::move(p));
    basis_.reset();
  }

  std::size_t rank() const { return basis().rank(); }

  bool in_span(const PauliWord& p) const {
    return basis().contains(symplectic_row(p));
  }

  /// One GF(2) solution over the members whose pattern-XOR equals p's, or
  /// nullopt when p is outside the span. Phase of the ordered product of the
  /// selected members is reported by product_of().
  std::optional<gf2::BitVec> decompose(const PauliWord& p) const {
    return basis().reduce(symplectic_row(p));
  }

  /// Ordered product of the members selected by a coefficient vector.
  PauliWord product_of(const gf2::BitVec& coeffs) const {
    PauliWord acc(n_);
    for (std::size_t i = 0; i < members_.size(); ++i)
      if (gf2::get(coeffs, i)) acc = multiply(acc, members_[i]);
    return acc;
  }

  /// m x m anticommutation matrix over the members.
  std::vector<gf2::BitVec> gram() const {
    const std::size_t m = members_.size();
    std::vector<gf2::BitVec> g(m, gf2::make_bitvec(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < i; ++j)
        if (symplectic_product(members_[i], members_[j])) {
          gf2::set(g[i], j);
          gf2::set(g[j], i);
        }
    return g;
  }

  /// Basis of { products of members commuting with every member }: the Gram
  /// nullspace mapped onto Pauli patterns and canonicalised by row reduction
  /// (coefficient vectors that differ by a generator relation collapse to
  /// the same row).
  OperatorSet centre() const {
    const auto g = gram();
    const auto null_coeffs = gf2::nullspace(g, members_.size());
    gf2::RowBasis rb(2 * n_, members_.size());
    for (const auto& c : null_coeffs) {
      gf2::BitVec row = gf2::make_bitvec(2 * n_);
      for (std::size_t i = 0; i < members_.size(); ++i)
        if (gf2::get(c, i)) gf2::xor_into(row, symplectic_row(members_[i]));
      rb.insert(std::move(row), c);
    }
    OperatorSet out(n_);
    for (std::size_t i = 0; i < rb.rank(); ++i)
      out.add(from_symplectic_row(rb.row(i), n_));
    return out;
  }

  /// Basis of all n-qubit Paulis commuting with every member; dimension
  /// 2n - rank.
  OperatorSet centraliser_in_pauli_group() const {
    // v commutes with g iff <v, g> = 0; swapping halves turns the symplectic
    // condition into an ordinary nullspace problem.
    std::vector<gf2::BitVec> rows;
    rows.reserve(members_.size());
    for (const auto& p : members_) {
      gf2::BitVec r = gf2::make_bitvec(2 * n_);
      for (std::size_t q = 0; q < n_; ++q) {
        if (p.zbit(q)) gf2::set(r, q);
        if (p.xbit(q)) gf2::set(r, n_ + q);
      }
      rows.push_back(std::move(r));
    }
    const auto ns = gf2::nullspace(rows, 2 * n_);
    OperatorSet out(n_);
    for (const auto& v : ns) out.add(from_symplectic_row(v, n_));
    return out;
  }

 private:
  const gf2::RowBasis& basis() const {
    if (!basis_) {
      basis_.emplace(2 * n_, members_.size());
      for (std::size_t i = 0; i < members_.size(); ++i) {
        gf2::BitVec combo = gf2::make_bitvec(members_.size());
        gf2::set(combo, i);
        basis_->insert(symplectic_row(members_[i]), std::move(combo));
      }
    }
    return *basis_;
  }

  std::size_t n_;
  std::vector<PauliWord> members_;
  mutable std::optional<gf2::RowBasis> basis_;
};

/// Symplectic Gram-Schmidt over the span of `set`: extracts hyperbolic pairs
/// (a_m, b_m) with <a_m, b_n> = delta_mn and all other pairings zero; the
/// leftover central part is discarded. Coefficients are over set members.
struct HyperbolicPair {
  PauliWord a, b;
  gf2::BitVec a_coeffs, b_coeffs;
};

inline std::vector<HyperbolicPair> hyperbolic_pairs(const OperatorSet& set) {
  const std::size_t n = set.num_qubits();
  const std::size_t m = set.size();
  struct Vec {
    gf2::BitVec row, coeffs;
  };
  std::vector<Vec> work;
  work.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    gf2::BitVec c = gf2::make_bitvec(m);
    gf2::set(c, i);
    work.push_back({symplectic_row(set.member(i)), std::move(c)});
  }
  std::vector<HyperbolicPair> pairs;
  for (;;) {
    std::size_t pi = work.size(), pj = work.size();
    for (std::size_t i = 0; i < work.size() && pi == work.size(); ++i)
      for (std::size_t j = i + 1; j < work.size(); ++j)
        if (symplectic_product_rows(work[i].row, work[j].row, n)) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == work.size()) break;
    Vec a = work[pi], b = work[pj];
    work.erase(work.begin() + static_cast<long>(pj));
    work.erase(work.begin() + static_cast<long>(pi));
    for (Vec& v : work) {
      if (symplectic_product_rows(v.row, b.row, n)) {
        gf2::xor_into(v.row, a.row);
        gf2::xor_into(v.coeffs, a.coeffs);
      }
      if (symplectic_product_rows(v.row, a.row, n)) {
        gf2::xor_into(v.row, b.row);
        gf2::xor_into(v.coeffs, b.coeffs);
      }
    }
    pairs.push_back({from_symplectic_row(a.row, n), from_symplectic_row(b.row, n),
                     std::move(a.coeffs), std::move(b.coeffs)});
  }
  return pairs;
}

}  // namespace mxyz
