#pragma once

#include <stdexcept>
#include <vector>

#include "mxyz/pauli.hpp"

namespace mxyz {

/// (row, col) on the skewed 60-degree axes; reduced mod L on use.
struct SiteCoord {
  long row;
  long col;
};

enum class Orientation { Up, Down };
enum class LoopKind { X, Y, Z };

/// L x L triangular torus, n = L^2 sites, linear index row*L + col.
class Lattice {
 public:
  explicit Lattice(std::size_t L) : L_(L) {
    if (L < 3)
      throw std::invalid_argument(
          "Lattice: L >= 3 required (loop and triangle supports self-overlap "
          "on smaller tori)");
  }

  std::size_t size() const { return L_; }
  std::size_t num_sites() const { return L_ * L_; }

  std::size_t site_index(SiteCoord c) const {
    const long L = static_cast<long>(L_);
    const long r = ((c.row % L) + L) % L;
    const long k = ((c.col % L) + L) % L;
    return static_cast<std::size_t>(r * L + k);
  }

  SiteCoord coord(std::size_t idx) const {
    return {static_cast<long>(idx / L_), static_cast<long>(idx % L_)};
  }

  /// Up triangle: Y on the anchor, X on its same-row neighbour, Z on the
  /// next-row vertex.
  PauliLetterAssignment up_triangle_support(SiteCoord a) const {
    return {{site_index(a), PauliLetter::Y},
            {site_index({a.row, a.col + 1}), PauliLetter::X},
            {site_index({a.row + 1, a.col}), PauliLetter::Z}};
  }

  /// Down triangle: Z on the lone vertex, X then Y on the adjacent next-row
  /// pair.
  PauliLetterAssignment down_triangle_support(SiteCoord a) const {
    return {{site_index(a), PauliLetter::Z},
            {site_index({a.row + 1, a.col - 1}), PauliLetter::X},
            {site_index({a.row + 1, a.col}), PauliLetter::Y}};
  }

  /// Unit triangle pattern with every displacement dilated by m.
  PauliLetterAssignment scaled_triangle_support(SiteCoord a, long m,
                                                Orientation o) const {
    if (m < 1 || m >= static_cast<long>(L_))
      throw std::invalid_argument("scaled_triangle_support: need 1 <= m < L");
    if (o == Orientation::Up)
      return {{site_index(a), PauliLetter::Y},
              {site_index({a.row, a.col + m}), PauliLetter::X},
              {site_index({a.row + m, a.col}), PauliLetter::Z}};
    return {{site_index(a), PauliLetter::Z},
            {site_index({a.row + m, a.col - m}), PauliLetter::X},
            {site_index({a.row + m, a.col}), PauliLetter::Y}};
  }

  /// Weight-L single loop: Z along a row, X along a column, Y along the
  /// anti-diagonal r+c = line (the unique diagonal orientation commuting
  /// with every triangle).
  PauliLetterAssignment loop_support(LoopKind kind, long line) const {
    PauliLetterAssignment out;
    const long L = static_cast<long>(L_);
    for (long t = 0; t < L; ++t) {
      switch (kind) {
        case LoopKind::Z: out[site_index({line, t})] = PauliLetter::Z; break;
        case LoopKind::X: out[site_index({t, line})] = PauliLetter::X; break;
        case LoopKind::Y: out[site_index({t, line - t})] = PauliLetter::Y; break;
      }
    }
    return out;
  }

  PauliWord up_triangle(SiteCoord a) const {
    return to_pauli(up_triangle_support(a), num_sites());
  }
  PauliWord down_triangle(SiteCoord a) const {
    return to_pauli(down_triangle_support(a), num_sites());
  }
  PauliWord loop(LoopKind k, long line) const {
    return to_pauli(loop_support(k, line), num_sites());
  }

 private:
  std::size_t L_;
};

}  // namespace mxyz
