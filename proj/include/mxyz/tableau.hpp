#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mxyz/code.hpp"
#include "mxyz/rng.hpp"

namespace mxyz {

/// Aaronson-Gottesman stabiliser tableau: n stabiliser rows plus n
/// destabiliser rows, with destab_i anticommuting with stab_i only. Rows are
/// PauliWords whose phase carries the sign (0 = +1, 2 = -1).
class Tableau {
 public:
  explicit Tableau(std::size_t n) : n_(n) {
    destab_.reserve(n);
    stab_.reserve(n);
    for (std::size_t q = 0; q < n; ++q) {
      PauliWord x(n), z(n);
      x.set_letter(q, PauliLetter::X);
      z.set_letter(q, PauliLetter::Z);
      destab_.push_back(std::move(x));
      stab_.push_back(std::move(z));
    }
  }

  std::size_t num_qubits() const { return n_; }
  const PauliWord& stab_row(std::size_t i) const { return stab_[i]; }
  const PauliWord& destab_row(std::size_t i) const { return destab_[i]; }

  struct MeasureResult {
    bool minus = false;        // outcome -1?
    bool deterministic = false;
    std::size_t row = 0;       // replaced stabiliser row when random
  };

  /// Measures the Hermitian Pauli P (phase must be even). Standard CHP
  /// update: random outcome replaces the first anticommuting stabiliser row;
  /// deterministic outcome is read off by accumulating the stabiliser rows
  /// selected by the anticommuting destabilisers.
  MeasureResult measure(const PauliWord& P, CounterRng& rng) {
    if (P.is_identity_pattern())
      throw std::invalid_argument("Tableau::measure: identity operator");
    if (P.phase() & 1)
      throw std::invalid_argument("Tableau::measure: non-Hermitian operator");
    std::size_t p = n_;
    for (std::size_t i = 0; i < n_; ++i)
      if (symplectic_product(stab_[i], P)) {
        p = i;
        break;
      }
    if (p < n_) {
      const PauliWord pivot = stab_[p];
      for (std::size_t i = 0; i < n_; ++i) {
        if (i != p && symplectic_product(stab_[i], P))
          stab_[i] = multiply(pivot, stab_[i]);
        if (symplectic_product(destab_[i], P))
          destab_[i] = multiply(pivot, destab_[i]);
      }
      destab_[p] = pivot;
      const bool minus = rng.bit();
      stab_[p] = P;
      if (minus) stab_[p].set_phase(static_cast<uint8_t>(P.phase() + 2));
      return {minus, false, p};
    }
    PauliWord acc(n_);
    for (std::size_t i = 0; i < n_; ++i)
      if (symplectic_product(destab_[i], P)) acc = multiply(acc, stab_[i]);
    if (!acc.same_pattern(P))
      throw std::logic_error("Tableau::measure: tableau invariant broken");
    const uint8_t d = static_cast<uint8_t>((acc.phase() - P.phase()) & 3);
    if (d & 1) throw std::logic_error("Tableau::measure: odd phase residue");
    return {d == 2, true, 0};
  }

  /// Conjugation by a Pauli frame: flips the sign of every row that
  /// anticommutes with F. The error pattern itself is tracked by the caller.
  void apply_pauli(const PauliWord& F) {
    for (std::size_t i = 0; i < n_; ++i) {
      if (symplectic_product(stab_[i], F))
        stab_[i].set_phase(static_cast<uint8_t>(stab_[i].phase() + 2));
      if (symplectic_product(destab_[i], F))
        destab_[i].set_phase(static_cast<uint8_t>(destab_[i].phase() + 2));
    }
  }

 private:
  std::size_t n_;
  std::vector<PauliWord> destab_, stab_;
};

/// Prepares a +1 eigenstate of every stabiliser basis element, then fixes a
/// gauge by measuring a maximal mutually commuting subset of the triangles.
/// Random -outcomes are flipped by applying the fresh destabiliser;
/// deterministic -outcomes are flipped by a Pauli frame drawn from the
/// centraliser of the already-fixed prefix.
inline Tableau prepare_code_state(const CodeStructure& code, CounterRng& rng) {
  const std::size_t n = code.lat.num_sites();
  Tableau tab(n);
  OperatorSet fixed(n);
  for (std::size_t i = 0; i < code.stab_gens.size(); ++i) {
    const PauliWord& S = code.stab_gens.member(i);
    auto res = tab.measure(S, rng);
    if (res.minus) {
      if (!res.deterministic) {
        tab.apply_pauli(tab.destab_row(res.row));
      } else {
        // Need F commuting with every already-fixed element but not with S.
        PauliWord frame;
        const OperatorSet cent = fixed.centraliser_in_pauli_group();
        for (const auto& c : cent.members())
          if (symplectic_product(c, S)) {
            frame = c;
            break;
          }
        if (frame.num_qubits() == 0)
          throw std::logic_error("prepare_code_state: no flipping frame found");
        tab.apply_pauli(frame);
      }
      res = tab.measure(S, rng);
      if (res.minus || !res.deterministic)
        throw std::logic_error("prepare_code_state: sign forcing failed");
    }
    fixed.add(S);
  }
  // Gauge fixing: greedy maximal commuting triangle subset, measured once.
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < code.gauge_gens.size(); ++i) {
    bool ok = true;
    for (std::size_t j : kept)
      if (symplectic_product(code.gauge_gens.member(i),
                             code.gauge_gens.member(j))) {
        ok = false;
        break;
      }
    if (ok) kept.push_back(i);
  }
  for (std::size_t i : kept) tab.measure(code.gauge_gens.member(i), rng);
  return tab;
}

}  // namespace mxyz
