#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mxyz/lattice.hpp"
#include "mxyz/operator_set.hpp"

namespace mxyz {

/// Anticommuting logical X/Y/Z triple anchored on a loop line, with gauge
/// dressing coefficients over the gauge generator list.
struct LogicalTriple {
  PauliWord X, Y, Z;
  long line_index = 0;
  gf2::BitVec dress_x, dress_y, dress_z;
};

struct CodeParams {
  std::size_t n = 0;
  std::size_t s = 0;          // rank of the stabiliser basis
  std::size_t gauge_rank = 0; // rank of the triangle set
  std::size_t g = 0;          // (gauge_rank - s) / 2
  long k = 0;                 // n - g - s
  long k_stab = 0;            // n - s (non-gauge stabiliser-code reading)
  std::optional<std::size_t> d_certified;
};

/// Closed-form counting claims compared against the computed ranks.
struct ClosedFormCheck {
  std::string name;
  long claimed = 0;
  long computed = 0;
  bool match = false;
};

struct CodeStructure {
  Lattice lat;
  OperatorSet gauge_gens;     // all 2L^2 triangles, up then down, row-major
  OperatorSet stab_gens;      // canonical centre basis
  std::vector<LogicalTriple> bare_logicals;
  std::vector<LogicalTriple> dressed_logicals;
  CodeParams params;
  std::vector<ClosedFormCheck> closed_forms;
};

/// All L^2 up and L^2 down triangles (phase 0), ups first, row-major anchors.
inline OperatorSet build_gauge_generators(const Lattice& lat) {
  const long L = static_cast<long>(lat.size());
  OperatorSet out(lat.num_sites());
  for (long r = 0; r < L; ++r)
    for (long c = 0; c < L; ++c) out.add(lat.up_triangle({r, c}));
  for (long r = 0; r < L; ++r)
    for (long c = 0; c < L; ++c) out.add(lat.down_triangle({r, c}));
  return out;
}

inline PauliWord double_loop(const Lattice& lat, LoopKind k, long line) {
  return multiply(lat.loop(k, line), lat.loop(k, line + 1));
}

/// Centre of the gauge group. Asserts the structural facts the construction
/// depends on: every consecutive double loop lies in the centre span, and the
/// centre sits inside the gauge span. The paper's closed-form rank is checked
/// separately (see code_parameters) because it does not hold at every L.
inline OperatorSet build_stabiliser_generators(const Lattice& lat,
                                               const OperatorSet& gauge) {
  OperatorSet centre = gauge.centre();
  const long L = static_cast<long>(lat.size());
  OperatorSet centre_check = centre;  // membership queries only
  for (LoopKind k : {LoopKind::X, LoopKind::Y, LoopKind::Z}) {
    for (long i = 0; i + 1 < L; ++i) {
      const PauliWord dl = double_loop(lat, k, i);
      if (!centre_check.in_span(dl))
        throw std::runtime_error(
            "build_stabiliser_generators: consecutive double loop outside the "
            "computed centre (kind " +
            std::string(1, "XYZ"[static_cast<int>(k)]) + ", line " +
            std::to_string(i) + ")");
      if (!gauge.in_span(dl))
        throw std::runtime_error(
            "build_stabiliser_generators: double loop outside the gauge span");
    }
  }
  return centre;
}

/// Bare triples from the double cross loops at even line indices 0, 2, ...:
/// X = -i Y-loop * Z-loop, Y = i X-loop * Z-loop, Z = i Y-loop * X-loop.
inline std::vector<LogicalTriple> build_bare_logicals(const Lattice& lat) {
  const long L = static_cast<long>(lat.size());
  const long triples = L / 2;
  std::vector<LogicalTriple> out;
  for (long t = 0; t < triples; ++t) {
    const long line = 2 * t;
    const PauliWord ly = lat.loop(LoopKind::Y, line);
    const PauliWord lz = lat.loop(LoopKind::Z, line);
    const PauliWord lx = lat.loop(LoopKind::X, line);
    LogicalTriple lt;
    lt.line_index = line;
    lt.dress_x = gf2::make_bitvec(2 * lat.num_sites());
    lt.dress_y = lt.dress_x;
    lt.dress_z = lt.dress_x;
    lt.X = multiply(ly, lz);
    lt.X.set_phase(static_cast<uint8_t>(lt.X.phase() + 3));  // -i prefactor
    lt.Y = multiply(lx, lz);
    lt.Y.set_phase(static_cast<uint8_t>(lt.Y.phase() + 1));  // +i prefactor
    lt.Z = multiply(ly, lx);
    lt.Z.set_phase(static_cast<uint8_t>(lt.Z.phase() + 1));  // +i prefactor
    out.push_back(std::move(lt));
  }
  return out;
}

/// Gauge-dresses the bare triples so that operators of different triples
/// commute while within-triple anticommutation survives. Uses hyperbolic
/// pairs (a_m, b_m) of the gauge span: triple i gets d_X = a_i and
/// d_Z = xor of b_m over the other triples, which realises the required
/// pairing sp(g_Ai, g_Bj) = [A != B] for i != j exactly.
inline std::vector<LogicalTriple> dress_logicals(
    const std::vector<LogicalTriple>& bare, const OperatorSet& gauge) {
  const std::size_t kt = bare.size();
  const std::size_t m = gauge.size();
  std::vector<LogicalTriple> out = bare;
  for (auto& lt : out) {
    lt.dress_x = gf2::make_bitvec(m);
    lt.dress_y = gf2::make_bitvec(m);
    lt.dress_z = gf2::make_bitvec(m);
  }
  if (kt < 2) return out;

  const auto pairs = hyperbolic_pairs(gauge);
  if (pairs.size() < kt)
    throw std::runtime_error(
        "dress_logicals: not enough gauge hyperbolic pairs (" +
        std::to_string(pairs.size()) + " < " + std::to_string(kt) + ")");

  for (std::size_t i = 0; i < kt; ++i) {
    out[i].dress_x = pairs[i].a_coeffs;
    out[i].dress_z = gf2::make_bitvec(m);
    for (std::size_t j = 0; j < kt; ++j)
      if (j != i) gf2::xor_into(out[i].dress_z, pairs[j].b_coeffs);
    out[i].dress_y = out[i].dress_x;
    gf2::xor_into(out[i].dress_y, out[i].dress_z);
    out[i].X = multiply(bare[i].X, gauge.product_of(out[i].dress_x));
    out[i].Y = multiply(bare[i].Y, gauge.product_of(out[i].dress_y));
    out[i].Z = multiply(bare[i].Z, gauge.product_of(out[i].dress_z));
  }

  // The algebra the dressing must deliver, checked outright.
  auto letter = [&](const LogicalTriple& t, int a) -> const PauliWord& {
    return a == 0 ? t.X : (a == 1 ? t.Y : t.Z);
  };
  for (std::size_t i = 0; i < kt; ++i)
    for (std::size_t j = 0; j < kt; ++j)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          if (i == j && a == b) continue;
          const uint8_t want = (i == j) ? 1 : 0;
          if (symplectic_product(letter(out[i], a), letter(out[j], b)) != want)
            throw std::runtime_error(
                "dress_logicals: commutation constraint violated at triples " +
                std::to_string(i) + "," + std::to_string(j));
        }
  for (const auto& t : out)
    if (gauge.in_span(t.X) || gauge.in_span(t.Y) || gauge.in_span(t.Z))
      throw std::runtime_error("dress_logicals: dressed operator fell into the gauge span");
  return out;
}

inline std::vector<ClosedFormCheck> closed_form_checks(std::size_t L,
                                                       const CodeParams& p) {
  const long Ll = static_cast<long>(L);
  const long parity = (Ll + 1) % 2;
  std::vector<ClosedFormCheck> out;
  auto add = [&](std::string name, long claimed, long computed) {
    out.push_back({std::move(name), claimed, computed, claimed == computed});
  };
  add("s = 3L - 2 - ((L+1) mod 2)", 3 * Ll - 2 - parity, static_cast<long>(p.s));
  add("rank(G) = 2(L-1)^2 + 1", 2 * (Ll - 1) * (Ll - 1) + 1,
      static_cast<long>(p.gauge_rank));
  add("g = (rank(G) - s) / 2 with closed forms",
      (2 * (Ll - 1) * (Ll - 1) + 1 - (3 * Ll - 2 - parity)) / 2,
      static_cast<long>(p.g));
  add("k = floor(L/2)", Ll / 2, p.k);
  add("k_stab = L^2 - 3L + 2 + ((L+1) mod 2)", Ll * Ll - 3 * Ll + 2 + parity,
      p.k_stab);
  return out;
}

inline CodeParams code_parameters(const Lattice& lat, const OperatorSet& gauge,
                                  const OperatorSet& stab) {
  CodeParams p;
  p.n = lat.num_sites();
  p.s = stab.rank();
  p.gauge_rank = gauge.rank();
  if ((p.gauge_rank - p.s) % 2 != 0)
    throw std::runtime_error("code_parameters: rank(G) - s is odd");
  p.g = (p.gauge_rank - p.s) / 2;
  p.k = static_cast<long>(p.n) - static_cast<long>(p.g) - static_cast<long>(p.s);
  p.k_stab = static_cast<long>(p.n) - static_cast<long>(p.s);
  return p;
}

inline CodeStructure build_code(std::size_t L) {
  Lattice lat(L);
  CodeStructure code{lat, build_gauge_generators(lat), OperatorSet(), {}, {}, {}, {}};
  code.stab_gens = build_stabiliser_generators(lat, code.gauge_gens);
  code.bare_logicals = build_bare_logicals(lat);
  code.dressed_logicals = dress_logicals(code.bare_logicals, code.gauge_gens);
  code.params = code_parameters(lat, code.gauge_gens, code.stab_gens);
  code.closed_forms = closed_form_checks(L, code.params);
  return code;
}

}  // namespace mxyz
