#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "mxyz/code.hpp"
#include "mxyz/rng.hpp"

namespace mxyz {

enum class ErrorClass { Detectable, Gauge, Logical };

inline const char* to_string(ErrorClass c) {
  switch (c) {
    case ErrorClass::Detectable: return "DETECTABLE";
    case ErrorClass::Gauge: return "GAUGE";
    case ErrorClass::Logical: return "LOGICAL";
  }
  return "?";
}

struct Classification {
  ErrorClass cls;
  /// Index of the first stabiliser basis element the error anticommutes with.
  std::optional<std::size_t> witness_stabiliser;
  /// Gauge-generator coefficients reproducing the error pattern.
  std::optional<gf2::BitVec> gauge_decomposition;
};

inline Classification classify(const PauliWord& e, const CodeStructure& code) {
  if (e.is_identity_pattern())
    throw std::invalid_argument("classify: identity pattern has no class");
  for (std::size_t i = 0; i < code.stab_gens.size(); ++i)
    if (symplectic_product(e, code.stab_gens.member(i)))
      return {ErrorClass::Detectable, i, std::nullopt};
  if (auto dec = code.gauge_gens.decompose(e))
    return {ErrorClass::Gauge, std::nullopt, std::move(dec)};
  return {ErrorClass::Logical, std::nullopt, std::nullopt};
}

/// Syndrome of e against the stabiliser basis, packed into a single word.
/// The basis rank is bounded by 64 here, which covers every lattice size this
/// toolkit enumerates errors on.
inline uint64_t syndrome_bits(const PauliWord& e, const CodeStructure& code) {
  if (code.stab_gens.size() > 64)
    throw std::runtime_error("syndrome_bits: stabiliser basis larger than 64");
  uint64_t out = 0;
  for (std::size_t i = 0; i < code.stab_gens.size(); ++i)
    if (symplectic_product(e, code.stab_gens.member(i))) out |= uint64_t(1) << i;
  return out;
}

/// Per-(site, letter) syndromes, indexed [site][letter-1] for X=1,Z=2,Y=3.
inline std::vector<std::array<uint64_t, 3>> site_syndrome_table(
    const CodeStructure& code) {
  const std::size_t n = code.lat.num_sites();
  std::vector<std::array<uint64_t, 3>> tab(n);
  for (std::size_t q = 0; q < n; ++q)
    for (int l = 1; l <= 3; ++l) {
      PauliWord p(n);
      p.set_letter(q, static_cast<PauliLetter>(l));
      tab[q][static_cast<std::size_t>(l - 1)] = syndrome_bits(p, code);
    }
  return tab;
}

/// Visits every non-identity Pauli pattern of weight exactly w, in a fixed
/// deterministic order (lexicographic site combinations, then letters X,Z,Y
/// odometer). The callback receives the word, its syndrome, and may return
/// false to stop early.
template <typename F>
inline void for_each_weight_w(const CodeStructure& code, std::size_t w, F&& f) {
  const std::size_t n = code.lat.num_sites();
  if (w == 0 || w > n) return;
  const auto tab = site_syndrome_table(code);
  std::vector<std::size_t> sites(w);
  for (std::size_t i = 0; i < w; ++i) sites[i] = i;
  std::vector<int> letters(w, 1);
  PauliWord word(n);
  for (;;) {
    // letters odometer over the current site combination
    std::fill(letters.begin(), letters.end(), 1);
    for (;;) {
      uint64_t syn = 0;
      for (std::size_t i = 0; i < w; ++i)
        syn ^= tab[sites[i]][static_cast<std::size_t>(letters[i] - 1)];
      for (std::size_t i = 0; i < w; ++i)
        word.set_letter(sites[i], static_cast<PauliLetter>(letters[i]));
      const bool keep_going = f(word, syn);
      for (std::size_t i = 0; i < w; ++i)
        word.set_letter(sites[i], PauliLetter::I);
      if (!keep_going) return;
      std::size_t j = 0;
      while (j < w && letters[j] == 3) letters[j++] = 1;
      if (j == w) break;
      ++letters[j];
    }
    // next site combination
    std::size_t j = w;
    while (j > 0 && sites[j - 1] == n - w + (j - 1)) --j;
    if (j == 0) return;
    ++sites[j - 1];
    for (std::size_t i = j; i < w; ++i) sites[i] = sites[i - 1] + 1;
  }
}

struct CensusRow {
  std::size_t weight = 0;
  std::uint64_t detectable = 0, gauge = 0, logical = 0;
};

struct ErrorCensus {
  std::vector<CensusRow> rows;
  std::vector<PauliWord> gauge_examples, logical_examples;  // capped samples
  /// Weight-3 gauge operators whose support is a dilated triangle pattern.
  std::uint64_t gauge_w3 = 0, gauge_w3_scaled_triangle = 0;
  /// Weight-4 gauge operators expressible as a product of exactly two
  /// triangles, split by the orientations of the witnessing pair.
  std::uint64_t gauge_w4 = 0, gauge_w4_two_triangle = 0;
  std::uint64_t w4_mixed_orientation_pairs = 0, w4_same_orientation_pairs = 0;
};

namespace detail {

/// Support sets of every dilated triangle, for congruence tests.
inline std::set<std::set<std::size_t>> scaled_triangle_supports(
    const Lattice& lat) {
  std::set<std::set<std::size_t>> out;
  const long L = static_cast<long>(lat.size());
  for (long r = 0; r < L; ++r)
    for (long c = 0; c < L; ++c)
      for (long m = 1; m < L; ++m)
        for (Orientation o : {Orientation::Up, Orientation::Down}) {
          std::set<std::size_t> sup;
          for (const auto& [site, letter] :
               lat.scaled_triangle_support({r, c}, m, o))
            sup.insert(site);
          if (sup.size() == 3) out.insert(std::move(sup));
        }
  return out;
}

inline std::set<std::size_t> support_of(const PauliWord& p) {
  std::set<std::size_t> s;
  for (std::size_t q = 0; q < p.num_qubits(); ++q)
    if (p.letter(q) != PauliLetter::I) s.insert(q);
  return s;
}

struct PatternKey {
  std::vector<uint64_t> x, z;
  bool operator<(const PatternKey& o) const {
    return std::tie(x, z) < std::tie(o.x, o.z);
  }
};

inline PatternKey key_of(const PauliWord& p) { return {p.xwords(), p.zwords()}; }

/// Weight-4 products of two distinct triangles, keyed by pattern; the value
/// records whether any witnessing pair mixes orientations / keeps them equal.
struct TwoTriangleInfo {
  bool mixed = false, same = false;
};

inline std::map<PatternKey, TwoTriangleInfo> two_triangle_products(
    const CodeStructure& code) {
  std::map<PatternKey, TwoTriangleInfo> out;
  const auto& g = code.gauge_gens;
  const std::size_t half = g.size() / 2;  // ups first, then downs
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      const PauliWord prod = multiply(g.member(i), g.member(j));
      if (prod.weight() != 4) continue;
      auto& info = out[key_of(prod)];
      if ((i < half) == (j < half))
        info.same = true;
      else
        info.mixed = true;
    }
  return out;
}

}  // namespace detail

inline ErrorCensus classify_exhaustive(const CodeStructure& code,
                                       std::size_t max_weight,
                                       std::size_t example_cap = 4) {
  ErrorCensus census;
  const auto scaled = detail::scaled_triangle_supports(code.lat);
  const auto two_tri = detail::two_triangle_products(code);
  for (std::size_t w = 1; w <= max_weight; ++w) {
    CensusRow row;
    row.weight = w;
    for_each_weight_w(code, w, [&](const PauliWord& e, uint64_t syn) {
      if (syn != 0) {
        ++row.detectable;
        return true;
      }
      if (code.gauge_gens.in_span(e)) {
        ++row.gauge;
        if (census.gauge_examples.size() < example_cap)
          census.gauge_examples.push_back(e);
        if (w == 3) {
          ++census.gauge_w3;
          if (scaled.count(detail::support_of(e)))
            ++census.gauge_w3_scaled_triangle;
        } else if (w == 4) {
          ++census.gauge_w4;
          auto it = two_tri.find(detail::key_of(e));
          if (it != two_tri.end()) {
            ++census.gauge_w4_two_triangle;
            if (it->second.mixed) ++census.w4_mixed_orientation_pairs;
            if (it->second.same) ++census.w4_same_orientation_pairs;
          }
        }
      } else {
        ++row.logical;
        if (census.logical_examples.size() < example_cap)
          census.logical_examples.push_back(e);
      }
      return true;
    });
    census.rows.push_back(row);
  }
  return census;
}

struct DistanceCertificate {
  /// Every pattern of weight < lower_bound is non-logical.
  std::size_t lower_bound = 1;
  std::optional<std::size_t> distance;
  std::optional<PauliWord> witness;  // first logical in enumeration order
};

inline DistanceCertificate certify_distance(const CodeStructure& code,
                                            std::size_t max_weight) {
  DistanceCertificate cert;
  for (std::size_t w = 1; w <= max_weight; ++w) {
    bool found = false;
    for_each_weight_w(code, w, [&](const PauliWord& e, uint64_t syn) {
      if (syn != 0) return true;
      if (code.gauge_gens.in_span(e)) return true;
      cert.distance = w;
      cert.witness = e;
      found = true;
      return false;
    });
    if (found) {
      cert.lower_bound = w;
      return cert;
    }
  }
  cert.lower_bound = max_weight + 1;
  return cert;
}

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationReport {
  std::size_t L = 0;
  CodeParams params;
  std::vector<CheckResult> checks;          // construction invariants
  std::vector<ClosedFormCheck> closed_forms;  // literature counting formulas
  bool all_checks_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  bool all_closed_forms_match() const {
    for (const auto& c : closed_forms)
      if (!c.match) return false;
    return true;
  }
};

namespace detail {

inline std::size_t span_intersection_dim(const OperatorSet& a,
                                         const OperatorSet& b) {
  const std::size_t cols = 2 * a.num_qubits();
  gf2::RowBasis joint(cols, 0);
  for (const auto& p : a.members()) joint.insert(symplectic_row(p), {});
  const std::size_t ra = joint.rank();
  gf2::RowBasis rb(cols, 0);
  for (const auto& p : b.members()) {
    rb.insert(symplectic_row(p), {});
    joint.insert(symplectic_row(p), {});
  }
  return ra + rb.rank() - joint.rank();
}

}  // namespace detail

inline VerificationReport verify_all(const CodeStructure& code,
                                     uint64_t seed = 0) {
  VerificationReport rep;
  const Lattice& lat = code.lat;
  const long L = static_cast<long>(lat.size());
  const std::size_t n = lat.num_sites();
  rep.L = lat.size();
  rep.params = code.params;
  rep.closed_forms = code.closed_forms;

  auto add = [&](std::string name, bool pass, std::string detail = "") {
    rep.checks.push_back({std::move(name), pass, std::move(detail)});
  };

  // Triangle coverage: 2L^2 generators, each site on 3 ups and 3 downs.
  {
    bool ok = code.gauge_gens.size() == 2 * lat.num_sites();
    std::vector<int> up_cov(n, 0), down_cov(n, 0);
    const std::size_t half = code.gauge_gens.size() / 2;
    for (std::size_t i = 0; i < code.gauge_gens.size(); ++i) {
      const PauliWord& t = code.gauge_gens.member(i);
      ok = ok && t.weight() == 3;
      for (std::size_t q = 0; q < n; ++q)
        if (t.letter(q) != PauliLetter::I) ++(i < half ? up_cov : down_cov)[q];
    }
    for (std::size_t q = 0; q < n; ++q)
      ok = ok && up_cov[q] == 3 && down_cov[q] == 3;
    add("triangle_cover", ok, "2L^2 weight-3 generators, 3 up + 3 down per site");
  }

  // Loop geometry: weight L; same-kind loops disjoint, mixed kinds meet once.
  {
    bool ok = true;
    std::string why;
    for (LoopKind a : {LoopKind::X, LoopKind::Y, LoopKind::Z})
      for (long i = 0; i < L && ok; ++i) {
        const auto sa = detail::support_of(lat.loop(a, i));
        if (sa.size() != static_cast<std::size_t>(L)) {
          ok = false;
          why = "loop weight != L";
          break;
        }
        for (LoopKind b : {LoopKind::X, LoopKind::Y, LoopKind::Z})
          for (long j = 0; j < L && ok; ++j) {
            if (a == b && i == j) continue;
            const auto sb = detail::support_of(lat.loop(b, j));
            std::size_t inter = 0;
            for (std::size_t q : sa) inter += sb.count(q);
            const std::size_t want = (a == b) ? 0 : 1;
            if (inter != want) {
              ok = false;
              why = "loop intersection size off";
            }
          }
      }
    add("loop_geometry", ok, why);
  }

  // Every single loop commutes with every triangle.
  {
    bool ok = true;
    std::string why;
    for (LoopKind k : {LoopKind::X, LoopKind::Y, LoopKind::Z})
      for (long i = 0; i < L; ++i) {
        const PauliWord lp = lat.loop(k, i);
        for (const auto& t : code.gauge_gens.members())
          if (symplectic_product(lp, t)) {
            ok = false;
            why = "loop " + std::string(1, "XYZ"[static_cast<int>(k)]) +
                  std::to_string(i) + " anticommutes with " + t.str();
          }
      }
    add("loops_commute_with_triangles", ok, why);
  }

  // Frustration: same-orientation triangles sharing exactly one corner
  // anticommute; site-disjoint triangles always commute.
  {
    bool ok = true;
    std::string why;
    const std::size_t half = code.gauge_gens.size() / 2;
    for (std::size_t i = 0; i < code.gauge_gens.size() && ok; ++i)
      for (std::size_t j = i + 1; j < code.gauge_gens.size(); ++j) {
        const auto si = detail::support_of(code.gauge_gens.member(i));
        const auto sj = detail::support_of(code.gauge_gens.member(j));
        std::size_t inter = 0;
        for (std::size_t q : si) inter += sj.count(q);
        const uint8_t sp = symplectic_product(code.gauge_gens.member(i),
                                              code.gauge_gens.member(j));
        if (inter == 0 && sp != 0) {
          ok = false;
          why = "disjoint triangles anticommute";
          break;
        }
        if (inter == 1 && ((i < half) == (j < half)) && sp != 1) {
          ok = false;
          why = "corner-sharing same-orientation triangles commute";
          break;
        }
      }
    add("triangle_frustration", ok, why);
  }

  // Adjacent-line double loops commute with every loop and every triangle.
  {
    bool ok = true;
    for (LoopKind k : {LoopKind::X, LoopKind::Y, LoopKind::Z})
      for (long i = 0; i < L; ++i) {
        const PauliWord dl =
            multiply(lat.loop(k, i), lat.loop(k, (i + 1) % L));
        for (const auto& t : code.gauge_gens.members())
          ok = ok && symplectic_product(dl, t) == 0;
        for (LoopKind k2 : {LoopKind::X, LoopKind::Y, LoopKind::Z})
          for (long j = 0; j < L; ++j)
            ok = ok && symplectic_product(dl, lat.loop(k2, j)) == 0;
      }
    add("double_loops_commute", ok);
  }

  // Span structure: double loops inside the gauge span, single loops outside.
  {
    bool ok = true;
    for (LoopKind k : {LoopKind::X, LoopKind::Y, LoopKind::Z})
      for (long i = 0; i < L; ++i) {
        ok = ok && code.gauge_gens.in_span(
                       multiply(lat.loop(k, i), lat.loop(k, (i + 1) % L)));
        ok = ok && !code.gauge_gens.in_span(lat.loop(k, i));
      }
    add("loop_span_structure", ok,
        "double loops are triangle products, single loops are not");
  }

  // Stabiliser basis: commutes with all triangles, sits in the gauge span,
  // and contains every consecutive double loop.
  {
    bool ok = true;
    for (const auto& s : code.stab_gens.members()) {
      for (const auto& t : code.gauge_gens.members())
        ok = ok && symplectic_product(s, t) == 0;
      ok = ok && code.gauge_gens.in_span(s);
    }
    OperatorSet stab_span = code.stab_gens;
    for (LoopKind k : {LoopKind::X, LoopKind::Y, LoopKind::Z})
      for (long i = 0; i + 1 < L; ++i)
        ok = ok && stab_span.in_span(double_loop(lat, k, i));
    add("stabiliser_basis", ok);
  }

  // Independent route to s: dim( span(G) meet span(centraliser of G) ).
  {
    const std::size_t dim =
        detail::span_intersection_dim(code.gauge_gens,
                                      code.gauge_gens.centraliser_in_pauli_group());
    add("centre_dimension_cross_check", dim == code.params.s,
        "Zassenhaus-style intersection gives " + std::to_string(dim));
  }

  // Centraliser dimension identity: dim Z(G) in P_n = 2n - rank(G).
  {
    const std::size_t zr = code.gauge_gens.centraliser_in_pauli_group().rank();
    add("centraliser_dimension", zr == 2 * n - code.params.gauge_rank,
        "rank " + std::to_string(zr));
  }

  // Decompose round trip on random gauge products.
  {
    bool ok = true;
    CounterRng rng(seed, 0xD3C0);
    for (int trial = 0; trial < 100 && ok; ++trial) {
      gf2::BitVec coeffs = gf2::make_bitvec(code.gauge_gens.size());
      for (std::size_t i = 0; i < code.gauge_gens.size(); ++i)
        if (rng.bit()) gf2::set(coeffs, i);
      const PauliWord target = code.gauge_gens.product_of(coeffs);
      auto dec = code.gauge_gens.decompose(target);
      ok = dec.has_value() &&
           code.gauge_gens.product_of(*dec).same_pattern(target);
    }
    add("decompose_round_trip", ok, "100 random gauge products");
  }

  // The all-sites single-letter words sit in the gauge span exactly when L is
  // even, and gauge-span membership agrees for all three letters.
  {
    bool ok = true;
    for (int l = 1; l <= 3; ++l) {
      PauliWord allw(n);
      for (std::size_t q = 0; q < n; ++q)
        allw.set_letter(q, static_cast<PauliLetter>(l));
      ok = ok && code.gauge_gens.in_span(allw) == (L % 2 == 0);
    }
    add("uniform_word_membership", ok,
        L % 2 == 0 ? "all-X/Y/Z inside the gauge span"
                   : "all-X/Y/Z outside the gauge span");
  }

  // Bare triples: single-qubit Pauli algebra on each line, and every bare
  // operator commutes with every triangle.
  {
    bool ok = true;
    std::string why;
    for (const auto& t : code.bare_logicals) {
      ok = ok && symplectic_product(t.X, t.Y) == 1 &&
           symplectic_product(t.Y, t.Z) == 1 && symplectic_product(t.X, t.Z) == 1;
      PauliWord xy = multiply(t.X, t.Y);
      PauliWord iz = t.Z;
      iz.set_phase(static_cast<uint8_t>(iz.phase() + 1));
      if (!(xy == iz)) {
        ok = false;
        why = "X*Y != iZ on line " + std::to_string(t.line_index) + ": got " +
              xy.str() + " want " + iz.str();
      }
      for (const auto& tri : code.gauge_gens.members())
        ok = ok && symplectic_product(t.X, tri) == 0 &&
             symplectic_product(t.Y, tri) == 0 &&
             symplectic_product(t.Z, tri) == 0;
      ok = ok && !code.gauge_gens.in_span(t.X) && !code.gauge_gens.in_span(t.Z);
    }
    add("bare_logical_algebra", ok, why);
  }

  // Dressed triples: within-triple anticommutation, cross-triple commutation,
  // commutation with all stabilisers, and classification as LOGICAL.
  {
    bool ok = true;
    std::string why;
    const auto& dl = code.dressed_logicals;
    auto letter = [&](std::size_t i, int a) -> const PauliWord& {
      return a == 0 ? dl[i].X : (a == 1 ? dl[i].Y : dl[i].Z);
    };
    for (std::size_t i = 0; i < dl.size() && ok; ++i)
      for (std::size_t j = 0; j < dl.size() && ok; ++j)
        for (int a = 0; a < 3 && ok; ++a)
          for (int b = 0; b < 3; ++b) {
            if (i == j && a == b) continue;
            const uint8_t want = (i == j) ? 1 : 0;
            if (symplectic_product(letter(i, a), letter(j, b)) != want) {
              ok = false;
              why = "pairing (" + std::to_string(i) + "," + std::to_string(j) +
                    ") wrong";
              break;
            }
          }
    for (const auto& t : dl)
      for (const auto& s : code.stab_gens.members())
        ok = ok && symplectic_product(t.X, s) == 0 &&
             symplectic_product(t.Y, s) == 0 && symplectic_product(t.Z, s) == 0;
    for (const auto& t : dl)
      ok = ok && classify(t.X, code).cls == ErrorClass::Logical &&
           classify(t.Y, code).cls == ErrorClass::Logical &&
           classify(t.Z, code).cls == ErrorClass::Logical;
    add("dressed_logical_algebra", ok, why);
  }

  return rep;
}

}  // namespace mxyz
