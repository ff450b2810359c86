#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <vector>

#include "mxyz/analysis.hpp"
#include "mxyz/code.hpp"
#include "mxyz/rng.hpp"
#include "mxyz/tableau.hpp"

namespace mxyz {

/// Depolarizing channel: each site independently gets X, Y, or Z with
/// probability p/3 each.
struct NoiseModel {
  double p = 0.0;
  explicit NoiseModel(double prob) : p(prob) {
    if (!(p >= 0.0 && p <= 1.0))
      throw std::invalid_argument("NoiseModel: p must lie in [0, 1]");
  }
};

/// Error for a given (seed, shot), independent of evaluation order.
inline PauliWord sample_error(const NoiseModel& noise, std::size_t n,
                              uint64_t seed, uint64_t shot) {
  CounterRng rng(seed, shot, /*substream=*/1);
  PauliWord e(n);
  for (std::size_t q = 0; q < n; ++q) {
    const double u = rng.uniform();
    if (u < noise.p / 3.0)
      e.set_letter(q, PauliLetter::X);
    else if (u < 2.0 * noise.p / 3.0)
      e.set_letter(q, PauliLetter::Y);
    else if (u < noise.p)
      e.set_letter(q, PauliLetter::Z);
  }
  return e;
}

/// Per-stabiliser measurement plan: the element's triangle decomposition in
/// multiplication order, grouped into mutually commuting layers, plus the
/// sign bit relating the ordered triangle product to the element itself.
/// Elements whose aggregated outcome fails the empirical repeat-determinism
/// contract are flagged and measured directly instead.
struct GaugeSchedule {
  struct Element {
    std::vector<std::size_t> order;                 // gauge generator indices
    std::vector<std::vector<std::size_t>> layers;   // partition of `order`
    uint8_t sigma = 0;
    bool fallback = false;
  };
  std::vector<Element> elements;
  std::size_t fallback_count() const {
    std::size_t c = 0;
    for (const auto& e : elements) c += e.fallback ? 1 : 0;
    return c;
  }
};

inline GaugeSchedule build_gauge_schedule(const CodeStructure& code) {
  GaugeSchedule sched;
  for (const auto& S : code.stab_gens.members()) {
    auto dec = code.gauge_gens.decompose(S);
    if (!dec)
      throw std::runtime_error(
          "build_gauge_schedule: stabiliser outside the gauge span");
    GaugeSchedule::Element el;
    for (std::size_t i = 0; i < code.gauge_gens.size(); ++i)
      if (gf2::get(*dec, i)) el.order.push_back(i);
    const PauliWord prod = code.gauge_gens.product_of(*dec);
    if (!prod.same_pattern(S))
      throw std::logic_error("build_gauge_schedule: decomposition mismatch");
    // Even residue: the ordered triangle product is +/-S and sigma is fixed
    // algebraically. Odd residue (anti-Hermitian product, possible because
    // the triangles anticommute): no static sign exists, so sigma starts at 0
    // and validate_gauge_schedule calibrates it on a noiseless state before
    // testing the determinism contract.
    const uint8_t d = static_cast<uint8_t>((prod.phase() - S.phase()) & 3);
    el.sigma = (d & 1) ? 0 : (d >> 1);
    for (std::size_t idx : el.order) {
      bool placed = false;
      for (auto& layer : el.layers) {
        bool commutes = true;
        for (std::size_t other : layer)
          if (symplectic_product(code.gauge_gens.member(idx),
                                 code.gauge_gens.member(other))) {
            commutes = false;
            break;
          }
        if (commutes) {
          layer.push_back(idx);
          placed = true;
          break;
        }
      }
      if (!placed) el.layers.push_back({idx});
    }
    sched.elements.push_back(std::move(el));
  }
  return sched;
}

struct SyndromeRecord {
  uint64_t stab_bits = 0;                       // bit i = element i violated
  std::vector<std::pair<std::size_t, bool>> gauge_outcomes;  // (step id, -1?)
};

enum class ExtractionMode { Direct, Gauge };

/// Runs the schedule for one element and returns the sign-corrected
/// aggregated bit; appends raw outcomes to `rec` when given.
inline bool run_schedule_element(Tableau& tab, const CodeStructure& code,
                                 const GaugeSchedule::Element& el,
                                 std::size_t element_index, CounterRng& rng,
                                 SyndromeRecord* rec, std::size_t& step) {
  if (el.fallback) {
    const bool minus =
        tab.measure(code.stab_gens.member(element_index), rng).minus;
    if (rec) rec->gauge_outcomes.emplace_back(step, minus);
    ++step;
    return minus;
  }
  bool bit = el.sigma != 0;
  for (const auto& layer : el.layers)
    for (std::size_t idx : layer) {
      const bool minus = tab.measure(code.gauge_gens.member(idx), rng).minus;
      if (rec) rec->gauge_outcomes.emplace_back(step, minus);
      ++step;
      bit ^= minus;
    }
  return bit;
}

inline SyndromeRecord extract_syndrome(Tableau& tab, const CodeStructure& code,
                                       ExtractionMode mode,
                                       const GaugeSchedule& sched,
                                       CounterRng& rng) {
  if (code.stab_gens.size() > 64)
    throw std::runtime_error("extract_syndrome: stabiliser basis larger than 64");
  SyndromeRecord rec;
  if (mode == ExtractionMode::Direct) {
    for (std::size_t i = 0; i < code.stab_gens.size(); ++i)
      if (tab.measure(code.stab_gens.member(i), rng).minus)
        rec.stab_bits |= uint64_t(1) << i;
    return rec;
  }
  std::size_t step = 0;
  for (std::size_t i = 0; i < sched.elements.size(); ++i)
    if (run_schedule_element(tab, code, sched.elements[i], i, rng, &rec, step))
      rec.stab_bits |= uint64_t(1) << i;
  return rec;
}

/// Empirical contract check: on noiseless prepared states the aggregated bit
/// of every element must vanish, repeat deterministically, and track the
/// algebraic syndrome of an injected single-site error. Violating elements
/// are switched to direct measurement.
inline void validate_gauge_schedule(const CodeStructure& code,
                                    GaugeSchedule& sched, uint64_t seed,
                                    std::size_t trials = 25) {
  const std::size_t n = code.lat.num_sites();
  {
    // Calibration: absorb any leftover sign convention into sigma so that a
    // noiseless state reads all-zero. Non-determinism is caught below.
    CounterRng rng(seed, 0, /*substream=*/5);
    Tableau tab = prepare_code_state(code, rng);
    std::size_t step = 0;
    for (std::size_t i = 0; i < sched.elements.size(); ++i) {
      auto& el = sched.elements[i];
      if (el.fallback) continue;
      if (run_schedule_element(tab, code, el, i, rng, nullptr, step))
        el.sigma ^= 1;
    }
  }
  for (std::size_t trial = 0; trial < trials; ++trial) {
    CounterRng rng(seed, trial, /*substream=*/2);
    Tableau tab = prepare_code_state(code, rng);
    PauliWord err(n);
    if (trial % 2 == 1) {  // alternate noiseless / single-site error trials
      const std::size_t q = CounterRng(seed, trial, 3).next() % n;
      const int l = 1 + static_cast<int>(CounterRng(seed, trial, 4).next() % 3);
      err.set_letter(q, static_cast<PauliLetter>(l));
      tab.apply_pauli(err);
    }
    std::size_t step = 0;
    for (std::size_t i = 0; i < sched.elements.size(); ++i) {
      auto& el = sched.elements[i];
      if (el.fallback) continue;
      const bool pass1 =
          run_schedule_element(tab, code, el, i, rng, nullptr, step);
      const bool pass2 =
          run_schedule_element(tab, code, el, i, rng, nullptr, step);
      const bool want =
          symplectic_product(err, code.stab_gens.member(i)) != 0;
      if (pass1 != want || pass2 != want) el.fallback = true;
    }
  }
}

/// Lookup decoder over all errors of weight <= t = floor((L-1)/2),
/// first-writer-wins so each stored correction has minimum weight.
struct DecoderTable {
  std::size_t t = 0;
  std::unordered_map<uint64_t, PauliWord> table;  // nonzero syndromes only
};

inline DecoderTable build_decoder(const CodeStructure& code) {
  DecoderTable dec;
  dec.t = (code.lat.size() - 1) / 2;
  for (std::size_t w = 1; w <= dec.t; ++w)
    for_each_weight_w(code, w, [&](const PauliWord& e, uint64_t syn) {
      if (syn != 0) dec.table.emplace(syn, e);
      return true;
    });
  for (const auto& [syn, corr] : dec.table)
    if (syndrome_bits(corr, code) != syn)
      throw std::logic_error("build_decoder: correction does not match key");
  return dec;
}

struct WilsonInterval {
  double low = 0.0, high = 0.0;
};

inline WilsonInterval wilson95(uint64_t failures, uint64_t shots) {
  if (shots == 0) return {};
  const double z = 1.959963984540054;
  const double nn = static_cast<double>(shots);
  const double ph = static_cast<double>(failures) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double centre = (ph + z2 / (2.0 * nn)) / denom;
  const double half =
      (z / denom) * std::sqrt(ph * (1.0 - ph) / nn + z2 / (4.0 * nn * nn));
  WilsonInterval ci{std::max(0.0, centre - half), std::min(1.0, centre + half)};
  if (failures == 0) ci.low = 0.0;
  if (failures == shots) ci.high = 1.0;
  return ci;
}

struct MonteCarloResult {
  uint64_t shots = 0, failures = 0, unknown_syndromes = 0;
  double rate = 0.0;
  WilsonInterval ci;
};

/// One decoding shot, pure in (seed, shot). The syndrome is the direct-mode
/// value, computed algebraically: tableau extraction reproduces exactly these
/// bits (validated property), and the algebraic route keeps shots cheap.
inline void decode_shot(const CodeStructure& code, const DecoderTable& dec,
                        const std::vector<std::array<uint64_t, 3>>& syn_tab,
                        const NoiseModel& noise, uint64_t seed, uint64_t shot,
                        uint64_t& failures, uint64_t& unknown) {
  const std::size_t n = code.lat.num_sites();
  const PauliWord e = sample_error(noise, n, seed, shot);
  if (e.is_identity_pattern()) return;
  uint64_t syn = 0;
  for (std::size_t q = 0; q < n; ++q) {
    const auto l = static_cast<int>(e.letter(q));
    if (l != 0) syn ^= syn_tab[q][static_cast<std::size_t>(l - 1)];
  }
  PauliWord residual = e;
  if (syn != 0) {
    auto it = dec.table.find(syn);
    if (it == dec.table.end())
      ++unknown;  // identity correction; residual stays detectable
    else
      residual = multiply(e, it->second);
  }
  if (residual.is_identity_pattern()) return;
  if (syndrome_bits(residual, code) != 0) return;  // detectable, not logical
  if (!code.gauge_gens.in_span(residual)) ++failures;
}

inline MonteCarloResult monte_carlo(const CodeStructure& code,
                                    const DecoderTable& dec,
                                    const NoiseModel& noise, uint64_t shots,
                                    uint64_t seed, unsigned threads = 1) {
  MonteCarloResult out;
  out.shots = shots;
  const auto syn_tab = site_syndrome_table(code);
  // Materialise the lazy gauge-span basis before sharing across threads.
  (void)code.gauge_gens.rank();
  if (threads == 0) threads = 1;
  if (threads == 1 || shots < 2 * threads) {
    for (uint64_t s = 0; s < shots; ++s)
      decode_shot(code, dec, syn_tab, noise, seed, s, out.failures,
                  out.unknown_syndromes);
  } else {
    std::vector<uint64_t> fail(threads, 0), unk(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        const uint64_t lo = shots * t / threads;
        const uint64_t hi = shots * (t + 1) / threads;
        for (uint64_t s = lo; s < hi; ++s)
          decode_shot(code, dec, syn_tab, noise, seed, s, fail[t], unk[t]);
      });
    for (auto& th : pool) th.join();
    for (unsigned t = 0; t < threads; ++t) {
      out.failures += fail[t];
      out.unknown_syndromes += unk[t];
    }
  }
  out.rate = shots ? static_cast<double>(out.failures) /
                         static_cast<double>(shots)
                   : 0.0;
  out.ci = wilson95(out.failures, shots);
  return out;
}

/// Exact logical-failure probability of the decode pipeline under
/// depolarizing noise, by summing over every Pauli pattern. Only feasible at
/// small n (4^n terms); used as an independent oracle for Monte-Carlo runs.
inline double exact_failure_probability(const CodeStructure& code,
                                        const DecoderTable& dec, double p) {
  const std::size_t n = code.lat.num_sites();
  if (n > 12)
    throw std::invalid_argument("exact_failure_probability: n too large");
  const auto syn_tab = site_syndrome_table(code);
  std::vector<int> letters(n, 0);
  PauliWord e(n);
  double total = 0.0;
  for (;;) {
    std::size_t j = 0;
    while (j < n && letters[j] == 3) {
      letters[j] = 0;
      e.set_letter(j, PauliLetter::I);
      ++j;
    }
    if (j == n) break;
    ++letters[j];
    e.set_letter(j, static_cast<PauliLetter>(letters[j]));

    double prob = 1.0;
    uint64_t syn = 0;
    std::size_t weight = 0;
    for (std::size_t q = 0; q < n; ++q)
      if (letters[q] != 0) {
        prob *= p / 3.0;
        ++weight;
        syn ^= syn_tab[q][static_cast<std::size_t>(letters[q] - 1)];
      } else {
        prob *= 1.0 - p;
      }
    if (weight == 0) continue;
    PauliWord residual = e;
    if (syn != 0) {
      auto it = dec.table.find(syn);
      if (it != dec.table.end()) residual = multiply(e, it->second);
    }
    if (residual.is_identity_pattern()) continue;
    if (syndrome_bits(residual, code) != 0) continue;
    if (!code.gauge_gens.in_span(residual)) total += prob;
  }
  return total;
}

}  // namespace mxyz
