// Acceptance suite: prints one PASS/FAIL line per criterion and exits with
// the number of failed criteria. Each criterion is checked against
// independently computed ground truth; discrepancies between the computed
// structure and published closed-form counts are reported with witnesses
// instead of being patched over.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mxyz/analysis.hpp"
#include "mxyz/code.hpp"
#include "mxyz/report.hpp"
#include "mxyz/simulator.hpp"
#include "mxyz/tableau.hpp"

using namespace mxyz;

namespace {

int g_failures = 0;

void report(int num, bool pass, const std::string& title,
            const std::string& detail) {
  std::printf("criterion %d: %s — %s%s%s\n", num, pass ? "PASS" : "FAIL",
              title.c_str(), detail.empty() ? "" : ": ", detail.c_str());
  if (!pass) ++g_failures;
}

// ---------------------------------------------------------------- 1
void criterion_parameters() {
  std::ostringstream detail;
  bool pass = true;
  for (std::size_t L = 3; L <= 6; ++L) {
    const CodeStructure code = build_code(L);
    const long k_claim = static_cast<long>(L) / 2;
    if (code.params.k != k_claim) {
      pass = false;
      detail << "[L=" << L << " computed k=" << code.params.k << " != "
             << k_claim << "; rank(G)=" << code.params.gauge_rank
             << " s=" << code.params.s << " g=" << code.params.g << "] ";
    }
    for (const auto& cf : code.closed_forms)
      if (!cf.match)
        detail << "[L=" << L << " \"" << cf.name << "\" claimed="
               << cf.claimed << " computed=" << cf.computed << "] ";
  }
  report(1, pass, "parameter certification (binding check k = floor(L/2))",
         detail.str());
}

// ---------------------------------------------------------------- 2
void criterion_commutation() {
  bool pass = true;
  std::string detail;
  const CodeStructure code = build_code(6);
  const Lattice& lat = code.lat;
  const long L = 6;
  std::vector<PauliWord> loops;
  std::vector<int> kinds;
  for (int k = 0; k < 3; ++k)
    for (long i = 0; i < L; ++i) {
      loops.push_back(lat.loop(static_cast<LoopKind>(k), i));
      kinds.push_back(k);
    }
  // single loops commute with all triangles; double loops commute with
  // everything (Eq. 2a/2b exhaustively)
  for (std::size_t a = 0; a < loops.size() && pass; ++a) {
    for (const auto& t : code.gauge_gens.members())
      if (symplectic_product(loops[a], t)) {
        pass = false;
        detail = "single loop anticommutes with a triangle";
      }
  }
  for (int k = 0; k < 3 && pass; ++k)
    for (long i = 0; i < L; ++i) {
      const PauliWord dl = multiply(lat.loop(static_cast<LoopKind>(k), i),
                                    lat.loop(static_cast<LoopKind>(k), i + 1));
      for (const auto& t : code.gauge_gens.members())
        if (symplectic_product(dl, t)) pass = false;
      for (const auto& lp : loops)
        if (symplectic_product(dl, lp)) pass = false;
      if (!pass) detail = "double-loop commutation violated";
    }
  // different-kind single loops anticommute
  for (std::size_t a = 0; a < loops.size() && pass; ++a)
    for (std::size_t b = a + 1; b < loops.size(); ++b)
      if (kinds[a] != kinds[b] && symplectic_product(loops[a], loops[b]) != 1) {
        pass = false;
        detail = "different-kind loops fail to anticommute";
      }
  // same-orientation corner-sharing triangles anticommute
  const std::size_t half = code.gauge_gens.size() / 2;
  auto support = [&](const PauliWord& p) {
    std::vector<std::size_t> s;
    for (std::size_t q = 0; q < p.num_qubits(); ++q)
      if (p.letter(q) != PauliLetter::I) s.push_back(q);
    return s;
  };
  for (std::size_t i = 0; i < code.gauge_gens.size() && pass; ++i)
    for (std::size_t j = i + 1; j < code.gauge_gens.size(); ++j) {
      if ((i < half) != (j < half)) continue;
      const auto si = support(code.gauge_gens.member(i));
      const auto sj = support(code.gauge_gens.member(j));
      int shared = 0;
      for (std::size_t q : si)
        for (std::size_t r : sj)
          if (q == r) ++shared;
      if (shared == 1 && symplectic_product(code.gauge_gens.member(i),
                                            code.gauge_gens.member(j)) != 1) {
        pass = false;
        detail = "corner-sharing same-orientation triangles commute";
      }
    }
  // up/down Gram block: every row sum even
  for (std::size_t i = 0; i < half && pass; ++i) {
    int row = 0;
    for (std::size_t j = half; j < code.gauge_gens.size(); ++j)
      row += symplectic_product(code.gauge_gens.member(i),
                                code.gauge_gens.member(j));
    if (row % 2 != 0) {
      pass = false;
      detail = "odd up/down Gram row sum";
    }
  }
  report(2, pass, "commutation suite at L = 6", detail);
}

// ---------------------------------------------------------------- 3
void criterion_detection() {
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t L = 3; L <= 6; ++L) {
    const CodeStructure code = build_code(L);
    const ErrorCensus c = classify_exhaustive(code, 2);
    if (c.rows[0].gauge + c.rows[0].logical + c.rows[1].gauge +
            c.rows[1].logical !=
        0) {
      pass = false;
      detail << "[L=" << L << ": weight <= 2 not all detectable] ";
    }
  }
  for (std::size_t L = 4; L <= 5; ++L) {
    const CodeStructure code = build_code(L);
    const ErrorCensus c = classify_exhaustive(code, 4);
    if (c.rows[2].logical != 0 || c.gauge_w3_scaled_triangle != c.gauge_w3) {
      pass = false;
      detail << "[L=" << L << ": weight-3 census off] ";
    }
    if (c.rows[3].logical != 0) {
      // At L=4 this clause is unsatisfiable: the certified distance is 4
      // (criterion 4), so minimal logical operators necessarily appear among
      // the weight-4 undetectable errors. Reported as stated, not patched.
      pass = false;
      detail << "[L=" << L << ": " << c.rows[3].logical
             << " undetectable weight-4 errors are LOGICAL (unavoidable: the "
                "certified distance is "
             << L << ", so weight-" << L
             << " logical representatives must exist)] ";
    }
    if (c.gauge_w4_two_triangle == 0 || c.w4_mixed_orientation_pairs == 0) {
      pass = false;
      detail << "[L=" << L << ": missing two-triangle witnesses] ";
    }
    detail << "[L=" << L << ": w3 gauge " << c.gauge_w3 << "/"
           << c.gauge_w3_scaled_triangle << " triangle-shaped; w4 gauge "
           << c.gauge_w4 << ", " << c.gauge_w4_two_triangle
           << " with two-triangle witnesses] ";
  }
  report(3, pass, "exhaustive error detection census", detail.str());
}

// ---------------------------------------------------------------- 4
void criterion_distance() {
  bool pass = true;
  std::ostringstream detail;
  for (std::size_t L = 3; L <= 5; ++L) {
    const CodeStructure code = build_code(L);
    const auto cert = certify_distance(code, L);
    const bool ok = cert.distance && *cert.distance == L;
    if (!ok) {
      pass = false;
      detail << "[L=" << L << ": certified "
             << (cert.distance ? std::to_string(*cert.distance)
                               : "lower bound " +
                                     std::to_string(cert.lower_bound))
             << "] ";
    }
    // an explicit weight-L witness: a single loop is logical
    if (classify(code.lat.loop(LoopKind::Z, 0), code).cls !=
        ErrorClass::Logical) {
      pass = false;
      detail << "[L=" << L << ": loop not logical] ";
    }
  }
  report(4, pass, "distance d = L certified for L = 3, 4, 5", detail.str());
}

// ---------------------------------------------------------------- 5
void criterion_logical_algebra() {
  bool pass = true;
  std::string detail;
  for (std::size_t L : {std::size_t{5}, std::size_t{7}}) {
    try {
      const CodeStructure code = build_code(L);  // ctor re-verifies algebra
      const auto& dl = code.dressed_logicals;
      auto op = [&](std::size_t i, int a) -> const PauliWord& {
        return a == 0 ? dl[i].X : (a == 1 ? dl[i].Y : dl[i].Z);
      };
      for (std::size_t i = 0; i < dl.size(); ++i)
        for (std::size_t j = 0; j < dl.size(); ++j)
          for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
              if (i == j && a == b) continue;
              if (symplectic_product(op(i, a), op(j, b)) !=
                  (i == j ? 1 : 0))
                pass = false;
            }
      for (const auto& t : dl) {
        for (const auto& s : code.stab_gens.members())
          if (symplectic_product(t.X, s) || symplectic_product(t.Y, s) ||
              symplectic_product(t.Z, s))
            pass = false;
        if (code.gauge_gens.in_span(t.X) || code.gauge_gens.in_span(t.Y) ||
            code.gauge_gens.in_span(t.Z))
          pass = false;
      }
      if (!pass) detail = "algebra violated at L=" + std::to_string(L);
    } catch (const std::exception& e) {
      pass = false;
      detail = std::string("construction failed: ") + e.what();
    }
  }
  report(5, pass, "dressed logical algebra at L = 5 and 7", detail);
}

// ---------------------------------------------------------------- 6
void criterion_simulator() {
  bool pass = true;
  std::ostringstream detail;

  // (a) gauge measurements never disturb stabiliser values, L = 3..4
  for (std::size_t L : {std::size_t{3}, std::size_t{4}}) {
    const CodeStructure code = build_code(L);
    for (uint64_t trial = 0; trial < 1000; ++trial) {
      CounterRng rng(1000 + L, trial);
      Tableau tab = prepare_code_state(code, rng);
      for (int m = 0; m < 12; ++m)
        tab.measure(
            code.gauge_gens.member(rng.next() % code.gauge_gens.size()), rng);
      for (const auto& s : code.stab_gens.members()) {
        const auto r = tab.measure(s, rng);
        if (!r.deterministic || r.minus) {
          pass = false;
          detail << "[L=" << L << ": gauge sequence disturbed a stabiliser] ";
          goto part_b;
        }
      }
    }
  }
part_b:
  // (b) direct vs gauge syndrome agreement, 10^3 random errors, L = 3..4
  for (std::size_t L : {std::size_t{3}, std::size_t{4}}) {
    const CodeStructure code = build_code(L);
    GaugeSchedule sched = build_gauge_schedule(code);
    validate_gauge_schedule(code, sched, 7);
    if (sched.fallback_count() > 0)
      detail << "[L=" << L << ": " << sched.fallback_count() << "/"
             << sched.elements.size()
             << " schedule elements use the direct fallback] ";
    CounterRng erng(31337, L);
    const std::size_t n = code.lat.num_sites();
    for (int trial = 0; trial < 1000; ++trial) {
      CounterRng rng(2000 + L, static_cast<uint64_t>(trial));
      Tableau tab = prepare_code_state(code, rng);
      PauliWord e(n);
      while (e.is_identity_pattern())
        for (std::size_t q = 0; q < n; ++q)
          e.set_letter(q, static_cast<PauliLetter>(erng.next() % 4));
      tab.apply_pauli(e);
      const auto gauge =
          extract_syndrome(tab, code, ExtractionMode::Gauge, sched, rng);
      const auto direct =
          extract_syndrome(tab, code, ExtractionMode::Direct, sched, rng);
      if (gauge.stab_bits != direct.stab_bits ||
          direct.stab_bits != syndrome_bits(e, code)) {
        pass = false;
        detail << "[L=" << L << ": mode disagreement] ";
        break;
      }
    }
  }
  // (c) exhaustive decoder soundness at L = 3 and L = 5
  for (std::size_t L : {std::size_t{3}, std::size_t{5}}) {
    const CodeStructure code = build_code(L);
    const DecoderTable dec = build_decoder(code);
    for (std::size_t w = 1; w <= dec.t; ++w) {
      bool ok = true;
      for_each_weight_w(code, w, [&](const PauliWord& e, uint64_t syn) {
        PauliWord residual = e;
        if (syn != 0) {
          auto it = dec.table.find(syn);
          if (it == dec.table.end()) {
            ok = false;
            return false;
          }
          residual = multiply(e, it->second);
        }
        if (!residual.is_identity_pattern() &&
            (syndrome_bits(residual, code) != 0 ||
             !code.gauge_gens.in_span(residual)))
          ok = false;
        return ok;
      });
      if (!ok) {
        pass = false;
        detail << "[L=" << L << ": weight-" << w << " error uncorrected] ";
      }
    }
  }
  // (d) Monte-Carlo vs the exact pipeline failure probability at L = 3
  {
    const CodeStructure code = build_code(3);
    const DecoderTable dec = build_decoder(code);
    const double p = 1e-3;
    const double exact = exact_failure_probability(code, dec, p);
    const uint64_t shots = 1000000;
    const auto mc = monte_carlo(code, dec, NoiseModel(p), shots, 42, 4);
    const double sigma =
        std::sqrt(exact * (1.0 - exact) / static_cast<double>(shots));
    detail << "[L=3 p=1e-3: exact " << exact << ", MC " << mc.rate << "] ";
    if (std::abs(mc.rate - exact) >= 3 * sigma || mc.rate >= p) {
      pass = false;
      detail << "[Monte-Carlo off the analytic value] ";
    }
  }
  // (e) rate(L=5) < rate(L=3) at p = 5e-3
  {
    const double p = 5e-3;
    const CodeStructure c3 = build_code(3), c5 = build_code(5);
    const auto m3 = monte_carlo(c3, build_decoder(c3), NoiseModel(p), 1000000,
                                7, 4);
    const auto m5 = monte_carlo(c5, build_decoder(c5), NoiseModel(p), 1000000,
                                7, 4);
    detail << "[p=5e-3: rate(3)=" << m3.rate << " rate(5)=" << m5.rate << "] ";
    if (!(m5.rate < m3.rate)) pass = false;
  }
  report(6, pass, "simulator properties", detail.str());
}

// ---------------------------------------------------------------- 7
std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void criterion_reproducibility() {
  bool pass = true;
  std::ostringstream detail;
  // library level: identical seeds and varying thread counts agree bit-wise
  const CodeStructure code = build_code(3);
  const DecoderTable dec = build_decoder(code);
  const auto a = monte_carlo(code, dec, NoiseModel(0.001), 200000, 9, 1);
  const auto b = monte_carlo(code, dec, NoiseModel(0.001), 200000, 9, 3);
  if (a.failures != b.failures || a.rate != b.rate ||
      a.unknown_syndromes != b.unknown_syndromes) {
    pass = false;
    detail << "[thread count changed Monte-Carlo counts] ";
  }
  if (code_to_json(code).dump(2) != code_to_json(build_code(3)).dump(2)) {
    pass = false;
    detail << "[rebuild changed the serialized code] ";
  }
  // CLI level: byte-identical reports across runs and thread counts
  const char* bin = std::getenv("MXYZ_BIN");
  if (bin != nullptr) {
    const std::string base(bin);
    auto run = [&](const std::string& args, const std::string& out) {
      const std::string cmd = base + " --out " + out + " " + args;
      return std::system(cmd.c_str()) == 0;
    };
    const std::string d = "acc_repro_";
    bool ok =
        run("--threads 1 sample --L 3 --p 0.001 --shots 200000 --seed 42",
            d + "1.json") &&
        run("--threads 4 sample --L 3 --p 0.001 --shots 200000 --seed 42",
            d + "2.json") &&
        run("verify --L 3 --seed 5", d + "3.json") &&
        run("verify --L 3 --seed 5", d + "4.json");
    if (!ok || slurp(d + "1.json").empty() ||
        slurp(d + "1.json") != slurp(d + "2.json") ||
        slurp(d + "3.json") != slurp(d + "4.json")) {
      pass = false;
      detail << "[CLI reports differ across runs or thread counts] ";
    }
    for (const char* f : {"1", "2", "3", "4"})
      std::remove((d + f + ".json").c_str());
  } else {
    detail << "[MXYZ_BIN unset: CLI byte-identity covered by the cli test] ";
  }
  report(7, pass, "byte-identical reports across runs and thread counts",
         detail.str());
}

}  // namespace

int main() {
  criterion_parameters();
  criterion_commutation();
  criterion_detection();
  criterion_distance();
  criterion_logical_algebra();
  criterion_simulator();
  criterion_reproducibility();
  std::printf("%d of 7 criteria failed\n", g_failures);
  return g_failures;
}
