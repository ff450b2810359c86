#pragma once

#include <cassert>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mxyz {

enum class PauliLetter : uint8_t { I = 0, X = 1, Z = 2, Y = 3 };

inline char letter_char(PauliLetter l) {
  switch (l) {
    case PauliLetter::I: return 'I';
    case PauliLetter::X: return 'X';
    case PauliLetter::Z: return 'Z';
    case PauliLetter::Y: return 'Y';
  }
  return '?';
}

inline PauliLetter letter_from_char(char c) {
  switch (c) {
    case 'I': return PauliLetter::I;
    case 'X': return PauliLetter::X;
    case 'Z': return PauliLetter::Z;
    case 'Y': return PauliLetter::Y;
  }
  throw std::invalid_argument(std::string("not a Pauli letter: ") + c);
}

/// n-qubit Pauli operator in binary symplectic form: i^phase * prod_j W_j,
/// with W_j decoded from (xbit, zbit) as I=(0,0), X=(1,0), Z=(0,1), Y=(1,1).
/// Bits are packed into 64-bit words; XOR and popcount are the hot path.
class PauliWord {
 public:
  PauliWord() : n_(0), phase_(0) {}

  explicit PauliWord(std::size_t n, uint8_t phase = 0)
      : n_(n), phase_(phase & 3u), x_(words(n), 0), z_(words(n), 0) {}

  static std::size_t words(std::size_t n) { return (n + 63) / 64; }

  std::size_t num_qubits() const { return n_; }
  uint8_t phase() const { return phase_; }
  void set_phase(uint8_t p) { phase_ = p & 3u; }

  bool xbit(std::size_t q) const { return (x_[q >> 6] >> (q & 63)) & 1u; }
  bool zbit(std::size_t q) const { return (z_[q >> 6] >> (q & 63)) & 1u; }

  PauliLetter letter(std::size_t q) const {
    return static_cast<PauliLetter>((xbit(q) ? 1 : 0) | (zbit(q) ? 2 : 0));
  }

  void set_letter(std::size_t q, PauliLetter l) {
    const uint64_t m = uint64_t{1} << (q & 63);
    auto v = static_cast<uint8_t>(l);
    if (v & 1) x_[q >> 6] |= m; else x_[q >> 6] &= ~m;
    if (v & 2) z_[q >> 6] |= m; else z_[q >> 6] &= ~m;
  }

  const std::vector<uint64_t>& xwords() const { return x_; }
  const std::vector<uint64_t>& zwords() const { return z_; }

  bool is_identity_pattern() const {
    for (std::size_t w = 0; w < x_.size(); ++w)
      if (x_[w] | z_[w]) return false;
    return true;
  }

  std::size_t weight() const {
    std::size_t c = 0;
    for (std::size_t w = 0; w < x_.size(); ++w)
      c += static_cast<std::size_t>(__builtin_popcountll(x_[w] | z_[w]));
    return c;
  }

  /// 0 iff the two operators commute, 1 iff they anticommute. Phase-blind.
  friend uint8_t symplectic_product(const PauliWord& p, const PauliWord& q) {
    if (p.n_ != q.n_)
      throw std::invalid_argument("symplectic_product: length mismatch");
    uint64_t acc = 0;
    for (std::size_t w = 0; w < p.x_.size(); ++w)
      acc ^= static_cast<uint64_t>(__builtin_popcountll(p.x_[w] & q.z_[w]) ^
                                   __builtin_popcountll(p.z_[w] & q.x_[w]));
    return static_cast<uint8_t>(acc & 1u);
  }

  /// Operator product p*q (p applied after q in the usual left-to-right
  /// notation). XOR of bit patterns; phase from the per-site single-qubit
  /// table (cyclic XY=iZ, anticyclic YX=-iZ).
  friend PauliWord multiply(const PauliWord& p, const PauliWord& q) {
    if (p.n_ != q.n_) throw std::invalid_argument("multiply: length mismatch");
    PauliWord r(p.n_);
    unsigned ph = p.phase_ + q.phase_;
    for (std::size_t w = 0; w < p.x_.size(); ++w) {
      const uint64_t x1 = p.x_[w], z1 = p.z_[w], x2 = q.x_[w], z2 = q.z_[w];
      r.x_[w] = x1 ^ x2;
      r.z_[w] = z1 ^ z2;
      uint64_t both = (x1 | z1) & (x2 | z2);
      while (both) {
        const int b = __builtin_ctzll(both);
        both &= both - 1;
        const unsigned a = ((x1 >> b) & 1u) | (((z1 >> b) & 1u) << 1);
        const unsigned c = ((x2 >> b) & 1u) | (((z2 >> b) & 1u) << 1);
        // a,c in {1=X, 2=Z, 3=Y}; table of i-exponents for a*c.
        static constexpr uint8_t kPhase[4][4] = {
            {0, 0, 0, 0},
            {0, 0, 3, 1},   // X*X=I, X*Z=-iY, X*Y=iZ
            {0, 1, 0, 3},   // Z*X=iY, Z*Z=I, Z*Y=-iX
            {0, 3, 1, 0}};  // Y*X=-iZ, Y*Z=iX, Y*Y=I
        ph += kPhase[a][c];
      }
    }
    r.phase_ = static_cast<uint8_t>(ph & 3u);
    return r;
  }

  bool same_pattern(const PauliWord& o) const {
    return n_ == o.n_ && x_ == o.x_ && z_ == o.z_;
  }

  bool operator==(const PauliWord& o) const {
    return same_pattern(o) && phase_ == o.phase_;
  }

  /// Text form "+i X0 Y4 Z7" (sorted site order); identity renders as "+ I".
  std::string str() const {
    static constexpr const char* kPhaseStr[4] = {"+", "+i", "-", "-i"};
    std::ostringstream os;
    os << kPhaseStr[phase_];
    bool any = false;
    for (std::size_t q = 0; q < n_; ++q) {
      const PauliLetter l = letter(q);
      if (l == PauliLetter::I) continue;
      os << ' ' << letter_char(l) << q;
      any = true;
    }
    if (!any) os << " I";
    return os.str();
  }

  static PauliWord parse(const std::string& text, std::size_t n) {
    PauliWord p(n);
    std::istringstream is(text);
    std::string tok;
    if (!(is >> tok)) throw std::invalid_argument("empty Pauli text");
    if (tok == "+") p.set_phase(0);
    else if (tok == "+i") p.set_phase(1);
    else if (tok == "-") p.set_phase(2);
    else if (tok == "-i") p.set_phase(3);
    else throw std::invalid_argument("bad phase token: " + tok);
    while (is >> tok) {
      if (tok == "I") continue;
      const PauliLetter l = letter_from_char(tok[0]);
      const std::size_t q = std::stoul(tok.substr(1));
      if (q >= n) throw std::invalid_argument("site out of range: " + tok);
      p.set_letter(q, l);
    }
    return p;
  }

 private:
  std::size_t n_;
  uint8_t phase_;  // exponent of i, mod 4
  std::vector<uint64_t> x_, z_;
};

/// Sparse site -> non-identity letter map; converts losslessly to a
/// phase-0 PauliWord.
using PauliLetterAssignment = std::map<std::size_t, PauliLetter>;

inline PauliWord to_pauli(const PauliLetterAssignment& a, std::size_t n) {
  PauliWord p(n);
  for (const auto& [site, l] : a) {
    assert(l != PauliLetter::I);
    p.set_letter(site, l);
  }
  return p;
}

}  // namespace mxyz
