#include <doctest.h>

#include "mxyz/gf2.hpp"
#include "mxyz/lattice.hpp"
#include "mxyz/operator_set.hpp"
#include "mxyz/pauli.hpp"
#include "mxyz/rng.hpp"

using namespace mxyz;

namespace {

PauliWord random_word(std::size_t n, CounterRng& rng) {
  PauliWord p(n);
  for (std::size_t q = 0; q < n; ++q)
    p.set_letter(q, static_cast<PauliLetter>(rng.next() % 4));
  p.set_phase(static_cast<uint8_t>(rng.next() % 4));
  return p;
}

}  // namespace

TEST_CASE("single-qubit Pauli multiplication table") {
  auto w = [](char c) {
    PauliWord p(1);
    if (c != 'I') p.set_letter(0, letter_from_char(c));
    return p;
  };
  // XY = iZ and cyclic friends
  CHECK(multiply(w('X'), w('Y')) == [&] { auto z = w('Z'); z.set_phase(1); return z; }());
  CHECK(multiply(w('Y'), w('Z')) == [&] { auto x = w('X'); x.set_phase(1); return x; }());
  CHECK(multiply(w('Z'), w('X')) == [&] { auto y = w('Y'); y.set_phase(1); return y; }());
  // anticyclic get -i
  CHECK(multiply(w('Y'), w('X')) == [&] { auto z = w('Z'); z.set_phase(3); return z; }());
  // involutions
  for (char c : {'X', 'Y', 'Z'}) CHECK(multiply(w(c), w(c)) == w('I'));
}

TEST_CASE("multiply is associative and tracks commutation phases") {
  CounterRng rng(11, 0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 7;
    PauliWord a = random_word(n, rng), b = random_word(n, rng),
              c = random_word(n, rng);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    // ab = (-1)^<a,b> ba
    PauliWord ab = multiply(a, b), ba = multiply(b, a);
    CHECK(ab.same_pattern(ba));
    CHECK(((ab.phase() - ba.phase()) & 3) ==
          (symplectic_product(a, b) ? 2 : 0));
  }
}

TEST_CASE("symplectic product is bilinear") {
  CounterRng rng(13, 0);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 25;
    PauliWord a = random_word(n, rng), b = random_word(n, rng),
              c = random_word(n, rng);
    const uint8_t lhs = symplectic_product(multiply(a, b), c);
    const uint8_t rhs =
        (symplectic_product(a, c) ^ symplectic_product(b, c)) & 1;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("text round trip") {
  CounterRng rng(17, 0);
  for (int trial = 0; trial < 200; ++trial) {
    PauliWord p = random_word(12, rng);
    CHECK(PauliWord::parse(p.str(), 12) == p);
  }
  CHECK(PauliWord(4).str() == "+ I");
  CHECK(PauliWord::parse("+ I", 4) == PauliWord(4));
  CHECK_THROWS_AS(PauliWord::parse("bogus", 4), std::invalid_argument);
  CHECK_THROWS_AS(PauliWord::parse("+ X9", 4), std::invalid_argument);
}

TEST_CASE("lattice geometry") {
  CHECK_THROWS_AS(Lattice(2), std::invalid_argument);
  Lattice lat(3);
  CHECK(lat.num_sites() == 9);
  // periodic wrap in both directions
  CHECK(lat.site_index({-1, -1}) == lat.site_index({2, 2}));
  CHECK(lat.site_index({3, 4}) == lat.site_index({0, 1}));

  // up triangle letters: Y anchor, X right, Z below
  const auto up = lat.up_triangle_support({0, 0});
  CHECK(up.at(lat.site_index({0, 0})) == PauliLetter::Y);
  CHECK(up.at(lat.site_index({0, 1})) == PauliLetter::X);
  CHECK(up.at(lat.site_index({1, 0})) == PauliLetter::Z);
  // down triangle letters: Z lone vertex, X and Y on the next row
  const auto dn = lat.down_triangle_support({0, 0});
  CHECK(dn.at(lat.site_index({0, 0})) == PauliLetter::Z);
  CHECK(dn.at(lat.site_index({1, -1})) == PauliLetter::X);
  CHECK(dn.at(lat.site_index({1, 0})) == PauliLetter::Y);

  // loops: Z along a row, X along a column, Y along an anti-diagonal
  for (long line = 0; line < 3; ++line) {
    CHECK(lat.loop(LoopKind::Z, line).weight() == 3);
    CHECK(lat.loop(LoopKind::X, line).weight() == 3);
    CHECK(lat.loop(LoopKind::Y, line).weight() == 3);
  }
  const auto zl = lat.loop_support(LoopKind::Z, 1);
  for (long c = 0; c < 3; ++c)
    CHECK(zl.at(lat.site_index({1, c})) == PauliLetter::Z);
  const auto yl = lat.loop_support(LoopKind::Y, 2);
  for (const auto& [site, letter] : yl) CHECK(letter == PauliLetter::Y);
}

TEST_CASE("scaled triangle supports") {
  Lattice lat(5);
  const auto s2 = lat.scaled_triangle_support({1, 1}, 2, Orientation::Up);
  CHECK(s2.size() == 3);
  CHECK(s2.at(lat.site_index({1, 1})) == PauliLetter::Y);
  CHECK(s2.at(lat.site_index({1, 3})) == PauliLetter::X);
  CHECK(s2.at(lat.site_index({3, 1})) == PauliLetter::Z);
  CHECK_THROWS_AS(lat.scaled_triangle_support({0, 0}, 0, Orientation::Up),
                  std::invalid_argument);
}

TEST_CASE("gf2 row basis and nullspace") {
  gf2::RowBasis rb(8, 4);
  auto vec = [](std::initializer_list<int> bits) {
    gf2::BitVec v = gf2::make_bitvec(8);
    for (int b : bits) gf2::set(v, static_cast<std::size_t>(b));
    return v;
  };
  gf2::BitVec c0 = gf2::make_bitvec(4), c1 = gf2::make_bitvec(4);
  gf2::set(c0, 0);
  gf2::set(c1, 1);
  CHECK(rb.insert(vec({0, 1}), c0));
  CHECK(rb.insert(vec({1, 2}), c1));
  CHECK(rb.rank() == 2);
  CHECK(!rb.contains(vec({0, 1, 2, 3})));
  auto combo = rb.reduce(vec({0, 2}));
  REQUIRE(combo.has_value());
  CHECK(gf2::get(*combo, 0));
  CHECK(gf2::get(*combo, 1));
  // dependent row rejected
  gf2::BitVec c2 = gf2::make_bitvec(4);
  gf2::set(c2, 2);
  CHECK(!rb.insert(vec({0, 2}), c2));

  // nullspace: rank-nullity and M v = 0
  CounterRng rng(23, 0);
  std::vector<gf2::BitVec> mat;
  for (int r = 0; r < 6; ++r) {
    gf2::BitVec row = gf2::make_bitvec(10);
    for (std::size_t c = 0; c < 10; ++c)
      if (rng.bit()) gf2::set(row, c);
    mat.push_back(row);
  }
  gf2::RowBasis rank_of(10);
  for (const auto& r : mat) rank_of.insert(r, {});
  const auto ns = gf2::nullspace(mat, 10);
  CHECK(ns.size() == 10 - rank_of.rank());
  for (const auto& v : ns)
    for (const auto& row : mat) {
      int parity = 0;
      for (std::size_t c = 0; c < 10; ++c)
        parity ^= (gf2::get(row, c) && gf2::get(v, c)) ? 1 : 0;
      CHECK(parity == 0);
    }
}

TEST_CASE("operator set span, decomposition, centre") {
  Lattice lat(3);
  OperatorSet gauge(lat.num_sites());
  for (long r = 0; r < 3; ++r)
    for (long c = 0; c < 3; ++c) gauge.add(lat.up_triangle({r, c}));
  for (long r = 0; r < 3; ++r)
    for (long c = 0; c < 3; ++c) gauge.add(lat.down_triangle({r, c}));

  CHECK(gauge.rank() == 10);
  // decompose round trip on random products
  CounterRng rng(29, 0);
  for (int trial = 0; trial < 50; ++trial) {
    gf2::BitVec coeffs = gf2::make_bitvec(gauge.size());
    for (std::size_t i = 0; i < gauge.size(); ++i)
      if (rng.bit()) gf2::set(coeffs, i);
    const PauliWord target = gauge.product_of(coeffs);
    auto dec = gauge.decompose(target);
    REQUIRE(dec.has_value());
    CHECK(gauge.product_of(*dec).same_pattern(target));
  }
  // the centre commutes with everything and sits inside the span
  const OperatorSet centre = gauge.centre();
  CHECK(centre.rank() == 6);
  for (const auto& z : centre.members()) {
    CHECK(gauge.in_span(z));
    for (const auto& g : gauge.members())
      CHECK(symplectic_product(z, g) == 0);
  }
  // centraliser dimension 2n - rank
  CHECK(gauge.centraliser_in_pauli_group().rank() == 18 - 10);
}

TEST_CASE("hyperbolic pairs satisfy the pairing relations") {
  Lattice lat(4);
  OperatorSet gauge(lat.num_sites());
  for (long r = 0; r < 4; ++r)
    for (long c = 0; c < 4; ++c) {
      gauge.add(lat.up_triangle({r, c}));
      gauge.add(lat.down_triangle({r, c}));
    }
  const auto pairs = hyperbolic_pairs(gauge);
  CHECK(pairs.size() == (gauge.rank() - gauge.centre().rank()) / 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(gauge.product_of(pairs[i].a_coeffs).same_pattern(pairs[i].a));
    CHECK(gauge.product_of(pairs[i].b_coeffs).same_pattern(pairs[i].b));
    for (std::size_t j = 0; j < pairs.size(); ++j) {
      CHECK(symplectic_product(pairs[i].a, pairs[j].b) == (i == j ? 1 : 0));
      CHECK(symplectic_product(pairs[i].a, pairs[j].a) == 0);
      CHECK(symplectic_product(pairs[i].b, pairs[j].b) == 0);
    }
  }
}
