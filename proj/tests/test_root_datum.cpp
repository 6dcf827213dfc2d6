#include "heckeforge/fixtures.hpp"
#include "heckeforge/root_datum.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <set>

using namespace heckeforge;

// Brute-force closure of plain integer matrices, independent of the
// library's group machinery. Used as the oracle for group orders.
static std::size_t matrix_closure_size(const std::vector<IntMat>& gens, std::size_t cap) {
  std::set<IntMat> seen(gens.begin(), gens.end());
  seen.insert(int_identity(gens[0].size()));
  bool grew = true;
  while (grew && seen.size() <= cap) {
    grew = false;
    std::vector<IntMat> cur(seen.begin(), seen.end());
    for (auto& a : cur)
      for (auto& g : gens)
        if (seen.insert(int_mul(a, g)).second) grew = true;
  }
  return seen.size();
}

TEST_CASE("build A1") {
  auto d = fixtures::datum_a1();
  CHECK(d.num_roots() == 2);
  CHECK(pair(d.coroots[0], d.roots[0]) == 2);
  CHECK(d.positive.size() == 1);
}

TEST_CASE("build A2 and closure oracle") {
  auto d = fixtures::datum_a2();
  CHECK(d.num_roots() == 6);

  std::vector<IntMat> gens;
  for (int b : d.basis) gens.push_back(reflection_matrix(d, b));
  CHECK(matrix_closure_size(gens, 100) == 6);

  auto w = generate_weyl(d);
  CHECK(w.size() == 6);
}

TEST_CASE("build B2 and closure oracle") {
  auto d = fixtures::datum_b2();
  CHECK(d.num_roots() == 8);
  std::vector<IntMat> gens;
  for (int b : d.basis) gens.push_back(reflection_matrix(d, b));
  CHECK(matrix_closure_size(gens, 100) == 8);
  CHECK(generate_weyl(d).size() == 8);
}

TEST_CASE("G2 has Weyl group of order 12") {
  auto d = fixtures::datum_g2();
  CHECK(d.num_roots() == 12);
  CHECK(generate_weyl(d).size() == 12);
}

TEST_CASE("pairing not two is rejected") {
  std::vector<LatticeVector> co{LatticeVector({1}), LatticeVector({-1})};
  std::vector<LatticeVector> ro{LatticeVector({1}), LatticeVector({-1})};
  CHECK_THROWS_WITH(build_root_datum(co, ro, {0}), Catch::Matchers::StartsWith("PairingNotTwo"));
}

TEST_CASE("weyl element lengths behave like Coxeter lengths") {
  auto d = fixtures::datum_b2();
  auto w = generate_weyl(d);
  // w(coroot) is again a coroot and l(w s) = l(w) +/- 1
  for (auto& e : w.elements)
    for (std::size_t i = 0; i < d.num_roots(); ++i)
      CHECK(d.index_of_coroot(apply_matrix(e.matrix, d.coroots[i])) == e.root_perm[i]);
  for (int i = 0; i < w.size(); ++i)
    for (int s : w.simple) {
      int j = w.mul(i, s);
      CHECK(std::abs(w.elements[i].length - w.elements[j].length) == 1);
    }
  // longest element of B2 has length 4
  int maxlen = 0;
  for (auto& e : w.elements) maxlen = std::max(maxlen, e.length);
  CHECK(maxlen == 4);
}

TEST_CASE("generate_weyl respects the cap") {
  auto d = fixtures::datum_a2();
  CHECK_THROWS_WITH(generate_weyl(d, 3), Catch::Matchers::StartsWith("CapExceeded"));
}

TEST_CASE("decompose_extended: Weyl group alone has trivial R") {
  auto d = fixtures::datum_a2();
  auto spec = decompose_extended(d, {});
  CHECK(spec.full.size() == 6);
  CHECK(spec.r_part.size() == 1);
  // factorization multiplies back (already asserted inside, but re-check)
  for (int i = 0; i < spec.full.size(); ++i) {
    auto [r, v] = spec.factor[i];
    CHECK(spec.full.mul(r, v) == i);
    CHECK(spec.full.elements[r].length == 0);
  }
}

TEST_CASE("decompose_extended: A1xA1 with swap has R of order 2") {
  auto d = fixtures::datum_a1a1();
  IntMat swap{{0, 1}, {1, 0}};
  auto spec = decompose_extended(d, {swap});
  CHECK(spec.weyl.size() == 4);
  CHECK(spec.full.size() == 8);
  CHECK(spec.r_part.size() == 2);
  // the swap itself has length zero
  auto sw = make_element(d, swap);
  CHECK(sw.length == 0);
}

TEST_CASE("decompose_extended rejects non-preserving generators") {
  auto d = fixtures::datum_a1a1();
  IntMat bad{{1, 1}, {0, 1}};
  CHECK_THROWS_WITH(decompose_extended(d, {bad}), Catch::Matchers::StartsWith("NotPreservingRoots"));
}

TEST_CASE("parameter validation") {
  auto d = fixtures::datum_a1();
  auto spec = decompose_extended(d, {});
  ParamFunction p = fixtures::params_const(d, Rat(4), Rat(2));
  CHECK_NOTHROW(validate_params(d, spec, p));
  p.qstar[0] = Rat(8); // q* > q
  p.qstar[1] = Rat(8);
  CHECK_THROWS_WITH(validate_params(d, spec, p), Catch::Matchers::StartsWith("ParameterOrder"));
}

TEST_CASE("parity validation") {
  // A1 with root (1): odd pairing with the lattice, q* > 1 forbidden
  auto d1 = fixtures::datum_a1_odd();
  ParamFunction podd = fixtures::params_const(d1, Rat(4), Rat(2));
  CHECK_THROWS_WITH(validate_parity(d1, podd), Catch::Matchers::StartsWith("ParityViolation"));

  // A1 with coroot (1), root (2): all pairings even
  auto d2 = fixtures::datum_a1();
  ParamFunction p2 = fixtures::params_const(d2, Rat(4), Rat(2));
  CHECK_NOTHROW(validate_parity(d2, p2));

  // q* = 1 everywhere is vacuously fine
  ParamFunction p3 = fixtures::params_const(d1, Rat(4), Rat(1));
  CHECK_NOTHROW(validate_parity(d1, p3));
}

TEST_CASE("subsystem at the identity point is everything") {
  auto d = fixtures::datum_b2();
  auto spec = decompose_extended(d, {});
  auto p = fixtures::params_const(d, Rat(4), Rat(1));
  auto sub = subsystem_at_point(d, spec, p, TorusPoint::identity(2));
  CHECK(sub.roots.size() == d.num_roots());
  CHECK(sub.stabilizer.size() == std::size_t(spec.full.size()));
  // R part stabilizes the positive subsystem
  for (int r : sub.r_part)
    for (int i : sub.roots)
      if (d.is_positive(i)) CHECK(d.is_positive(spec.full.elements[r].root_perm[i]));
}

TEST_CASE("subsystem at special points") {
  // coroot (1), root (2): X_alpha(u) = u(coroot) = e^{2 pi i a}
  auto d = fixtures::datum_a1();
  auto spec = decompose_extended(d, {});

  // X_alpha(u) = -1 with q* = 1: the (1+X)(1+X^{-1}) factors cancel and
  // the -1 locus is not a zero of mu, so the subsystem is empty
  auto p1 = fixtures::params_const(d, Rat(4), Rat(1));
  auto sub1 = subsystem_at_point(d, spec, p1, TorusPoint::unitary({Rat(1, 2)}));
  CHECK(sub1.roots.empty());

  // q* > 1 keeps the -1 locus
  auto p2 = fixtures::params_const(d, Rat(4), Rat(2));
  auto sub2 = subsystem_at_point(d, spec, p2, TorusPoint::unitary({Rat(1, 2)}));
  CHECK(sub2.roots.size() == 2);
  CHECK(sub2.sub_basis.size() == 1);

  // a point where X_alpha is a primitive cube root: nothing survives
  auto sub3 = subsystem_at_point(d, spec, p2, TorusPoint::unitary({Rat(1, 3)}));
  CHECK(sub3.roots.empty());

  // non-unitary points are rejected
  CHECK_THROWS_WITH(subsystem_at_point(d, spec, p1, TorusPoint({Rat(0)}, {Rat(1)})),
                    Catch::Matchers::StartsWith("NonUnitaryPoint"));
}

TEST_CASE("adapted basis: plain A2") {
  auto d = fixtures::datum_a2();
  std::vector<LatticeVector> big(d.coroots.begin(), d.coroots.end());
  auto basis = adapted_basis(big, {}, {});
  CHECK(basis.size() == 2);
  // a basis: every root is a +/- combination
  for (auto& v : basis) CHECK(d.index_of_coroot(v) >= 0);
}

TEST_CASE("adapted basis contains the forced root pair") {
  auto d = fixtures::datum_a2();
  std::vector<LatticeVector> big(d.coroots.begin(), d.coroots.end());
  std::vector<LatticeVector> small{d.coroots[0], -d.coroots[0]};
  auto basis = adapted_basis(big, small, small);
  bool found = false;
  for (auto& v : basis)
    if (v == d.coroots[0] || v == -d.coroots[0]) found = true;
  CHECK(found);
}

TEST_CASE("adapted basis: B2 with a rank-1 long layer") {
  auto d = fixtures::datum_b2();
  std::vector<LatticeVector> big(d.coroots.begin(), d.coroots.end());
  // the A1 generated by one long root is parabolic: the span meets B2 in
  // exactly that pair
  std::vector<LatticeVector> mid{LatticeVector({1, 1}), LatticeVector({-1, -1})};
  auto basis = adapted_basis(big, mid, {});
  CHECK(basis.size() == 2);
  bool has_mid = false;
  for (auto& v : basis)
    if (v == mid[0] || v == mid[1]) has_mid = true;
  CHECK(has_mid);
  // determinism
  CHECK(adapted_basis(big, mid, {}) == basis);
}

TEST_CASE("adapted basis rejects non-parabolic layers") {
  auto d = fixtures::datum_b2();
  std::vector<LatticeVector> big(d.coroots.begin(), d.coroots.end());
  // the long A1xA1 spans the plane, so its span meets B2 in the whole
  // system: closed but not parabolic, and no basis of B2 contains a basis
  // of it
  std::vector<LatticeVector> longs;
  for (auto& v : big)
    if (std::abs(v.c[0]) == 1 && std::abs(v.c[1]) == 1) longs.push_back(v);
  REQUIRE(longs.size() == 4);
  CHECK_THROWS_WITH(adapted_basis(big, longs, {}), Catch::Matchers::StartsWith("NotParabolic"));
}
