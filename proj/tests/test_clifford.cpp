#include "heckeforge/clifford.hpp"
#include "heckeforge/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace heckeforge;

namespace {

// the nontrivial 2-cocycle on Z/2 x Z/2 (Pauli/Heisenberg type):
// elements 1, a, b, ab; n(x,y) = 1/2 exactly when the b-part of x meets
// the a-part of y
TwoCocycle heisenberg_cocycle() {
  TwoCocycle c = TwoCocycle::trivial(4);
  auto abit = [](int x) { return x == 1 || x == 3; };
  auto bbit = [](int x) { return x == 2 || x == 3; };
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if (bbit(x) && abit(y)) c.angle[x][y] = Rat(1, 2);
  return c;
}

GroupTable z2z2() { return GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2)); }

ExtWeylGroup s2_inversion_rank1() {
  static auto d = fixtures::datum_a1();
  static auto spec = decompose_extended(d, {});
  return generate_ext(spec, {}, {});
}

} // namespace

TEST_CASE("cocycle validation") {
  auto g = z2z2();
  CHECK_NOTHROW(validate_cocycle(g, TwoCocycle::trivial(4)));
  auto h = heisenberg_cocycle();
  CHECK_NOTHROW(validate_cocycle(g, h));
  auto broken = h;
  broken.angle[2][1] = Rat(1, 4);
  CHECK_THROWS_WITH(validate_cocycle(g, broken), Catch::Matchers::StartsWith("CocycleViolation"));
}

TEST_CASE("central extension is a group") {
  auto g = z2z2();
  auto ext = central_extension(g, heisenberg_cocycle());
  CHECK(ext.level == 2);
  CHECK(ext.gamma.size() == 8);
}

TEST_CASE("twisted irreps of small groups") {
  // trivial cocycle on S2: two linear characters
  auto s2 = GroupTable::cyclic(2);
  auto irr = twisted_irreps(s2, TwoCocycle::trivial(2), 7);
  CHECK(irr.dims == std::vector<std::size_t>{1, 1});

  // trivial cocycle on S3: 1, 1, 2
  auto s3 = GroupTable::s3();
  auto irr3 = twisted_irreps(s3, TwoCocycle::trivial(6), 7);
  CHECK(irr3.dims == std::vector<std::size_t>{1, 1, 2});

  // Heisenberg cocycle on Z/2 x Z/2: a single 2-dimensional irreducible
  auto irrh = twisted_irreps(z2z2(), heisenberg_cocycle(), 7);
  CHECK(irrh.dims == std::vector<std::size_t>{2});
  // model check: the relations hold in the 2x2 model
  REQUIRE(irrh.models.size() == 1);
  auto& rho = irrh.models[0];
  auto g = z2z2();
  auto h = heisenberg_cocycle();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CMat lhs = rho[std::size_t(a)] * rho[std::size_t(b)];
      CMat rhs = unit_to_complex(h(a, b)) * rho[std::size_t(g.mul[a][b])];
      CHECK((lhs - rhs).norm() < 1e-8);
    }

  // determinism across seeds for the dims
  CHECK(twisted_irreps(z2z2(), heisenberg_cocycle(), 12345).dims == irrh.dims);
}

TEST_CASE("cohomologous separates the Heisenberg class") {
  auto g = z2z2();
  auto h = heisenberg_cocycle();
  // equal cocycles: the zero cochain works
  auto same = cohomologous(g, h, h);
  REQUIRE(same.has_value());
  for (auto& b : *same) CHECK(mod1(b) == 0);
  // a coboundary is recognized
  TwoCocycle db = TwoCocycle::trivial(4);
  std::vector<Rat> beta{Rat(0), Rat(1, 2), Rat(0), Rat(1, 2)};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) db.angle[a][b] = mod1(beta[a] + beta[b] - beta[g.mul[a][b]]);
  auto rec = cohomologous(g, db, TwoCocycle::trivial(4));
  REQUIRE(rec.has_value());
  // the nontrivial class never reaches the trivial one
  CHECK_FALSE(cohomologous(g, h, TwoCocycle::trivial(4)).has_value());
  CHECK_FALSE(cohomologous(g, h, db).has_value());
  // and the irreducible counts tell the same story: {1,1,1,1} vs {2}
  CHECK(twisted_irreps(g, db, 5).dims == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("crossed product counts for S2 on torsion points") {
  auto g = s2_inversion_rank1();
  // n = 4: C[Z/4] x| C[S2] = C[D4]: five irreducibles, dims 1,1,1,1,2
  auto c4 = crossed_product_count(g, 4, TwoCocycle::trivial(g.size()), 11);
  CHECK(c4.count == 5);
  CHECK(c4.dims == std::vector<std::size_t>{1, 1, 1, 1, 2});
  // n = 2: C[Z/2] x| C[S2] = C[Z/2 x Z/2]: four characters
  auto c2 = crossed_product_count(g, 2, TwoCocycle::trivial(g.size()), 11);
  CHECK(c2.count == 4);
  // n = 3: orbits {0},{1/3,2/3}: 2 + 1 = ... the algebra C[Z/3] x| C[S2] = C[S3]
  auto c3 = crossed_product_count(g, 3, TwoCocycle::trivial(g.size()), 11);
  CHECK(c3.count == 3);
  CHECK(c3.dims == std::vector<std::size_t>{1, 1, 2});
}

TEST_CASE("extended quotient matches the crossed product count") {
  auto g = s2_inversion_rank1();
  for (long n : {2L, 3L, 4L, 5L}) {
    auto eq = extended_quotient(g, n, TwoCocycle::trivial(g.size()), 3);
    auto cp = crossed_product_count(g, n, TwoCocycle::trivial(g.size()), 3);
    CHECK(eq.total_irreps == cp.count);
    // dimension bookkeeping: each quotient point (chi, rho) carries the
    // induced irreducible of dimension orbit * dim rho, and these square
    // up to the algebra dimension n * |S2|
    std::size_t dimsum = 0;
    for (auto& pt : eq.points)
      for (auto d : pt.irrep_dims) dimsum += pt.orbit_size * d * pt.orbit_size * d;
    CHECK(dimsum == std::size_t(n) * 2);
  }
  // n = 4 in detail: fixed points 0, 1/2 contribute two labels each, the
  // free pair {1/4, 3/4} one
  auto eq4 = extended_quotient(g, 4, TwoCocycle::trivial(g.size()), 3);
  CHECK(eq4.total_irreps == 5);
  REQUIRE(eq4.points.size() == 3);
  CHECK(eq4.points[0].stabilizer_size == 2);
  CHECK(eq4.points[1].stabilizer_size == 1);
  CHECK(eq4.points[1].orbit_size == 2);
  CHECK(eq4.points[2].stabilizer_size == 2);

  // trivial group: n points, one label each
  auto dtriv = fixtures::datum_a1();
  auto spec_triv = decompose_extended(dtriv, {});
  ExtWeylGroup trivial_group;
  trivial_group.elements = {TorusTransformation::identity(1)};
  trivial_group.table = {{0}};
  trivial_group.inverse = {0};
  trivial_group.translations = {0};
  trivial_group.factor = {{0, 0, 0}};
  trivial_group.spec = &spec_triv;
  auto eqt = extended_quotient(trivial_group, 3, TwoCocycle::trivial(1), 3);
  CHECK(eqt.total_irreps == 3);
  CHECK(eqt.points.size() == 3);
}

TEST_CASE("a nontrivial cocycle case: translations by Z/2 x Z/2 under the swap") {
  // rank 2: A1 x A1 with the swap; translation subgroup of order 4 at
  // torsion level 2; the group is D4-like of order 32... keep n = 2 and
  // check the quotient against the crossed product with the sign cocycle
  auto d = fixtures::datum_a1a1();
  IntMat swap{{0, 1}, {1, 0}};
  auto spec = decompose_extended(d, {swap});
  auto g = generate_ext(spec, {}, {});
  // global sign cocycle: inflate the R = Z/2 sign table through the
  // factorization (translation, r, w) -> r
  TwoCocycle c = TwoCocycle::trivial(g.size());
  for (int a = 0; a < g.size(); ++a)
    for (int b = 0; b < g.size(); ++b) {
      bool ra = spec.full.elements[g.factor[std::size_t(a)][1]].length == 0 &&
                g.factor[std::size_t(a)][1] != 0;
      bool rb = spec.full.elements[g.factor[std::size_t(b)][1]].length == 0 &&
                g.factor[std::size_t(b)][1] != 0;
      if (ra && rb) c.angle[std::size_t(a)][std::size_t(b)] = Rat(1, 2);
    }
  // this inflation is a cocycle only if r-parts multiply like the quotient;
  // validate_cocycle inside extended_quotient raises otherwise
  auto eq = extended_quotient(g, 2, c, 17);
  auto cp = crossed_product_count(g, 2, c, 17);
  CHECK(eq.total_irreps == cp.count);
}

TEST_CASE("clifford induction") {
  auto g = s2_inversion_rank1();
  auto triv = TwoCocycle::trivial(g.size());

  // free orbit at chi = 1/4 with the trivial character: dimension 2
  std::vector<CMat> rho1{CMat::Identity(1, 1)};
  auto ind = clifford_induce(g, 4, triv, TorusPoint::unitary({Rat(1, 4)}), rho1);
  CHECK(ind.dim == 2);

  // fixed point chi = 1/2, sign character of the stabilizer S2
  std::vector<CMat> rho_sign{CMat::Identity(1, 1), -CMat::Identity(1, 1)};
  auto ind2 = clifford_induce(g, 4, triv, TorusPoint::unitary({Rat(1, 2)}), rho_sign);
  CHECK(ind2.dim == 1);
  CHECK(std::abs(ind2.n_mats[1](0, 0) - std::complex<double>(-1, 0)) < 1e-9);

  // wrong block: a "character" breaking the multiplication table
  std::vector<CMat> bad{CMat::Identity(1, 1), std::complex<double>(0, 1) * CMat::Identity(1, 1)};
  CHECK_THROWS_WITH(clifford_induce(g, 4, triv, TorusPoint::unitary({Rat(1, 2)}), bad),
                    Catch::Matchers::StartsWith("WrongCocycleBlock"));

  // distinct data induce non-isomorphic modules: all five induced modules
  // for torsion level 4 are distinguished by dimension, theta spectrum or
  // the N_s trace
  std::vector<CMat> rho_triv{CMat::Identity(1, 1), CMat::Identity(1, 1)};
  auto m00 = clifford_induce(g, 4, triv, TorusPoint::identity(1), rho_triv);
  auto m01 = clifford_induce(g, 4, triv, TorusPoint::identity(1), rho_sign);
  auto m20 = clifford_induce(g, 4, triv, TorusPoint::unitary({Rat(1, 2)}), rho_triv);
  auto m21 = ind2; // chi = 1/2, sign
  auto mfree = ind;
  auto signature = [](const InducedModule& m) {
    std::vector<std::complex<double>> s;
    for (auto& t : m.theta) s.push_back(t.trace());
    for (auto& nmt : m.n_mats) s.push_back(nmt.trace());
    s.push_back(std::complex<double>(double(m.dim), 0));
    return s;
  };
  std::vector<std::vector<std::complex<double>>> sigs{signature(m00), signature(m01),
                                                      signature(m20), signature(m21),
                                                      signature(mfree)};
  for (std::size_t i = 0; i < sigs.size(); ++i)
    for (std::size_t j = i + 1; j < sigs.size(); ++j) {
      bool same = sigs[i].size() == sigs[j].size();
      if (same)
        for (std::size_t t = 0; t < sigs[i].size(); ++t)
          if (std::abs(sigs[i][t] - sigs[j][t]) > 1e-8) same = false;
      CHECK_FALSE(same);
    }
}

TEST_CASE("order-3 Heisenberg cocycle on Z/3 x Z/3") {
  // c((a1,b1),(a2,b2)) = b1 a2 / 3: nondegenerate, so the twisted algebra
  // is a full 3x3 matrix algebra
  auto g = GroupTable::product(GroupTable::cyclic(3), GroupTable::cyclic(3));
  TwoCocycle c = TwoCocycle::trivial(9);
  auto a_of = [](int x) { return x / 3; };
  auto b_of = [](int x) { return x % 3; };
  for (int x = 0; x < 9; ++x)
    for (int y = 0; y < 9; ++y) c.angle[x][y] = mod1(Rat(b_of(x) * a_of(y), 3));
  CHECK_NOTHROW(validate_cocycle(g, c));
  auto irr = twisted_irreps(g, c, 3);
  CHECK(irr.dims == std::vector<std::size_t>{3});
  CHECK_FALSE(cohomologous(g, c, TwoCocycle::trivial(9)).has_value());
}

TEST_CASE("twisted irreps dims are invariant under cohomologous change") {
  auto g = z2z2();
  TwoCocycle db = TwoCocycle::trivial(4);
  std::vector<Rat> beta{Rat(0), Rat(1, 2), Rat(1, 2), Rat(0)};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) db.angle[a][b] = mod1(beta[a] + beta[b] - beta[g.mul[a][b]]);
  CHECK(twisted_irreps(g, db, 9).dims == twisted_irreps(g, TwoCocycle::trivial(4), 9).dims);
  auto h = heisenberg_cocycle();
  TwoCocycle shifted = h;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      shifted.angle[a][b] = mod1(shifted.angle[a][b] + db.angle[a][b]);
  CHECK(twisted_irreps(g, shifted, 9).dims == twisted_irreps(g, h, 9).dims);
}
