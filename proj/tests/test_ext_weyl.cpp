#include "heckeforge/ext_weyl.hpp"
#include "heckeforge/fixtures.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace heckeforge;

static std::vector<TorusPoint> half_translations_rank1() {
  return {TorusPoint::identity(1), TorusPoint::unitary({Rat(1, 2)})};
}

TEST_CASE("trivial translations recover the linear group") {
  auto d = fixtures::datum_a2();
  auto spec = decompose_extended(d, {});
  auto g = generate_ext(spec, {}, {});
  CHECK(g.size() == spec.full.size());
  CHECK(g.translations.size() == 1);
}

TEST_CASE("A1 with half translations has order 4") {
  auto d = fixtures::datum_a1();
  auto spec = decompose_extended(d, {});
  auto g = generate_ext(spec, half_translations_rank1(), {});
  CHECK(g.size() == 4);
  CHECK(g.translations.size() == 2);
  // closedness and inverses
  for (int i = 0; i < g.size(); ++i) CHECK(g.mul(i, g.inv(i)) == 0);
}

TEST_CASE("factorization round-trips under composition") {
  auto d = fixtures::datum_a1();
  auto spec = decompose_extended(d, {});
  auto g = generate_ext(spec, half_translations_rank1(), {});
  for (int i = 0; i < g.size(); ++i) {
    auto [t, r, w] = g.factor[i];
    TorusTransformation rt(spec.full.elements[r].matrix, TorusPoint::identity(1));
    TorusTransformation wt = TorusTransformation::linear_only(spec.full.elements[w].matrix);
    auto recomposed = g.elements[t] * (rt * wt);
    CHECK(recomposed == g.elements[i]);
  }
}

TEST_CASE("compatibility violation is caught") {
  // A1 x A1 with the swap; chi_swap with an angle that the Weyl group
  // moves outside the (trivial) translation subgroup
  auto d = fixtures::datum_a1a1();
  IntMat swap{{0, 1}, {1, 0}};
  auto spec = decompose_extended(d, {swap});
  int swap_idx = -1;
  for (int r : spec.r_part)
    if (r != 0) swap_idx = r;
  REQUIRE(swap_idx >= 0);
  std::map<int, TorusPoint> chi{{swap_idx, TorusPoint::unitary({Rat(1, 4), Rat(0)})}};
  CHECK_THROWS_WITH(generate_ext(spec, {}, chi), Catch::Matchers::StartsWith("CompatibilityViolation"));

  // with the matching translation subgroup it generates fine
  std::vector<TorusPoint> trans;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      trans.push_back(TorusPoint::unitary({Rat(i, 4), Rat(j, 4)}));
  auto g = generate_ext(spec, trans, chi);
  CHECK(g.size() == 16 * spec.full.size());

  // chi_swap = (1/2, 0) satisfies the Weyl condition with trivial
  // translations but swap(chi) chi lands on (1/2, 1/2), so the inverse
  // condition demands that translation in the subgroup
  std::map<int, TorusPoint> chi2{{swap_idx, TorusPoint::unitary({Rat(1, 2), Rat(0)})}};
  CHECK_THROWS_WITH(generate_ext(spec, {}, chi2),
                    Catch::Matchers::StartsWith("CompatibilityViolation"));
  std::vector<TorusPoint> trans2{TorusPoint::identity(2),
                                 TorusPoint::unitary({Rat(1, 2), Rat(1, 2)})};
  auto g2 = generate_ext(spec, trans2, chi2);
  CHECK(g2.size() == 2 * spec.full.size());
  // the twisted swap has order four inside the extended group
  int tw = -1;
  for (int i = 0; i < g2.size(); ++i)
    if (!g2.elements[i].is_translation() && g2.elements[i].linear == swap &&
        !(g2.elements[i].shift == TorusPoint::identity(2)))
      tw = i;
  REQUIRE(tw >= 0);
  int sq = g2.mul(tw, tw);
  CHECK(g2.elements[sq].is_translation());
  CHECK_FALSE(sq == 0);
  CHECK(g2.mul(sq, sq) == 0);
}

TEST_CASE("orbits and stabilizers") {
  auto d = fixtures::datum_a1();
  auto spec = decompose_extended(d, {});

  // inversion action alone: orbit of angle 1/4 is {1/4, 3/4}
  auto g0 = generate_ext(spec, {}, {});
  auto orb = orbit(g0, TorusPoint::unitary({Rat(1, 4)}));
  CHECK(orb.size() == 2);

  // with half translations the orbit of 1/2 is {0-shifted pair}
  auto g = generate_ext(spec, half_translations_rank1(), {});
  auto orb2 = orbit(g, TorusPoint::unitary({Rat(1, 2)}));
  CHECK(orb2.size() == 2); // {1/2, 0}
  for (int i = 0; i < g.size(); ++i) {
    // orbit size times stabilizer size equals the group order
    TorusPoint pts[] = {TorusPoint::unitary({Rat(1, 4)}), TorusPoint::unitary({Rat(1, 2)}),
                        TorusPoint::identity(1)};
    for (auto& u : pts)
      CHECK(orbit(g, u).size() * stabilizer(g, u).size() == std::size_t(g.size()));
  }

  // identity point with trivial data: whole group stabilizes
  CHECK(stabilizer(g0, TorusPoint::identity(1)).size() == std::size_t(g0.size()));
}

TEST_CASE("omega lifts") {
  auto d = fixtures::datum_a1();
  auto spec = decompose_extended(d, {});

  // trivial translations: omega is the identity on the stabilizer
  auto g0 = generate_ext(spec, {}, {});
  auto iso0 = omega_iso(g0, TorusPoint::identity(1));
  CHECK(iso0.linear_elements.size() == 2);
  for (std::size_t i = 0; i < iso0.images.size(); ++i)
    CHECK(g0.elements[iso0.images[i]].is_translation() ==
          (spec.full.elements[iso0.linear_elements[i]].length == 0));

  // with half translations at u = 1/4: s lifts with shift 1/2
  auto g = generate_ext(spec, half_translations_rank1(), {});
  TorusPoint u = TorusPoint::unitary({Rat(1, 4)});
  auto iso = omega_iso(g, u);
  CHECK(iso.linear_elements.size() == 2); // both elements of W stabilize mod translations
  int s_full = -1;
  for (int i = 0; i < spec.full.size(); ++i)
    if (spec.full.elements[i].length == 1) s_full = i;
  auto lift = omega_lift(g, u, s_full);
  CHECK(lift.shift == TorusPoint::unitary({Rat(1, 2)}));
  CHECK(lift(u) == u);

  // a point moved off its coset has no lift: angle 1/8 under inversion
  TorusPoint v = TorusPoint::unitary({Rat(1, 8)});
  CHECK_THROWS_WITH(omega_lift(g, v, s_full), Catch::Matchers::StartsWith("NoSuchLift"));
}

TEST_CASE("omega lifts with twisted shifts") {
  // the swap carrying chi = (1/2, 1/2): consistent with the trivial
  // translation subgroup since swap(chi) chi = 0
  auto d = fixtures::datum_a1a1();
  IntMat swap{{0, 1}, {1, 0}};
  auto spec = decompose_extended(d, {swap});
  int swap_idx = -1;
  for (int r : spec.r_part)
    if (r != 0) swap_idx = r;
  std::map<int, TorusPoint> chi{{swap_idx, TorusPoint::unitary({Rat(1, 2), Rat(1, 2)})}};
  auto g = generate_ext(spec, {}, chi);
  CHECK(g.size() == spec.full.size());

  // (3/4, 1/4) is fixed by the twisted swap outright
  TorusPoint u = TorusPoint::unitary({Rat(3, 4), Rat(1, 4)});
  auto iso = omega_iso(g, u);
  bool swap_lifts = false;
  for (std::size_t i = 0; i < iso.linear_elements.size(); ++i)
    if (iso.linear_elements[i] == swap_idx) {
      swap_lifts = true;
      CHECK(g.elements[iso.images[i]](u) == u);
    }
  CHECK(swap_lifts);
  CHECK(stabilizer(g, u).size() == 2);
  CHECK(orbit(g, u).size() * stabilizer(g, u).size() == std::size_t(g.size()));
  // the plain Weyl reflections do not stabilize u even modulo the
  // (trivial) translations
  for (std::size_t i = 0; i < iso.linear_elements.size(); ++i)
    CHECK((iso.linear_elements[i] == 0 || iso.linear_elements[i] == swap_idx));
}
