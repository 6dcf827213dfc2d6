#include "heckeforge/commands.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <fstream>

using namespace heckeforge;

namespace {

std::string repo_root() {
  const char* env = std::getenv("HECKEFORGE_ROOT");
  return env ? env : ".";
}

std::string fixture(const std::string& name) { return repo_root() + "/configs/" + name; }

} // namespace

TEST_CASE("config parsing") {
  auto cfg = parse_config_file(fixture("a1_unequal.cfg"));
  CHECK(cfg.rank == 1);
  CHECK(cfg.simple_coroots.size() == 1);
  CHECK(cfg.orbit_params.size() == 1);
  CHECK(cfg.orbit_params[0][0] == Rat(4));
  CHECK(cfg.base_qF.value() == Rat(2));
  CHECK(cfg.torsion == 4);
  CHECK(cfg.seed == 42);
  CHECK(cfg.chars.size() == 3);

  // malformed entries carry a line locator
  try {
    parse_config_text("[datum]\nrank = 1\nsimple = 1 : x\n", "bad.cfg");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == "ParseError");
    CHECK(std::string(e.what()).find("bad.cfg:3") != std::string::npos);
  }
  CHECK_THROWS_WITH(parse_config_text("rank = 1\n", "k.cfg"),
                    Catch::Matchers::ContainsSubstring("outside of any section"));
  CHECK_THROWS_WITH(parse_config_text("[datum]\nrank 1\n", "k.cfg"),
                    Catch::Matchers::ContainsSubstring("k.cfg:2"));
}

TEST_CASE("validate command outcomes") {
  auto ok = cmd_validate(parse_config_file(fixture("a1_unequal.cfg")));
  CHECK(ok.status == 0);
  CHECK(ok.doc["checks"].size() >= 7);

  auto bad = cmd_validate(parse_config_file(fixture("tampered.cfg")));
  CHECK(bad.status == 1);
  bool parameter_order_failed = false;
  for (auto& c : bad.doc["checks"])
    if (c["id"] == "parameter-order" && c["ok"] == false) parameter_order_failed = true;
  CHECK(parameter_order_failed);
}

TEST_CASE("check suites pass on the shipped fixtures") {
  for (const char* name : {"a1_unequal.cfg", "b2_unequal.cfg", "a1a1_swap.cfg"}) {
    auto cfg = parse_config_file(fixture(name));
    auto res = cmd_hecke_check(cfg, cfg.seed);
    INFO(name);
    CHECK(res.status == 0);
  }
  auto g2 = cmd_hecke_check(parse_config_file(fixture("g2.cfg")), 42);
  CHECK(g2.status == 0);
  bool saw_order6 = false;
  for (auto& c : g2.doc["checks"])
    if (c["id"] == "braid-relation" &&
        std::string(c["detail"]).find("order 6") != std::string::npos)
      saw_order6 = c["ok"];
  CHECK(saw_order6);

  auto gha = cmd_gha_check(parse_config_file(fixture("a1_unequal.cfg")), 42);
  CHECK(gha.status == 0);
  auto gha2 = cmd_gha_check(parse_config_file(fixture("a1a1_swap.cfg")), 42);
  CHECK(gha2.status == 0);
}

TEST_CASE("extended quotient command") {
  auto cfg = parse_config_file(fixture("s2_torsion.cfg"));
  auto res = cmd_extended_quotient(cfg, cfg.seed);
  CHECK(res.status == 0);
  CHECK(res.doc["total"] == 5);
  CHECK(res.doc["crossed_product_count"] == 5);
  cfg.torsion = 2;
  auto res2 = cmd_extended_quotient(cfg, cfg.seed);
  CHECK(res2.doc["total"] == 4);
}

TEST_CASE("classify command") {
  auto cfg = parse_config_file(fixture("a1_unequal.cfg"));
  auto res = cmd_classify(cfg, cfg.seed);
  CHECK(res.status == 0);
  REQUIRE(res.doc["characters"].size() == 3);
  // char (2) splits into the Steinberg line and the non-tempered quotient
  auto& wall = res.doc["characters"][0];
  REQUIRE(wall["factors"].size() == 2);
  int ds = 0, nontemp = 0;
  for (auto& f : wall["factors"]) {
    if (f["discrete_series"] == true) ++ds;
    if (f["tempered"] == false) ++nontemp;
  }
  CHECK(ds == 1);
  CHECK(nontemp == 1);
}

TEST_CASE("tempered command") {
  auto cfg = parse_config_file(fixture("a1_unequal.cfg"));
  auto res = cmd_tempered(cfg, "1/3 ; 0\n0 ; -2\ngraded 2\n");
  CHECK(res.status == 0);
  REQUIRE(res.doc["weights"].size() == 3);
  CHECK(res.doc["weights"][0]["tempered"] == true);
  CHECK(res.doc["weights"][1]["discrete_series"] == true);
  CHECK(res.doc["weights"][2]["tempered"] == false);
}

TEST_CASE("reports are byte-identical for identical config and seed") {
  for (const char* name : {"a1_unequal.cfg", "a1a1_swap.cfg", "s2_torsion.cfg"}) {
    auto cfg = parse_config_file(fixture(name));
    auto a = cmd_validate(cfg);
    auto b = cmd_validate(cfg);
    CHECK(a.text == b.text);
    CHECK(a.doc.dump() == b.doc.dump());
    auto h1 = cmd_hecke_check(cfg, 7), h2 = cmd_hecke_check(cfg, 7);
    CHECK(h1.text == h2.text);
    CHECK(h1.doc.dump() == h2.doc.dump());
    auto q1 = cmd_extended_quotient(cfg, 7), q2 = cmd_extended_quotient(cfg, 7);
    CHECK(q1.text == q2.text);
    CHECK(q1.doc.dump() == q2.doc.dump());
    auto c1 = cmd_classify(cfg, 7), c2 = cmd_classify(cfg, 7);
    CHECK(c1.text == c2.text);
    CHECK(c1.doc.dump() == c2.doc.dump());
  }
}
