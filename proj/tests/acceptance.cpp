// Acceptance suite: one check per shipped criterion, each printed as a
// single pass/fail line with its runtime. Exit code 0 only if every
// criterion passes.

#include "heckeforge/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>

using namespace heckeforge;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string detail;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs > budget_seconds) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("over time budget");
  }
  std::printf("criterion %2d [%s] %s (%.2fs)%s%s\n", number, ok ? "pass" : "FAIL", label.c_str(),
              secs, detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

std::string repo_root() {
  const char* env = std::getenv("HECKEFORGE_ROOT");
  return env ? env : ".";
}

Config fixture(const std::string& name) {
  return parse_config_file(repo_root() + "/configs/" + name);
}

AffineHecke<Rat> affine_from(const Config& cfg) {
  auto m = build_model(cfg);
  return AffineHecke<Rat>(m.datum, m.params, m.ext, m.cocycle);
}

HeckeElement<Rat> random_sparse(const AffineHecke<Rat>& alg, std::mt19937_64& rng) {
  HeckeElement<Rat> e;
  for (int t = 0; t < 3; ++t) {
    LaurentPoly<Rat> p(alg.datum.rank);
    for (int i = 0; i < 2; ++i) {
      LatticeVector ex(std::vector<long long>(alg.datum.rank, 0));
      for (int j = 0; j < alg.datum.rank; ++j) ex.c[j] = (long long)(rng() % 5) - 2;
      p.add_term(ex, Rat((long)(rng() % 9) - 4));
    }
    e.add(int(rng() % alg.weyl_size()), int(rng() % alg.r_size()), p);
  }
  return e;
}

TwoCocycle heisenberg() {
  TwoCocycle c = TwoCocycle::trivial(4);
  auto abit = [](int x) { return x == 1 || x == 3; };
  auto bbit = [](int x) { return x == 2 || x == 3; };
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y)
      if (bbit(x) && abit(y)) c.angle[x][y] = Rat(1, 2);
  return c;
}

} // namespace

int main() {
  // 1: the f-function identity over 50 random parameter pairs
  criterion(1, "f_a + f_{-a} + 1 - q q* vanishes for 50 random parameter pairs", 1.0,
            [](std::string&) {
              auto d = fixtures::datum_a1();
              int a = d.basis[0], neg = d.negative_of(a);
              std::mt19937_64 rng(2024);
              for (int t = 0; t < 50; ++t) {
                Rat qs(long(rng() % 99) + 1, long(rng() % 7) + 1);
                if (qs < 1) qs = Rat(1) / qs;
                if (qs > 100) qs = Rat(100);
                Rat q = qs + Rat(long(rng() % 60) + 1, long(rng() % 5) + 1);
                if (q > 100) q = Rat(100);
                auto p = fixtures::params_const(d, q, qs);
                auto f = f_alpha<Rat>(d, p, a);
                auto fneg = f_alpha<Rat>(d, p, neg);
                if (!(f + fneg + RationalFunction<Rat>::constant(1, Rat(1) - q * qs)).is_zero())
                  return false;
              }
              return true;
            });

  // 2: quadratic and braid relations in the rank-2 fixtures
  criterion(2, "quadratic and braid relations hold in A2, B2, G2 with unequal parameters", 5.0,
            [](std::string& detail) {
              for (const char* name : {"a2.cfg", "b2_unequal.cfg", "g2.cfg"}) {
                auto alg = affine_from(fixture(name));
                for (std::size_t s = 0; s < alg.ext.weyl.simple.size(); ++s)
                  if (!quadratic_check(alg, s)) {
                    detail = std::string(name) + " quadratic";
                    return false;
                  }
                auto rep = braid_check(alg);
                if (!rep.all_ok()) {
                  detail = std::string(name) + " braid";
                  return false;
                }
              }
              return true;
            });

  // 3: associativity over 200 random sparse triples per fixture
  criterion(3, "normal-form multiplication is associative on 200 sparse triples per fixture", 60.0,
            [](std::string& detail) {
              std::mt19937_64 rng(20240810);
              for (const char* name : {"a1_unequal.cfg", "a2.cfg", "b2_unequal.cfg", "a1a1_swap.cfg"}) {
                auto alg = affine_from(fixture(name));
                for (int t = 0; t < 200; ++t) {
                  auto a = random_sparse(alg, rng);
                  auto b = random_sparse(alg, rng);
                  auto c = random_sparse(alg, rng);
                  if (!(alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c)))) {
                    detail = name;
                    return false;
                  }
                }
              }
              return true;
            });

  // 4: the intertwiner identities in every fixture
  criterion(4, "tau^2 = 1 and tau b = (s.b) tau as exact fraction identities", 30.0,
            [](std::string& detail) {
              for (const char* name :
                   {"a1_unequal.cfg", "a2.cfg", "b2_unequal.cfg", "g2.cfg", "a1a1_swap.cfg"}) {
                auto alg = affine_from(fixture(name));
                for (std::size_t s = 0; s < alg.ext.weyl.simple.size(); ++s) {
                  auto tau = intertwiner_tau(alg, s);
                  if (!(alg.multiply(tau.tau, tau.tau) == alg.localize(alg.one()))) {
                    detail = std::string(name) + " involution";
                    return false;
                  }
                  int root = alg.datum.basis[s];
                  LocalizedElement<Rat> b, sb;
                  b.add(0, 0, RationalFunction<Rat>(x_alpha<Rat>(alg.datum, root)));
                  sb.add(0, 0,
                         RationalFunction<Rat>(x_alpha<Rat>(alg.datum, root).acted(alg.s_transform(s))));
                  if (!(alg.multiply(tau.tau, b) == alg.multiply(sb, tau.tau))) {
                    detail = std::string(name) + " commutation";
                    return false;
                  }
                }
              }
              return true;
            });

  // 5: centre membership for invariants up to degree 3
  criterion(5, "symmetrized monomials up to degree 3 are central; X_alpha is not", 60.0,
            [](std::string& detail) {
              for (const char* name : {"a1_unequal.cfg", "b2_unequal.cfg", "a1a1_swap.cfg"}) {
                auto alg = affine_from(fixture(name));
                std::vector<long long> e(std::size_t(alg.datum.rank), 0);
                bool ok = true;
                std::function<void(std::size_t)> iter = [&](std::size_t i) {
                  if (!ok) return;
                  if (i == e.size()) {
                    long long total = 0;
                    for (auto x : e) total += std::abs(x);
                    if (total == 0 || total > 3) return;
                    LaurentPoly<Rat> z(alg.datum.rank);
                    for (auto& el : alg.ext.full.elements)
                      z.add_term(apply_matrix(el.matrix, LatticeVector(e)), Rat(1));
                    if (!z.is_zero() && !center_check(alg, z)) ok = false;
                    return;
                  }
                  for (long long v = -3; v <= 3; ++v) {
                    e[i] = v;
                    iter(i + 1);
                  }
                  e[i] = 0;
                };
                iter(0);
                if (!ok) {
                  detail = std::string(name) + " invariant rejected";
                  return false;
                }
                if (center_check(alg, x_alpha<Rat>(alg.datum, alg.datum.basis[0]))) {
                  detail = std::string(name) + " X_alpha accepted";
                  return false;
                }
              }
              return true;
            });

  // 6: extended-quotient counting against the crossed-product oracle
  criterion(6, "extended quotient counting matches the crossed product on 6 configurations", 30.0,
            [](std::string& detail) {
              auto d = fixtures::datum_a1();
              auto spec = decompose_extended(d, {});
              auto g = generate_ext(spec, {}, {});
              struct Case {
                long n;
                std::size_t expect;
              };
              for (auto [n, expect] : {Case{4, 5}, Case{2, 4}, Case{3, 3}, Case{5, 4}}) {
                auto eq = extended_quotient(g, n, TwoCocycle::trivial(g.size()), 42);
                auto cp = crossed_product_count(g, n, TwoCocycle::trivial(g.size()), 42);
                std::size_t dimsum = 0, alg_dim = std::size_t(n) * 2;
                for (auto& pt : eq.points)
                  for (auto dd : pt.irrep_dims) dimsum += pt.orbit_size * dd * pt.orbit_size * dd;
                if (eq.total_irreps != expect || cp.count != expect || dimsum != alg_dim) {
                  detail = "rank-1 S2 level " + std::to_string(n);
                  return false;
                }
              }
              // with the half translation adjoined, order-4 group
              auto g4 = generate_ext(spec, {TorusPoint::identity(1), TorusPoint::unitary({Rat(1, 2)})}, {});
              auto eq4 = extended_quotient(g4, 4, TwoCocycle::trivial(g4.size()), 42);
              auto cp4 = crossed_product_count(g4, 4, TwoCocycle::trivial(g4.size()), 42);
              if (eq4.total_irreps != cp4.count) {
                detail = "translation case";
                return false;
              }
              // nontrivial cocycle case through the swap fixture
              auto m = build_model(fixture("a1a1_swap.cfg"));
              auto eqs = extended_quotient(m.ext_group, 2, m.group_cocycle, 42);
              auto cps = crossed_product_count(m.ext_group, 2, m.group_cocycle, 42);
              std::size_t dimsum = 0;
              for (auto& pt : eqs.points)
                for (auto dd : pt.irrep_dims) dimsum += pt.orbit_size * dd * pt.orbit_size * dd;
              if (eqs.total_irreps != cps.count || dimsum != 4 * std::size_t(m.ext_group.size())) {
                detail = "nontrivial cocycle case";
                return false;
              }
              return true;
            });

  // 7: the twisted group algebra of Z/2 x Z/2
  criterion(7, "Heisenberg cocycle on Z/2 x Z/2 gives one 2-dimensional irreducible", 10.0,
            [](std::string& detail) {
              auto g = GroupTable::product(GroupTable::cyclic(2), GroupTable::cyclic(2));
              auto h = heisenberg();
              auto irr = twisted_irreps(g, h, 42);
              if (irr.dims != std::vector<std::size_t>{2}) {
                detail = "dims";
                return false;
              }
              std::size_t sq = 0;
              for (auto dd : irr.dims) sq += dd * dd;
              if (sq != 4) {
                detail = "sum of squares";
                return false;
              }
              if (cohomologous(g, h, TwoCocycle::trivial(4)).has_value()) {
                detail = "cohomologous failed to separate";
                return false;
              }
              if (!cohomologous(g, h, h).has_value()) {
                detail = "reflexivity";
                return false;
              }
              return true;
            });

  // 8: the Steinberg correspondence in exact log-q units
  criterion(8, "graded Steinberg maps to the affine T -> -1 point with |X_alpha| = 1/q", 10.0,
            [](std::string& detail) {
              auto cfg = fixture("a1_unequal.cfg");
              auto m = build_model(cfg);
              AffineHecke<Rat> alg(m.datum, m.params, m.ext, m.cocycle);
              TorusPoint u = TorusPoint::identity(1);
              // graded side at u: k in log-qF units
              auto kv = k_from_params(m.datum, m.params, u, m.datum.basis[0], cfg.base_qF);
              Rat k = kv.log_qF.value();
              auto dg = fixtures::graded_from_datum(m.datum);
              auto gg = build_graded_group(dg, {});
              GradedHecke galg(dg, gg, std::vector<Rat>(2, k), TwoCocycle::trivial(1));
              auto mod = principal_series(galg, {-k});
              auto factors = decompose_numeric(mod, 42);
              if (factors.size() != 2) {
                detail = "factor count";
                return false;
              }
              RatVec steinberg_weight;
              bool found = false;
              for (auto& f : factors)
                if (f.dim == 1 && std::abs(f.n_traces[1] - std::complex<double>(-1, 0)) < 1e-8) {
                  steinberg_weight = f.weights[0].first;
                  found = true;
                }
              if (!found) {
                detail = "no N_s = -1 factor";
                return false;
              }
              std::vector<RatVec> basis{RatVec{Rat(2)}};
              auto ws = WeightSet::graded({steinberg_weight}, basis, 1);
              if (!is_discrete_series(ws)) {
                detail = "not discrete series";
                return false;
              }
              // transport and compare with the affine one-dimensional solution
              auto chi = phi_u_weight(u, steinberg_weight);
              auto val = monomial_eval(m.datum.coroots[m.datum.basis[0]], chi);
              auto fams = one_dim_modules(alg);
              for (auto& fam : fams)
                if (fam.t_value[0] == Rat(-1)) {
                  auto e = rational_log_base(fam.x_values[0][0], *cfg.base_qF);
                  if (!e || *e != val.logmag || val.angle != 0) {
                    detail = "log-q mismatch";
                    return false;
                  }
                  return true;
                }
              detail = "no Steinberg family";
              return false;
            });

  // 9: counts agree between parameter k and parameter 0
  criterion(9, "k -> 0 comparison: equal counts and tempered counts (A1 family, A2 spot check)",
            60.0, [](std::string& detail) {
              // A1 with k = 2 over the closed family {generic, k, 0}
              auto d = fixtures::graded_from_datum(fixtures::datum_a1());
              auto g = build_graded_group(d, {});
              GradedHecke alg(d, g, std::vector<Rat>(2, Rat(2)), TwoCocycle::trivial(1));
              auto rep = zeta_count_compare(alg, {RatVec{Rat(7, 3)}, RatVec{Rat(2)}, RatVec{Rat(0)}}, 42);
              if (!rep.counts_equal || !rep.tempered_equal) {
                detail = "A1 family";
                return false;
              }
              if (rep.at_k.irreducibles != 4 || rep.at_k.tempered != 2) {
                detail = "A1 frozen counts";
                return false;
              }
              // A2 at the alpha-wall character paired with its shadow
              auto d2 = fixtures::graded_from_datum(fixtures::datum_a2());
              auto g2 = build_graded_group(d2, {});
              GradedHecke alg2(d2, g2, std::vector<Rat>(6, Rat(1)), TwoCocycle::trivial(1));
              auto rep2 = zeta_count_compare(
                  alg2, {RatVec{Rat(1), Rat(7, 2)}, RatVec{Rat(0), Rat(4)}}, 42);
              if (!rep2.counts_equal || !rep2.tempered_equal) {
                detail = "A2 spot check";
                return false;
              }
              if (rep2.at_k.irreducibles != 3) {
                detail = "A2 frozen counts";
                return false;
              }
              return true;
            });

  // 10: the parameter maps
  criterion(10, "lambda labels (3,1) for (qF^2, qF) and the k dichotomy at X = +-1", 5.0,
            [](std::string& detail) {
              auto d = fixtures::datum_a1();
              auto p = fixtures::params_const(d, Rat(4), Rat(2));
              auto [l, ls] = lambda_from_q(p, d.basis[0], Rat(2));
              if (l != Rat(3) || ls != Rat(1)) {
                detail = "labels";
                return false;
              }
              auto k1 = k_from_params(d, p, TorusPoint::identity(1), d.basis[0]);
              auto km = k_from_params(d, p, TorusPoint::unitary({Rat(1, 2)}), d.basis[0]);
              if (k1.q_value != Rat(4) || km.q_value != Rat(2)) {
                detail = "dichotomy";
                return false;
              }
              try {
                lambda_from_q(fixtures::params_const(d, Rat(4), Rat(3)), d.basis[0], Rat(2));
                detail = "NotAPowerOfBase not raised";
                return false;
              } catch (const Error& e) {
                if (e.kind() != "NotAPowerOfBase") {
                  detail = e.what();
                  return false;
                }
              }
              return true;
            });

  // 11: command determinism
  criterion(11, "every command is byte-identical across two runs with the same seed", 120.0,
            [](std::string& detail) {
              for (const char* name : {"a1_unequal.cfg", "a1a1_swap.cfg", "s2_torsion.cfg"}) {
                auto cfg = fixture(name);
                std::string wline;
                for (int i = 0; i < cfg.rank; ++i) wline += "0 ";
                wline += ";";
                for (int i = 0; i < cfg.rank; ++i) wline += " -1";
                wline += "\n";
                auto pairs = {
                    std::pair<std::string, std::string>{cmd_validate(cfg).text,
                                                        cmd_validate(cfg).text},
                    {cmd_hecke_check(cfg, 9).text, cmd_hecke_check(cfg, 9).text},
                    {cmd_gha_check(cfg, 9).text, cmd_gha_check(cfg, 9).text},
                    {cmd_extended_quotient(cfg, 9).text, cmd_extended_quotient(cfg, 9).text},
                    {cmd_classify(cfg, 9).text, cmd_classify(cfg, 9).text},
                    {cmd_tempered(cfg, wline).text, cmd_tempered(cfg, wline).text}};
                for (auto& [a, b] : pairs)
                  if (a != b) {
                    detail = name;
                    return false;
                  }
                auto j1 = cmd_classify(cfg, 9).doc.dump();
                auto j2 = cmd_classify(cfg, 9).doc.dump();
                if (j1 != j2) {
                  detail = std::string(name) + " json";
                  return false;
                }
              }
              return true;
            });

  if (failures) {
    std::printf("%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
