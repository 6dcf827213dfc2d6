// The command layer behind the CLI: each command runs a battery of checks
// or a computation over a parsed config and produces a human-readable
// report plus a machine-readable JSON document. Identical inputs and
// seeds produce byte-identical output.

#pragma once

#include "heckeforge/config.hpp"
#include "heckeforge/decompose.hpp"
#include "heckeforge/spectral.hpp"

#include <json.hpp>

#include <random>
#include <sstream>

namespace heckeforge {

using Json = nlohmann::json;

struct CommandResult {
  std::string text;
  Json doc;
  int status = 0; // 0 pass, 1 check failure, 2 input error
};

namespace detail_cmd {

constexpr const char* kSchemaVersion = "1";

struct Reporter {
  std::ostringstream text;
  Json checks = Json::array();
  bool all_ok = true;

  void check(const std::string& id, bool ok, const std::string& detail = "") {
    text << (ok ? "[ok]   " : "[FAIL] ") << id;
    if (!detail.empty()) text << ": " << detail;
    text << "\n";
    checks.push_back({{"id", id}, {"ok", ok}, {"detail", detail}});
    all_ok = all_ok && ok;
  }
  void note(const std::string& line) { text << line << "\n"; }
};

inline std::string vec_str(const RatVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + rat_str(v[i]);
  return s + ")";
}

inline Json vec_json(const RatVec& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(rat_str(x));
  return a;
}

inline Json point_json(const TorusPoint& p) {
  Json a = Json::array(), m = Json::array();
  for (auto& x : p.angle) a.push_back(rat_str(x));
  for (auto& x : p.logmag) m.push_back(rat_str(x));
  return {{"angle", a}, {"logmag", m}};
}

inline HeckeElement<Rat> random_sparse(const AffineHecke<Rat>& alg, std::mt19937_64& rng) {
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

// the graded side attached to a unitary point of the torus
struct PointModel {
  PointSubsystem sub;
  DegenerateRootDatum datum;
  GradedGroup group;
  std::vector<Rat> k_logqF;
  std::optional<GradedHecke> algebra;
  std::vector<std::string> notes;
};

inline PointModel graded_at_point(const Model& m, const TorusPoint& u) {
  PointModel pm;
  pm.sub = subsystem_at_point(m.datum, m.ext, m.params, u);
  pm.datum.dim = std::size_t(m.datum.rank);
  for (int i : pm.sub.roots) {
    RatVec h(pm.datum.dim), a(pm.datum.dim);
    for (std::size_t t = 0; t < pm.datum.dim; ++t) {
      h[t] = m.datum.coroots[std::size_t(i)].c[t];
      a[t] = m.datum.roots[std::size_t(i)].c[t];
    }
    pm.datum.coroots.push_back(std::move(h));
    pm.datum.roots.push_back(std::move(a));
  }
  for (int b : pm.sub.sub_basis) {
    auto it = std::find(pm.sub.roots.begin(), pm.sub.roots.end(), b);
    pm.datum.basis.push_back(int(it - pm.sub.roots.begin()));
  }
  // extra generators: stabilizer R-part matrices
  std::vector<RatMat> extra;
  for (int rf : pm.sub.r_part) {
    if (rf == 0) continue;
    extra.push_back(to_rat(m.ext.full.elements[std::size_t(rf)].matrix));
  }
  pm.group = build_graded_group(pm.datum, extra, m.cfg.cap);
  // k in log-qF units
  if (!m.cfg.base_qF) {
    pm.notes.push_back("no base_qF configured; graded parameters unavailable");
    return pm;
  }
  for (std::size_t i = 0; i < pm.sub.roots.size(); ++i) {
    auto kv = k_from_params(m.datum, m.params, u, pm.sub.roots[i], m.cfg.base_qF);
    pm.k_logqF.push_back(kv.log_qF.value());
  }
  // cocycle: restrict the configured R cocycle when the graded R part
  // matches elements of R(O); otherwise fall back to trivial
  TwoCocycle gc = TwoCocycle::trivial(int(pm.group.r_elems.size()));
  std::vector<int> match(pm.group.r_elems.size(), -1);
  bool all_matched = true;
  for (std::size_t i = 0; i < pm.group.r_elems.size(); ++i) {
    const RatMat& mat = pm.group.mats[std::size_t(pm.group.r_elems[i])];
    for (std::size_t rp = 0; rp < m.ext.r_part.size(); ++rp)
      if (to_rat(m.ext.full.elements[std::size_t(m.ext.r_part[rp])].matrix) == mat) match[i] = int(rp);
    if (match[i] < 0) all_matched = false;
  }
  if (all_matched) {
    for (std::size_t i = 0; i < match.size(); ++i)
      for (std::size_t j = 0; j < match.size(); ++j)
        gc.angle[i][j] = m.cocycle(match[i], match[j]);
  } else if (!m.cocycle.is_trivial()) {
    pm.notes.push_back("point R-group does not embed into R(O); using the trivial cocycle");
  }
  pm.algebra.emplace(pm.datum, pm.group, pm.k_logqF, gc);
  return pm;
}

} // namespace detail_cmd

// ---- validate ----

inline CommandResult cmd_validate(const Config& cfg) {
  using namespace detail_cmd;
  Reporter rep;
  CommandResult out;
  out.doc["schema_version"] = kSchemaVersion;
  out.doc["command"] = "validate";
  out.doc["config"] = cfg.source;

  Model m;
  try {
    m.datum = fixtures::generate_datum(cfg.simple_coroots, cfg.simple_roots);
    rep.check("root-datum", true,
              std::to_string(m.datum.num_roots()) + " roots, rank " + std::to_string(m.datum.rank));
  } catch (const Error& e) {
    rep.check("root-datum", false, e.what());
    out.text = rep.text.str();
    out.doc["checks"] = rep.checks;
    out.status = 2;
    return out;
  }
  auto run_check = [&](const char* id, auto&& fn) {
    try {
      std::string detail = fn();
      rep.check(id, true, detail);
      return true;
    } catch (const Error& e) {
      rep.check(id, false, e.what());
      return false;
    }
  };
  bool structural = true;
  structural &= run_check("weyl-generation", [&] {
    auto w = generate_weyl(m.datum, cfg.cap);
    return "order " + std::to_string(w.size());
  });
  structural &= run_check("extended-decomposition", [&] {
    m.ext = decompose_extended(m.datum, cfg.rgens, cfg.cap);
    return "|R| = " + std::to_string(m.ext.r_part.size()) +
           ", |W| = " + std::to_string(m.ext.weyl.size());
  });
  if (!structural) {
    out.text = rep.text.str();
    out.doc["checks"] = rep.checks;
    out.status = 2;
    return out;
  }
  run_check("parameter-order", [&] {
    m.params = fixtures::params_orbitwise(m.datum, m.ext.full, cfg.orbit_params);
    validate_params(m.datum, m.ext, m.params);
    return std::string("q >= q* >= 1 on every orbit");
  });
  run_check("parity-even-pairing", [&] {
    auto p = fixtures::params_orbitwise(m.datum, m.ext.full, cfg.orbit_params);
    validate_parity(m.datum, p);
    return std::string("even pairings wherever q* > 1");
  });
  run_check("cocycle-identity", [&] {
    m.cocycle = TwoCocycle::trivial(int(m.ext.r_part.size()));
    for (auto& [i, j, a] : cfg.cocycle_values) {
      if (i < 0 || j < 0 || i >= int(m.ext.r_part.size()) || j >= int(m.ext.r_part.size()))
        throw Error("ParseError", "cocycle index outside the R part");
      m.cocycle.angle[std::size_t(i)][std::size_t(j)] = mod1(a);
    }
    GroupTable rt;
    int n = int(m.ext.r_part.size());
    std::map<int, int> pos;
    for (int i2 = 0; i2 < n; ++i2) pos[m.ext.r_part[std::size_t(i2)]] = i2;
    rt.mul.assign(n, std::vector<int>(n));
    rt.inv.assign(n, 0);
    for (int i2 = 0; i2 < n; ++i2)
      for (int j2 = 0; j2 < n; ++j2)
        rt.mul[std::size_t(i2)][std::size_t(j2)] =
            pos.at(m.ext.full.mul(m.ext.r_part[std::size_t(i2)], m.ext.r_part[std::size_t(j2)]));
    for (int i2 = 0; i2 < n; ++i2)
      for (int j2 = 0; j2 < n; ++j2)
        if (rt.mul[std::size_t(i2)][std::size_t(j2)] == 0) rt.inv[std::size_t(i2)] = j2;
    validate_cocycle(rt, m.cocycle);
    return std::string("identity holds on R^3 and the normalization at 1");
  });
  run_check("translation-subgroup", [&] {
    auto t = cfg.translations;
    if (t.empty()) t.push_back(TorusPoint::identity(std::size_t(m.datum.rank)));
    check_translation_group(t);
    return std::to_string(t.size()) + " translations";
  });
  run_check("chi-compatibility", [&] {
    std::map<int, TorusPoint> chi;
    for (auto& [pos2, pt] : cfg.chi_r) {
      if (pos2 < 0 || pos2 >= int(m.ext.r_part.size()))
        throw Error("ParseError", "chi_r position outside the R part");
      chi[m.ext.r_part[std::size_t(pos2)]] = pt;
    }
    auto g = generate_ext(m.ext, cfg.translations, chi);
    return "extended group of order " + std::to_string(g.size());
  });

  out.text = rep.text.str();
  out.doc["checks"] = rep.checks;
  out.status = rep.all_ok ? 0 : 1;
  return out;
}

// ---- hecke-check ----

inline CommandResult cmd_hecke_check(const Config& cfg, std::uint64_t seed) {
  using namespace detail_cmd;
  Reporter rep;
  CommandResult out;
  out.doc["schema_version"] = kSchemaVersion;
  out.doc["command"] = "hecke-check";
  out.doc["config"] = cfg.source;
  out.doc["seed"] = seed;

  auto m = build_model(cfg);
  AffineHecke<Rat> alg(m.datum, m.params, m.ext, m.cocycle);

  bool quad = true;
  for (std::size_t s = 0; s < alg.ext.weyl.simple.size(); ++s) quad &= quadratic_check(alg, s);
  rep.check("quadratic-relation", quad);

  auto braid = braid_check(alg);
  for (auto& p : braid.pairs)
    rep.check("braid-relation", p.ok,
              "pair (" + std::to_string(p.i) + "," + std::to_string(p.j) + ") order " +
                  std::to_string(p.order));

  bool commute = true;
  for (std::size_t s = 0; s < alg.ext.weyl.simple.size(); ++s) {
    int root = alg.datum.basis[s];
    auto theta = alg.from_poly(x_alpha<Rat>(alg.datum, root));
    auto t = alg.t_simple(s);
    auto lhs = alg.multiply(theta, t);
    auto blterm = twisted_divide(alg.datum, alg.params, root, x_alpha<Rat>(alg.datum, root));
    auto rhs = alg.multiply(t, alg.from_poly(LaurentPoly<Rat>::monomial(-alg.datum.coroots[root], Rat(1)))) +
               alg.from_poly(blterm);
    commute &= lhs == rhs;
  }
  rep.check("commutation-rule", commute);

  std::mt19937_64 rng(seed);
  bool assoc = true;
  for (int t = 0; t < 25 && assoc; ++t) {
    auto a = random_sparse(alg, rng);
    auto b = random_sparse(alg, rng);
    auto c = random_sparse(alg, rng);
    assoc &= alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c));
  }
  rep.check("associativity", assoc, "25 seeded sparse triples");

  bool tau_ok = true, tau_comm = true;
  for (std::size_t s = 0; s < alg.ext.weyl.simple.size(); ++s) {
    auto tau = intertwiner_tau(alg, s);
    tau_ok &= alg.multiply(tau.tau, tau.tau) == alg.localize(alg.one());
    int root = alg.datum.basis[s];
    LocalizedElement<Rat> b, sb;
    b.add(0, 0, RationalFunction<Rat>(x_alpha<Rat>(alg.datum, root)));
    sb.add(0, 0, RationalFunction<Rat>(x_alpha<Rat>(alg.datum, root).acted(alg.s_transform(s))));
    tau_comm &= alg.multiply(tau.tau, b) == alg.multiply(sb, tau.tau);
  }
  rep.check("intertwiner-involution", tau_ok);
  rep.check("intertwiner-commutation", tau_comm);

  bool centre = true, centre_neg = true;
  {
    // symmetrized monomials up to degree 2 are central
    std::vector<long long> e(std::size_t(alg.datum.rank), 0);
    std::function<void(std::size_t)> iter = [&](std::size_t i) {
      if (i == e.size()) {
        long long total = 0;
        for (auto x : e) total += std::abs(x);
        if (total == 0 || total > 2) return;
        LaurentPoly<Rat> z(alg.datum.rank);
        for (auto& el : alg.ext.full.elements)
          z.add_term(apply_matrix(el.matrix, LatticeVector(e)), Rat(1));
        if (!z.is_zero()) centre &= center_check(alg, z);
        return;
      }
      for (long long v = -2; v <= 2; ++v) {
        e[i] = v;
        iter(i + 1);
      }
      e[i] = 0;
    };
    iter(0);
    centre_neg = !center_check(alg, x_alpha<Rat>(alg.datum, alg.datum.basis[0]));
  }
  rep.check("centre-invariants", centre, "symmetrized monomials up to degree 2");
  rep.check("centre-noninvariant-rejected", centre_neg, "X_alpha alone is not central");

  out.text = rep.text.str();
  out.doc["checks"] = rep.checks;
  out.status = rep.all_ok ? 0 : 1;
  return out;
}

// ---- gha-check ----

inline CommandResult cmd_gha_check(const Config& cfg, std::uint64_t seed) {
  using namespace detail_cmd;
  Reporter rep;
  CommandResult out;
  out.doc["schema_version"] = kSchemaVersion;
  out.doc["command"] = "gha-check";
  out.doc["config"] = cfg.source;
  out.doc["seed"] = seed;

  auto m = build_model(cfg);
  TorusPoint u = cfg.point ? *cfg.point : TorusPoint::identity(std::size_t(m.datum.rank));
  auto pm = graded_at_point(m, u);
  for (auto& n : pm.notes) rep.note("note: " + n);
  if (!pm.algebra) {
    rep.check("graded-algebra", false, "graded algebra unavailable (missing base_qF)");
    out.text = rep.text.str();
    out.doc["checks"] = rep.checks;
    out.status = 2;
    return out;
  }
  auto& alg = *pm.algebra;
  rep.check("graded-algebra", true,
            "subsystem of " + std::to_string(pm.sub.roots.size()) + " roots, group order " +
                std::to_string(alg.group.size()));

  // defining relations on sample polynomials
  std::mt19937_64 rng(seed);
  auto rnd_poly = [&] {
    Poly p(alg.datum.dim);
    for (int t = 0; t < 3; ++t) {
      Poly::expo e(alg.datum.dim, 0);
      for (auto& x : e) x = int(rng() % 3);
      p.add_term(e, Rat((long)(rng() % 9) - 4));
    }
    return p;
  };
  bool rel = true;
  for (std::size_t s = 0; s < alg.group.simple.size(); ++s) {
    int root = alg.datum.basis[s];
    for (int t = 0; t < 5; ++t) {
      Poly f = rnd_poly();
      auto lhs = alg.multiply(alg.from_poly(f), alg.n_basis(alg.group.simple[s])) -
                 alg.multiply(alg.n_basis(alg.group.simple[s]),
                              alg.from_poly(f.substituted(alg.group.mats[alg.group.simple[s]])));
      rel &= lhs == alg.from_poly(alg.delta(s, f).scaled(alg.k[root]));
    }
  }
  rep.check("cross-relation", rel, "f N_s - N_s (s.f) = k (f - s.f)/h on seeded samples");

  bool assoc = true;
  for (int t = 0; t < 25 && assoc; ++t) {
    GradedHecke::Elem a, b, c;
    for (auto* e : {&a, &b, &c})
      for (int i = 0; i < 2; ++i) e->add(int(rng() % alg.group.size()), rnd_poly());
    assoc &= alg.multiply(alg.multiply(a, b), c) == alg.multiply(a, alg.multiply(b, c));
  }
  rep.check("associativity", assoc, "25 seeded triples");

  auto opp = opposite_algebra(alg);
  bool anti = true;
  for (int t = 0; t < 25 && anti; ++t) {
    GradedHecke::Elem a, b;
    for (auto* e : {&a, &b})
      for (int i = 0; i < 2; ++i) e->add(int(rng() % alg.group.size()), rnd_poly());
    anti &= opposite_map(alg, alg.multiply(a, b)) ==
            opp.multiply(opposite_map(alg, b), opposite_map(alg, a));
  }
  rep.check("opposite-anti-homomorphism", anti, "25 seeded pairs");

  // a principal series carries exact matrices satisfying every relation
  bool mod_ok = true;
  std::string mod_note;
  try {
    RatVec lam(alg.datum.dim, Rat(0));
    for (std::size_t i = 0; i < lam.size(); ++i) lam[i] = Rat(long(i) * 2 + 1, 3);
    auto mod = principal_series(alg, lam);
    verify_module(alg, mod);
    mod_note = "dimension " + std::to_string(mod.dim);
  } catch (const Error& e) {
    mod_ok = false;
    mod_note = e.what();
  }
  rep.check("principal-series-relations", mod_ok, mod_note);

  out.text = rep.text.str();
  out.doc["checks"] = rep.checks;
  out.status = rep.all_ok ? 0 : 1;
  return out;
}

// ---- extended-quotient ----

inline CommandResult cmd_extended_quotient(const Config& cfg, std::uint64_t seed) {
  using namespace detail_cmd;
  Reporter rep;
  CommandResult out;
  out.doc["schema_version"] = kSchemaVersion;
  out.doc["command"] = "extended-quotient";
  out.doc["config"] = cfg.source;
  out.doc["seed"] = seed;
  out.doc["torsion"] = cfg.torsion;

  auto m = build_model(cfg);
  auto eq = extended_quotient(m.ext_group, cfg.torsion, m.group_cocycle, seed);
  Json pts = Json::array();
  for (auto& p : eq.points) {
    std::string dims;
    for (auto d : p.irrep_dims) dims += (dims.empty() ? "" : ",") + std::to_string(d);
    rep.note("point " + p.rep.str() + "  orbit " + std::to_string(p.orbit_size) + "  stab " +
             std::to_string(p.stabilizer_size) + "  dims {" + dims + "}");
    Json dj = Json::array();
    for (auto d : p.irrep_dims) dj.push_back(d);
    pts.push_back({{"point", point_json(p.rep)},
                   {"orbit", p.orbit_size},
                   {"stabilizer", p.stabilizer_size},
                   {"dims", dj}});
  }
  out.doc["points"] = pts;
  out.doc["total"] = eq.total_irreps;
  rep.note("total quotient points: " + std::to_string(eq.total_irreps));

  auto cp = crossed_product_count(m.ext_group, cfg.torsion, m.group_cocycle, seed);
  out.doc["crossed_product_count"] = cp.count;
  rep.check("quotient-equals-crossed-product", eq.total_irreps == cp.count,
            std::to_string(eq.total_irreps) + " vs " + std::to_string(cp.count));

  long tsize = 1;
  for (int i = 0; i < m.datum.rank; ++i) tsize *= cfg.torsion;
  std::size_t dimsum = 0;
  for (auto& p : eq.points)
    for (auto d : p.irrep_dims) dimsum += p.orbit_size * d * p.orbit_size * d;
  rep.check("dimension-bookkeeping", dimsum == std::size_t(tsize) * std::size_t(m.ext_group.size()),
            std::to_string(dimsum) + " vs " + std::to_string(tsize * m.ext_group.size()));

  out.text = rep.text.str();
  out.doc["checks"] = rep.checks;
  out.status = rep.all_ok ? 0 : 1;
  return out;
}

// ---- classify ----

inline CommandResult cmd_classify(const Config& cfg, std::uint64_t seed,
                                  std::optional<TorusPoint> point_arg = std::nullopt) {
  using namespace detail_cmd;
  Reporter rep;
  CommandResult out;
  out.doc["schema_version"] = kSchemaVersion;
  out.doc["command"] = "classify";
  out.doc["config"] = cfg.source;
  out.doc["seed"] = seed;

  auto m = build_model(cfg);
  TorusPoint u = point_arg ? *point_arg
                           : (cfg.point ? *cfg.point : TorusPoint::identity(std::size_t(m.datum.rank)));
  if (!u.is_unitary()) throw Error("NonUnitaryPoint", "classification point must be unitary");
  out.doc["point"] = point_json(u);
  rep.note("point u = " + u.str());

  auto pm = graded_at_point(m, u);
  for (auto& n : pm.notes) rep.note("note: " + n);
  rep.note("subsystem roots: " + std::to_string(pm.sub.roots.size()) +
           ", basis: " + std::to_string(pm.sub.sub_basis.size()) +
           ", stabilizer: " + std::to_string(pm.sub.stabilizer.size()) +
           ", R-part: " + std::to_string(pm.sub.r_part.size()));
  out.doc["subsystem_size"] = pm.sub.roots.size();
  out.doc["stabilizer_size"] = pm.sub.stabilizer.size();
  out.doc["r_part_size"] = pm.sub.r_part.size();

  Json kvals = Json::array();
  for (std::size_t i = 0; i < pm.sub.roots.size(); ++i) {
    auto kv = k_from_params(m.datum, m.params, u, pm.sub.roots[i], m.cfg.base_qF);
    Json e = {{"root", pm.sub.roots[i]}, {"q_value", rat_str(kv.q_value)}};
    std::string line = "k at root " + std::to_string(pm.sub.roots[i]) + ": log(" + rat_str(kv.q_value) + ")";
    if (kv.log_qF) {
      e["log_qF"] = rat_str(*kv.log_qF);
      line += " = " + rat_str(*kv.log_qF) + " log qF";
    }
    kvals.push_back(e);
    rep.note(line);
  }
  out.doc["k"] = kvals;

  Json chars = Json::array();
  if (pm.algebra && !cfg.chars.empty()) {
    std::vector<RatVec> basis_roots;
    for (int b : pm.datum.basis) basis_roots.push_back(pm.datum.roots[std::size_t(b)]);
    for (auto& lam : cfg.chars) {
      if (lam.size() != pm.datum.dim) throw Error("RankMismatch", "character has the wrong rank");
      auto mod = principal_series(*pm.algebra, lam);
      verify_module(*pm.algebra, mod);
      auto factors = decompose_numeric(mod, seed);
      Json fj = Json::array();
      rep.note("character " + vec_str(lam) + ": principal series of dimension " +
               std::to_string(mod.dim) + " with " + std::to_string(factors.size()) + " factors");
      for (auto& f : factors) {
        std::vector<RatVec> ws;
        Json wj = Json::array();
        for (auto& [w, mult] : f.weights) {
          for (std::size_t t = 0; t < mult; ++t) ws.push_back(w);
          wj.push_back({{"weight", vec_json(w)}, {"multiplicity", mult}});
        }
        auto gws = WeightSet::graded(ws, basis_roots, pm.datum.dim);
        bool temp = is_tempered(gws), ds = is_discrete_series(gws), eds = is_essentially_ds(gws);
        // transported affine weights
        Json aj = Json::array();
        for (auto& w : ws) aj.push_back(point_json(phi_u_weight(u, w)));
        fj.push_back({{"dim", f.dim},
                      {"weights", wj},
                      {"tempered", temp},
                      {"discrete_series", ds},
                      {"essentially_discrete_series", eds},
                      {"affine_weights", aj}});
        std::string flags = temp ? (ds ? "discrete series" : "tempered") : "not tempered";
        rep.note("  factor dim " + std::to_string(f.dim) + ": " + flags);
      }
      chars.push_back({{"character", vec_json(lam)}, {"factors", fj}});
    }
  } else if (!cfg.chars.empty()) {
    rep.note("note: characters ignored (graded algebra unavailable)");
  }
  out.doc["characters"] = chars;

  out.text = rep.text.str();
  out.doc["checks"] = rep.checks;
  out.status = 0;
  return out;
}

// ---- tempered ----

inline CommandResult cmd_tempered(const Config& cfg, const std::string& weights_text) {
  using namespace detail_cmd;
  Reporter rep;
  CommandResult out;
  out.doc["schema_version"] = kSchemaVersion;
  out.doc["command"] = "tempered";
  out.doc["config"] = cfg.source;

  auto m = build_model(cfg);
  std::vector<RatVec> basis_roots;
  for (int b : m.datum.basis) {
    RatVec v(std::size_t(m.datum.rank));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = m.datum.roots[std::size_t(b)].c[i];
    basis_roots.push_back(std::move(v));
  }

  Json lines = Json::array();
  std::istringstream in(weights_text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto toks = detail_cfg::split_ws(line);
    if (toks.empty()) continue;
    WeightSet ws;
    std::string label;
    if (toks[0] == "graded") {
      std::string rest = line.substr(line.find("graded") + 6);
      auto v = detail_cfg::parse_rat_vec(rest, "<weights>", lineno);
      if (v.size() != std::size_t(m.datum.rank)) throw Error("RankMismatch", "graded weight rank");
      label = "graded " + vec_str(v);
      ws = WeightSet::graded({v}, basis_roots, std::size_t(m.datum.rank));
    } else {
      auto parts = detail_cfg::split_on(line, ';');
      if (parts.size() != 2)
        throw Error("ParseError", "<weights>:" + std::to_string(lineno) + ": expected 'angles ; logmags'");
      TorusPoint p(detail_cfg::parse_rat_vec(parts[0], "<weights>", lineno),
                   detail_cfg::parse_rat_vec(parts[1], "<weights>", lineno));
      if (p.rank() != std::size_t(m.datum.rank)) throw Error("RankMismatch", "affine weight rank");
      label = "affine " + p.str();
      ws = WeightSet::affine({p}, basis_roots, std::size_t(m.datum.rank));
    }
    bool temp = is_tempered(ws), ds = is_discrete_series(ws), eds = is_essentially_ds(ws);
    rep.note(label + ": tempered=" + (temp ? "yes" : "no") + " discrete-series=" + (ds ? "yes" : "no") +
             " essentially-ds=" + (eds ? "yes" : "no"));
    lines.push_back({{"weight", label},
                     {"tempered", temp},
                     {"discrete_series", ds},
                     {"essentially_discrete_series", eds}});
  }
  out.doc["weights"] = lines;
  out.text = rep.text.str();
  out.status = 0;
  return out;
}

} // namespace heckeforge
