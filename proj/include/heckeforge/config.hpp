// Line-oriented sectioned key-value configuration with exact rational
// literals. Every parse error carries a line locator. The parsed blocks
// build the algebra objects for the command layer.

#pragma once

#include "heckeforge/affine_hecke.hpp"
#include "heckeforge/clifford.hpp"
#include "heckeforge/fixtures.hpp"

#include <fstream>
#include <sstream>

namespace heckeforge {

struct Config {
  // [datum]
  int rank = 0;
  std::vector<LatticeVector> simple_coroots;
  std::vector<LatticeVector> simple_roots;
  // [params]
  std::vector<std::array<Rat, 3>> orbit_params; // q, q*, c'
  std::optional<Rat> base_qF;
  // [ext]
  std::vector<IntMat> rgens;
  std::vector<TorusPoint> translations;
  std::map<int, TorusPoint> chi_r; // by full-group element index order among r_part
  // [cocycle]
  std::vector<std::tuple<int, int, Rat>> cocycle_values; // r-position pair -> angle
  // [run]
  long torsion = 2;
  std::uint64_t seed = 1;
  long cap = 100000;
  std::optional<TorusPoint> point;
  std::vector<RatVec> chars;

  std::string source;
};

namespace detail_cfg {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

[[noreturn]] inline void fail(const std::string& file, int line, const std::string& msg) {
  throw Error("ParseError", file + ":" + std::to_string(line) + ": " + msg);
}

inline std::vector<Rat> parse_rat_vec(const std::string& s, const std::string& file, int line) {
  std::vector<Rat> out;
  for (auto& t : split_ws(s)) {
    try {
      out.push_back(parse_rat(t));
    } catch (const Error&) {
      fail(file, line, "bad rational '" + t + "'");
    }
  }
  return out;
}

inline LatticeVector parse_int_vec(const std::string& s, const std::string& file, int line) {
  LatticeVector v;
  for (auto& t : split_ws(s)) {
    try {
      std::size_t pos = 0;
      long long x = std::stoll(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      v.c.push_back(x);
    } catch (const std::exception&) {
      fail(file, line, "bad integer '" + t + "'");
    }
  }
  return v;
}

} // namespace detail_cfg

inline Config parse_config_text(const std::string& text, const std::string& file = "<config>") {
  using namespace detail_cfg;
  Config cfg;
  cfg.source = file;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto tokens = split_ws(line);
    if (tokens.empty()) continue;
    std::string trimmed;
    for (auto& t : tokens) trimmed += (trimmed.empty() ? "" : " ") + t;
    if (trimmed.front() == '[') {
      if (trimmed.back() != ']') fail(file, lineno, "unterminated section header");
      section = trimmed.substr(1, trimmed.size() - 2);
      continue;
    }
    auto eq = trimmed.find('=');
    if (eq == std::string::npos) fail(file, lineno, "expected key = value");
    std::string key = trimmed.substr(0, eq);
    std::string value = trimmed.substr(eq + 1);
    while (!key.empty() && key.back() == ' ') key.pop_back();
    while (!value.empty() && value.front() == ' ') value.erase(value.begin());

    if (section == "datum") {
      if (key == "rank") {
        cfg.rank = int(parse_int_vec(value, file, lineno).c.at(0));
      } else if (key == "simple") {
        auto parts = split_on(value, ':');
        if (parts.size() != 2) fail(file, lineno, "simple needs 'coroot : root'");
        cfg.simple_coroots.push_back(parse_int_vec(parts[0], file, lineno));
        cfg.simple_roots.push_back(parse_int_vec(parts[1], file, lineno));
      } else {
        fail(file, lineno, "unknown datum key '" + key + "'");
      }
    } else if (section == "params") {
      if (key == "orbit") {
        auto vals = parse_rat_vec(value, file, lineno);
        if (vals.size() == 2) vals.push_back(Rat(1));
        if (vals.size() != 3) fail(file, lineno, "orbit needs q q* [c']");
        cfg.orbit_params.push_back({vals[0], vals[1], vals[2]});
      } else if (key == "base_qF") {
        cfg.base_qF = parse_rat_vec(value, file, lineno).at(0);
      } else {
        fail(file, lineno, "unknown params key '" + key + "'");
      }
    } else if (section == "ext") {
      if (key == "rgen") {
        auto rows = split_on(value, ';');
        IntMat m;
        for (auto& r : rows) m.push_back(parse_int_vec(r, file, lineno).c);
        for (auto& r : m)
          if (r.size() != m.size()) fail(file, lineno, "rgen must be square");
        cfg.rgens.push_back(std::move(m));
      } else if (key == "translation") {
        cfg.translations.push_back(TorusPoint::unitary(parse_rat_vec(value, file, lineno)));
      } else if (key == "chi_r") {
        auto parts = split_on(value, ':');
        if (parts.size() != 2) fail(file, lineno, "chi_r needs 'r-position : angles'");
        int pos = int(parse_int_vec(parts[0], file, lineno).c.at(0));
        cfg.chi_r[pos] = TorusPoint::unitary(parse_rat_vec(parts[1], file, lineno));
      } else {
        fail(file, lineno, "unknown ext key '" + key + "'");
      }
    } else if (section == "cocycle") {
      if (key == "value") {
        auto parts = split_on(value, ':');
        if (parts.size() != 2) fail(file, lineno, "value needs 'i j : angle'");
        auto ij = parse_int_vec(parts[0], file, lineno);
        if (ij.c.size() != 2) fail(file, lineno, "value needs two indices");
        cfg.cocycle_values.push_back(
            {int(ij.c[0]), int(ij.c[1]), parse_rat_vec(parts[1], file, lineno).at(0)});
      } else {
        fail(file, lineno, "unknown cocycle key '" + key + "'");
      }
    } else if (section == "run") {
      if (key == "torsion") {
        cfg.torsion = parse_int_vec(value, file, lineno).c.at(0);
      } else if (key == "seed") {
        cfg.seed = std::uint64_t(parse_int_vec(value, file, lineno).c.at(0));
      } else if (key == "cap") {
        cfg.cap = parse_int_vec(value, file, lineno).c.at(0);
      } else if (key == "point") {
        auto parts = split_on(value, ';');
        if (parts.size() == 1) {
          cfg.point = TorusPoint::unitary(parse_rat_vec(parts[0], file, lineno));
        } else if (parts.size() == 2) {
          cfg.point = TorusPoint(parse_rat_vec(parts[0], file, lineno),
                                 parse_rat_vec(parts[1], file, lineno));
        } else {
          fail(file, lineno, "point needs 'angles [; logmags]'");
        }
      } else if (key == "char") {
        cfg.chars.push_back(parse_rat_vec(value, file, lineno));
      } else {
        fail(file, lineno, "unknown run key '" + key + "'");
      }
    } else if (section.empty()) {
      fail(file, lineno, "key outside of any section");
    } else {
      fail(file, lineno, "unknown section '" + section + "'");
    }
  }
  if (cfg.simple_coroots.empty()) throw Error("ParseError", file + ": datum block is missing");
  for (auto& v : cfg.simple_coroots)
    if (int(v.rank()) != cfg.rank)
      throw Error("ParseError", file + ": coroot rank differs from the declared rank");
  for (auto& v : cfg.simple_roots)
    if (int(v.rank()) != cfg.rank)
      throw Error("ParseError", file + ": root rank differs from the declared rank");
  return cfg;
}

inline Config parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", "cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), path);
}

// assembled model objects
struct Model {
  RootDatum datum;
  ExtendedGroupSpec ext;
  ParamFunction params;
  TwoCocycle cocycle;            // on the R positions
  ExtWeylGroup ext_group;        // with translations and chi_r
  TwoCocycle group_cocycle;      // inflated onto the ext group through the R factor
  Config cfg;
};

inline Model build_model(const Config& cfg) {
  Model m;
  m.cfg = cfg;
  m.datum = fixtures::generate_datum(cfg.simple_coroots, cfg.simple_roots);
  m.ext = decompose_extended(m.datum, cfg.rgens, cfg.cap);
  m.params = fixtures::params_orbitwise(m.datum, m.ext.full, cfg.orbit_params);
  validate_params(m.datum, m.ext, m.params);
  validate_parity(m.datum, m.params);

  m.cocycle = TwoCocycle::trivial(int(m.ext.r_part.size()));
  for (auto& [i, j, a] : cfg.cocycle_values) {
    if (i < 0 || j < 0 || i >= int(m.ext.r_part.size()) || j >= int(m.ext.r_part.size()))
      throw Error("ParseError", "cocycle index outside the R part");
    m.cocycle.angle[std::size_t(i)][std::size_t(j)] = mod1(a);
  }

  std::map<int, TorusPoint> chi;
  for (auto& [pos, pt] : cfg.chi_r) {
    if (pos < 0 || pos >= int(m.ext.r_part.size()))
      throw Error("ParseError", "chi_r position outside the R part");
    chi[m.ext.r_part[std::size_t(pos)]] = pt;
  }
  m.ext_group = generate_ext(m.ext, cfg.translations, chi);

  // inflate the R cocycle through the (translation, r, w) factorization
  m.group_cocycle = TwoCocycle::trivial(m.ext_group.size());
  std::map<int, int> rpos;
  for (std::size_t i = 0; i < m.ext.r_part.size(); ++i) rpos[m.ext.r_part[i]] = int(i);
  for (int a = 0; a < m.ext_group.size(); ++a)
    for (int b = 0; b < m.ext_group.size(); ++b) {
      int ra = rpos.at(m.ext_group.factor[std::size_t(a)][1]);
      int rb = rpos.at(m.ext_group.factor[std::size_t(b)][1]);
      m.group_cocycle.angle[std::size_t(a)][std::size_t(b)] = m.cocycle(ra, rb);
    }
  return m;
}

} // namespace heckeforge
