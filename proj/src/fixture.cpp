#include "pfs/fixture.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <set>
#include <sstream>

#include "pfs/rational.hpp"

namespace pfs {

std::string to_string(FixtureKind kind) {
  switch (kind) {
    case FixtureKind::Formula: return "formula";
    case FixtureKind::Stratification: return "stratification";
    case FixtureKind::Elimination: return "elimination";
    case FixtureKind::Chi: return "chi";
    case FixtureKind::Jets: return "jets";
  }
  return "?";
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
    fail(ErrorKind::InvalidArgument, "SHA-256 digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

[[noreturn]] void schema(const std::string& msg) { fail(ErrorKind::SchemaError, msg); }

const Json& need(const Json& j, const char* key) {
  if (!j.is_object()) schema("expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(std::string("missing field '") + key + "'");
  return *it;
}

std::string as_string(const Json& j, const char* what) {
  if (!j.is_string()) schema(std::string(what) + " must be a string");
  return j.get<std::string>();
}

std::uint64_t as_uint(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema(std::string(what) + " must be a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::vector<std::string> as_names(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array of names");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, what));
  return out;
}

std::vector<Elem> as_tuple(const Json& j, const char* what) {
  if (!j.is_array()) schema(std::string(what) + " must be an array of field elements");
  std::vector<Elem> out;
  for (const auto& x : j) out.push_back(static_cast<Elem>(as_uint(x, what)));
  return out;
}

class Loader {
 public:
  explicit Loader(const Json& root) : root_(root) {}

  std::vector<std::string> errors;
  std::vector<std::string> params;

  // Runs f, recording any failure under `where` instead of propagating.
  template <class F>
  void guard(const std::string& where, F&& f) {
    try {
      f();
    } catch (const Error& e) {
      std::string m = where + ": " + e.what();
      for (const auto& d : e.details()) m += " [" + d + "]";
      errors.push_back(m);
    } catch (const nlohmann::json::exception& e) {
      errors.push_back(where + ": " + e.what());
    }
  }

  void load_groups() {
    auto it = root_.find("groups");
    if (it == root_.end()) return;
    if (!it->is_object()) {
      errors.push_back("groups: must be an object");
      return;
    }
    for (const auto& [name, g] : it->items()) guard("groups." + name, [&] { groups_.emplace(name, group(g)); });
  }

  FiniteGroup group(const Json& j) {
    if (j.is_string()) {
      auto it = groups_.find(j.get<std::string>());
      if (it == groups_.end()) schema("unknown group '" + j.get<std::string>() + "'");
      return it->second;
    }
    if (!j.is_object()) schema("group must be a name or an object");
    if (j.contains("cyclic")) return FiniteGroup::cyclic(static_cast<std::uint32_t>(as_uint(j["cyclic"], "cyclic")));
    if (j.contains("symmetric"))
      return FiniteGroup::symmetric(static_cast<std::uint32_t>(as_uint(j["symmetric"], "symmetric")));
    if (j.contains("trivial")) return FiniteGroup::trivial();
    if (j.contains("product")) {
      const auto& p = j["product"];
      if (!p.is_array() || p.size() != 2) schema("product needs two factor groups");
      return FiniteGroup::direct_product(group(p[0]), group(p[1]));
    }
    if (j.contains("cayley")) return FiniteGroup::from_cayley(j["cayley"].get<std::vector<std::vector<GElem>>>());
    if (j.contains("permutations"))
      return FiniteGroup::from_permutations(j["permutations"].get<std::vector<std::vector<std::uint32_t>>>());
    schema("group needs one of cyclic, symmetric, trivial, product, cayley, permutations");
  }

  static GElem elem(const FiniteGroup& g, const Json& j) {
    if (j.is_string()) return g.parse_label(j.get<std::string>());
    auto v = as_uint(j, "group element");
    if (v >= g.order()) schema("group element " + std::to_string(v) + " out of range");
    return static_cast<GElem>(v);
  }

  static Subgroup subgroup(const FiniteGroup& g, const Json& j) {
    if (!j.is_array()) schema("subgroup must be an array of elements");
    std::set<GElem> s;
    for (const auto& x : j) s.insert(elem(g, x));
    return {s.begin(), s.end()};
  }

  static ConjDomain con(const FiniteGroup& g, const Json& j) {
    if (j.is_string()) {
      if (j == "all") return ConjDomain::all(g);
      if (j == "none") return ConjDomain::empty(g);
      schema("conjugation domain must be \"all\", \"none\" or a list of subgroups");
    }
    if (!j.is_array()) schema("conjugation domain must be a list of subgroups");
    std::set<Subgroup> subs;
    for (const auto& h : j) subs.insert(subgroup(g, h));
    return ConjDomain(g, std::move(subs));
  }

  GroupHom hom(const Json& j) {
    auto src = group(need(j, "source"));
    auto tgt = group(need(j, "target"));
    const auto& m = need(j, "map");
    if (!m.is_array() || m.size() != src.order()) schema("hom map must list the image of every source element");
    std::vector<GElem> map;
    for (const auto& x : m) map.push_back(elem(tgt, x));
    return GroupHom(src, tgt, std::move(map));
  }

  static Admissible admissible(const Json& j) {
    Admissible a;
    if (j.is_null()) return a;
    if (auto it = j.find("mod"); it != j.end()) {
      auto pairs = it->get<std::vector<Json>>();
      if (!pairs.empty() && pairs[0].is_number()) pairs = {*it};
      for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2) schema("admissible.mod must be [modulus, residue] pairs");
        a.congruences.emplace_back(static_cast<std::uint32_t>(as_uint(p[0], "modulus")),
                                   static_cast<std::uint32_t>(as_uint(p[1], "residue")));
      }
    }
    if (auto it = j.find("exclude"); it != j.end())
      for (const auto& p : *it) a.exclude.push_back(static_cast<std::uint32_t>(as_uint(p, "excluded prime")));
    return a;
  }

  Formula formula(const Json& j, const std::vector<std::string>& free) const {
    return parse_formula(as_string(j, "formula"), params, free);
  }

  CoverSpec cover(const Json& j, std::vector<std::string> vars) {
    if (!j.is_object()) schema("cover must be an object");
    if (j.contains("vars")) vars = as_names(j["vars"], "cover vars");
    const auto kind = as_string(need(j, "kind"), "cover kind");
    auto adm = admissible(j.value("admissible", Json()));
    auto stratum = [&] { return j.contains("stratum") ? formula(j["stratum"], vars) : Formula(params, vars, node::truth()); };
    if (kind == "trivial") return CoverSpec::trivial(stratum(), adm);
    if (kind == "kummer")
      return CoverSpec::kummer(static_cast<std::uint32_t>(as_uint(need(j, "n"), "n")),
                               parse_poly(as_string(need(j, "f"), "f")), stratum(), adm);
    if (kind == "tabulated") {
      auto g = group(need(j, "group"));
      std::map<TabKey, GElem> table;
      for (const auto& e : j.value("table", Json::array())) {
        TabKey key{static_cast<std::uint32_t>(as_uint(need(e, "q"), "q")), as_tuple(e.value("s", Json::array()), "s"),
                   as_tuple(need(e, "point"), "point")};
        table[key] = elem(g, need(e, "frob"));
      }
      std::optional<GElem> def;
      if (j.contains("default")) def = elem(g, j["default"]);
      return CoverSpec::tabulated(g, stratum(), std::move(table), def, adm);
    }
    if (kind == "product") {
      auto a = cover(need(j, "left"), {});
      auto b = cover(need(j, "right"), {});
      std::optional<ProductWitness> w;
      if (j.contains("witness")) {
        const auto& wj = j["witness"];
        auto v = group(need(wj, "group"));
        auto map_to = [&](const char* key, const FiniteGroup& tgt) {
          const auto& m = need(wj, key);
          std::vector<GElem> map;
          for (const auto& x : m) map.push_back(elem(tgt, x));
          return GroupHom(v, tgt, std::move(map));
        };
        w = ProductWitness{v, map_to("p1", a.group()), map_to("p2", b.group())};
      }
      return CoverSpec::product(a, b, w);
    }
    if (kind == "restricted") {
      auto parent = cover(need(j, "parent"), vars);
      auto g = group(need(j, "group"));
      const auto& m = need(j, "embedding");
      std::vector<GElem> map;
      for (const auto& x : m) map.push_back(elem(parent.group(), x));
      return CoverSpec::restricted(parent, GroupHom(g, parent.group(), std::move(map)), stratum());
    }
    if (kind == "pullback") {
      auto inner = cover(need(j, "inner"), {});
      std::map<std::string, Poly> var_map;
      for (const auto& [k, v] : need(j, "map").items()) var_map[k] = parse_poly(as_string(v, "pullback map"));
      return CoverSpec::pullback(inner, var_map, vars);
    }
    schema("unknown cover kind '" + kind + "'");
  }

  struct StratResult {
    std::optional<GaloisStratification> strat;
    std::vector<QuotientSpec> quotients;
  };

  StratResult stratification(const Json& j, const std::string& where) {
    StratResult out;
    std::vector<std::string> vars;
    if (j.contains("vars")) {
      vars = as_names(j["vars"], "vars");
    } else {
      auto m = as_uint(need(j, "ambient"), "ambient");
      if (m == 1)
        vars = {"x"};
      else
        for (std::uint64_t i = 1; i <= m; ++i) vars.push_back("x" + std::to_string(i));
    }
    if (j.contains("ambient") && as_uint(j["ambient"], "ambient") != vars.size())
      schema("ambient dimension does not match vars");
    const auto& sj = need(j, "strata");
    if (!sj.is_array()) schema("strata must be an array");
    std::vector<Stratum> strata;
    bool ok = true;
    for (std::size_t i = 0; i < sj.size(); ++i) {
      const auto before = errors.size();
      guard(where + ".strata[" + std::to_string(i) + "]", [&] {
        auto c = cover(need(sj[i], "cover"), vars);
        auto d = con(c.group(), need(sj[i], "con"));
        for (const auto& q : sj[i].value("quotients", Json::array())) {
          auto h = subgroup(c.group(), need(q, "subgroup"));
          if (!c.group().is_subgroup(h)) schema("quotient subgroup is not a subgroup");
          out.quotients.push_back({i, h, as_string(need(q, "name"), "quotient name")});
        }
        strata.push_back({std::move(c), std::move(d)});
      });
      ok = ok && errors.size() == before;
    }
    if (ok)
      guard(where, [&] {
        out.strat.emplace(params, vars, std::move(strata), j.value("label", std::string()));
      });
    return out;
  }

 private:
  const Json& root_;
  std::map<std::string, FiniteGroup> groups_;
};

FixtureKind parse_kind(const std::string& s) {
  if (s == "formula") return FixtureKind::Formula;
  if (s == "stratification") return FixtureKind::Stratification;
  if (s == "elimination") return FixtureKind::Elimination;
  if (s == "chi") return FixtureKind::Chi;
  if (s == "jets") return FixtureKind::Jets;
  schema("unknown fixture kind '" + s + "'");
}

}  // namespace

FixtureDoc parse_fixture(const std::string& text, const std::string& origin) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::SchemaError, origin + ": not valid JSON", {e.what()});
  }
  FixtureDoc doc;
  doc.sha256 = sha256_hex(text);
  Loader L(root);
  if (!root.is_object()) throw Error(ErrorKind::SchemaError, origin + ": fixture must be a JSON object", {"root"});
  static const std::set<std::string> known = {
      "version", "kind", "name", "params", "primes", "s_points", "budget_bits", "groups",
      "free", "formula", "bijection", "stratification", "expected_class",
      "var", "quantifier", "base", "data",
      "vars", "equations", "levels", "geometric", "depth_cap", "smooth"};
  for (const auto& item : root.items())
    if (!known.count(item.key())) L.errors.push_back(item.key() + ": unknown key");

  L.guard("version", [&] {
    doc.version = static_cast<int>(as_uint(need(root, "version"), "version"));
    if (doc.version != 1) schema("unsupported version " + std::to_string(doc.version));
  });
  bool have_kind = false;
  L.guard("kind", [&] {
    doc.kind = parse_kind(as_string(need(root, "kind"), "kind"));
    have_kind = true;
  });
  L.guard("name", [&] { doc.name = root.contains("name") ? as_string(root["name"], "name") : origin; });
  L.guard("params", [&] {
    if (root.contains("params")) doc.params = as_names(root["params"], "params");
  });
  L.params = doc.params;
  L.guard("primes", [&] {
    for (const auto& q : need(root, "primes")) {
      auto v = static_cast<std::uint32_t>(as_uint(q, "field size"));
      make_field_q(v);  // validates the prime power
      doc.fields.push_back(v);
    }
    if (doc.fields.empty()) schema("the prime sweep is empty");
  });
  L.guard("s_points", [&] {
    if (!root.contains("s_points")) return;
    std::vector<std::vector<Elem>> pts;
    for (const auto& p : root["s_points"]) {
      pts.push_back(as_tuple(p, "s_point"));
      if (pts.back().size() != doc.params.size()) schema("s_point dimension differs from params");
    }
    doc.s_points = std::move(pts);
  });
  L.guard("budget_bits", [&] {
    if (root.contains("budget_bits")) {
      if (!root["budget_bits"].is_number()) schema("budget_bits must be a number");
      doc.budget_bits = root["budget_bits"].get<double>();
    }
  });
  L.load_groups();

  if (have_kind) switch (doc.kind) {
      case FixtureKind::Formula:
        L.guard("formula", [&] {
          std::optional<std::vector<std::string>> free;
          if (root.contains("free")) free = as_names(root["free"], "free");
          doc.formula = parse_formula(as_string(need(root, "formula"), "formula"), doc.params, free);
        });
        L.guard("bijection", [&] {
          if (!root.contains("bijection")) return;
          const auto& b = root["bijection"];
          auto f = [&](const char* key) {
            return parse_formula(as_string(need(b, key), key), doc.params);
          };
          doc.bijection = BijectionSpec{f("psi"), f("phi1"), f("phi2")};
        });
        break;
      case FixtureKind::Stratification:
      case FixtureKind::Chi: {
        auto r = L.stratification(need(root, "stratification"), "stratification");
        doc.strat = std::move(r.strat);
        doc.quotients = std::move(r.quotients);
        if (doc.strat)
          L.guard("formula", [&] {
            if (root.contains("formula")) doc.formula = parse_formula(as_string(root["formula"], "formula"), doc.params, doc.strat->vars());
          });
        if (doc.kind == FixtureKind::Chi) {
          L.guard("expected_class", [&] {
            if (root.contains("expected_class")) doc.expected_class = as_string(root["expected_class"], "expected_class");
          });
          std::set<std::string> names;
          for (const auto& q : doc.quotients)
            if (!names.insert(q.name).second) L.errors.push_back("quotients: name '" + q.name + "' used twice");
          if (doc.strat)
            for (auto i : doc.strat->support()) {
              bool any = std::any_of(doc.quotients.begin(), doc.quotients.end(), [&](const auto& q) { return q.stratum == i; });
              if (!any) L.errors.push_back("stratification.strata[" + std::to_string(i) + "]: support stratum has no quotients");
            }
        }
        break;
      }
      case FixtureKind::Elimination: {
        auto r = L.stratification(need(root, "stratification"), "stratification");
        if (!r.strat) break;
        std::string var;
        bool universal = false;
        L.guard("quantifier", [&] {
          var = as_string(need(root, "var"), "var");
          auto qf = root.value("quantifier", std::string("exists"));
          if (qf != "exists" && qf != "forall") schema("quantifier must be exists or forall");
          universal = qf == "forall";
          if (r.strat->vars().empty() || r.strat->vars().back() != var)
            schema("eliminated variable '" + var + "' must be the last coordinate");
        });
        std::vector<std::string> base_vars(r.strat->vars().begin(), r.strat->vars().end() - (r.strat->vars().empty() ? 0 : 1));
        std::vector<CoverSpec> base;
        const auto& bj = root.value("base", Json::array());
        for (std::size_t i = 0; i < bj.size(); ++i)
          L.guard("base[" + std::to_string(i) + "]", [&] { base.push_back(L.cover(bj[i], base_vars)); });
        std::vector<EliminationDatum> data;
        const auto& dj = root.value("data", Json::array());
        for (std::size_t i = 0; i < dj.size(); ++i)
          L.guard("data[" + std::to_string(i) + "]", [&] {
            const auto& d = dj[i];
            auto c = as_uint(need(d, "case"), "case");
            if (c != 1 && c != 2) schema("case must be 1 or 2");
            EliminationDatum e{c == 1 ? EliminationCase::Case1 : EliminationCase::Case2, as_uint(need(d, "stratum"), "stratum"),
                               as_uint(need(d, "base"), "base"), L.hom(need(d, "hom")), std::nullopt, std::nullopt};
            if (d.contains("inflation")) e.inflation = L.hom(d["inflation"]);
            if (d.contains("dominate")) e.dominate = L.hom(d["dominate"]);
            if (e.stratum >= r.strat->strata().size()) schema("datum refers to a nonexistent stratum");
            if (e.base >= bj.size()) schema("datum refers to a nonexistent base stratum");
            data.push_back(std::move(e));
          });
        doc.strat = r.strat;
        doc.elimination = EliminationProblem{*r.strat, var, universal, std::move(base), std::move(data)};
        break;
      }
      case FixtureKind::Jets:
        L.guard("jets", [&] {
          JetsSpec js;
          js.vars = as_names(need(root, "vars"), "vars");
          for (const auto& e : need(root, "equations")) js.equations.push_back(parse_poly(as_string(e, "equation")));
          js.levels = static_cast<std::uint32_t>(as_uint(need(root, "levels"), "levels"));
          js.geometric = root.value("geometric", false);
          js.depth_cap = static_cast<std::uint32_t>(root.contains("depth_cap") ? as_uint(root["depth_cap"], "depth_cap")
                                                                               : 2 * js.levels + 2);
          if (js.geometric && js.depth_cap < 2 * js.levels + 2) schema("depth_cap must be at least 2N+2");
          if (root.contains("smooth")) {
            js.smooth_class = parse_motive(as_string(need(root["smooth"], "class"), "smooth class"));
            js.smooth_dim = static_cast<std::uint32_t>(as_uint(need(root["smooth"], "dim"), "smooth dim"));
          }
          jet_ideal(js.equations, js.vars, doc.params, 0);  // validates variable usage
          doc.jets = std::move(js);
        });
        break;
    }

  if (!L.errors.empty())
    throw Error(ErrorKind::SchemaError,
                origin + ": " + std::to_string(L.errors.size()) + " schema violation(s); first: " + L.errors.front(),
                L.errors);
  return doc;
}

FixtureDoc load_fixture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot read fixture '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fixture(ss.str(), path);
}

Json error_json(const Error& e) {
  Json j;
  j["error"] = to_string(e.kind());
  j["message"] = e.what();
  if (!e.details().empty()) j["details"] = e.details();
  if (e.position) j["position"] = *e.position;
  return j;
}

namespace {

Sweep make_sweep(const FixtureDoc& doc, const RunOptions& opts) {
  Sweep s;
  for (auto q : opts.fields ? *opts.fields : doc.fields) s.fields.push_back(make_field_q(q));
  s.s_points = doc.s_points;
  return s;
}

double budget_of(const FixtureDoc& doc, const RunOptions& opts) {
  return opts.budget_bits ? *opts.budget_bits : doc.budget_bits ? *doc.budget_bits : kDefaultBudgetBits;
}

Json tuples_json(const std::vector<std::vector<Elem>>& ts) {
  Json a = Json::array();
  for (const auto& t : ts) a.push_back(t);
  return a;
}

Json subgroup_json(const FiniteGroup& g, const Subgroup& h) {
  Json a = Json::array();
  for (auto x : h) a.push_back(g.label(x));
  return a;
}

Json con_json(const ConjDomain& c) {
  Json a = Json::array();
  for (const auto& h : c.subs()) a.push_back(subgroup_json(c.group(), h));
  return a;
}

Json strat_json(const GaloisStratification& s) {
  Json j;
  j["vars"] = s.vars();
  Json strata = Json::array();
  for (const auto& st : s.strata()) {
    Json x;
    x["cover"] = to_string(st.cover.kind());
    x["group_order"] = st.cover.group().order();
    x["stratum"] = st.cover.stratum().to_string();
    x["con"] = con_json(st.con);
    strata.push_back(std::move(x));
  }
  j["strata"] = std::move(strata);
  return j;
}

Json header(const FixtureDoc& doc, const std::string& command, const Sweep& sweep) {
  Json j;
  j["command"] = command;
  j["fixture"] = doc.name;
  j["fixture_kind"] = to_string(doc.kind);
  j["fixture_sha256"] = doc.sha256;
  Json sw;
  Json qs = Json::array();
  for (const auto& k : sweep.fields) qs.push_back(k.q());
  sw["fields"] = std::move(qs);
  if (sweep.s_points)
    sw["s_points"] = tuples_json(*sweep.s_points);
  else
    sw["s_points"] = "all";
  // Only finitely many closed fibers and F_q-rational points are ever tested.
  sw["scope"] = "F_q-rational points of the listed closed fibers";
  j["sweep"] = std::move(sw);
  return j;
}

void require(bool ok, const std::string& command, const FixtureDoc& doc) {
  if (!ok)
    fail(ErrorKind::InvalidArgument, "command '" + command + "' does not apply to a " + to_string(doc.kind) + " fixture");
}

std::vector<FiniteField> fields_for(const FixtureDoc& doc, const Sweep& sweep) {
  return doc.strat ? admissible_fields(*doc.strat, sweep.fields) : sweep.fields;
}

}  // namespace

std::vector<std::optional<QuotientClassData>> quotient_data(const FixtureDoc& doc) {
  if (!doc.strat) fail(ErrorKind::MissingData, "fixture has no stratification");
  std::vector<std::optional<QuotientClassData>> data(doc.strat->strata().size());
  for (const auto& q : doc.quotients) {
    auto& d = data[q.stratum];
    if (!d) d.emplace(doc.strat->strata()[q.stratum].cover.group());
    d->set(q.subgroup, MotiveClass::generator(q.name));
  }
  return data;
}

CountTable quotient_counts(const FixtureDoc& doc, const Sweep& sweep) {
  CountTable t;
  for (const auto& k : fields_for(doc, sweep))
    for (const auto& s : s_points_for(sweep, k, doc.params.size()))
      for (const auto& q : doc.quotients)
        t.set(q.name, k.q(), Rational(quotient_count(doc.strat->strata()[q.stratum].cover, q.subgroup, s, k)), s);
  return t;
}

RunResult run_fixture(const std::string& command, const FixtureDoc& doc, const RunOptions& opts) {
  const Sweep sweep = make_sweep(doc, opts);
  const double budget = budget_of(doc, opts);
  RunResult r;
  r.report = header(doc, command, sweep);
  Json& out = r.report;

  if (command == "eval") {
    require(doc.kind == FixtureKind::Formula && doc.formula.has_value(), command, doc);
    out["formula"] = doc.formula->to_string();
    out["free"] = doc.formula->free_vars();
    Json tables = Json::array();
    for (const auto& k : sweep.fields)
      for (const auto& s : s_points_for(sweep, k, doc.params.size())) {
        auto z = eval_formula(*doc.formula, s, k, budget);
        Json row;
        row["q"] = k.q();
        row["s_point"] = s;
        row["size"] = z.size();
        row["set"] = tuples_json(z.tuples);
        tables.push_back(std::move(row));
      }
    out["sets"] = std::move(tables);
  } else if (command == "bijection") {
    require(doc.bijection.has_value(), command, doc);
    auto v = check_definable_bijection(doc.bijection->psi, doc.bijection->phi1, doc.bijection->phi2, sweep, budget);
    Json fibers = Json::array();
    for (const auto& f : v.fibers) {
      Json row;
      row["q"] = f.q;
      row["s_point"] = f.s_point;
      row["pass"] = f.pass;
      if (!f.pass) {
        row["reason"] = f.reason;
        row["witness"] = f.witness;
      }
      fibers.push_back(std::move(row));
    }
    out["fibers"] = std::move(fibers);
    r.pass = v.pass;
  } else if (command == "stratify") {
    require(doc.strat.has_value(), command, doc);
    out["stratification"] = strat_json(*doc.strat);
    if (doc.formula) out["formula"] = doc.formula->to_string();
    Json tables = Json::array();
    for (const auto& k : fields_for(doc, sweep))
      for (const auto& s : s_points_for(sweep, k, doc.params.size())) {
        auto z = galois_set(*doc.strat, s, k);
        Json row;
        row["q"] = k.q();
        row["s_point"] = s;
        row["size"] = z.size();
        row["set"] = tuples_json(z.tuples);
        if (doc.formula) {
          bool match = eval_formula(*doc.formula, s, k, budget).tuples == z.tuples;
          row["matches_formula"] = match;
          r.pass = r.pass && match;
        }
        tables.push_back(std::move(row));
      }
    out["sets"] = std::move(tables);
  } else if (command == "eliminate") {
    require(doc.elimination.has_value(), command, doc);
    out["quantifier"] = doc.elimination->universal ? "forall" : "exists";
    out["var"] = doc.elimination->var;
    try {
      auto res = eliminate_existential(*doc.elimination, sweep);
      out["output"] = strat_json(res.output);
      out["checked_fields"] = res.checked_q;
      out["checked_fibers"] = res.checked_fibers;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SemanticMismatch) throw;
      out["output"] = strat_json(eliminate_transform(*doc.elimination));
      out["mismatch"] = error_json(e);
      r.pass = false;
    }
  } else if (command == "chi") {
    require(doc.kind == FixtureKind::Chi, command, doc);
    auto cls = chi_stratification(*doc.strat, quotient_data(doc));
    auto table = quotient_counts(doc, sweep);
    auto rep = verify_specialization(cls, *doc.strat, table, sweep);
    out["class"] = cls.to_string();
    if (doc.expected_class) {
      out["expected_class"] = *doc.expected_class;
      const bool same = parse_motive(*doc.expected_class) == cls;
      out["class_matches"] = same;
      r.pass = r.pass && same;
    }
    Json rows = Json::array();
    for (const auto& row : rep.rows) {
      Json x;
      x["q"] = row.q;
      x["s_point"] = row.s_point;
      x["specialized"] = to_string(row.specialized);
      x["counted"] = to_string(row.counted);
      x["match"] = row.match;
      rows.push_back(std::move(x));
    }
    out["rows"] = std::move(rows);
    r.pass = r.pass && rep.pass;
  } else if (command == "jets") {
    require(doc.jets.has_value(), command, doc);
    const auto& js = *doc.jets;
    const std::uint64_t jet_budget =
        budget >= 62 ? std::numeric_limits<std::uint64_t>::max() : static_cast<std::uint64_t>(std::ldexp(1.0, int(budget)));
    if (js.smooth_class) {
      Json sym = Json::array();
      for (const auto& c : igusa_smooth_cellular(*js.smooth_class, js.smooth_dim, js.levels)) sym.push_back(c.to_string());
      out["igusa_symbolic"] = std::move(sym);
    }
    Json tables = Json::array();
    std::vector<std::uint32_t> worst;
    for (const auto& k : sweep.fields)
      for (const auto& s : s_points_for(sweep, k, doc.params.size())) {
        Json row;
        row["q"] = k.q();
        row["s_point"] = s;
        auto counts = igusa_counts(js.equations, js.vars, doc.params, js.levels, s, k, jet_budget);
        Json ig = Json::array();
        for (const auto& c : counts) ig.push_back(to_string(c));
        row["igusa"] = std::move(ig);
        if (js.smooth_class) {
          bool ok = true;
          auto sym = igusa_smooth_cellular(*js.smooth_class, js.smooth_dim, js.levels);
          for (std::size_t n = 0; n < counts.size(); ++n)
            ok = ok && specialize(sym[n], k.q(), CountTable{}, s) == Rational(counts[n]);
          row["matches_smooth"] = ok;
          r.pass = r.pass && ok;
        }
        if (js.geometric) {
          auto g = geometric_series_counts(js.equations, js.vars, doc.params, js.levels, s, k, js.depth_cap, jet_budget);
          Json geo = Json::array();
          for (const auto& c : g.coeffs) geo.push_back(to_string(c));
          row["geometric"] = std::move(geo);
          row["stabilization_levels"] = g.levels;
          row["greenberg"] = {{"c", g.c}, {"e", g.e}};
          if (worst.empty()) worst.assign(g.levels.size(), 0);
          for (std::size_t n = 0; n < g.levels.size(); ++n) worst[n] = std::max(worst[n], g.levels[n]);
        }
        tables.push_back(std::move(row));
      }
    out["per_prime"] = std::move(tables);
    if (js.geometric) {
      auto [c, e] = greenberg_fit(worst);
      out["greenberg"] = {{"c", c}, {"e", e}, {"empirical", true}};
    }
  } else {
    fail(ErrorKind::InvalidArgument, "unknown command '" + command + "'");
  }
  out["verdict"] = r.pass ? "Pass" : "Fail";
  return r;
}

}  // namespace pfs
