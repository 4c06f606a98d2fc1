#include "pfs/jets.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pfs/errors.hpp"

namespace pfs {

std::vector<std::string> JetIdeal::coordinates() const {
  std::vector<std::string> out;
  for (std::uint32_t j = 0; j <= n; ++j)
    for (std::size_t i = 0; i < xvars.size(); ++i) out.push_back(jet_vars[i][j]);
  return out;
}

namespace {

using Series = std::vector<Poly>;  // coefficients of t^0..t^n

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j)
      if (!b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

}  // namespace

JetIdeal jet_ideal(const std::vector<Poly>& eqs, const std::vector<std::string>& xvars,
                   const std::vector<std::string>& params, std::uint32_t n) {
  JetIdeal J;
  J.n = n;
  J.params = params;
  J.xvars = xvars;
  std::set<std::string> names(params.begin(), params.end());
  for (const auto& x : xvars)
    if (!names.insert(x).second) fail(ErrorKind::InvalidArgument, "duplicate variable '" + x + "'");
  std::vector<Series> subst(xvars.size(), Series(n + 1));
  J.jet_vars.resize(xvars.size());
  for (std::size_t i = 0; i < xvars.size(); ++i)
    for (std::uint32_t j = 0; j <= n; ++j) {
      auto name = xvars[i] + "_" + std::to_string(j);
      if (std::find(params.begin(), params.end(), name) != params.end())
        fail(ErrorKind::InvalidArgument, "jet coordinate '" + name + "' collides with a base parameter");
      J.jet_vars[i].push_back(name);
      subst[i][j] = Poly::variable(name);
    }

  for (std::size_t e = 0; e < eqs.size(); ++e) {
    const auto& f = eqs[e];
    const auto& vars = f.variables();
    Series total(n + 1);
    for (const auto& [exps, c] : f.terms()) {
      Series term(n + 1);
      term[0] = Poly::constant(c);
      for (std::size_t v = 0; v < exps.size(); ++v) {
        if (!exps[v]) continue;
        auto xi = std::find(xvars.begin(), xvars.end(), vars[v]);
        if (xi != xvars.end()) {
          const auto& s = subst[static_cast<std::size_t>(xi - xvars.begin())];
          for (std::uint32_t k = 0; k < exps[v]; ++k) term = series_mul(term, s);
        } else if (std::find(params.begin(), params.end(), vars[v]) != params.end()) {
          term[0] = term[0] * Poly::variable(vars[v]).pow(exps[v]);
          for (std::uint32_t j = 1; j <= n; ++j)
            if (!term[j].is_zero()) term[j] = term[j] * Poly::variable(vars[v]).pow(exps[v]);
        } else {
          fail(ErrorKind::MissingVariable, "equation variable '" + vars[v] + "' is neither a coordinate nor a parameter");
        }
      }
      for (std::uint32_t j = 0; j <= n; ++j) total[j] = total[j] + term[j];
    }
    for (std::uint32_t j = 0; j <= n; ++j) {
      J.gens.push_back(total[j]);
      J.gen_degree.push_back(j);
      J.gen_equation.push_back(e);
    }
  }
  return J;
}

namespace {

// Level-by-level search over jet coordinates with per-level equation checks.
class JetSearch {
 public:
  JetSearch(const JetIdeal& J, std::span<const Elem> s_point, const FiniteField& k, std::uint64_t budget)
      : J_(J), k_(k), budget_(budget), m_(J.xvars.size()) {
    if (s_point.size() != J.params.size()) fail(ErrorKind::InvalidArgument, "base point has the wrong dimension");
    std::map<std::string, std::size_t> slots;
    for (std::size_t i = 0; i < J.params.size(); ++i) slots[J.params[i]] = i;
    const auto coords = J.coordinates();
    for (std::size_t i = 0; i < coords.size(); ++i) slots[coords[i]] = J.params.size() + i;
    by_level_.resize(J.n + 1);
    for (std::size_t g = 0; g < J.gens.size(); ++g)
      if (!J.gens[g].is_zero()) by_level_[J.gen_degree[g]].emplace_back(J.gens[g], slots, k);
    vals_.assign(J.params.size() + coords.size(), 0);
    std::copy(s_point.begin(), s_point.end(), vals_.begin());
    base_ = J.params.size();
  }

  // Number of solutions extending the current assignment of levels < level.
  Integer count(std::uint32_t level) {
    if (level > J_.n) return 1;
    Integer total = 0;
    for_each_level(level, [&] { total += count(level + 1); return false; });
    return total;
  }

  // Whether the current assignment of levels < level extends to a solution.
  bool extends(std::uint32_t level) {
    if (level > J_.n) return true;
    return for_each_level(level, [&] { return extends(level + 1); });
  }

  // Enumerates solutions of levels <= n, calling visit for each.
  template <class F>
  void enumerate_prefix(std::uint32_t level, std::uint32_t n, F&& visit) {
    if (level > n) {
      visit();
      return;
    }
    for_each_level(level, [&] {
      enumerate_prefix(level + 1, n, visit);
      return false;
    });
  }

  std::vector<Elem> prefix(std::uint32_t n) const {
    return {vals_.begin() + static_cast<std::ptrdiff_t>(base_),
            vals_.begin() + static_cast<std::ptrdiff_t>(base_ + (n + 1) * m_)};
  }

 private:
  // Runs body for each assignment of the level's coordinates satisfying the
  // level's equations; stops early when body returns true.
  template <class F>
  bool for_each_level(std::uint32_t level, F&& body) {
    const std::size_t off = base_ + level * m_;
    std::fill(vals_.begin() + static_cast<std::ptrdiff_t>(off), vals_.begin() + static_cast<std::ptrdiff_t>(off + m_), 0);
    for (;;) {
      if (++visited_ > budget_)
        fail(ErrorKind::BudgetExceeded, "jet enumeration exceeded " + std::to_string(budget_) + " partial jets");
      bool ok = true;
      for (const auto& g : by_level_[level])
        if (g.eval(vals_, k_) != 0) {
          ok = false;
          break;
        }
      if (ok && body()) return true;
      std::size_t i = m_;
      while (i > 0) {
        if (++vals_[off + i - 1] < k_.q()) break;
        vals_[off + i - 1] = 0;
        --i;
      }
      if (i == 0) return false;
    }
  }

  const JetIdeal& J_;
  FiniteField k_;
  std::uint64_t budget_, visited_ = 0;
  std::size_t m_, base_ = 0;
  std::vector<std::vector<CompiledPoly>> by_level_;
  std::vector<Elem> vals_;
};

}  // namespace

Integer count_jets(const JetIdeal& j, std::span<const Elem> s_point, const FiniteField& k, std::uint64_t budget) {
  if (j.xvars.empty()) return 1;
  JetSearch s(j, s_point, k, budget);
  return s.count(0);
}

std::vector<std::vector<Elem>> truncation_image(const JetIdeal& jm, std::uint32_t n, std::span<const Elem> s_point,
                                                const FiniteField& k, std::uint64_t budget) {
  if (n > jm.n) fail(ErrorKind::InvalidArgument, "truncation level exceeds the jet level");
  std::vector<std::vector<Elem>> out;
  if (jm.xvars.empty()) return {{}};
  JetSearch s(jm, s_point, k, budget);
  s.enumerate_prefix(0, n, [&] {
    if (s.extends(n + 1)) out.push_back(s.prefix(n));
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Integer> igusa_counts(const std::vector<Poly>& eqs, const std::vector<std::string>& xvars,
                                  const std::vector<std::string>& params, std::uint32_t N, std::span<const Elem> s_point,
                                  const FiniteField& k, std::uint64_t budget) {
  std::vector<Integer> out;
  for (std::uint32_t n = 0; n <= N; ++n) out.push_back(count_jets(jet_ideal(eqs, xvars, params, n), s_point, k, budget));
  return out;
}

std::vector<MotiveClass> igusa_smooth_cellular(const MotiveClass& cls, std::uint32_t d, std::uint32_t N) {
  std::vector<MotiveClass> out;
  for (std::uint32_t n = 0; n <= N; ++n) out.push_back(cls * MotiveClass::lefschetz(n * d));
  return out;
}

std::pair<std::uint32_t, std::uint32_t> greenberg_fit(const std::vector<std::uint32_t>& levels) {
  if (levels.empty()) return {0, 0};
  const std::uint32_t cmax = *std::max_element(levels.begin(), levels.end());
  std::pair<std::uint32_t, std::uint32_t> best{0, 0};
  long best_slack = -1;
  for (std::uint32_t c = 0; c <= cmax; ++c) {
    long e = 0;
    for (std::size_t n = 0; n < levels.size(); ++n) e = std::max(e, long(levels[n]) - long(c) * long(n));
    long slack = 0;
    for (std::size_t n = 0; n < levels.size(); ++n) slack += long(c) * long(n) + e - long(levels[n]);
    if (best_slack < 0 || slack < best_slack) {
      best_slack = slack;
      best = {c, static_cast<std::uint32_t>(e)};
    }
  }
  return best;
}

GeometricSeries geometric_series_counts(const std::vector<Poly>& eqs, const std::vector<std::string>& xvars,
                                        const std::vector<std::string>& params, std::uint32_t N,
                                        std::span<const Elem> s_point, const FiniteField& k, std::uint32_t depth_cap,
                                        std::uint64_t budget) {
  if (depth_cap < 2 * N + 2)
    fail(ErrorKind::InvalidArgument, "depth cap must be at least 2N+2 = " + std::to_string(2 * N + 2));
  std::vector<JetIdeal> ideals;
  for (std::uint32_t m = 0; m <= depth_cap; ++m) ideals.push_back(jet_ideal(eqs, xvars, params, m));
  GeometricSeries out;
  for (std::uint32_t n = 0; n <= N; ++n) {
    auto prev = truncation_image(ideals[n], n, s_point, k, budget);
    bool stable = false;
    for (std::uint32_t m = n + 1; m <= depth_cap; ++m) {
      auto cur = truncation_image(ideals[m], n, s_point, k, budget);
      if (cur == prev) {
        out.coeffs.push_back(static_cast<unsigned long>(cur.size()));
        out.levels.push_back(m);
        stable = true;
        break;
      }
      prev = std::move(cur);
    }
    if (!stable)
      fail(ErrorKind::NoStabilization, "image of level " + std::to_string(n) + " jets did not stabilize by level " +
                                           std::to_string(depth_cap));
  }
  std::tie(out.c, out.e) = greenberg_fit(out.levels);
  return out;
}

}  // namespace pfs
