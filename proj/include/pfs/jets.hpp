#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pfs/field.hpp"
#include "pfs/motive.hpp"
#include "pfs/poly.hpp"

namespace pfs {

inline constexpr std::uint64_t kDefaultJetBudget = 50'000'000;

// Equations of L_n(X/S): substituting x_i -> sum_j x_i_j t^j into each
// equation and reading off the coefficients of t^0..t^n. Jet coordinates are
// named "<x>_<j>".
struct JetIdeal {
  std::uint32_t n = 0;
  std::vector<std::string> params;
  std::vector<std::string> xvars;
  std::vector<std::vector<std::string>> jet_vars;  // [i][j]
  std::vector<Poly> gens;                          // by equation, then t-degree
  std::vector<std::uint32_t> gen_degree;
  std::vector<std::size_t> gen_equation;

  // Jet coordinates in level-major order (level 0 of every x, then level 1, ...);
  // this is the coordinate order of jet tuples.
  std::vector<std::string> coordinates() const;
};

JetIdeal jet_ideal(const std::vector<Poly>& eqs, const std::vector<std::string>& xvars,
                   const std::vector<std::string>& params, std::uint32_t n);

// |L_n(X/S)_s(F_q)| by level-by-level search; the t^j equations only involve
// levels <= j, so partial jets are pruned early. BudgetExceeded once more than
// `budget` partial jets have been visited.
Integer count_jets(const JetIdeal& j, std::span<const Elem> s_point, const FiniteField& k,
                   std::uint64_t budget = kDefaultJetBudget);

// n-jets (level-major tuples, sorted) that lift to solutions of J_m.
std::vector<std::vector<Elem>> truncation_image(const JetIdeal& jm, std::uint32_t n, std::span<const Elem> s_point,
                                                const FiniteField& k, std::uint64_t budget = kDefaultJetBudget);

// Igusa series coefficients |L_n| for n = 0..N.
std::vector<Integer> igusa_counts(const std::vector<Poly>& eqs, const std::vector<std::string>& xvars,
                                  const std::vector<std::string>& params, std::uint32_t N, std::span<const Elem> s_point,
                                  const FiniteField& k, std::uint64_t budget = kDefaultJetBudget);
// Smooth cellular X of relative dimension d: coefficient n is [X] L^(nd).
std::vector<MotiveClass> igusa_smooth_cellular(const MotiveClass& cls, std::uint32_t d, std::uint32_t N);

struct GeometricSeries {
  std::vector<Integer> coeffs;        // |pi_n L(X)| proxy
  std::vector<std::uint32_t> levels;  // m(n): first m > n with image(J_m) = image(J_{m-1})
  std::uint32_t c = 0, e = 0;         // least-slack linear bound m(n) <= c n + e
};

// NoStabilization when some image has not stabilized by depth_cap; needs
// depth_cap >= 2N + 2.
GeometricSeries geometric_series_counts(const std::vector<Poly>& eqs, const std::vector<std::string>& xvars,
                                        const std::vector<std::string>& params, std::uint32_t N,
                                        std::span<const Elem> s_point, const FiniteField& k, std::uint32_t depth_cap,
                                        std::uint64_t budget = kDefaultJetBudget);

// Fit used by geometric_series_counts, exposed for testing.
std::pair<std::uint32_t, std::uint32_t> greenberg_fit(const std::vector<std::uint32_t>& levels);

}  // namespace pfs
