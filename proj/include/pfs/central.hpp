#pragma once

#include <vector>

#include "pfs/group.hpp"
#include "pfs/rational.hpp"

namespace pfs {

// Rational class function that is constant on elements generating conjugate
// cyclic subgroups. Values are stored per element.
class QCentralFunction {
 public:
  // NotCentral when two elements with conjugate cyclic subgroups differ.
  QCentralFunction(FiniteGroup g, std::vector<Rational> values);
  static QCentralFunction constant(const FiniteGroup& g, const Rational& c);

  const FiniteGroup& group() const { return g_; }
  const std::vector<Rational>& values() const { return v_; }
  const Rational& operator()(GElem g) const { return v_[g]; }

  QCentralFunction operator+(const QCentralFunction& o) const;
  QCentralFunction operator-(const QCentralFunction& o) const;
  QCentralFunction scaled(const Rational& c) const;

  friend bool operator==(const QCentralFunction& a, const QCentralFunction& b) {
    return a.g_ == b.g_ && a.v_ == b.v_;
  }

 private:
  FiniteGroup g_;
  std::vector<Rational> v_;
};

// alpha(g) = 1 iff <g> belongs to con.
QCentralFunction alpha_from_conj_domain(const ConjDomain& con);

QCentralFunction restrict_central(const GroupHom& psi, const QCentralFunction& alpha);
// (Ind alpha)(g) = 1/|H| sum over x in G with x^-1 g x in psi(H) of alpha(psi^-1(x^-1 g x)).
QCentralFunction induce_central(const GroupHom& psi, const QCentralFunction& alpha);
// Ind_H^G 1_H for a subgroup H of G.
QCentralFunction induced_trivial(const FiniteGroup& g, const Subgroup& h);

// (1/|G|) sum_g alpha(g) beta(g^-1).
Rational inner_product(const QCentralFunction& a, const QCentralFunction& b);

struct ArtinTerm {
  Subgroup rep;  // canonical representative of a cyclic-subgroup class
  Rational coeff;
};
// alpha = sum c_H Ind_H^G 1 over class representatives, in
// cyclic_subgroup_classes order.
std::vector<ArtinTerm> artin_decompose(const QCentralFunction& alpha);
QCentralFunction artin_reconstruct(const FiniteGroup& g, const std::vector<ArtinTerm>& terms);

// Coefficients of p_alpha = n_alpha / (|G| <alpha,alpha>) sum_g alpha(g^-1) [g].
std::vector<Rational> idempotent_coeffs(const QCentralFunction& alpha, const Rational& degree);
// Product in the rational group algebra.
std::vector<Rational> convolve(const FiniteGroup& g, const std::vector<Rational>& a, const std::vector<Rational>& b);

}  // namespace pfs
