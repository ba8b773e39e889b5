#pragma once

// Resolution of identity for Grassmannian coherent states: weight functions,
// the identity-resolution defect, and an independent linear solve for the
// weight coefficients.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qgrass/coherent.hpp"
#include "qgrass/errors.hpp"
#include "qgrass/grassmann.hpp"
#include "qgrass/linsolve.hpp"
#include "qgrass/operators.hpp"

namespace qgrass {

/// theta^k thetabar^l in canonical order.
inline Word theta_thetabar(int k, int l) {
  std::vector<Factor> f;
  if (k > 0) f.push_back({theta(), k});
  if (l > 0) f.push_back({thetabar(), l});
  return Word(std::move(f));
}

/// w(theta, thetabar) = sum_{k,l} c_kl theta^k thetabar^l.
struct Weight {
  int n;
  GExpr w;

  Scalar coeff(int k, int l) const {
    auto it = w.terms().find(theta_thetabar(k, l));
    return it == w.terms().end() ? Scalar::zero(n) : it->second;
  }

  bool is_diagonal() const {
    for (const auto& [word, c] : w.terms()) {
      const auto [a, b] = grade(word);
      if (a != b) return false;
    }
    return true;
  }
};

inline Weight diagonal_weight(int n, const std::function<Scalar(int)>& coeff) {
  GExpr w(n);
  for (int i = 0; i < n; ++i) w.add(theta_thetabar(i, i), coeff(i));
  return {n, w};
}

/// sum_i q^{i(i+1)} rho_{n-i-1}! theta^i thetabar^i.
inline Weight closed_form_weight(int n) {
  if (n < 2) throw DomainError("weight needs n >= 2");
  return diagonal_weight(n, [n](int i) {
    return Scalar::q_power(n, static_cast<long long>(i) * (i + 1)) * Scalar::rho_factorial(n, n - i - 1);
  });
}

/// Alternative closed form c_ii = rho_i! q^{i(i+1)}.
inline Weight cij_weight(int n) {
  if (n < 2) throw DomainError("weight needs n >= 2");
  return diagonal_weight(n, [n](int i) {
    return Scalar::q_power(n, static_cast<long long>(i) * (i + 1)) * Scalar::rho_factorial(n, i);
  });
}

/// Berezin integral applied to the Grassmann word of every term.
inline OpExpr berezin(const OpExpr& e, const Measure& measure = default_measure()) {
  check_measure(measure);
  OpExpr r(e.level());
  for (const auto& [key, c] : e.terms()) {
    if (key.word.has_differential()) throw DomainError("integrand already contains differentials");
    if (auto res = berezin_word(key.word, measure, e.level())) {
      r.add_product({OpFactor{res->second}, OpFactor{key.dyad}}, c * Scalar::q_power(e.level(), res->first));
    }
  }
  return r;
}

/// int dthetabar dtheta w |ket><bra|, where <bra| = (bra_state)^dagger.
inline OpExpr integrate_outer(const GExpr& w, const OpExpr& ket_state, const OpExpr& bra_state,
                              const Measure& measure = default_measure()) {
  return berezin(OpExpr::grassmann(w) * (ket_state * op_dagger(bra_state)), measure);
}

enum class StatePair : std::uint8_t {
  KetTilde,    // |theta><theta~|
  TildeKet,    // |theta~><theta|
  KetKet,      // |theta><theta|
  TildeTilde,  // |theta~><theta~|
};

inline std::string pair_name(StatePair p) {
  switch (p) {
    case StatePair::KetTilde: return "|th><th~|";
    case StatePair::TildeKet: return "|th~><th|";
    case StatePair::KetKet: return "|th><th|";
    case StatePair::TildeTilde: return "|th~><th~|";
  }
  return "?";
}

inline Family ket_family(StatePair p) {
  return p == StatePair::KetTilde || p == StatePair::KetKet ? Family::Psi : Family::Phi;
}
inline Family bra_family(StatePair p) {
  return p == StatePair::KetTilde || p == StatePair::TildeTilde ? Family::Phi : Family::Psi;
}

/// Identity the pair is compared against: sum|phi><psi| when the ket side is
/// phi-type, sum|psi><phi| otherwise.
inline OpExpr identity_target(int n, StatePair p) { return OpExpr::completeness(n, n, ket_family(p)); }

/// integral - identity for two given states (e.g. time-evolved ones).
inline OpExpr resolution_defect(const Weight& w, const OpExpr& ket_state, const OpExpr& bra_state, StatePair p) {
  return integrate_outer(w.w, ket_state, bra_state) - identity_target(w.n, p);
}

inline OpExpr verify_resolution(const Weight& w, StatePair p) {
  return resolution_defect(w, make_coherent(w.n, ket_family(p)).body, make_coherent(w.n, bra_family(p)).body, p);
}

/// True when every dyad pairs a family with itself (|psi><psi| or |phi><phi|),
/// so the expression can never equal the mixed-family identity.
inline bool only_same_family_dyads(const OpExpr& e) {
  for (const auto& [key, c] : e.terms())
    if (key.dyad.form != DyadForm::Outer || key.dyad.ket_family != key.dyad.bra_family) return false;
  return true;
}

/// Treats every c_kl as unknown, expands int w |theta><theta~| term by term,
/// equates the result to sum|psi_i><phi_i| and solves exactly.
inline Weight solve_weight(int n) {
  if (n < 2) throw DomainError("weight needs n >= 2");
  const OpExpr ket = make_coherent(n, Family::Psi).body;
  const OpExpr bra = make_coherent(n, Family::Phi).body;
  const OpExpr target = identity_target(n, StatePair::KetTilde);

  std::vector<OpExpr> columns;
  std::map<OpKey, std::size_t> row_of;
  auto index_rows = [&](const OpExpr& e) {
    for (const auto& [key, c] : e.terms()) row_of.emplace(key, row_of.size());
  };
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      columns.push_back(integrate_outer(GExpr::word(n, theta_thetabar(k, l), Scalar::one(n)), ket, bra));
      index_rows(columns.back());
    }
  index_rows(target);

  ScalarMatrix a(row_of.size(), std::vector<Scalar>(columns.size(), Scalar::zero(n)));
  std::vector<Scalar> rhs(row_of.size(), Scalar::zero(n));
  for (std::size_t col = 0; col < columns.size(); ++col)
    for (const auto& [key, c] : columns[col].terms()) a[row_of.at(key)][col] = c;
  for (const auto& [key, c] : target.terms()) rhs[row_of.at(key)] = c;

  const std::vector<Scalar> x = solve_linear(std::move(a), std::move(rhs));
  GExpr w(n);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) w.add(theta_thetabar(k, l), x[static_cast<std::size_t>(k * n + l)]);
  return {n, w};
}

struct CoefficientComparison {
  int index;
  Scalar derived;
  Scalar reference;
  bool agree;
  std::string ratio;  // derived / reference, or "undefined"
};

/// Diagonal coefficient comparison, index by index.
inline std::vector<CoefficientComparison> compare_weights(const Weight& derived, const Weight& reference) {
  std::vector<CoefficientComparison> out;
  for (int i = 0; i < derived.n; ++i) {
    const Scalar d = derived.coeff(i, i);
    const Scalar r = reference.coeff(i, i);
    std::string ratio = "undefined";
    if (r.is_unit()) ratio = (d * r.inverse()).str();
    out.push_back({i, d, r, d == r, ratio});
  }
  return out;
}

/// Resolution defect for the time-evolved pair |theta,t><theta~,t| (or swapped).
inline OpExpr verify_time_resolution(const Weight& w, StatePair p) {
  const OpExpr ket = evolve_state(make_coherent(w.n, ket_family(p)));
  const OpExpr bra = evolve_state(make_coherent(w.n, bra_family(p)));
  return resolution_defect(w, ket, bra, p);
}

}  // namespace qgrass
