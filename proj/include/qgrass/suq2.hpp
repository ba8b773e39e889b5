#pragma once

// Three-level SU_q(2) specialization: b, b^sharp and b_z = [b, b^sharp]_q,
// closure of the algebra, and the squeezing operator and squeezed states.

#include <functional>
#include <string>
#include <vector>

#include "qgrass/coherent.hpp"
#include "qgrass/errors.hpp"
#include "qgrass/operators.hpp"
#include "qgrass/resolution.hpp"

namespace qgrass {

/// Applies f to every coefficient.
inline OpExpr map_coefficients(const OpExpr& e, const std::function<Scalar(const Scalar&)>& f) {
  OpExpr r(e.level());
  for (const auto& [key, c] : e.terms()) r.accumulate(key.word, key.dyad, f(c));
  return r;
}

struct Suq2System {
  int q_level;  // q is a primitive q_level-th root of unity
  OpExpr b;
  OpExpr bsharp;
  OpExpr bz;
};

/// Three states; rho_1, rho_2 symbolic, or tied together when equal_rho.
inline Suq2System make_suq2(int q_level = 3, bool equal_rho = false) {
  OpExpr b = make_ladder(LadderKind::B, 3, q_level).op;
  if (equal_rho) {
    b = map_coefficients(b, [&](const Scalar& c) { return c.substitute(2, Scalar::sqrt_rho(q_level, 1)); });
  }
  const OpExpr bs = sharp_adjoint(b);
  return {q_level, b, bs, q_commutator(b, bs)};
}

/// rho_1 - q rho_2 + q^2 rho_1 and rho_2 - q rho_1 + q^2 rho_2.
inline std::pair<Scalar, Scalar> suq2_prefactors(int q_level) {
  const Scalar r1 = Scalar::rho(q_level, 1), r2 = Scalar::rho(q_level, 2);
  const Scalar q = Scalar::q_power(q_level, 1), q2 = Scalar::q_power(q_level, 2);
  return {r1 - q * r2 + q2 * r1, r2 - q * r1 + q2 * r2};
}

struct ClosureVerdict {
  int q_level;
  bool equal_rho;
  OpExpr bz_b;       // [b_z, b]_q
  OpExpr defect_a;   // [b_z, b]_q - (rho_1 - q rho_2 + q^2 rho_1) b
  OpExpr defect_b;   // [b_z, b]_q - (rho_2 - q rho_1 + q^2 rho_2) b
  bool holds;
};

inline ClosureVerdict check_closure(int q_level, bool equal_rho = false) {
  const Suq2System sys = make_suq2(q_level, equal_rho);
  auto [pa, pb] = suq2_prefactors(q_level);
  if (equal_rho) {
    pa = pa.substitute(2, Scalar::sqrt_rho(q_level, 1));
    pb = pb.substitute(2, Scalar::sqrt_rho(q_level, 1));
  }
  OpExpr bzb = q_commutator(sys.bz, sys.b);
  OpExpr da = bzb - pa * sys.b;
  OpExpr db = bzb - pb * sys.b;
  const bool holds = da.is_zero() && db.is_zero();
  return {q_level, equal_rho, std::move(bzb), std::move(da), std::move(db), holds};
}

struct NamedDefect {
  std::string name;
  OpExpr defect;
};

/// Defects of [b,b#]_q = b_z, [b_z,b]_q = P b, [b#,b_z]_q = P b#, with
/// P = rho_1 - q rho_2 + q^2 rho_1.
inline std::vector<NamedDefect> verify_suq2_relations(const Suq2System& sys) {
  const Scalar pa = suq2_prefactors(sys.q_level).first;
  return {
      {"[b,b#]_q - b_z", q_commutator(sys.b, sys.bsharp) - sys.bz},
      {"[b_z,b]_q - P b", q_commutator(sys.bz, sys.b) - pa * sys.b},
      {"[b#,b_z]_q - P b#", q_commutator(sys.bsharp, sys.bz) - pa * sys.bsharp},
  };
}

/// Difference of the two prefactors; vanishes iff (1+q+q^2)(rho_1-rho_2) = 0.
inline Scalar prefactor_difference(int q_level) {
  const auto [pa, pb] = suq2_prefactors(q_level);
  return pa - pb;
}

/// rho_1 rho_2 + (rho_1/q) theta thetabar + theta^2 thetabar^2.
inline Weight three_level_weight() {
  return diagonal_weight(3, [](int i) {
    switch (i) {
      case 0: return Scalar::rho(3, 1) * Scalar::rho(3, 2);
      case 1: return Scalar::q_power(3, -1) * Scalar::rho(3, 1);
      default: return Scalar::one(3);
    }
  });
}

inline Scalar inverse_factorial(int level, int k) {
  mpz_class f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Scalar::rational(level, mpq_class(1, f));
}

/// exp(X) by its factorial series. X is first order in the Grassmann
/// generators, so X^k vanishes once k exceeds the top degree 2(n-1).
inline OpExpr grassmann_exp(const OpExpr& x) {
  const int n = x.level();
  return power_series(
      x, [n](int k) { return inverse_factorial(n, k); }, 2 * (n - 1) + 1);
}

/// (theta A^2 - thetabar B^2)/2 for the given raising and lowering operators.
inline OpExpr squeeze_argument(const OpExpr& raise, const OpExpr& lower) {
  const int n = raise.level();
  const Scalar half = Scalar::rational(n, mpq_class(1, 2));
  return half * (OpExpr::generator(n, theta()) * raise.pow(2) - OpExpr::generator(n, thetabar()) * lower.pow(2));
}

struct SqueezeResult {
  OpExpr series;       // exp[(theta b#^2 - thetabar b^2)/2], expanded exactly
  OpExpr closed_form;  // I + X - (qbar/4) theta thetabar (b#^2 b^2 + q b^2 b#^2)
  OpExpr defect;       // series - closed_form
  int highest_power;   // largest k with X^k != 0
};

inline void require_three_levels(const Suq2System& sys) {
  if (sys.q_level != 3) throw DomainError("squeezing is defined for the three-level system (n = 3)");
}

inline SqueezeResult make_squeeze(const Suq2System& sys) {
  require_three_levels(sys);
  const int n = 3;
  const OpExpr x = squeeze_argument(sys.bsharp, sys.b);
  int highest = 0;
  for (OpExpr p = x; !p.is_zero(); p = p * x) ++highest;

  const OpExpr tt = OpExpr::term(n, theta_thetabar(1, 1), Dyad::identity(), Scalar::one(n));
  const OpExpr b2 = sys.b.pow(2), bs2 = sys.bsharp.pow(2);
  const Scalar cross = Scalar::q_power(n, -1) * Scalar::rational(n, mpq_class(-1, 4));
  const OpExpr closed = OpExpr::identity(n) + x + cross * (tt * (bs2 * b2 + Scalar::q_power(n, 1) * (b2 * bs2)));

  OpExpr series = grassmann_exp(x);
  OpExpr defect = series - closed;
  return {std::move(series), closed, std::move(defect), highest};
}

struct SqueezedStateResult {
  OpExpr state;        // S|psi_0> (xi) or eta S|psi_0> (xi~)
  OpExpr closed_form;  // (1 - rho_1 rho_2/4 theta thetabar)|F_0> + sqrt(rho_1 rho_2)/2 theta|F_2>
  OpExpr defect;
};

inline OpExpr squeezed_closed_form(Family f) {
  const int n = 3;
  OpExpr e(n);
  const Scalar r12 = Scalar::rho(n, 1) * Scalar::rho(n, 2);
  e.accumulate(Word{}, Dyad::ket(f, 0), Scalar::one(n));
  e.accumulate(theta_thetabar(1, 1), Dyad::ket(f, 0), Scalar::rational(n, mpq_class(-1, 4)) * r12);
  e.accumulate(Word::of(theta()), Dyad::ket(f, 2),
               Scalar::rational(n, mpq_class(1, 2)) * Scalar::sqrt_rho(n, 1) * Scalar::sqrt_rho(n, 2));
  return e;
}

/// |xi> = S(theta)|psi_0>; |xi~> = eta|xi>.
inline SqueezedStateResult make_squeezed_state(const Suq2System& sys, Family family = Family::Psi) {
  require_three_levels(sys);
  OpExpr xi = make_squeeze(sys).series * OpExpr::ket(3, Family::Psi, 0);
  if (family == Family::Phi) xi = eta_conjugate(xi, EtaSide::Forward);
  OpExpr closed = squeezed_closed_form(family);
  OpExpr defect = xi - closed;
  return {std::move(xi), std::move(closed), std::move(defect)};
}

/// eta S eta^{-1} - exp[(theta b~#'^2 - thetabar b~^2)/2].
inline OpExpr tilde_squeeze_defect(const Suq2System& sys) {
  require_three_levels(sys);
  const OpExpr conjugated = eta_conjugate(make_squeeze(sys).series, EtaSide::Forward);
  const OpExpr bt = eta_conjugate(sys.b, EtaSide::Forward);
  const OpExpr btsp = eta_conjugate(op_dagger(bt), EtaSide::Forward);
  return conjugated - grassmann_exp(squeeze_argument(btsp, bt));
}

}  // namespace qgrass
