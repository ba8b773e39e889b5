#pragma once

// Grassmannian coherent states |theta>_n (over psi) and |theta~>_n (over phi):
// closed forms, eigenvalue defects, q-exponential forms and time evolution.

#include <functional>
#include <string>

#include "qgrass/errors.hpp"
#include "qgrass/grassmann.hpp"
#include "qgrass/operators.hpp"
#include "qgrass/scalar.hpp"

namespace qgrass {

struct CoherentState {
  int n;
  Family family;  // Psi: |theta>_n, Phi: |theta~>_n
  OpExpr body;
};

/// qbar^{i(i+1)/2} / sqrt(rho_i!)
inline Scalar coherent_coefficient(int n, int i) {
  return Scalar::q_power(n, -static_cast<long long>(i) * (i + 1) / 2) * Scalar::rho_factorial_power(n, i, -1);
}

/// |theta>_n = sum_i qbar^{i(i+1)/2} / sqrt(rho_i!) theta^i |F_i>.
inline CoherentState make_coherent(int n, Family family = Family::Psi) {
  if (n < 2) throw DomainError("coherent states need n >= 2");
  OpExpr body(n);
  for (int i = 0; i < n; ++i) body.accumulate(Word::of(theta(), i), Dyad::ket(family, i), coherent_coefficient(n, i));
  return {n, family, body};
}

/// Annihilator whose eigenstate the family is: b for psi, b~ for phi.
inline OpExpr annihilator_for(int n, Family family) {
  return make_ladder(family == Family::Psi ? LadderKind::B : LadderKind::BTilde, n).op;
}

/// b|theta> - theta|theta>, canonical; zero iff the eigenvalue equation holds.
inline OpExpr verify_eigen(const CoherentState& s) {
  const OpExpr th = OpExpr::generator(s.n, theta());
  return annihilator_for(s.n, s.family) * s.body - th * s.body;
}

/// sum_k arg^k * coeff(k) until arg^k vanishes; throws after max_nonzero
/// nonzero powers.
inline OpExpr power_series(const OpExpr& arg, const std::function<Scalar(int)>& coeff, int max_nonzero) {
  OpExpr sum(arg.level());
  OpExpr power = OpExpr::identity(arg.level());
  for (int k = 0; !power.is_zero(); ++k) {
    if (k >= max_nonzero) throw NonTerminatingSeries("series still nonzero after " + std::to_string(k) + " powers");
    sum += coeff(k) * power;
    power = power * arg;
  }
  return sum;
}

/// e_q^x = sum_k x^k / rho_k!.
inline OpExpr q_exponential(const OpExpr& arg, int n) {
  return power_series(
      arg, [&](int k) { return Scalar::rho_factorial_power(arg.level(), k, -2); }, n + 1);
}

/// e_q^{(b^sharp theta)}|psi_0> or e_q^{(b~^{sharp'} theta)}|phi_0>.
inline OpExpr coherent_from_exponential(int n, Family family) {
  const LadderKind creator = family == Family::Psi ? LadderKind::BSharp : LadderKind::BTildeSharpPrime;
  const OpExpr arg = make_ladder(creator, n).op * OpExpr::generator(n, theta());
  return q_exponential(arg, n) * OpExpr::ket(n, family, 0);
}

/// E_k in units of E; phases are u^{E_k/E} with u = exp(-iEt).
using SpectrumRule = std::function<int(int k, int n)>;

/// E_k = -(n-k-2) E, the equally spaced spectrum under which coherence is kept.
inline int stable_spectrum(int k, int n) { return -(n - k - 2); }

/// Multiplies each |F_k> term by u^{E_k/E}.
inline OpExpr evolve_state(const CoherentState& s, const SpectrumRule& rule = stable_spectrum) {
  OpExpr r(s.n);
  for (const auto& [key, c] : s.body.terms()) {
    if (!key.dyad.has_ket()) throw DomainError("evolve_state expects a ket-valued state");
    r.accumulate(key.word, key.dyad, c * Scalar::u(s.n, rule(key.dyad.ket_index, s.n)));
  }
  return r;
}

/// theta -> u theta: multiplies each term by u^{theta-degree}.
inline OpExpr rescale_theta(const OpExpr& e) {
  OpExpr r(e.level());
  for (const auto& [key, c] : e.terms()) r.accumulate(key.word, key.dyad, c * Scalar::u(e.level(), grade(key.word).first));
  return r;
}

/// |theta,t> - exp(i(n-2)Et)|theta(t)>, theta(t) = exp(-iEt) theta. Zero means stable.
inline OpExpr check_stability(int n, Family family = Family::Psi, const SpectrumRule& rule = stable_spectrum) {
  const CoherentState s = make_coherent(n, family);
  return evolve_state(s, rule) - Scalar::u(n, -(n - 2)) * rescale_theta(s.body);
}

}  // namespace qgrass
