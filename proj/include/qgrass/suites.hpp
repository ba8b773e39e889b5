#pragma once

// Verification suites behind the `verify` tool. Each suite appends checks to
// a SuiteReport in a fixed order, so reports are reproducible.

#include <gmpxx.h>

#include <chrono>
#include <exception>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/biortho.hpp"
#include "qgrass/coherent.hpp"
#include "qgrass/report.hpp"
#include "qgrass/resolution.hpp"
#include "qgrass/suq2.hpp"

namespace qgrass {

enum class Selector { Coherent, Resolution, Suq2, Dynamics, Biortho, All };

inline std::optional<Selector> parse_selector(const std::string& s) {
  if (s == "coherent") return Selector::Coherent;
  if (s == "resolution") return Selector::Resolution;
  if (s == "suq2") return Selector::Suq2;
  if (s == "dynamics") return Selector::Dynamics;
  if (s == "biortho") return Selector::Biortho;
  if (s == "all") return Selector::All;
  return std::nullopt;
}

struct SuiteOptions {
  int n_lo = 2;
  int n_hi = 4;
  std::vector<mpq_class> rho;  // numeric rho_1, rho_2, ...; defaults to rho_k = k + 1
  std::optional<CMatrix> H;    // replaces the generated biortho test matrices
  double tol = 1e-10;
  bool timings = true;
};

inline std::vector<mpq_class> rho_values(const SuiteOptions& o, int count) {
  if (!o.rho.empty()) {
    if (static_cast<int>(o.rho.size()) < count)
      throw DomainError("need " + std::to_string(count) + " rho values, got " + std::to_string(o.rho.size()));
    return {o.rho.begin(), o.rho.begin() + count};
  }
  std::vector<mpq_class> r;
  for (int k = 1; k <= count; ++k) r.emplace_back(k + 1);
  return r;
}

using Outcome = std::pair<Status, std::string>;

inline Outcome zero_outcome(const OpExpr& defect) {
  return {defect.is_zero() ? Status::Pass : Status::Fail, defect.str()};
}

/// Zero means pass; anything else is a recorded mismatch with a printed formula.
inline Outcome comparison_outcome(const std::string& defect, bool zero) {
  return {zero ? Status::Pass : Status::ReportedDiscrepancy, defect};
}

inline Outcome residual_outcome(double residual, double tol) {
  return {residual <= tol ? Status::Pass : Status::Fail, format_residual(residual)};
}

class SuiteRunner {
 public:
  explicit SuiteRunner(SuiteOptions opt) : opt_(std::move(opt)) {}

  const SuiteOptions& options() const { return opt_; }
  SuiteReport& report() { return report_; }

  void run(const std::string& id, const std::string& relation, const std::function<Outcome()>& body) {
    Check c{id, relation, Status::Fail, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    try {
      std::tie(c.status, c.defect) = body();
    } catch (const std::exception& e) {
      c.status = Status::Fail;
      c.defect = std::string("error: ") + e.what();
    }
    if (opt_.timings)
      c.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(c));
  }

  const Weight& solved_weight(int n) {
    auto it = weights_.find(n);
    if (it == weights_.end()) it = weights_.emplace(n, solve_weight(n)).first;
    return it->second;
  }

 private:
  SuiteOptions opt_;
  SuiteReport report_;
  std::map<int, Weight> weights_;
};

inline std::string fam_tag(Family f) { return f == Family::Psi ? "psi" : "phi"; }

inline void run_coherent(SuiteRunner& s) {
  for (int n = s.options().n_lo; n <= s.options().n_hi; ++n) {
    const std::string sfx = "." + std::to_string(n);
    for (Family f : {Family::Psi, Family::Phi}) {
      const bool psi = f == Family::Psi;
      s.run("coherent.eigen." + fam_tag(f) + sfx, psi ? "b|th> = th|th>" : "b~|th~> = th|th~>",
            [=] { return zero_outcome(verify_eigen(make_coherent(n, f))); });
    }
    for (Family f : {Family::Psi, Family::Phi}) {
      const bool psi = f == Family::Psi;
      s.run("coherent.expform." + fam_tag(f) + sfx,
            psi ? "sum_i qbar^(i(i+1)/2)/sqrt(rho_i!) th^i|psi_i> = e_q^(b# th)|psi_0>"
                : "sum_i qbar^(i(i+1)/2)/sqrt(rho_i!) th^i|phi_i> = e_q^(b~#' th)|phi_0>",
            [=] { return zero_outcome(coherent_from_exponential(n, f) - make_coherent(n, f).body); });
    }
    s.run("coherent.eta" + sfx, "eta|th> = |th~>", [=] {
      return zero_outcome(eta_conjugate(make_coherent(n).body, EtaSide::Forward) -
                          make_coherent(n, Family::Phi).body);
    });
  }
}

inline std::string pair_tag(StatePair p) {
  switch (p) {
    case StatePair::KetTilde: return "ket_tilde";
    case StatePair::TildeKet: return "tilde_ket";
    case StatePair::KetKet: return "ket_ket";
    case StatePair::TildeTilde: return "tilde_tilde";
  }
  return "?";
}

inline void run_resolution(SuiteRunner& s) {
  for (int n = s.options().n_lo; n <= s.options().n_hi; ++n) {
    const std::string sfx = "." + std::to_string(n);
    s.run("resolution.solve" + sfx, "unique w(th,thb) with int dthb dth w |th><th~| = I; off-diagonal part", [&s, n] {
      const Weight& w = s.solved_weight(n);
      GExpr off(n);
      for (const auto& [word, c] : w.w.terms()) {
        const auto [a, b] = grade(word);
        if (a != b) off.accumulate(word, c);
      }
      return Outcome{off.is_zero() ? Status::Pass : Status::Fail, off.str()};
    });
    for (StatePair p : {StatePair::KetTilde, StatePair::TildeKet}) {
      s.run("resolution.mixed." + pair_tag(p) + sfx, "int dthb dth w " + pair_name(p) + " = I",
            [&s, n, p] { return zero_outcome(verify_resolution(s.solved_weight(n), p)); });
    }
    for (StatePair p : {StatePair::KetKet, StatePair::TildeTilde}) {
      s.run("resolution.same." + pair_tag(p) + sfx,
            "int dthb dth w " + pair_name(p) + " != I (same-family dyads only)", [&s, n, p] {
              const Weight& w = s.solved_weight(n);
              const OpExpr integral =
                  integrate_outer(w.w, make_coherent(n, ket_family(p)).body, make_coherent(n, bra_family(p)).body);
              const bool ok = !integral.is_zero() && only_same_family_dyads(integral);
              return Outcome{ok ? Status::Pass : Status::Fail, integral.str()};
            });
    }
    const std::pair<const char*, Weight (*)(int)> refs[] = {
        {"closed", &closed_form_weight},
        {"alt", &cij_weight},
    };
    for (const auto& [tag, make] : refs) {
      const bool closed = std::string(tag) == "closed";
      for (int i = 0; i < n; ++i) {
        s.run("resolution.compare." + std::string(tag) + sfx + "." + std::to_string(i),
              closed ? "c_ii = q^(i(i+1)) rho_(n-i-1)!" : "c_ii = q^(i(i+1)) rho_i!", [&s, n, i, make] {
                const auto cmp = compare_weights(s.solved_weight(n), make(n))[static_cast<std::size_t>(i)];
                return comparison_outcome("derived " + cmp.derived.str() + "; reference " + cmp.reference.str() +
                                              "; ratio " + cmp.ratio,
                                          cmp.agree);
              });
      }
    }
    if (n == 3) {
      s.run("resolution.three_level", "w = rho_1 rho_2 + (rho_1/q) th thb + th^2 thb^2", [&s] {
        const GExpr d = s.solved_weight(3).w - three_level_weight().w;
        return comparison_outcome(d.str(), d.is_zero());
      });
    }
  }
}

inline void run_dynamics(SuiteRunner& s) {
  for (int n = s.options().n_lo; n <= s.options().n_hi; ++n) {
    const std::string sfx = "." + std::to_string(n);
    for (Family f : {Family::Psi, Family::Phi}) {
      s.run("dynamics.stability." + fam_tag(f) + sfx,
            f == Family::Psi ? "|th,t> = exp(i(n-2)Et)|th(t)>, E_k = -(n-k-2)E"
                             : "|th~,t> = exp(i(n-2)Et)|th~(t)>, E_k = -(n-k-2)E",
            [=] { return zero_outcome(check_stability(n, f)); });
    }
    for (StatePair p : {StatePair::KetTilde, StatePair::TildeKet}) {
      s.run("dynamics.bi_resolution." + pair_tag(p) + sfx, "int dthb dth w(static) " + pair_name(p) + "(t) = I",
            [&s, n, p] { return zero_outcome(verify_time_resolution(s.solved_weight(n), p)); });
    }
  }
}

inline void run_suq2(SuiteRunner& s) {
  for (int level = s.options().n_lo; level <= s.options().n_hi; ++level) {
    for (bool equal : {false, true}) {
      const bool expected = equal || level == 3;
      const std::string id =
          "suq2.closure.q" + std::to_string(level) + (equal ? ".equal_rho" : ".free_rho");
      s.run(id,
            std::string("[b_z,b]_q = (rho_1 - q rho_2 + q^2 rho_1) b ") + (expected ? "holds" : "fails") +
                " since (1+q+q^2)(rho_1-rho_2) " + (expected ? "= 0" : "!= 0"),
            [=] {
              const ClosureVerdict v = check_closure(level, equal);
              return Outcome{v.holds == expected ? Status::Pass : Status::Fail, v.defect_a.str()};
            });
    }
  }
  const Suq2System sys = make_suq2(3);
  int rel = 0;
  for (const auto& d : verify_suq2_relations(sys)) {
    s.run("suq2.relation." + std::to_string(++rel), d.name + " = 0, P = rho_1 - q rho_2 + q^2 rho_1",
          [d] { return zero_outcome(d.defect); });
  }
  s.run("suq2.prefactors", "rho_1 - q rho_2 + q^2 rho_1 = rho_2 - q rho_1 + q^2 rho_2 at q^3 = 1", [] {
    const Scalar d = prefactor_difference(3);
    return Outcome{d.is_zero() ? Status::Pass : Status::Fail, d.str()};
  });
  for (LadderKind k : {LadderKind::B, LadderKind::BSharp, LadderKind::BTilde, LadderKind::BTildeSharpPrime}) {
    s.run("suq2.nilpotent." + ladder_name(k), ladder_name(k) + "^3 = 0",
          [k] { return zero_outcome(make_ladder(k, 3).op.pow(3)); });
  }
  for (StatePair p : {StatePair::KetTilde, StatePair::TildeKet}) {
    s.run("suq2.resolution." + pair_tag(p), "int dthb dth (rho_1 rho_2 + (rho_1/q) th thb + th^2 thb^2) " +
                                                 pair_name(p) + " = I",
          [p] { return zero_outcome(verify_resolution(three_level_weight(), p)); });
  }
  s.run("suq2.stability", "|th,t> = exp(iEt)|th(t)>, (E_0,E_1,E_2) = (-E,0,E)",
        [] { return zero_outcome(check_stability(3)); });
  s.run("suq2.squeeze.terminates", "exp[(th b#^2 - thb b^2)/2] is a finite series", [sys] {
    const SqueezeResult r = make_squeeze(sys);
    return Outcome{Status::Pass, "highest nonzero power " + std::to_string(r.highest_power)};
  });
  s.run("suq2.squeeze.closed_form", "S(th) = I + X - (qbar/4) th thb (b#^2 b^2 + q b^2 b#^2)", [sys] {
    const SqueezeResult r = make_squeeze(sys);
    return comparison_outcome(r.defect.str(), r.defect.is_zero());
  });
  for (Family f : {Family::Psi, Family::Phi}) {
    const bool psi = f == Family::Psi;
    s.run(std::string("suq2.squeezed_state.") + (psi ? "xi" : "xi_tilde"),
          psi ? "S(th)|psi_0> = (1 - rho_1 rho_2/4 th thb)|psi_0> + sqrt(rho_1 rho_2)/2 th|psi_2>"
              : "eta S(th)|psi_0> = (1 - rho_1 rho_2/4 th thb)|phi_0> + sqrt(rho_1 rho_2)/2 th|phi_2>",
          [sys, f] {
            const SqueezedStateResult r = make_squeezed_state(sys, f);
            return comparison_outcome(r.defect.str(), r.defect.is_zero());
          });
  }
  s.run("suq2.squeeze.tilde", "eta S(th) eta^-1 = exp[(th b~#'^2 - thb b~^2)/2]",
        [sys] { return zero_outcome(tilde_squeeze_defect(sys)); });
}

/// Checks one concrete matrix: decomposition invariants, the metric, numeric
/// ladders, and symbolic identities instantiated on its eigenbasis.
inline void run_biortho_matrix(SuiteRunner& s, const std::string& tag, const CMatrix& h) {
  const double tol = s.options().tol;
  const std::string pfx = "biortho." + tag + ".";
  std::optional<BiorthoDecomp> dec;
  s.run(pfx + "decompose", "H psi_i = E_i psi_i, H^dag phi_i = E_i phi_i, <phi_i|psi_j> = delta_ij, sum|psi><phi| = I",
        [&] {
          dec = biortho_decompose(h, tol);
          return residual_outcome(decomposition_residuals(*dec).max(), tol);
        });
  if (!dec) return;
  const BiorthoDecomp& d = *dec;
  const int m = d.size();
  const std::vector<mpq_class> rho = rho_values(s.options(), m - 1);

  s.run(pfx + "pseudo_hermitian", "H^dag = eta H eta^-1, eta > 0", [&] {
    const auto rep = check_pseudo_hermiticity(d, tol);
    if (rep.min_eta_eigenvalue <= 0) return Outcome{Status::Fail, "eta not positive definite"};
    return residual_outcome(rep.residual, tol);
  });
  if (m < 2) return;
  const NumericLadder lad = numeric_ladder(d, rho);
  s.run(pfx + "ladder.nilpotent", "b^n = 0", [&] { return residual_outcome(lad.nilpotency, tol); });
  s.run(pfx + "ladder.sharp", "eta^-1 b^dag eta = sum sqrt(rho_(i+1)) |psi_(i+1)><phi_i|",
        [&] { return residual_outcome(lad.sharp_explicit, tol); });
  s.run(pfx + "ladder.tilde_sharp", "b~#' = b^dag", [&] { return residual_outcome(lad.tilde_sharp_dagger, tol); });
  s.run(pfx + "ladder.commutator", "[b,b#]_q matches the symbolic b_z", [&] {
    const OpExpr b = make_ladder(LadderKind::B, m).op;
    const OpExpr bz = q_commutator(b, make_ladder(LadderKind::BSharp, m).op);
    const CMatrix numeric = numeric_q_commutator(lad.b, lad.bsharp, m);
    const auto inst = instantiate_numeric(bz, d, rho);
    const CMatrix symbolic = inst.blocks.empty() ? CMatrix::Zero(m, m) : inst.blocks.begin()->second;
    return residual_outcome((numeric - symbolic).norm() / lad.b.squaredNorm(), tol);
  });
  s.run(pfx + "eigen", "b|th> = th|th> on the eigenbasis", [&] {
    const CoherentState st = make_coherent(m);
    const OpExpr lhs = annihilator_for(m, Family::Psi) * st.body;
    const OpExpr rhs = OpExpr::generator(m, theta()) * st.body;
    return residual_outcome(instance_distance(instantiate_numeric(lhs, d, rho), instantiate_numeric(rhs, d, rho)),
                            tol);
  });
  s.run(pfx + "resolution.mixed", "int dthb dth w |th><th~| = sum|psi_i><phi_i| = I on the eigenbasis", [&] {
    const OpExpr integral =
        integrate_outer(s.solved_weight(m).w, make_coherent(m).body, make_coherent(m, Family::Phi).body);
    const OpExpr id = OpExpr::identity(m);
    return residual_outcome(instance_distance(instantiate_numeric(integral, d, rho), instantiate_numeric(id, d, rho)),
                            tol);
  });
  s.run(pfx + "resolution.same", "int dthb dth w |th><th| - I, measured on the eigenbasis", [&] {
    const OpExpr integral = integrate_outer(s.solved_weight(m).w, make_coherent(m).body, make_coherent(m).body);
    const double gap =
        instance_distance(instantiate_numeric(integral, d, rho), instantiate_numeric(OpExpr::identity(m), d, rho));
    // A Hermitian H has psi = phi, and then the same-family integral is I too.
    const bool hermitian = (h - h.adjoint()).norm() <= tol * spectral_scale(h);
    const bool ok = hermitian ? gap <= tol : gap > tol;
    return Outcome{ok ? Status::Pass : Status::Fail, format_residual(gap)};
  });
}

inline void run_biortho(SuiteRunner& s) {
  if (s.options().H) {
    run_biortho_matrix(s, "input", *s.options().H);
    return;
  }
  for (int n = s.options().n_lo; n <= s.options().n_hi; ++n) {
    if (n == 2) {
      CMatrix h(2, 2);
      h << 1, 4, 1, 1;
      run_biortho_matrix(s, "reference", h);
    }
    std::mt19937_64 rng(static_cast<unsigned long long>(n));
    run_biortho_matrix(s, "random" + std::to_string(n), random_real_spectrum_matrix(n, rng));
  }
}

inline SuiteReport run_suite(Selector sel, const SuiteOptions& opt) {
  if (opt.n_lo < 2 || opt.n_hi < opt.n_lo) throw DomainError("invalid level range");
  SuiteRunner s(opt);
  if (sel == Selector::Coherent || sel == Selector::All) run_coherent(s);
  if (sel == Selector::Resolution || sel == Selector::All) run_resolution(s);
  if (sel == Selector::Dynamics || sel == Selector::All) run_dynamics(s);
  if (sel == Selector::Suq2 || sel == Selector::All) run_suq2(s);
  if (sel == Selector::Biortho || sel == Selector::All) run_biortho(s);
  return std::move(s.report());
}

}  // namespace qgrass
