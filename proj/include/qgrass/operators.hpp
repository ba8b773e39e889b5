#pragma once

// Kets, bras and dyads of an abstract biorthonormal family {|psi_i>, |phi_i>}
// with Grassmann-valued coefficients. Canonical terms carry their Grassmann
// word to the left of the dyad.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qgrass/errors.hpp"
#include "qgrass/grassmann.hpp"
#include "qgrass/scalar.hpp"

namespace qgrass {

enum class Family : std::uint8_t { Psi, Phi };

inline Family other(Family f) { return f == Family::Psi ? Family::Phi : Family::Psi; }
inline std::string family_name(Family f) { return f == Family::Psi ? "psi" : "phi"; }

enum class DyadForm : std::uint8_t { Identity, Ket, Bra, Outer };

struct Dyad {
  DyadForm form = DyadForm::Identity;
  Family ket_family = Family::Psi;
  int ket_index = 0;
  Family bra_family = Family::Psi;
  int bra_index = 0;

  static Dyad identity() { return {}; }
  static Dyad ket(Family f, int i) { return {DyadForm::Ket, f, i, Family::Psi, 0}; }
  static Dyad bra(Family f, int j) { return {DyadForm::Bra, Family::Psi, 0, f, j}; }
  static Dyad outer(Family f, int i, Family g, int j) { return {DyadForm::Outer, f, i, g, j}; }

  bool has_ket() const { return form == DyadForm::Ket || form == DyadForm::Outer; }
  bool has_bra() const { return form == DyadForm::Bra || form == DyadForm::Outer; }

  Dyad dagger() const {
    switch (form) {
      case DyadForm::Identity: return *this;
      case DyadForm::Ket: return bra(ket_family, ket_index);
      case DyadForm::Bra: return ket(bra_family, bra_index);
      case DyadForm::Outer: return outer(bra_family, bra_index, ket_family, ket_index);
    }
    return *this;
  }

  std::string str() const {
    const auto k = [&] { return "|" + family_name(ket_family) + std::to_string(ket_index) + ">"; };
    const auto b = [&] { return "<" + family_name(bra_family) + std::to_string(bra_index) + "|"; };
    switch (form) {
      case DyadForm::Identity: return "I";
      case DyadForm::Ket: return k();
      case DyadForm::Bra: return b();
      case DyadForm::Outer: return k() + b();
    }
    return "?";
  }

  friend auto operator<=>(const Dyad&, const Dyad&) = default;
};

/// Product of two dyads using only the dual pairings <phi_i|psi_j> = <psi_i|phi_j> = delta_ij.
/// nullopt means the product vanishes.
inline std::optional<Dyad> contract(const Dyad& a, const Dyad& b) {
  if (a.form == DyadForm::Identity) return b;
  if (b.form == DyadForm::Identity) return a;
  if (a.has_bra() && b.has_ket()) {
    if (a.bra_family == b.ket_family)
      throw GramUnknown("pairing <" + family_name(a.bra_family) + std::to_string(a.bra_index) + "|" +
                        family_name(b.ket_family) + std::to_string(b.ket_index) + "> is not determined");
    if (a.bra_index != b.ket_index) return std::nullopt;
    if (a.form == DyadForm::Outer && b.form == DyadForm::Outer)
      return Dyad::outer(a.ket_family, a.ket_index, b.bra_family, b.bra_index);
    if (a.form == DyadForm::Outer) return Dyad::ket(a.ket_family, a.ket_index);
    if (b.form == DyadForm::Outer) return Dyad::bra(b.bra_family, b.bra_index);
    return Dyad::identity();
  }
  if (a.form == DyadForm::Ket && b.form == DyadForm::Bra)
    return Dyad::outer(a.ket_family, a.ket_index, b.bra_family, b.bra_index);
  throw IllFormedProduct("product " + a.str() + " * " + b.str() + " is not defined");
}

/// x with D g = q^x g D: the phase from moving g leftward across D.
/// theta|F_i> = q^{i-1}|F_i>theta, theta<F_i| = qbar^{i-1}<F_i|theta; thetabar conjugate.
inline long long dyad_exchange(const Dyad& d, Generator g) {
  if (d.form == DyadForm::Identity) return 0;
  const bool th = g == theta(1);
  const bool thb = g == thetabar(1);
  if (!th && !thb)
    throw UnspecifiedRelation("no quantization relation between " + g.str() + " and " + d.str());
  long long x = 0;
  if (d.has_ket()) x += th ? 1 - d.ket_index : d.ket_index - 1;
  if (d.has_bra()) x += th ? d.bra_index - 1 : 1 - d.bra_index;
  return x;
}

inline long long dyad_exchange(const Dyad& d, const Word& w) {
  long long x = 0;
  for (const auto& f : w.factors()) x += dyad_exchange(d, f.gen) * f.exp;
  return x;
}

struct OpKey {
  Word word;
  Dyad dyad;
  friend auto operator<=>(const OpKey&, const OpKey&) = default;
};

using OpFactor = std::variant<Word, Dyad>;

/// Formal sum of Scalar * word * dyad terms in canonical order.
class OpExpr {
 public:
  explicit OpExpr(int level) : level_(level) {}

  static OpExpr identity(int level) { return term(level, Word{}, Dyad::identity(), Scalar::one(level)); }
  static OpExpr term(int level, const Word& w, const Dyad& d, const Scalar& c) {
    OpExpr e(level);
    e.add_product({OpFactor{w}, OpFactor{d}}, c);
    return e;
  }
  static OpExpr dyad(int level, const Dyad& d, const Scalar& c) { return term(level, Word{}, d, c); }
  static OpExpr ket(int level, Family f, int i) { return dyad(level, Dyad::ket(f, i), Scalar::one(level)); }
  static OpExpr bra(int level, Family f, int j) { return dyad(level, Dyad::bra(f, j), Scalar::one(level)); }
  static OpExpr outer(int level, Family f, int i, Family g, int j) {
    return dyad(level, Dyad::outer(f, i, g, j), Scalar::one(level));
  }
  static OpExpr grassmann(const GExpr& g) {
    OpExpr e(g.level());
    for (const auto& [w, c] : g.terms()) e.accumulate(w, Dyad::identity(), c);
    return e;
  }
  static OpExpr generator(int level, Generator g, int exp = 1) {
    return term(level, Word::of(g, exp), Dyad::identity(), Scalar::one(level));
  }
  static OpExpr scalar(const Scalar& s) { return term(s.level(), Word{}, Dyad::identity(), s); }

  /// sum_i |F_i><G_i| over `levels` states.
  static OpExpr completeness(int level, int levels, Family ket = Family::Psi) {
    OpExpr e(level);
    for (int i = 0; i < levels; ++i) e.accumulate(Word{}, Dyad::outer(ket, i, other(ket), i), Scalar::one(level));
    return e;
  }

  int level() const { return level_; }
  const std::map<OpKey, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds coeff times an arbitrary product of words and dyads, normal-ordered.
  void add_product(std::span<const OpFactor> factors, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    long long phase = 0;
    Word acc;
    Dyad cur = Dyad::identity();
    for (const auto& f : factors) {
      if (const auto* w = std::get_if<Word>(&f)) {
        if (w->empty()) continue;
        phase += dyad_exchange(cur, *w);
        NormalForm nf = normal_form(acc * *w, level_);
        if (nf.zero) return;
        phase += nf.q_exponent;
        acc = std::move(nf.word);
      } else {
        const auto next = contract(cur, std::get<Dyad>(f));
        if (!next) return;
        cur = *next;
      }
    }
    accumulate(acc, cur, coeff * Scalar::q_power(level_, phase));
  }
  void add_product(std::initializer_list<OpFactor> factors, const Scalar& coeff) {
    add_product(std::span<const OpFactor>(factors.begin(), factors.size()), coeff);
  }

  /// Adds a term already in canonical form.
  void accumulate(const Word& w, const Dyad& d, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    if (coeff.level() != level_) throw LevelMismatch(level_, coeff.level());
    OpKey key{w, d};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(std::move(key), coeff);
      return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  OpExpr& operator+=(const OpExpr& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) accumulate(k.word, k.dyad, c);
    return *this;
  }
  OpExpr& operator-=(const OpExpr& o) {
    check(o);
    for (const auto& [k, c] : o.terms_) accumulate(k.word, k.dyad, -c);
    return *this;
  }
  friend OpExpr operator+(OpExpr a, const OpExpr& b) { return a += b; }
  friend OpExpr operator-(OpExpr a, const OpExpr& b) { return a -= b; }
  OpExpr operator-() const { return Scalar::rational(level_, -1) * *this; }

  friend OpExpr operator*(const Scalar& s, const OpExpr& e) {
    OpExpr r(e.level_);
    for (const auto& [k, c] : e.terms_) r.accumulate(k.word, k.dyad, s * c);
    return r;
  }

  /// Composition: (w1 D1)(w2 D2) = w1 w2' D1 D2 with w2 moved across D1.
  friend OpExpr operator*(const OpExpr& a, const OpExpr& b) {
    a.check(b);
    OpExpr r(a.level_);
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_)
        r.add_product({OpFactor{ka.word}, OpFactor{ka.dyad}, OpFactor{kb.word}, OpFactor{kb.dyad}}, ca * cb);
    return r;
  }

  OpExpr pow(int k) const {
    OpExpr r = identity(level_);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Canonical ordered-term text; stable across runs.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [k, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "[" + c.str() + "]";
      if (!k.word.empty()) out += " " + k.word.str();
      out += " " + k.dyad.str();
    }
    return out;
  }

  friend bool operator==(const OpExpr& a, const OpExpr& b) {
    return a.level_ == b.level_ && a.terms_ == b.terms_;
  }

 private:
  void check(const OpExpr& o) const {
    if (o.level_ != level_) throw LevelMismatch(level_, o.level_);
  }

  int level_;
  std::map<OpKey, Scalar> terms_;
};

/// Normal-orders a raw product of words and dyads.
inline OpExpr op_normal_order(int level, std::span<const OpFactor> factors, const Scalar& coeff) {
  OpExpr e(level);
  e.add_product(factors, coeff);
  return e;
}

/// Re-canonicalizes every term; the identity on canonical input.
inline OpExpr op_normal_order(const OpExpr& e) {
  OpExpr r(e.level());
  for (const auto& [k, c] : e.terms()) r.add_product({OpFactor{k.word}, OpFactor{k.dyad}}, c);
  return r;
}

inline OpExpr op_compose(const OpExpr& a, const OpExpr& b) { return a * b; }

/// Anti-linear; (c w D)^dagger = conj(c) D^dagger w^dagger, re-normal-ordered.
inline OpExpr op_dagger(const OpExpr& e) {
  OpExpr r(e.level());
  for (const auto& [k, c] : e.terms())
    r.add_product({OpFactor{k.dyad.dagger()}, OpFactor{k.word.dagger()}}, c.conj());
  return r;
}

enum class EtaSide : std::uint8_t {
  Forward,  // eta X eta^{-1}: |psi> -> |phi>, <phi| -> <psi|
  Inverse,  // eta^{-1} X eta: |phi> -> |psi>, <psi| -> <phi|
};

/// Conjugation by the metric as a relabeling of family tags. Grassmann words
/// commute with eta and pass through. Kets or bras that would need the Gram
/// matrix (eta|phi>, <psi|eta^{-1}, ...) raise GramUnknown.
inline OpExpr eta_conjugate(const OpExpr& e, EtaSide side) {
  const Family ket_from = side == EtaSide::Forward ? Family::Psi : Family::Phi;
  const Family bra_from = other(ket_from);
  OpExpr r(e.level());
  for (const auto& [k, c] : e.terms()) {
    Dyad d = k.dyad;
    if (d.has_ket()) {
      if (d.ket_family != ket_from)
        throw GramUnknown("metric acting on |" + family_name(d.ket_family) + std::to_string(d.ket_index) + ">");
      d.ket_family = other(d.ket_family);
    }
    if (d.has_bra()) {
      if (d.bra_family != bra_from)
        throw GramUnknown("metric acting on <" + family_name(d.bra_family) + std::to_string(d.bra_index) + "|");
      d.bra_family = other(d.bra_family);
    }
    r.accumulate(k.word, d, c);
  }
  return r;
}

/// A^sharp = eta^{-1} A^dagger eta.
inline OpExpr sharp_adjoint(const OpExpr& e) { return eta_conjugate(op_dagger(e), EtaSide::Inverse); }

/// [A, B]_q = AB - q BA.
inline OpExpr q_commutator(const OpExpr& a, const OpExpr& b) {
  return a * b - Scalar::q_power(a.level(), 1) * (b * a);
}

enum class LadderKind : std::uint8_t { B, BSharp, BTilde, BTildeSharpPrime };

inline std::string ladder_name(LadderKind k) {
  switch (k) {
    case LadderKind::B: return "b";
    case LadderKind::BSharp: return "b#";
    case LadderKind::BTilde: return "b~";
    case LadderKind::BTildeSharpPrime: return "b~#'";
  }
  return "?";
}

struct Ladder {
  LadderKind kind;
  int levels;
  OpExpr op;
};

/// Annihilator b = sum_i sqrt(rho_{i+1}) |psi_i><phi_{i+1}| on `levels` states,
/// with q a primitive `q_level`-th root of unity.
inline OpExpr annihilator(int levels, int q_level) {
  OpExpr b(q_level);
  for (int i = 0; i + 1 < levels; ++i)
    b.accumulate(Word{}, Dyad::outer(Family::Psi, i, Family::Phi, i + 1), Scalar::sqrt_rho(q_level, i + 1));
  return b;
}

/// b, b^sharp = eta^{-1} b^dagger eta, b~ = eta b eta^{-1}, and
/// b~^{sharp'} = eta b~^dagger eta^{-1} (the primed metric is eta^{-1}).
inline Ladder make_ladder(LadderKind kind, int levels, int q_level = 0) {
  if (levels < 2) throw DomainError("ladder needs n >= 2 levels");
  if (q_level == 0) q_level = levels;
  const OpExpr b = annihilator(levels, q_level);
  switch (kind) {
    case LadderKind::B: return {kind, levels, b};
    case LadderKind::BSharp: return {kind, levels, sharp_adjoint(b)};
    case LadderKind::BTilde: return {kind, levels, eta_conjugate(b, EtaSide::Forward)};
    case LadderKind::BTildeSharpPrime:
      return {kind, levels, eta_conjugate(op_dagger(eta_conjugate(b, EtaSide::Forward)), EtaSide::Forward)};
  }
  return {kind, levels, b};
}

}  // namespace qgrass
