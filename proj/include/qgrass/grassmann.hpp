#pragma once

// Z_n-graded Grassmann algebra over Scalar: words in theta_i, thetabar_i and
// their differentials, normal ordering by q-exchange rewriting, and Berezin
// integration.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/errors.hpp"
#include "qgrass/scalar.hpp"

namespace qgrass {

/// Declaration order is the canonical order: dthetabar < dtheta < theta < thetabar.
enum class GenKind : std::uint8_t { DThetaBar = 0, DTheta = 1, Theta = 2, ThetaBar = 3 };

struct Generator {
  GenKind kind = GenKind::Theta;
  int index = 1;

  bool is_differential() const { return kind == GenKind::DTheta || kind == GenKind::DThetaBar; }

  /// theta <-> thetabar, dtheta <-> dthetabar.
  Generator dagger() const {
    switch (kind) {
      case GenKind::Theta: return {GenKind::ThetaBar, index};
      case GenKind::ThetaBar: return {GenKind::Theta, index};
      case GenKind::DTheta: return {GenKind::DThetaBar, index};
      case GenKind::DThetaBar: return {GenKind::DTheta, index};
    }
    return *this;
  }

  /// Variable a differential integrates over.
  Generator variable() const {
    if (kind == GenKind::DTheta) return {GenKind::Theta, index};
    if (kind == GenKind::DThetaBar) return {GenKind::ThetaBar, index};
    return *this;
  }

  std::string str() const {
    std::string base;
    switch (kind) {
      case GenKind::Theta: base = "th"; break;
      case GenKind::ThetaBar: base = "thb"; break;
      case GenKind::DTheta: base = "dth"; break;
      case GenKind::DThetaBar: base = "dthb"; break;
    }
    return index == 1 ? base : base + std::to_string(index);
  }

  friend auto operator<=>(const Generator&, const Generator&) = default;
};

inline Generator theta(int i = 1) { return {GenKind::Theta, i}; }
inline Generator thetabar(int i = 1) { return {GenKind::ThetaBar, i}; }
inline Generator dtheta(int i = 1) { return {GenKind::DTheta, i}; }
inline Generator dthetabar(int i = 1) { return {GenKind::DThetaBar, i}; }

namespace detail {

/// e with (later)(earlier) = q^e (earlier)(later), for earlier < later canonically.
inline std::optional<int> ordered_exchange(Generator earlier, Generator later) {
  using K = GenKind;
  if (earlier.kind == later.kind) {
    if (earlier.kind == K::Theta || earlier.kind == K::ThetaBar) return -1;  // th_j th_i = qbar th_i th_j
    return std::nullopt;
  }
  if (earlier.index != later.index) return std::nullopt;
  const auto pair = [&](K a, K b) { return earlier.kind == a && later.kind == b; };
  if (pair(K::Theta, K::ThetaBar)) return 1;      // thb th = q th thb
  if (pair(K::DThetaBar, K::Theta)) return 1;     // th dthb = q dthb th
  if (pair(K::DTheta, K::ThetaBar)) return 1;     // thb dth = q dth thb
  if (pair(K::DTheta, K::Theta)) return -1;       // th dth = qbar dth th
  if (pair(K::DThetaBar, K::ThetaBar)) return -1;  // thb dthb = qbar dthb thb
  if (pair(K::DThetaBar, K::DTheta)) return -1;   // dth dthb = qbar dthb dth
  return std::nullopt;
}

}  // namespace detail

/// Exponent e with a b = q^e b a. Throws UnspecifiedRelation when no rule applies.
inline int exchange_exponent(Generator a, Generator b) {
  if (a == b) return 0;
  const bool a_later = b < a;
  const auto e = a_later ? detail::ordered_exchange(b, a) : detail::ordered_exchange(a, b);
  if (!e) throw UnspecifiedRelation("no exchange relation between " + a.str() + " and " + b.str());
  return a_later ? *e : -*e;
}

struct Factor {
  Generator gen;
  int exp = 1;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

/// Ordered product of generator powers. Keys of GExpr are canonical words.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Factor> f) : f_(std::move(f)) {}
  static Word of(Generator g, int exp = 1) { return exp == 0 ? Word{} : Word({{g, exp}}); }

  std::span<const Factor> factors() const { return f_; }
  bool empty() const { return f_.empty(); }

  int degree_of(Generator g) const {
    int d = 0;
    for (const auto& f : f_)
      if (f.gen == g) d += f.exp;
    return d;
  }
  bool has_differential() const {
    for (const auto& f : f_)
      if (f.gen.is_differential()) return true;
    return false;
  }

  friend Word operator*(const Word& a, const Word& b) {
    Word w = a;
    w.f_.insert(w.f_.end(), b.f_.begin(), b.f_.end());
    return w;
  }

  /// Reverse and dagger each factor.
  Word dagger() const {
    Word w;
    for (auto it = f_.rbegin(); it != f_.rend(); ++it) w.f_.push_back({it->gen.dagger(), it->exp});
    return w;
  }

  std::string str() const {
    if (f_.empty()) return "1";
    std::string out;
    for (const auto& f : f_) {
      if (!out.empty()) out += " ";
      out += f.gen.str();
      if (f.exp != 1) out += "^" + std::to_string(f.exp);
    }
    return out;
  }

  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Factor> f_;
};

/// (theta-kind degree, thetabar-kind degree).
inline std::pair<int, int> grade(const Word& w) {
  int a = 0, b = 0;
  for (const auto& f : w.factors()) {
    if (f.gen.kind == GenKind::Theta) a += f.exp;
    if (f.gen.kind == GenKind::ThetaBar) b += f.exp;
  }
  return {a, b};
}

/// Picks which of the currently inverted adjacent positions to swap next.
using SwapChooser = std::function<std::size_t(std::span<const std::size_t>)>;

struct NormalForm {
  bool zero = false;
  long long q_exponent = 0;  // word_in = q^q_exponent * word
  Word word;
};

/// Rewrites a word to canonical order by adjacent q-exchanges. Every inverted
/// pair is exchanged exactly once whatever the strategy, so an unspecified
/// relation is reported independently of the chooser. Nilpotency is applied
/// after sorting.
inline NormalForm normal_form(const Word& w, int level, const SwapChooser& choose = {}) {
  std::vector<Generator> letters;
  for (const auto& f : w.factors())
    for (int k = 0; k < f.exp; ++k) letters.push_back(f.gen);

  NormalForm nf;
  std::vector<std::size_t> inverted;
  for (;;) {
    inverted.clear();
    for (std::size_t p = 0; p + 1 < letters.size(); ++p)
      if (letters[p + 1] < letters[p]) inverted.push_back(p);
    if (inverted.empty()) break;
    const std::size_t p = choose ? inverted.at(choose(inverted) % inverted.size()) : inverted.front();
    nf.q_exponent += exchange_exponent(letters[p], letters[p + 1]);
    std::swap(letters[p], letters[p + 1]);
  }

  std::vector<Factor> out;
  for (const auto& g : letters) {
    if (!out.empty() && out.back().gen == g)
      ++out.back().exp;
    else
      out.push_back({g, 1});
  }
  for (const auto& f : out)
    if (f.exp >= level) nf.zero = true;
  nf.q_exponent = mod_floor(nf.q_exponent, level);
  nf.word = Word(std::move(out));
  return nf;
}

/// Formal sum of canonical words with Scalar coefficients.
class GExpr {
 public:
  explicit GExpr(int level) : level_(level) {}

  static GExpr scalar(const Scalar& s) {
    GExpr e(s.level());
    e.add(Word{}, s);
    return e;
  }
  static GExpr one(int level) { return scalar(Scalar::one(level)); }
  static GExpr of(int level, Generator g, int exp = 1) {
    GExpr e(level);
    e.add(Word::of(g, exp), Scalar::one(level));
    return e;
  }
  static GExpr word(int level, const Word& w, const Scalar& coeff) {
    GExpr e(level);
    e.add(w, coeff);
    return e;
  }

  int level() const { return level_; }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff * w, normal-ordering w first.
  void add(const Word& w, const Scalar& coeff, const SwapChooser& choose = {}) {
    if (coeff.is_zero()) return;
    const NormalForm nf = normal_form(w, level_, choose);
    if (nf.zero) return;
    accumulate(nf.word, coeff * Scalar::q_power(level_, nf.q_exponent));
  }

  /// Adds a term whose word is already canonical.
  void accumulate(const Word& w, const Scalar& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
      terms_.emplace(w, coeff);
      return;
    }
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }

  GExpr& operator+=(const GExpr& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) accumulate(w, c);
    return *this;
  }
  GExpr& operator-=(const GExpr& o) {
    check(o);
    for (const auto& [w, c] : o.terms_) accumulate(w, -c);
    return *this;
  }
  friend GExpr operator+(GExpr a, const GExpr& b) { return a += b; }
  friend GExpr operator-(GExpr a, const GExpr& b) { return a -= b; }

  friend GExpr operator*(const Scalar& s, const GExpr& e) {
    GExpr r(e.level_);
    for (const auto& [w, c] : e.terms_) r.accumulate(w, s * c);
    return r;
  }

  friend GExpr operator*(const GExpr& a, const GExpr& b) {
    a.check(b);
    GExpr r(a.level_);
    for (const auto& [wa, ca] : a.terms_)
      for (const auto& [wb, cb] : b.terms_) r.add(wa * wb, ca * cb);
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [w, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "[" + c.str() + "]";
      if (!w.empty()) out += " " + w.str();
    }
    return out;
  }

  friend bool operator==(const GExpr& a, const GExpr& b) {
    return a.level_ == b.level_ && a.terms_ == b.terms_;
  }

 private:
  void check(const GExpr& o) const {
    if (o.level_ != level_) throw LevelMismatch(level_, o.level_);
  }

  int level_;
  std::map<Word, Scalar> terms_;
};

/// Re-normal-orders every term; idempotent on canonical input.
inline GExpr normal_order(const GExpr& e, const SwapChooser& choose = {}) {
  GExpr r(e.level());
  for (const auto& [w, c] : e.terms()) r.add(w, c, choose);
  return r;
}

inline GExpr g_mul(const GExpr& a, const GExpr& b) { return a * b; }

/// Integration measure written left to right, e.g. {dthetabar(), dtheta()}.
using Measure = std::vector<Generator>;

inline Measure default_measure() { return {dthetabar(), dtheta()}; }

/// Berezin integral of one canonical word. Returns the phase exponent and the
/// remaining word, or nullopt when the integral vanishes. The innermost
/// differential is moved rightward to its variable's block (collecting
/// exchange phases), then int d(x) x^k = delta_{k,n-1} is applied.
inline std::optional<std::pair<long long, Word>> berezin_word(const Word& w, const Measure& measure,
                                                              int level) {
  std::vector<Factor> rest(w.factors().begin(), w.factors().end());
  long long phase = 0;
  for (auto it = measure.rbegin(); it != measure.rend(); ++it) {
    const Generator d = *it;
    const Generator var = d.variable();
    bool found = false;
    for (std::size_t p = 0; p < rest.size(); ++p) {
      if (rest[p].gen == var) {
        if (rest[p].exp != level - 1) return std::nullopt;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
        found = true;
        break;
      }
      // d Z = q^{x} Z d
      phase += static_cast<long long>(exchange_exponent(d, rest[p].gen)) * rest[p].exp;
    }
    if (!found) return std::nullopt;
  }
  return std::make_pair(mod_floor(phase, level), Word(std::move(rest)));
}

inline void check_measure(const Measure& measure) {
  for (std::size_t i = 0; i < measure.size(); ++i) {
    if (!measure[i].is_differential()) throw DomainError("measure entries must be differentials");
    for (std::size_t j = 0; j < i; ++j)
      if (measure[i] == measure[j]) throw DomainError("measure differentials must be distinct");
  }
}

inline GExpr berezin(const GExpr& e, const Measure& measure = default_measure()) {
  check_measure(measure);
  GExpr r(e.level());
  for (const auto& [w, c] : e.terms()) {
    if (w.has_differential()) throw DomainError("integrand already contains differentials: " + w.str());
    if (auto res = berezin_word(w, measure, e.level()))
      r.add(res->second, c * Scalar::q_power(e.level(), res->first));
  }
  return r;
}

}  // namespace qgrass
