#pragma once

// Scalar coefficients: Q(zeta_n) tensored with Laurent monomials in the
// commuting symbols s_k = sqrt(rho_k) (real, positive) and u = exp(-iEt)
// (unimodular, conj(u) = 1/u).

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/cyclotomic.hpp"
#include "qgrass/errors.hpp"

namespace qgrass {

/// Symbol slot 0 is u; slot k >= 1 is s_k.
inline constexpr int kSymU = 0;

/// Exponent vector over (u, s_1, s_2, ...), trailing zeros trimmed.
class Monomial {
 public:
  Monomial() = default;

  static Monomial symbol(int slot, int exp = 1) {
    Monomial m;
    m.e_.assign(static_cast<std::size_t>(slot) + 1, 0);
    m.e_[static_cast<std::size_t>(slot)] = exp;
    m.trim();
    return m;
  }

  int exponent(int slot) const {
    const auto i = static_cast<std::size_t>(slot);
    return i < e_.size() ? e_[i] : 0;
  }
  std::span<const int> exponents() const { return e_; }
  bool is_one() const { return e_.empty(); }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    m.e_.assign(std::max(a.e_.size(), b.e_.size()), 0);
    for (std::size_t i = 0; i < a.e_.size(); ++i) m.e_[i] += a.e_[i];
    for (std::size_t i = 0; i < b.e_.size(); ++i) m.e_[i] += b.e_[i];
    m.trim();
    return m;
  }

  Monomial inverse() const {
    Monomial m = *this;
    for (auto& x : m.e_) x = -x;
    return m;
  }

  /// s_k fixed, u -> 1/u.
  Monomial conj() const {
    Monomial m = *this;
    if (!m.e_.empty()) m.e_[0] = -m.e_[0];
    return m;
  }

  Monomial without(int slot) const {
    Monomial m = *this;
    const auto i = static_cast<std::size_t>(slot);
    if (i < m.e_.size()) m.e_[i] = 0;
    m.trim();
    return m;
  }

  std::string str() const {
    std::string out;
    auto emit = [&](const std::string& name, int e) {
      if (e == 0) return;
      if (!out.empty()) out += "*";
      out += name;
      if (e != 1) out += "^" + std::to_string(e);
    };
    for (std::size_t i = 1; i < e_.size(); ++i) emit("s" + std::to_string(i), e_[i]);
    if (!e_.empty()) emit("u", e_[0]);
    return out;
  }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  void trim() {
    while (!e_.empty() && e_.back() == 0) e_.pop_back();
  }
  std::vector<int> e_;
};

class Scalar {
 public:
  explicit Scalar(int level) : level_(level) { (void)cyclo_field(level); }
  Scalar(const Cyclo& c, Monomial m = {}) : level_(c.level()) {
    if (!c.is_zero()) terms_.emplace(std::move(m), c);
  }

  static Scalar zero(int level) { return Scalar(level); }
  static Scalar one(int level) { return rational(level, 1); }
  static Scalar rational(int level, const mpq_class& r) { return Scalar(Cyclo::rational(level, r)); }
  static Scalar q_power(int level, long long k) { return Scalar(Cyclo::q_power(level, k)); }
  static Scalar monomial(int level, Monomial m) { return Scalar(Cyclo::rational(level, 1), std::move(m)); }
  /// s_k^exp = rho_k^{exp/2}.
  static Scalar sqrt_rho(int level, int k, int exp = 1) { return monomial(level, Monomial::symbol(k, exp)); }
  static Scalar rho(int level, int k) { return sqrt_rho(level, k, 2); }
  static Scalar u(int level, int exp = 1) { return monomial(level, Monomial::symbol(kSymU, exp)); }

  /// (rho_k!)^{exp/2} with rho_0 = 1, i.e. prod_{j=1}^{k} s_j^exp.
  static Scalar rho_factorial_power(int level, int k, int exp) {
    Monomial m;
    for (int j = 1; j <= k; ++j) m = m * Monomial::symbol(j, exp);
    return monomial(level, m);
  }
  static Scalar rho_factorial(int level, int k) { return rho_factorial_power(level, k, 2); }

  int level() const { return level_; }
  const std::map<Monomial, Cyclo>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first.is_one() && terms_.begin()->second.is_one();
  }
  /// Single-term scalars are exactly the units of the coefficient ring.
  bool is_unit() const { return terms_.size() == 1; }

  Scalar& operator+=(const Scalar& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, c);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) accumulate(m, -c);
    return *this;
  }
  Scalar operator-() const {
    Scalar z = *this;
    for (auto& [m, c] : z.terms_) c = -c;
    return z;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    a.check(b);
    Scalar z(a.level_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) z.accumulate(ma * mb, ca * cb);
    return z;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  Scalar conj() const {
    Scalar z(level_);
    for (const auto& [m, c] : terms_) z.accumulate(m.conj(), c.conj());
    return z;
  }

  /// Inverse of a unit (single-term scalar).
  Scalar inverse() const {
    if (!is_unit()) throw DomainError("scalar " + str() + " is not invertible in the coefficient ring");
    const auto& [m, c] = *terms_.begin();
    return Scalar(c.inverse(), m.inverse());
  }

  /// Replace a symbol by a scalar; negative powers require a unit.
  Scalar substitute(int slot, const Scalar& value) const {
    check(value);
    Scalar z(level_);
    for (const auto& [m, c] : terms_) {
      const int e = m.exponent(slot);
      Scalar t(c, m.without(slot));
      const Scalar base = e < 0 ? value.inverse() : value;
      for (int i = 0; i < std::abs(e); ++i) t *= base;
      z += t;
    }
    return z;
  }

  /// Numeric value with s_k = sqrt(rho[k-1]), q = exp(2 pi i / n), u = u_value.
  std::complex<double> eval(std::span<const mpq_class> rho, std::complex<double> u_value = 1.0) const {
    for (const auto& r : rho)
      if (r <= 0) throw DomainError("rho values must be positive, got " + r.get_str());
    if (std::abs(std::abs(u_value) - 1.0) > 1e-9) throw DomainError("u must be unimodular");
    std::complex<double> sum = 0;
    for (const auto& [m, c] : terms_) {
      std::complex<double> t = c.eval();
      const auto ex = m.exponents();
      for (std::size_t k = 1; k < ex.size(); ++k) {
        if (ex[k] == 0) continue;
        if (k > rho.size()) throw DomainError("no value for rho_" + std::to_string(k));
        t *= std::pow(std::sqrt(rho[k - 1].get_d()), ex[k]);
      }
      if (!ex.empty() && ex[0] != 0) t *= std::pow(u_value, ex[0]);
      sum += t;
    }
    return sum;
  }

  /// Canonical text: terms in monomial order, e.g. "(1 + q)*s1^2 - s2^-1*u".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      std::string cs = c.str();
      const bool compound = cs.find(' ') != std::string::npos;
      bool negative = false;
      if (!compound && cs.front() == '-') {
        negative = true;
        cs.erase(0, 1);
      }
      std::string term;
      if (m.is_one()) {
        term = compound ? "(" + cs + ")" : cs;
      } else if (cs == "1") {
        term = m.str();
      } else {
        term = (compound ? "(" + cs + ")" : cs) + "*" + m.str();
      }
      if (out.empty())
        out = (negative ? "-" : "") + term;
      else
        out += (negative ? " - " : " + ") + term;
    }
    return out;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.level_ == b.level_ && a.terms_ == b.terms_;
  }

 private:
  void check(const Scalar& o) const {
    if (o.level_ != level_) throw LevelMismatch(level_, o.level_);
  }
  void accumulate(const Monomial& m, const Cyclo& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  int level_;
  std::map<Monomial, Cyclo> terms_;
};

inline Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }
inline Scalar scalar_conj(const Scalar& a) { return a.conj(); }
inline std::complex<double> scalar_eval(const Scalar& a, std::span<const mpq_class> rho,
                                        std::complex<double> u_value = 1.0) {
  return a.eval(rho, u_value);
}

}  // namespace qgrass
