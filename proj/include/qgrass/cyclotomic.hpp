#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_n), represented as
// Q[x]/(Phi_n(x)) with x standing for q = exp(2 pi i / n).

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/errors.hpp"

namespace qgrass {

/// Precomputed data for one level n: Phi_n and the residues of x^k, 0 <= k < n.
struct CycloField {
  int n = 0;
  int degree = 0;
  std::vector<long> phi;                            // monic, low to high
  std::vector<std::vector<mpq_class>> power_residue;  // x^k mod Phi_n
};

namespace detail {

using IntPoly = std::vector<long>;

inline IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dn = den.size() - 1;
  IntPoly quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    quot[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  return quot;
}

inline IntPoly cyclotomic_polynomial(int n) {
  IntPoly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = exact_divide(p, cyclotomic_polynomial(d));
  }
  return p;
}

inline CycloField build_field(int n) {
  CycloField f;
  f.n = n;
  f.phi = cyclotomic_polynomial(n);
  f.degree = static_cast<int>(f.phi.size()) - 1;
  const auto d = static_cast<std::size_t>(f.degree);
  std::vector<mpq_class> cur(d, 0);
  cur[0] = 1;
  for (int k = 0; k < n; ++k) {
    f.power_residue.push_back(cur);
    // cur <- x * cur mod Phi_n
    std::vector<mpq_class> next(d, 0);
    for (std::size_t i = 0; i + 1 < d; ++i) next[i + 1] = cur[i];
    const mpq_class top = cur[d - 1];
    if (top != 0) {
      for (std::size_t i = 0; i < d; ++i) next[i] -= top * f.phi[i];
    }
    cur = std::move(next);
  }
  return f;
}

}  // namespace detail

/// Shared, immutable field data for level n (n >= 2). Thread-safe.
inline const CycloField& cyclo_field(int n) {
  if (n < 2) throw DomainError("cyclotomic level must be >= 2, got " + std::to_string(n));
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const CycloField>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const CycloField>(detail::build_field(n));
  return *slot;
}

inline long long mod_floor(long long a, long long m) {
  const long long r = a % m;
  return r < 0 ? r + m : r;
}

/// Element of Q(zeta_n), stored as its unique reduced residue mod Phi_n.
class Cyclo {
 public:
  explicit Cyclo(int level) : field_(&cyclo_field(level)), c_(field_->degree, 0) {}

  static Cyclo rational(int level, const mpq_class& r) {
    Cyclo z(level);
    z.c_[0] = r;
    return z;
  }

  /// q^k for any integer k.
  static Cyclo q_power(int level, long long k) {
    Cyclo z(level);
    z.c_ = z.field_->power_residue[static_cast<std::size_t>(mod_floor(k, level))];
    return z;
  }

  /// Reduce a Laurent polynomial in q given as (exponent, coefficient) pairs.
  template <class Range>
  static Cyclo reduce(int level, const Range& raw) {
    Cyclo z(level);
    for (const auto& [e, c] : raw) z.add_power(static_cast<long long>(e), mpq_class(c));
    return z;
  }

  int level() const { return field_->n; }
  std::span<const mpq_class> coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_one() const {
    if (c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Cyclo& operator+=(const Cyclo& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclo& operator-=(const Cyclo& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Cyclo operator-() const {
    Cyclo z = *this;
    for (auto& x : z.c_) x = -x;
    return z;
  }
  friend Cyclo operator+(Cyclo a, const Cyclo& b) { return a += b; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { return a -= b; }

  friend Cyclo operator*(const Cyclo& a, const Cyclo& b) {
    a.check(b);
    Cyclo z(a.level());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        z.add_power(static_cast<long long>(i + j), a.c_[i] * b.c_[j]);
      }
    }
    return z;
  }
  Cyclo& operator*=(const Cyclo& o) { return *this = *this * o; }

  Cyclo scaled(const mpq_class& r) const {
    Cyclo z = *this;
    for (auto& x : z.c_) x *= r;
    return z;
  }

  /// Complex conjugation, q -> q^{n-1}.
  Cyclo conj() const {
    Cyclo z(level());
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != 0) z.add_power(-static_cast<long long>(i), c_[i]);
    return z;
  }

  /// Multiplicative inverse; Q[x]/(Phi_n) is a field.
  Cyclo inverse() const {
    if (is_zero()) throw DomainError("division by zero in Q(zeta_n)");
    // Solve M y = e_0 where column j of M is (this * x^j) reduced.
    const std::size_t d = c_.size();
    std::vector<std::vector<mpq_class>> m(d, std::vector<mpq_class>(d + 1, 0));
    for (std::size_t j = 0; j < d; ++j) {
      const Cyclo col = *this * q_power(level(), static_cast<long long>(j));
      for (std::size_t i = 0; i < d; ++i) m[i][j] = col.c_[i];
    }
    m[0][d] = 1;
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      const mpq_class p = m[col][col];
      for (auto& x : m[col]) x /= p;
      for (std::size_t r = 0; r < d; ++r) {
        if (r == col || m[r][col] == 0) continue;
        const mpq_class f = m[r][col];
        for (std::size_t k = col; k <= d; ++k) m[r][k] -= f * m[col][k];
      }
    }
    Cyclo z(level());
    for (std::size_t i = 0; i < d; ++i) z.c_[i] = m[i][d];
    return z;
  }

  std::complex<double> eval() const {
    std::complex<double> s = 0;
    const double step = 2.0 * std::numbers::pi / level();
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      s += c_[i].get_d() * std::polar(1.0, step * static_cast<double>(i));
    }
    return s;
  }

  /// Canonical text, e.g. "-1 - q", "1/2*q^2".
  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      mpq_class v = c_[i];
      if (out.empty()) {
        if (v < 0) {
          out += "-";
          v = -v;
        }
      } else {
        out += v < 0 ? " - " : " + ";
        if (v < 0) v = -v;
      }
      if (i == 0) {
        out += v.get_str();
      } else {
        if (v != 1) out += v.get_str() + "*";
        out += i == 1 ? std::string("q") : "q^" + std::to_string(i);
      }
    }
    return out.empty() ? "0" : out;
  }

  friend bool operator==(const Cyclo& a, const Cyclo& b) {
    return a.level() == b.level() && a.c_ == b.c_;
  }

 private:
  void check(const Cyclo& o) const {
    if (o.level() != level()) throw LevelMismatch(level(), o.level());
  }
  void add_power(long long e, const mpq_class& c) {
    const auto& r = field_->power_residue[static_cast<std::size_t>(mod_floor(e, field_->n))];
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (r[i] != 0) c_[i] += c * r[i];
  }

  const CycloField* field_;
  std::vector<mpq_class> c_;
};

/// Canonical residue of sum_k c_k q^{e_k} at level n.
inline Cyclo cyclo_reduce(int level, std::span<const std::pair<long long, mpq_class>> raw) {
  return Cyclo::reduce(level, raw);
}

}  // namespace qgrass
