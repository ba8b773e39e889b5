#pragma once

// Hand-rolled random generators for property tests. Seeds are fixed so any
// failure reproduces.

#include <random>
#include <vector>

#include "qgrass/grassmann.hpp"
#include "qgrass/operators.hpp"
#include "qgrass/scalar.hpp"

namespace gen {

using qgrass::Scalar;

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(unsigned long long seed) : eng(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
  bool coin() { return uniform(0, 1) == 1; }
  std::size_t index(std::size_t size) { return static_cast<std::size_t>(uniform(0, static_cast<int>(size) - 1)); }
};

inline mpq_class small_rational(Rng& r) {
  mpq_class x(r.uniform(-5, 5), r.uniform(1, 4));
  x.canonicalize();
  return x;
}

/// Up to `terms` terms of c q^k s_1^a s_2^b u^e with small exponents.
inline Scalar scalar(Rng& r, int level, int terms = 3) {
  Scalar s = Scalar::zero(level);
  const int count = r.uniform(1, terms);
  for (int t = 0; t < count; ++t) {
    Scalar term = Scalar::rational(level, small_rational(r)) * Scalar::q_power(level, r.uniform(0, level - 1));
    term *= Scalar::sqrt_rho(level, 1, r.uniform(-2, 2));
    term *= Scalar::sqrt_rho(level, 2, r.uniform(-2, 2));
    term *= Scalar::u(level, r.uniform(-2, 2));
    s += term;
  }
  return s;
}

inline Scalar unit(Rng& r, int level) {
  return Scalar::rational(level, mpq_class(r.uniform(1, 5), r.uniform(1, 5)) * (r.coin() ? 1 : -1)) *
         Scalar::q_power(level, r.uniform(0, level - 1)) * Scalar::sqrt_rho(level, 1, r.uniform(-2, 2)) *
         Scalar::u(level, r.uniform(-2, 2));
}

/// Positive rho values and a unimodular u for numeric evaluation.
inline std::vector<mpq_class> rho_values(Rng& r, int count) {
  std::vector<mpq_class> v;
  for (int k = 0; k < count; ++k) {
    mpq_class x(r.uniform(1, 9), r.uniform(1, 4));
    x.canonicalize();
    v.push_back(x);
  }
  return v;
}

/// Random letters over theta_1..theta_k, thetabar_1 (kept free of the
/// theta_i thetabar_j, i != j, pairs that the algebra leaves unspecified).
inline std::vector<qgrass::Generator> letters(Rng& r, int max_len, bool with_bar = true, int thetas = 3) {
  std::vector<qgrass::Generator> out;
  const int len = r.uniform(0, max_len);
  for (int i = 0; i < len; ++i) {
    if (with_bar && r.uniform(0, 3) == 0)
      out.push_back(qgrass::thetabar(1));
    else
      out.push_back(qgrass::theta(r.uniform(1, with_bar ? 1 : thetas)));
  }
  return out;
}

inline qgrass::Word word_of(const std::vector<qgrass::Generator>& ls) {
  std::vector<qgrass::Factor> f;
  for (const auto& g : ls) f.push_back({g, 1});
  return qgrass::Word(std::move(f));
}

/// Grassmann expression in the single pair (theta, thetabar).
inline qgrass::GExpr gexpr(Rng& r, int level, int terms = 3, int max_len = 4) {
  qgrass::GExpr e(level);
  const int count = r.uniform(0, terms);
  for (int t = 0; t < count; ++t) e.add(word_of(letters(r, max_len)), scalar(r, level, 2));
  return e;
}

/// Operator built from theta/thetabar words and psi-phi dyads of `levels` states.
inline qgrass::OpExpr opexpr(Rng& r, int level, int levels, int terms = 3) {
  using namespace qgrass;
  OpExpr e(level);
  const int count = r.uniform(1, terms);
  for (int t = 0; t < count; ++t) {
    const Word w = word_of(letters(r, 2));
    Dyad d = Dyad::outer(Family::Psi, r.uniform(0, levels - 1), Family::Phi, r.uniform(0, levels - 1));
    if (r.uniform(0, 4) == 0) d = Dyad::identity();
    e.add_product({OpFactor{w}, OpFactor{d}}, scalar(r, level, 2));
  }
  return e;
}

}  // namespace gen
