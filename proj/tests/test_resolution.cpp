#include <catch_amalgamated.hpp>

#include "qgrass/linsolve.hpp"
#include "qgrass/resolution.hpp"
#include "qgrass/suq2.hpp"

using namespace qgrass;

namespace {

constexpr Family Psi = Family::Psi;
constexpr Family Phi = Family::Phi;

Scalar q(int n, long long k = 1) { return Scalar::q_power(n, k); }

GExpr diag_term(int n, int i, const Scalar& c) { return GExpr::word(n, theta_thetabar(i, i), c); }

}  // namespace

TEST_CASE("closed_form_weight examples") {
  CHECK(closed_form_weight(3).w == diag_term(3, 0, Scalar::rho(3, 1) * Scalar::rho(3, 2)) +
                                 diag_term(3, 1, q(3, 2) * Scalar::rho(3, 1)) + diag_term(3, 2, Scalar::one(3)));
  CHECK(closed_form_weight(2).w == diag_term(2, 0, Scalar::rho(2, 1)) + diag_term(2, 1, Scalar::one(2)));
  CHECK(closed_form_weight(3).coeff(2, 2).is_one());
  CHECK(closed_form_weight(4).is_diagonal());
  CHECK_THROWS_AS(closed_form_weight(1), DomainError);
}

TEST_CASE("n = 2 weight matches a hand solve") {
  // int dthb dth (c00 + c11 th thb) |th><th~|: c11 -> |psi0><phi0|, c00/rho_1 -> |psi1><phi1|
  const Weight w = solve_weight(2);
  CHECK(w.w == diag_term(2, 0, Scalar::rho(2, 1)) + diag_term(2, 1, Scalar::one(2)));
  CHECK(verify_resolution(w, StatePair::KetTilde).is_zero());
}

TEST_CASE("solved weights are unique, diagonal and resolve the identity") {
  for (int n = 2; n <= 5; ++n) {
    const Weight w = solve_weight(n);
    CHECK(w.is_diagonal());
    CHECK(verify_resolution(w, StatePair::KetTilde).is_zero());
    CHECK(verify_resolution(w, StatePair::TildeKet).is_zero());
    for (StatePair p : {StatePair::KetKet, StatePair::TildeTilde}) {
      const OpExpr integral =
          integrate_outer(w.w, make_coherent(n, ket_family(p)).body, make_coherent(n, bra_family(p)).body);
      CHECK(!integral.is_zero());
      CHECK(only_same_family_dyads(integral));
      CHECK(!verify_resolution(w, p).is_zero());
    }
  }
}

TEST_CASE("derived weight agrees with the rho_(n-i-1)! closed form") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& c : compare_weights(solve_weight(n), closed_form_weight(n))) {
      CHECK(c.agree);
      CHECK(c.ratio == "1");
    }
  }
}

TEST_CASE("rho_i! form agrees only at the middle index") {
  for (int n = 2; n <= 5; ++n) {
    for (const auto& c : compare_weights(solve_weight(n), cij_weight(n))) {
      const bool middle = 2 * c.index == n - 1;
      CHECK(c.agree == middle);
      CHECK(c.derived == closed_form_weight(n).coeff(c.index, c.index));
    }
  }
  // n = 3, i = 0: derived rho_1 rho_2 against reference 1
  const auto cmp = compare_weights(solve_weight(3), cij_weight(3));
  CHECK(cmp[0].ratio == "s1^2*s2^2");
  CHECK(cmp[2].ratio == "s1^-2*s2^-2");
}

TEST_CASE("three-level weight") {
  CHECK(solve_weight(3).w == three_level_weight().w);
  CHECK(verify_resolution(three_level_weight(), StatePair::KetTilde).is_zero());
}

TEST_CASE("a wrong weight leaves a defect") {
  const Weight w = cij_weight(3);
  CHECK(!verify_resolution(w, StatePair::KetTilde).is_zero());
}

TEST_CASE("time-evolved pairs resolve with the static weight") {
  for (int n = 2; n <= 5; ++n) {
    const Weight w = solve_weight(n);
    CHECK(verify_time_resolution(w, StatePair::KetTilde).is_zero());
    CHECK(verify_time_resolution(w, StatePair::TildeKet).is_zero());
  }
}

TEST_CASE("berezin on operators rejects differentials") {
  const OpExpr e = OpExpr::generator(3, dtheta()) * OpExpr::ket(3, Psi, 0);
  CHECK_THROWS_AS(berezin(e), DomainError);
  CHECK(berezin(OpExpr::ket(3, Phi, 1)).is_zero());
}

TEST_CASE("solve_linear") {
  const int n = 3;
  const Scalar one = Scalar::one(n), zero = Scalar::zero(n), s = Scalar::sqrt_rho(n, 1), qq = q(n);
  SECTION("unique solution with unit pivots") {
    // [s q; 0 1] x = [1; q]  ->  x = [(1 - q^2)/s ... ] checked by substitution
    ScalarMatrix a{{s, qq}, {zero, one}};
    std::vector<Scalar> b{one, qq};
    const auto x = solve_linear(a, b);
    CHECK(s * x[0] + qq * x[1] == one);
    CHECK(x[1] == qq);
  }
  SECTION("rank deficiency") {
    ScalarMatrix a{{one, one}, {one, one}};
    CHECK_THROWS_AS(solve_linear(a, {one, one}), SingularSystem);
  }
  SECTION("inconsistent") {
    ScalarMatrix a{{one}, {one}};
    CHECK_THROWS_AS(solve_linear(a, {one, qq}), SingularSystem);
  }
  SECTION("non-unit pivot") {
    ScalarMatrix a{{one + s}};
    CHECK_THROWS_AS(solve_linear(a, {one}), SingularSystem);
  }
}
