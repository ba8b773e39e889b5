#include <catch_amalgamated.hpp>

#include <vector>

#include "generators.hpp"
#include "qgrass/operators.hpp"

using namespace qgrass;

namespace {

constexpr Family Psi = Family::Psi;
constexpr Family Phi = Family::Phi;

Scalar q(int n, long long k = 1) { return Scalar::q_power(n, k); }

OpExpr th(int n) { return OpExpr::generator(n, theta()); }
OpExpr thb(int n) { return OpExpr::generator(n, thetabar()); }

OpExpr raw(int n, std::initializer_list<OpFactor> f, const Scalar& c) {
  OpExpr e(n);
  e.add_product(f, c);
  return e;
}

// b written term by term, independent of make_ladder.
OpExpr manual_b(int n) {
  OpExpr b(n);
  for (int i = 0; i + 1 < n; ++i) b += Scalar::sqrt_rho(n, i + 1) * OpExpr::outer(n, Psi, i, Phi, i + 1);
  return b;
}

}  // namespace

TEST_CASE("op_normal_order examples") {
  const int n = 3;
  CHECK(raw(n, {Dyad::ket(Psi, 0), Word::of(theta())}, Scalar::one(n)) ==
        OpExpr::term(n, Word::of(theta()), Dyad::ket(Psi, 0), q(n)));
  CHECK(raw(n, {Dyad::ket(Psi, 1), Word::of(theta())}, Scalar::one(n)) ==
        OpExpr::term(n, Word::of(theta()), Dyad::ket(Psi, 1), Scalar::one(n)));
  CHECK(raw(n, {Dyad::bra(Phi, 2), Word::of(thetabar())}, Scalar::one(n)) ==
        OpExpr::term(n, Word::of(thetabar()), Dyad::bra(Phi, 2), q(n, -1)));
  CHECK_THROWS_AS(raw(n, {Dyad::ket(Psi, 0), Word::of(theta(2))}, Scalar::one(n)), UnspecifiedRelation);
}

TEST_CASE("phase table for theta across every ket and bra") {
  for (int n = 2; n <= 6; ++n)
    for (int i = 0; i < n; ++i)
      for (Family f : {Psi, Phi}) {
        // theta|F_i> = q^{i-1}|F_i>theta, theta<F_i| = qbar^{i-1}<F_i|theta
        CHECK(th(n) * OpExpr::ket(n, f, i) == q(n, i - 1) * (OpExpr::ket(n, f, i) * th(n)));
        CHECK(th(n) * OpExpr::bra(n, f, i) == q(n, 1 - i) * (OpExpr::bra(n, f, i) * th(n)));
        CHECK(thb(n) * OpExpr::ket(n, f, i) == q(n, 1 - i) * (OpExpr::ket(n, f, i) * thb(n)));
        CHECK(thb(n) * OpExpr::bra(n, f, i) == q(n, i - 1) * (OpExpr::bra(n, f, i) * thb(n)));
      }
}

TEST_CASE("op_compose examples") {
  const int n = 3;
  CHECK(OpExpr::outer(n, Psi, 0, Phi, 1) * OpExpr::outer(n, Psi, 1, Phi, 2) == OpExpr::outer(n, Psi, 0, Phi, 2));
  CHECK((OpExpr::outer(n, Psi, 0, Phi, 1) * OpExpr::outer(n, Psi, 2, Phi, 2)).is_zero());
  for (int m = 2; m <= 6; ++m) CHECK(manual_b(m).pow(m).is_zero());

  const OpExpr b = make_ladder(LadderKind::B, n).op, bs = make_ladder(LadderKind::BSharp, n).op;
  const Scalar r1 = Scalar::rho(n, 1), r2 = Scalar::rho(n, 2);
  const OpExpr expected = r1 * OpExpr::outer(n, Psi, 0, Phi, 0) + (r2 - q(n) * r1) * OpExpr::outer(n, Psi, 1, Phi, 1) -
                          q(n) * r2 * OpExpr::outer(n, Psi, 2, Phi, 2);
  CHECK(b * bs - q(n) * (bs * b) == expected);
}

TEST_CASE("unknown pairings fail loudly") {
  const int n = 3;
  CHECK_THROWS_AS(OpExpr::bra(n, Psi, 0) * OpExpr::ket(n, Psi, 0), GramUnknown);
  CHECK_THROWS_AS(OpExpr::outer(n, Phi, 0, Phi, 1) * OpExpr::ket(n, Phi, 1), GramUnknown);
  CHECK_THROWS_AS(OpExpr::ket(n, Psi, 0) * OpExpr::ket(n, Psi, 1), IllFormedProduct);
  CHECK_THROWS_AS(OpExpr::bra(n, Phi, 0) * OpExpr::bra(n, Phi, 1), IllFormedProduct);
  CHECK(OpExpr::bra(n, Phi, 1) * OpExpr::ket(n, Psi, 1) == OpExpr::identity(n));
  CHECK(OpExpr::bra(n, Psi, 2) * OpExpr::ket(n, Phi, 2) == OpExpr::identity(n));
}

TEST_CASE("op_dagger examples") {
  const int n = 3;
  const OpExpr x = OpExpr::term(n, Word::of(theta()), Dyad::ket(Psi, 1), Scalar::one(n));
  CHECK(op_dagger(x) == raw(n, {Dyad::bra(Psi, 1), Word::of(thetabar())}, Scalar::one(n)));
  CHECK(op_dagger(make_ladder(LadderKind::B, 2).op) ==
        Scalar::sqrt_rho(2, 1) * OpExpr::outer(2, Phi, 1, Psi, 0));
}

namespace {

bool any_word(const OpExpr& e, bool bar) {
  for (const auto& [k, c] : e.terms()) {
    const auto [t, tb] = grade(k.word);
    if ((bar ? tb : t) > 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("dagger is an anti-linear involution") {
  gen::Rng r(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = r.uniform(2, 5);
    const OpExpr a = gen::opexpr(r, n, n);
    const Scalar c = gen::scalar(r, n);
    REQUIRE(op_dagger(op_dagger(a)) == a);
    REQUIRE(op_dagger(c * a) == c.conj() * op_dagger(a));
  }
}

TEST_CASE("dagger reverses products unless thetabar must pass theta") {
  gen::Rng r(26);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = r.uniform(2, 5);
    const OpExpr a = gen::opexpr(r, n, n), b = gen::opexpr(r, n, n);
    if (n > 2 && any_word(a, true) && any_word(b, false)) continue;
    ++checked;
    REQUIRE(op_dagger(a * b) == op_dagger(b) * op_dagger(a));
  }
  CHECK(checked > 100);
}

TEST_CASE("thb th = q th thb is not dagger-symmetric for n > 2") {
  for (int n = 2; n <= 6; ++n) {
    // dagger of the normal form q th thb against the reversed product th thb
    const OpExpr lhs = op_dagger(thb(n) * th(n));
    const OpExpr rhs = op_dagger(th(n)) * op_dagger(thb(n));
    CHECK(lhs == q(n, -2) * rhs);
    CHECK((lhs == rhs) == (n == 2));
  }
}

TEST_CASE("eta_conjugate examples") {
  for (int n = 2; n <= 5; ++n) {
    OpExpr bt(n);
    for (int i = 0; i + 1 < n; ++i) bt += Scalar::sqrt_rho(n, i + 1) * OpExpr::outer(n, Phi, i, Psi, i + 1);
    CHECK(eta_conjugate(manual_b(n), EtaSide::Forward) == bt);
    CHECK(make_ladder(LadderKind::BTilde, n).op == bt);
  }
  const OpExpr x = OpExpr::term(3, Word::of(theta()), Dyad::ket(Psi, 0), Scalar::one(3));
  CHECK(eta_conjugate(x, EtaSide::Forward) == OpExpr::term(3, Word::of(theta()), Dyad::ket(Phi, 0), Scalar::one(3)));
  CHECK_THROWS_AS(eta_conjugate(OpExpr::ket(3, Phi, 0), EtaSide::Forward), GramUnknown);
}

TEST_CASE("eta is invertible and commutes with theta and thetabar") {
  gen::Rng r(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = r.uniform(2, 5);
    const OpExpr x = gen::opexpr(r, n, n);
    REQUIRE(eta_conjugate(eta_conjugate(x, EtaSide::Forward), EtaSide::Inverse) == x);
    const OpExpr y = eta_conjugate(x, EtaSide::Forward);
    REQUIRE(eta_conjugate(y, EtaSide::Inverse) == x);
    for (const OpExpr& g : {th(n), thb(n)}) {
      REQUIRE(eta_conjugate(g * x, EtaSide::Forward) == g * y);
      REQUIRE(eta_conjugate(x * g, EtaSide::Forward) == y * g);
    }
  }
}

TEST_CASE("sharp adjoint examples") {
  for (int n = 2; n <= 6; ++n) {
    OpExpr bs(n);
    for (int i = 0; i + 1 < n; ++i) bs += Scalar::sqrt_rho(n, i + 1) * OpExpr::outer(n, Psi, i + 1, Phi, i);
    CHECK(sharp_adjoint(manual_b(n)) == bs);
    CHECK(sharp_adjoint(bs) == manual_b(n));
    CHECK(sharp_adjoint(OpExpr::identity(n)) == OpExpr::identity(n));
  }
}

TEST_CASE("sharp is an involution on random operators") {
  gen::Rng r(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = r.uniform(2, 5);
    const OpExpr x = gen::opexpr(r, n, n);
    REQUIRE(sharp_adjoint(sharp_adjoint(x)) == x);
  }
}

TEST_CASE("make_ladder examples and action laws") {
  CHECK(make_ladder(LadderKind::B, 2).op == Scalar::sqrt_rho(2, 1) * OpExpr::outer(2, Psi, 0, Phi, 1));
  CHECK_THROWS_AS(make_ladder(LadderKind::B, 1), DomainError);
  for (int n = 2; n <= 6; ++n) {
    const OpExpr b = make_ladder(LadderKind::B, n).op, bs = make_ladder(LadderKind::BSharp, n).op;
    CHECK((b * OpExpr::ket(n, Psi, 0)).is_zero());
    for (int i = 1; i < n; ++i)
      CHECK(b * OpExpr::ket(n, Psi, i) == Scalar::sqrt_rho(n, i) * OpExpr::ket(n, Psi, i - 1));
    for (int i = 0; i + 1 < n; ++i)
      CHECK(bs * OpExpr::ket(n, Psi, i) == Scalar::sqrt_rho(n, i + 1) * OpExpr::ket(n, Psi, i + 1));
    CHECK((bs * OpExpr::ket(n, Psi, n - 1)).is_zero());
    CHECK(make_ladder(LadderKind::BTildeSharpPrime, n).op == op_dagger(b));
    CHECK(b.pow(n).is_zero());
    CHECK(bs.pow(n).is_zero());
    CHECK(!b.pow(n - 1).is_zero());
  }
}

TEST_CASE("q-commutators between theta and the ladders vanish") {
  for (int n = 2; n <= 6; ++n) {
    const OpExpr b = make_ladder(LadderKind::B, n).op;
    const OpExpr bs = make_ladder(LadderKind::BSharp, n).op;
    const OpExpr btsp = make_ladder(LadderKind::BTildeSharpPrime, n).op;
    CHECK(q_commutator(th(n), bs).is_zero());
    CHECK(q_commutator(b, th(n)).is_zero());
    CHECK(q_commutator(bs, thb(n)).is_zero());
    CHECK(q_commutator(thb(n), b).is_zero());
    CHECK(q_commutator(th(n), btsp).is_zero());
  }
}

TEST_CASE("completeness acts as a two-sided identity") {
  gen::Rng r(24);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = r.uniform(2, 5);
    const OpExpr id = OpExpr::completeness(n, n);
    OpExpr x = gen::opexpr(r, n, n);
    // the abstract identity I is kept distinct from sum |psi><phi|
    OpExpr y(n);
    for (const auto& [k, c] : x.terms())
      if (k.dyad.form == DyadForm::Outer) y.accumulate(k.word, k.dyad, c);
    REQUIRE(id * y == y);
    REQUIRE(y * id == y);
  }
  CHECK(OpExpr::completeness(3, 3) * OpExpr::ket(3, Psi, 2) == OpExpr::ket(3, Psi, 2));
  CHECK(OpExpr::bra(3, Phi, 1) * OpExpr::completeness(3, 3) == OpExpr::bra(3, Phi, 1));
}

TEST_CASE("composition is associative") {
  gen::Rng r(25);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = r.uniform(2, 5);
    const OpExpr a = gen::opexpr(r, n, n), b = gen::opexpr(r, n, n), c = gen::opexpr(r, n, n);
    REQUIRE((a * b) * c == a * (b * c));
  }
}
