#include <cstdint>

#include "core/rational.hpp"
#include "core/series.hpp"
#include "core/series_ops.hpp"
#include "core/stationary.hpp"
#include "doctest.h"

using namespace conelab;

namespace {

VarTable ztab(int lo, int hi) { return VarTable({VariableSpec::loop("z", lo, hi)}); }

Series zpow(const VarTable& t, int k) { return Series::var(t, "z", k); }

// Exponential series 1 + x + x^2/2! + ... + x^n/n! in the given variable.
Series exp_poly(const VarTable& t, const std::string& v, int n) {
  Series s = Series::constant(t, Rat(1));
  for (int k = 1; k <= n; ++k) s = s + Series::var(t, v, k).scaled(factorial(k).inv());
  return s;
}

}  // namespace

TEST_CASE("rational basics") {
  CHECK(Rat(2, 6) == Rat(1, 3));
  CHECK(Rat(1, 3) + Rat(1, 3) == Rat(2, 3));
  CHECK(Rat::parse("-4/6").str() == "-2/3");
  CHECK(Rat(3, -6).str() == "-1/2");
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK_THROWS(Rat(1) / Rat(0));
  CHECK(factorial(5) == Rat(120));
  CHECK(binomial(8, 3) == Rat(56));
  CHECK(double_factorial_odd(3) == Rat(15));
}

TEST_CASE("series arithmetic: (1+z)(1-z) = 1-z^2 on window [0,2]") {
  VarTable t = ztab(0, 2);
  Series one = Series::constant(t, Rat(1));
  Series a = one + zpow(t, 1);
  Series b = one - zpow(t, 1);
  Series expect = one - zpow(t, 2);
  CHECK(a * b == expect);
}

TEST_CASE("series arithmetic: Laurent window z^-1 * z = 1") {
  VarTable t = ztab(-2, 2);
  CHECK(zpow(t, -1) * zpow(t, 1) == Series::constant(t, Rat(1)));
}

TEST_CASE("series arithmetic: exp(t)^2 truncated at t^4, against convolution oracle") {
  VarTable tt = VarTable({VariableSpec::jet("t", 4)});
  Series e = exp_poly(tt, "t", 4);
  Series sq = e * e;
  // Independent oracle: convolve the coefficient arrays directly.
  std::vector<Rat> c(5);
  for (int n = 0; n <= 4; ++n)
    for (int i = 0; i <= n; ++i) c[static_cast<size_t>(n)] += factorial(i).inv() * factorial(n - i).inv();
  CHECK(c[0] == Rat(1));
  CHECK(c[1] == Rat(2));
  CHECK(c[2] == Rat(2));
  CHECK(c[3] == Rat(4, 3));
  CHECK(c[4] == Rat(2, 3));
  for (int n = 0; n <= 4; ++n) {
    Mono m;
    m.e = {n};
    CHECK(sq.coeff(m) == c[static_cast<size_t>(n)]);
  }
}

TEST_CASE("shape rules: vector times vector is rejected") {
  VarTable t = ztab(0, 1);
  Series v(t, 2, 1);
  Mono m;
  m.e = {0};
  v.set_coeff(m, Rat(1), 0, 0);
  v.set_coeff(m, Rat(1), 1, 0);
  CHECK_THROWS_AS(v * v, std::invalid_argument);
}

TEST_CASE("composition: exp-series of z+z^2 at order 3") {
  VarTable t = ztab(0, 3);
  Series inner = zpow(t, 1) + zpow(t, 2);
  VarTable xt = VarTable({VariableSpec::loop("x", 0, 3)});
  Series outer = exp_poly(xt, "x", 3);
  Series got = series_subst(outer, {{"x", inner}});
  Series expect = Series::constant(t, Rat(1)) + zpow(t, 1) + zpow(t, 2).scaled(Rat(3, 2)) +
                  zpow(t, 3).scaled(Rat(7, 6));
  CHECK(got == expect);
}

TEST_CASE("composition: f of identity is f") {
  VarTable t = ztab(0, 4);
  Series f = Series::constant(t, Rat(3)) + zpow(t, 1).scaled(Rat(1, 2)) + zpow(t, 3);
  Series got = series_subst(f, {{"z", zpow(t, 1)}});
  CHECK(got == f);
}

TEST_CASE("composition rejects constant term substituted into truncated variable") {
  VarTable tt = VarTable({VariableSpec::jet("t", 3)});
  Series outer = exp_poly(tt, "t", 3);  // saturated at the cap: not a genuine polynomial
  Series inner = Series::constant(tt, Rat(1)) + Series::var(tt, "t");
  CHECK_THROWS_AS(series_subst(outer, {{"t", inner}}), std::domain_error);
}

TEST_CASE("reversion of a group-law type series with symbolic coefficients") {
  std::vector<VariableSpec> vs = {VariableSpec::loop("x", 0, 4),
                                  VariableSpec::cobordism("a1", 1, 3, "a"),
                                  VariableSpec::cobordism("a2", 2, 3, "a"),
                                  VariableSpec::cobordism("a3", 3, 3, "a")};
  VarTable t{vs};
  Series x = Series::var(t, "x");
  Series a1 = Series::var(t, "a1"), a2 = Series::var(t, "a2"), a3 = Series::var(t, "a3");
  Series u = x + a1 * x * x + a2 * series_pow(x, 2) * x + a3 * series_pow(x, 4);
  Series g = series_reversion(u, "x", 4);

  // Lagrange-inversion oracle, coefficient by coefficient.
  Series c2 = -a1;
  Series c3 = a1 * a1.scaled(Rat(2)) - a2;
  Series c4 = a1 * a1 * a1.scaled(Rat(-5)) + (a1 * a2).scaled(Rat(5)) - a3;
  CHECK(g.coeff_of("x", 1) == Series::constant(t, Rat(1)).aligned_to(t));
  CHECK(g.coeff_of("x", 2) == c2);
  CHECK(g.coeff_of("x", 3) == c3);
  CHECK(g.coeff_of("x", 4) == c4);

  // Round trips.
  Series ug = series_subst(u, {{"x", g}});
  CHECK(ug == x);
  Series gu = series_subst(g, {{"x", u}});
  CHECK(gu == x);
  CHECK(series_reversion(g, "x", 4) == u);
}

TEST_CASE("reversion: identity and K-theory law") {
  VarTable t = ztab(0, 6);
  Series z = zpow(t, 1);
  CHECK(series_reversion(z, "z", 6) == z);

  // u(z) = 1 - exp(-z) reverses to z(u) = u + u^2/2 + u^3/3 + ...
  Series u = Series::zero(t);
  for (int k = 1; k <= 6; ++k) u = u + zpow(t, k).scaled(factorial(k).inv() * Rat(k % 2 == 1 ? 1 : -1));
  Series g = series_reversion(u, "z", 6);
  Series expect = Series::zero(t);
  for (int k = 1; k <= 6; ++k) expect = expect + zpow(t, k).scaled(Rat(1, k));
  CHECK(g == expect);
}

TEST_CASE("reversion rejects vanishing linear coefficient") {
  VarTable t = ztab(0, 4);
  CHECK_THROWS_AS(series_reversion(zpow(t, 2), "z", 4), std::domain_error);
}

TEST_CASE("transcendental maps") {
  VarTable t = ztab(0, 5);
  SUBCASE("exp(0) = 1") { CHECK(series_exp(Series::zero(t)) == Series::constant(t, Rat(1))); }
  SUBCASE("log(exp(t+t^2)) = t+t^2") {
    VarTable tt = VarTable({VariableSpec::jet("t", 5)});
    Series arg = Series::var(tt, "t") + Series::var(tt, "t", 2);
    CHECK(series_log(series_exp(arg)) == arg);
  }
  SUBCASE("log(z/(1-e^{-z})) = z/2 - z^2/24 + O(z^3)") {
    Series denom = Series::zero(t);  // (1-e^{-z})/z = 1 - z/2 + z^2/6 - ...
    for (int k = 1; k <= 6; ++k)
      denom = denom + zpow(t, k - 1).scaled(factorial(k).inv() * Rat(k % 2 == 1 ? 1 : -1));
    Series td = series_invert(denom);
    Series lg = series_log(td);
    Mono m1, m2;
    m1.e = {1};
    m2.e = {2};
    CHECK(lg.coeff(m1) == Rat(1, 2));
    CHECK(lg.coeff(m2) == Rat(-1, 24));
  }
  SUBCASE("exp precondition") {
    CHECK_THROWS_AS(series_exp(Series::constant(t, Rat(1))), std::domain_error);
  }
  SUBCASE("log precondition") {
    CHECK_THROWS_AS(series_log(Series::constant(t, Rat(2))), std::domain_error);
  }
}

TEST_CASE("residues") {
  VarTable t = ztab(-3, 3);
  CHECK(zpow(t, -1).residue("z") == Series::constant(t, Rat(1)));
  CHECK((zpow(t, 2) + zpow(t, -2).scaled(Rat(3))).residue("z").is_zero());
  VarTable p = ztab(0, 3);
  CHECK_THROWS_AS(zpow(p, 1).residue("z"), std::invalid_argument);
  SUBCASE("Darboux pairing residue: z^k * (-1)^k z^{-1-k}") {
    for (int k = 0; k <= 2; ++k) {
      Series f = zpow(t, k).scaled(Rat(k % 2 == 0 ? 1 : -1)) * zpow(t, -1 - k);
      CHECK(f.residue("z") == Series::constant(t, Rat(k % 2 == 0 ? 1 : -1)));
    }
  }
}

TEST_CASE("residue of a total derivative vanishes") {
  VarTable t = ztab(-4, 4);
  Series f = zpow(t, -3).scaled(Rat(2, 7)) + zpow(t, -1).scaled(Rat(5)) +
             Series::constant(t, Rat(3)) + zpow(t, 2).scaled(Rat(-11, 4));
  CHECK(f.derivative("z").residue("z").is_zero());
}

TEST_CASE("stationary phase") {
  VarTable ring({VariableSpec{"r", VarKind::Aux, "", -8, 8, 1}});
  Series r = Series::var(ring, "r");
  Series one = Series::constant(ring, Rat(1));

  SUBCASE("pure Gaussian gives 1") {
    Series got = stationary_phase({one}, {r.scaled(Rat(1, 2))}, "z", 3);
    CHECK(got.coeff_of("z", 0) == one.aligned_to(got.table()).coeff_of("z", 0));
    CHECK(got.coeff_of("z", 1).is_zero());
    CHECK(got.coeff_of("z", 2).is_zero());
    CHECK(got.coeff_of("z", 3).is_zero());
  }

  SUBCASE("Stirling expansion of the x - rho ln x phase (r = 1/rho)") {
    // Taylor data at the critical point x = rho.
    std::vector<Series> phase = {r.scaled(Rat(1, 2)),          -series_pow(r, 2).scaled(Rat(1, 3)),
                                 series_pow(r, 3).scaled(Rat(1, 4)), -series_pow(r, 4).scaled(Rat(1, 5)),
                                 series_pow(r, 5).scaled(Rat(1, 6)), -series_pow(r, 6).scaled(Rat(1, 7)),
                                 series_pow(r, 7).scaled(Rat(1, 8))};
    Series got = stationary_phase({one}, phase, "z", 3);
    CHECK(got.coeff_of("z", 1) == r.scaled(Rat(1, 12)).aligned_to(got.table()).coeff_of("z", 0));
    CHECK(got.coeff_of("z", 2) == series_pow(r, 2).scaled(Rat(1, 288)).aligned_to(got.table()).coeff_of("z", 0));
    CHECK(got.coeff_of("z", 3) ==
          series_pow(r, 3).scaled(Rat(-139, 51840)).aligned_to(got.table()).coeff_of("z", 0));
  }

  SUBCASE("linearity in the amplitude") {
    std::vector<Series> phase = {r.scaled(Rat(1, 2)), -series_pow(r, 2).scaled(Rat(1, 3))};
    Series a = stationary_phase({one.scaled(Rat(2))}, phase, "z", 3);
    Series b = stationary_phase({Series::zero(ring), one}, phase, "z", 3);
    Series ab = stationary_phase({one.scaled(Rat(2)), one}, phase, "z", 3);
    CHECK(ab == a + b);
  }

  SUBCASE("invariance under rescaling the integration variable") {
    // x -> c x multiplies c_k by c^k and amplitude coefficients by c^j; the
    // normalized expansion is unchanged.
    Rat c(3, 2);
    std::vector<Series> phase = {r.scaled(Rat(1, 2)), -series_pow(r, 2).scaled(Rat(1, 3)),
                                 series_pow(r, 3).scaled(Rat(1, 4))};
    std::vector<Series> amp = {one, r.scaled(Rat(2)), series_pow(r, 2)};
    std::vector<Series> phase_s, amp_s;
    for (size_t k = 0; k < phase.size(); ++k) phase_s.push_back(phase[k].scaled(c.pow(static_cast<long>(k) + 2)));
    for (size_t j = 0; j < amp.size(); ++j) amp_s.push_back(amp[j].scaled(c.pow(static_cast<long>(j))));
    CHECK(stationary_phase(amp, phase, "z", 2) == stationary_phase(amp_s, phase_s, "z", 2));
  }

  SUBCASE("degenerate quadratic term is rejected") {
    CHECK_THROWS_AS(stationary_phase({one}, {Series::zero(ring)}, "z", 2), std::domain_error);
  }
}

TEST_CASE("ring axioms on deterministic pseudo-random truncated series") {
  VarTable t({VariableSpec::jet("t", 4), VariableSpec::loop("z", -2, 2)});
  uint64_t state = 0x243f6a8885a308d3ull;
  auto next = [&]() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return static_cast<long>((state >> 33) % 13) - 6;
  };
  auto rnd_series = [&]() {
    Series s(t);
    for (int trial = 0; trial < 6; ++trial) {
      Mono m;
      m.e = {static_cast<int>((next() + 6) % 5), static_cast<int>(next() % 3)};
      if (!t.in_region(m)) continue;
      long den = (next() + 8);
      if (den == 0) den = 1;
      s.add_coeff(m, Rat(next(), den));
    }
    return s;
  };
  for (int i = 0; i < 8; ++i) {
    Series a = rnd_series(), b = rnd_series(), c = rnd_series();
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a + b == b + a);
  }
}

TEST_CASE("integrate_gradient recovers a potential") {
  VarTable t({VariableSpec::jet("x", 4, "xy"), VariableSpec::jet("y", 4, "xy")});
  Series x = Series::var(t, "x"), y = Series::var(t, "y");
  // F = x^2 y + y^3/3
  Series fx = x * y.scaled(Rat(2));
  Series fy = x * x + y * y;
  Series F = integrate_gradient({"x", "y"}, {fx, fy});
  CHECK(F == x * x * y + y * y * y.scaled(Rat(1, 3)));
  SUBCASE("non-integrable gradients are rejected") {
    CHECK_THROWS_AS(integrate_gradient({"x", "y"}, {y, Series::zero(t)}), std::domain_error);
  }
}

TEST_CASE("exp/log are mutually inverse on admissible matrix series") {
  VarTable t({VariableSpec::jet("t", 3), VariableSpec::loop("z", -2, 2)});
  Series n(t, 2, 2);
  Mono m;
  m.e = {1, -1};
  n.set_coeff(m, Rat(1, 2), 0, 0);
  n.set_coeff(m, Rat(3), 0, 1);
  Mono m2;
  m2.e = {2, 1};
  n.set_coeff(m2, Rat(-2, 5), 1, 0);
  Series g = series_exp(n);
  CHECK(series_log(g) == n);
  CHECK(g * series_invert(g) == Series::identity(t, 2));
}
