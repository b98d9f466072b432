#include <algorithm>
#include <random>

#include "doctest.h"
#include "lfapprox/approximation/series.hpp"
#include "lfapprox/errors.hpp"
#include "lfapprox/regularization/contour.hpp"
#include "lfapprox/regularization/equidist.hpp"
#include "lfapprox/regularization/error_integral.hpp"
#include "lfapprox/regularization/principal_parts.hpp"
#include "quadrature.hpp"

using namespace lfapprox;

namespace {

const CoefficientTable& tau() {
  static const CoefficientTable table = delta_coefficients(2000);
  return table;
}

const EigenformSpec kDelta = EigenformSpec::delta();

// Shared sums; building one takes a few seconds.
const PrincipalPartSum& sum_for(int N) {
  static const PrecisionContext ctx(128);
  static const PrincipalPartSum one(1, BigReal(50L, 64), tau(), kDelta, ctx);
  static const PrincipalPartSum two(2, BigReal(50L, 64), tau(), kDelta, ctx);
  return N == 1 ? one : two;
}

BigReal rel(const BigComplex& a, const BigComplex& b) { return abs(a - b) / abs(b); }

}  // namespace

TEST_CASE("Laurent coefficients of model functions") {
  const int bits = 128;
  PrecisionContext ctx(bits);
  BigComplex c(0.3, -0.7, bits);

  auto model = exact_function(
      [&](const BigComplex& s) {
        BigComplex u = BigReal(1L, bits) / (s - c);
        return u * u * 2L - u * 3L + exp(s);
      },
      bits);
  auto part = laurent_coefficients(model, c, BigReal(0.5, bits), 4, 32, ctx);
  REQUIRE(part.order == 2);
  CHECK(abs(part.coeffs[0] - 2L).log2_abs() < -bits + 12);
  CHECK(abs(part.coeffs[1] + 3L).log2_abs() < -bits + 12);

  auto entire = exact_function([](const BigComplex& s) { return exp(s); }, bits);
  CHECK(laurent_coefficients(entire, c, BigReal(0.5, bits), 3, 32, ctx).order == 0);

  // One factor (1 - alpha 2^-s)^-1 with alpha = -12 + i sqrt(1904): residue 1/log 2.
  BigComplex alpha(BigReal(-12L, bits + 32), sqrt(BigReal(1904L, bits + 32)));
  BigReal log2 = log(BigReal(2L, bits + 32));
  BigComplex pole = log(alpha) / log2;
  auto factor = exact_function(
      [&](const BigComplex& s) { return BigReal(1L, bits + 32) / (BigReal(1L, bits + 32) - alpha * exp(-(s * log2))); },
      bits + 32);
  auto single = laurent_coefficients(factor, pole, BigReal(0.5, bits), 3, 32, ctx);
  REQUIRE(single.order == 1);
  CHECK(rel(single.residue(), BigComplex(BigReal(1L, bits) / log2)).log2_abs() < -bits + 16);
}

TEST_CASE("doubling the circle resolution is stable") {
  const int bits = 128;
  PrecisionContext ctx(bits);
  TruncatedEulerProduct euler(2, tau(), kDelta, PrecisionContext(bits + 32));
  AnalyticFunction f = [&](const BigComplex& s) { return euler.eval(s); };
  auto base = laurent_principal_part(sum_for(2).parts().front().pole, 1, 2, tau(), kDelta, ctx);
  auto coarse = laurent_coefficients(f, base.pole, base.radius, 2, 64, ctx);
  auto fine = laurent_coefficients(f, base.pole, base.radius, 2, 128, ctx);
  REQUIRE(coarse.order == 1);
  REQUIRE(fine.order == 1);
  CHECK(rel(coarse.residue(), fine.residue()).log2_abs() < -bits + 16);
}

TEST_CASE("gamma-pole residues") {
  const int bits = 128;
  PrecisionContext ctx(bits);
  for (int N : {1, 2}) {
    for (long n = 0; n <= 6; ++n) {
      // (-1)^n (2 pi)^n / n! prod_p 1/(1 - a_p p^n + p^11 p^2n), exact apart from (2 pi)^n.
      mpq_class local = 1;
      std::vector<std::pair<long, long>> a = {{2, -24}, {3, 252}};
      for (int j = 0; j < N; ++j) {
        mpz_class pn, p11;
        mpz_ui_pow_ui(pn.get_mpz_t(), a[j].first, n);
        mpz_ui_pow_ui(p11.get_mpz_t(), a[j].first, 11);
        local /= mpq_class(1 - a[j].second * pn + p11 * pn * pn);
      }
      mpz_class fact;
      mpz_fac_ui(fact.get_mpz_t(), n);
      local /= fact;
      if (n & 1) local = -local;
      BigReal expect = BigReal(local.get_num(), bits + 32) / BigReal(local.get_den(), bits + 32);
      expect *= pow(BigReal::pi(bits + 32) * 2L, BigReal(n, bits + 32));

      auto part = laurent_principal_part(BigComplex(static_cast<double>(-n), 0.0, bits), 1, N, tau(), kDelta, ctx);
      CAPTURE(N);
      CAPTURE(n);
      REQUIRE(part.order == 1);
      CHECK(rel(part.residue(), BigComplex(expect)).log2_abs() < -bits + 16);
    }
  }
}

TEST_CASE("N = 1 principal parts at the five lowest finite poles") {
  const int bits = 128;
  PrecisionContext ctx(bits);
  const mpfr_prec_t hp = bits + 64;
  BigComplex alpha_plus(BigReal(-12L, hp), sqrt(BigReal(1904L, hp)));
  BigComplex alpha_minus = conj(alpha_plus);
  BigReal log2 = log(BigReal(2L, hp));
  BigReal spacing = BigReal::pi(hp) * 2L / log2;

  struct Candidate {
    BigComplex s;
    BigComplex other_over_this;
  };
  std::vector<Candidate> poles;
  for (int family = 0; family < 2; ++family) {
    const BigComplex& a = family == 0 ? alpha_plus : alpha_minus;
    const BigComplex& b = family == 0 ? alpha_minus : alpha_plus;
    for (long m = -2; m <= 2; ++m) {
      BigComplex s = log(a) / log2 + BigComplex(BigReal(0L, hp), spacing * m);
      poles.push_back({s, b / a});
    }
  }
  std::sort(poles.begin(), poles.end(),
            [](const Candidate& x, const Candidate& y) { return abs(x.s.im()) < abs(y.s.im()); });
  for (std::size_t i = 0; i < 5; ++i) {
    const BigComplex& s = poles[i].s;
    // g(s) / (log 2 (1 - alpha_other / alpha_this)), gamma by quadrature.
    BigComplex g = testing::gamma_by_quadrature(s, hp).value * exp(-(s * log(BigReal::pi(hp) * 2L)));
    BigComplex expect = g / ((BigReal(1L, hp) - poles[i].other_over_this) * log2);
    auto part = laurent_principal_part(s.rounded(bits + 32), 1, 1, tau(), kDelta, ctx);
    CAPTURE(s.to_string(12));
    REQUIRE(part.order == 1);
    CHECK(rel(part.residue(), expect).log2_abs() < -bits + 16);
  }
}

TEST_CASE("laurent_principal_part preconditions") {
  PrecisionContext ctx(128);
  CHECK_THROWS_AS(laurent_principal_part(BigComplex(5.5, 0.123, 128), 1, 1, tau(), kDelta, ctx), PreconditionError);
  CHECK_THROWS_AS(laurent_principal_part(BigComplex(-1.0, 0.0, 128), 0, 1, tau(), kDelta, ctx), PreconditionError);
}

TEST_CASE("regularized Lambda_N agrees with the series") {
  PrecisionContext ctx(128);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int N : {1, 2}) {
    const auto& pp = sum_for(N);
    ApproxConfig cfg;
    cfg.N = N;
    cfg.target_abs_error = BigReal(1e-28, 64);
    std::vector<BigComplex> points{BigComplex(6.0, 2.0, 128)};
    for (int i = 0; i < 4; ++i) {
      double r = 5.0 * std::sqrt(std::abs(u(rng)));
      double phi = M_PI * u(rng);
      points.emplace_back(6.0 + r * std::cos(phi), r * std::sin(phi), 128);
    }
    for (const auto& s : points) {
      auto reg = pp.lambda_N(s);
      auto ser = lambda_N(s, tau(), kDelta, cfg, ctx);
      CAPTURE(N);
      CAPTURE(s.to_string(10));
      CHECK(abs(reg.value - ser.value) <= reg.abs_error + ser.abs_error);
      CHECK(reg.abs_error < 1e-20);
    }
  }
}

TEST_CASE("regularized Lambda_N is exactly symmetric") {
  const auto& pp = sum_for(2);
  for (auto [re, im] : {std::pair{6.0, 2.0}, std::pair{3.25, -1.5}, std::pair{9.0, 4.0}}) {
    BigComplex s(re, im, 128);
    BigComplex r = BigReal(12L, 128) - s;
    CHECK(pp.lambda_N(s).value == pp.lambda_N(r).value);
  }
}

TEST_CASE("ingoing function stays finite at the poles") {
  const auto& pp = sum_for(2);
  const int bits = 128;
  for (std::size_t idx : {std::size_t{0}, pp.parts().size() / 2}) {
    const auto& part = pp.parts()[idx];
    for (double theta : {0.3, 2.0, 4.1}) {
      std::vector<BigComplex> values;
      for (double delta : {1e-2, 1e-3, 1e-4}) {
        BigComplex s = part.pole + BigComplex(delta * std::cos(theta), delta * std::sin(theta), bits + 32);
        values.push_back(pp.ingoing(s).value);
      }
      BigReal step1 = abs(values[1] - values[0]);
      BigReal step2 = abs(values[2] - values[1]);
      CAPTURE(part.pole.to_string(10));
      CHECK(step2 < step1);
      CHECK(abs(values[2]) < abs(values[0]) * 2L + 1e-3);
    }
  }
}

TEST_CASE("principal-part sum: decay and truncation") {
  PrecisionContext ctx(128);
  const auto& pp = sum_for(1);
  // Far to the right |pp| falls off like 1/|s|.
  BigReal k30 = (abs(pp.eval(BigComplex(30.0, 0.0, 128)).value) * 31L);
  BigReal k60 = (abs(pp.eval(BigComplex(60.0, 0.0, 128)).value) * 61L);
  CHECK(k60 < k30 * 2L);
  CHECK(k30 < k60 * 2L);

  // Raising T changes the value by no more than the reported tails.
  PrincipalPartSum low(1, BigReal(25L, 64), tau(), kDelta, ctx);
  PrincipalPartSum mid(1, BigReal(35L, 64), tau(), kDelta, ctx);
  BigComplex s(6.0, 3.0, 128);
  auto v_low = low.eval(s);
  auto v_mid = mid.eval(s);
  auto v_high = pp.eval(s);
  CHECK(abs(v_low.value - v_high.value) <= v_low.abs_error + v_high.abs_error);
  CHECK(abs(v_mid.value - v_high.value) <= v_mid.abs_error + v_high.abs_error);
  CHECK(abs(v_mid.value - v_high.value) < abs(v_low.value - v_high.value));
  CHECK(v_high.truncation_tail < v_mid.truncation_tail);
  CHECK(v_mid.truncation_tail < v_low.truncation_tail);

  CHECK(default_truncation(kDelta, BigReal(1e-30, 64), ctx) > default_truncation(kDelta, BigReal(1e-20, 64), ctx));
}

TEST_CASE("Laurent coefficient growth stays bounded on the p = 2 lattice") {
  auto report = laurent_growth_probe(sum_for(2), 2, BigReal(50L, 64));
  CHECK(report.poles >= 20);
  CHECK(report.max_normalized > 0.0);
  CHECK(report.max_normalized < 1e3);
}

TEST_CASE("sparse contours") {
  const auto& pp = sum_for(2);
  std::vector<PoleLattice> lattices;
  for (const auto& f : pp.euler().factors()) lattices.push_back(make_pole_lattice(f));

  SparseContour prev;
  bool first = true;
  for (double E : {13.0, 15.0, 18.5}) {
    auto c = sparse_contour(2, BigReal(E, 128), kDelta, lattices);
    CHECK(c.b == 0.5);
    CHECK(c.a == sparse_distance(2, c.a.precision()));
    CHECK(c.sigma2 > 13.0);
    CHECK(c.sigma2 > E);
    auto clearance = contour_clearance(c, lattices);
    CHECK(clearance.finite >= c.a);
    CHECK(clearance.gamma >= c.b);
    if (!first) CHECK(c.contains(prev));
    prev = c;
    first = false;
  }
  CHECK_THROWS_AS(sparse_contour(2, BigReal(12L, 128), kDelta, lattices), PreconditionError);
  // a = pi / (4 log 3 + 10 pi) for N = 2.
  double expect = M_PI / (4.0 * std::log(3.0) + 10.0 * M_PI);
  CHECK(sparse_distance(2, 64).to_double() == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("K / (1 + |s|) probe") {
  const auto& pp = sum_for(1);
  std::vector<PoleLattice> lattices;
  for (const auto& f : pp.euler().factors()) lattices.push_back(make_pole_lattice(f));
  auto small = pp_bound_probe(sparse_contour(1, BigReal(13L, 128), kDelta, lattices), pp, 16);
  auto large = pp_bound_probe(sparse_contour(1, BigReal(24L, 128), kDelta, lattices), pp, 16);
  CHECK(small.samples == 64);
  CHECK(small.K.sign() > 0);
  CHECK(small.K.is_finite());
  auto cmp = compare_pp_bounds(small, large);
  CHECK(cmp.ratio < 2.0);
  CHECK(cmp.ratio > 0.5);
  CHECK(cmp.within_allowance);
  CHECK_THROWS_AS(pp_bound_probe(sparse_contour(1, BigReal(13L, 128), kDelta, lattices), pp, 8), PreconditionError);
}

TEST_CASE("error integral") {
  const int bits = 96;
  PrecisionContext ctx(bits);
  BigReal target(1e-15, 64);
  ApproxConfig cfg;
  cfg.N = 2;
  cfg.target_abs_error = BigReal(1e-20, 64);

  BigComplex s0(6.0, 0.0, bits);
  auto diff = error_series(s0, tau(), kDelta, 2, cfg, ctx);
  auto at8 = error_integral(s0, BigReal(8L, bits), 2, std::nullopt, tau(), kDelta, target, ctx);
  auto at9 = error_integral(s0, BigReal(9L, bits), 2, std::nullopt, tau(), kDelta, target, ctx);
  CHECK(abs(at8.value - diff.value) <= at8.abs_error + diff.abs_error);
  CHECK(abs(at8.value - at9.value) <= at8.abs_error + at9.abs_error);
  CHECK(at8.abs_error < target);

  // The kernel is symmetric under s0 -> k - s0 for P even.
  BigComplex s1(4.0, 2.0, bits);
  auto a = error_integral(s1, BigReal(9L, bits), 2, std::nullopt, tau(), kDelta, target, ctx);
  auto b = error_integral(BigReal(12L, bits) - s1, BigReal(9L, bits), 2, std::nullopt, tau(), kDelta, target, ctx);
  CHECK(abs(a.value - b.value) <= a.abs_error + b.abs_error);

  CHECK_THROWS_AS(error_integral(s0, BigReal(6.5, bits), 2, std::nullopt, tau(), kDelta, target, ctx), RegimeError);
  CHECK_THROWS_AS(error_integral(s1, BigReal(7.5, bits), 2, std::nullopt, tau(), kDelta, target, ctx), RegimeError);
  CHECK(error_integral_tail(s0, BigReal(8L, bits), BigReal(2L, 64), kDelta, ctx).is_finite() == false);
}

TEST_CASE("equidistribution diagnostics") {
  PrecisionContext ctx(128);
  CHECK_THROWS_AS(equidist_probe(3, 3, 1000, ctx), PreconditionError);
  CHECK_THROWS_AS(equidist_probe(4, 3, 1000, ctx), PreconditionError);
  CHECK_THROWS_AS(equidist_probe(2, 3, 999, ctx), PreconditionError);

  auto small = equidist_probe(2, 3, 1000, ctx);
  auto big = equidist_probe(2, 3, 1000000, ctx);
  CHECK(big.min_scaled.sign() > 0);
  CHECK(big.discrepancy < small.discrepancy);
  CHECK(big.discrepancy > 0.0);
  CHECK(small.discrepancy <= 1.0);
  // n = 1: {log 3 / log 2} = log2(3) - 1.
  CHECK(small.min_scaled.to_double() <= std::log2(3.0) - 1.0 + 1e-15);

  std::vector<double> grid;
  for (int i = 0; i < 100; ++i) grid.push_back((i + 0.5) / 100.0);
  CHECK(star_discrepancy(grid) == doctest::Approx(0.005));
}
