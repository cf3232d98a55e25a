#include <doctest.h>

#include <cmath>
#include <numeric>

#include "mubchan/axis_channel.hpp"
#include "mubchan/choi.hpp"
#include "test_util.hpp"

using namespace mubchan;
using namespace testutil;

namespace {

double choi_min_eig(const AxisChannel& ch) { return herm_eigenvalues(choi(ch).matrix).minCoeff(); }

void check_multipliers(const AxisChannel& ch, const Multipliers& expect) {
  REQUIRE(ch.lambda().size() == expect.size());
  for (size_t i = 0; i < expect.size(); ++i) CHECK(ch.lambda()[i] == doctest::Approx(expect[i]).epsilon(1e-15));
}

// rejection-sample a CP multiplier vector
Multipliers random_cp(int d, std::mt19937_64& rng) {
  const double lo = -1.0 / (d - 1);
  for (;;) {
    Multipliers l(d + 1);
    for (double& x : l) x = uniform(rng, lo, 1.0);
    if (cp_test(d, l).cp) return l;
  }
}

}  // namespace

TEST_SUITE("axis_channel") {

TEST_CASE("checked construction") {
  CHECK(AxisChannel::checked(3, {1, 1, 1, 1}).is_cp());
  const AxisChannel edge = AxisChannel::checked(3, {1.0 / 3, 1.0 / 3, -1.0 / 3, -1.0 / 3});
  CHECK(std::abs(edge.cp_report().upper_slack) < 1e-15);

  try {
    AxisChannel::checked(3, {0.4, 0.4, -0.4, -0.4});
    FAIL("expected NotCP");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCP);
    CHECK(std::string(e.what()).find("0.2") != std::string::npos);
  }
  CHECK(choi_min_eig(AxisChannel::unchecked(3, {0.4, 0.4, -0.4, -0.4})) < 0);
  CHECK_THROWS_AS(AxisChannel::checked(3, {1, 1, 1}), Error);
}

TEST_CASE("parameter conversions") {
  const AxisChannel ch = AxisChannel::checked(3, {0.25, -0.25, -0.25, -0.25});
  CHECK(ch.s() == doctest::Approx(-0.5));
  CHECK(ch.a00() == doctest::Approx(0.0));
  const Multipliers t = ch.t(), a = ch.a();
  CHECK(t[0] == doctest::Approx(0.75));
  CHECK(t[1] == doctest::Approx(0.25));
  CHECK(a[0] == doctest::Approx(0.5));
  CHECK(a[1] == doctest::Approx(1.0 / 6));
  CHECK(ch.a00() + std::accumulate(a.begin(), a.end(), 0.0) == doctest::Approx(1.0));
}

TEST_CASE("CP multipliers stay in [-1/(d-1), 1]") {
  std::mt19937_64 rng(41);
  for (int d : {2, 3, 5}) {
    for (int trial = 0; trial < 300; ++trial) {
      Multipliers l(d + 1);
      for (double& x : l) x = uniform(rng, -1.5, 1.5);
      if (!cp_test(d, l).cp) continue;
      for (double x : l) {
        REQUIRE(x >= -1.0 / (d - 1) - 1e-12);
        REQUIRE(x <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("named channels") {
  check_multipliers(named::yeb(3, 0), {0.25, -0.25, -0.25, -0.25});
  check_multipliers(named::xeb(3, 0), {-0.5, 0, 0, 0});
  const double lam = 0.4;
  check_multipliers(named::max_squashed(3, 0, lam), {(3 * lam - 1) / 2, lam, lam, lam});
  check_multipliers(named::one_axis(3, 0.5, -0.25), {0.25, -0.25, -0.25, -0.25});
  check_multipliers(named::qc(5, 2), {0, 0, 1, 0, 0, 0});
  check_multipliers(named::extreme_x(3, 1), {-0.5, 1, -0.5, -0.5});
  check_multipliers(named::phase_damping(3, 3, 0.3), {0.3, 0.3, 0.3, 1});
  check_multipliers(named::depolarize_from_x(3, 0, 0.4), {0.4, -0.2, -0.2, -0.2});
  check_multipliers(named::depolarizing(5, 0.1), Multipliers(6, 0.1));
  check_multipliers(named::parse(3, "yeb(0)"), {0.25, -0.25, -0.25, -0.25});
  check_multipliers(named::parse(3, "one_axis(0.5,-0.25)"), {0.25, -0.25, -0.25, -0.25});

  try {
    named::depolarizing(3, 0.9 + 0.2);
    FAIL("expected ParamOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ParamOutOfRange);
  }
  CHECK_THROWS_AS(named::parse(3, "bogus(1)"), Error);
  CHECK_THROWS_AS(named::qc(3, 4), Error);
}

TEST_CASE("apply") {
  std::mt19937_64 rng(43);
  const Matrix rho = random_density(3, rng);
  CHECK(max_abs(named::identity(3).apply(rho) - rho) <= 1e-14);

  for (int d : {2, 3, 5}) {
    const double lam = 0.3;
    const Vector psi = random_pure(d, rng);
    const RealVector e = herm_eigenvalues(named::depolarizing(d, lam).apply(projector(psi)));
    CHECK(e(0) == doctest::Approx((1 + (d - 1) * lam) / d).epsilon(1e-12));
    for (int i = 1; i < d; ++i) CHECK(e(i) == doctest::Approx((1 - lam) / d).epsilon(1e-12));
  }

  const AxisChannel qc = named::qc(3, 1);
  const KrausSet k = kraus(qc);
  for (int K : {0, 2, 3})
    for (int n = 0; n < 3; ++n) {
      const Matrix in = projector(qc.family().state(K, n));
      CHECK(max_abs(qc.apply(in) - Matrix::Identity(3, 3) / 3.0) <= 1e-12);
      CHECK(max_abs(apply_kraus(k, in) - Matrix::Identity(3, 3) / 3.0) <= 1e-12);
    }
  CHECK_THROWS_AS(qc.apply(Matrix::Identity(2, 2)), Error);
}

TEST_CASE("Kraus operators") {
  const AxisChannel qc = named::qc(3, 2);
  const KrausSet kq = kraus(qc);
  REQUIRE(kq.operators.size() == 3);
  for (int j = 0; j < 3; ++j) {
    const Matrix expect = qc.family().generator_power(2, j) / std::sqrt(3.0);
    bool found = false;
    for (const auto& a : kq.operators) found = found || max_abs(a - expect) < 1e-14;
    CHECK(found);
  }

  const KrausSet ki = kraus(named::identity(3));
  REQUIRE(ki.operators.size() == 1);
  CHECK(max_abs(ki.operators[0] - Matrix::Identity(3, 3)) < 1e-15);

  // the identity weight a00 vanishes for this channel, leaving 8 operators
  const KrausSet ky = kraus(named::yeb(3, 0));
  CHECK(ky.operators.size() == 8);
  CHECK(ky.completeness_error() <= 1e-12);

  CHECK_THROWS_AS(kraus(AxisChannel::unchecked(3, {0.4, 0.4, -0.4, -0.4})), Error);
}

TEST_CASE("multiplier path agrees with Kraus path") {
  std::mt19937_64 rng(47);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int d = std::array<int, 3>{2, 3, 5}[trial % 3];
    const AxisChannel ch = AxisChannel::checked(d, random_cp(d, rng));
    const Matrix rho = random_density(d, rng);
    worst = std::max(worst, max_abs(ch.apply(rho) - apply_kraus(kraus(ch), rho)));
    REQUIRE(kraus(ch).operators.size() <= static_cast<size_t>(1 + (d + 1) * (d - 1)));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("closed-form CP test agrees with Choi eigenvalues") {
  std::mt19937_64 rng(53);
  int disagreements = 0, in_band = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Multipliers l(4);
    for (double& x : l) x = uniform(rng, -1, 1);
    const AxisChannel ch = AxisChannel::unchecked(3, l);
    const CpReport r = ch.cp_report();
    if (std::min(std::abs(r.lower_slack), std::abs(r.upper_slack)) < 1e-8) {
      ++in_band;
      continue;
    }
    if (r.cp != (choi_min_eig(ch) >= -1e-9)) ++disagreements;
  }
  CHECK(disagreements == 0);
  CHECK(in_band < 5);
}

TEST_CASE("unitality") {
  std::mt19937_64 rng(59);
  for (int d : {2, 3, 5, 7}) {
    const Matrix mixed = Matrix::Identity(d, d) / double(d);
    for (int trial = 0; trial < 10; ++trial) {
      const AxisChannel ch = AxisChannel::checked(d, random_cp(d, rng));
      REQUIRE(max_abs(ch.apply(mixed) - mixed) <= 1e-15);
    }
  }
}

TEST_CASE("convex combinations of CP channels") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = trial % 2 ? 3 : 5;
    const AxisChannel c1 = AxisChannel::checked(d, random_cp(d, rng));
    const AxisChannel c2 = AxisChannel::checked(d, random_cp(d, rng));
    const double x = uniform(rng, 0, 1);
    const DiagonalChannel m = mix(x, DiagonalChannel::from_axis(c1), DiagonalChannel::from_axis(c2));
    Multipliers lam(d + 1);
    for (int L = 0; L <= d; ++L) {
      lam[L] = x * c1.lambda()[L] + (1 - x) * c2.lambda()[L];
      REQUIRE(std::abs(m.phi()(L, 0) - lam[L]) < 1e-15);
    }
    REQUIRE(cp_test(d, lam).cp);
    const Matrix rho = random_density(d, rng);
    REQUIRE(max_abs(m.apply(rho) - (x * c1.apply(rho) + (1 - x) * c2.apply(rho))) < 1e-13);
  }
}

TEST_CASE("transfer matrix of an axis channel is diagonal") {
  std::mt19937_64 rng(67);
  for (int d : {2, 3, 5}) {
    for (int trial = 0; trial < 10; ++trial) {
      const AxisChannel ch = AxisChannel::checked(d, random_cp(d, rng));
      const Matrix t = transfer_matrix(ch.as_map(), obu_from_family(ch.family()));
      const Matrix off = t - Matrix(t.diagonal().asDiagonal());
      REQUIRE(max_abs(off) < 1e-12);
      REQUIRE(std::abs(t(0, 0) - 1.0) < 1e-12);
      for (int L = 0; L <= d; ++L)
        for (int j = 1; j < d; ++j) REQUIRE(std::abs(t(1 + L * (d - 1) + j - 1, 1 + L * (d - 1) + j - 1) - ch.lambda()[L]) < 1e-12);
    }
  }
  CHECK(max_abs(transfer_matrix(named::identity(3).as_map(), obu_from_family(mub_family(3))) - Matrix::Identity(9, 9)) < 1e-14);
}

TEST_CASE("single-axis mixtures") {
  const int d = 3;
  const MubFamily f = mub_family(d);
  const DiagonalChannel id = single_axis_mixture(d, 1, {1, 0, 0});
  CHECK(max_abs(id.phi() - Eigen::MatrixXcd::Ones(d + 1, d - 1)) < 1e-14);

  const DiagonalChannel qc = single_axis_mixture(d, 1, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  for (int L = 0; L <= d; ++L)
    for (int j = 0; j < d - 1; ++j) CHECK(std::abs(qc.phi()(L, j) - (L == 1 ? 1.0 : 0.0)) < 1e-14);

  const std::vector<double> c{0.5, 0.5, 0.0};
  const DiagonalChannel m = single_axis_mixture(d, 0, c);
  // brute force: transfer matrix of rho -> sum_j c_j W^j rho W^-j
  const LinearMap brute{d, [&](const Matrix& r) {
                          Matrix out = Matrix::Zero(d, d);
                          for (int j = 0; j < d; ++j)
                            out += c[j] * f.generator_power(0, j) * r * f.generator_power(0, -j);
                          return out;
                        }};
  const Matrix t = transfer_matrix(brute, obu_from_family(f));
  CHECK(max_abs(t - Matrix(t.diagonal().asDiagonal())) < 1e-12);
  for (int L = 0; L <= d; ++L)
    for (int j = 1; j < d; ++j) {
      CHECK(std::abs(m.phi()(L, j - 1) - t(1 + L * (d - 1) + j - 1, 1 + L * (d - 1) + j - 1)) < 1e-12);
      CHECK(std::abs(m.phi()(L, j - 1)) <= 1.0 + 1e-12);
    }
  for (int j = 0; j < d - 1; ++j) CHECK(std::abs(m.phi()(0, j) - 1.0) < 1e-14);
  CHECK(m.hermiticity_error() < 1e-14);
  std::mt19937_64 rng(71);
  const Matrix rho = random_density(d, rng);
  CHECK(max_abs(m.apply(rho) - brute(rho)) < 1e-12);

  CHECK_THROWS_AS(single_axis_mixture(d, 0, {0.5, 0.6, -0.1}), Error);
  CHECK_THROWS_AS(single_axis_mixture(d, 0, {0.5, 0.4, 0.0}), Error);
  CHECK_THROWS_AS(single_axis_mixture(4, 0, {0.25, 0.25, 0.25, 0.25}), Error);
}

TEST_CASE("compose matches map composition") {
  std::mt19937_64 rng(73);
  const DiagonalChannel a = DiagonalChannel::from_axis(AxisChannel::checked(5, random_cp(5, rng)));
  const DiagonalChannel b = single_axis_mixture(5, 3, {0.1, 0.2, 0.3, 0.4, 0.0});
  const Matrix rho = random_density(5, rng);
  CHECK(max_abs(compose(a, b).apply(rho) - a.apply(b.apply(rho))) < 1e-12);
}

TEST_CASE("one-axis regions") {
  for (int d : {2, 3, 5}) {
    const OneAxisRegions reg{d};
    CHECK(reg.is_cp(-1.0 / d, 1.0 / d));
    CHECK(reg.is_eb(-1.0 / d, 1.0 / d));
    CHECK(reg.is_cp(0, 1));
    CHECK_FALSE(reg.is_eb(0, 1));
    const double ya = 0.5, yb = -1.0 / (2 * (d - 1));
    CHECK(reg.is_eb(ya, yb));
    CHECK(std::abs(reg.eb_slack(ya, yb)) < 1e-15);
  }
}

TEST_CASE("one-axis EB region equals CP plus cross-norm") {
  for (int d : {2, 3, 5}) {
    const OneAxisRegions reg{d};
    for (int i = 0; i <= 60; ++i)
      for (int j = 0; j <= 60; ++j) {
        const double a = -1.0 + 2.5 * i / 60, b = -1.0 + 2.0 * j / 60;
        const Multipliers lam = OneAxisChannel{d, a, b}.multipliers();
        double t = 0;
        for (double x : lam) t += std::abs(x);
        if (!is_prime(d)) continue;
        const bool cp = cp_test(d, lam).cp;
        REQUIRE(cp == reg.is_cp(a, b));
        if (cp && std::abs(t - 1.0) > 1e-9) REQUIRE(reg.is_eb(a, b) == (t <= 1.0));
      }
  }
}

TEST_CASE("one-axis map equals its axis-channel form") {
  std::mt19937_64 rng(79);
  for (int d : {2, 3, 4, 5, 6}) {
    const OneAxisChannel m{d, 0.3, 0.2};
    const AxisChannel ch = m.to_axis_channel();
    const Matrix rho = random_density(d, rng);
    CHECK(max_abs(m.apply(rho) - ch.apply(rho)) < 1e-12);
  }
}

TEST_CASE("non-prime dimensions use the three-basis form") {
  std::mt19937_64 rng(83);
  for (int d : {4, 6}) {
    for (int trial = 0; trial < 40; ++trial) {
      Multipliers l(3);
      for (double& x : l) x = uniform(rng, -0.6, 1.0);
      const double u = uniform(rng, -0.1, 0.6);
      const AxisChannel ch = AxisChannel::unchecked(d, l, u);
      const bool cp = ch.is_cp();
      const double mn = choi_min_eig(ch);
      if (std::abs(mn) > 1e-9) REQUIRE(cp == (mn >= 0));
      if (!cp) continue;
      const Matrix rho = random_density(d, rng);
      REQUIRE(max_abs(ch.apply(rho) - apply_kraus(kraus(ch), rho)) < 1e-12);
      // axis generators are scaled by their multiplier
      for (int L = 0; L < 3; ++L) {
        const Matrix w = ch.family().generators[L];
        REQUIRE(max_abs(ch.apply(w) - l[L] * w) < 1e-12);
      }
    }
  }
  CHECK(max_abs(named::noise(4).apply(Matrix::Identity(4, 4) * 0 + projector(basis_vector(4, 1))) -
                Matrix::Identity(4, 4) / 4.0) < 1e-14);
}

TEST_CASE("Werner-Holevo fixture") {
  const LinearMap w = werner_holevo(3);
  Vector psi(3);
  psi << 0.6, 0.0, 0.8;
  const RealVector e = herm_eigenvalues(w(projector(psi)));
  CHECK(e(0) == doctest::Approx(0.5));
  CHECK(e(1) == doctest::Approx(0.5));
  CHECK(std::abs(e(2)) < 1e-15);
  std::mt19937_64 rng(89);
  const Matrix rho = random_density(3, rng);
  CHECK(std::abs(w(rho).trace() - 1.0) < 1e-14);
  CHECK(max_abs(w(Matrix::Identity(3, 3) / 3.0) - Matrix::Identity(3, 3) / 3.0) < 1e-15);
}

}
