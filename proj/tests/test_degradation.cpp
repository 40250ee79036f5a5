#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "sildrift/degradation.hpp"

using namespace sildrift;
using Catch::Approx;

namespace {

// Two-point baseline (0.4, 0.8), mean 0.6. Finds f1 so that the current curve
// (f1, 2 * current_mean - f1) has MAAPE exactly pi/10, i.e. maape_norm = 0.2.
SilhouetteCurve current_with_norm_point_two(double current_mean, double lo, double hi) {
  auto err = [&](double f1) {
    const double f2 = 2.0 * current_mean - f1;
    return (std::atan(std::abs((0.4 - f1) / 0.4)) + std::atan(std::abs((0.8 - f2) / 0.8))) / 2.0 -
           std::numbers::pi / 10.0;
  };
  const bool rising = err(hi) > err(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    ((err(mid) > 0.0) == rising ? hi : lo) = mid;
  }
  const double f1 = 0.5 * (lo + hi);
  return SilhouetteCurve(0, {f1, 2.0 * current_mean - f1});
}

SilhouetteCurve random_curve(std::mt19937_64& rng, ClassId c, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return SilhouetteCurve(c, v);
}

}  // namespace

TEST_CASE("identical curves give zero degradation", "[degradation]") {
  const SilhouetteCurve c(0, {0.1, 0.4, 0.7});
  for (std::size_t n_c : {1u, 5u, 10u}) {
    const auto d = class_degradation(c, c, n_c, 10);
    CHECK(d.deg == 0.0);
    CHECK(d.maape_raw == 0.0);
    CHECK(d.alpha == 1);
    CHECK(d.status == ClassStatus::Ok);
  }
}

TEST_CASE("alpha sign rule on constructed curves", "[degradation]") {
  const SilhouetteCurve base(0, {0.4, 0.8});

  // Current mean 0.7 > 0.6: an improvement, so alpha = -1.
  const auto up = current_with_norm_point_two(0.7, 0.4, 0.7);
  REQUIRE(up.mean() == Approx(0.7).margin(1e-12));
  const auto d_up = class_degradation(base, up, 50, 100);
  CHECK(d_up.maape_norm == Approx(0.2).margin(1e-12));
  CHECK(d_up.weight == 0.5);
  CHECK(d_up.alpha == -1);
  CHECK(d_up.deg == Approx(-0.1).margin(1e-12));

  // Current mean 0.4 < 0.6: a degradation, so alpha = +1.
  const auto down = current_with_norm_point_two(0.4, 0.2, 0.4);
  REQUIRE(down.mean() == Approx(0.4).margin(1e-12));
  const auto d_down = class_degradation(base, down, 50, 100);
  CHECK(d_down.maape_norm == Approx(0.2).margin(1e-12));
  CHECK(d_down.alpha == 1);
  CHECK(d_down.deg == Approx(0.1).margin(1e-12));
}

TEST_CASE("class_degradation equals alpha * maape_norm * weight", "[degradation][property]") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t pts = 2 + trial % 20;
    const auto b = random_curve(rng, 1, pts), c = random_curve(rng, 1, pts);
    const std::size_t n = 1 + rng() % 500, n_c = 1 + rng() % n;
    const auto d = class_degradation(b, c, n_c, n);

    double m = 0.0;
    for (std::size_t i = 0; i < pts; ++i)
      m += std::atan(std::abs((b.values()[i] - c.values()[i]) / b.values()[i]));
    m /= static_cast<double>(pts);
    const double alpha = b.mean() >= c.mean() ? 1.0 : -1.0;
    const double expected = alpha * (m / (std::numbers::pi / 2.0)) * (double(n_c) / double(n));
    CHECK(d.deg == Approx(expected).margin(1e-14));

    CHECK(std::abs(d.deg) <= 1.0);
    CHECK(std::abs(d.deg) <= d.maape_norm + 1e-15);
    CHECK(std::abs(d.deg) <= d.weight + 1e-15);
    if (d.deg != 0.0) CHECK((d.deg > 0) == (d.alpha > 0));

    if (b.mean() != c.mean()) CHECK(class_degradation(c, b, n_c, n).alpha == -d.alpha);
  }
}

TEST_CASE("class_degradation edge cases", "[degradation]") {
  const SilhouetteCurve base(2, {0.1, 0.5, 0.6}), cur(2, {0.0, 0.2, 0.3});
  const auto empty = class_degradation(base, SilhouetteCurve(2, {}), 0, 10);
  CHECK(empty.deg == 0.0);
  CHECK(empty.status == ClassStatus::NoData);

  const auto tiny = class_degradation(base, SilhouetteCurve(2, {0.3}), 1, 10);
  CHECK(tiny.deg == 0.0);
  CHECK(tiny.status == ClassStatus::TooSmall);

  CHECK_THROWS_AS(class_degradation(base, cur, 3, 0), DomainError);
  CHECK_THROWS_AS(class_degradation(base, cur, 11, 10), DomainError);
  const SilhouetteCurve two(2, {0.1, 0.2});
  CHECK_THROWS_AS(class_degradation(base, two, 2, 10), DomainError);
}

TEST_CASE("overall_degradation", "[degradation]") {
  auto cd = [](ClassId c, double deg) {
    ClassDegradation d;
    d.class_id = c;
    d.deg = deg;
    return d;
  };
  const std::vector<ClassDegradation> a{cd(0, 0.05), cd(1, 0.07)};
  CHECK(overall_degradation(a) == Approx(0.12).margin(1e-15));
  const std::vector<ClassDegradation> b{cd(0, 0.05), cd(1, -0.02)};
  CHECK(overall_degradation(b) == Approx(0.03).margin(1e-15));
  const std::vector<ClassDegradation> z{cd(0, 0.0), cd(1, 0.0), cd(2, 0.0)};
  CHECK(overall_degradation(z) == 0.0);

  const std::vector<ClassDegradation> dup{cd(1, 0.1), cd(1, 0.2)};
  CHECK_THROWS_AS(overall_degradation(dup), DomainError);

  // Same bits regardless of input order; an empty class adds nothing.
  const std::vector<ClassDegradation> fwd{cd(0, 0.1), cd(1, 0.2), cd(2, 0.3)};
  const std::vector<ClassDegradation> rev{cd(2, 0.3), cd(1, 0.2), cd(0, 0.1)};
  CHECK(overall_degradation(fwd) == overall_degradation(rev));
  auto with_empty = fwd;
  with_empty.push_back(cd(9, 0.0));
  CHECK(overall_degradation(with_empty) == overall_degradation(fwd));
}

TEST_CASE("recommend_rebuild", "[degradation]") {
  MonitorConfig cfg;
  DegradationReport r;
  ClassDegradation c0, c1;
  c0.class_id = 0;
  c1.class_id = 1;

  r.overall = 0.12;
  c0.deg = 0.06;
  c1.deg = 0.06;
  r.classes = {c0, c1};
  CHECK(recommend_rebuild(r, cfg));

  r.overall = 0.04;
  c0.deg = 0.06;
  c1.deg = -0.02;
  r.classes = {c0, c1};
  CHECK(recommend_rebuild(r, cfg));

  r.overall = 0.04;
  c0.deg = 0.03;
  c1.deg = 0.01;
  r.classes = {c0, c1};
  CHECK_FALSE(recommend_rebuild(r, cfg));
}

TEST_CASE("evaluate_window", "[degradation][evaluate]") {
  LabeledSamples train;
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int i = 0; i < 60; ++i) train.push_back(std::vector<double>{g(rng) + 6.0 * (i % 3), g(rng)}, i % 3);
  const auto profile = build_profile(train, DistanceMetric::Euclidean);
  const MonitorConfig cfg;

  SECTION("training data scored against itself is not degraded") {
    TrailingWindow w(profile.n_train, profile.classes(), 2);
    for (std::size_t i = 0; i < train.size(); ++i) w.push(train.samples[i], train.labels[i]);
    const auto ev = evaluate_window(profile, w.snapshot(), cfg, 4);
    CHECK(ev.report.step_id == 4);
    CHECK(ev.report.window_size == 60);
    CHECK_FALSE(ev.report.indeterminate);
    CHECK(ev.report.overall == 0.0);
    CHECK_FALSE(ev.report.rebuild_recommended);
    std::size_t total = 0;
    for (const auto& c : ev.report.classes) total += c.n_c;
    CHECK(total == ev.report.window_size);
  }

  SECTION("single-class window is indeterminate") {
    TrailingWindow w(profile.n_train, profile.classes(), 2);
    for (std::size_t i = 0; i < train.size(); ++i)
      if (train.labels[i] == 1) w.push(train.samples[i], 1);
    const auto ev = evaluate_window(profile, w.snapshot(), cfg);
    CHECK(ev.report.indeterminate);
    CHECK(ev.report.overall == 0.0);
    CHECK_FALSE(ev.report.rebuild_recommended);
    CHECK(ev.report.classes.size() == 3);
  }

  SECTION("a class missing from the window contributes zero") {
    TrailingWindow w(profile.n_train, profile.classes(), 2);
    for (std::size_t i = 0; i < train.size(); ++i)
      if (train.labels[i] != 2) w.push(train.samples[i], train.labels[i]);
    const auto ev = evaluate_window(profile, w.snapshot(), cfg);
    CHECK_FALSE(ev.report.indeterminate);
    CHECK(ev.report.classes[2].status == ClassStatus::NoData);
    CHECK(ev.report.classes[2].deg == 0.0);
    CHECK(ev.report.overall == Approx(ev.report.classes[0].deg + ev.report.classes[1].deg).margin(1e-15));
  }

  SECTION("mislabeled samples degrade their class") {
    TrailingWindow w(profile.n_train, profile.classes(), 2);
    for (std::size_t i = 0; i < train.size(); ++i)
      w.push(train.samples[i], i % 4 == 0 ? 0 : train.labels[i]);
    const auto ev = evaluate_window(profile, w.snapshot(), cfg);
    CHECK(ev.report.classes[0].alpha == 1);
    CHECK(ev.report.classes[0].deg > 0.05);
    CHECK(ev.report.rebuild_recommended);
  }
}
