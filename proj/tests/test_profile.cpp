#include <catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "sildrift/profile.hpp"

using namespace sildrift;
using Catch::Approx;

namespace {

LabeledSamples four_points() {
  LabeledSamples d;
  for (auto [x, c] : {std::pair{0.0, 0}, {1.0, 0}, {5.0, 1}, {6.0, 1}})
    d.push_back(std::vector<double>{x}, c);
  return d;
}

SilhouetteCurve random_curve(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return SilhouetteCurve(0, v);
}

}  // namespace

TEST_CASE("curve construction sorts and averages", "[profile][curve]") {
  const SilhouetteCurve c(7, {0.5, -0.2, 0.9, 0.1});
  CHECK(c.class_id() == 7);
  CHECK(c.values() == std::vector<double>{-0.2, 0.1, 0.5, 0.9});
  CHECK(c.count() == 4);
  CHECK(c.mean() == Approx(0.325).margin(1e-12));
}

TEST_CASE("build_profile on the 4-point example", "[profile]") {
  const auto p = build_profile(four_points(), DistanceMetric::Euclidean);
  REQUIRE(p.curves.size() == 2);
  CHECK(p.n_train == 4);
  CHECK(p.dimension == 1);
  for (const auto& c : p.curves) {
    REQUIRE(c.count() == 2);
    CHECK(c.values()[0] == Approx(0.77778).margin(1e-5));
    CHECK(c.values()[1] == Approx(0.81818).margin(1e-5));
  }
  CHECK(p.class_count(0) == 2);
  CHECK(p.class_count(1) == 2);
  CHECK(p.find(2) == nullptr);
}

TEST_CASE("build_profile shape and determinism", "[profile]") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  LabeledSamples d;
  for (int i = 0; i < 90; ++i) {
    const ClassId c = i % 3;
    d.push_back(std::vector<double>{g(rng) + 4.0 * c, g(rng)}, c);
  }
  const auto a = build_profile(d, DistanceMetric::Euclidean);
  const auto b = build_profile(d, DistanceMetric::Euclidean);
  CHECK(a.curves.size() == 3);
  CHECK(a.n_train == 90);
  std::size_t total = 0;
  for (const auto& c : a.curves) total += c.count();
  CHECK(total == a.n_train);
  CHECK(a == b);

  LabeledSamples single;
  single.push_back(std::vector<double>{1.0}, 0);
  single.push_back(std::vector<double>{2.0}, 0);
  CHECK_THROWS_AS(build_profile(single, DistanceMetric::Euclidean), DegenerateLabelingError);
}

TEST_CASE("downsample examples", "[profile][downsample]") {
  const SilhouetteCurve c(1, {-0.2, 0.1, 0.3, 0.5, 0.9});
  const auto d3 = downsample(c, 3);
  CHECK(d3.values() == std::vector<double>{-0.2, 0.3, 0.9});
  CHECK(d3.mean() == Approx((-0.2 + 0.3 + 0.9) / 3.0).margin(1e-15));
  CHECK(d3.class_id() == 1);

  CHECK(downsample(c, 5) == c);
  CHECK(downsample(c, 2).values() == std::vector<double>{-0.2, 0.9});

  CHECK_THROWS_AS(downsample(c, 1), DomainError);
  CHECK_THROWS_AS(downsample(c, 6), DomainError);
}

TEST_CASE("downsample properties", "[profile][downsample][property]") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial) * 3;
    const auto c = random_curve(rng, n);
    const std::size_t target = 2 + static_cast<std::size_t>(rng() % (n - 1));
    const auto d = downsample(c, target);
    CHECK(d.count() == target);
    CHECK(std::is_sorted(d.values().begin(), d.values().end()));
    CHECK(d.values().front() == c.values().front());
    CHECK(d.values().back() == c.values().back());
    CHECK(downsample(d, target) == d);
    CHECK(d.mean() == Approx(SilhouetteCurve::mean_of(d.values())).margin(1e-12));
  }
}

TEST_CASE("align", "[profile][align]") {
  std::mt19937_64 rng(23);
  const auto big = random_curve(rng, 100), small = random_curve(rng, 60);
  {
    const auto [a, b] = align(big, small);
    CHECK(a.count() == 60);
    CHECK(b.count() == 60);
    CHECK(b == small);
  }
  {
    const auto [a, b] = align(small, big);
    CHECK(a == small);
    CHECK(b.count() == 60);
  }
  {
    const auto [a, b] = align(small, small);
    CHECK(a == small);
    CHECK(b == small);
  }
  const SilhouetteCurve five(0, {-0.2, 0.1, 0.3, 0.5, 0.9}), three(0, {0.0, 0.1, 0.2});
  const auto [a5, b3] = align(five, three);
  CHECK(a5.values() == std::vector<double>{-0.2, 0.3, 0.9});
  CHECK(b3 == three);

  const SilhouetteCurve tiny(0, {0.4});
  CHECK_THROWS_AS(align(tiny, five), ClassTooSmallError);
  CHECK_THROWS_AS(align(five, tiny), ClassTooSmallError);

  for (int trial = 0; trial < 50; ++trial) {
    const auto x = random_curve(rng, 2 + rng() % 40), y = random_curve(rng, 2 + rng() % 40);
    const auto [ax, ay] = align(x, y);
    CHECK(ax.count() == ay.count());
    CHECK(ax.count() == std::min(x.count(), y.count()));
  }
}
