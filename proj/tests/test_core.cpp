#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "rescomp/activation.hpp"
#include "rescomp/rng.hpp"
#include "rescomp/types.hpp"

using namespace rescomp;

namespace {

// e^2 from its Taylor series; keeps the tanh reference independent of libm.
long double exp2_series() {
  long double sum = 0.0L, term = 1.0L;
  for (int n = 1; n <= 60; ++n) {
    sum += term;
    term *= 2.0L / n;
  }
  return sum;
}

}  // namespace

TEST_SUITE_BEGIN("core");

TEST_CASE("rng: identical seeds give identical streams") {
  Rng a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.uniform() == b.uniform());
    CHECK(a.uniform_index(97) == b.uniform_index(97));
  }

  std::vector<int> va(100), vb(100);
  std::iota(va.begin(), va.end(), 0);
  std::iota(vb.begin(), vb.end(), 0);
  Rng sa(7), sb(7);
  sa.shuffle(va);
  sb.shuffle(vb);
  CHECK(va == vb);
}

TEST_CASE("rng: different seeds and child streams diverge") {
  Rng a(1), b(2);
  int differing = 0;
  for (int i = 0; i < 64; ++i)
    if (a.uniform() != b.uniform()) ++differing;
  CHECK(differing > 60);

  Rng parent(99);
  Rng c0 = parent.child(0), c1 = parent.child(1);
  differing = 0;
  for (int i = 0; i < 64; ++i)
    if (c0.uniform() != c1.uniform()) ++differing;
  CHECK(differing > 60);

  // Child derivation depends only on the parent seed, not its draw position.
  Rng parent2(99);
  parent2.uniform();
  CHECK(parent.child(5).uniform() == parent2.child(5).uniform());
}

TEST_CASE("rng: uniform draws stay in range with a sane mean") {
  Rng r(2024);
  double sum = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double x = r.uniform();
    REQUIRE(x >= 0.0);
    REQUIRE(x < 1.0);
    sum += x;
  }
  const double mean = sum / 10000.0;
  CHECK(mean >= 0.45);
  CHECK(mean <= 0.55);
}

TEST_CASE("rng: uniform_index bounds and edge cases") {
  Rng r(5);
  for (int i = 0; i < 1000; ++i) CHECK(r.uniform_index(7) < 7);
  for (int i = 0; i < 10; ++i) CHECK(r.uniform_index(1) == 0);
  CHECK_THROWS_AS(r.uniform_index(0), std::invalid_argument);
  for (int i = 0; i < 100; ++i) {
    const auto v = r.uniform_int(-3, 3);
    CHECK(v >= -3);
    CHECK(v <= 3);
  }
}

TEST_CASE("rng: shuffle is a permutation") {
  Rng r(11);
  std::vector<int> v(257);
  std::iota(v.begin(), v.end(), 0);
  r.shuffle(v);
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 257; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("activation: point values") {
  const Activation sine{ActivationKind::sine};
  const Activation th{ActivationKind::tanh};
  const Activation lg{ActivationKind::logistic};
  const Activation id{ActivationKind::identity};

  CHECK(sine(0.0) == 0.0);
  CHECK(sine(std::acos(-1.0) / 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(th(0.0) == 0.0);

  // tanh(1) = (e^2 - 1) / (e^2 + 1) with e^2 summed from the series.
  const long double e2 = exp2_series();
  const double tanh1 = static_cast<double>((e2 - 1.0L) / (e2 + 1.0L));
  CHECK(th(1.0) == doctest::Approx(tanh1).epsilon(1e-12));

  CHECK(lg(0.0) == 0.5);
  CHECK(lg(100.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(id(-3.25) == -3.25);
}

TEST_CASE("activation: lipschitz constants and ranges") {
  CHECK(Activation{ActivationKind::sine}.lipschitz() == 1.0);
  CHECK(Activation{ActivationKind::tanh}.lipschitz() == 1.0);
  CHECK(Activation{ActivationKind::logistic}.lipschitz() == 0.25);
  CHECK(Activation{ActivationKind::identity}.lipschitz() == 1.0);

  CHECK(Activation{ActivationKind::sine}.bounded());
  CHECK(!Activation{ActivationKind::identity}.bounded());
  CHECK(Activation{ActivationKind::logistic}.range_lo() == 0.0);
}

TEST_CASE("activation: |f(x)-f(y)| <= L|x-y| over random pairs") {
  Rng r(31337);
  for (ActivationKind kind : {ActivationKind::sine, ActivationKind::tanh,
                              ActivationKind::logistic, ActivationKind::identity}) {
    const Activation f{kind};
    const double lip = f.lipschitz();
    for (int i = 0; i < 10000; ++i) {
      const double x = r.uniform(-20.0, 20.0);
      const double y = r.uniform(-20.0, 20.0);
      CHECK(std::abs(f(x) - f(y)) <= lip * std::abs(x - y) + 1e-12);
    }
  }
}

TEST_CASE("activation: vector apply matches scalar calls") {
  Rng r(8);
  std::vector<double> in(1009), out(1009);
  for (auto& x : in) x = r.uniform(-30.0, 30.0);
  for (ActivationKind kind : {ActivationKind::sine, ActivationKind::tanh,
                              ActivationKind::logistic, ActivationKind::identity}) {
    const Activation f{kind};
    f.apply(in.data(), out.data(), in.size());
    for (std::size_t i = 0; i < in.size(); ++i)
      CHECK(out[i] == doctest::Approx(f(in[i])).epsilon(1e-14));
    if (f.bounded())
      for (double y : out) {
        CHECK(y >= f.range_lo());
        CHECK(y <= f.range_hi());
      }
  }
}

TEST_CASE("activation: parse round-trips") {
  for (const char* name : {"sine", "tanh", "logistic", "identity"})
    CHECK(Activation::parse(name).name() == doctest::String(name));
  CHECK_THROWS_AS(Activation::parse("cosine"), std::invalid_argument);
}

TEST_CASE("signal validation") {
  Signal s;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s.values.resize(3);
  s.values << 0.1, 0.5, 0.9;
  CHECK_NOTHROW(s.validate());
  s.values[1] = std::nan("");
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("class partition: labels round-trip and validation") {
  const std::vector<int> labels{0, 1, 2, 0, 1, 2, 0};
  const ClassPartition p = ClassPartition::from_labels(labels, 3);
  CHECK(p.total() == 7);
  CHECK(p.smallest_class() == 2);
  CHECK(p.to_labels(7) == labels);

  // Overlap.
  ClassPartition bad = p;
  bad.members[1].push_back(0);
  CHECK_THROWS_AS(bad.validate(7), std::invalid_argument);

  // Gap: index 6 missing.
  bad = p;
  bad.members[0] = {0, 3};
  CHECK_THROWS_AS(bad.validate(7), std::invalid_argument);

  // Empty class.
  CHECK_THROWS_AS(ClassPartition::from_labels({0, 0, 2, 2}, 3),
                  std::invalid_argument);

  // Label out of range.
  CHECK_THROWS_AS(ClassPartition::from_labels({0, 3}, 3), std::invalid_argument);
}

TEST_CASE("sample times: constructors and validation") {
  const SampleTimes all = SampleTimes::all(5);
  CHECK(all.count() == 5);
  CHECK(all.times.back() == 4);
  CHECK_NOTHROW(all.validate(5));
  CHECK_THROWS_AS(all.validate(4), std::invalid_argument);

  const SampleTimes st = SampleTimes::strided(24, 256);
  CHECK(st.count() == 256);
  CHECK(st.times[1] == 24);
  CHECK(st.times.back() == 255 * 24);

  SampleTimes bad;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.times = {3, 3};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.times = {-1, 2};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_SUITE_END();
