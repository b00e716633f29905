#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spectral/atoms.hpp"
#include "spectral/sampling.hpp"
#include "test_util.hpp"

using namespace spectral;
namespace tt = spectral::testing;

TEST_SUITE_BEGIN("atoms");

TEST_CASE("frequency wraps into [0,1)") {
  CHECK(Frequency(0.25).value() == doctest::Approx(0.25));
  CHECK(Frequency(1.25).value() == doctest::Approx(0.25));
  CHECK(Frequency(-0.25).value() == doctest::Approx(0.75));
  CHECK(Frequency(1.0).value() == 0.0);
  CHECK(Frequency(-1e-18).value() < 1.0);
  CHECK_THROWS_AS(Frequency(std::nan("")), std::invalid_argument);
}

TEST_CASE("wrap distance") {
  CHECK(wrap_distance(0.9, 0.1) == doctest::Approx(0.2));
  CHECK(wrap_distance(0.2, 0.7) == doctest::Approx(0.5));
  CHECK(wrap_distance(0.3, 0.3) == 0.0);
}

TEST_CASE("atom_full known values") {
  const Vec a0 = atom_full(Frequency(0.0), 0.0, 4).vec();
  for (int j = 0; j < 4; ++j) CHECK(std::abs(a0[j] - Complex(1, 0)) < 1e-15);

  const Vec a1 = atom_full(Frequency(0.5), 0.0, 4).vec();
  CHECK(std::abs(a1[0] - Complex(1, 0)) < 1e-15);
  CHECK(std::abs(a1[1] - Complex(-1, 0)) < 1e-14);
  CHECK(std::abs(a1[2] - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(a1[3] - Complex(-1, 0)) < 1e-14);

  const Vec a2 = atom_full(Frequency(0.25), std::numbers::pi / 2, 2).vec();
  CHECK(std::abs(a2[0] - Complex(0, 1)) < 1e-15);
  CHECK(std::abs(a2[1] - Complex(-1, 0)) < 1e-14);

  CHECK_THROWS_AS(atom_full(Frequency(0.1), 0.0, 0), std::invalid_argument);
}

TEST_CASE("atom norm is exactly sqrt(n)") {
  std::mt19937_64 eng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + eng() % 1024);
    const Frequency f(tt::uniform01(eng));
    const double phi = tt::uniform(eng, 0.0, 2 * std::numbers::pi);
    CHECK(atom_full(f, phi, n).vec().squaredNorm() ==
          doctest::Approx(static_cast<double>(n)).epsilon(1e-14));
  }
}

TEST_CASE("phase factors out of the atom") {
  std::mt19937_64 eng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const Frequency f(tt::uniform01(eng));
    const double phi = tt::uniform(eng, 0.0, 2 * std::numbers::pi);
    const Vec lhs = atom_full(f, phi, 33).vec();
    const Vec rhs = std::polar(1.0, phi) * atom_full(f, 0.0, 33).vec();
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("atom_partial selects entries") {
  const SamplingOperator sel = selection_matrix(SelectionPattern({0, 2}, 4));
  const Vec b = atom_partial(Frequency(0.5), 0.0, sel).vec();
  REQUIRE(b.size() == 2);
  CHECK(std::abs(b[0] - Complex(1, 0)) < 1e-14);
  CHECK(std::abs(b[1] - Complex(1, 0)) < 1e-14);

  const SamplingOperator id = SamplingOperator::identity(6);
  const Frequency f(0.3123);
  CHECK((atom_partial(f, 0.4, id).vec() - atom_full(f, 0.4, 6).vec()).norm() == 0.0);

  const SamplingOperator one = selection_matrix(SelectionPattern({0}, 4));
  const Vec b1 = atom_partial(Frequency(0.0), 0.0, one).vec();
  REQUIRE(b1.size() == 1);
  CHECK(std::abs(b1[0] - Complex(1, 0)) < 1e-15);
}

TEST_CASE("synthesize_signal known values") {
  const SpectralSupport s1({{Frequency(0.0), Complex(2, 0)}});
  const Vec x1 = synthesize_signal(s1, 3).vec();
  for (int j = 0; j < 3; ++j) CHECK(std::abs(x1[j] - Complex(2, 0)) < 1e-14);

  const SpectralSupport s2({{Frequency(0.5), Complex(1, 0)}, {Frequency(0.0), Complex(1, 0)}});
  const Vec x2 = synthesize_signal(s2, 2).vec();
  CHECK(std::abs(x2[0] - Complex(2, 0)) < 1e-14);
  CHECK(std::abs(x2[1]) < 1e-14);

  CHECK(synthesize_signal(SpectralSupport(), 5).vec().norm() == 0.0);
}

TEST_CASE("synthesis is additive over disjoint supports") {
  std::mt19937_64 eng(13);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<SpectralSupport::Entry> ea, eb;
    for (int k = 0; k < 3; ++k) {
      ea.push_back({Frequency(tt::uniform(eng, 0.0, 0.45)), tt::rand_complex(eng)});
      eb.push_back({Frequency(tt::uniform(eng, 0.5, 0.95)), tt::rand_complex(eng)});
    }
    SpectralSupport sa(ea), sb(eb);
    std::vector<SpectralSupport::Entry> eu = ea;
    eu.insert(eu.end(), eb.begin(), eb.end());
    const Vec lhs = synthesize_signal(SpectralSupport(eu), 24).vec();
    const Vec rhs = synthesize_signal(sa, 24).vec() + synthesize_signal(sb, 24).vec();
    CHECK((lhs - rhs).norm() < 1e-12);
  }
}

TEST_CASE("min_separation") {
  const SpectralSupport s({{Frequency(0.1), 1.0}, {Frequency(0.5), 1.0}, {Frequency(0.9), 1.0}});
  CHECK(min_separation(s) == doctest::Approx(0.2));
  const SpectralSupport s2({{Frequency(0.2), 1.0}, {Frequency(0.7), 1.0}});
  CHECK(min_separation(s2) == doctest::Approx(0.5));
  CHECK(min_separation(SpectralSupport({{Frequency(0.4), 1.0}})) == 1.0);
  CHECK(min_separation(SpectralSupport()) == 1.0);
}

TEST_CASE("min_separation is shift invariant") {
  std::mt19937_64 eng(14);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SpectralSupport::Entry> es;
    for (int k = 0; k < 4; ++k) es.push_back({Frequency(tt::uniform01(eng)), 1.0});
    const SpectralSupport base(es);
    const double shift = tt::uniform01(eng);
    std::vector<SpectralSupport::Entry> shifted;
    for (const auto& e : base.entries())
      shifted.push_back({Frequency(e.freq.value() + shift), e.amp});
    CHECK(min_separation(SpectralSupport(shifted)) ==
          doctest::Approx(min_separation(base)).epsilon(1e-12));
  }
}

TEST_CASE("support construction merges duplicates and drops zeros") {
  const SpectralSupport s({{Frequency(0.3), Complex(1, 0)},
                           {Frequency(0.3 + 5e-13), Complex(2, 0)},
                           {Frequency(0.7), Complex(0, 0)}});
  REQUIRE(s.size() == 1);
  CHECK(s.entries()[0].amp == Complex(3, 0));

  // entries sorted ascending
  const SpectralSupport s2({{Frequency(0.9), 1.0}, {Frequency(0.1), 1.0}});
  CHECK(s2.entries()[0].freq.value() == doctest::Approx(0.1));
}

TEST_CASE("complex signal rejects non-finite entries") {
  Vec v(2);
  v << Complex(1, 0), Complex(std::numeric_limits<double>::infinity(), 0);
  CHECK_THROWS_AS(ComplexSignal{v}, std::invalid_argument);
}

TEST_SUITE_END();
