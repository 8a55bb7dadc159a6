//
// ringctl - Copyright 2026 The ringctl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>

#include <doctest.h>

#include "ringctl/cw.hpp"

using namespace ringctl;

TEST_CASE("field values") {
  SinePulse p(3, 4.0);
  for (Real t: { 0.0, 1.0, 2.7, 4.0 }) {
    CHECK(field_value(p, Axis::X, t) == 0);
    CHECK(field_value(p, Axis::Y, t) == 0);
  }

  p.coeffs_x[1] = 1;
  CHECK(field_value(p, Axis::X, 2.0) == doctest::Approx(1.0));
  CHECK(field_value(p, Axis::X, 1.0) == doctest::Approx(std::sin(kPi / 4)));
  CHECK(field_value(p, Axis::Y, 2.0) == 0);

  SinePulse q(3, 4.0);
  q.coeffs_y[0] = 0.5;
  q.coeffs_y[2] = 1;
  CHECK(field_value(q, Axis::Y, 1.0) == doctest::Approx(1.5));
  q.active_y[2] = false;
  CHECK(field_value(q, Axis::Y, 1.0) == doctest::Approx(0.5));
  CHECK(q.active_count() == 7);

  const auto seed = SinePulse::raise_and_fall(9, 4.0);
  CHECK(seed.cutoff() == 9);
  CHECK(seed.active_count() == 20);
  CHECK(field_value(seed, Axis::X, 2.0) == doctest::Approx(1.0));
  CHECK(field_value(seed, Axis::Y, 2.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(SinePulse(2, 0.0), DomainError);
}

TEST_CASE("active coefficient packing") {
  SinePulse p(2, 4.0);
  p.coeffs_x << 1, 2, 3;
  p.coeffs_y << 4, 5, 6;
  p.active_x[1] = false;
  const RealVector x = p.pack_active();
  REQUIRE(x.size() == 5);
  CHECK(x == (RealVector(5) << 1, 3, 4, 5, 6).finished());
  SinePulse q = p;
  q.unpack_active(2 * x);
  CHECK(q.coeffs_x[1] == 2);
  CHECK(q.coeffs_y[2] == 12);
  CHECK_THROWS_AS(q.unpack_active(RealVector::Zero(4)), DomainError);
}

TEST_CASE("field penalty") {
  const RingModel model(3);
  const auto target = w_state(3);
  CwOptConfig cfg;

  const auto seed = SinePulse::raise_and_fall(4, 4.0);
  CHECK(field_penalty(seed, cfg) == 0);
  CHECK(cw_loss(seed, target, model, cfg) == cw_infidelity(seed, target, model));

  // Constant fields make the extrema exact.
  SinePulse neg(2, 4.0);
  neg.coeffs_x[0] = -0.3;
  neg.coeffs_y[0] = 1.0;
  CHECK(field_penalty(neg, cfg) == doctest::Approx(0.3));
  CHECK(cw_loss(neg, target, model, cfg)
        == doctest::Approx(cw_infidelity(neg, target, model) + 0.3));

  SinePulse high(2, 4.0);
  high.coeffs_y[0] = 2 * kPi + 0.1;
  CHECK(field_penalty(high, cfg) == doctest::Approx(2 * kPi + 0.1));

  // Touching the boundary costs nothing.
  SinePulse edge(2, 4.0);
  edge.coeffs_x[0] = 2 * kPi;
  CHECK(field_penalty(edge, cfg) == 0);

  const auto e = field_extrema(SinePulse::raise_and_fall(1, 4.0), 1024);
  CHECK(e.min_x == doctest::Approx(0.0));
  CHECK(e.max_x == doctest::Approx(1.0).epsilon(1e-5));

  cfg.field_hi = cfg.field_lo;
  CHECK_THROWS_AS(field_penalty(seed, cfg), DomainError);
}

TEST_CASE("informed multistart") {
  const RingModel model(2);
  const auto target = dicke_state(2, 1);
  CwOptConfig cfg;
  cfg.n_seed_samples = 10;
  cfg.n_local_searches = 2;
  cfg.max_iters = 40;

  SUBCASE("zero noise starts every search from the seed") {
    cfg.seed_noise_sigma = 0;
    const auto res = informed_multistart(target, 3, 4.0, model, cfg);
    REQUIRE(res.size() == 2);
    CHECK(res[0].pulse.pack_active() == res[1].pulse.pack_active());
    CHECK(res[0].loss == res[1].loss);
    CHECK(res[0].loss <= cw_loss(SinePulse::raise_and_fall(3, 4.0), target, model, cfg));
  }

  SUBCASE("deterministic and ranked") {
    const auto a = informed_multistart(target, 3, 4.0, model, cfg);
    const auto b = informed_multistart(target, 3, 4.0, model, cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
      CHECK(a[i].pulse.pack_active() == b[i].pulse.pack_active());
    for (std::size_t i = 1; i < a.size(); ++i)
      CHECK(a[i - 1].loss <= a[i].loss);
  }

  CHECK_THROWS_AS(informed_multistart(target, 0, 4.0, model, cfg), DomainError);
}

TEST_CASE("component removal") {
  const RingModel model(2);
  const auto target = dicke_state(2, 1);
  CwOptConfig cfg;
  cfg.max_iters = 60;

  SUBCASE("a pulse that misses the threshold is rejected") {
    CHECK_THROWS_AS(simplify_pulse(SinePulse(2, 4.0), target, model, cfg), DomainError);
  }

  SUBCASE("every removal fails when both axes are needed") {
    // A field along one fixed axis conserves the spin-flip parity about that
    // axis, which caps the D(2,1) fidelity from |00> at 1/2.
    SinePulse p(1, 4.0);
    p.active_x = { true, false };
    p.active_y = { false, true };
    p.coeffs_x[0] = 1.6;
    p.coeffs_y[1] = 6.0;
    const auto start = cw_local_optimize(p, target, model, cfg);
    REQUIRE(start.loss < 0.3);
    cfg.fidelity_threshold = 0.7;
    const auto res = simplify_pulse(start.pulse, target, model, cfg);
    CHECK(res.remaining == 2);
    CHECK(res.history.size() == 2);
    for (const auto &step: res.history) {
      CHECK_FALSE(step.accepted);
      CHECK(step.loss >= 0.5 - 1e-9);
    }
    CHECK(res.pulse.pack_active() == start.pulse.pack_active());
  }
}

TEST_CASE("coefficient names") {
  CHECK(coefficient_name(Axis::X, 0) == "bx0");
  CHECK(coefficient_name(Axis::Y, 7) == "by7");
}
