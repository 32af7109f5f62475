#include <random>

#include <doctest.h>

#include "setbound/propagate.hpp"
#include "setbound/zonotope.hpp"
#include "support/fixtures.hpp"

using namespace setbound;
using namespace setbound::testing;

namespace {

struct Case {
  Network net;
  Box cell;
};

// Seeded (network, cell) pairs covering widths from tiny to wide.
std::vector<Case> seeded_cases() {
  std::vector<Case> cases;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> centre(-1, 1);
  const double widths[] = {0.01, 0.1, 0.5, 1.0};
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const std::size_t n = 2 + seed % 2;
    std::vector<std::size_t> dims{n, 5 + seed % 4, n};
    if (seed % 4 == 3) dims.insert(dims.begin() + 1, 6);
    const Activation act = seed % 3 == 2 ? Activation::sigmoid : Activation::tanh;
    const Network net = generate_network(seed, dims, act);
    std::vector<Interval> cell;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = centre(rng), w = widths[(seed + k) % 4];
      cell.emplace_back(c - w / 2, c + w / 2);
    }
    cases.push_back({net, Box(cell)});
  }
  return cases;
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

bool box_contains_point(const Box& b, const std::vector<double>& y) {
  return b.contains(std::span<const double>(y));
}

}  // namespace

TEST_CASE("box_propagate") {
  const Box unit = Box::cube(2, 0, 1);
  CHECK(box_propagate(identity_network(2), unit) == unit);
  CHECK(box_propagate(single_tanh_network(2), Box::cube(2, 0, 0)) == Box::cube(2, 0, 0));
  CHECK_THROWS_AS(box_propagate(identity_network(2), Box::cube(3, 0, 1)), std::invalid_argument);

  SUBCASE("contains the hull of 1e5 Monte-Carlo images") {
    const Network net = invertible_net();
    const Box out = box_propagate(net, unit);
    for (const auto& x : sample_box(unit, 100000, 3)) {
      REQUIRE(box_contains_point(out, reference_forward(net, x)));
    }
  }
}

TEST_CASE("zono_from_box") {
  const Zonotope z = zono_from_box(Box{Interval(0, 2), Interval(1, 1)});
  CHECK(z.center() == vec({1, 1}));
  REQUIRE(z.num_generators() == 1);
  CHECK(z.generators().col(0) == vec({1, 0}));

  CHECK(zono_from_box(Box::cube(3, 0.5, 0.5)).num_generators() == 0);

  const Zonotope cube = zono_from_box(Box::cube(3, -1, 1));
  CHECK(cube.generators() == Eigen::MatrixXd::Identity(3, 3));
  CHECK(cube.interval_hull() == Box::cube(3, -1, 1));
}

TEST_CASE("zono_affine") {
  const Zonotope z(vec({0.5, -1}), (Eigen::MatrixXd(2, 3) << 1, 0, 0.25, 0, 2, -0.5).finished());
  const Zonotope same = zono_affine(z, Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  CHECK(same.center() == z.center());
  CHECK(same.generators().leftCols(3) == z.generators());
  CHECK(within(same.interval_hull(), z.interval_hull(), 1e-14));

  const Zonotope doubled = zono_affine(z, 2 * Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Zero(2));
  CHECK(doubled.generators().leftCols(3) == 2 * z.generators());

  CHECK_THROWS_AS(zono_affine(z, Eigen::MatrixXd::Identity(3, 3), Eigen::VectorXd::Zero(3)), std::invalid_argument);

  SUBCASE("hull is inside the interval mat-vec of the input hull") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int trial = 0; trial < 200; ++trial) {
      Eigen::MatrixXd g(3, 4), w(3, 3);
      Eigen::VectorXd c(3), b(3);
      for (Eigen::Index i = 0; i < 12; ++i) g(i % 3, i / 3) = u(rng);
      for (Eigen::Index i = 0; i < 9; ++i) w(i % 3, i / 3) = u(rng);
      for (Eigen::Index i = 0; i < 3; ++i) {
        c(i) = u(rng);
        b(i) = u(rng);
      }
      const Zonotope zz(c, g);
      const Box h = zz.interval_hull();
      const Network lin = linear_network(w, b);
      const Box boxed = box_propagate(lin, h);
      REQUIRE(within(zono_affine(zz, w, b).interval_hull(), boxed, 1e-12));
    }
  }
}

TEST_CASE("zono_activation") {
  SUBCASE("symmetric one-dimensional tanh") {
    const Zonotope z(vec({0}), Eigen::MatrixXd::Ones(1, 1));
    const Zonotope out = zono_activation(z, Activation::tanh);
    const double slope = 0.41997434161402606;  // tanh'(1)
    const double mu2 = 0.7615941559557649 - slope;
    CHECK(out.center()(0) == doctest::Approx(0).epsilon(1e-12));
    // one scaled input generator plus one fresh generator
    REQUIRE(out.num_generators() == 1);  // both are axis-aligned in 1-D and merge
    CHECK(out.generators()(0, 0) == doctest::Approx(slope + mu2).epsilon(1e-12));
    const Box h = out.interval_hull();
    CHECK(h[0].lo() <= -tanhl(1.0L));
    CHECK(h[0].hi() >= tanhl(1.0L));
    CHECK(h[0].hi() == doctest::Approx(0.7615941559557649).epsilon(1e-12));
  }

  SUBCASE("two-dimensional slope and offset are visible before merging") {
    // Dimension 0 is a function of e0 and e1, so its generators stay dense.
    const Zonotope z(vec({0.2, 0}), (Eigen::MatrixXd(2, 2) << 0.5, 0.5, 0.5, -0.5).finished());
    const Zonotope out = zono_activation(z, Activation::tanh);
    const double l = -0.8, u = 1.2;
    const double slope = std::min(1 - std::tanh(l) * std::tanh(l), 1 - std::tanh(u) * std::tanh(u));
    const double mu1 = 0.5 * (std::tanh(u) + std::tanh(l) - slope * (u + l));
    const double mu2 = 0.5 * (std::tanh(u) - std::tanh(l) - slope * (u - l));
    CHECK(out.center()(0) == doctest::Approx(slope * 0.2 + mu1).epsilon(1e-12));
    CHECK(out.generators()(0, 0) == doctest::Approx(slope * 0.5).epsilon(1e-12));
    const Eigen::VectorXd r = out.radius();
    CHECK(r(0) == doctest::Approx(slope * 1.0 + mu2).epsilon(1e-12));
  }

  SUBCASE("degenerate dimension maps to a point") {
    const Zonotope z(vec({0.3}), Eigen::MatrixXd(1, 0));
    const Zonotope out = zono_activation(z, Activation::sigmoid);
    const Box h = out.interval_hull();
    const long double exact = 1.0L / (1.0L + expl(-0.3L));
    CHECK(h[0].lo() <= exact);
    CHECK(exact <= h[0].hi());
    CHECK(h[0].width() < 1e-14);
  }

  SUBCASE("linear passes through") {
    const Zonotope z(vec({1, 2}), Eigen::MatrixXd::Identity(2, 2));
    const Zonotope out = zono_activation(z, Activation::linear);
    CHECK(out.center() == z.center());
    CHECK(out.generators() == z.generators());
  }

  SUBCASE("contains the activation of sampled points") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (Activation act : {Activation::tanh, Activation::sigmoid}) {
      for (int trial = 0; trial < 10; ++trial) {
        Eigen::MatrixXd g(3, 3);
        Eigen::VectorXd c(3);
        for (Eigen::Index i = 0; i < 9; ++i) g(i % 3, i / 3) = 2 * u(rng);
        for (Eigen::Index i = 0; i < 3; ++i) c(i) = 2 * u(rng);
        const Zonotope z(c, g);
        const Box out = zono_activation(z, act).interval_hull();
        for (int s = 0; s < 1000; ++s) {
          Eigen::VectorXd e(3);
          for (Eigen::Index i = 0; i < 3; ++i) e(i) = u(rng);
          const Eigen::VectorXd x = c + g * e;
          std::vector<double> y(3);
          for (Eigen::Index i = 0; i < 3; ++i) {
            y[static_cast<std::size_t>(i)] = act == Activation::tanh ? std::tanh(x(i)) : ref_sigmoid(x(i));
          }
          REQUIRE(box_contains_point(out, y));
        }
      }
    }
  }
}

TEST_CASE("compact_axis_generators keeps the hull") {
  const Zonotope z(vec({0, 0}), (Eigen::MatrixXd(2, 4) << 1, 0, 0.5, 0, 0, 0, -0.25, 0, 0).finished());
  const Zonotope c = compact_axis_generators(z);
  CHECK(c.num_generators() == 2);
  CHECK(c.interval_hull() == z.interval_hull());
}

TEST_CASE("propagate") {
  const Box unit = Box::cube(2, 0, 1);
  const Network net = invertible_net();
  const ReachSet boxed = propagate(net, unit, Domain::box);
  CHECK(boxed.hull() == box_propagate(net, unit));
  CHECK(boxed.source_cell == unit);

  const ReachSet zid = propagate(identity_network(2), unit, Domain::zonotope);
  CHECK(within(zid.hull(), unit, 1e-15));
  CHECK(within(unit, zid.hull(), 0.0));

  CHECK(parse_domain("zono") == Domain::zonotope);
  CHECK(parse_domain("box") == Domain::box);
  CHECK_THROWS_AS(parse_domain("star"), std::invalid_argument);
}

TEST_CASE("soundness of both domains on the seeded suite") {
  for (const Case& c : seeded_cases()) {
    const Box boxed = propagate(c.net, c.cell, Domain::box).hull();
    const Box zono = propagate(c.net, c.cell, Domain::zonotope).hull();
    for (const auto& x : sample_box(c.cell, 10000, 17)) {
      const auto y = reference_forward(c.net, x);
      REQUIRE(box_contains_point(boxed, y));
      REQUIRE(box_contains_point(zono, y));
    }
  }
}

TEST_CASE("zonotope hull is dominated by the box result") {
  for (const Case& c : seeded_cases()) {
    const Box boxed = propagate(c.net, c.cell, Domain::box).hull();
    const Box zono = propagate(c.net, c.cell, Domain::zonotope).hull();
    REQUIRE(within(zono, boxed, 1e-9));
  }
}

TEST_CASE("box propagation is monotone in the cell") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> frac(0, 1);
  for (const Case& c : seeded_cases()) {
    std::vector<Interval> inner;
    for (const Interval& d : c.cell.intervals()) {
      const double a = d.lo() + frac(rng) * d.width(), b = d.lo() + frac(rng) * d.width();
      inner.emplace_back(std::min(a, b), std::max(a, b));
    }
    REQUIRE(contains(box_propagate(c.net, c.cell), box_propagate(c.net, Box(inner))));
  }
}
