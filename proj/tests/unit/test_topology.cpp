#include <Eigen/LU>
#include <algorithm>
#include <random>
#include <set>

#include <doctest.h>

#include "setbound/certify.hpp"
#include "setbound/topology.hpp"
#include "support/fixtures.hpp"

using namespace setbound;
using namespace setbound::testing;

namespace {

Eigen::VectorXd to_vec(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Network small_tanh_net(std::uint64_t seed) {
  const std::size_t dims[] = {2, 6, 2};
  return generate_network(seed, dims, Activation::tanh, 0.5);
}

}  // namespace

TEST_CASE("boundary_faces") {
  const auto faces = boundary_faces(Box::cube(2, 0, 1));
  REQUIRE(faces.size() == 4);
  CHECK(faces[0] == Box{Interval(0, 0), Interval(0, 1)});
  CHECK(faces[1] == Box{Interval(1, 1), Interval(0, 1)});
  CHECK(faces[2] == Box{Interval(0, 1), Interval(0, 0)});
  CHECK(faces[3] == Box{Interval(0, 1), Interval(1, 1)});

  CHECK(boundary_faces(Box::cube(3, -1, 1)).size() == 6);
  CHECK_THROWS_AS(boundary_faces(Box{Interval(0, 0), Interval(0, 1)}), std::invalid_argument);
}

TEST_CASE("partition") {
  const Box unit = Box::cube(2, 0, 1);
  CHECK(partition(unit, {100, 100}).size() == 10000);
  CHECK(partition(unit, {1, 1}).cell(0) == unit);

  const CellGrid face = partition(Box{Interval(0, 0), Interval(0, 1)}, {1, 100});
  CHECK(face.size() == 100);
  CHECK(face.cell(0)[0].is_point());
  std::size_t boundary = 0;
  for (const Box& f : boundary_faces(unit)) {
    std::vector<std::size_t> counts{100, 100};
    for (std::size_t k = 0; k < 2; ++k) {
      if (f.is_degenerate(k)) counts[k] = 1;
    }
    boundary += partition(f, counts).size();
  }
  CHECK(boundary == 400);
  const std::size_t counts[] = {100, 100};
  CHECK(boundary_cell_count(counts) == 400);
  CHECK(boundary_cells(unit, counts).size() == 400);

  CHECK_THROWS_AS(partition(unit, {0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(partition(unit, {3}), std::invalid_argument);
  CHECK_THROWS_AS(partition(Box{Interval(0, 0), Interval(0, 1)}, {2, 2}), std::invalid_argument);

  SUBCASE("row-major indexing and exact tiling") {
    const CellGrid g = partition(Box{Interval(-1, 1), Interval(0, 0.3), Interval(2, 5)}, {3, 7, 4});
    CHECK(g.size() == 84);
    CHECK(g.multi_index(1) == std::vector<std::size_t>{0, 0, 1});
    for (std::size_t i = 0; i < g.size(); ++i) REQUIRE(g.flat_index(g.multi_index(i)) == i);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(g.edge(k, 0) == g.base()[k].lo());
      CHECK(g.edge(k, g.counts()[k]) == g.base()[k].hi());
      for (std::size_t i = 0; i < g.counts()[k]; ++i) REQUIRE(g.edge(k, i) < g.edge(k, i + 1));
    }
    // Neighbours share faces exactly.
    const Box a = g.cell(std::vector<std::size_t>{1, 2, 3});
    const Box b = g.cell(std::vector<std::size_t>{1, 3, 3});
    CHECK(a[1].hi() == b[1].lo());
    // Cells lie in the base and their volumes add up.
    double volume = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Box c = g.cell(i);
      REQUIRE(contains(g.base(), c));
      double v = 1;
      for (double w : c.widths()) v *= w;
      volume += v;
    }
    CHECK(volume == doctest::Approx(2 * 0.3 * 3).epsilon(1e-12));
  }

  SUBCASE("face cells cover the boundary") {
    const Box box{Interval(-1, 2), Interval(0, 1)};
    const std::size_t k5[] = {5, 4};
    const auto cells = boundary_cells(box, k5);
    CHECK(cells.size() == boundary_cell_count(k5));
    CHECK(cells.size() == 2 * 4 + 2 * 5);
    // Labels: pinned dimension at 0 or counts[k], faces in boundary_faces() order.
    CHECK(cells.front().index == std::vector<std::size_t>{0, 0});
    CHECK(cells[4].index == std::vector<std::size_t>{5, 0});
    CHECK(cells[8].index == std::vector<std::size_t>{0, 0});
    CHECK(cells.back().index == std::vector<std::size_t>{4, 4});
    const auto faces = boundary_faces(box);
    for (std::size_t f = 0, row = 0; f < faces.size(); ++f) {
      const std::size_t pinned = f / 2;
      const std::size_t per_face = (pinned == 0) ? 4 : 5;
      for (std::size_t c = 0; c < per_face; ++c, ++row) {
        REQUIRE(contains(faces[f], cells[row].cell));
        REQUIRE(cells[row].index[pinned] == (f % 2 ? k5[pinned] : 0));
      }
    }
    const CellGrid full(box, {5, 4});
    for (const auto& c : cells) {
      // every boundary cell is a face of a full-grid cell
      std::vector<std::size_t> idx = c.index;
      for (std::size_t k = 0; k < 2; ++k) idx[k] = std::min(idx[k], full.counts()[k] - 1);  // upper face -> last cell
      REQUIRE(contains(full.cell(idx), c.cell));
    }
    // and every sampled boundary point lies in some face cell
    for (const auto& x : sample_box(box, 500, 4)) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (double pin : {box[k].lo(), box[k].hi()}) {
          std::vector<double> p = x;
          p[k] = pin;
          const bool covered = std::any_of(cells.begin(), cells.end(),
                                           [&](const IndexedCell& c) { return c.cell.contains(p); });
          REQUIRE(covered);
        }
      }
    }
  }
}

TEST_CASE("jacobian_interval") {
  const Network doubled = linear_network(2 * Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd::Ones(2));
  CHECK(jacobian_interval(doubled, Box::cube(2, -3, 3)) ==
        IntervalMatrix(2, 2, {Interval(2, 2), Interval(0, 0), Interval(0, 0), Interval(2, 2)}));
  CHECK(jacobian_interval(single_tanh_network(2), Box::cube(2, 0, 0)) == IntervalMatrix::identity(2));

  const std::size_t wide[] = {2, 4, 3};
  CHECK_THROWS_AS(jacobian_interval(generate_network(1, wide, Activation::tanh), Box::cube(2, 0, 1)),
                  std::invalid_argument);
  CHECK_THROWS_AS(jacobian_interval(identity_network(7), Box::cube(7, 0, 1)), UnsupportedDimension);

  SUBCASE("encloses sampled point Jacobians") {
    const Network net = invertible_net();
    const Box cell = Box::cube(2, 0, 0.1);
    const IntervalMatrix j = jacobian_interval(net, cell);
    for (const auto& x : sample_box(cell, 1000, 9)) REQUIRE(j.contains(point_jacobian(net, to_vec(x))));
  }
}

TEST_CASE("certify_homeomorphism") {
  const CertificationResult id = certify_homeomorphism(identity_network(2), Box::cube(2, 0, 1));
  CHECK(id.det_interval == Interval(1, 1));
  CHECK(id.certified);

  const CertificationResult sing = certify_homeomorphism(singular_network(), Box::cube(2, 0, 1));
  CHECK(sing.det_interval.contains(0.0));
  CHECK(!sing.certified);

  SUBCASE("dense-sampling determinant oracle") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Network net = small_tanh_net(seed);
      const Box cell = Box::cube(2, -0.1, 0.1);
      const CertificationResult r = certify_homeomorphism(net, cell);
      if (!r.certified) continue;
      double min_abs = INFINITY;
      for (const auto& x : sample_box(cell, 10000, seed)) {
        const double det = point_jacobian(net, to_vec(x)).determinant();
        min_abs = std::min(min_abs, std::abs(det));
        REQUIRE(r.det_interval.contains(det));
      }
      CHECK(min_abs > 0);
    }
    CHECK(certify_homeomorphism(small_tanh_net(0), Box::cube(2, -0.1, 0.1)).certified);
  }

  SUBCASE("certified cells stay certified under bisection") {
    const Network net = folding_net();
    const CellGrid grid(Box::cube(2, -1, 1), {8, 8});
    std::size_t checked = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Box cell = grid.cell(i);
      if (!certify_homeomorphism(net, cell).certified) continue;
      const CellGrid children(cell, {2, 2});
      for (std::size_t c = 0; c < 4; ++c) REQUIRE(certify_homeomorphism(net, children.cell(c)).certified);
      ++checked;
    }
    CHECK(checked > 0);
  }
}

TEST_CASE("extract_subset") {
  SUBCASE("invertible linear network keeps only the boundary ring") {
    Eigen::MatrixXd w(2, 2);
    w << 2, 1, -1, 3;
    const SubsetExtraction ex = extract_subset(linear_network(w, Eigen::VectorXd::Zero(2)), Box::cube(2, 0, 1), {7, 5});
    CHECK(ex.total() == 35);
    CHECK(ex.certified.size() == 35);
    CHECK(ex.kept.size() == 35 - 5 * 3);
    CHECK(ex.interior.size() == 15);
  }

  SUBCASE("singular network keeps everything") {
    const SubsetExtraction ex = extract_subset(singular_network(), Box::cube(2, 0, 1), {6, 6});
    CHECK(ex.kept.size() == 36);
    CHECK(ex.interior.empty());
  }

  SUBCASE("non-square network is not certifiable") {
    const std::size_t dims[] = {2, 4, 3};
    const SubsetExtraction ex = extract_subset(generate_network(1, dims, Activation::tanh), Box::cube(2, 0, 1), {4, 4});
    CHECK(!ex.certification_available);
    CHECK(ex.kept.size() == 16);
  }

  CHECK_THROWS_AS(extract_subset(identity_network(2), Box{Interval(0, 0), Interval(0, 1)}, {1, 4}),
                  std::invalid_argument);

  SUBCASE("folding network on [-1,1]^2") {
    const Network net = folding_net();
    const Box input = Box::cube(2, -1, 1);
    const SubsetExtraction fine = extract_subset(net, input, {200, 200});
    CHECK(fine.total() == 40000);
    CHECK(fine.kept.size() + fine.interior.size() == fine.total());
    CHECK(fine.interior.size() > 0);
    CHECK(fine.kept.size() > 4 * 199);  // more than the boundary ring: the fold is kept

    const std::set<std::size_t> kept(fine.kept.begin(), fine.kept.end());
    const std::set<std::size_t> certified(fine.certified.begin(), fine.certified.end());
    for (std::size_t i = 0; i < fine.total(); ++i) {
      if (!certified.count(i)) REQUIRE(kept.count(i));
      if (fine.grid.touches_boundary(fine.grid.multi_index(i))) REQUIRE(kept.count(i));
    }

    // Exhaustive classification at (20,20): a certified coarse cell has
    // all 100 of its (200,200) children certified.
    const SubsetExtraction coarse = extract_subset(net, input, {20, 20});
    for (std::size_t c : coarse.certified) {
      const auto ci = coarse.grid.multi_index(c);
      for (std::size_t a = 0; a < 10; ++a) {
        for (std::size_t b = 0; b < 10; ++b) {
          const std::size_t idx[] = {ci[0] * 10 + a, ci[1] * 10 + b};
          REQUIRE(certified.count(fine.grid.flat_index(idx)));
        }
      }
    }
    // Each uncertified coarse cell really contains a sign change or is loose;
    // the determinant does change sign on the input.
    double dmin = INFINITY, dmax = -INFINITY;
    for (const auto& x : sample_box(input, 2000, 1)) {
      const double d = point_jacobian(net, to_vec(x)).determinant();
      dmin = std::min(dmin, d);
      dmax = std::max(dmax, d);
    }
    CHECK(dmin < 0);
    CHECK(dmax > 0);
  }
}
