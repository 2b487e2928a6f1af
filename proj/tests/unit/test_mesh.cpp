#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <memory>

#include "vmsdg/mesh.hpp"
#include "vmsdg/space.hpp"

using namespace vmsdg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("uniform 1-D mesh nodes") {
  const Mesh1D m = uniform_mesh_1d(0.0, 5.0, 3);
  REQUIRE(m.nodes().size() == 4);
  CHECK(m.nodes()[0] == 0.0);
  CHECK_THAT(m.nodes()[1], WithinRel(5.0 / 3.0, 1e-15));
  CHECK_THAT(m.nodes()[2], WithinRel(10.0 / 3.0, 1e-15));
  CHECK(m.nodes()[3] == 5.0);

  const Mesh1D single = uniform_mesh_1d(0.0, 1.0, 1);
  CHECK(single.nodes() == std::vector<double>{0.0, 1.0});

  const Mesh1D ten = uniform_mesh_1d(0.0, 1.0, 10);
  double total = 0.0;
  for (std::size_t j = 0; j < ten.n_elements(); ++j) {
    CHECK_THAT(ten.element_size(j), WithinRel(0.1, 1e-13));
    total += ten.element_size(j);
  }
  CHECK_THAT(total, WithinRel(1.0, 1e-14));
}

TEST_CASE("uniform 1-D mesh rejects bad input") {
  CHECK_THROWS_AS(uniform_mesh_1d(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(uniform_mesh_1d(1.0, 1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(uniform_mesh_1d(1.0, 0.0, 2), std::invalid_argument);
  CHECK_THROWS(Mesh1D({0.0, 0.5, 0.5, 1.0}));
}

TEST_CASE("1-D facets") {
  const std::vector<Facet> facets = build_facets(uniform_mesh_1d(0.0, 5.0, 3));
  REQUIRE(facets.size() == 4);
  std::vector<double> interior, boundary;
  for (const Facet& f : facets) {
    (f.interior() ? interior : boundary).push_back(f.midpoint.x);
    if (f.interior()) {
      CHECK(f.normal.x == 1.0);
      CHECK(*f.right_element == f.left_element + 1);
    }
  }
  REQUIRE(interior.size() == 2);
  CHECK_THAT(interior[0], WithinRel(5.0 / 3.0, 1e-15));
  CHECK_THAT(interior[1], WithinRel(10.0 / 3.0, 1e-15));
  CHECK(boundary == std::vector<double>{0.0, 5.0});

  for (const Facet& f : build_facets(uniform_mesh_1d(0.0, 1.0, 10))) CHECK_THAT(f.local_size, WithinRel(0.1, 1e-13));
}

TEST_CASE("h_f is the mean incident size") {
  const std::vector<Facet> facets = build_facets(Mesh1D({0.0, 1.0, 4.0}));
  for (const Facet& f : facets)
    if (f.interior()) CHECK_THAT(f.local_size, WithinRel(2.0, 1e-15));
}

TEST_CASE("triangulated unit square counts") {
  for (Diagonal d : {Diagonal::LowerLeftToUpperRight, Diagonal::UpperLeftToLowerRight}) {
    const TriMesh2D m = triangulate_unit_square(3, d);
    CHECK(m.n_elements() == 18);
    CHECK(m.vertices().size() == 16);
    CHECK(m.facets().size() == 33);
    // m(m+1) horizontal + m(m+1) vertical + m^2 diagonal edges, 4m of them on
    // the boundary.
    std::size_t interior = 0;
    for (const Facet& f : m.facets()) interior += f.interior();
    CHECK(interior == 33 - 12);
    std::map<std::pair<std::size_t, std::size_t>, int> edges;
    for (const auto& t : m.triangles())
      for (int i = 0; i < 3; ++i) ++edges[std::minmax(t[i], t[(i + 1) % 3])];
    CHECK(edges.size() == m.facets().size());
    CHECK(std::count_if(edges.begin(), edges.end(), [](const auto& e) { return e.second == 2; }) ==
          static_cast<long>(interior));
    CHECK(triangulate_unit_square(1, d).n_elements() == 2);
  }
  CHECK_THROWS_AS(triangulate_unit_square(0, Diagonal::LowerLeftToUpperRight), std::invalid_argument);
}

TEST_CASE("triangle orientation, normals and perimeters") {
  const TriMesh2D m = triangulate_unit_square(3, Diagonal::UpperLeftToLowerRight);
  std::vector<double> perimeter(m.n_elements(), 0.0), incident(m.n_elements(), 0.0);
  for (std::size_t t = 0; t < m.n_elements(); ++t) {
    CHECK(m.signed_area(t) > 0.0);
    const auto c = m.corners(t);
    for (int i = 0; i < 3; ++i) perimeter[t] += norm(c[(i + 1) % 3] - c[i]);
  }
  std::vector<int> count(m.n_elements(), 0);
  for (const Facet& f : m.facets()) {
    CHECK_THAT(norm(f.normal), WithinRel(1.0, 1e-15));
    CHECK(f.local_size > 0.0);
    // The normal points away from the left triangle's centroid.
    const auto c = m.corners(f.left_element);
    const Point centroid = (1.0 / 3.0) * (c[0] + c[1] + c[2]);
    CHECK(dot(f.normal, f.midpoint - centroid) > 0.0);
    incident[f.left_element] += f.measure;
    ++count[f.left_element];
    if (f.right_element) {
      incident[*f.right_element] += f.measure;
      ++count[*f.right_element];
    }
  }
  for (std::size_t t = 0; t < m.n_elements(); ++t) {
    CHECK(count[t] == 3);
    CHECK_THAT(incident[t], WithinRel(perimeter[t], 1e-13));
  }
}

TEST_CASE("dg space layout and traces") {
  auto mesh = std::make_shared<const Mesh1D>(uniform_mesh_1d(0.0, 1.0, 4));
  auto space = std::make_shared<const DGSpace>(mesh, 3);
  CHECK(space->dofs_per_element() == 4);
  CHECK(space->total_dofs() == 16);
  for (std::size_t k = 0; k < 4; ++k) CHECK(space->first_dof(k) == 4 * k);

  Eigen::VectorXd c = Eigen::VectorXd::LinSpaced(16, -1.0, 2.0).array().sin();
  const CoarseField v(space, c);
  for (const Facet& f : space->facets()) {
    if (!f.interior()) continue;
    CHECK_THAT(v.trace_left(f, f.midpoint), WithinAbs(v.value(f.left_element, f.midpoint), 1e-13));
    CHECK_THAT(v.trace_right(f, f.midpoint), WithinAbs(v.value(*f.right_element, f.midpoint), 1e-13));
  }

  auto tri = std::make_shared<const TriMesh2D>(triangulate_unit_square(3, Diagonal::LowerLeftToUpperRight));
  const DGSpace space2(tri, 2);
  CHECK(space2.dofs_per_element() == 6);
  CHECK(space2.total_dofs() == 108);
}
