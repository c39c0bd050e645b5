// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "hypercheck/space_form.hpp"

using namespace hypercheck;

TEST_SUITE("space_form") {

TEST_CASE("flat model dimensions and signatures") {
  CHECK(AmbientSpace(0.0, 2).coord_dim() == 3);
  CHECK(AmbientSpace(1.0, 2).coord_dim() == 4);
  CHECK(AmbientSpace(-1.0, 2).coord_dim() == 4);
  CHECK(AmbientSpace(-1.0, 3).signature(0) == -1.0);
  CHECK(AmbientSpace(-1.0, 3).signature(1) == 1.0);
  CHECK(AmbientSpace(1.0, 3).signature(0) == 1.0);
}

TEST_CASE("minkowski inner product") {
  AmbientSpace h(-1.0, 2);
  Eigen::VectorXd u(4), v(4);
  u << 2.0, 1.0, 0.0, 1.0;
  v << 1.0, 3.0, 0.0, -1.0;
  // -u0 v0 + u . v over spatial slots = -2 + 3 + 0 - 1 = 0.
  CHECK(h.inner(u, v) == doctest::Approx(0.0));
  AmbientSpace s(1.0, 2);
  CHECK(s.inner(u, v) == doctest::Approx(2.0 + 3.0 - 1.0));
}

TEST_CASE("validate_point per model") {
  AmbientSpace sph(1.0, 2);
  Eigen::VectorXd p(4);
  p << 0.5, 0.5, 0.5, 0.5;
  CHECK(sph.validate_point(p));
  p[0] = 0.6;
  CHECK_FALSE(sph.validate_point(p));

  AmbientSpace hyp(-1.0, 2);
  Eigen::VectorXd q(4);
  q << std::sqrt(2.0), 1.0, 0.0, 0.0;  // -2 + 1 = -1, upper sheet
  CHECK(hyp.validate_point(q));
  q[0] = -std::sqrt(2.0);  // lower sheet rejected
  CHECK_FALSE(hyp.validate_point(q));

  AmbientSpace flat(0.0, 2);
  Eigen::VectorXd r(3);
  r << 10.0, -4.0, 3.0;
  CHECK(flat.validate_point(r));
}

TEST_CASE("constructor rejects bad parameters") {
  CHECK_THROWS_AS(AmbientSpace(0.5, 2), ArgumentError);
  CHECK_THROWS_AS(AmbientSpace(0.0, 1), ArgumentError);
}

}  // TEST_SUITE
