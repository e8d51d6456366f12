#include <doctest.h>

#include "rfim/identities.hpp"

using namespace rfim;

namespace {

VerifyOptions small(std::size_t n) {
  VerifyOptions o;
  o.instances = n;
  o.max_vertices = 6;
  return o;
}

}  // namespace

TEST_CASE("random regions are connected animals of the requested size") {
  std::mt19937_64 eng(3);
  for (int size = 1; size <= 10; ++size) {
    const Region r = random_region(size, eng);
    CHECK(r.size() == static_cast<std::size_t>(size));
    CHECK(r.contains(Vertex{0, 0}));
    if (size > 1)
      for (int v = 0; v < static_cast<int>(r.size()); ++v) CHECK_FALSE(r.incident_edges(v).empty());
  }
}

TEST_CASE("random parameters stay in range") {
  std::mt19937_64 eng(4);
  for (int i = 0; i < 200; ++i) {
    const CouplingParams p = random_params(eng);
    CHECK(p.beta >= 0.2);
    CHECK(p.beta <= 3.0);
    CHECK((p.J == 0.5 || p.J == 1.0 || p.J == 2.0));
    CHECK(std::abs(p.h) <= 1.0);
    CHECK(p.eps >= 0.0);
    CHECK(p.eps <= 3.0);
  }
  for (int i = 0; i < 200; ++i) {
    const CouplingParams q = sampling_params(eng);
    CHECK(q.beta * q.J <= 3.0);
    CHECK(q.beta >= 0.2);
  }
}

TEST_CASE("each identity check passes on a few instances") {
  CHECK(check_extended_equivalence(small(10)).pass);
  CHECK(check_disagreement_representation(small(4)).pass);
  CHECK(check_swap_pushforward(small(2)).pass);
  CHECK(check_swap_involution(small(200)).pass);
  CHECK(check_partition_ratio(small(5)).pass);
  CHECK(check_surface_tension_integral(small(2)).pass);
  CHECK(check_separating_set_bound(small(7)).pass);
  CHECK(check_exploration_bound(small(1)).pass);
  CHECK(check_exploration_sampling(small(20)).pass);
}

TEST_CASE("corrupted lambda is detected") {
  VerifyOptions o = small(10);
  o.corrupt_lambda = true;
  const auto rep = check_extended_equivalence(o);
  CHECK_FALSE(rep.pass);
  CHECK(rep.max_abs_error > 1e-3);
}

TEST_CASE("zero instances pass vacuously") {
  const auto all = run_verify_suite(small(0));
  for (const auto& r : all) {
    CHECK(r.pass);
    CHECK(r.instances == 0);
  }
}

TEST_CASE("report json carries the pass flag") {
  IdentityReport r;
  r.identity = "x";
  r.tolerance = 1e-3;
  r.record(0.1, 1e-4);
  CHECK(r.pass);
  r.record(0.1, 0.1);
  CHECK_FALSE(r.pass);
  const auto j = to_json(r);
  CHECK(j["pass"] == false);
  CHECK(j["identity"] == "x");
}
