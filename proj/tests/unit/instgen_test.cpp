#include <gtest/gtest.h>

#include "darp/instance_io.hpp"
#include "darp/instgen.hpp"

using namespace darp;

TEST(Instgen, DepotOnly) {
  const Instance inst = generate_instance(0, 2, 1);
  EXPECT_EQ(inst.vertex_count(), 1);
  EXPECT_EQ(inst.n_vehicles, 2);
}

TEST(Instgen, DeterministicAndRoundTrips) {
  EXPECT_EQ(generate_instance(10, 2, 42), generate_instance(10, 2, 42));
  EXPECT_FALSE(generate_instance(10, 2, 42) == generate_instance(10, 2, 43));
  const Instance inst = generate_instance(10, 2, 42);
  EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
  EXPECT_EQ(inst.name, "gen-n10-m2-s42");
}

TEST(Instgen, OneNarrowWindowPerRequest) {
  const Instance inst = generate_instance(30, 3, 9);
  int narrow_pickups = 0;
  for (RequestId r = 1; r <= inst.n_requests; ++r) {
    const Vertex& p = inst.vertex(inst.pickup(r));
    const Vertex& d = inst.vertex(inst.dropoff(r));
    EXPECT_NE(p.window_width() < inst.horizon, d.window_width() < inst.horizon) << r;
    if (p.window_width() < inst.horizon) ++narrow_pickups;
    EXPECT_EQ(p.load_change, 1);
    EXPECT_EQ(d.load_change, -1);
  }
  EXPECT_GT(narrow_pickups, 0);
  EXPECT_LT(narrow_pickups, 30);
}

TEST(Instgen, RejectsBadSizes) {
  EXPECT_THROW(generate_instance(-1, 2, 1), ContractError);
  EXPECT_THROW(generate_instance(3, 0, 1), ContractError);
}
