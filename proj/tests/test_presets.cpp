#include <doctest.h>

#include "gw/presets.hpp"
#include "gw/restrict.hpp"

using namespace gw;

TEST_CASE("named presets")
{
    CHECK(generate_preset("Z2") == make_z2());
    CHECK(generate_preset("D2") == make_d2());
    CHECK(generate_preset("I2") == make_i2());
    CHECK(generate_preset("P2") == make_p2());
    CHECK(generate_preset("pair:2:discrete") == make_p2());
    CHECK_THROWS_AS(generate_preset("nope"), Error);
}

TEST_CASE("family specs produce valid open groupoids")
{
    for (const std::string& spec :
         {"pair:1:discrete", "pair:3:discrete", "pair:3:indiscrete", "group:z1", "group:z5",
          "group:z12", "action:z4:2", "action:z6:3", "sum:Z2+D2", "sum:group:z3+P2"}) {
        FinGroupoid g = generate_preset(spec);
        CHECK(validate_groupoid(g).all_ok());
    }
    CHECK(generate_preset("group:z5").n_arr() == 5);
    CHECK(generate_preset("action:z4:2").n_arr() == 8);
    CHECK(generate_preset("action:z4:2").n_obj() == 2);
    CHECK_THROWS_AS(generate_preset("action:z3:2"), Error); // 2 does not divide 3
    CHECK_THROWS_AS(generate_preset("pair:9:discrete"), Error);
}

TEST_CASE("the random generator is deterministic and in bounds")
{
    for (std::uint64_t seed = 40; seed < 52; ++seed) {
        FinGroupoid a = random_groupoid(seed);
        FinGroupoid b = random_groupoid(seed);
        CHECK(a == b);
        CHECK(validate_groupoid(a).all_ok());
        CHECK(a.n_obj() <= 3);
        CHECK(a.n_arr() <= 10);
    }
    CHECK_FALSE(random_groupoid(40) == random_groupoid(41));
}

TEST_CASE("subgroupoid counts with hand-derived values")
{
    // subgroups of Z12 correspond to its divisors, plus the empty pair
    CHECK(enumerate_open_subgroupoids(generate_preset("group:z12")).size() == 7);
    // for a discrete pair groupoid the pairs (U,N) are partitions of
    // subsets: 1 + 3 + 3*2 + 5 on three points
    CHECK(enumerate_open_subgroupoids(generate_preset("pair:3:discrete")).size() == 15);
}

TEST_CASE("disjoint unions keep both sides replete")
{
    FinGroupoid g = disjoint_union(make_z2(), make_p2());
    CHECK(validate_groupoid(g).all_ok());
    // each summand's object set is replete in the union
    Mask left = 0;
    for (int x = 0; x < g.n_obj(); ++x)
        if (g.objects.name(x).rfind("u0_", 0) == 0)
            left |= bit(x);
    CHECK(is_replete(g, left));
    CHECK(is_replete(g, g.objects.full() & ~left));
}
