#include "steiner/generators.hpp"

#include "steiner/rearrange.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace steiner;

TEST_CASE("generators produce valid objects on every family") {
    const Grid g({8, 17, 16}, {0.25, 0.125, 0.13}, 2);
    for (const char* name : {"cone", "tent", "radial_gaussian", "plateau",
                             "random_smooth"}) {
        GeneratorSpec spec;
        spec.name = name;
        spec.seed = 4;
        const GridFunction u = make_function(g, spec);   // ctor validates
        CHECK(u.max_value() >= 0.0);
        const VoxelSet e = make_set(g, spec);
        CHECK(e.popcount() >= 0);
    }
    for (const char* name : {"box", "offcenter_ball", "two_balls"}) {
        GeneratorSpec spec;
        spec.name = name;
        spec.radius = 0.4;
        CHECK(make_set(g, spec).popcount() > 0);
        CHECK(generator_makes_set(name));
    }
    for (const char* name : {"box", "two_balls"}) {
        GeneratorSpec spec;
        spec.name = name;
        CHECK_THROWS_AS(make_function(g, spec), std::invalid_argument);
    }
    {
        // the off-center ball profile is also a function family
        GeneratorSpec spec;
        spec.name = "offcenter_ball";
        spec.center = {0.2, 0.0};
        spec.radius = 0.5;
        CHECK(make_function(g, spec).max_value() > 0.0);
    }
    GeneratorSpec bad;
    bad.name = "warp";
    CHECK_THROWS_AS(make_function(g, bad), std::invalid_argument);
    GeneratorSpec offf;
    offf.name = "offcenter_ball";
    (void)offf;
}

TEST_CASE("random_smooth vanishes on the outermost y-layer") {
    const Grid g({6, 20, 21}, {0.3, 0.1, 0.1}, 2);
    GeneratorSpec spec;
    spec.name = "random_smooth";
    spec.seed = 11;
    const GridFunction u = make_function(g, spec);
    CHECK(u.max_value() > 0.0);
    for (std::int64_t i = 0; i < g.cell_count(); ++i) {
        const auto c = oracle::cell_coords(g, i);
        bool edge = false;
        for (int a = 1; a <= 2; ++a)
            edge = edge || c[static_cast<std::size_t>(a)] == 0 ||
                   c[static_cast<std::size_t>(a)] == g.dim(a) - 1;
        if (edge) CHECK(u.value(i) == 0.0);
    }
}

TEST_CASE("same seed, same bytes; different seed, different field") {
    const Grid g({4, 15}, {0.5, 0.125}, 1);
    GeneratorSpec spec;
    spec.name = "random_smooth";
    spec.seed = 7;
    const GridFunction a = make_function(g, spec);
    const GridFunction b = make_function(g, spec);
    bool same = true;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        same = same && a.values()[i] == b.values()[i];
    CHECK(same);
    spec.seed = 8;
    const GridFunction c = make_function(g, spec);
    bool differ = false;
    for (std::size_t i = 0; i < a.values().size(); ++i)
        differ = differ || a.values()[i] != c.values()[i];
    CHECK(differ);
}

TEST_CASE("cone is a bitwise fixed point of the rearrangement") {
    const Grid g({5, 21, 20}, {0.2, 0.1, 0.105}, 2);
    GeneratorSpec spec;
    spec.name = "cone";
    spec.radius = 0.9;
    const GridFunction u = make_function(g, spec);
    const GridFunction us = steiner_rearrange(u);
    for (std::size_t i = 0; i < u.values().size(); ++i)
        CHECK(u.values()[i] == us.values()[i]);
}

TEST_CASE("box rasterization is exact") {
    const Grid g({10, 16}, {0.1, 0.125}, 1);
    GeneratorSpec spec;
    spec.name = "box";
    spec.radius = 0.5;
    const VoxelSet e = make_set(g, spec);
    // 8 cells of width 1/8 span [-0.5, 0.5]
    CHECK(e.popcount() == 10 * 8);
    for (std::int64_t s = 0; s < g.slice_count(); ++s)
        CHECK(e.section_count(s) == 8);
}

TEST_CASE("x_scale multiplies by the first x coordinate") {
    const Grid g({4, 9}, {0.25, 0.25}, 1);
    GeneratorSpec spec;
    spec.name = "cone";
    spec.radius = 1.0;
    spec.x_scale = true;
    const GridFunction u = make_function(g, spec);
    // centers x = 0.125, 0.375, ...: ratio of slice maxima matches
    const auto maxes = slice_max(u);
    CHECK(maxes[1] / maxes[0] == doctest::Approx(3.0));
    CHECK(maxes[3] / maxes[2] == doctest::Approx(7.0 / 5.0));
}
