#include "doctest.h"
#include "fixtures.hpp"
#include "polyguard/polygon.hpp"

#include <random>

using namespace polyguard;
using namespace polyguard::fixtures;

TEST_CASE("polygon construction recomputes reflex set") {
    auto L = l_fixture();
    CHECK(L.size() == 6);
    REQUIRE(L.reflex_indices().size() == 1);
    CHECK(L.v(L.reflex_indices()[0]) == pt(2, 2));
    CHECK(L.area2() == rat(24));

    auto U = u_fixture();
    CHECK(U.reflex_indices().size() == 2);

    auto S = unit_square();
    CHECK(S.reflex_indices().empty());

    auto C3 = comb_fixture(3);
    CHECK(C3.size() == 12);
    CHECK(C3.reflex_indices().size() == 4);
}

TEST_CASE("non-simple polygons are rejected") {
    CHECK_THROWS_AS(SimplePolygon::from_points({pt(0, 0), pt(2, 0), pt(1, 1), pt(1, -1)}),
                    std::invalid_argument);
    CHECK_THROWS_AS(SimplePolygon::from_points({pt(0, 0), pt(1, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(SimplePolygon::from_points({pt(0, 0), pt(1, 0), pt(1, 0), pt(0, 1)}),
                    std::invalid_argument);
}

TEST_CASE("point containment is boundary inclusive") {
    auto L = l_fixture();
    CHECK(L.contains(pt(1, 1)));
    CHECK(L.contains(pt(2, 2)));        // reflex vertex
    CHECK(L.contains(pt(3, 2)));        // interior (bar meets column)
    CHECK(L.contains(pt(2, 3)));        // on boundary edge x=2
    CHECK_FALSE(L.contains(pt(1, 3)));  // notch
    CHECK_FALSE(L.contains(pt(-1, 0)));
    CHECK(L.on_boundary(pt(2, 0)));
    CHECK_FALSE(L.on_boundary(pt(3, 2)));
}

TEST_CASE("segment containment") {
    auto L = l_fixture();
    CHECK(L.contains_segment(pt(1, 1), pt(3, 3)));        // through the reflex vertex
    CHECK(L.contains_segment(pt(0, 0), pt(4, 4)));        // grazes (2,2)
    CHECK_FALSE(L.contains_segment(pt(1, 1), pt(3, 4)));  // cuts the notch
    CHECK(L.contains_segment(pt(0, 2), pt(4, 2)));        // partly along the boundary
    CHECK_FALSE(L.contains_segment(pt(1, 3), pt(3, 1)));  // endpoint outside
}

TEST_CASE("chord through two points extends maximally") {
    auto S = square(3);
    auto c = chord_through(S, pt(1, 1), pt(2, 1));
    REQUIRE(c.has_value());
    CHECK(c->a == pt(0, 1));
    CHECK(c->b == pt(3, 1));

    auto L = l_fixture();
    // Extends through the reflex touch point down to (0,0) and up to (4,4).
    auto d = chord_through(L, pt(2, 2), pt(3, 3));
    REQUIRE(d.has_value());
    CHECK(d->a == pt(0, 0));
    CHECK(d->b == pt(4, 4));

    CHECK_FALSE(chord_through(L, pt(1, 3), pt(3, 1)).has_value());
    CHECK_FALSE(chord_through(L, pt(1, 1), pt(1, 1)).has_value());
}

TEST_CASE("maximal segment inside polygon") {
    auto L = l_fixture();
    auto s = max_segment_in(L, pt(2, 2), Vec{rat(0), rat(-1)});
    REQUIRE(s.has_value());
    CHECK(s->a == pt(2, 2));
    CHECK(s->b == pt(2, 0));
    auto s2 = max_segment_in(L, pt(2, 2), Vec{rat(1), rat(0)});
    REQUIRE(s2.has_value());
    CHECK(s2->b == pt(4, 2));
    // Into the notch: leaves immediately.
    auto s3 = max_segment_in(L, pt(2, 2), Vec{rat(-1), rat(1)});
    CHECK_FALSE(s3.has_value());
}

TEST_CASE("triangulation covers the polygon") {
    for (const auto& P : {l_fixture(), u_fixture(), comb_fixture(3), convex_pentagon()}) {
        Triangulation T = Triangulation::build(P);
        Rat total = 0;
        for (const auto& t : T.tris()) {
            Rat a2 = cross(T.p(t.v[1]) - T.p(t.v[0]), T.p(t.v[2]) - T.p(t.v[0]));
            CHECK(sgn(a2) > 0);
            total += a2;
        }
        CHECK(total == P.area2());
        CHECK((int)T.tris().size() == (int)T.points().size() - 2);
    }
}

TEST_CASE("shortest path: straight, bent, degenerate") {
    auto L = l_fixture();
    auto conv = convex_pentagon();

    auto p1 = shortest_path(conv, pt(0, 1), pt(3, 2));
    REQUIRE(p1.size() == 2);

    auto p0 = shortest_path(L, pt(1, 1), pt(1, 1));
    REQUIRE(p0.size() == 1);

    // Forced single bend at the reflex vertex.
    auto p2 = shortest_path(L, pt(1, 2, 1, 1), pt(5, 2, 7, 2));
    REQUIRE(p2.size() == 3);
    CHECK(p2[0] == pt(1, 2, 1, 1));
    CHECK(p2[1] == pt(2, 2));
    CHECK(p2[2] == pt(5, 2, 7, 2));

    CHECK_THROWS_AS(shortest_path(L, pt(1, 1), pt(1, 3)), std::domain_error);
}

TEST_CASE("shortest path interior vertices are reflex vertices") {
    auto U = u_fixture();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(0, 24);
    auto rnd_pt = [&]() { return Point{rat(num(rng), 4), rat(num(rng), 6)}; };
    int checked = 0;
    while (checked < 60) {
        Point a = rnd_pt(), b = rnd_pt();
        if (!U.contains(a) || !U.contains(b)) continue;
        ++checked;
        auto path = shortest_path(U, a, b);
        for (std::size_t i = 1; i + 1 < path.size(); ++i) CHECK(U.is_reflex_point(path[i]));
    }
}

TEST_CASE("comb fixture geometry") {
    for (int k : {2, 3, 4}) {
        auto C = comb_fixture(k);
        CHECK(C.size() == 4 * k);
        CHECK((int)C.reflex_indices().size() == 2 * (k - 1));
    }
}
