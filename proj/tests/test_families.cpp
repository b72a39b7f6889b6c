#include "doctest.h"
#include "support.hpp"

#include "tropcross/families.hpp"
#include "tropcross/metric_graph.hpp"

#include <random>

using namespace testing_support;

namespace {

FamilySpec spec(std::vector<std::string> tokens) { return parse_family_spec(tokens); }

std::vector<FamilySpec> catalog() {
    std::vector<FamilySpec> out{
        spec({"theta", "a=1", "b=1", "c=1"}),        spec({"theta", "a=1", "b=2", "c=3"}),
        spec({"theta", "a=2", "b=2", "c=7/2"}),      spec({"theta", "a=1/3", "b=1/2", "c=1/2"}),
        spec({"barbell", "a=1", "b=2", "c=1/2"}),    spec({"barbell", "a=3", "b=3", "c=5"}),
        spec({"windmill"}),                          spec({"windmill", "arms=1,2,3/2"}),
        spec({"caterpillar", "leaves=3"}),           spec({"caterpillar", "leaves=10"}),
        spec({"caterpillar", "leaves=6", "spine=1,2,1/3"}),
    };
    for (int n = 3; n <= 9; ++n) out.push_back(spec({"sun", "n=" + std::to_string(n)}));
    for (int k = 1; k <= 5; ++k) out.push_back(spec({"sun", "blocks=" + std::to_string(k)}));
    for (int g = 2; g <= 7; ++g) out.push_back(spec({"chain_of_loops", "g=" + std::to_string(g)}));
    out.push_back(spec({"chain_of_loops", "g=4", "top=1,2,3,4", "bottom=3,2,3,1", "bridge=1/2"}));
    return out;
}

}  // namespace

TEST_SUITE("families") {

TEST_CASE("spec parsing") {
    auto a = spec({"theta", "a=1", "b=2", "c=3"});
    CHECK(a.family == "theta");
    CHECK(a.params.at("b") == "2");
    auto b = spec({"family=theta", "c=3", "a=1", "b=2"});
    CHECK(a.to_string() == b.to_string());
    CHECK(a.to_string() == "family=theta a=1 b=2 c=3");
    CHECK(parse_family_spec({"family=sun", "n=5"}).has("n"));
    CHECK_THROWS_AS(parse_family_spec({}), Error);
    CHECK_THROWS_AS(make_family(spec({"dodecahedron"})), Error);
}

TEST_CASE("family shapes") {
    auto t = make_family(spec({"theta", "a=1", "b=2", "c=3"}));
    CHECK(t.vertices().size() == 2);
    CHECK(t.edges().size() == 3);
    for (const auto& e : t.edges()) CHECK(e.u != e.v);

    for (int n : {3, 5, 9, 14}) {
        auto s = make_family(spec({"sun", "n=" + std::to_string(n)}));
        CHECK(s.infinite_vertices().size() == static_cast<std::size_t>(n));
        CHECK(s.genus() == 1);
        CHECK(sun_legs(s) == n);
    }

    for (int g = 2; g <= 7; ++g) {
        auto c = make_family(spec({"chain_of_loops", "g=" + std::to_string(g), "bridges=true"}));
        CHECK(c.genus() == g);
        for (auto v : c.vertices()) CHECK(c.degree(v) == 3);
    }

    auto lollipop = make_family(spec({"lollipop"}));
    CHECK(lollipop.genus() == 3);
    auto w = make_family(spec({"windmill"}));
    CHECK(w.genus() == 0);
    auto cat = make_family(spec({"caterpillar", "leaves=10"}));
    CHECK(cat.genus() == 0);
    CHECK(cat.infinite_vertices().size() == 10);
}

TEST_CASE("representatives realize their claims") {
    for (const auto& s : catalog()) {
        CAPTURE(s.to_string());
        auto rep = plane_representative(s);
        CHECK(is_valid(rep.curve));
        CHECK(total_crossings(rep.curve) == rep.claimed_crossings);
        CHECK(is_immersion_of(rep.curve, make_family(rep.realized)));
        CHECK(make_family(rep.realized).genus() == make_family(s).genus());
        auto r = verify_identities(rep.curve);
        CHECK(r.genus_node.holds);
        CHECK(r.all());
        CHECK_FALSE(rep.figure.empty());
    }
}

TEST_CASE("named representatives") {
    auto equal = plane_representative(spec({"theta", "a=1", "b=1", "c=1"}));
    CHECK(equal.claimed_crossings == 1);
    auto uneven = plane_representative(spec({"theta", "a=1", "b=2", "c=3"}));
    CHECK(uneven.claimed_crossings == 0);
    CHECK(is_immersion_of(uneven.curve, theta(q(1), q(2), q(3))));
    auto sun3 = plane_representative(spec({"sun", "blocks=3"}));
    CHECK(sun3.curve.rays().size() == 14);
    CHECK(sun3.claimed_crossings == 3);
    CHECK_THROWS_AS(plane_representative(spec({"lollipop"})), Error);
    CHECK_THROWS_AS(plane_representative(spec({"sun", "n=12"})), Error);
}

TEST_CASE("genus-2 classification") {
    auto one = genus2_crossing_number(theta(q(1), q(1), q(1)));
    CHECK(one.crossing_number == 1);
    CHECK(total_crossings(one.witness.curve) == 1);

    for (auto t : {theta(q(1), q(2), q(3)), theta(q(1), q(1), q(2)), theta(q(5, 2), q(1), q(1))}) {
        auto r = genus2_crossing_number(t);
        CHECK(r.crossing_number == 0);
        CHECK(is_valid(r.witness.curve));
        CHECK(total_crossings(r.witness.curve) == 0);
        CHECK(is_immersion_of(r.witness.curve, t));
    }

    std::mt19937_64 rng(31);
    for (int round = 0; round < 5; ++round) {
        auto bar = make_family(spec({"barbell", "a=" + to_string(random_length(rng)), "b=" + to_string(random_length(rng)),
                                     "c=" + to_string(random_length(rng))}));
        auto r = genus2_crossing_number(bar);
        CHECK(r.crossing_number == 0);
        CHECK(r.witness_spec.family == "barbell");
        CHECK(is_immersion_of(r.witness.curve, bar));
    }

    CHECK_THROWS_AS(genus2_crossing_number(k4()), Error);
}

TEST_CASE("tree classification") {
    auto cat = make_family(spec({"caterpillar", "leaves=10"}));
    auto r = tree_crossing_zero(cat);
    CHECK(r.crossing_zero);
    REQUIRE(r.witness);
    CHECK(total_crossings(r.witness->curve) == 0);
    CHECK(is_immersion_of(r.witness->curve, cat));
    CHECK(as_caterpillar(cat));

    auto w = make_family(spec({"windmill", "arms=1,2,3"}));
    auto rw = tree_crossing_zero(w);
    CHECK(rw.crossing_zero);
    REQUIRE(rw.witness);
    CHECK(is_immersion_of(rw.witness->curve, w));
    CHECK(as_windmill(w));
    CHECK_FALSE(as_caterpillar(w));

    CHECK_THROWS_AS(tree_crossing_zero(make_family(spec({"lollipop"}))), Error);
}

TEST_CASE("equal-halves chain of seven loops embeds") {
    auto s = spec({"chain_of_loops", "g=7"});
    auto rep = plane_representative(s);
    CHECK(rep.claimed_crossings == 0);
    CHECK(total_crossings(rep.curve) == 0);
    CHECK(is_immersion_of(rep.curve, make_family(s)));
}

TEST_CASE("generic chains use distinct primes") {
    auto s = generic_chain_of_loops(4);
    auto c = make_family(s);
    CHECK(c.genus() == 4);
    CHECK(s.params.at("generic") == "true");
}

}
