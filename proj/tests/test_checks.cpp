#include <doctest.h>

#include <stdexcept>

#include "netdecay/checks.hpp"
#include "netdecay/corpus.hpp"

using namespace netdecay;

TEST_CASE("lemma checks on nested pairs") {
    SUBCASE("equal sets hold with equality") {
        NestedPair pair{{0.2, 0.4, 0.9}, 3};
        auto sum = check_sum_order({pair});
        CHECK(sum.passed);
        CHECK(sum.instances_checked == 1);
        auto prod = check_product_order({pair});
        CHECK(prod.passed);
    }
    SUBCASE("single-element extension") {
        NestedPair pair{{0.2, 0.4, 0.3}, 2};
        CHECK(check_sum_order({pair}).passed);
        CHECK(check_product_order({pair}).passed);
    }
    SUBCASE("adding the identity element 1.0 keeps the product") {
        NestedPair pair{{0.2, 0.4, 1.0}, 2};
        CHECK(check_product_order({pair}).passed);
    }
    SUBCASE("10^4 randomized pairs, zero violations") {
        auto pairs = random_nested_pairs(123, 10000, 20);
        REQUIRE(pairs.size() == 10000);
        for (const auto& p : pairs) {
            REQUIRE(p.sub_size <= p.values.size());
            REQUIRE(!p.values.empty());
        }
        auto sum = check_sum_order(pairs);
        CHECK(sum.passed);
        CHECK(sum.instances_checked == 10000);
        auto prod = check_product_order(pairs);
        CHECK(prod.passed);
        CHECK(prod.violations.empty());
    }
    SUBCASE("out-of-range values rejected") {
        NestedPair pair{{0.2, 1.4}, 1};
        CHECK_THROWS_AS(check_sum_order({pair}), std::invalid_argument);
        NestedPair zero{{0.0}, 0};
        CHECK_THROWS_AS(check_product_order({zero}), std::invalid_argument);
    }
}

TEST_CASE("thm1: additive marginals are equal everywhere") {
    SUBCASE("degree-2 node has exactly two nontrivial configurations") {
        std::vector<Edge> edges{{0, 1, 0.3}, {0, 2, 0.8}};
        auto net = build_network(edges, InitialProbabilitySpec::uniform(0.0, 1.0), 3);
        auto rep = check_thm1(net, 0);
        CHECK(rep.passed);
        CHECK(rep.claim == "thm1");
        CHECK(rep.instances_checked == 2);
    }
    SUBCASE("full corpus passes") {
        for (const auto& entry : standard_corpus(9)) {
            for (NodeId w : entry.network.alive_nodes()) {
                if (entry.network.alive_degree(w) > 7) continue;
                CHECK(check_thm1(entry.network, w).passed);
            }
        }
    }
    SUBCASE("degree cap refusal") {
        auto star = build_network(star_edges(9, 1), InitialProbabilitySpec::constant_prob(0.5));
        CHECK_THROWS_AS(check_thm1(star, 0), std::invalid_argument);
    }
}

TEST_CASE("thm3: diminishing marginals of the multi-leaver gain") {
    SUBCASE("star center with random parameters") {
        auto net = build_network(star_edges(4, 7), InitialProbabilitySpec::uniform(0.0, 1.0), 7);
        auto rep = check_thm3(net, 0);
        CHECK(rep.passed);
        CHECK(rep.instances_checked > 0);
    }
    SUBCASE("full corpus passes at 1e-12") {
        for (const auto& entry : standard_corpus(10)) {
            for (NodeId w : entry.network.alive_nodes()) {
                if (entry.network.alive_degree(w) > 7) continue;
                auto rep = check_thm3(entry.network, w);
                CHECK(rep.passed);
            }
        }
    }
    SUBCASE("saturated ties keep the weak inequality") {
        for (double delta : {0.9, 0.99, 1.0}) {
            std::vector<Edge> edges{{0, 1, delta}, {0, 2, delta}, {0, 3, 0.5}};
            auto net = build_network(edges, InitialProbabilitySpec::constant_prob(0.6));
            auto rep = check_thm3(net, 0);
            CHECK(rep.passed);
            if (delta == 1.0) CHECK(rep.boundary_equalities > 0);
        }
    }
}

TEST_CASE("thm1 equality vs thm3 strictness separates the two objectives") {
    // a degree-2 node with interior parameters: Eq. 4 marginals are flat,
    // Eq. 5 marginals strictly shrink
    std::vector<Edge> edges{{0, 1, 0.4}, {0, 2, 0.6}, {1, 2, 0.5}};
    auto net = build_network(edges, InitialProbabilitySpec::constant_prob(0.5));
    auto flat = check_thm1(net, 0);
    CHECK(flat.passed);
    auto strict = check_thm3(net, 0);
    CHECK(strict.passed);
    CHECK(strict.boundary_equalities == 0);
}

TEST_CASE("standard corpus composition") {
    auto corpus = standard_corpus(7);
    CHECK(corpus.size() == 30);
    int stars = 0, paths = 0, cliques = 0, random = 0, small = 0;
    for (const auto& entry : corpus) {
        if (entry.name.rfind("star", 0) == 0) ++stars;
        if (entry.name.rfind("path", 0) == 0) ++paths;
        if (entry.name.rfind("clique", 0) == 0) ++cliques;
        if (entry.name.rfind("gnp", 0) == 0) ++random;
        if (entry.network.alive_node_count() <= 8) ++small;
    }
    CHECK(stars == 4);
    CHECK(paths == 4);
    CHECK(cliques == 4);
    CHECK(random == 18);
    CHECK(small >= 15); // enough enumerable graphs for the certificates
}

TEST_CASE("thm2 over simulated traces") {
    SUBCASE("seeded corpus runs pass") {
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            auto net = random_network(10 + seed % 20, 0.25, seed);
            SimulationConfig cfg;
            cfg.seed = seed + 5;
            cfg.max_steps = 60;
            auto rep = check_thm2(simulate(net, cfg));
            CHECK(rep.passed);
        }
    }
    SUBCASE("constant quiet network passes with equality") {
        std::vector<Edge> edges{{0, 1, 0.5}};
        auto net = build_network(edges, InitialProbabilitySpec::constant_prob(0.001));
        SimulationConfig cfg;
        cfg.seed = 424242;
        cfg.max_steps = 3;
        cfg.stop_when_empty = true;
        auto trace = simulate(net, cfg);
        CHECK(check_thm2(trace).passed);
    }
    SUBCASE("corrupted trace is reported with node and step") {
        std::vector<Edge> edges{{0, 1, 0.5}};
        auto net = build_network(edges, InitialProbabilitySpec::constant_prob(0.4));
        // hand-build a decreasing probability record through the commit path
        net.commit_step({}, {{0, 0.1}}); // drop below pi0
        SimulationTrace trace{std::move(net), 0};
        auto rep = check_thm2(trace);
        CHECK_FALSE(rep.passed);
        REQUIRE(rep.violations.size() == 1);
        CHECK(rep.violations[0].find("node 0") != std::string::npos);
        CHECK(rep.violations[0].find("step 1") != std::string::npos);
    }
}
