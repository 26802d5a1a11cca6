#include <doctest.h>

#include <cstdint>
#include <stdexcept>

#include "knnlab/neighbor_graph.hpp"
#include "knnlab/rng.hpp"

using namespace knnlab;

namespace {
std::vector<Point> collinear_triple() { return {{0.0, 0.5}, {0.4, 0.5}, {1.0, 0.5}}; }
}  // namespace

TEST_CASE("knn out-lists, hand cases") {
    SUBCASE("collinear triple, k=1") {
        const auto out = knn_out_lists(collinear_triple(), 1);
        CHECK(out[0] == std::vector<std::uint32_t>{1});
        CHECK(out[1] == std::vector<std::uint32_t>{0});
        CHECK(out[2] == std::vector<std::uint32_t>{1});
    }
    SUBCASE("tie broken by lower index at the square corners") {
        const std::vector<Point> corners{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
        const auto out = knn_out_lists(corners, 1);
        CHECK(out[0] == std::vector<std::uint32_t>{1});  // distance 1 to both 1 and 2
        CHECK(out[3] == std::vector<std::uint32_t>{1});  // ties with 2, lower index wins
    }
    SUBCASE("k >= n-1 selects everyone") {
        const auto out = knn_out_lists(collinear_triple(), 2);
        CHECK(out[0].size() == 2);
        CHECK(out[1].size() == 2);
        const auto clamped = knn_out_lists(collinear_triple(), 10);
        CHECK(clamped[0].size() == 2);
    }
    SUBCASE("argument errors") {
        CHECK_THROWS_AS(knn_out_lists(collinear_triple(), 0), std::invalid_argument);
        CHECK_THROWS_AS(knn_out_lists({{0.1, 0.1}}, 1), std::invalid_argument);
    }
}

TEST_CASE("grid index equals brute force on 1000 random sets") {
    SplitMix64 rng(2024);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 65 + rng.next_u64() % 236;  // 65..300, grid path
        const int k = 1 + static_cast<int>(rng.next_u64() % 10);
        std::vector<Point> pts(n);
        for (Point& p : pts) {
            p.x = rng.next_double();
            p.y = rng.next_double();
        }
        REQUIRE(knn_out_lists(pts, k) == knn_out_lists_bruteforce(pts, k));
    }
}

TEST_CASE("build_graph rules on the collinear triple") {
    const auto pts = collinear_triple();
    const NeighborGraph u = build_graph(pts, 1, Rule::union_rule);
    CHECK(is_connected(u));  // edges {0,1}, {1,2}
    CHECK(u.adjacency[1].size() == 2);

    const NeighborGraph m = build_graph(pts, 1, Rule::mutual);
    CHECK_FALSE(is_connected(m));  // only {0,1} reciprocated
    CHECK(components(m) == std::vector<std::size_t>{2, 1});

    const NeighborGraph c = build_graph(pts, 2, Rule::union_rule);
    for (const auto& adj : c.adjacency) CHECK(adj.size() == 2);  // complete graph

    const NeighborGraph d = build_graph(pts, 1, Rule::directed);
    CHECK(d.adjacency.empty());
    CHECK_THROWS_AS(is_connected(d), std::invalid_argument);
    CHECK_THROWS_AS(components(d), std::invalid_argument);
}

TEST_CASE("mutual edges are a subset of union edges") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Point> pts(40);
        for (Point& p : pts) {
            p.x = rng.next_double();
            p.y = rng.next_double();
        }
        const NeighborGraph u = build_graph(pts, 3, Rule::union_rule);
        const NeighborGraph m = build_graph(pts, 3, Rule::mutual);
        for (std::uint32_t v = 0; v < m.n; ++v) {
            for (std::uint32_t w : m.adjacency[v]) {
                CHECK(std::binary_search(u.adjacency[v].begin(), u.adjacency[v].end(), w));
            }
        }
    }
}

TEST_CASE("two far clusters stay disconnected under the union rule") {
    // k+1 nearly co-located points per cluster: every selection stays inside
    const int k = 3;
    std::vector<Point> pts;
    for (int i = 0; i <= k; ++i) pts.push_back({0.1 + 1e-4 * i, 0.1});
    for (int i = 0; i <= k; ++i) pts.push_back({0.9 + 1e-4 * i, 0.9});
    const NeighborGraph g = build_graph(pts, k, Rule::union_rule);
    CHECK_FALSE(is_connected(g));
    const auto sizes = components(g);
    CHECK(sizes == std::vector<std::size_t>{4, 4});
}

TEST_CASE("n = 2 is always connected") {
    const NeighborGraph g = build_graph(std::vector<Point>{{0.2, 0.2}, {0.8, 0.8}}, 1,
                                        Rule::union_rule);
    CHECK(is_connected(g));
    CHECK(components(g) == std::vector<std::size_t>{2});
}

TEST_CASE("connectivity monotone in k under the union rule") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point> pts(30 + rng.next_u64() % 71);
        for (Point& p : pts) {
            p.x = rng.next_double();
            p.y = rng.next_double();
        }
        bool was_connected = false;
        for (int k = 1; k <= 8; ++k) {
            const bool now = is_connected(build_graph(pts, k, Rule::union_rule));
            if (was_connected) CHECK(now);
            was_connected = now;
        }
    }
}

TEST_CASE("disjoint-set and BFS connectivity agree; degrees bounded") {
    SplitMix64 rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Point> pts(10 + rng.next_u64() % 150);
        const int k = 1 + static_cast<int>(rng.next_u64() % 6);
        for (Point& p : pts) {
            p.x = rng.next_double();
            p.y = rng.next_double();
        }
        for (Rule rule : {Rule::union_rule, Rule::mutual}) {
            const NeighborGraph g = build_graph(pts, k, rule);
            CHECK(is_connected(g) == is_connected_bfs(g));
            std::size_t total = 0;
            for (const auto& sz : components(g)) total += sz;
            CHECK(total == g.n);
            const std::size_t out_len = std::min<std::size_t>(k, g.n - 1);
            for (std::uint32_t v = 0; v < g.n; ++v) {
                CHECK(g.out_lists[v].size() == out_len);
                std::size_t selectors = 0;
                for (std::uint32_t w = 0; w < g.n; ++w) {
                    if (w == v) continue;
                    for (std::uint32_t x : g.out_lists[w]) selectors += x == v ? 1 : 0;
                }
                CHECK(g.adjacency[v].size() <= out_len + selectors);
            }
        }
    }
}
