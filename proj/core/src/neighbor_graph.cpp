#include "knnlab/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace knnlab {

std::string to_string(Rule rule) {
    switch (rule) {
        case Rule::union_rule: return "union";
        case Rule::mutual: return "mutual";
        case Rule::directed: return "directed";
    }
    return "?";
}

Rule rule_from_string(const std::string& s) {
    if (s == "union") return Rule::union_rule;
    if (s == "mutual") return Rule::mutual;
    if (s == "directed") return Rule::directed;
    throw std::invalid_argument("unknown selection rule: " + s);
}

namespace {

struct Cand {
    double d2;
    std::uint32_t idx;
    bool operator<(const Cand& o) const {  // max-heap: farthest on top
        return d2 != o.d2 ? d2 < o.d2 : idx < o.idx;
    }
};

void check_args(std::size_t n, int k) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    if (n < 2) throw std::invalid_argument("need at least 2 points");
}

std::vector<std::uint32_t> heap_to_sorted(std::vector<Cand>& heap) {
    std::sort_heap(heap.begin(), heap.end());
    std::vector<std::uint32_t> out;
    out.reserve(heap.size());
    for (const Cand& c : heap) out.push_back(c.idx);
    return out;
}

// Uniform grid over the unit square; cell edge ~ sqrt(k/n) so a cell holds
// about k points.
class GridIndex {
public:
    GridIndex(const std::vector<Point>& pts, int k) : pts_(pts) {
        const double n = static_cast<double>(pts.size());
        m_ = std::max(1, static_cast<int>(std::floor(std::sqrt(n / std::max(1, k)))));
        cells_.resize(static_cast<std::size_t>(m_) * m_);
        for (std::uint32_t i = 0; i < pts.size(); ++i) {
            cells_[cell_of(pts[i])].push_back(i);
        }
    }

    std::vector<std::uint32_t> query(std::uint32_t q, int k) const {
        const Point& p = pts_[q];
        const int cx = clamp_cell(p.x);
        const int cy = clamp_cell(p.y);
        const double edge = 1.0 / m_;
        std::vector<Cand> heap;
        heap.reserve(static_cast<std::size_t>(k) + 1);

        for (int ring = 0; ring < 2 * m_; ++ring) {
            visit_ring(cx, cy, ring, [&](std::uint32_t j) {
                if (j == q) return;
                const Cand c{dist2(p, pts_[j]), j};
                if (heap.size() < static_cast<std::size_t>(k)) {
                    heap.push_back(c);
                    std::push_heap(heap.begin(), heap.end());
                } else if (c < heap.front()) {
                    std::pop_heap(heap.begin(), heap.end());
                    heap.back() = c;
                    std::push_heap(heap.begin(), heap.end());
                }
            });
            // Any point in an unvisited cell is at least ring*edge away.
            if (heap.size() == static_cast<std::size_t>(k)) {
                const double guard = static_cast<double>(ring) * edge;
                if (heap.front().d2 <= guard * guard) break;
            }
        }
        return heap_to_sorted(heap);
    }

private:
    int clamp_cell(double v) const {
        const int c = static_cast<int>(v * m_);
        return std::clamp(c, 0, m_ - 1);
    }
    std::size_t cell_of(const Point& p) const {
        return static_cast<std::size_t>(clamp_cell(p.y)) * m_ + clamp_cell(p.x);
    }

    template <typename F>
    void visit_ring(int cx, int cy, int ring, F&& f) const {
        const int x0 = cx - ring, x1 = cx + ring;
        const int y0 = cy - ring, y1 = cy + ring;
        for (int y = y0; y <= y1; ++y) {
            if (y < 0 || y >= m_) continue;
            for (int x = x0; x <= x1; ++x) {
                if (x < 0 || x >= m_) continue;
                // Interior cells were visited by smaller rings.
                if (ring > 0 && x != x0 && x != x1 && y != y0 && y != y1) continue;
                for (std::uint32_t j : cells_[static_cast<std::size_t>(y) * m_ + x]) f(j);
            }
        }
    }

    const std::vector<Point>& pts_;
    int m_ = 1;
    std::vector<std::vector<std::uint32_t>> cells_;
};

}  // namespace

std::vector<std::vector<std::uint32_t>> knn_out_lists_bruteforce(const std::vector<Point>& pts,
                                                                 int k) {
    check_args(pts.size(), k);
    const std::uint32_t n = static_cast<std::uint32_t>(pts.size());
    const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), n - 1);
    std::vector<std::vector<std::uint32_t>> out(n);
    std::vector<Cand> all;
    all.reserve(n - 1);
    for (std::uint32_t i = 0; i < n; ++i) {
        all.clear();
        for (std::uint32_t j = 0; j < n; ++j) {
            if (j != i) all.push_back({dist2(pts[i], pts[j]), j});
        }
        std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(kk), all.end());
        out[i].reserve(kk);
        for (std::size_t t = 0; t < kk; ++t) out[i].push_back(all[t].idx);
    }
    return out;
}

std::vector<std::vector<std::uint32_t>> knn_out_lists(const std::vector<Point>& pts, int k) {
    check_args(pts.size(), k);
    if (pts.size() <= 64) return knn_out_lists_bruteforce(pts, k);
    const std::uint32_t n = static_cast<std::uint32_t>(pts.size());
    const int kk = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(k), n - 1));
    GridIndex index(pts, kk);
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::uint32_t i = 0; i < n; ++i) out[i] = index.query(i, kk);
    return out;
}

NeighborGraph build_graph(const std::vector<Point>& pts, int k, Rule rule) {
    NeighborGraph g;
    g.n = pts.size();
    g.k = k;
    g.rule = rule;
    g.out_lists = knn_out_lists(pts, k);
    if (rule == Rule::directed) return g;

    // union: {u,v} if either selects the other; mutual: if both do.
    std::vector<std::vector<std::uint32_t>> sorted = g.out_lists;
    for (auto& lst : sorted) std::sort(lst.begin(), lst.end());
    g.adjacency.resize(g.n);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (std::uint32_t v : g.out_lists[u]) {
            const bool back = std::binary_search(sorted[v].begin(), sorted[v].end(), u);
            const bool edge = rule == Rule::union_rule ? true : back;
            if (!edge) continue;
            if (back && v < u) continue;  // already added from the other side
            g.adjacency[u].push_back(v);
            g.adjacency[v].push_back(u);
        }
    }
    for (auto& lst : g.adjacency) std::sort(lst.begin(), lst.end());
    return g;
}

NeighborGraph build_graph(const PointSet& points, int k, Rule rule) {
    return build_graph(points.points, k, rule);
}

namespace {

void require_undirected(const NeighborGraph& g) {
    if (g.rule == Rule::directed)
        throw std::invalid_argument("connectivity queries need the union or mutual rule");
}

struct DisjointSet {
    std::vector<std::uint32_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

bool is_connected(const NeighborGraph& g) {
    require_undirected(g);
    if (g.n <= 1) return true;
    DisjointSet ds(g.n);
    for (std::uint32_t u = 0; u < g.n; ++u) {
        for (std::uint32_t v : g.adjacency[u]) ds.unite(u, v);
    }
    const std::uint32_t root = ds.find(0);
    for (std::uint32_t u = 1; u < g.n; ++u) {
        if (ds.find(u) != root) return false;
    }
    return true;
}

bool is_connected_bfs(const NeighborGraph& g) {
    require_undirected(g);
    if (g.n <= 1) return true;
    std::vector<char> seen(g.n, 0);
    std::queue<std::uint32_t> q;
    q.push(0);
    seen[0] = 1;
    std::size_t visited = 1;
    while (!q.empty()) {
        const std::uint32_t u = q.front();
        q.pop();
        for (std::uint32_t v : g.adjacency[u]) {
            if (!seen[v]) {
                seen[v] = 1;
                ++visited;
                q.push(v);
            }
        }
    }
    return visited == g.n;
}

std::vector<std::size_t> components(const NeighborGraph& g) {
    require_undirected(g);
    std::vector<std::size_t> sizes;
    std::vector<char> seen(g.n, 0);
    for (std::uint32_t s = 0; s < g.n; ++s) {
        if (seen[s]) continue;
        std::size_t size = 0;
        std::queue<std::uint32_t> q;
        q.push(s);
        seen[s] = 1;
        while (!q.empty()) {
            const std::uint32_t u = q.front();
            q.pop();
            ++size;
            for (std::uint32_t v : g.adjacency[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    q.push(v);
                }
            }
        }
        sizes.push_back(size);
    }
    std::sort(sizes.rbegin(), sizes.rend());
    return sizes;
}

}  // namespace knnlab
