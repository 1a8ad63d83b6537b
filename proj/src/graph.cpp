#include "weyl/graph.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

#include "weyl/errors.hpp"

namespace weyl
{

namespace
{

int colex(int u, int v) { return v * (v - 1) / 2 + u; }

std::vector<std::uint8_t> full_matrix(int n, const std::vector<std::pair<int, int>> &edges)
{
    std::vector<std::uint8_t> m(static_cast<std::size_t>(n * n), 0);
    for (auto [u, v] : edges) {
        ++m[static_cast<std::size_t>(u * n + v)];
        ++m[static_cast<std::size_t>(v * n + u)];
    }
    return m;
}

std::uint64_t factorial_u64(int n)
{
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k)
        f *= static_cast<std::uint64_t>(k);
    return f;
}

// Lexicographically minimal colex upper triangle over vertex orders that respect a
// relabeling-invariant partition; counts the orders attaining it (= |Aut|).
class Canonicalizer
{
public:
    Canonicalizer(int n, std::vector<std::uint8_t> matrix) : n_(n), m_(std::move(matrix))
    {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                deg[static_cast<std::size_t>(u)] += at(u, v);
        keys_.resize(static_cast<std::size_t>(n));
        for (int u = 0; u < n; ++u) {
            auto &k = keys_[static_cast<std::size_t>(u)];
            k.push_back(deg[static_cast<std::size_t>(u)]);
            std::vector<int> nb;
            for (int v = 0; v < n; ++v)
                if (at(u, v) != 0)
                    nb.push_back(deg[static_cast<std::size_t>(v)] * 64 + at(u, v));
            std::sort(nb.rbegin(), nb.rend());
            k.insert(k.end(), nb.begin(), nb.end());
        }
        slot_keys_ = keys_;
        std::sort(slot_keys_.rbegin(), slot_keys_.rend());
        order_.assign(static_cast<std::size_t>(n), -1);
        used_.assign(static_cast<std::size_t>(n), false);
        current_.assign(static_cast<std::size_t>(n * (n - 1) / 2), 0);
    }

    void run() { place(0); }

    const std::vector<std::uint8_t> &best() const { return best_; }
    const std::vector<int> &best_order() const { return best_order_; }
    std::uint64_t automorphisms() const { return count_; }

private:
    std::uint8_t at(int u, int v) const { return m_[static_cast<std::size_t>(u * n_ + v)]; }

    // Compares the first `len` colex entries of the current order with the best found so far.
    int compare_prefix(std::size_t len) const
    {
        if (!have_best_)
            return -1;
        for (std::size_t i = 0; i < len; ++i)
            if (current_[i] != best_[i])
                return current_[i] < best_[i] ? -1 : 1;
        return 0;
    }

    void place(int q)
    {
        if (q == n_) {
            const int cmp = compare_prefix(current_.size());
            if (cmp < 0) {
                best_ = current_;
                best_order_ = order_;
                have_best_ = true;
                count_ = 1;
            } else if (cmp == 0) {
                ++count_;
            }
            return;
        }
        for (int v = 0; v < n_; ++v) {
            if (used_[static_cast<std::size_t>(v)] ||
                keys_[static_cast<std::size_t>(v)] != slot_keys_[static_cast<std::size_t>(q)])
                continue;
            for (int i = 0; i < q; ++i)
                current_[static_cast<std::size_t>(colex(i, q))] = at(order_[static_cast<std::size_t>(i)], v);
            if (compare_prefix(static_cast<std::size_t>(q * (q + 1) / 2)) > 0)
                continue;
            used_[static_cast<std::size_t>(v)] = true;
            order_[static_cast<std::size_t>(q)] = v;
            place(q + 1);
            used_[static_cast<std::size_t>(v)] = false;
        }
    }

    int n_;
    std::vector<std::uint8_t> m_;
    std::vector<std::vector<int>> keys_;
    std::vector<std::vector<int>> slot_keys_;
    std::vector<int> order_;
    std::vector<bool> used_;
    std::vector<std::uint8_t> current_;
    std::vector<std::uint8_t> best_;
    std::vector<int> best_order_;
    std::uint64_t count_ = 0;
    bool have_best_ = false;
};

std::vector<std::vector<int>> component_vertices(int n, const std::vector<std::pair<int, int>> &edges)
{
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x)
            x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    };
    for (auto [u, v] : edges)
        parent[static_cast<std::size_t>(find(u))] = find(v);
    std::map<int, std::vector<int>> groups;
    for (int v = 0; v < n; ++v)
        groups[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto &[root, vs] : groups)
        out.push_back(std::move(vs));
    return out;
}

} // namespace

struct GraphBuilder {
    static UnlabeledGraph make(int v, std::vector<std::uint8_t> mult)
    {
        UnlabeledGraph g;
        g.v_ = v;
        g.e_ = std::accumulate(mult.begin(), mult.end(), 0);
        g.mult_ = std::move(mult);
        return g;
    }

    struct Component {
        UnlabeledGraph graph;
        std::uint64_t automorphisms;
    };

    static Component canonical_component(const LabeledGraph &g)
    {
        Canonicalizer c(g.vertices(), full_matrix(g.vertices(), g.edge_map()));
        c.run();
        return {make(g.vertices(), c.best()), c.automorphisms()};
    }

    static UnlabeledGraph assemble(const std::vector<UnlabeledGraph> &parts)
    {
        int n = 0;
        for (const auto &p : parts)
            n += p.vertices();
        std::vector<std::uint8_t> mult(static_cast<std::size_t>(n * (n - 1) / 2), 0);
        int offset = 0;
        for (const auto &p : parts) {
            for (int v = 1; v < p.vertices(); ++v)
                for (int u = 0; u < v; ++u)
                    mult[static_cast<std::size_t>(colex(u + offset, v + offset))] = p.mult_[static_cast<std::size_t>(colex(u, v))];
            offset += p.vertices();
        }
        return make(n, std::move(mult));
    }
};

LabeledGraph::LabeledGraph(int vertices, std::vector<std::pair<int, int>> edges) : v_(vertices), edges_(std::move(edges))
{
    if (vertices < 0)
        throw std::invalid_argument("vertex count must be non-negative");
    for (auto &[u, v] : edges_) {
        if (u < 0 || v < 0 || u >= vertices || v >= vertices)
            throw std::invalid_argument("edge endpoint out of range");
        if (u == v)
            throw std::invalid_argument("self-edges are not allowed");
        if (u > v)
            std::swap(u, v);
    }
}

std::vector<Arrow> LabeledGraph::arrows() const
{
    std::vector<Arrow> a;
    a.reserve(edges_.size());
    for (auto [u, v] : edges_)
        a.push_back({u, v});
    return a;
}

std::vector<int> LabeledGraph::degrees() const
{
    std::vector<int> d(static_cast<std::size_t>(v_), 0);
    for (auto [u, v] : edges_) {
        ++d[static_cast<std::size_t>(u)];
        ++d[static_cast<std::size_t>(v)];
    }
    return d;
}

bool LabeledGraph::is_reduced() const
{
    const auto d = degrees();
    return std::none_of(d.begin(), d.end(), [](int x) { return x == 0; });
}

bool LabeledGraph::is_connected() const { return v_ > 0 && component_vertices(v_, edges_).size() == 1; }

int UnlabeledGraph::multiplicity(int u, int v) const
{
    if (u == v)
        return 0;
    if (u > v)
        std::swap(u, v);
    if (u < 0 || v >= v_)
        throw std::out_of_range("vertex out of range");
    return mult_[static_cast<std::size_t>(colex(u, v))];
}

LabeledGraph UnlabeledGraph::representative() const
{
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < v_; ++u)
        for (int v = u + 1; v < v_; ++v)
            for (int k = 0; k < multiplicity(u, v); ++k)
                edges.emplace_back(u, v);
    return {v_, std::move(edges)};
}

bool UnlabeledGraph::is_reduced() const { return representative().is_reduced(); }
bool UnlabeledGraph::is_connected() const { return representative().is_connected(); }

std::vector<LabeledGraph> connected_components(const LabeledGraph &g)
{
    std::vector<LabeledGraph> out;
    for (const auto &vs : component_vertices(g.vertices(), g.edge_map())) {
        std::map<int, int> local;
        for (int v : vs)
            local.emplace(v, static_cast<int>(local.size()));
        std::vector<std::pair<int, int>> edges;
        for (auto [u, v] : g.edge_map())
            if (local.count(u))
                edges.emplace_back(local[u], local[v]);
        out.emplace_back(static_cast<int>(vs.size()), std::move(edges));
    }
    return out;
}

UnlabeledGraph canonicalize(const LabeledGraph &g)
{
    std::vector<UnlabeledGraph> parts;
    for (const auto &c : connected_components(g))
        parts.push_back(GraphBuilder::canonical_component(c).graph);
    std::sort(parts.begin(), parts.end());
    return GraphBuilder::assemble(parts);
}

std::vector<UnlabeledGraph> connected_components(const UnlabeledGraph &g)
{
    std::vector<UnlabeledGraph> out;
    for (const auto &c : connected_components(g.representative()))
        out.push_back(canonicalize(c));
    std::sort(out.begin(), out.end());
    return out;
}

namespace
{

const std::vector<UnlabeledGraph> &connected_classes(int edges)
{
    static std::vector<std::vector<UnlabeledGraph>> levels;
    if (levels.empty())
        levels.push_back({GraphBuilder::make(1, {})});
    while (static_cast<int>(levels.size()) <= edges) {
        std::set<UnlabeledGraph> next;
        for (const auto &g : levels.back()) {
            const LabeledGraph rep = g.representative();
            const int n = rep.vertices();
            for (int u = 0; u < n; ++u) {
                for (int v = u + 1; v < n; ++v) {
                    auto edges_plus = rep.edge_map();
                    edges_plus.emplace_back(u, v);
                    next.insert(canonicalize(LabeledGraph(n, std::move(edges_plus))));
                }
                auto edges_plus = rep.edge_map();
                edges_plus.emplace_back(u, n);
                next.insert(canonicalize(LabeledGraph(n + 1, std::move(edges_plus))));
            }
        }
        levels.emplace_back(next.begin(), next.end());
    }
    return levels[static_cast<std::size_t>(edges)];
}

void combine(const std::vector<std::vector<UnlabeledGraph>> &by_edges, int remaining, int min_edges,
             std::size_t min_index, std::vector<UnlabeledGraph> &parts, std::set<UnlabeledGraph> &out)
{
    if (remaining == 0) {
        auto sorted = parts;
        std::sort(sorted.begin(), sorted.end());
        out.insert(GraphBuilder::assemble(sorted));
        return;
    }
    for (int e = min_edges; e <= remaining; ++e) {
        const auto &pool = by_edges[static_cast<std::size_t>(e)];
        for (std::size_t i = (e == min_edges ? min_index : 0); i < pool.size(); ++i) {
            parts.push_back(pool[i]);
            combine(by_edges, remaining - e, e, i, parts, out);
            parts.pop_back();
        }
    }
}

} // namespace

std::vector<UnlabeledGraph> enumerate_reduced(int edges, const EnumerationOptions &options)
{
    if (edges < 0)
        throw std::invalid_argument("edge count must be non-negative");
    if (edges > kMaxEnumerationEdges)
        throw capacity_error("graph enumeration is limited to E <= " + std::to_string(kMaxEnumerationEdges));
    const int max_v = options.max_vertices < 0 ? 2 * edges : options.max_vertices;
    std::vector<UnlabeledGraph> out;
    if (edges == 0) {
        if (!options.connected_only)
            out.push_back(UnlabeledGraph{});
        return out;
    }
    std::vector<std::vector<UnlabeledGraph>> by_edges(static_cast<std::size_t>(edges) + 1);
    for (int e = 1; e <= edges; ++e)
        if (options.include_odd_components || e % 2 == 0)
            by_edges[static_cast<std::size_t>(e)] = connected_classes(e);
    if (options.connected_only) {
        out = by_edges[static_cast<std::size_t>(edges)];
    } else {
        std::set<UnlabeledGraph> all;
        std::vector<UnlabeledGraph> parts;
        combine(by_edges, edges, 1, 0, parts, all);
        out.assign(all.begin(), all.end());
    }
    std::erase_if(out, [&](const UnlabeledGraph &g) { return g.vertices() > max_v; });
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t symmetry_order(const UnlabeledGraph &g)
{
    std::map<UnlabeledGraph, int> classes;
    for (const auto &c : connected_components(g))
        ++classes[c];
    std::uint64_t s = 1;
    for (const auto &[comp, count] : classes) {
        const auto info = GraphBuilder::canonical_component(comp.representative());
        std::uint64_t sc = info.automorphisms;
        for (auto m : comp.upper_triangle())
            sc *= factorial_u64(m);
        for (int k = 0; k < count; ++k)
            s *= sc;
        s *= factorial_u64(count);
    }
    return s;
}

std::uint64_t stabilizer_order_brute_force(const LabeledGraph &g)
{
    const int n = g.vertices();
    const int e = g.edges();
    if (static_cast<double>(factorial_u64(n)) * static_cast<double>(factorial_u64(e)) > 1e8)
        throw capacity_error("brute-force stabilizer limited to V!E! <= 1e8");
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::uint64_t count = 0;
    const auto &s = g.edge_map();
    do {
        std::vector<std::pair<int, int>> image(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            int a = sigma[static_cast<std::size_t>(s[i].first)];
            int b = sigma[static_cast<std::size_t>(s[i].second)];
            image[i] = {std::min(a, b), std::max(a, b)};
        }
        std::vector<int> tau(static_cast<std::size_t>(e));
        std::iota(tau.begin(), tau.end(), 0);
        do {
            bool fixed = true;
            for (std::size_t i = 0; i < s.size() && fixed; ++i)
                fixed = image[i] == s[static_cast<std::size_t>(tau[i])];
            count += fixed ? 1 : 0;
        } while (std::next_permutation(tau.begin(), tau.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return count;
}

long long signed_relabeling_sum(int vertices, std::span<const Arrow> arrows)
{
    if (vertices > kMaxBruteForceVertices)
        throw capacity_error("relabeling sum limited to V <= " + std::to_string(kMaxBruteForceVertices));
    std::vector<int> sigma(static_cast<std::size_t>(vertices));
    std::iota(sigma.begin(), sigma.end(), 0);
    long long total = 0;
    do {
        int sign = 1;
        for (const auto &a : arrows)
            if (sigma[static_cast<std::size_t>(a.tail)] > sigma[static_cast<std::size_t>(a.head)])
                sign = -sign;
        total += sign;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

long long c_coefficient(const UnlabeledGraph &g)
{
    const auto arrows = g.representative().arrows();
    return signed_relabeling_sum(g.vertices(), arrows);
}

long long c_via_facts(int vertices, std::span<const Arrow> arrows_in)
{
    std::vector<Arrow> arrows(arrows_in.begin(), arrows_in.end());
    if (arrows.size() % 2 == 1)
        return 0;
    if (vertices <= 1)
        return 1;

    // Two arrows on the same pair cancel to a fixed sign.
    long long sign = 1;
    for (bool removed = true; removed;) {
        removed = false;
        for (std::size_t i = 0; i < arrows.size() && !removed; ++i)
            for (std::size_t j = i + 1; j < arrows.size() && !removed; ++j) {
                const Arrow a = arrows[i];
                const Arrow b = arrows[j];
                const bool same = a.tail == b.tail && a.head == b.head;
                const bool opposite = a.tail == b.head && a.head == b.tail;
                if (same || opposite) {
                    sign *= same ? 1 : -1;
                    arrows.erase(arrows.begin() + static_cast<std::ptrdiff_t>(j));
                    arrows.erase(arrows.begin() + static_cast<std::ptrdiff_t>(i));
                    removed = true;
                }
            }
    }
    if (arrows.empty())
        return sign * static_cast<long long>(factorial_u64(vertices));

    // Disjoint union: shuffle the labels between components.
    std::vector<std::pair<int, int>> pairs;
    for (const auto &a : arrows)
        pairs.emplace_back(a.tail, a.head);
    const auto comps = component_vertices(vertices, pairs);
    if (comps.size() > 1) {
        long long total = sign * static_cast<long long>(factorial_u64(vertices));
        for (const auto &vs : comps) {
            std::map<int, int> local;
            for (int v : vs)
                local.emplace(v, static_cast<int>(local.size()));
            std::vector<Arrow> sub;
            for (const auto &a : arrows)
                if (local.count(a.tail))
                    sub.push_back({local[a.tail], local[a.head]});
            total /= static_cast<long long>(factorial_u64(static_cast<int>(vs.size())));
            const long long c = c_via_facts(static_cast<int>(vs.size()), sub);
            if (c == 0)
                return 0;
            total *= c;
        }
        return total;
    }

    // The vertex carrying the top label: its outgoing arrows are all inverted.
    long long total = 0;
    for (int p = 0; p < vertices; ++p) {
        int out = 0;
        std::vector<Arrow> rest;
        for (const auto &a : arrows) {
            if (a.tail == p)
                ++out;
            else if (a.head != p)
                rest.push_back({a.tail - (a.tail > p), a.head - (a.head > p)});
        }
        total += (out % 2 ? -1 : 1) * c_via_facts(vertices - 1, rest);
    }
    return sign * total;
}

long long c_via_facts(const UnlabeledGraph &g)
{
    const auto arrows = g.representative().arrows();
    return c_via_facts(g.vertices(), arrows);
}

GraphInvariants invariants(const UnlabeledGraph &g)
{
    long long c = 0;
    if (g.vertices() <= kMaxBruteForceVertices)
        c = c_coefficient(g);
    else
        c = c_via_facts(g);
    return {symmetry_order(g), c, g.is_connected(), g.is_reduced()};
}

std::vector<LabeledGraph> orbit(const UnlabeledGraph &g)
{
    const int n = g.vertices();
    const int e = g.edges();
    if (static_cast<double>(factorial_u64(n)) * static_cast<double>(factorial_u64(e)) > 1e7)
        throw capacity_error("orbit enumeration limited to V!E! <= 1e7");
    const auto base = g.representative().edge_map();
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    std::set<std::vector<std::pair<int, int>>> seen;
    do {
        std::vector<std::pair<int, int>> image;
        for (auto [u, v] : base) {
            int a = sigma[static_cast<std::size_t>(u)];
            int b = sigma[static_cast<std::size_t>(v)];
            image.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(image.begin(), image.end());
        do {
            seen.insert(image);
        } while (std::next_permutation(image.begin(), image.end()));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    std::vector<LabeledGraph> out;
    for (const auto &edges : seen)
        out.emplace_back(n, edges);
    return out;
}

void for_each_edge_multiset(int vertices, int edges, bool reduced_only,
                            const std::function<void(const LabeledGraph &, std::uint64_t)> &visit)
{
    if (vertices < 0 || edges < 0)
        throw std::invalid_argument("negative graph size");
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < vertices; ++u)
        for (int v = u + 1; v < vertices; ++v)
            pairs.emplace_back(u, v);
    if (pairs.empty() && edges > 0)
        return;
    std::vector<std::pair<int, int>> chosen;
    auto rec = [&](auto &&self, std::size_t from, int remaining, std::uint64_t count, int run) -> void {
        if (remaining == 0) {
            LabeledGraph g(vertices, chosen);
            if (!reduced_only || g.is_reduced())
                visit(g, count);
            return;
        }
        for (std::size_t i = from; i < pairs.size(); ++i) {
            const int next_run = (!chosen.empty() && chosen.back() == pairs[i]) ? run + 1 : 1;
            chosen.push_back(pairs[i]);
            // count tracks E!/prod(m!) as the multiset grows: multiply by (placed+1)/run.
            const auto placed = static_cast<std::uint64_t>(chosen.size());
            self(self, i, remaining - 1, count * placed / static_cast<std::uint64_t>(next_run), next_run);
            chosen.pop_back();
        }
    };
    rec(rec, 0, edges, 1, 0);
}

void for_each_edge_map(int vertices, int edges, const std::function<void(const LabeledGraph &)> &visit)
{
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < vertices; ++u)
        for (int v = u + 1; v < vertices; ++v)
            pairs.emplace_back(u, v);
    if (pairs.empty() && edges > 0)
        return;
    std::vector<std::size_t> idx(static_cast<std::size_t>(edges), 0);
    for (;;) {
        std::vector<std::pair<int, int>> map;
        for (auto i : idx)
            map.push_back(pairs[i]);
        visit(LabeledGraph(vertices, std::move(map)));
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pairs.size())
            idx[k++] = 0;
        if (k == idx.size())
            return;
    }
}

} // namespace weyl
