#ifndef WEYL_GRAPH_HPP
#define WEYL_GRAPH_HPP

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "weyl/errors.hpp"

namespace weyl
{

// Directed edge between 0-based vertices; derivatives act at `tail` with the first tensor index
// and at `head` with the second.
struct Arrow {
    int tail;
    int head;
    auto operator<=>(const Arrow &) const = default;
};

// Multigraph with labeled vertices 0..V-1 and labeled edges 0..E-1. Edge i joins an unordered
// pair stored as (u, v) with u < v; its natural orientation runs from u to v.
class LabeledGraph
{
public:
    LabeledGraph() = default;
    LabeledGraph(int vertices, std::vector<std::pair<int, int>> edges);

    int vertices() const { return v_; }
    int edges() const { return static_cast<int>(edges_.size()); }
    const std::vector<std::pair<int, int>> &edge_map() const { return edges_; }
    std::vector<Arrow> arrows() const;
    std::vector<int> degrees() const;

    bool is_reduced() const;
    bool is_connected() const;

    friend bool operator==(const LabeledGraph &, const LabeledGraph &) = default;

private:
    int v_ = 0;
    std::vector<std::pair<int, int>> edges_;
};

// Isomorphism class of multigraphs, stored in canonical form: the strict upper triangle of the
// multiplicity matrix under the canonical vertex order, listed column by column
// ((0,1), (0,2), (1,2), (0,3), ...). The natural orientation of the
// canonical labeling fixes the sign convention shared by c and lambda.
class UnlabeledGraph
{
public:
    UnlabeledGraph() = default;

    int vertices() const { return v_; }
    int edges() const { return e_; }
    int multiplicity(int u, int v) const;
    const std::vector<std::uint8_t> &upper_triangle() const { return mult_; }

    // The canonical labeling, edges listed in lexicographic pair order.
    LabeledGraph representative() const;

    bool is_reduced() const;
    bool is_connected() const;

    auto operator<=>(const UnlabeledGraph &) const = default;

private:
    friend struct GraphBuilder;

    int v_ = 0;
    std::vector<std::uint8_t> mult_;
    int e_ = 0;
};

UnlabeledGraph canonicalize(const LabeledGraph &g);

std::vector<LabeledGraph> connected_components(const LabeledGraph &g);
std::vector<UnlabeledGraph> connected_components(const UnlabeledGraph &g);

struct EnumerationOptions {
    bool connected_only = false;
    // Negative means the natural bound 2E for reduced graphs.
    int max_vertices = -1;
    // Off by default: graphs with an odd-edge component have c = 0 and drop out of every sum.
    bool include_odd_components = false;
};

inline constexpr int kMaxEnumerationEdges = 8;
inline constexpr int kMaxBruteForceVertices = 10;

/// One representative per isomorphism class of reduced graphs with `edges` edges, sorted by
/// (V, canonical multiplicity matrix).
std::vector<UnlabeledGraph> enumerate_reduced(int edges, const EnumerationOptions &options = {});

/// |vertex automorphisms| times the product of edge-multiplicity factorials, per component class.
std::uint64_t symmetry_order(const UnlabeledGraph &g);

/// Order of the stabilizer of g under simultaneous vertex and edge relabeling, by enumeration.
std::uint64_t stabilizer_order_brute_force(const LabeledGraph &g);

/// Signed sum over all V! vertex relabelings; each arrow whose order flips contributes -1.
long long signed_relabeling_sum(int vertices, std::span<const Arrow> arrows);
long long c_coefficient(const UnlabeledGraph &g);

/// The same sign-sum through parity, parallel-pair removal, component products and the
/// vertex recursion, without enumerating permutations.
long long c_via_facts(int vertices, std::span<const Arrow> arrows);
long long c_via_facts(const UnlabeledGraph &g);

struct GraphInvariants {
    std::uint64_t S;
    long long c;
    bool connected;
    bool reduced;
};

GraphInvariants invariants(const UnlabeledGraph &g);

/// Every labeled graph on `vertices` vertices with `edges` edges, grouped by edge multiset: the
/// callback receives one labeled representative (pairs sorted) and the number E!/prod(m!) of
/// edge maps sharing that multiset. `reduced_only` skips graphs with isolated vertices.
void for_each_edge_multiset(int vertices, int edges, bool reduced_only,
                            const std::function<void(const LabeledGraph &, std::uint64_t)> &visit);

/// Literal enumeration of all (V choose 2)^E edge maps.
void for_each_edge_map(int vertices, int edges, const std::function<void(const LabeledGraph &)> &visit);

/// Every distinct labeled graph in the relabeling orbit of g (V!·E! bounded by 10^7).
std::vector<LabeledGraph> orbit(const UnlabeledGraph &g);

} // namespace weyl

#endif
