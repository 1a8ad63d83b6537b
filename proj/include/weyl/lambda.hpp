#ifndef WEYL_LAMBDA_HPP
#define WEYL_LAMBDA_HPP

#include <algorithm>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "weyl/brackets.hpp"
#include "weyl/graph.hpp"

namespace weyl
{

namespace detail
{

template <class Sym>
class LambdaEvaluator
{
public:
    LambdaEvaluator(int vertices, std::span<const Arrow> arrows, std::span<const Sym> symbols,
                    const QuantizationTensor &j)
        : v_(vertices), arrows_(arrows.begin(), arrows.end()), j_(j)
    {
        if (static_cast<int>(symbols.size()) != vertices)
            throw dimension_error("vertex assignment length differs from the vertex count");
        for (const auto &a : arrows_)
            if (a.tail < 0 || a.head < 0 || a.tail >= v_ || a.head >= v_ || a.tail == a.head)
                throw std::invalid_argument("arrow endpoints out of range");
        // One derivative cache per distinct symbol.
        for (const auto &s : symbols) {
            check_phase_space(s, j);
            std::size_t k = 0;
            while (k < distinct_.size() && !(distinct_[k]->base() == s))
                ++k;
            if (k == distinct_.size())
                distinct_.push_back(std::make_unique<DerivativeCache<Sym>>(s));
            cache_of_.push_back(k);
        }
        for (std::size_t k = 1; k < symbols.size(); ++k)
            if (ring_variables(symbols[k]) != ring_variables(symbols[0]))
                throw dimension_error("vertex symbols live in different rings");
        last_arrow_.assign(static_cast<std::size_t>(v_), -1);
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            last_arrow_[static_cast<std::size_t>(arrows_[i].tail)] = static_cast<int>(i);
            last_arrow_[static_cast<std::size_t>(arrows_[i].head)] = static_cast<int>(i);
        }
        indices_.resize(static_cast<std::size_t>(v_));
    }

    Sym run(const Sym &prototype)
    {
        Sym out = zero_like(prototype);
        if (v_ == 0) {
            out = one_like(prototype);
            return out;
        }
        std::vector<int> degree(static_cast<std::size_t>(v_), 0);
        for (const auto &a : arrows_) {
            ++degree[static_cast<std::size_t>(a.tail)];
            ++degree[static_cast<std::size_t>(a.head)];
        }
        Sym start = one_like(prototype);
        for (int v = 0; v < v_; ++v) {
            const Sym &s = cache(v).base();
            if (degree[static_cast<std::size_t>(v)] > degree_bound(s))
                return out;
            if (last_arrow_[static_cast<std::size_t>(v)] < 0)
                start = start * s;
        }
        if (is_zero(start))
            return out;
        descend(0, start, Rational(1), out);
        return out;
    }

private:
    DerivativeCache<Sym> &cache(int v) { return *distinct_[cache_of_[static_cast<std::size_t>(v)]]; }

    // Multiplies in the derivative of every vertex whose last incident arrow is `i`.
    bool close_vertices(std::size_t i, Sym &product)
    {
        for (int v : {arrows_[i].tail, arrows_[i].head}) {
            if (last_arrow_[static_cast<std::size_t>(v)] != static_cast<int>(i))
                continue;
            std::vector<int> sorted = indices_[static_cast<std::size_t>(v)];
            std::sort(sorted.begin(), sorted.end());
            const Sym &d = cache(v).get(sorted);
            if (is_zero(d))
                return false;
            product = product * d;
            if (is_zero(product))
                return false;
        }
        return true;
    }

    void descend(std::size_t i, const Sym &product, const Rational &weight, Sym &out)
    {
        if (i == arrows_.size()) {
            out += product * GaussianRational(weight);
            return;
        }
        const auto &a = arrows_[i];
        for (const auto &entry : j_.nonzero()) {
            indices_[static_cast<std::size_t>(a.tail)].push_back(entry.row);
            indices_[static_cast<std::size_t>(a.head)].push_back(entry.col);
            Sym next = product;
            if (close_vertices(i, next))
                descend(i + 1, next, weight * entry.value, out);
            indices_[static_cast<std::size_t>(a.tail)].pop_back();
            indices_[static_cast<std::size_t>(a.head)].pop_back();
        }
    }

    int v_;
    std::vector<Arrow> arrows_;
    const QuantizationTensor &j_;
    std::vector<std::unique_ptr<DerivativeCache<Sym>>> distinct_;
    std::vector<std::size_t> cache_of_;
    std::vector<int> last_arrow_;
    std::vector<std::vector<int>> indices_;
};

} // namespace detail

/// lambda for explicitly oriented arrows: every arrow contributes J^{mu nu} with d_mu at its tail
/// and d_nu at its head; the vertex factors are multiplied together.
template <class Sym>
Sym lambda(int vertices, std::span<const Arrow> arrows, std::span<const Sym> symbols, const QuantizationTensor &j)
{
    if (symbols.empty()) {
        if (vertices != 0)
            throw dimension_error("vertex assignment length differs from the vertex count");
        throw std::invalid_argument("lambda of the empty graph needs a prototype symbol");
    }
    detail::LambdaEvaluator<Sym> ev(vertices, arrows, symbols, j);
    return ev.run(symbols[0]);
}

/// lambda with the natural orientation (low label to high label) of a labeled graph.
template <class Sym>
Sym lambda(const LabeledGraph &g, std::span<const Sym> symbols, const QuantizationTensor &j)
{
    const auto arrows = g.arrows();
    return lambda<Sym>(g.vertices(), arrows, symbols, j);
}

/// lambda of the canonical labeling with the same symbol on every vertex.
template <class Sym>
Sym lambda(const UnlabeledGraph &g, const Sym &a, const QuantizationTensor &j)
{
    if (g.vertices() == 0)
        return one_like(a);
    const std::vector<Sym> symbols(static_cast<std::size_t>(g.vertices()), a);
    return lambda<Sym>(g.representative(), std::span<const Sym>(symbols), j);
}

struct SignCheck {
    bool passed = true;
    int single_flips = 0;
    int double_flips = 0;
    std::string failure;
};

/// Flipping one arrow negates lambda and flipping two leaves it unchanged (antisymmetric tensor).
template <class Sym>
SignCheck reverse_edge_sign_check(const LabeledGraph &g, std::span<const Sym> symbols, const QuantizationTensor &j)
{
    SignCheck rec;
    const auto arrows = g.arrows();
    const Sym base = lambda<Sym>(g.vertices(), arrows, symbols, j);
    auto flipped = [&](std::initializer_list<std::size_t> which) {
        auto a = arrows;
        for (auto i : which)
            std::swap(a[i].tail, a[i].head);
        return lambda<Sym>(g.vertices(), a, symbols, j);
    };
    for (std::size_t i = 0; i < arrows.size(); ++i) {
        ++rec.single_flips;
        if (!(flipped({i}) == base * GaussianRational(-1))) {
            rec.passed = false;
            rec.failure = "flipping arrow " + std::to_string(i) + " did not negate lambda";
            return rec;
        }
        for (std::size_t k = i + 1; k < arrows.size(); ++k) {
            ++rec.double_flips;
            if (!(flipped({i, k}) == base)) {
                rec.passed = false;
                rec.failure = "flipping arrows " + std::to_string(i) + "," + std::to_string(k) + " changed lambda";
                return rec;
            }
        }
    }
    return rec;
}

template <class Sym>
struct AttachExpansion {
    Sym bracket;    // {lambda_Gamma(...), D}_k
    Sym graph_sum;  // sum over the V^k labeled attachments
    // Distinct shapes: the number of new arrows leaving each old vertex, with the count of labeled
    // attachments producing it (k! / prod m!).
    std::vector<std::pair<std::vector<int>, long long>> shapes;
};

/// k arrows from the vertices of g into a new vertex carrying D, against the k-fold bracket of
/// the whole product lambda_g with D.
template <class Sym>
AttachExpansion<Sym> attach_arrows_expand(const LabeledGraph &g, std::span<const Sym> symbols, int k, const Sym &d,
                                          const QuantizationTensor &j)
{
    if (k < 0)
        throw std::invalid_argument("arrow count must be non-negative");
    const int n = g.vertices();
    if (n == 0 && k > 0)
        throw std::invalid_argument("cannot attach arrows to an empty graph");
    AttachExpansion<Sym> out{zero_like(d), zero_like(d), {}};
    const Sym whole = n == 0 ? one_like(d) : lambda<Sym>(g, symbols, j);
    out.bracket = bracket_k(whole, d, k, j);

    std::vector<Sym> extended(symbols.begin(), symbols.end());
    extended.push_back(d);
    const auto base = g.arrows();
    std::vector<int> counts(static_cast<std::size_t>(n), 0);
    // Enumerate source multisets; each stands for k!/prod m! labeled attachments with equal lambda.
    auto rec = [&](auto &&self, int vertex, int remaining, long long labeled) -> void {
        if (vertex == n - 1 || n == 0) {
            if (n > 0)
                counts[static_cast<std::size_t>(vertex)] = remaining;
            long long mult = labeled;
            for (int r = 2; r <= remaining; ++r)
                mult /= r;
            auto arrows = base;
            for (int v = 0; v < n; ++v)
                for (int r = 0; r < counts[static_cast<std::size_t>(v)]; ++r)
                    arrows.push_back({v, n});
            out.graph_sum += lambda<Sym>(n + 1, arrows, extended, j) * GaussianRational(mult);
            out.shapes.emplace_back(counts, mult);
            return;
        }
        long long l = labeled;
        for (int m = 0; m <= remaining; ++m) {
            counts[static_cast<std::size_t>(vertex)] = m;
            self(self, vertex + 1, remaining - m, l);
            l /= (m + 1);
        }
        counts[static_cast<std::size_t>(vertex)] = 0;
    };
    long long kfact = 1;
    for (int r = 2; r <= k; ++r)
        kfact *= r;
    rec(rec, 0, k, kfact);
    return out;
}

} // namespace weyl

#endif
