#ifndef WEYL_BRACKETS_HPP
#define WEYL_BRACKETS_HPP

#include <map>
#include <vector>

#include "weyl/errors.hpp"
#include "weyl/hbar_series.hpp"
#include "weyl/tensor.hpp"

namespace weyl
{

template <class Sym>
void check_phase_space(const Sym &s, const QuantizationTensor &j)
{
    if (ring_variables(s) < j.coordinates())
        throw dimension_error("symbol has fewer variables than the tensor's phase space");
}

// Memoized iterated partial derivatives of one symbol, keyed by the sorted index multiset.
template <class Sym>
class DerivativeCache
{
public:
    explicit DerivativeCache(const Sym &s) : base_(s) {}

    const Sym &base() const { return base_; }

    // `indices` must be sorted ascending.
    const Sym &get(const std::vector<int> &indices)
    {
        if (indices.empty())
            return base_;
        auto it = cache_.find(indices);
        if (it != cache_.end())
            return it->second;
        std::vector<int> parent(indices.begin(), indices.end() - 1);
        Sym d = partial_derivative(get(parent), indices.back());
        return cache_.emplace(indices, std::move(d)).first->second;
    }

private:
    Sym base_;
    std::map<std::vector<int>, Sym> cache_;
};

namespace detail
{

template <class Sym>
void accumulate_bracket(DerivativeCache<Sym> &left, DerivativeCache<Sym> &right, const QuantizationTensor &j,
                        std::size_t entry, int remaining, std::vector<int> &counts, const Rational &weight,
                        Sym &out)
{
    const auto entries = j.nonzero();
    if (remaining == 0) {
        std::vector<int> mus, nus;
        for (std::size_t t = 0; t < entries.size(); ++t)
            for (int r = 0; r < counts[t]; ++r) {
                mus.push_back(entries[t].row);
                nus.push_back(entries[t].col);
            }
        std::sort(mus.begin(), mus.end());
        std::sort(nus.begin(), nus.end());
        const Sym &a = left.get(mus);
        if (is_zero(a))
            return;
        const Sym &b = right.get(nus);
        if (is_zero(b))
            return;
        out += (a * b) * GaussianRational(weight);
        return;
    }
    if (entry == entries.size())
        return;
    Rational w = weight;
    for (int m = 0; m <= remaining; ++m) {
        counts[entry] = m;
        accumulate_bracket(left, right, j, entry + 1, remaining - m, counts, w, out);
        // Multinomial k!/prod(m!) times prod J^m, built incrementally.
        w *= entries[entry].value;
        w /= m + 1;
    }
    counts[entry] = 0;
}

} // namespace detail

/// {C,D}_k = C_{,mu1..muk} J^{mu1 nu1} ... J^{muk nuk} D_{,nu1..nuk}; {C,D}_0 = C*D.
template <class Sym>
Sym bracket_k(const Sym &c, const Sym &d, int k, const QuantizationTensor &j)
{
    if (k < 0)
        throw std::invalid_argument("bracket order must be non-negative");
    check_phase_space(c, j);
    check_phase_space(d, j);
    if (ring_variables(c) != ring_variables(d))
        throw dimension_error("bracket operands live in different rings");
    if (k == 0)
        return c * d;
    Sym out = zero_like(c);
    if (degree_bound(c) < k || degree_bound(d) < k)
        return out;
    DerivativeCache<Sym> left(c), right(d);
    std::vector<int> counts(j.nonzero().size(), 0);
    detail::accumulate_bracket(left, right, j, 0, k, counts, factorial(k), out);
    return out;
}

template <class Sym>
Sym poisson_bracket(const Sym &c, const Sym &d, const QuantizationTensor &j)
{
    return bracket_k(c, d, 1, j);
}

} // namespace weyl

#endif
