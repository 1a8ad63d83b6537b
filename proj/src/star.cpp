#include "weyl/star.hpp"

namespace weyl
{

namespace
{

int common_order(std::span<const SymbolSeries> factors, const StarConfig &cfg)
{
    check_truncation_order(cfg.truncation_order);
    int order = cfg.truncation_order;
    for (const auto &f : factors)
        order = std::min(order, f.order());
    return order;
}

SymbolSeries one(int variables, int order)
{
    return SymbolSeries::constant(Polynomial::constant(variables, 1), order);
}

} // namespace

SymbolSeries star_fold(std::span<const SymbolSeries> factors, const StarConfig &cfg, int variables)
{
    const int order = common_order(factors, cfg);
    if (factors.empty())
        return one(variables, order);
    SymbolSeries acc = factors[0].truncated(order);
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = star(acc, factors[i], cfg);
    return acc;
}

SymbolSeries star_n_fold(std::span<const SymbolSeries> factors, const StarConfig &cfg, int variables)
{
    const int order = common_order(factors, cfg);
    if (factors.empty())
        return one(variables, order);
    const int n = static_cast<int>(factors.size());
    std::vector<SymbolSeries> symbols;
    for (const auto &f : factors)
        symbols.push_back(f.truncated(order));
    SymbolSeries out = zero_like(symbols[0]);
    for (int k = 0; k <= order; ++k) {
        const GaussianRational scale = half_i_power(k) / GaussianRational(factorial(k));
        for_each_edge_multiset(n, k, false, [&](const LabeledGraph &g, std::uint64_t labeled) {
            SymbolSeries term = lambda<SymbolSeries>(g, symbols, cfg.tensor);
            out += term.shifted(k) * (scale * GaussianRational(static_cast<long>(labeled)));
        });
    }
    return out;
}

SymbolSeries star_n_fold_literal(std::span<const SymbolSeries> factors, const StarConfig &cfg, int variables)
{
    const int order = common_order(factors, cfg);
    if (factors.empty())
        return one(variables, order);
    const int n = static_cast<int>(factors.size());
    std::vector<SymbolSeries> symbols;
    for (const auto &f : factors)
        symbols.push_back(f.truncated(order));
    SymbolSeries out = zero_like(symbols[0]);
    for (int k = 0; k <= order; ++k) {
        const GaussianRational scale = half_i_power(k) / GaussianRational(factorial(k));
        for_each_edge_map(n, k, [&](const LabeledGraph &g) {
            out += lambda<SymbolSeries>(g, symbols, cfg.tensor).shifted(k) * scale;
        });
    }
    return out;
}

} // namespace weyl
