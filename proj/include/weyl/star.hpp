#ifndef WEYL_STAR_HPP
#define WEYL_STAR_HPP

#include <span>
#include <vector>

#include "weyl/brackets.hpp"
#include "weyl/graph.hpp"
#include "weyl/lambda.hpp"

namespace weyl
{

struct StarConfig {
    QuantizationTensor tensor = QuantizationTensor::moyal(1);
    int truncation_order = 4;
};

inline int effective_order(const StarConfig &cfg, int a, int b)
{
    check_truncation_order(cfg.truncation_order);
    return std::min({cfg.truncation_order, a, b});
}

/// C * D = sum_k (1/k!) (i hbar/2)^k {C,D}_k with the configured tensor, truncated.
template <class Sym>
HbarSeries<Sym> star(const HbarSeries<Sym> &c, const HbarSeries<Sym> &d, const StarConfig &cfg)
{
    const int order = effective_order(cfg, c.order(), d.order());
    HbarSeries<Sym> out(order, c[0]);
    for (int a = 0; a <= order; ++a) {
        if (is_zero(c[a]))
            continue;
        for (int b = 0; a + b <= order; ++b) {
            if (is_zero(d[b]))
                continue;
            for (int k = 0; a + b + k <= order; ++k) {
                if (degree_bound(c[a]) < k || degree_bound(d[b]) < k)
                    break;
                Sym t = bracket_k(c[a], d[b], k, cfg.tensor);
                if (!is_zero(t))
                    out[a + b + k] += t * (half_i_power(k) / GaussianRational(factorial(k)));
            }
        }
    }
    return out;
}

inline StarConfig moyal_config(int dimension, int order) { return {QuantizationTensor::moyal(dimension), order}; }

template <class Sym>
HbarSeries<Sym> moyal(const HbarSeries<Sym> &c, const HbarSeries<Sym> &d, const StarConfig &cfg)
{
    return star(c, d, cfg);
}

inline SymbolSeries star_standard_order(const SymbolSeries &c, const SymbolSeries &d, int order, int dimension)
{
    return star(c, d, StarConfig{QuantizationTensor::standard_order(dimension), order});
}

/// Left fold of the binary product; the empty product is 1 in `variables` variables.
SymbolSeries star_fold(std::span<const SymbolSeries> factors, const StarConfig &cfg, int variables);

/// Iterated product as a sum over labeled graphs on n vertices: the k-edge graphs carry
/// (1/k!) (i hbar/2)^k lambda_Gamma(C_1, ..., C_n), isolated vertices included.
SymbolSeries star_n_fold(std::span<const SymbolSeries> factors, const StarConfig &cfg, int variables);

/// Same sum, visiting every edge map literally instead of grouping by edge multiset.
SymbolSeries star_n_fold_literal(std::span<const SymbolSeries> factors, const StarConfig &cfg, int variables);

} // namespace weyl

#endif
