#include "weyl/functional_calculus.hpp"

#include <functional>
#include <sstream>

#include "weyl/graph.hpp"
#include "weyl/lambda.hpp"

namespace weyl
{

FunctionJet FunctionJet::polynomial(std::vector<Rational> coefficients)
{
    FunctionJet f(Kind::polynomial);
    while (!coefficients.empty() && sgn(coefficients.back()) == 0)
        coefficients.pop_back();
    f.coeffs_ = std::move(coefficients);
    return f;
}

FunctionJet FunctionJet::exponential(GaussianRational rate)
{
    FunctionJet f(Kind::exponential);
    f.rate_ = std::move(rate);
    return f;
}

std::vector<Rational> FunctionJet::derivative_coefficients(int k) const
{
    if (kind_ != Kind::polynomial)
        throw std::logic_error("derivative coefficients need a polynomial function");
    std::vector<Rational> out;
    for (std::size_t i = static_cast<std::size_t>(k); i < coeffs_.size(); ++i)
        out.push_back(coeffs_[i] * factorial(static_cast<int>(i)) / factorial(static_cast<int>(i) - k));
    return out;
}

GaussianRational FunctionJet::derivative_at(int k, const GaussianRational &y) const
{
    switch (kind_) {
    case Kind::polynomial: {
        GaussianRational sum;
        GaussianRational power(1);
        for (const auto &c : derivative_coefficients(k)) {
            sum += GaussianRational(c) * power;
            power *= y;
        }
        return sum;
    }
    case Kind::exponential:
        return pow(rate_, k);
    default:
        throw std::logic_error("pointwise derivatives need a polynomial or exponential function");
    }
}

Polynomial FunctionJet::derivative_of(int k, const Polynomial &a) const
{
    Polynomial sum(a.variables());
    Polynomial power = Polynomial::constant(a.variables(), 1);
    for (const auto &c : derivative_coefficients(k)) {
        sum += power * GaussianRational(c);
        power *= a;
    }
    return sum;
}

std::string FunctionJet::describe() const
{
    switch (kind_) {
    case Kind::abstract:
        return "abstract";
    case Kind::resolvent:
        return "resolvent";
    case Kind::exponential:
        return "exp:" + to_string(rate_);
    case Kind::polynomial: {
        std::string s = "poly:";
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            s += (i ? "," : "") + to_string(coeffs_[i]);
        return coeffs_.empty() ? s + "0" : s;
    }
    }
    return "";
}

FunctionJet parse_function(const std::string &text)
{
    if (text == "abstract")
        return FunctionJet::abstract_function();
    if (text == "resolvent")
        return FunctionJet::resolvent();
    if (text.rfind("exp:", 0) == 0)
        return FunctionJet::exponential(parse_rational(text.substr(4)));
    if (text == "exp")
        return FunctionJet::exponential(Rational(1));
    if (text.rfind("poly:", 0) == 0) {
        std::vector<Rational> c;
        std::stringstream in(text.substr(5));
        std::string item;
        while (std::getline(in, item, ','))
            c.push_back(parse_rational(item));
        if (c.empty())
            throw std::invalid_argument("poly: needs at least one coefficient");
        return FunctionJet::polynomial(std::move(c));
    }
    throw std::invalid_argument("unknown function '" + text + "' (expected abstract|poly:c0,c1,..|exp:r|resolvent)");
}

JetSeries::JetSeries(Polynomial base, int order) : base_(std::move(base)), order_(order) {}

Polynomial JetSeries::coefficient(int hbar, int deriv) const
{
    auto it = terms_.find({hbar, deriv});
    return it == terms_.end() ? Polynomial(base_.variables()) : it->second;
}

void JetSeries::add(int hbar, int deriv, const Polynomial &q)
{
    if (hbar < 0 || hbar > order_ || deriv < 0)
        throw std::out_of_range("jet term outside the truncation");
    if (q.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace({hbar, deriv}, q);
    if (!inserted) {
        it->second += q;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

int JetSeries::max_derivative() const
{
    int m = -1;
    for (const auto &[k, q] : terms_)
        m = std::max(m, k.second);
    return m;
}

bool JetSeries::is_even_and_real() const
{
    for (const auto &[k, q] : terms_)
        if (k.first % 2 != 0 || !q.is_real())
            return false;
    return true;
}

namespace
{

const GraphInvariants &cached_invariants(const UnlabeledGraph &g)
{
    static std::map<UnlabeledGraph, GraphInvariants> cache;
    auto it = cache.find(g);
    if (it == cache.end())
        it = cache.emplace(g, invariants(g)).first;
    return it->second;
}

void check_symbol(const SymbolSeries &a, const StarConfig &cfg)
{
    check_truncation_order(cfg.truncation_order);
    check_phase_space(a[0], cfg.tensor);
    if (a.order() < cfg.truncation_order)
        throw std::invalid_argument("symbol series is truncated below the requested order");
}

void require_antisymmetric(const StarConfig &cfg, const char *form)
{
    if (!cfg.tensor.is_antisymmetric())
        throw std::invalid_argument(std::string(form) + " form needs an antisymmetric tensor; use the labeled form");
}

void add_to(std::map<int, SymbolSeries> &r, int v, const SymbolSeries &s)
{
    auto it = r.find(v);
    if (it == r.end())
        r.emplace(v, s);
    else
        it->second += s;
}

SymbolSeries unit(const SymbolSeries &a, int order)
{
    return SymbolSeries::constant(one_like(a[0]), order);
}

// f^(V)(A) = sum_r f^(V+r)(A_0) delta^r / r! with delta = A - A_0 = O(hbar).
JetSeries reexpand(const std::map<int, SymbolSeries> &r, const SymbolSeries &a, int order)
{
    JetSeries jet(a[0], order);
    SymbolSeries delta = a.truncated(order);
    delta[0] = zero_like(a[0]);
    std::vector<SymbolSeries> powers{unit(a, order)};
    while (static_cast<int>(powers.size()) <= order && !is_zero(powers.back()))
        powers.push_back(powers.back() * delta);
    for (const auto &[v, rv] : r) {
        for (std::size_t k = 0; k < powers.size(); ++k) {
            if (is_zero(powers[k]))
                break;
            const SymbolSeries t = (rv * powers[k]) * GaussianRational(Rational(1 / factorial(static_cast<int>(k))));
            for (int e = 0; e <= t.order(); ++e)
                jet.add(e, v + static_cast<int>(k), t[e]);
        }
    }
    return jet;
}

// lambda of a reduced labeled graph with one symbol on every vertex is the product over its
// connected components, each relabeled to 0..k-1 in the original vertex order.
template <class Sym>
class ComponentLambda
{
public:
    ComponentLambda(const Sym &a, const QuantizationTensor &j) : a_(a), j_(j) {}

    Sym operator()(const LabeledGraph &g)
    {
        Sym product = one_like(a_);
        for (const auto &c : connected_components(g)) {
            auto key = c.edge_map();
            std::sort(key.begin(), key.end());
            key.emplace_back(-1, c.vertices());
            auto it = memo_.find(key);
            if (it == memo_.end()) {
                const std::vector<Sym> symbols(static_cast<std::size_t>(c.vertices()), a_);
                it = memo_.emplace(std::move(key), lambda<Sym>(c, symbols, j_)).first;
            }
            if (is_zero(it->second))
                return zero_like(a_);
            product = product * it->second;
        }
        return product;
    }

private:
    Sym a_;
    const QuantizationTensor &j_;
    std::map<std::vector<std::pair<int, int>>, Sym> memo_;
};

template <class Sym>
std::map<int, SymbolSeries> labeled_sum(const Sym &a, const StarConfig &cfg, const std::function<SymbolSeries(const Sym &)> &lift)
{
    const int order = cfg.truncation_order;
    ComponentLambda<Sym> lam(a, cfg.tensor);
    std::map<int, SymbolSeries> r;
    for (int e = 1; e <= order; ++e) {
        for (int v = 2; v <= 2 * e; ++v) {
            Sym sum = zero_like(a);
            for_each_edge_multiset(v, e, true, [&](const LabeledGraph &g, std::uint64_t labeled) {
                sum += lam(g) * GaussianRational(static_cast<long>(labeled));
            });
            if (is_zero(sum))
                continue;
            const GaussianRational w = half_i_power(e) / GaussianRational(factorial(e) * factorial(v));
            add_to(r, v, lift(sum).shifted(e) * w);
        }
    }
    return r;
}

std::map<int, SymbolSeries> labeled_coefficients(const SymbolSeries &a, const StarConfig &cfg)
{
    const int order = cfg.truncation_order;
    if (order > kMaxLabeledOrder)
        throw capacity_error("labeled-graph form is limited to order " + std::to_string(kMaxLabeledOrder));
    const SymbolSeries at = a.truncated(order);
    std::map<int, SymbolSeries> r;
    if (at.is_hbar_independent()) {
        r = labeled_sum<Polynomial>(at[0], cfg, [&](const Polynomial &p) { return SymbolSeries::constant(p, order); });
    } else {
        r = labeled_sum<SymbolSeries>(at, cfg, [](const SymbolSeries &s) { return s; });
    }
    add_to(r, 0, unit(a, order));
    return r;
}

std::map<int, SymbolSeries> unlabeled_coefficients(const SymbolSeries &a, const StarConfig &cfg)
{
    require_antisymmetric(cfg, "unlabeled");
    const int order = cfg.truncation_order;
    const SymbolSeries at = a.truncated(order);
    std::map<int, SymbolSeries> r;
    r.emplace(0, unit(a, order));
    for (int e = 2; e <= order; e += 2) {
        for (const auto &g : enumerate_reduced(e)) {
            const auto &inv = cached_invariants(g);
            if (inv.c == 0)
                continue;
            const SymbolSeries l = lambda<SymbolSeries>(g, at, cfg.tensor);
            if (is_zero(l))
                continue;
            const GaussianRational w = half_i_power(e) * GaussianRational(Rational(static_cast<long>(inv.c)) /
                                                                          (Rational(static_cast<long>(inv.S)) * factorial(g.vertices())));
            add_to(r, g.vertices(), l.shifted(e) * w);
        }
    }
    return r;
}

using DSeries = std::map<int, SymbolSeries>;

DSeries multiply(const DSeries &x, const DSeries &y)
{
    DSeries out;
    for (const auto &[vx, sx] : x)
        for (const auto &[vy, sy] : y) {
            SymbolSeries p = sx * sy;
            if (!is_zero(p))
                add_to(out, vx + vy, p);
        }
    return out;
}

std::map<int, SymbolSeries> connected_coefficients(const SymbolSeries &a, const StarConfig &cfg)
{
    require_antisymmetric(cfg, "connected");
    const int order = cfg.truncation_order;
    const SymbolSeries at = a.truncated(order);
    DSeries w;
    EnumerationOptions connected;
    connected.connected_only = true;
    for (int e = 2; e <= order; e += 2) {
        for (const auto &g : enumerate_reduced(e, connected)) {
            const auto &inv = cached_invariants(g);
            if (inv.c == 0)
                continue;
            const SymbolSeries l = lambda<SymbolSeries>(g, at, cfg.tensor);
            if (is_zero(l))
                continue;
            const GaussianRational wt = half_i_power(e) * GaussianRational(Rational(static_cast<long>(inv.c)) /
                                                                           (Rational(static_cast<long>(inv.S)) * factorial(g.vertices())));
            add_to(w, g.vertices(), l.shifted(e) * wt);
        }
    }
    DSeries result{{0, unit(a, order)}};
    DSeries term{{0, unit(a, order)}};
    for (int n = 1;; ++n) {
        term = multiply(term, w);
        if (term.empty())
            break;
        for (auto &[v, s] : term)
            s *= GaussianRational(Rational(1, n));
        bool all_zero = true;
        for (const auto &[v, s] : term)
            if (!is_zero(s)) {
                all_zero = false;
                add_to(result, v, s);
            }
        if (all_zero)
            break;
    }
    return result;
}

} // namespace

std::map<int, SymbolSeries> graph_coefficients(const SymbolSeries &a, const StarConfig &cfg, CalculusForm form)
{
    check_symbol(a, cfg);
    switch (form) {
    case CalculusForm::labeled:
        return labeled_coefficients(a, cfg);
    case CalculusForm::unlabeled:
        return unlabeled_coefficients(a, cfg);
    case CalculusForm::connected:
        return connected_coefficients(a, cfg);
    }
    throw std::logic_error("unknown calculus form");
}

JetSeries symbol_of_function(const SymbolSeries &a, const StarConfig &cfg, CalculusForm form)
{
    return reexpand(graph_coefficients(a, cfg, form), a, cfg.truncation_order);
}

JetSeries symbol_of_function_labeled(const SymbolSeries &a, const StarConfig &cfg)
{
    return symbol_of_function(a, cfg, CalculusForm::labeled);
}

JetSeries symbol_of_function_unlabeled(const SymbolSeries &a, const StarConfig &cfg)
{
    return symbol_of_function(a, cfg, CalculusForm::unlabeled);
}

JetSeries symbol_of_function_connected(const SymbolSeries &a, const StarConfig &cfg)
{
    return symbol_of_function(a, cfg, CalculusForm::connected);
}

SymbolSeries materialize(const JetSeries &jet, const FunctionJet &f)
{
    if (f.kind() != FunctionJet::Kind::polynomial)
        throw std::invalid_argument("materialize needs a polynomial function");
    SymbolSeries out(jet.order(), jet.base());
    std::map<int, Polynomial> derivs;
    for (const auto &[key, q] : jet.terms()) {
        auto it = derivs.find(key.second);
        if (it == derivs.end())
            it = derivs.emplace(key.second, f.derivative_of(key.second, jet.base())).first;
        if (!it->second.is_zero())
            out[key.first] += q * it->second;
    }
    return out;
}

SymbolSeries exponential_prefactor(const JetSeries &jet, const GaussianRational &rate)
{
    SymbolSeries out(jet.order(), jet.base());
    for (const auto &[key, q] : jet.terms())
        out[key.first] += q * pow(rate, key.second);
    return out;
}

HbarSeries<ResolventSymbol> materialize_resolvent(const JetSeries &jet)
{
    HbarSeries<ResolventSymbol> out(jet.order(), ResolventSymbol(jet.base()));
    for (const auto &[key, q] : jet.terms())
        out[key.first] += ResolventSymbol::term(jet.base(), q * GaussianRational(factorial(key.second)), -(key.second + 1));
    return out;
}

std::vector<GaussianRational> evaluate(const SymbolSeries &s, std::span<const GaussianRational> z)
{
    std::vector<GaussianRational> out;
    for (int e = 0; e <= s.order(); ++e)
        out.push_back(s[e].evaluate(z));
    return out;
}

namespace
{

std::vector<SymbolSeries> shifted_star_powers(const Polynomial &a, std::span<const GaussianRational> z0, int m,
                                              const StarConfig &cfg)
{
    const GaussianRational a0 = a.evaluate(z0);
    const int order = cfg.truncation_order;
    const SymbolSeries shifted = SymbolSeries::constant(a - Polynomial::constant(a.variables(), a0), order);
    std::vector<SymbolSeries> powers{SymbolSeries::constant(one_like(a), order)};
    for (int k = 1; k <= m; ++k)
        powers.push_back(star(powers.back(), shifted, cfg));
    return powers;
}

} // namespace

std::vector<GaussianRational> pointwise_symbol(const Polynomial &a, const FunctionJet &f,
                                               std::span<const GaussianRational> z0, const StarConfig &cfg)
{
    check_truncation_order(cfg.truncation_order);
    if (!f.is_concrete() || f.kind() == FunctionJet::Kind::resolvent)
        throw std::invalid_argument("pointwise symbol needs a polynomial or exponential function");
    const int order = cfg.truncation_order;
    // (A - a0)^{*k}(z0) = O(hbar^{k/2}), so k <= 2 * order suffices.
    int kmax = 2 * order;
    if (f.kind() == FunctionJet::Kind::polynomial)
        kmax = std::min(kmax, static_cast<int>(f.coefficients().size()) - 1);
    const GaussianRational a0 = a.evaluate(z0);
    std::vector<GaussianRational> out(static_cast<std::size_t>(order) + 1);
    if (kmax < 0)
        return out;
    const auto powers = shifted_star_powers(a, z0, kmax, cfg);
    for (int k = 0; k <= kmax; ++k) {
        const GaussianRational w = f.derivative_at(k, a0) / GaussianRational(factorial(k));
        if (w.is_zero())
            continue;
        for (int e = 0; e <= order; ++e)
            out[static_cast<std::size_t>(e)] += w * powers[static_cast<std::size_t>(k)][e].evaluate(z0);
    }
    return out;
}

int vanishing_order(const Polynomial &a, std::span<const GaussianRational> z0, int m, const StarConfig &cfg)
{
    check_truncation_order(cfg.truncation_order);
    const auto powers = shifted_star_powers(a, z0, m, cfg);
    const auto &p = powers.back();
    for (int e = 0; e <= p.order(); ++e)
        if (!p[e].evaluate(z0).is_zero())
            return e;
    return p.order() + 1;
}

void MultiJetSeries::add(int hbar, const std::vector<int> &alpha, const Polynomial &q)
{
    if (q.is_zero())
        return;
    auto [it, inserted] = terms_.try_emplace({hbar, alpha}, q);
    if (!inserted) {
        it->second += q;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Polynomial MultiJetSeries::coefficient(int hbar, const std::vector<int> &alpha) const
{
    auto it = terms_.find({hbar, alpha});
    return it == terms_.end() ? Polynomial(bases_.front().variables()) : it->second;
}

MultiJetSeries symbol_of_multifunction(std::span<const SymbolSeries> symbols, const StarConfig &cfg)
{
    if (symbols.empty())
        throw std::invalid_argument("need at least one symbol");
    require_antisymmetric(cfg, "multivariable");
    for (const auto &s : symbols)
        check_symbol(s, cfg);
    const int order = cfg.truncation_order;
    const int n = static_cast<int>(symbols.size());
    std::vector<SymbolSeries> at;
    std::vector<Polynomial> bases;
    for (const auto &s : symbols) {
        at.push_back(s.truncated(order));
        bases.push_back(s[0]);
    }

    // R[alpha]: hbar series multiplying d^alpha F(A).
    std::map<std::vector<int>, SymbolSeries> r;
    r.emplace(std::vector<int>(static_cast<std::size_t>(n), 0), unit(at[0], order));
    for (int e = 2; e <= order; e += 2) {
        for (const auto &g : enumerate_reduced(e)) {
            const auto &inv = cached_invariants(g);
            if (inv.c == 0)
                continue;
            const int v = g.vertices();
            const GaussianRational w = half_i_power(e) * GaussianRational(Rational(static_cast<long>(inv.c)) /
                                                                          (Rational(static_cast<long>(inv.S)) * factorial(v)));
            const LabeledGraph rep = g.representative();
            std::vector<int> pick(static_cast<std::size_t>(v), 0);
            for (;;) {
                std::vector<SymbolSeries> assign;
                std::vector<int> alpha(static_cast<std::size_t>(n), 0);
                for (int i : pick) {
                    assign.push_back(at[static_cast<std::size_t>(i)]);
                    ++alpha[static_cast<std::size_t>(i)];
                }
                SymbolSeries l = lambda<SymbolSeries>(rep, assign, cfg.tensor);
                if (!is_zero(l)) {
                    auto it = r.find(alpha);
                    if (it == r.end())
                        r.emplace(alpha, l.shifted(e) * w);
                    else
                        it->second += l.shifted(e) * w;
                }
                std::size_t k = 0;
                while (k < pick.size() && ++pick[k] == n)
                    pick[k++] = 0;
                if (k == pick.size())
                    break;
            }
        }
    }

    // d^alpha F(A) = sum_beta d^{alpha+beta} F(A_0) delta^beta / beta!.
    std::vector<std::vector<SymbolSeries>> powers(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        SymbolSeries delta = at[static_cast<std::size_t>(i)];
        delta[0] = zero_like(delta[0]);
        auto &p = powers[static_cast<std::size_t>(i)];
        p.push_back(unit(at[0], order));
        while (static_cast<int>(p.size()) <= order && !is_zero(p.back()))
            p.push_back(p.back() * delta);
    }
    MultiJetSeries jet(bases, order);
    for (const auto &[alpha, ra] : r) {
        std::vector<int> beta(static_cast<std::size_t>(n), 0);
        for (;;) {
            SymbolSeries t = ra;
            Rational denom = 1;
            bool zero = false;
            for (int i = 0; i < n && !zero; ++i) {
                const auto &p = powers[static_cast<std::size_t>(i)];
                const int b = beta[static_cast<std::size_t>(i)];
                if (b >= static_cast<int>(p.size()) || is_zero(p[static_cast<std::size_t>(b)])) {
                    zero = true;
                    break;
                }
                if (b > 0)
                    t = t * p[static_cast<std::size_t>(b)];
                denom *= factorial(b);
            }
            if (!zero) {
                std::vector<int> total = alpha;
                for (int i = 0; i < n; ++i)
                    total[static_cast<std::size_t>(i)] += beta[static_cast<std::size_t>(i)];
                t *= GaussianRational(Rational(1 / denom));
                for (int e = 0; e <= t.order(); ++e)
                    jet.add(e, total, t[e]);
            }
            std::size_t k = 0;
            while (k < beta.size() && ++beta[k] > order)
                beta[k++] = 0;
            if (k == beta.size())
                break;
        }
    }
    return jet;
}

SymbolSeries materialize(const MultiJetSeries &jet, const Polynomial &f)
{
    const int n = static_cast<int>(jet.bases().size());
    if (f.variables() != n)
        throw dimension_error("F must have one variable per symbol");
    SymbolSeries out(jet.order(), jet.bases().front());
    for (const auto &[key, q] : jet.terms()) {
        Polynomial d = f;
        for (int i = 0; i < n; ++i)
            for (int r = 0; r < key.second[static_cast<std::size_t>(i)]; ++r)
                d = d.derivative(i);
        if (d.is_zero())
            continue;
        out[key.first] += q * d.compose(jet.bases());
    }
    return out;
}

ResolventCheck resolvent_symbol_check(const Polynomial &a, int order, int dimension)
{
    const StarConfig cfg = moyal_config(dimension, order);
    const JetSeries jet = symbol_of_function_labeled(SymbolSeries::constant(a, order), cfg);
    const HbarSeries<ResolventSymbol> h = materialize_resolvent(jet);
    const auto u = HbarSeries<ResolventSymbol>::constant(
        ResolventSymbol::term(a, Polynomial::constant(a.variables(), 1), 1), order);
    ResolventCheck rec{true, -1, "", star(h, u, cfg), star(u, h, cfg)};
    const ResolventSymbol one = ResolventSymbol::constant(a, 1);
    const ResolventSymbol zero(a);
    for (int e = 0; e <= order && rec.passed; ++e) {
        const ResolventSymbol &expect = e == 0 ? one : zero;
        for (const auto *side : {&rec.left, &rec.right}) {
            if (!((*side)[e] == expect)) {
                rec.passed = false;
                rec.failing_order = e;
                rec.residue = to_string((*side)[e] - expect);
                break;
            }
        }
    }
    return rec;
}

} // namespace weyl
