#ifndef WEYL_FUNCTIONAL_CALCULUS_HPP
#define WEYL_FUNCTIONAL_CALCULUS_HPP

#include <map>
#include <span>
#include <string>
#include <vector>

#include "weyl/resolvent.hpp"
#include "weyl/star.hpp"

namespace weyl
{

// f through its derivative sequence. `abstract` keeps every f^(k) formal.
class FunctionJet
{
public:
    enum class Kind { abstract, polynomial, exponential, resolvent };

    static FunctionJet abstract_function() { return FunctionJet(Kind::abstract); }
    // f(y) = sum_i coefficients[i] y^i.
    static FunctionJet polynomial(std::vector<Rational> coefficients);
    // f(y) = exp(rate * y).
    static FunctionJet exponential(GaussianRational rate);
    // f(y) = 1 / (a - y) with a formal.
    static FunctionJet resolvent() { return FunctionJet(Kind::resolvent); }

    Kind kind() const { return kind_; }
    bool is_concrete() const { return kind_ != Kind::abstract; }
    const std::vector<Rational> &coefficients() const { return coeffs_; }
    const GaussianRational &rate() const { return rate_; }

    // Coefficient list of f^(k) (polynomial kind).
    std::vector<Rational> derivative_coefficients(int k) const;
    // f^(k)(y) at a number (polynomial kind), or the factor rate^k multiplying exp(rate y).
    GaussianRational derivative_at(int k, const GaussianRational &y) const;
    // f^(k)(A) for a polynomial symbol A (polynomial kind).
    Polynomial derivative_of(int k, const Polynomial &a) const;

    std::string describe() const;

private:
    explicit FunctionJet(Kind k) : kind_(k) {}

    Kind kind_;
    std::vector<Rational> coeffs_;
    GaussianRational rate_;
};

/// "abstract", "poly:c0,c1,...", "exp:rate", "resolvent".
FunctionJet parse_function(const std::string &text);

// The symbol of f(A) with f kept formal: B = sum_{e,v} hbar^e Q_{e,v}(z) f^(v)(A_0(z)), where A_0
// is the hbar^0 part of A.
class JetSeries
{
public:
    using Key = std::pair<int, int>; // (hbar power, derivative order)

    JetSeries(Polynomial base, int order);

    const Polynomial &base() const { return base_; }
    int order() const { return order_; }
    int variables() const { return base_.variables(); }
    const std::map<Key, Polynomial> &terms() const { return terms_; }

    Polynomial coefficient(int hbar, int deriv) const;
    void add(int hbar, int deriv, const Polynomial &q);
    int max_derivative() const;

    // Odd hbar powers vanish and even ones have real coefficients.
    bool is_even_and_real() const;

    friend bool operator==(const JetSeries &a, const JetSeries &b)
    {
        return a.order_ == b.order_ && a.base_ == b.base_ && a.terms_ == b.terms_;
    }

private:
    Polynomial base_;
    int order_;
    std::map<Key, Polynomial> terms_;
};

enum class CalculusForm { labeled, unlabeled, connected };

inline constexpr int kMaxLabeledOrder = 6;

/// Sum over reduced labeled graphs with weight (1/E!) (i hbar/2)^E lambda_Gamma(A) f^(V)(A)/V!.
JetSeries symbol_of_function_labeled(const SymbolSeries &a, const StarConfig &cfg);
/// Sum over reduced unlabeled graphs with weight (i hbar/2)^E (c/S) lambda_Gamma(A) f^(V)(A)/V!.
JetSeries symbol_of_function_unlabeled(const SymbolSeries &a, const StarConfig &cfg);
/// Exponential of the connected-graph sum, expanded in powers of the operator D acting on f.
JetSeries symbol_of_function_connected(const SymbolSeries &a, const StarConfig &cfg);
JetSeries symbol_of_function(const SymbolSeries &a, const StarConfig &cfg, CalculusForm form);

/// Coefficients R[V] (hbar series multiplying f^(V)(A)) before re-expansion around A_0.
std::map<int, SymbolSeries> graph_coefficients(const SymbolSeries &a, const StarConfig &cfg, CalculusForm form);

/// Substitutes a polynomial f.
SymbolSeries materialize(const JetSeries &jet, const FunctionJet &f);
/// For f = exp(rate y): the series P with B = P * exp(rate A_0).
SymbolSeries exponential_prefactor(const JetSeries &jet, const GaussianRational &rate);
/// For f = 1/(a - y): each Q_{e,v} f^(v)(A_0) becomes v! Q_{e,v} / (a - A_0)^{v+1}.
HbarSeries<ResolventSymbol> materialize_resolvent(const JetSeries &jet);

std::vector<GaussianRational> evaluate(const SymbolSeries &s, std::span<const GaussianRational> z);

/// sum_k f^(k)(a0)/k! (A - a0)^{*k} at z0 with a0 = A(z0), per hbar power. For an exponential f the
/// returned series multiplies exp(rate a0). A must be hbar-independent.
std::vector<GaussianRational> pointwise_symbol(const Polynomial &a, const FunctionJet &f,
                                               std::span<const GaussianRational> z0, const StarConfig &cfg);

/// Lowest hbar power with a nonzero value of (A - A(z0))^{*m} at z0; order+1 if none.
int vanishing_order(const Polynomial &a, std::span<const GaussianRational> z0, int m, const StarConfig &cfg);

// Several commuting symbols: terms keyed by (hbar power, multi-index alpha), standing for
// Q_{e,alpha}(z) (d^alpha F)(A_{1,0}, ..., A_{n,0}).
class MultiJetSeries
{
public:
    using Key = std::pair<int, std::vector<int>>;

    MultiJetSeries(std::vector<Polynomial> bases, int order) : bases_(std::move(bases)), order_(order) {}

    const std::vector<Polynomial> &bases() const { return bases_; }
    int order() const { return order_; }
    const std::map<Key, Polynomial> &terms() const { return terms_; }
    void add(int hbar, const std::vector<int> &alpha, const Polynomial &q);
    Polynomial coefficient(int hbar, const std::vector<int> &alpha) const;

private:
    std::vector<Polynomial> bases_;
    int order_;
    std::map<Key, Polynomial> terms_;
};

/// Unlabeled-graph sum for F(A_1, ..., A_n); the operators are assumed to commute.
MultiJetSeries symbol_of_multifunction(std::span<const SymbolSeries> symbols, const StarConfig &cfg);
/// Substitutes a polynomial F in n variables (slot i is y_{i+1}).
SymbolSeries materialize(const MultiJetSeries &jet, const Polynomial &f);

struct ResolventCheck {
    bool passed = true;
    int failing_order = -1;
    std::string residue;
    HbarSeries<ResolventSymbol> left;
    HbarSeries<ResolventSymbol> right;
};

/// Builds h_a(A) from the labeled sum and checks h_a * (a - A) = (a - A) * h_a = 1 exactly.
ResolventCheck resolvent_symbol_check(const Polynomial &a, int order, int dimension);

} // namespace weyl

#endif
