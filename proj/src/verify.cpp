#include "weyl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "weyl/bohr_sommerfeld.hpp"
#include "weyl/parse.hpp"
#include "weyl/quadratic.hpp"

namespace weyl
{

namespace
{

using Arrows = std::vector<Arrow>;

struct Outcome {
    bool passed = true;
    std::ostringstream detail;

    void fail(const std::string &why)
    {
        if (passed)
            detail << why;
        passed = false;
    }
};

std::vector<Polynomial> copies(const Polynomial &a, int n) { return std::vector<Polynomial>(static_cast<std::size_t>(n), a); }

Polynomial drawn_lambda(const Polynomial &a, const Arrows &arrows)
{
    int v = 0;
    for (const auto &x : arrows)
        v = std::max({v, x.tail + 1, x.head + 1});
    const auto symbols = copies(a, v);
    return lambda<Polynomial>(v, arrows, symbols, QuantizationTensor::moyal(a.variables() / 2));
}

LabeledGraph as_labeled(const Arrows &arrows)
{
    int v = 0;
    std::vector<std::pair<int, int>> edges;
    for (const auto &x : arrows) {
        v = std::max({v, x.tail + 1, x.head + 1});
        edges.emplace_back(x.tail, x.head);
    }
    return LabeledGraph(v, edges);
}

// GMP leaves a two-integer fraction unreduced, and unreduced values compare unequal.
Rational fraction(int p, int q)
{
    Rational r(p, q);
    r.canonicalize();
    return r;
}

GaussianRational random_rational(std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    int p = 0;
    while (p == 0)
        p = num(rng);
    return GaussianRational(fraction(p, den(rng)));
}

std::vector<GaussianRational> random_point(std::mt19937_64 &rng, int coordinates)
{
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<GaussianRational> z;
    for (int i = 0; i < coordinates; ++i) {
        const int p = num(rng);
        z.emplace_back(fraction(p, den(rng)));
    }
    return z;
}

// Random symbols for the power and three-form batteries: N alternates between 1 and 2, and
// every fourth one-dimensional symbol picks up hbar corrections.
std::vector<SymbolSeries> battery(std::mt19937_64 &rng, int count, int order)
{
    std::vector<SymbolSeries> out;
    for (int i = 0; i < count; ++i) {
        const int n = i % 2 == 0 ? 1 : 2;
        SymbolSeries s = SymbolSeries::constant(random_symbol(rng, n, 3), order);
        if (n == 1 && i % 4 == 0) {
            s[1] = random_symbol(rng, n, 2);
            s[2] = random_symbol(rng, n, 1);
        }
        out.push_back(std::move(s));
    }
    return out;
}

// Criterion 1: the reference table of S and c, in the drawn orientations.
struct TableRow {
    Arrows arrows;
    std::uint64_t s;
    long long c;
};

const std::vector<TableRow> &graph_table()
{
    static const std::vector<TableRow> rows{
        {{{0, 1}, {0, 1}}, 4, 2},
        {{{0, 1}, {1, 2}}, 2, -2},
        {{{0, 1}, {0, 1}, {0, 1}, {0, 1}}, 48, 2},
        {{{0, 1}, {0, 1}, {0, 1}, {1, 2}}, 6, -2},
        {{{0, 1}, {0, 1}, {1, 2}, {1, 2}}, 8, 6},
        {{{0, 1}, {0, 1}, {0, 2}, {1, 2}}, 4, 2},
        {{{0, 1}, {1, 3}, {2, 0}, {3, 2}}, 8, 8},
        {{{0, 1}, {1, 2}, {1, 3}, {3, 0}}, 2, 0},
        {{{0, 1}, {0, 1}, {1, 2}, {1, 3}}, 4, 8},
        {{{0, 1}, {0, 1}, {1, 2}, {2, 3}}, 2, -8},
        {{{0, 1}, {1, 2}, {1, 2}, {2, 3}}, 4, 0},
        {{{0, 1}, {1, 2}, {2, 3}, {3, 4}}, 2, 16},
        {{{0, 1}, {1, 2}, {2, 3}, {2, 4}}, 2, -8},
        {{{0, 1}, {1, 2}, {1, 3}, {1, 4}}, 24, -24},
    };
    return rows;
}

void suite_graph_table(const VerifyOptions &opt, Outcome &out)
{
    std::mt19937_64 rng(opt.seed);
    const Polynomial a = random_symbol(rng, 1, 3);
    const auto tensor = QuantizationTensor::moyal(1);
    std::set<UnlabeledGraph> seen;
    int index = 0;
    for (const auto &row : graph_table()) {
        ++index;
        const LabeledGraph lg = as_labeled(row.arrows);
        const UnlabeledGraph g = canonicalize(lg);
        seen.insert(g);
        const int v = lg.vertices();
        if (symmetry_order(g) != row.s || stabilizer_order_brute_force(lg) != row.s)
            out.fail("row " + std::to_string(index) + ": S differs");
        if (signed_relabeling_sum(v, row.arrows) != row.c || c_via_facts(v, row.arrows) != row.c)
            out.fail("row " + std::to_string(index) + ": c differs");
        // c and lambda flip together under reorientation; their product is a class invariant.
        const Polynomial drawn = drawn_lambda(a, row.arrows) * GaussianRational(static_cast<long>(row.c));
        const Polynomial canonical =
            lambda<Polynomial>(g, a, tensor) * GaussianRational(static_cast<long>(c_coefficient(g)));
        if (!(drawn == canonical))
            out.fail("row " + std::to_string(index) + ": c*lambda not invariant");
    }
    std::set<UnlabeledGraph> enumerated;
    for (int e : {2, 4})
        for (const auto &g : enumerate_reduced(e, {.connected_only = true}))
            enumerated.insert(g);
    if (seen != enumerated)
        out.fail("table rows do not cover the connected reduced graphs with 2 and 4 edges");
    out.detail << (out.passed ? "" : "; ") << graph_table().size() << " rows, " << enumerated.size()
               << " enumerated classes";
}

// Criterion 2.
void suite_zag(const VerifyOptions &, Outcome &out)
{
    const std::vector<mpz_class> expected{1, 2, 16, 272, 7936};
    const auto r = zag_numbers(4);
    const auto t = zag_from_tangent(4);
    const auto b = zag_from_bernoulli(4);
    if (r != expected)
        out.fail("recurrence differs");
    if (t != expected)
        out.fail("tangent series differs");
    if (b != expected)
        out.fail("Bernoulli formula differs");
    const auto longer = zag_numbers(kMaxZagIndex);
    if (longer != zag_from_tangent(kMaxZagIndex) || longer != zag_from_bernoulli(kMaxZagIndex))
        out.fail("routes disagree through index 12");
    if (!satisfies_tangent_equation(zag_numbers(5), 9))
        out.fail("y' = 1 + y^2 fails");
    out.detail << (out.passed ? "" : "; ") << "1 2 16 272 7936 by three routes";
}

// Criterion 3.
void suite_power(const VerifyOptions &opt, Outcome &out)
{
    std::mt19937_64 rng(opt.seed + 3);
    const int order = 4;
    int checks = 0;
    for (const auto &a : battery(rng, opt.battery, order)) {
        const int n = a[0].variables() / 2;
        const StarConfig cfg = moyal_config(n, order);
        const JetSeries jet = symbol_of_function_unlabeled(a, cfg);
        for (int k : {2, 3, 4}) {
            std::vector<Rational> coeffs(static_cast<std::size_t>(k) + 1, Rational(0));
            coeffs.back() = 1;
            const SymbolSeries via_graphs = materialize(jet, FunctionJet::polynomial(coeffs));
            const std::vector<SymbolSeries> factors(static_cast<std::size_t>(k), a);
            if (!(via_graphs == star_fold(factors, cfg, a[0].variables())))
                out.fail("y^" + std::to_string(k) + " differs for " + to_string(a[0]));
            ++checks;
        }
    }
    out.detail << (out.passed ? "" : "; ") << checks << " comparisons on " << opt.battery << " symbols";
}

// Criterion 4.
void suite_forms(const VerifyOptions &opt, Outcome &out)
{
    std::mt19937_64 rng(opt.seed + 3);
    const int order = 4;
    for (const auto &a : battery(rng, opt.battery, order)) {
        const StarConfig cfg = moyal_config(a[0].variables() / 2, order);
        const JetSeries l = symbol_of_function_labeled(a, cfg);
        const JetSeries u = symbol_of_function_unlabeled(a, cfg);
        const JetSeries c = symbol_of_function_connected(a, cfg);
        if (!(l == u) || !(u == c))
            out.fail("forms differ for " + to_string(a[0]));
    }
    out.detail << (out.passed ? "" : "; ") << opt.battery << " symbols, labeled = unlabeled = connected";
}

// Criterion 5: the displayed order-4 expansion, term by term.
struct DisplayTerm {
    int hbar;
    int deriv;
    Rational weight; // includes the overall prefactor and 1/v!
    Arrows arrows;
};

std::vector<DisplayTerm> order_four_display()
{
    const Rational h2(-1, 4);
    const Rational h4(1, 16);
    auto t = [](int e, int v, Rational w, Arrows a) { return DisplayTerm{e, v, w / factorial(v), std::move(a)}; };
    return {
        t(2, 2, h2 / 2, {{0, 1}, {0, 1}}),
        t(2, 3, h2, {{0, 1}, {2, 1}}),
        t(4, 2, h4 / 24, {{0, 1}, {0, 1}, {0, 1}, {0, 1}}),
        t(4, 3, h4 / 3, {{0, 1}, {0, 1}, {0, 1}, {2, 1}}),
        t(4, 3, h4 / 2, {{0, 1}, {0, 1}, {0, 2}, {1, 2}}),
        t(4, 3, h4 * 3 / 4, {{0, 1}, {0, 1}, {1, 2}, {1, 2}}),
        t(4, 4, h4 * 3 / 4, {{0, 1}, {0, 1}, {2, 3}, {2, 3}}),
        t(4, 4, h4, {{0, 1}, {1, 3}, {2, 0}, {3, 2}}),
        t(4, 4, h4 * 4, {{0, 1}, {0, 1}, {1, 2}, {3, 2}}),
        t(4, 4, h4 * 2, {{0, 1}, {0, 1}, {1, 2}, {1, 3}}),
        t(4, 5, h4 * 8, {{0, 1}, {1, 2}, {2, 4}, {4, 3}}),
        t(4, 5, h4, {{0, 1}, {2, 1}, {3, 1}, {4, 1}}),
        t(4, 5, h4 * 5, {{0, 1}, {0, 1}, {2, 3}, {4, 3}}),
        t(4, 5, h4 * 4, {{1, 0}, {1, 2}, {2, 4}, {2, 3}}),
        t(4, 6, h4 * 10, {{0, 1}, {2, 1}, {3, 4}, {5, 4}}),
    };
}

void suite_order_four(const VerifyOptions &opt, Outcome &out)
{
    std::mt19937_64 rng(opt.seed + 5);
    for (int i = 0; i < 5; ++i) {
        const Polynomial a = random_symbol(rng, i % 2 == 0 ? 1 : 2, 3);
        JetSeries expected(a, 4);
        expected.add(0, 0, one_like(a));
        for (const auto &term : order_four_display())
            expected.add(term.hbar, term.deriv, drawn_lambda(a, term.arrows) * GaussianRational(term.weight));
        const JetSeries got = symbol_of_function_unlabeled(SymbolSeries::constant(a, 4), moyal_config(a.variables() / 2, 4));
        if (!(got == expected))
            out.fail("display differs for " + to_string(a));
    }
    out.detail << (out.passed ? "" : "; ") << order_four_display().size() << " displayed terms on 5 symbols";
}

// Criterion 6.
void suite_product(const VerifyOptions &opt, Outcome &out)
{
    std::mt19937_64 rng(opt.seed + 6);
    const int order = 4;
    for (int n : {3, 4, 5}) {
        for (int dim : {1, 2}) {
            if (n == 5 && dim == 2)
                continue;
            const StarConfig cfg = moyal_config(dim, order);
            std::vector<SymbolSeries> factors;
            for (int i = 0; i < n; ++i)
                factors.push_back(SymbolSeries::constant(random_symbol(rng, dim, n == 5 ? 2 : 3), order));
            if (!(star_n_fold(factors, cfg, 2 * dim) == star_fold(factors, cfg, 2 * dim)))
                out.fail("graph product differs from the folded product, n = " + std::to_string(n));
        }
    }
    // The displayed hbar^2 part of A*A*A: (3/2) (A=>A) A + ((4-2)/2) (A->A<-A).
    const Polynomial a = random_symbol(rng, 1, 3);
    const std::vector<SymbolSeries> three(3, SymbolSeries::constant(a, 2));
    const SymbolSeries folded = star_fold(three, moyal_config(1, 2), 2);
    const Polynomial double_edge = drawn_lambda(a, {{0, 1}, {0, 1}});
    const Polynomial cherry = drawn_lambda(a, {{0, 1}, {2, 1}});
    int plus = 0;
    int minus = 0;
    int doubles = 0;
    for_each_edge_map(3, 2, [&](const LabeledGraph &g) {
        const auto syms = copies(a, 3);
        const Polynomial l = lambda<Polynomial>(g, syms, QuantizationTensor::moyal(1));
        if (g.edge_map()[0] == g.edge_map()[1])
            ++doubles;
        else if (l == cherry)
            ++plus;
        else if (l == -cherry)
            ++minus;
    });
    const Polynomial display =
        (double_edge * a * GaussianRational(Rational(3, 2)) + cherry * GaussianRational(Rational(4 - 2, 2))) * half_i_power(2);
    if (doubles != 3 || plus != 4 || minus != 2)
        out.fail("edge-map census differs from 3, 4, 2");
    if (!(folded[2] == display))
        out.fail("hbar^2 part of A*A*A differs from the display");
    out.detail << (out.passed ? "" : "; ") << "n = 3, 4, 5; census " << doubles << "/" << plus << "/" << minus;
}

// Criterion 7.
void suite_resolvent(const VerifyOptions &, Outcome &out)
{
    for (const char *text : {"x^2+p^2", "x^3+p^2"}) {
        const Polynomial a = parse_symbol(text, 1);
        const auto r = resolvent_symbol_check(a, 4, 1);
        if (!r.passed)
            out.fail(std::string(text) + ": residue at hbar^" + std::to_string(r.failing_order));
    }
    out.detail << (out.passed ? "" : "; ") << "both sides equal 1 through hbar^4";
}

// Criterion 8.
void suite_quadratic(const VerifyOptions &, Outcome &out)
{
    for (const char *q : {"1,0;0,1", "2,1;1,3"}) {
        const QuadraticForm form = QuadraticForm::parse(q);
        const JetSeries graphs =
            symbol_of_function_unlabeled(SymbolSeries::constant(form.symbol(), 4), moyal_config(1, 4));
        if (!(quadratic_closed_symbol(form, 4) == graphs))
            out.fail(std::string("closed form differs, Q = ") + q);
        if (!(quadratic_exponent_symbol(form, 4) == graphs))
            out.fail(std::string("path-coefficient exponent differs, Q = ") + q);
        if (!(propagator_closed_form(form, 4) == propagator_from_jet(graphs, 4)))
            out.fail(std::string("time evolution differs through t^4, Q = ") + q);
    }
    out.detail << (out.passed ? "" : "; ") << "closed form, exponent form and propagator through t^4";
}

// Criterion 9.
void suite_bs_symbolic(const VerifyOptions &, Outcome &out)
{
    const int n = jet_variables();
    const Polynomial mu = Polynomial::variable(n, kJetMassSlot);
    auto v = [&](int k) { return Polynomial::variable(n, kJetPotentialSlot + k); };
    std::map<std::pair<int, int>, Polynomial> expected;
    expected[{2, 1}] = mu * v(2) * GaussianRational(Rational(-1, 24));
    expected[{4, 3}] = mu * mu * v(2) * v(2) * GaussianRational(Rational(7, 5) / (128 * 9));
    expected[{4, 2}] = mu * mu * v(4) * GaussianRational(Rational(-1, 128 * 9));
    const auto got = split_form_corrections(4);
    if (got != expected) {
        std::ostringstream os;
        const auto names = jet_variable_names();
        for (const auto &[k, p] : got)
            os << " [" << k.first << "," << k.second << "] " << to_string(p, names);
        out.fail("split-form corrections differ:" + os.str());
    }
    out.detail << (out.passed ? "" : "; ") << "-1/24, 7/5 * 1/1152, -1/1152";
}

// Criterion 10.
void suite_bs_numeric(const VerifyOptions &, Outcome &out)
{
    const SplitHamiltonian harmonic(Rational(1), {Rational(0), Rational(0), Rational(1, 2)});
    for (int order : {0, 2, 4})
        for (const auto &level : bs_eigenvalues(harmonic, 1, 4, order, 1.0L))
            if (std::fabs(level.energy - (level.n - 0.5L)) > 1e-9L)
                out.fail("harmonic level " + std::to_string(level.n) + " off at order " + std::to_string(order));
    for (const auto &level : bs_eigenvalues(harmonic, 1, 2, 4, 0.5L, ActionForm::full))
        if (std::fabs(level.energy - (level.n - 0.5L) * 0.5L) > 1e-9L)
            out.fail("harmonic level off in the full form");

    const std::vector<Rational> quartic{0, 0, 0, 0, 1};
    const SplitHamiltonian h(Rational(1), quartic);
    const auto oracle = schrodinger_oracle(quartic, 1.0, 1.0, 6);
    double worst = 0;
    for (const auto &level : bs_eigenvalues(h, 3, 6, 4, 1.0L)) {
        const double ref = oracle.eigenvalues[static_cast<std::size_t>(level.n - 1)];
        const double rel = std::fabs(static_cast<double>(level.energy) - ref) / ref;
        worst = std::max(worst, rel);
        if (rel > 5e-4)
            out.fail("quartic level " + std::to_string(level.n) + " relative error " + std::to_string(rel));
    }

    const ActionEvaluator full(h, 4, ActionForm::full);
    const ActionEvaluator reduced(h, 4, ActionForm::reduced);
    double worst_pair = 0;
    for (long double e : {1.0L, 2.0L, 4.0L, 7.0L, 10.0L}) {
        const long double a = full.correction(4, e);
        const long double b = reduced.correction(4, e);
        const double rel = static_cast<double>(std::fabs(a - b) / std::fabs(b));
        worst_pair = std::max(worst_pair, rel);
        if (rel > 1e-6)
            out.fail("full and reduced hbar^4 corrections differ at E = " + std::to_string(static_cast<double>(e)));
    }
    out.detail << (out.passed ? "" : "; ") << "quartic worst relative error " << worst << ", full vs reduced "
               << worst_pair;
}

// Criterion 11.
void suite_lemmas(const VerifyOptions &opt, Outcome &out)
{
    std::mt19937_64 rng(opt.seed + 11);
    const auto tensor = QuantizationTensor::moyal(1);

    // Attaching k arrows into a new vertex expands the k-fold bracket of the product.
    int expansions = 0;
    for (int trial = 0; trial < 12; ++trial) {
        std::uniform_int_distribution<int> vd(1, 3);
        const int v = vd(rng);
        std::uniform_int_distribution<int> ed(0, v > 1 ? 3 : 0);
        const int e = ed(rng);
        std::vector<std::pair<int, int>> edges;
        std::uniform_int_distribution<int> pick(0, v - 1);
        while (static_cast<int>(edges.size()) < e) {
            const int a = pick(rng);
            const int b = pick(rng);
            if (a != b)
                edges.emplace_back(std::min(a, b), std::max(a, b));
        }
        const LabeledGraph g(v, edges);
        std::vector<Polynomial> symbols;
        for (int i = 0; i < v; ++i)
            symbols.push_back(random_symbol(rng, 1, 3));
        const Polynomial d = random_symbol(rng, 1, 3);
        for (int k = 0; k <= 2; ++k) {
            const auto ex = attach_arrows_expand<Polynomial>(g, symbols, k, d, tensor);
            if (!(ex.bracket == ex.graph_sum))
                out.fail("attachment expansion differs");
            ++expansions;
        }
    }

    // Pointwise formula against the global symbol.
    const StarConfig cfg = moyal_config(1, 4);
    const Polynomial a = random_symbol(rng, 1, 3);
    const JetSeries jet = symbol_of_function_unlabeled(SymbolSeries::constant(a, 4), cfg);
    const FunctionJet cubic = FunctionJet::polynomial({1, 2, 0, 1});
    const FunctionJet expo = FunctionJet::exponential(GaussianRational(Rational(1, 2)));
    const SymbolSeries global_cubic = materialize(jet, cubic);
    const SymbolSeries global_exp = exponential_prefactor(jet, expo.rate());
    for (int i = 0; i < 10; ++i) {
        const auto z = random_point(rng, 2);
        if (pointwise_symbol(a, cubic, z, cfg) != evaluate(global_cubic, z))
            out.fail("pointwise and global symbols differ (cubic f)");
        if (pointwise_symbol(a, expo, z, cfg) != evaluate(global_exp, z))
            out.fail("pointwise and global symbols differ (exponential f)");
    }

    // (A - a0)^{*m} at z0 is O(hbar^{ceil(m/2)}).
    std::ostringstream orders;
    for (int trial = 0; trial < 3; ++trial) {
        const Polynomial b = random_symbol(rng, 1, 3);
        const auto z = random_point(rng, 2);
        for (int m = 1; m <= 4; ++m) {
            const int k = vanishing_order(b, z, m, moyal_config(1, 4));
            orders << (m > 1 ? "," : "") << k;
            if (k < (m + 1) / 2)
                out.fail("vanishing order " + std::to_string(k) + " below ceil(m/2) for m = " + std::to_string(m));
        }
        orders << (trial < 2 ? " " : "");
    }
    out.detail << (out.passed ? "" : "; ") << expansions << " attachment expansions, 10 points, vanishing orders "
               << orders.str();
}

struct SuiteSpec {
    const char *name;
    double limit;
    void (*run)(const VerifyOptions &, Outcome &);
};

const std::vector<SuiteSpec> &suites()
{
    static const std::vector<SuiteSpec> s{
        {"graph_table", 5, suite_graph_table},   {"zag", 1, suite_zag},
        {"power", 60, suite_power},              {"forms", 60, suite_forms},
        {"order_four", 30, suite_order_four},    {"product", 60, suite_product},
        {"resolvent", 120, suite_resolvent},     {"quadratic", 30, suite_quadratic},
        {"bs_symbolic", 30, suite_bs_symbolic}, {"bs_numeric", 300, suite_bs_numeric},
        {"lemmas", 60, suite_lemmas},
    };
    return s;
}

} // namespace

Polynomial random_symbol(std::mt19937_64 &rng, int n, int max_degree)
{
    const int vars = 2 * n;
    std::uniform_int_distribution<int> count(2, 5);
    std::uniform_int_distribution<int> degree(1, max_degree);
    std::uniform_int_distribution<int> slot(0, vars - 1);
    for (;;) {
        Polynomial p(vars);
        const int terms = count(rng);
        for (int t = 0; t < terms; ++t) {
            Monomial m;
            const int d = degree(rng);
            for (int k = 0; k < d; ++k)
                ++m.exps[static_cast<std::size_t>(slot(rng))];
            p.add_term(m, random_rational(rng));
        }
        if (p.total_degree() >= std::min(2, max_degree))
            return p;
    }
}

const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto &s : suites())
            n.emplace_back(s.name);
        return n;
    }();
    return names;
}

SuiteResult run_suite(const std::string &name, const VerifyOptions &options)
{
    for (const auto &s : suites()) {
        if (name != s.name)
            continue;
        SuiteResult r;
        r.name = name;
        r.limit_seconds = s.limit;
        Outcome out;
        const auto start = std::chrono::steady_clock::now();
        try {
            s.run(options, out);
        } catch (const std::exception &e) {
            out.fail(std::string("exception: ") + e.what());
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        r.passed = out.passed && r.seconds <= s.limit;
        r.detail = out.detail.str();
        if (out.passed && !r.passed)
            r.detail += "; over the time budget";
        return r;
    }
    throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all(const VerifyOptions &options)
{
    std::vector<SuiteResult> out;
    for (const auto &n : suite_names())
        out.push_back(run_suite(n, options));
    return out;
}

} // namespace weyl
