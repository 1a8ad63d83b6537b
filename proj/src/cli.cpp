#include "weyl/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "weyl/bohr_sommerfeld.hpp"
#include "weyl/parse.hpp"
#include "weyl/quadratic.hpp"
#include "weyl/serialize.hpp"
#include "weyl/verify.hpp"

namespace weyl
{

namespace
{

struct RunConfig {
    int order = 4;
    std::string tensor = "moyal";
    std::string format = "auto";
    std::uint64_t seed = VerifyOptions{}.seed;
};

class usage_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

int default_order()
{
    const char *env = std::getenv(kOrderEnvironment);
    if (env == nullptr || *env == '\0')
        return 4;
    try {
        std::size_t used = 0;
        const int k = std::stoi(env, &used);
        if (used == std::string(env).size())
            return k;
    } catch (const std::exception &) {
    }
    throw usage_error(std::string(kOrderEnvironment) + " must be an integer");
}

void validate(const RunConfig &cfg)
{
    if (cfg.order < 0 || cfg.order > kMaxTruncationOrder)
        throw usage_error("--order must lie in [0, " + std::to_string(kMaxTruncationOrder) + "]");
    if (cfg.tensor != "moyal" && cfg.tensor != "standard")
        throw usage_error("--tensor must be moyal or standard");
    if (cfg.format != "auto" && cfg.format != "text" && cfg.format != "json" && cfg.format != "csv")
        throw usage_error("--format must be text, json or csv");
}

std::string format_or(const RunConfig &cfg, const std::string &fallback)
{
    return cfg.format == "auto" ? fallback : cfg.format;
}

// A JSON argument is either inline text starting with '{' or a file name.
Json read_json(const std::string &source)
{
    const auto first = source.find_first_not_of(" \t\n");
    if (first != std::string::npos && source[first] == '{')
        return Json::parse(source);
    std::ifstream in(source);
    if (!in)
        throw usage_error("cannot read '" + source + "'");
    return Json::parse(in);
}

int dimension_of(const std::vector<std::string> &symbols)
{
    int n = 1;
    for (const auto &s : symbols)
        n = std::max(n, infer_dimension(s));
    return n;
}

StarConfig star_config(const RunConfig &cfg, int dimension)
{
    return {tensor_from_name(cfg.tensor, dimension), cfg.order};
}

void print_series(std::ostream &out, const SymbolSeries &s, const std::string &format)
{
    if (format == "json") {
        out << to_json(s).dump() << '\n';
        return;
    }
    for (int e = 0; e <= s.order(); ++e)
        out << "hbar^" << e << ": " << to_string(s[e]) << '\n';
}

void print_jet(std::ostream &out, const JetSeries &jet, const std::string &format)
{
    if (format == "json") {
        out << to_json(jet).dump() << '\n';
        return;
    }
    out << "A0 = " << to_string(jet.base()) << '\n';
    for (const auto &[key, q] : jet.terms())
        out << "hbar^" << key.first << " f^(" << key.second << ")(A0): " << to_string(q) << '\n';
}

void print_resolvent(std::ostream &out, const HbarSeries<ResolventSymbol> &s, const std::string &format)
{
    if (format == "json") {
        out << to_json(s).dump() << '\n';
        return;
    }
    out << "u = a - (" << to_string(s[0].base()) << ")\n";
    for (int e = 0; e <= s.order(); ++e)
        out << "hbar^" << e << ": " << to_string(s[e]) << '\n';
}

// The symbol of f(A) in the requested shape: jet, series, exponential prefactor or resolvent.
void print_function_of(std::ostream &out, const JetSeries &jet, const FunctionJet &f, const std::string &format)
{
    switch (f.kind()) {
    case FunctionJet::Kind::abstract:
        print_jet(out, jet, format);
        break;
    case FunctionJet::Kind::polynomial:
        print_series(out, materialize(jet, f), format);
        break;
    case FunctionJet::Kind::exponential:
        if (format != "json")
            out << "prefactor of exp(" << to_string(f.rate()) << " * A0)\n";
        print_series(out, exponential_prefactor(jet, f.rate()), format);
        break;
    case FunctionJet::Kind::resolvent:
        print_resolvent(out, materialize_resolvent(jet), format);
        break;
    }
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

Json graph_record(const UnlabeledGraph &g)
{
    const auto inv = invariants(g);
    Json j = to_json(g);
    j["S"] = inv.S;
    j["c"] = inv.c;
    j["connected"] = inv.connected;
    return j;
}

std::vector<Rational> potential_coefficients(const std::string &text)
{
    const std::vector<std::string> names{"x"};
    const Polynomial v = parse_polynomial(text, names);
    if (!v.is_real())
        throw usage_error("the potential must have real coefficients");
    std::vector<Rational> c(static_cast<std::size_t>(std::max(v.total_degree(), 0)) + 1, Rational(0));
    for (const auto &[m, coeff] : v.terms())
        c[m.exps[0]] = coeff.real();
    return c;
}

std::string sig12(double x)
{
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

} // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact Weyl-symbol calculus: graphs, star products, functions of operators, "
                 "Bohr-Sommerfeld levels."};
    app.name("weylcalc");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    try {
        cfg.order = default_order();
    } catch (const usage_error &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    app.add_option("--order", cfg.order, "hbar truncation order (default from " + std::string(kOrderEnvironment) +
                                             ", else 4; at most 8)");
    app.add_option("--tensor", cfg.tensor, "quantization tensor: moyal|standard");
    app.add_option("--format", cfg.format, "text|json|csv (each command has its own default)");
    app.add_option("--seed", cfg.seed, "seed for the random symbols of verify");

    // graphs
    auto *graphs = app.add_subcommand("graphs", "enumerate reduced multigraphs and read their invariants");
    graphs->require_subcommand(1);
    auto *genum = graphs->add_subcommand("enum", "one representative per isomorphism class");
    int edges = 0;
    bool reduced = false, connected = false, include_odd = false;
    genum->add_option("--edges", edges, "edge count")->required();
    genum->add_flag("--reduced", reduced, "no isolated vertices (always the case)");
    genum->add_flag("--connected", connected, "connected graphs only");
    genum->add_flag("--include-odd", include_odd, "keep graphs with an odd-edge component (c = 0)");
    auto *ginv = graphs->add_subcommand("invariants", "S, c and connectivity of one graph");
    std::string graph_in;
    ginv->add_option("--in,--graph", graph_in, "graph JSON file, or inline JSON")->required();

    // lambda
    auto *lam = app.add_subcommand("lambda", "lambda of a graph with one symbol on every vertex");
    std::string lambda_graph, lambda_symbol;
    lam->add_option("--graph,--in", lambda_graph, "graph JSON file, or inline JSON")->required();
    lam->add_option("--symbol", lambda_symbol, "phase-space polynomial")->required();

    // star
    auto *st = app.add_subcommand("star", "iterated star product of the factors");
    std::vector<std::string> factors;
    bool via_graphs = false;
    st->add_option("factors", factors, "symbols, left to right")->required();
    st->add_flag("--graphs", via_graphs, "sum over labeled graphs instead of folding the binary product");

    // expand
    auto *ex = app.add_subcommand("expand", "symbol of f(A)");
    std::string ex_symbol, ex_function = "abstract", ex_form = "unlabeled";
    ex->add_option("--symbol", ex_symbol, "the symbol A")->required();
    ex->add_option("--function", ex_function, "abstract | poly:c0,c1,... | exp:r | resolvent");
    ex->add_option("--form", ex_form, "labeled|unlabeled|connected");

    // quadratic
    auto *qd = app.add_subcommand("quadratic", "closed forms for A = z^T Q z / 2 on the line");
    std::string q_matrix, q_function = "abstract", q_route = "closed";
    bool propagator = false;
    qd->add_option("--Q", q_matrix, "\"q11,q12;q21,q22\"")->required();
    qd->add_option("--function", q_function, "abstract | poly:... | exp[:r] | resolvent");
    qd->add_option("--route", q_route, "closed (sec/tan) or exponent (path coefficients)");
    qd->add_flag("--propagator", propagator, "prefactor of exp(-itA/hbar) through t^order instead");

    // zag
    auto *zg = app.add_subcommand("zag", "|c_k| of the path graphs");
    int zag_count = 5;
    std::string zag_route = "recurrence";
    zg->add_option("--k", zag_count, "how many terms, from k = 0");
    zg->add_option("--route", zag_route, "recurrence|tangent|bernoulli");

    // bs
    auto *bs = app.add_subcommand("bs", "Bohr-Sommerfeld levels of p^2/2m + V(x)");
    std::string potential, mass = "1", bs_form = "reduced";
    double hbar = 1;
    int levels = 6, first_level = 1;
    bool compare = false;
    bs->add_option("--potential", potential, "V(x), an even-degree single well")->required();
    bs->add_option("--mass", mass, "rational mass");
    bs->add_option("--hbar", hbar, "Planck constant");
    bs->add_option("--levels", levels, "number of levels");
    bs->add_option("--first", first_level, "first quantum number (1 is the ground state)");
    bs->add_flag("--compare-oracle", compare, "add a finite-difference Schroedinger reference");
    bs->add_option("--form", bs_form, "full (every graph) or reduced (five graphs at hbar^4)");

    // verify
    auto *vf = app.add_subcommand("verify", "cross-oracle suites");
    bool all = false;
    std::vector<std::string> suites;
    int battery = VerifyOptions{}.battery;
    vf->add_flag("--all", all, "every suite (the default)");
    vf->add_option("--suite", suites, "one suite; repeatable");
    vf->add_option("--battery", battery, "random symbols in the power and forms suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }

    try {
        validate(cfg);

        if (genum->parsed()) {
            const auto list = enumerate_reduced(
                edges, {.connected_only = connected, .include_odd_components = include_odd});
            const std::string fmt = format_or(cfg, "text");
            if (fmt == "json") {
                Json arr = Json::array();
                for (const auto &g : list)
                    arr.push_back(graph_record(g));
                out << Json{{"edges", edges}, {"count", list.size()}, {"graphs", arr}}.dump() << '\n';
            } else {
                out << list.size() << " graphs\n";
                for (const auto &g : list) {
                    const Json r = graph_record(g);
                    out << "V=" << g.vertices() << " edges=" << r["edges"].dump() << " S=" << r["S"].dump()
                        << " c=" << r["c"].dump() << '\n';
                }
            }
            return 0;
        }

        if (ginv->parsed()) {
            const auto [v, arrows] = arrows_from_json(read_json(graph_in));
            std::vector<std::pair<int, int>> pairs;
            for (const auto &a : arrows)
                pairs.emplace_back(std::min(a.tail, a.head), std::max(a.tail, a.head));
            const LabeledGraph lg(v, pairs);
            const UnlabeledGraph g = canonicalize(lg);
            // c of the arrows as given; S and connectivity do not depend on the labeling.
            const Json j{{"S", symmetry_order(g)},
                         {"c", c_via_facts(v, arrows)},
                         {"connected", lg.is_connected()},
                         {"reduced", lg.is_reduced()}};
            if (format_or(cfg, "json") == "json")
                out << j.dump() << '\n';
            else
                out << "S = " << j["S"].dump() << "\nc = " << j["c"].dump()
                    << "\nconnected = " << bool_text(lg.is_connected()) << '\n';
            return 0;
        }

        if (lam->parsed()) {
            const auto [v, arrows] = arrows_from_json(read_json(lambda_graph));
            const int n = dimension_of({lambda_symbol});
            const Polynomial a = parse_symbol(lambda_symbol, n);
            const std::vector<Polynomial> symbols(static_cast<std::size_t>(v), a);
            const Polynomial l = v == 0 ? one_like(a)
                                        : lambda<Polynomial>(v, arrows, symbols, tensor_from_name(cfg.tensor, n));
            if (format_or(cfg, "text") == "json")
                out << to_json(l).dump() << '\n';
            else
                out << to_string(l) << '\n';
            return 0;
        }

        if (st->parsed()) {
            const int n = dimension_of(factors);
            std::vector<SymbolSeries> series;
            for (const auto &f : factors)
                series.push_back(SymbolSeries::constant(parse_symbol(f, n), cfg.order));
            const StarConfig sc = star_config(cfg, n);
            const SymbolSeries r = via_graphs ? star_n_fold(series, sc, 2 * n) : star_fold(series, sc, 2 * n);
            print_series(out, r, format_or(cfg, "json"));
            return 0;
        }

        if (ex->parsed()) {
            const int n = dimension_of({ex_symbol});
            CalculusForm form;
            if (ex_form == "labeled")
                form = CalculusForm::labeled;
            else if (ex_form == "unlabeled")
                form = CalculusForm::unlabeled;
            else if (ex_form == "connected")
                form = CalculusForm::connected;
            else
                throw usage_error("--form must be labeled, unlabeled or connected");
            const FunctionJet f = parse_function(ex_function);
            const SymbolSeries a = SymbolSeries::constant(parse_symbol(ex_symbol, n), cfg.order);
            print_function_of(out, symbol_of_function(a, star_config(cfg, n), form), f, format_or(cfg, "json"));
            return 0;
        }

        if (qd->parsed()) {
            const QuadraticForm q = QuadraticForm::parse(q_matrix);
            const std::string fmt = format_or(cfg, "json");
            if (propagator) {
                const PropagatorSeries p = propagator_closed_form(q, cfg.order);
                if (fmt == "json") {
                    out << to_json(p).dump() << '\n';
                } else {
                    for (const auto &[key, poly] : p.terms)
                        out << "t^" << key.first << " hbar^" << key.second << ": " << to_string(poly) << '\n';
                }
                return 0;
            }
            JetSeries jet(q.symbol(), cfg.order);
            if (q_route == "closed")
                jet = quadratic_closed_symbol(q, cfg.order);
            else if (q_route == "exponent")
                jet = quadratic_exponent_symbol(q, cfg.order);
            else
                throw usage_error("--route must be closed or exponent");
            print_function_of(out, jet, parse_function(q_function), fmt);
            return 0;
        }

        if (zg->parsed()) {
            if (zag_count < 1 || zag_count > kMaxZagIndex + 1)
                throw usage_error("--k must lie in [1, " + std::to_string(kMaxZagIndex + 1) + "]");
            std::vector<mpz_class> z;
            if (zag_route == "recurrence")
                z = zag_numbers(zag_count - 1);
            else if (zag_route == "tangent")
                z = zag_from_tangent(zag_count - 1);
            else if (zag_route == "bernoulli")
                z = zag_from_bernoulli(zag_count - 1);
            else
                throw usage_error("--route must be recurrence, tangent or bernoulli");
            if (format_or(cfg, "text") == "json") {
                Json arr = Json::array();
                for (const auto &x : z)
                    arr.push_back(x.get_str());
                out << Json{{"zag", arr}}.dump() << '\n';
            } else {
                for (std::size_t i = 0; i < z.size(); ++i)
                    out << (i ? " " : "") << z[i].get_str();
                out << '\n';
            }
            return 0;
        }

        if (bs->parsed()) {
            if (cfg.order != 0 && cfg.order != 2 && cfg.order != 4)
                throw usage_error("bs needs --order 0, 2 or 4");
            if (levels < 1 || first_level < 1)
                throw usage_error("--levels and --first must be positive");
            if (!(hbar > 0))
                throw usage_error("--hbar must be positive");
            if (bs_form != "full" && bs_form != "reduced")
                throw usage_error("--form must be full or reduced");
            const ActionForm form = bs_form == "full" ? ActionForm::full : ActionForm::reduced;
            const auto coeffs = potential_coefficients(potential);
            const Rational m = parse_rational(mass);
            const SplitHamiltonian h(m, coeffs);
            const int last = first_level + levels - 1;
            std::map<int, std::vector<BsLevel>> by_order;
            for (int k = 0; k <= cfg.order; k += 2)
                by_order[k] = bs_eigenvalues(h, first_level, last, k, hbar, form);
            std::vector<double> oracle;
            if (compare)
                oracle = schrodinger_oracle(coeffs, m.get_d(), hbar, last).eigenvalues;

            const std::string fmt = format_or(cfg, "csv");
            Json rows = Json::array();
            if (fmt != "json")
                out << "n,E_bs0,E_bs2,E_bs4,E_oracle,abs_err\n";
            for (int i = 0; i < levels; ++i) {
                const int n = first_level + i;
                std::array<std::string, 3> cols;
                Json row{{"n", n}};
                double best = 0;
                for (const auto &[k, list] : by_order) {
                    best = static_cast<double>(list[static_cast<std::size_t>(i)].energy);
                    cols[static_cast<std::size_t>(k / 2)] = sig12(best);
                    row["E_bs" + std::to_string(k)] = best;
                }
                std::string ref, diff;
                if (compare) {
                    const double o = oracle[static_cast<std::size_t>(n - 1)];
                    ref = sig12(o);
                    diff = sig12(std::fabs(best - o));
                    row["E_oracle"] = o;
                    row["abs_err"] = std::fabs(best - o);
                }
                if (fmt == "json")
                    rows.push_back(row);
                else
                    out << n << ',' << cols[0] << ',' << cols[1] << ',' << cols[2] << ',' << ref << ',' << diff
                        << '\n';
            }
            if (fmt == "json")
                out << rows.dump() << '\n';
            return 0;
        }

        if (vf->parsed()) {
            if (all && !suites.empty())
                throw usage_error("--all and --suite are exclusive");
            const auto &known = suite_names();
            for (const auto &s : suites)
                if (std::find(known.begin(), known.end(), s) == known.end())
                    throw usage_error("unknown suite '" + s + "'");
            const VerifyOptions opt{cfg.seed, battery};
            // Fixed reporting order whatever the order on the command line.
            std::vector<SuiteResult> results;
            for (const auto &name : known)
                if (suites.empty() || std::find(suites.begin(), suites.end(), name) != suites.end())
                    results.push_back(run_suite(name, opt));
            int passed = 0;
            Json arr = Json::array();
            const std::string fmt = format_or(cfg, "text");
            for (const auto &r : results) {
                passed += r.passed ? 1 : 0;
                if (fmt == "json") {
                    arr.push_back({{"suite", r.name},
                                   {"passed", r.passed},
                                   {"seconds", r.seconds},
                                   {"limit_seconds", r.limit_seconds},
                                   {"detail", r.detail}});
                } else {
                    out << (r.passed ? "PASS " : "FAIL ") << std::left << std::setw(12) << r.name << ' ' << std::right
                        << std::fixed << std::setprecision(2) << std::setw(7) << r.seconds << " s / "
                        << std::setprecision(0) << r.limit_seconds << " s  " << r.detail << '\n';
                    out.unsetf(std::ios::floatfield);
                }
            }
            if (fmt == "json")
                out << arr.dump() << '\n';
            else
                out << passed << '/' << results.size() << " suites passed\n";
            return passed == static_cast<int>(results.size()) ? 0 : 1;
        }
    } catch (const Json::exception &e) {
        err << "error: bad JSON: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

} // namespace weyl
