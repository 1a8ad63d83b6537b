#include "weyl/bohr_sommerfeld.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

namespace weyl
{

namespace
{

const long double kPi = boost::math::constants::pi<long double>();

long double to_long_double(const Rational &q)
{
    return std::strtold(q.get_num().get_str().c_str(), nullptr) / std::strtold(q.get_den().get_str().c_str(), nullptr);
}

long double horner(const std::vector<long double> &c, long double x)
{
    long double r = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        r = r * x + *it;
    return r;
}

std::vector<long double> differentiate(const std::vector<long double> &c)
{
    std::vector<long double> d;
    for (std::size_t k = 1; k < c.size(); ++k)
        d.push_back(c[k] * static_cast<long double>(k));
    return d;
}

// Quotient of c by (x - r); the remainder is dropped.
std::vector<long double> deflate(const std::vector<long double> &c, long double r)
{
    if (c.size() < 2)
        return {};
    std::vector<long double> q(c.size() - 1);
    long double carry = 0;
    for (std::size_t k = c.size() - 1; k >= 1; --k) {
        carry = c[k] + carry * r;
        q[k - 1] = carry;
    }
    return q;
}

std::string describe_arrows(std::span<const Arrow> arrows)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < arrows.size(); ++i)
        os << (i ? "," : "") << arrows[i].tail << "->" << arrows[i].head;
    return os.str();
}

void check_one_dimensional(const Polynomial &h)
{
    if (h.variables() < 2)
        throw dimension_error("symbol needs the variables x and p");
}

int vertex_count(std::span<const Arrow> arrows)
{
    int v = 0;
    for (const auto &a : arrows)
        v = std::max({v, a.tail + 1, a.head + 1});
    return v;
}

ActionTerm make_term(const Polynomial &h, int hbar, GaussianRational weight, std::vector<Arrow> arrows)
{
    const int v = vertex_count(arrows);
    const std::vector<Polynomial> symbols(static_cast<std::size_t>(v), h);
    ActionTerm t;
    t.hbar = hbar;
    t.derivative = v - 1;
    t.weight = std::move(weight);
    t.integrand = lambda<Polynomial>(v, arrows, symbols, QuantizationTensor::moyal(1));
    t.graph = describe_arrows(arrows);
    return t;
}

// The gap E - V(x) as R(x) (x - x-)(x+ - x), with R read off by deflation so that it stays
// accurate near the turning points.
struct Orbit {
    long double lo;
    long double hi;
    std::vector<long double> r;

    long double centre() const { return (lo + hi) / 2; }
    long double half() const { return (hi - lo) / 2; }
};

Orbit orbit_at(const SplitHamiltonian &h, const std::vector<long double> &v, long double e)
{
    const auto [lo, hi] = h.turning_points(e);
    std::vector<long double> gap(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        gap[k] = -v[k];
    gap[0] += e;
    auto q = deflate(deflate(gap, lo), hi);
    for (auto &c : q)
        c = -c;
    return {lo, hi, std::move(q)};
}

template <class F>
long double gauss_panels(F f, int panels)
{
    using Rule = boost::math::quadrature::gauss<long double, 30>;
    const long double a = -kPi / 2;
    const long double w = kPi / panels;
    long double sum = 0;
    for (int i = 0; i < panels; ++i)
        sum += Rule::integrate(f, a + w * i, a + w * (i + 1));
    return sum;
}

constexpr int kMaxPanels = 1 << 12;

template <class F, class G>
std::pair<long double, int> adaptive(F f, G abs_f, long double tolerance)
{
    long double prev = gauss_panels(f, 1);
    for (int panels = 2; panels <= kMaxPanels; panels *= 2) {
        const long double cur = gauss_panels(f, panels);
        const long double scale = std::max(std::fabs(cur), gauss_panels(abs_f, panels));
        if (std::fabs(cur - prev) <= tolerance * scale)
            return {cur, panels};
        prev = cur;
    }
    throw std::runtime_error("period quadrature did not converge");
}

std::vector<std::tuple<int, int, long double>> even_part(const Polynomial &g)
{
    if (g.variables() != 2)
        throw dimension_error("integrand must be a polynomial in x and p");
    std::vector<std::tuple<int, int, long double>> out;
    for (const auto &[m, c] : g.terms()) {
        if (!c.is_real())
            throw std::invalid_argument("integrand must be real");
        if (m.exps[1] % 2 == 0)
            out.emplace_back(m.exps[0], m.exps[1], to_long_double(c.real()));
    }
    return out;
}

// sqrt(2m/R) * G_even(x, p^2) at theta, with x = c + h sin(theta) and p^2 = 2m h^2 cos^2 R.
long double theta_integrand(const std::vector<std::tuple<int, int, long double>> &terms, const Orbit &o,
                            long double mass, long double theta)
{
    const long double x = o.centre() + o.half() * std::sin(theta);
    const long double r = horner(o.r, x);
    const long double cs = std::cos(theta);
    const long double p2 = 2 * mass * o.half() * o.half() * cs * cs * r;
    long double g = 0;
    for (const auto &[a, b, c] : terms)
        g += c * std::pow(x, a) * std::pow(p2, b / 2);
    return std::sqrt(2 * mass / r) * g;
}

long double central_difference(const std::function<long double(long double)> &f, long double x, int d, long double h)
{
    long double sum = 0;
    long double binom = 1;
    for (int k = 0; k <= d; ++k) {
        const long double sign = k % 2 ? -1 : 1;
        sum += sign * binom * f(x + (static_cast<long double>(d) / 2 - k) * h);
        binom = binom * (d - k) / (k + 1);
    }
    return sum / std::pow(h, d);
}

} // namespace

Polynomial universal_polynomial(const Polynomial &h, int j, int l)
{
    check_one_dimensional(h);
    if (j < 0)
        throw std::invalid_argument("edge count must be non-negative");
    if (j == 0)
        return l == 1 ? one_like(h) : zero_like(h);
    Polynomial out = zero_like(h);
    if (l - 1 > 2 * j || l < 2)
        return out;
    const auto tensor = QuantizationTensor::moyal(1);
    for (const auto &g : enumerate_reduced(j)) {
        if (g.vertices() != l - 1)
            continue;
        const auto inv = invariants(g);
        if (inv.c == 0)
            continue;
        const GaussianRational w = half_i_power(j) * GaussianRational(Rational(static_cast<long>(inv.c)) / Rational(static_cast<unsigned long>(inv.S)));
        out += lambda<Polynomial>(g, h, tensor) * w;
    }
    return out;
}

std::map<int, Polynomial> universal_polynomials(const Polynomial &h, int j)
{
    std::map<int, Polynomial> out;
    for (int l = 1; l <= 2 * j + 1; ++l) {
        Polynomial p = universal_polynomial(h, j, l);
        if (!p.is_zero())
            out.emplace(l, std::move(p));
    }
    return out;
}

ResolventSymbol resolvent_from_universal(const Polynomial &h, int j)
{
    ResolventSymbol r(h);
    for (const auto &[l, p] : universal_polynomials(h, j))
        r += ResolventSymbol::term(h, p, -l);
    return r;
}

std::map<std::pair<int, int>, Polynomial> ActionSeries::combined() const
{
    std::map<std::pair<int, int>, Polynomial> out;
    for (const auto &t : terms) {
        const Polynomial p = t.integrand * t.weight;
        auto [it, inserted] = out.try_emplace({t.hbar, t.derivative}, p);
        if (!inserted)
            it->second += p;
    }
    std::erase_if(out, [](const auto &kv) { return kv.second.is_zero(); });
    return out;
}

ActionSeries action_corrections(const Polynomial &h, int order)
{
    check_one_dimensional(h);
    if (order < 0 || order > 4)
        throw capacity_error("action corrections are assembled through hbar^4");
    ActionSeries s;
    s.order = order;
    EnumerationOptions opts;
    opts.include_odd_components = true;
    for (int j = 1; j <= order; ++j) {
        for (const auto &g : enumerate_reduced(j, opts)) {
            const auto inv = invariants(g);
            const int v = g.vertices();
            const GaussianRational w = half_i_power(j) * GaussianRational(v % 2 ? -1 : 1) *
                                       GaussianRational(Rational(static_cast<long>(inv.c)) / (Rational(static_cast<unsigned long>(inv.S)) * factorial(v)));
            ActionTerm t = make_term(h, j, w, g.representative().arrows());
            s.terms.push_back(std::move(t));
        }
    }
    return s;
}

ActionSeries reduced_action_corrections(const Polynomial &h, int order)
{
    check_one_dimensional(h);
    if (order < 0 || order > 4)
        throw capacity_error("action corrections are assembled through hbar^4");
    ActionSeries s;
    s.order = order;
    auto add = [&](int j, Rational w, std::vector<Arrow> arrows) {
        s.terms.push_back(make_term(h, j, GaussianRational(std::move(w)), std::move(arrows)));
    };
    if (order >= 2)
        add(2, Rational(-1, 4) / 12, {{0, 1}, {0, 1}});
    if (order >= 4) {
        const Rational q(1, 16);
        add(4, q / 240, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
        add(4, q / 288, {{0, 1}, {0, 1}, {2, 3}, {2, 3}});
        add(4, -q / 90, {{0, 1}, {0, 1}, {0, 2}, {1, 2}});
        add(4, q / 360, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
        add(4, -q / 72, {{0, 1}, {0, 1}, {1, 2}, {1, 2}});
    }
    return s;
}

int jet_variables() { return kJetPotentialSlot + kPotentialJetOrder + 1; }

std::vector<std::string> jet_variable_names()
{
    std::vector<std::string> names{"x", "p", "mu"};
    for (int k = 0; k <= kPotentialJetOrder; ++k)
        names.push_back(k == 0 ? "V" : "V" + std::string(static_cast<std::size_t>(k), '\''));
    return names;
}

Polynomial generic_split_hamiltonian()
{
    const int n = jet_variables();
    const Polynomial x = Polynomial::variable(n, 0);
    const Polynomial p = Polynomial::variable(n, 1);
    Polynomial h = Polynomial::variable(n, kJetMassSlot) * p * p * GaussianRational(Rational(1, 2));
    for (int k = 0; k <= kPotentialJetOrder; ++k)
        h += Polynomial::variable(n, kJetPotentialSlot + k) * pow(x, k) * GaussianRational(Rational(1) / factorial(k));
    return h;
}

std::map<std::pair<int, int>, Polynomial> split_form_corrections(int order)
{
    std::map<std::pair<int, int>, Polynomial> out;
    for (auto &[key, poly] : reduced_action_corrections(generic_split_hamiltonian(), order).combined()) {
        Polynomial at0 = poly.substitute(0, 0);
        if (at0.degree_in(1) > 0)
            throw std::logic_error("split-form correction depends on the momentum");
        if (!at0.is_zero())
            out.emplace(key, std::move(at0));
    }
    return out;
}

SplitHamiltonian::SplitHamiltonian(Rational mass, std::vector<Rational> potential)
    : mass_(std::move(mass)), potential_(std::move(potential))
{
    if (sgn(mass_) <= 0)
        throw std::invalid_argument("mass must be positive");
    while (!potential_.empty() && sgn(potential_.back()) == 0)
        potential_.pop_back();
    const int degree = static_cast<int>(potential_.size()) - 1;
    if (degree < 2 || degree % 2 != 0 || sgn(potential_.back()) <= 0)
        throw std::invalid_argument("potential must have even degree >= 2 and a positive leading coefficient");
    for (const auto &c : potential_)
        v_.push_back(to_long_double(c));

    // Every critical point lies within the Cauchy bound of V'.
    const auto dv = differentiate(v_);
    long double bound = 0;
    for (std::size_t k = 0; k + 1 < dv.size(); ++k)
        bound = std::max(bound, std::fabs(dv[k] / dv.back()));
    bound += 1;
    constexpr int samples = 4000;
    int best = 0;
    long double best_v = std::numeric_limits<long double>::infinity();
    for (int i = 0; i <= samples; ++i) {
        const long double x = -bound + 2 * bound * i / samples;
        const long double v = horner(v_, x);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    const long double step = 2 * bound / samples;
    const long double centre = -bound + step * best;
    auto r = boost::math::tools::brent_find_minima([&](long double x) { return horner(v_, x); }, centre - step,
                                                   centre + step, std::numeric_limits<long double>::digits / 2);
    x_min_ = r.first;
    v_min_ = r.second;
}

Polynomial SplitHamiltonian::symbol() const
{
    const Polynomial p = Polynomial::variable(2, 1);
    return p * p * GaussianRational(Rational(1) / (2 * mass_)) + potential_polynomial();
}

Polynomial SplitHamiltonian::potential_polynomial() const
{
    Polynomial v(2);
    const Polynomial x = Polynomial::variable(2, 0);
    for (std::size_t k = 0; k < potential_.size(); ++k)
        if (sgn(potential_[k]) != 0)
            v += pow(x, static_cast<int>(k)) * GaussianRational(potential_[k]);
    return v;
}

long double SplitHamiltonian::potential_at(long double x) const { return horner(v_, x); }

std::pair<long double, long double> SplitHamiltonian::turning_points(long double e) const
{
    if (!(e > v_min_))
        throw std::domain_error("energy is not above the potential minimum");
    long double bound = 0;
    for (std::size_t k = 0; k + 1 < v_.size(); ++k)
        bound = std::max(bound, std::fabs((v_[k] - (k == 0 ? e : 0)) / v_.back()));
    bound += 1 + std::fabs(x_min_);
    auto gap = [&](long double x) { return horner(v_, x) - e; };
    boost::math::tools::eps_tolerance<long double> tol(std::numeric_limits<long double>::digits - 3);
    auto solve = [&](long double a, long double b) {
        std::uintmax_t iters = 200;
        const auto [l, r] = boost::math::tools::toms748_solve(gap, a, b, tol, iters);
        if (iters >= 200)
            throw std::domain_error("turning-point search failed");
        return (l + r) / 2;
    };
    if (gap(x_min_ - bound) <= 0 || gap(x_min_ + bound) <= 0)
        throw std::domain_error("turning points not bracketed");
    const long double lo = solve(x_min_ - bound, x_min_);
    const long double hi = solve(x_min_, x_min_ + bound);
    // A single well: V < E strictly inside, V > E outside, and both crossings transversal.
    const auto dv = differentiate(v_);
    if (!(horner(dv, lo) < 0) || !(horner(dv, hi) > 0))
        throw std::domain_error("turning point is not simple");
    constexpr int samples = 256;
    for (int i = 1; i < samples; ++i) {
        const long double t = static_cast<long double>(i) / samples;
        if (gap(lo + (hi - lo) * t) >= 0)
            throw std::domain_error("energy curve is not a single well");
        if (gap(x_min_ - bound + (lo - x_min_ + bound) * t) <= 0 || gap(hi + (x_min_ + bound - hi) * t) <= 0)
            throw std::domain_error("energy curve has several components");
    }
    return {lo, hi};
}

long double period_integral(const SplitHamiltonian &h, long double e, const Polynomial &g, long double tolerance)
{
    const auto terms = even_part(g);
    if (terms.empty())
        return 0;
    std::vector<long double> v;
    for (const auto &c : h.potential())
        v.push_back(to_long_double(c));
    const Orbit o = orbit_at(h, v, e);
    const long double m = to_long_double(h.mass());
    auto f = [&](long double t) { return theta_integrand(terms, o, m, t); };
    auto abs_f = [&](long double t) { return std::fabs(theta_integrand(terms, o, m, t)); };
    return adaptive(f, abs_f, tolerance).first;
}

long double period_integral_reference(const SplitHamiltonian &h, long double e, const Polynomial &g)
{
    const auto terms = even_part(g);
    if (terms.empty())
        return 0;
    const auto [lo, hi] = h.turning_points(e);
    const long double m = to_long_double(h.mass());
    auto f = [&](long double x) {
        const long double p2 = 2 * m * (e - h.potential_at(x));
        if (p2 <= 0)
            return 0.0L;
        long double s = 0;
        for (const auto &[a, b, c] : terms)
            s += c * std::pow(x, a) * std::pow(p2, b / 2);
        return 2 * s * m / std::sqrt(p2);
    };
    boost::math::quadrature::tanh_sinh<long double> rule;
    return rule.integrate(f, lo, hi);
}

long double area_action(const SplitHamiltonian &h, long double e)
{
    std::vector<long double> v;
    for (const auto &c : h.potential())
        v.push_back(to_long_double(c));
    const Orbit o = orbit_at(h, v, e);
    const long double m = to_long_double(h.mass());
    // 2 * integral of p dx with p dx = sqrt(2m R) h^2 cos^2.
    auto f = [&](long double t) {
        const long double x = o.centre() + o.half() * std::sin(t);
        const long double c = std::cos(t);
        return 2 * std::sqrt(2 * m * horner(o.r, x)) * o.half() * o.half() * c * c;
    };
    return adaptive(f, f, 64 * std::numeric_limits<long double>::epsilon()).first;
}

long double richardson_derivative(const std::function<long double(long double)> &f, long double x, int d,
                                  long double h0, long double *error)
{
    if (d < 0)
        throw std::invalid_argument("derivative order must be non-negative");
    if (d == 0) {
        if (error)
            *error = 0;
        return f(x);
    }
    if (!(h0 > 0))
        throw std::invalid_argument("step must be positive");
    // Ridders' tableau: each column removes the next even power of the step.
    constexpr int ntab = 10;
    constexpr long double con = 1.4L;
    constexpr long double con2 = con * con;
    std::vector<std::vector<long double>> a(ntab, std::vector<long double>(ntab));
    long double h = h0;
    a[0][0] = central_difference(f, x, d, h);
    long double err = std::numeric_limits<long double>::max();
    long double ans = a[0][0];
    for (int i = 1; i < ntab; ++i) {
        h /= con;
        a[0][i] = central_difference(f, x, d, h);
        long double fac = con2;
        for (int j = 1; j <= i; ++j) {
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1);
            fac *= con2;
            const long double errt = std::max(std::fabs(a[j][i] - a[j - 1][i]), std::fabs(a[j][i] - a[j - 1][i - 1]));
            if (errt <= err) {
                err = errt;
                ans = a[j][i];
            }
        }
        if (std::fabs(a[i][i] - a[i - 1][i - 1]) >= 2 * err)
            break;
    }
    if (error)
        *error = err;
    return ans;
}

ActionEvaluator::ActionEvaluator(SplitHamiltonian h, int order, ActionForm form) : h_(std::move(h)), order_(order)
{
    if (order != 0 && order != 2 && order != 4)
        throw std::invalid_argument("action order must be 0, 2 or 4");
    const Polynomial sym = h_.symbol();
    const ActionSeries s = form == ActionForm::full ? action_corrections(sym, order) : reduced_action_corrections(sym, order);
    for (const auto &[key, poly] : s.combined()) {
        if (!poly.imag_part().is_zero())
            throw std::logic_error("action integrand is not real");
        Piece piece{key.second, even_part(poly)};
        if (!piece.terms.empty())
            pieces_[key.first].push_back(std::move(piece));
    }
}

long double ActionEvaluator::integrate(const Piece &piece, long double e, int panels) const
{
    std::vector<long double> v;
    for (const auto &c : h_.potential())
        v.push_back(to_long_double(c));
    const Orbit o = orbit_at(h_, v, e);
    const long double m = to_long_double(h_.mass());
    return gauss_panels([&](long double t) { return theta_integrand(piece.terms, o, m, t); }, panels);
}

int ActionEvaluator::panels_for(const Piece &piece, long double e) const
{
    std::vector<long double> v;
    for (const auto &c : h_.potential())
        v.push_back(to_long_double(c));
    const Orbit o = orbit_at(h_, v, e);
    const long double m = to_long_double(h_.mass());
    auto f = [&](long double t) { return theta_integrand(piece.terms, o, m, t); };
    auto abs_f = [&](long double t) { return std::fabs(theta_integrand(piece.terms, o, m, t)); };
    // One doubling beyond convergence keeps the stencil values on a common, fully resolved rule.
    return 2 * adaptive(f, abs_f, 64 * std::numeric_limits<long double>::epsilon()).second;
}

long double ActionEvaluator::correction(int j, long double e) const
{
    const auto it = pieces_.find(j);
    if (it == pieces_.end())
        return 0;
    const long double gap = e - h_.minimum_value();
    long double total = 0;
    for (const auto &piece : it->second) {
        const int panels = panels_for(piece, e);
        auto f = [&](long double x) { return integrate(piece, x, panels); };
        // The widest stencil reaches d/2 steps below E and must stay above the minimum.
        const long double h0 = gap / std::max(piece.derivative, 1);
        total += richardson_derivative(f, e, piece.derivative, h0);
    }
    return total;
}

long double ActionEvaluator::action(long double e, long double hbar) const
{
    long double s = area_action(h_, e);
    long double hp = 1;
    for (int j = 1; j <= order_; ++j) {
        hp *= hbar;
        s += hp * correction(j, e);
    }
    return s;
}

std::vector<BsLevel> bs_eigenvalues(const SplitHamiltonian &h, int n_min, int n_max, int order, long double hbar,
                                    ActionForm form)
{
    if (!(hbar > 0))
        throw std::invalid_argument("hbar must be positive");
    if (n_min < 1 || n_max < n_min)
        throw std::invalid_argument("levels start at n = 1");
    const ActionEvaluator ev(h, order, form);
    const long double vmin = h.minimum_value();
    boost::math::tools::eps_tolerance<long double> tol(std::numeric_limits<long double>::digits - 12);
    auto solve = [&](const std::function<long double(long double)> &g, long double a, long double b) {
        std::uintmax_t iters = 200;
        const auto [l, r] = boost::math::tools::toms748_solve(g, a, b, tol, iters);
        return (l + r) / 2;
    };

    std::vector<BsLevel> out;
    for (int n = n_min; n <= n_max; ++n) {
        const long double target = 2 * kPi * (n - 0.5L) * hbar;
        auto s0 = [&](long double e) { return area_action(h, e) - target; };
        long double hi = vmin + 1;
        while (s0(hi) <= 0)
            hi = vmin + 2 * (hi - vmin);
        const long double e0 = solve(s0, vmin + (hi - vmin) * 1e-12L, hi);
        BsLevel level;
        level.n = n;
        level.energy = e0;
        if (order > 0) {
            auto s = [&](long double e) { return ev.action(e, hbar) - target; };
            long double a = vmin + (e0 - vmin) * 0.8L;
            long double b = vmin + (e0 - vmin) * 1.25L;
            int tries = 0;
            while (s(a) * s(b) > 0) {
                if (++tries > 12)
                    throw std::domain_error("Bohr-Sommerfeld root not bracketed for n = " + std::to_string(n));
                a = vmin + (a - vmin) * 0.7L;
                b = vmin + (b - vmin) * 1.4L;
            }
            level.energy = solve(s, a, b);
            level.correction2 = hbar * hbar * ev.correction(2, level.energy);
            if (order >= 4)
                level.correction4 = std::pow(hbar, 4) * ev.correction(4, level.energy);
            // Both terms vanish for a harmonic well; rounding noise there is not a blow-up.
            const long double noise = 1e-12L * std::max(1.0L, ev.action(level.energy, 0.0L));
            level.blowup = std::fabs(level.correction4) > std::max(std::fabs(level.correction2), noise);
        }
        out.push_back(level);
    }
    return out;
}

namespace
{

std::vector<double> fd_eigenvalues(const std::vector<double> &v, double mass, double hbar, double half_width, int points,
                                   int count)
{
    const double dx = 2 * half_width / (points + 1);
    const double kinetic = hbar * hbar / (2 * mass * dx * dx);
    Eigen::VectorXd diag(points);
    Eigen::VectorXd sub(points - 1);
    for (int i = 0; i < points; ++i) {
        const double x = -half_width + dx * (i + 1);
        double vx = 0;
        for (auto it = v.rbegin(); it != v.rend(); ++it)
            vx = vx * x + *it;
        diag(i) = 2 * kinetic + vx;
    }
    sub.setConstant(-kinetic);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("tridiagonal eigensolver failed");
    const auto &ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + count);
}

// Two Richardson steps in h^2 from grids with n, 2n+1, 4n+3 interior points (spacing halved).
std::vector<double> extrapolated(const std::vector<double> &v, double mass, double hbar, double half_width, int points,
                                 int count)
{
    const auto a = fd_eigenvalues(v, mass, hbar, half_width, points, count);
    const auto b = fd_eigenvalues(v, mass, hbar, half_width, 2 * points + 1, count);
    const auto c = fd_eigenvalues(v, mass, hbar, half_width, 4 * points + 3, count);
    std::vector<double> out(static_cast<std::size_t>(count));
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double r1 = (4 * b[i] - a[i]) / 3;
        const double r2 = (4 * c[i] - b[i]) / 3;
        out[i] = (16 * r2 - r1) / 15;
    }
    return out;
}

} // namespace

OracleResult schrodinger_oracle(const std::vector<Rational> &potential, double mass, double hbar, int count, double tolerance)
{
    if (count < 1)
        throw std::invalid_argument("eigenvalue count must be positive");
    if (!(mass > 0) || !(hbar > 0))
        throw std::invalid_argument("mass and hbar must be positive");
    const double vmin = static_cast<double>(SplitHamiltonian(Rational(1), potential).minimum_value());
    std::vector<double> v;
    for (const auto &c : potential)
        v.push_back(c.get_d());
    while (!v.empty() && v.back() == 0)
        v.pop_back();
    auto vat = [&](double x) {
        double r = 0;
        for (auto it = v.rbegin(); it != v.rend(); ++it)
            r = r * x + *it;
        return r;
    };

    // Widen the box until the walls sit at ten times the highest wanted level, measured from
    // the bottom of the well.
    double half_width = 2;
    for (int round = 0;; ++round) {
        const auto e = fd_eigenvalues(v, mass, hbar, half_width, 800, count);
        const double top = e.back() - vmin;
        if (std::min(vat(half_width), vat(-half_width)) - vmin >= 10 * top)
            break;
        if (round > 40)
            throw std::runtime_error("box search did not settle");
        half_width *= 1.25;
    }

    OracleResult res;
    res.half_width = half_width;
    int points = 400;
    auto prev = extrapolated(v, mass, hbar, half_width, points, count);
    for (;;) {
        points = 2 * points + 1;
        auto cur = extrapolated(v, mass, hbar, half_width, points, count);
        double change = 0;
        for (std::size_t i = 0; i < cur.size(); ++i)
            change = std::max(change, std::fabs(cur[i] - prev[i]) / std::max(std::fabs(cur[i]), 1e-300));
        res.eigenvalues = cur;
        res.grid_points = 4 * points + 3;
        res.last_change = change;
        if (change < tolerance)
            break;
        if (points > 4000)
            throw std::runtime_error("grid refinement did not converge");
        prev = std::move(cur);
    }
    return res;
}

} // namespace weyl
