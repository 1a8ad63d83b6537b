#include "weyl/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace weyl
{

Polynomial::Polynomial(int variables) : nvars_(variables)
{
    if (variables < 0 || variables > kMaxVariables)
        throw dimension_error("polynomial variable count out of range: " + std::to_string(variables));
}

Polynomial Polynomial::constant(int variables, const GaussianRational &c)
{
    Polynomial p(variables);
    p.add_term(Monomial{}, c);
    return p;
}

Polynomial Polynomial::variable(int variables, int index)
{
    if (index < 0 || index >= variables)
        throw dimension_error("variable index out of range");
    Monomial m;
    m.exps[static_cast<std::size_t>(index)] = 1;
    return monomial(variables, m, 1);
}

Polynomial Polynomial::monomial(int variables, const Monomial &m, const GaussianRational &c)
{
    Polynomial p(variables);
    for (int k = variables; k < kMaxVariables; ++k)
        if (m.exps[static_cast<std::size_t>(k)] != 0)
            throw dimension_error("monomial uses a variable beyond the polynomial ring");
    p.add_term(m, c);
    return p;
}

bool Polynomial::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{});
}

bool Polynomial::is_real() const
{
    return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.second.is_real(); });
}

int Polynomial::total_degree() const
{
    int d = -1;
    for (const auto &[m, c] : terms_)
        d = std::max(d, m.degree());
    return d;
}

int Polynomial::degree_in(int var) const
{
    int d = -1;
    for (const auto &[m, c] : terms_)
        d = std::max(d, static_cast<int>(m.exps[static_cast<std::size_t>(var)]));
    return d;
}

GaussianRational Polynomial::coefficient(const Monomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? GaussianRational{} : it->second;
}

void Polynomial::add_term(const Monomial &m, const GaussianRational &c)
{
    if (c.is_zero())
        return;
    if (m.degree() > kMaxTotalDegree)
        throw capacity_error("monomial total degree exceeds " + std::to_string(kMaxTotalDegree));
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void Polynomial::check_same(const Polynomial &o) const
{
    if (nvars_ != o.nvars_)
        throw dimension_error("polynomials live in different rings (" + std::to_string(nvars_) + " vs " +
                              std::to_string(o.nvars_) + " variables)");
}

Polynomial &Polynomial::operator+=(const Polynomial &o)
{
    check_same(o);
    for (const auto &[m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &o)
{
    check_same(o);
    for (const auto &[m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Polynomial operator*(const Polynomial &a, const Polynomial &b)
{
    a.check_same(b);
    Polynomial r(a.nvars_);
    if (a.is_zero() || b.is_zero())
        return r;
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            Monomial m;
            int deg = 0;
            for (int k = 0; k < a.nvars_; ++k) {
                const auto idx = static_cast<std::size_t>(k);
                const int e = ma.exps[idx] + mb.exps[idx];
                deg += e;
                m.exps[idx] = static_cast<std::uint8_t>(e);
            }
            if (deg > kMaxTotalDegree)
                throw capacity_error("product exceeds total degree " + std::to_string(kMaxTotalDegree));
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Polynomial &Polynomial::operator*=(const Polynomial &o) { return *this = *this * o; }

Polynomial &Polynomial::operator*=(const GaussianRational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, v] : terms_)
        v *= c;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r(*this);
    for (auto &[m, v] : r.terms_)
        v = -v;
    return r;
}

Polynomial Polynomial::derivative(int var) const
{
    if (var < 0 || var >= nvars_)
        throw dimension_error("derivative index " + std::to_string(var) + " out of range");
    Polynomial r(nvars_);
    const auto idx = static_cast<std::size_t>(var);
    for (const auto &[m, c] : terms_) {
        const int e = m.exps[idx];
        if (e == 0)
            continue;
        Monomial dm = m;
        dm.exps[idx] = static_cast<std::uint8_t>(e - 1);
        r.terms_.emplace_hint(r.terms_.end(), dm, c * GaussianRational(e));
    }
    return r;
}

GaussianRational Polynomial::evaluate(std::span<const GaussianRational> point) const
{
    if (static_cast<int>(point.size()) != nvars_)
        throw dimension_error("evaluation point has wrong dimension");
    GaussianRational sum;
    for (const auto &[m, c] : terms_) {
        GaussianRational t = c;
        for (int k = 0; k < nvars_; ++k)
            t *= pow(point[static_cast<std::size_t>(k)], m.exps[static_cast<std::size_t>(k)]);
        sum += t;
    }
    return sum;
}

long double Polynomial::evaluate_real(std::span<const long double> point) const
{
    if (static_cast<int>(point.size()) != nvars_)
        throw dimension_error("evaluation point has wrong dimension");
    long double sum = 0;
    for (const auto &[m, c] : terms_) {
        // Numerator and denominator separately so small rationals keep extended precision.
        long double t = static_cast<long double>(c.real().get_num().get_d()) /
                        static_cast<long double>(c.real().get_den().get_d());
        for (int k = 0; k < nvars_; ++k) {
            const auto idx = static_cast<std::size_t>(k);
            for (int e = 0; e < m.exps[idx]; ++e)
                t *= point[idx];
        }
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::substitute(int var, const GaussianRational &value) const
{
    if (var < 0 || var >= nvars_)
        throw dimension_error("substitution index out of range");
    const auto idx = static_cast<std::size_t>(var);
    Polynomial r(nvars_);
    for (const auto &[m, c] : terms_) {
        Monomial rm = m;
        rm.exps[idx] = 0;
        r.add_term(rm, c * pow(value, m.exps[idx]));
    }
    return r;
}

Polynomial Polynomial::compose(std::span<const Polynomial> subs) const
{
    if (static_cast<int>(subs.size()) != nvars_ || subs.empty())
        throw dimension_error("compose needs one substitute per variable");
    const int target = subs.front().variables();
    std::vector<std::vector<Polynomial>> powers(subs.size());
    Polynomial r(target);
    for (const auto &[m, c] : terms_) {
        Polynomial t = Polynomial::constant(target, c);
        for (std::size_t k = 0; k < subs.size(); ++k) {
            auto &pk = powers[k];
            if (pk.empty())
                pk.push_back(Polynomial::constant(target, 1));
            while (static_cast<int>(pk.size()) <= m.exps[k])
                pk.push_back(pk.back() * subs[k]);
            if (m.exps[k] > 0)
                t *= pk[m.exps[k]];
        }
        r += t;
    }
    return r;
}

Polynomial Polynomial::extend(int variables) const
{
    if (variables < nvars_)
        throw dimension_error("extend cannot drop variables");
    Polynomial r(variables);
    r.terms_ = terms_;
    return r;
}

Polynomial Polynomial::real_part() const
{
    Polynomial r(nvars_);
    for (const auto &[m, c] : terms_)
        r.add_term(m, c.real());
    return r;
}

Polynomial Polynomial::imag_part() const
{
    Polynomial r(nvars_);
    for (const auto &[m, c] : terms_)
        r.add_term(m, c.imag());
    return r;
}

Polynomial pow(const Polynomial &p, int k)
{
    Polynomial r = Polynomial::constant(p.variables(), 1);
    for (int n = 0; n < k; ++n)
        r *= p;
    return r;
}

Polynomial partial_derivative(const Polynomial &p, int var) { return p.derivative(var); }

std::vector<std::string> default_variable_names(int variables)
{
    std::vector<std::string> names;
    if (variables == 2)
        return {"x", "p"};
    if (variables % 2 == 0) {
        const int n = variables / 2;
        for (int j = 1; j <= n; ++j)
            names.push_back("x" + std::to_string(j));
        for (int j = 1; j <= n; ++j)
            names.push_back("p" + std::to_string(j));
        return names;
    }
    for (int j = 1; j <= variables; ++j)
        names.push_back("y" + std::to_string(j));
    return names;
}

std::string to_string(const Polynomial &p, std::span<const std::string> names)
{
    if (p.is_zero())
        return "0";
    std::vector<std::string> fallback;
    if (names.empty()) {
        fallback = default_variable_names(p.variables());
        names = fallback;
    }
    std::vector<std::pair<Monomial, GaussianRational>> order(p.terms().begin(), p.terms().end());
    std::stable_sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
        if (a.first.degree() != b.first.degree())
            return a.first.degree() > b.first.degree();
        return a.first > b.first;
    });
    std::ostringstream out;
    bool first = true;
    for (const auto &[m, c] : order) {
        std::string mono;
        for (int k = 0; k < p.variables(); ++k) {
            const int e = m.exps[static_cast<std::size_t>(k)];
            if (e == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += names[static_cast<std::size_t>(k)];
            if (e > 1)
                mono += "^" + std::to_string(e);
        }
        GaussianRational coeff = c;
        bool negative = false;
        if (coeff.is_real() && sgn(coeff.real()) < 0) {
            negative = true;
            coeff = -coeff;
        }
        std::string cs = to_string(coeff);
        if (!coeff.is_real())
            cs = "(" + cs + ")";
        std::string term;
        if (mono.empty())
            term = cs;
        else if (coeff == GaussianRational(1))
            term = mono;
        else
            term = cs + "*" + mono;
        if (first)
            out << (negative ? "-" : "") << term;
        else
            out << (negative ? " - " : " + ") << term;
        first = false;
    }
    return out.str();
}

} // namespace weyl
