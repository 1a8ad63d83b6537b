#include "weyl/parse.hpp"

#include <cctype>
#include <regex>

namespace weyl
{

namespace
{

class Parser
{
public:
    Parser(std::string_view text, std::vector<std::pair<std::string, int>> names, int nvars)
        : text_(text), names_(std::move(names)), nvars_(nvars)
    {
    }

    Polynomial run()
    {
        Polynomial p = expression();
        skip();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string &what) const
    {
        throw parse_error("symbol parse error at column " + std::to_string(pos_ + 1) + ": " + what);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Rational integer()
    {
        skip();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected an integer");
        return parse_rational(text_.substr(start, pos_ - start));
    }

    Polynomial expression()
    {
        Polynomial acc(nvars_);
        bool negate = accept('-');
        if (!negate)
            accept('+');
        for (;;) {
            Polynomial t = term();
            if (negate)
                acc -= t;
            else
                acc += t;
            if (accept('+'))
                negate = false;
            else if (accept('-'))
                negate = true;
            else
                return acc;
        }
    }

    Polynomial term()
    {
        Polynomial acc = power();
        for (;;) {
            if (accept('*')) {
                acc *= power();
            } else if (accept('/')) {
                Rational d = integer();
                if (sgn(d) == 0)
                    fail("division by zero");
                acc *= GaussianRational(Rational(1 / d));
            } else {
                return acc;
            }
        }
    }

    Polynomial power()
    {
        Polynomial base = primary();
        if (accept('^')) {
            Rational e = integer();
            if (e > kMaxTotalDegree)
                fail("exponent too large");
            return pow(base, static_cast<int>(e.get_num().get_si()));
        }
        return base;
    }

    Polynomial primary()
    {
        skip();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (accept('(')) {
            Polynomial p = expression();
            if (!accept(')'))
                fail("expected ')'");
            return p;
        }
        if (accept('-'))
            return -power();
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Polynomial::constant(nvars_, integer());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            const std::string_view id = text_.substr(start, pos_ - start);
            for (const auto &[name, slot] : names_)
                if (name == id)
                    return Polynomial::variable(nvars_, slot);
            pos_ = start;
            fail("unknown variable '" + std::string(id) + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    std::vector<std::pair<std::string, int>> names_;
    int nvars_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names)
{
    std::vector<std::pair<std::string, int>> slots;
    for (std::size_t k = 0; k < names.size(); ++k)
        slots.emplace_back(names[k], static_cast<int>(k));
    return Parser(text, std::move(slots), static_cast<int>(names.size())).run();
}

Polynomial parse_symbol(std::string_view text, int dimension)
{
    if (dimension < 1 || 2 * dimension > kMaxVariables)
        throw dimension_error("phase-space dimension out of range");
    std::vector<std::pair<std::string, int>> slots;
    for (int j = 1; j <= dimension; ++j) {
        slots.emplace_back("x" + std::to_string(j), j - 1);
        slots.emplace_back("p" + std::to_string(j), dimension + j - 1);
    }
    if (dimension == 1) {
        slots.emplace_back("x", 0);
        slots.emplace_back("p", 1);
    }
    return Parser(text, std::move(slots), 2 * dimension).run();
}

int infer_dimension(std::string_view text)
{
    static const std::regex indexed("[xp]([0-9]+)");
    int n = 1;
    const std::string s(text);
    for (auto it = std::sregex_iterator(s.begin(), s.end(), indexed); it != std::sregex_iterator(); ++it)
        n = std::max(n, std::stoi((*it)[1].str()));
    return n;
}

} // namespace weyl
