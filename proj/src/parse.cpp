#include "infcycle/parse.hpp"

#include <cctype>

#include "infcycle/errors.hpp"

namespace infcycle {

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& vars) : s_(text), vars_(vars) {}

    RationalFunction parse()
    {
        skip();
        if (pos_ >= s_.size())
            fail("empty expression");
        RationalFunction r = expr();
        skip();
        if (pos_ < s_.size())
            fail(std::string("unexpected '") + s_[pos_] + "'");
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw InputError(msg + " in '" + s_ + "'", std::nullopt, static_cast<int>(pos_) + 1);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool eat(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::size_t n() const { return vars_.size(); }

    RationalFunction constant(const Rational& c) const
    {
        return {Polynomial::constant(n(), c), Polynomial::constant(n(), 1)};
    }

    static RationalFunction add(const RationalFunction& a, const RationalFunction& b, bool subtract)
    {
        if (a.den == b.den)
            return {subtract ? a.num - b.num : a.num + b.num, a.den};
        Polynomial x = a.num * b.den;
        Polynomial y = b.num * a.den;
        return {subtract ? x - y : x + y, a.den * b.den};
    }

    static RationalFunction simplify(RationalFunction r)
    {
        if (r.num.is_zero())
            return {r.num, Polynomial::constant(r.num.nvars(), 1)};
        if (r.den.is_constant()) {
            Rational c = r.den.constant_term();
            return {r.num.scaled(1 / c), Polynomial::constant(r.num.nvars(), 1)};
        }
        if (auto q = exact_quotient(r.num, r.den))
            return {*q, Polynomial::constant(r.num.nvars(), 1)};
        return r;
    }

    RationalFunction expr()
    {
        RationalFunction acc = term();
        for (;;) {
            if (eat('+'))
                acc = simplify(add(acc, term(), false));
            else if (eat('-'))
                acc = simplify(add(acc, term(), true));
            else
                return acc;
        }
    }

    RationalFunction term()
    {
        RationalFunction acc = unary();
        for (;;) {
            if (eat('*')) {
                RationalFunction r = unary();
                acc = simplify({acc.num * r.num, acc.den * r.den});
            }
            else if (eat('/')) {
                std::size_t at = pos_;
                RationalFunction r = unary();
                if (r.num.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = simplify({acc.num * r.den, acc.den * r.num});
            }
            else {
                return acc;
            }
        }
    }

    RationalFunction unary()
    {
        if (eat('-')) {
            RationalFunction r = unary();
            return {-r.num, r.den};
        }
        if (eat('+'))
            return unary();
        return power();
    }

    RationalFunction power()
    {
        RationalFunction base = atom();
        if (!eat('^'))
            return base;
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a nonnegative integer exponent");
        std::string digits = s_.substr(start, pos_ - start);
        if (digits.size() > 4) {
            pos_ = start;
            fail("exponent too large");
        }
        unsigned k = static_cast<unsigned>(std::stoul(digits));
        return {base.num.pow(k), base.den.pow(k)};
    }

    RationalFunction atom()
    {
        skip();
        if (pos_ >= s_.size())
            fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            RationalFunction r = expr();
            if (!eat(')'))
                fail("expected ')'");
            return r;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            return constant(Rational(mpz_class(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == name)
                    return {Polynomial::variable(n(), i), Polynomial::constant(n(), 1)};
            pos_ = start;
            fail("unknown variable '" + name + "'");
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(const std::string& text, const std::vector<std::string>& variables)
{
    return Parser(text, variables).parse();
}

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables)
{
    RationalFunction r = parse_rational_function(text, variables);
    if (!r.den.is_constant())
        throw InputError("expected a polynomial, got a non-constant denominator in '" + text + "'");
    return r.num.scaled(1 / r.den.constant_term());
}

std::string trim(const std::string& s)
{
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
        ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
        --b;
    return s.substr(a, b - a);
}

std::vector<ListItem> split_list_items(const std::string& text)
{
    std::vector<ListItem> out;
    int depth = 0;
    std::size_t begin = 0;
    auto push = [&](std::size_t stop) {
        std::string raw = text.substr(begin, stop - begin);
        std::size_t lead = 0;
        while (lead < raw.size() && std::isspace(static_cast<unsigned char>(raw[lead])))
            ++lead;
        out.push_back(ListItem{trim(raw), begin + lead});
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(')
            ++depth;
        else if (c == ')')
            --depth;
        else if (c == ',' && depth == 0) {
            push(i);
            begin = i + 1;
        }
    }
    if (!trim(text.substr(begin)).empty() || !out.empty())
        push(text.size());
    return out;
}

std::vector<std::string> split_list(const std::string& text)
{
    std::vector<std::string> out;
    for (auto& item : split_list_items(text))
        out.push_back(std::move(item.text));
    return out;
}

}  // namespace infcycle
