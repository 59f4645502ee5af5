#include "gradim/text.hpp"

#include <cctype>
#include <limits>
#include <set>

#include "gradim/error.hpp"

namespace gradim {

namespace {

bool is_ident_start(char c)
{
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_digit(char c)
{
    return std::isdigit(static_cast<unsigned char>(c)) != 0;
}

class Cursor {
public:
    Cursor(std::string_view text, const VariableNames& vars, std::size_t line, std::size_t column_offset)
        : text_(text), vars_(vars), line_(line), offset_(column_offset)
    {
    }

    [[noreturn]] void fail(const std::string& message) const { fail_at(pos_, message); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const
    {
        throw ParseError(line_, offset_ + pos + 1, message);
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool at_end()
    {
        skip_space();
        return pos_ == text_.size();
    }

    char peek()
    {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c)
    {
        if (peek() != c)
            return false;
        ++pos_;
        return true;
    }

    mpz_class natural()
    {
        skip_space();
        if (pos_ == text_.size() || !is_digit(text_[pos_]))
            fail("expected a natural number");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_]))
            ++pos_;
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    Exponent exponent()
    {
        const std::size_t at = (skip_space(), pos_);
        const mpz_class e = natural();
        if (e > std::numeric_limits<Exponent>::max()) {
            pos_ = at;
            fail("exponent too large");
        }
        return static_cast<Exponent>(e.get_ui());
    }

    std::size_t variable()
    {
        skip_space();
        if (pos_ == text_.size() || !is_ident_start(text_[pos_]))
            fail("expected a variable name");
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_]))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        auto idx = vars_.index_of(name);
        if (!idx) {
            pos_ = start;
            fail("unknown variable '" + std::string(name) + "'");
        }
        return *idx;
    }

    // factor { '*' factor }, where the first factor has already been
    // established to start at a variable.
    void monomial_factors(ExponentVector& m)
    {
        for (;;) {
            const std::size_t var = variable();
            Exponent e = 1;
            if (accept('^'))
                e = exponent();
            m += ExponentVector::unit(vars_.size(), var, e);
            if (!accept('*'))
                return;
            if (!is_ident_start(peek()))
                fail("expected a variable name");
        }
    }

    ExponentVector monomial()
    {
        ExponentVector m(vars_.size());
        if (is_digit(peek())) {
            const std::size_t at = pos_;
            if (natural() != 1) {
                pos_ = at;
                fail("the only numeric monomial is 1");
            }
            return m;
        }
        monomial_factors(m);
        return m;
    }

    std::size_t pos() const noexcept { return pos_; }

private:
    std::string_view text_;
    const VariableNames& vars_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

bool valid_name(const std::string& s)
{
    if (s.empty() || !is_ident_start(s.front()))
        return false;
    for (char c : s)
        if (!is_ident_char(c))
            return false;
    return true;
}

} // namespace

VariableNames VariableNames::indexed(std::size_t num_vars)
{
    VariableNames v;
    v.indexed_ = true;
    for (std::size_t i = 1; i <= num_vars; ++i)
        v.names_.push_back("x" + std::to_string(i));
    return v;
}

VariableNames::VariableNames(std::vector<std::string> names) : names_(std::move(names))
{
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!valid_name(n))
            throw PreconditionError("invalid variable name '" + n + "'");
        if (!seen.insert(n).second)
            throw PreconditionError("duplicate variable name '" + n + "'");
    }
}

std::optional<std::size_t> VariableNames::index_of(std::string_view name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return i;
    return std::nullopt;
}

std::size_t max_indexed_variable(std::string_view text)
{
    std::size_t best = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        if (!is_ident_start(text[i])) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        while (i < text.size() && is_ident_char(text[i]))
            ++i;
        const std::string_view id = text.substr(start, i - start);
        if (id.size() >= 2 && id[0] == 'x') {
            bool digits = true;
            for (std::size_t k = 1; k < id.size(); ++k)
                digits = digits && is_digit(id[k]);
            if (digits && id[1] != '0' && id.size() <= 7)
                best = std::max(best, static_cast<std::size_t>(std::stoul(std::string(id.substr(1)))));
        }
    }
    return best;
}

ExponentVector parse_monomial(std::string_view text, const VariableNames& vars, std::size_t line,
                              std::size_t column_offset)
{
    Cursor cur(text, vars, line, column_offset);
    if (cur.at_end())
        cur.fail("empty monomial");
    ExponentVector m = cur.monomial();
    if (!cur.at_end())
        cur.fail("unexpected character '" + std::string(1, cur.peek()) + "'");
    return m;
}

Polynomial parse_polynomial(std::string_view text, const VariableNames& vars, std::size_t line,
                            std::size_t column_offset)
{
    Cursor cur(text, vars, line, column_offset);
    Polynomial f(vars.size());
    if (cur.at_end())
        cur.fail("empty polynomial");
    bool first = true;
    while (!cur.at_end()) {
        int sign = 1;
        if (cur.accept('-'))
            sign = -1;
        else if (!cur.accept('+') && !first)
            cur.fail("expected '+' or '-'");
        first = false;

        mpq_class coeff = 1;
        ExponentVector m(vars.size());
        if (is_digit(cur.peek())) {
            mpz_class num = cur.natural();
            mpz_class den = 1;
            if (cur.accept('/')) {
                const std::size_t at = cur.pos();
                den = cur.natural();
                if (den == 0)
                    cur.fail_at(at, "zero denominator");
            }
            coeff = mpq_class(num, den);
            coeff.canonicalize();
            if (cur.accept('*')) {
                if (!is_ident_start(cur.peek()))
                    cur.fail("expected a variable name after '*'");
                cur.monomial_factors(m);
            }
        } else if (is_ident_start(cur.peek())) {
            cur.monomial_factors(m);
        } else {
            cur.fail(cur.peek() == '\0' ? "expected a term" : "unexpected character '" + std::string(1, cur.peek()) + "'");
        }
        f.add_term(m, sign * coeff);
    }
    return f;
}

std::string format_monomial(const ExponentVector& m, const VariableNames& vars)
{
    if (m.size() != vars.size())
        throw DimensionMismatch("monomial has " + std::to_string(m.size()) + " exponents but " +
                                std::to_string(vars.size()) + " variables are named");
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += vars.name(i);
        if (m[i] != 1)
            out += '^' + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

std::string format_polynomial(const Polynomial& f, const VariableNames& vars)
{
    if (f.is_zero())
        return "0";
    std::string out;
    for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
        const auto& [m, c] = *it;
        const bool negative = sgn(c) < 0;
        if (out.empty())
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        const mpq_class mag = abs(c);
        if (m.is_one())
            out += mag.get_str();
        else if (mag == 1)
            out += format_monomial(m, vars);
        else
            out += mag.get_str() + "*" + format_monomial(m, vars);
    }
    return out;
}

} // namespace gradim
