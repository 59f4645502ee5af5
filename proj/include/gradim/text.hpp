#ifndef GRADIM_TEXT_HPP
#define GRADIM_TEXT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gradim/monomial.hpp"

namespace gradim {

/// Names of the ambient variables. Either an explicit list (`x y z`) or the
/// indexed family x1, ..., xn.
class VariableNames {
public:
    static VariableNames indexed(std::size_t num_vars);
    // Throws PreconditionError on duplicate or malformed names.
    explicit VariableNames(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    bool is_indexed() const noexcept { return indexed_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

private:
    VariableNames() = default;

    std::vector<std::string> names_;
    bool indexed_ = false;
};

// Largest k such that the identifier `xk` occurs in `text`; 0 if none.
std::size_t max_indexed_variable(std::string_view text);

// Parsers report errors as ParseError at (line, column_offset + position + 1).
ExponentVector parse_monomial(std::string_view text, const VariableNames& vars, std::size_t line = 1,
                              std::size_t column_offset = 0);
Polynomial parse_polynomial(std::string_view text, const VariableNames& vars, std::size_t line = 1,
                            std::size_t column_offset = 0);

// Canonical forms: variables in index order, unit exponents omitted, the
// empty product printed as `1`. Polynomial terms are listed from the
// lexicographically largest exponent vector down, separated by " + " / " - ".
std::string format_monomial(const ExponentVector& m, const VariableNames& vars);
std::string format_polynomial(const Polynomial& f, const VariableNames& vars);

} // namespace gradim

#endif
