#ifndef GRADIM_GALLERY_HPP
#define GRADIM_GALLERY_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gradim/monoid.hpp"
#include "gradim/sagbi.hpp"
#include "gradim/series.hpp"

namespace gradim {

/// One expected field of a gallery case. `basis` says where the value comes
/// from: `stated` (given in closed form by the source example), `definition`
/// (immediate from the construction) or `computed` (worked out
/// independently of this code base). Values may refer to the parameters as
/// {N}, {D}, {d}, {G}, optionally with +k or -k.
struct Expectation {
    std::string key;
    std::string value;
    std::string basis;
    bool default_only = false;  // checked only at the fixture's own parameters
};

struct CaseParams {
    std::optional<std::size_t> truncation;    // N
    std::optional<std::size_t> degree_bound;  // D
    std::optional<unsigned> exponent;         // d
    std::optional<std::size_t> growth;        // G, slope window [G/2, G]
    std::optional<std::vector<long>> sequence;  // a_0, a_1, ...; zero past the given entries up to N

    bool empty() const noexcept
    {
        return !truncation && !degree_bound && !exponent && !growth && !sequence;
    }
};

struct GalleryCase {
    std::string id;
    std::string title;
    std::string anchor;  // the mathematical statement the case reproduces
    CaseParams defaults;
    std::vector<Expectation> expected;
    std::vector<std::string> notes;
};

// Parses a fixture in `key = value [| basis]` form. Throws ParseError;
// a fixture without `id` or `anchor` is rejected.
GalleryCase parse_case(std::string_view text);

/// The built-in cases in canonical order.
const std::vector<GalleryCase>& gallery_cases();
std::vector<std::string> gallery_ids();

// Throws PreconditionError listing the valid ids when `id` is unknown.
const GalleryCase& find_case(std::string_view id);

struct SeriesInput {
    GradedSeries series;
    bool idealization = false;  // krull dimension 0 by construction
};

using CaseInput = std::variant<MonoidPresentation, SubalgebraPresentation, SeriesInput>;

/// Materializes the presentation or series of a case, with the fixture's
/// parameters overridden by any set in `params`.
CaseInput build_case(std::string_view id, const CaseParams& params = {});

struct FieldCheck {
    std::string key;
    std::string expected;
    std::string actual;
    std::string basis;
    bool ok = false;
};

struct RunReport {
    std::string id;
    std::string title;
    std::string anchor;
    std::vector<std::pair<std::string, std::string>> fields;  // stable keys in computation order
    std::vector<FieldCheck> checks;
    std::vector<std::string> notes;

    std::optional<std::string> field(std::string_view key) const;
    bool passed() const;
};

/// Runs the case and compares every applicable expectation. Capacity errors
/// are rethrown as Error with the case id in the message.
RunReport run_case(std::string_view id, const CaseParams& params = {});

std::string format_report(const RunReport& r);
std::string format_report_machine(const RunReport& r);

} // namespace gradim

#endif
