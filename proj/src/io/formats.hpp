#pragma once

// Complex files (JSON):
//   abstract:  {"generators": [{"id", "maslov"?, "filt"}], "arrows": [{"from", "to"}]}
//   knot data: {"generators": [{"id", "maslov", "alexander"}],
//               "arrows": [{"from", "to", "nw", "nz"}], "auxiliary_factors"?}

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include "complex/filtered_complex.hpp"
#include "knot/knot_complex.hpp"

namespace knotfilt::io {

using ComplexData = std::variant<FilteredComplex, knot::KnotComplex>;

// Throws InputError on malformed documents, unknown ids or mixed kinds.
ComplexData parse_complex(const std::string& text);

std::string to_json_text(const FilteredComplex& c);
std::string to_json_text(const knot::KnotComplex& d);

// Throws InputError when the file cannot be read.
std::string read_file(const std::string& path);

std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t v);

}  // namespace knotfilt::io
