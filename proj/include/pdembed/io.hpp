#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pdembed/diagram.hpp"

namespace pdembed {

// Parses diagrams from CSV (header `birth,death`, rows `diag,diag` for
// Delta, blank line between diagrams) or JSON
// ({"n": 3, "points": [[1.0,2.0], "diag"]}, single object or array).
// Each diagram is Delta-padded to `arity`; pass 0 to keep natural sizes.
std::vector<Diagram> parse_diagrams(const std::string& text, std::size_t arity);
std::vector<Diagram> read_diagrams(const std::string& path, std::size_t arity);

void write_diagrams_csv(std::ostream& os, const std::vector<Diagram>& diagrams);

// Shortest round-trippable decimal form, locale independent.
std::string format_double(double v);

}  // namespace pdembed
