#pragma once

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "ghl/newton.hpp"
#include "ghl/poly.hpp"

namespace ghl {

/// One decimal integer per line, lowest power first; '#' starts a comment.
IntegerPolynomial parse_polynomial(std::istream& in);
IntegerPolynomial read_polynomial_file(const std::string& path);
void write_polynomial(std::ostream& out, const IntegerPolynomial& poly);

/// Same format read as raw seed values a_0..a_n (zeros kept).
SeedCoefficients read_seed_file(const std::string& path);

/// Rows x<TAB>y<TAB>is_vertex for x = 0..m; y is "inf" for zero coefficients.
std::string polygon_tsv(const NewtonPolygon& np);
nlohmann::ordered_json polygon_json(const NewtonPolygon& np);
/// Points, hull and edge slopes on a fixed 800x600 viewBox.
std::string polygon_svg(const NewtonPolygon& np);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace ghl
