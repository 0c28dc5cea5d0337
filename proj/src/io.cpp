#include "ghl/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "ghl/error.hpp"

namespace ghl {

namespace {

std::vector<mpz_class> parse_integers(std::istream& in) {
    std::vector<mpz_class> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = line.find_last_not_of(" \t\r");
        std::string token = line.substr(first, last - first + 1);
        if (token.front() == '+') token.erase(0, 1);
        mpz_class v;
        const bool digits = !token.empty() &&
                            std::all_of(token.begin() + (token.front() == '-' ? 1 : 0), token.end(),
                                        [](unsigned char c) { return std::isdigit(c) != 0; }) &&
                            token != "-";
        if (!digits || v.set_str(token, 10) != 0)
            fail(Errc::parse, "line " + std::to_string(lineno) + ": not an integer: '" + token + "'");
        values.push_back(v);
    }
    return values;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::io, "cannot open " + path);
    return in;
}

}  // namespace

IntegerPolynomial parse_polynomial(std::istream& in) {
    auto values = parse_integers(in);
    IntegerPolynomial poly(std::move(values));
    if (poly.is_zero()) fail(Errc::parse, "polynomial file holds no nonzero coefficient");
    return poly;
}

IntegerPolynomial read_polynomial_file(const std::string& path) {
    auto in = open_in(path);
    return parse_polynomial(in);
}

void write_polynomial(std::ostream& out, const IntegerPolynomial& poly) {
    for (const auto& c : poly.coeffs()) out << c.get_str() << '\n';
}

SeedCoefficients read_seed_file(const std::string& path) {
    auto in = open_in(path);
    SeedCoefficients seed;
    seed.values = parse_integers(in);
    seed.name = "custom";
    return seed;
}

std::string polygon_tsv(const NewtonPolygon& np) {
    std::ostringstream out;
    const auto& h = np.heights();
    for (std::int64_t x = 0; x <= np.degree(); ++x)
        out << x << '\t' << h[static_cast<std::size_t>(x)].str() << '\t' << (np.is_vertex(x) ? 1 : 0) << '\n';
    return out.str();
}

nlohmann::ordered_json polygon_json(const NewtonPolygon& np) {
    nlohmann::ordered_json j;
    j["prime"] = np.prime();
    j["degree"] = np.degree();
    auto vs = nlohmann::ordered_json::array();
    for (const auto& v : np.vertices()) vs.push_back({v.x, v.y});
    j["vertices"] = vs;
    auto es = nlohmann::ordered_json::array();
    for (const auto& e : np.edges())
        es.push_back({{"slope", e.slope.str()}, {"width", e.width}, {"height", e.height}, {"lattice_length", e.lattice_length}});
    j["edges"] = es;
    j["admissible_degrees"] = admissible_degrees(np).degrees();
    return j;
}

std::string polygon_svg(const NewtonPolygon& np) {
    constexpr double W = 800, H = 600, pad = 50;
    std::int64_t ymax = 1;
    for (const auto& v : np.heights())
        if (v.is_finite()) ymax = std::max(ymax, v.value());
    const double sx = (W - 2 * pad) / static_cast<double>(std::max<std::int64_t>(np.degree(), 1));
    const double sy = (H - 2 * pad) / static_cast<double>(ymax);
    auto px = [&](std::int64_t x) { return pad + sx * static_cast<double>(x); };
    auto py = [&](std::int64_t y) { return H - pad - sy * static_cast<double>(y); };

    std::ostringstream out;
    out << std::fixed << std::setprecision(2);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
        << "\" stroke=\"#888\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
        << "\" stroke=\"#888\"/>\n";
    const auto& h = np.heights();
    for (std::int64_t x = 0; x <= np.degree(); ++x) {
        const auto& v = h[static_cast<std::size_t>(x)];
        if (v.is_infinite()) continue;
        out << "<circle cx=\"" << px(x) << "\" cy=\"" << py(v.value()) << "\" r=\"3\" fill=\"#36c\"/>\n";
    }
    out << "<polyline fill=\"none\" stroke=\"#c33\" stroke-width=\"2\" points=\"";
    for (const auto& v : np.vertices()) out << px(v.x) << ',' << py(v.y) << ' ';
    out << "\"/>\n";
    const auto& vs = np.vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        const double mx = (px(vs[i].x) + px(vs[i + 1].x)) / 2;
        const double my = (py(vs[i].y) + py(vs[i + 1].y)) / 2 - 8;
        out << "<text x=\"" << mx << "\" y=\"" << my << "\" font-size=\"12\" text-anchor=\"middle\">"
            << np.edges()[i].slope.str() << "</text>\n";
    }
    out << "<text x=\"" << pad << "\" y=\"" << pad / 2 << "\" font-size=\"14\">p = " << np.prime()
        << ", degree " << np.degree() << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(Errc::io, "cannot write " + path);
    out << text;
    if (!out) fail(Errc::io, "write failed for " + path);
}

}  // namespace ghl
