#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ghl/poly.hpp"
#include "ghl/rational.hpp"
#include "ghl/valuation.hpp"

namespace ghl {

struct Vertex {
    std::int64_t x = 0;
    std::int64_t y = 0;
    friend bool operator==(const Vertex&, const Vertex&) = default;
};

struct Edge {
    Rational slope;
    std::int64_t width = 0;
    std::int64_t height = 0;
    /// Number of minimal lattice segments, gcd(width, |height|); width when flat.
    std::int64_t lattice_length = 0;

    std::int64_t segment_width() const noexcept { return width / lattice_length; }
};

/// Set of possible factor degrees in [0, m].
class FactorDegreeSet {
public:
    FactorDegreeSet() = default;
    explicit FactorDegreeSet(std::int64_t m, bool fill = false);

    std::int64_t max_degree() const noexcept { return m_; }
    bool contains(std::int64_t k) const noexcept;
    void insert(std::int64_t k);
    void erase(std::int64_t k);
    std::vector<std::int64_t> degrees() const;
    std::size_t size() const;

    FactorDegreeSet& operator&=(const FactorDegreeSet& other);
    friend bool operator==(const FactorDegreeSet&, const FactorDegreeSet&) = default;

private:
    std::int64_t m_ = 0;
    std::vector<bool> bits_;
};

/// Lower convex hull of the points (x, nu_p(a_{m-x})), x = 0..m. Point x = 0
/// is the leading coefficient; slopes increase left to right.
class NewtonPolygon {
public:
    NewtonPolygon(std::uint64_t prime, std::vector<Valuation> heights);

    std::uint64_t prime() const noexcept { return prime_; }
    std::int64_t degree() const noexcept { return static_cast<std::int64_t>(heights_.size()) - 1; }
    /// nu_p(a_{m-x}) for x = 0..m.
    const std::vector<Valuation>& heights() const noexcept { return heights_; }
    const std::vector<Vertex>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::vector<std::int64_t> vertex_xs() const;
    bool is_vertex(std::int64_t x) const;

    Rational min_slope() const { return edges_.front().slope; }
    Rational max_slope() const { return edges_.back().slope; }

private:
    std::uint64_t prime_;
    std::vector<Valuation> heights_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
};

NewtonPolygon build_polygon(const IntegerPolynomial& poly, std::uint64_t p);

/// Same polygon from precomputed coefficient valuations indexed by power
/// (entry j is nu_p of the coefficient of x^j).
NewtonPolygon polygon_from_valuations(std::uint64_t p, std::span<const Valuation> by_power);

/// Value of the Newton function at x in [0, m].
Rational newton_function(const NewtonPolygon& np, const Rational& x);

/// Subset sums of all minimal lattice-segment widths (Dumas).
FactorDegreeSet admissible_degrees(const NewtonPolygon& np);

FactorDegreeSet intersect_admissible(std::span<const NewtonPolygon> polygons);

/// True when g_p(k) > r and g_p(m) - g_p(m-k) < r + 1, so no
/// f = sum a_j b_j x^j with p not dividing a_0 a_m has a degree-k factor.
bool lemma_r_excludes(const NewtonPolygon& g, std::int64_t k, std::int64_t r, bool seed_ok);
bool lemma_r_excludes(const IntegerPolynomial& g, std::uint64_t p, std::int64_t k, std::int64_t r, bool seed_ok);

/// The only r worth trying is the largest integer below g_p(k); returns it
/// when the criterion holds for that r.
std::optional<std::int64_t> lemma_r_witness(const NewtonPolygon& g, std::int64_t k);

/// p | b_j for j <= m-l-1 and the rightmost slope is below 1/k: no factor
/// with degree in [l+1, k] for any admissible seed.
bool slope_window_excludes(const NewtonPolygon& g, std::int64_t l, std::int64_t k);
bool slope_window_excludes(const IntegerPolynomial& g, std::uint64_t p, std::int64_t l, std::int64_t k);

}  // namespace ghl
