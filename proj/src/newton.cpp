#include "ghl/newton.hpp"

#include <algorithm>
#include <numeric>

#include "ghl/error.hpp"
#include "ghl/primes.hpp"

namespace ghl {

FactorDegreeSet::FactorDegreeSet(std::int64_t m, bool fill) : m_(m), bits_(static_cast<std::size_t>(m + 1), fill) {}

bool FactorDegreeSet::contains(std::int64_t k) const noexcept {
    return k >= 0 && k <= m_ && bits_[static_cast<std::size_t>(k)];
}

void FactorDegreeSet::insert(std::int64_t k) {
    if (k < 0 || k > m_) fail(Errc::out_of_range, "degree outside 0..m");
    bits_[static_cast<std::size_t>(k)] = true;
}

void FactorDegreeSet::erase(std::int64_t k) {
    if (k >= 0 && k <= m_) bits_[static_cast<std::size_t>(k)] = false;
}

std::vector<std::int64_t> FactorDegreeSet::degrees() const {
    std::vector<std::int64_t> out;
    for (std::int64_t k = 0; k <= m_; ++k)
        if (bits_[static_cast<std::size_t>(k)]) out.push_back(k);
    return out;
}

std::size_t FactorDegreeSet::size() const {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), true));
}

FactorDegreeSet& FactorDegreeSet::operator&=(const FactorDegreeSet& other) {
    if (other.m_ != m_) fail(Errc::precondition, "degree sets of different polynomial degrees");
    for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] = bits_[i] && other.bits_[i];
    return *this;
}

NewtonPolygon::NewtonPolygon(std::uint64_t prime, std::vector<Valuation> heights)
    : prime_(prime), heights_(std::move(heights)) {
    if (heights_.size() < 2) fail(Errc::precondition, "Newton polygon needs degree >= 1");
    if (heights_.front().is_infinite()) fail(Errc::precondition, "leading coefficient is zero");
    if (heights_.back().is_infinite()) fail(Errc::precondition, "constant term is zero");

    // Monotone chain over finite points; a middle point is dropped when it is
    // on or above the chord, so only genuine slope changes survive.
    for (std::int64_t x = 0; x <= degree(); ++x) {
        const Valuation& h = heights_[static_cast<std::size_t>(x)];
        if (h.is_infinite()) continue;
        const Vertex p{x, h.value()};
        while (vertices_.size() >= 2) {
            const Vertex& a = vertices_[vertices_.size() - 2];
            const Vertex& b = vertices_.back();
            const __int128 lhs = static_cast<__int128>(b.y - a.y) * (p.x - a.x);
            const __int128 rhs = static_cast<__int128>(p.y - a.y) * (b.x - a.x);
            if (lhs >= rhs) {
                vertices_.pop_back();
            } else {
                break;
            }
        }
        vertices_.push_back(p);
    }
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        Edge e;
        e.width = vertices_[i].x - vertices_[i - 1].x;
        e.height = vertices_[i].y - vertices_[i - 1].y;
        e.slope = Rational(e.height, e.width);
        e.lattice_length = e.height == 0 ? e.width : std::gcd(e.width, e.height < 0 ? -e.height : e.height);
        edges_.push_back(e);
    }
}

std::vector<std::int64_t> NewtonPolygon::vertex_xs() const {
    std::vector<std::int64_t> xs;
    xs.reserve(vertices_.size());
    for (const auto& v : vertices_) xs.push_back(v.x);
    return xs;
}

bool NewtonPolygon::is_vertex(std::int64_t x) const {
    return std::any_of(vertices_.begin(), vertices_.end(), [x](const Vertex& v) { return v.x == x; });
}

NewtonPolygon build_polygon(const IntegerPolynomial& poly, std::uint64_t p) {
    if (poly.is_zero()) fail(Errc::precondition, "zero polynomial has no Newton polygon");
    if (poly[0] == 0) fail(Errc::precondition, "constant term must be nonzero");
    std::vector<Valuation> by_power;
    by_power.reserve(static_cast<std::size_t>(poly.degree() + 1));
    for (const auto& c : poly.coeffs()) by_power.push_back(nu(p, c));
    return polygon_from_valuations(p, by_power);
}

NewtonPolygon polygon_from_valuations(std::uint64_t p, std::span<const Valuation> by_power) {
    if (!is_prime(p)) fail(Errc::not_prime, std::to_string(p) + " is not prime");
    std::vector<Valuation> heights(by_power.rbegin(), by_power.rend());
    return NewtonPolygon(p, std::move(heights));
}

Rational newton_function(const NewtonPolygon& np, const Rational& x) {
    if (x < Rational(0) || x > Rational(np.degree())) fail(Errc::out_of_range, "x outside [0, m]");
    const auto& vs = np.vertices();
    for (std::size_t i = 1; i < vs.size(); ++i) {
        if (x <= Rational(vs[i].x)) {
            const Edge& e = np.edges()[i - 1];
            return Rational(vs[i - 1].y) + e.slope * (x - Rational(vs[i - 1].x));
        }
    }
    return Rational(vs.back().y);
}

namespace {

// Minimal dynamic bitset with the single operation subset sums need.
class SumBits {
public:
    explicit SumBits(std::int64_t m) : m_(m), words_(static_cast<std::size_t>(m / 64 + 1), 0) { words_[0] = 1; }

    void shift_or(std::int64_t s) {
        const auto word_shift = static_cast<std::size_t>(s / 64);
        const auto bit_shift = static_cast<unsigned>(s % 64);
        for (std::size_t i = words_.size(); i-- > word_shift;) {
            std::uint64_t v = words_[i - word_shift] << bit_shift;
            if (bit_shift != 0 && i - word_shift >= 1) v |= words_[i - word_shift - 1] >> (64 - bit_shift);
            words_[i] |= v;
        }
        const auto tail = static_cast<unsigned>(m_ % 64 + 1);
        if (tail < 64) words_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    bool test(std::int64_t k) const { return ((words_[static_cast<std::size_t>(k / 64)] >> (k % 64)) & 1U) != 0; }

private:
    std::int64_t m_;
    std::vector<std::uint64_t> words_;
};

}  // namespace

FactorDegreeSet admissible_degrees(const NewtonPolygon& np) {
    const std::int64_t m = np.degree();
    SumBits sums(m);
    for (const Edge& e : np.edges()) {
        // g copies of width w: binary splitting keeps this O(log g) shifts.
        const std::int64_t w = e.segment_width();
        std::int64_t remaining = e.lattice_length;
        for (std::int64_t chunk = 1; remaining > 0; chunk *= 2) {
            const std::int64_t take = std::min(chunk, remaining);
            sums.shift_or(take * w);
            remaining -= take;
        }
    }
    FactorDegreeSet out(m);
    for (std::int64_t k = 0; k <= m; ++k)
        if (sums.test(k)) out.insert(k);
    return out;
}

FactorDegreeSet intersect_admissible(std::span<const NewtonPolygon> polygons) {
    if (polygons.empty()) fail(Errc::precondition, "no polygons to intersect");
    FactorDegreeSet out = admissible_degrees(polygons.front());
    for (const auto& np : polygons.subspan(1)) {
        if (np.degree() != out.max_degree()) fail(Errc::precondition, "polygons of different degrees");
        out &= admissible_degrees(np);
    }
    return out;
}

namespace {

void require_unit_leading(const NewtonPolygon& g) {
    if (g.heights().front() != Valuation(0))
        fail(Errc::prime_divides_leading, "p divides the leading coefficient");
}

}  // namespace

bool lemma_r_excludes(const NewtonPolygon& g, std::int64_t k, std::int64_t r, bool seed_ok) {
    const std::int64_t m = g.degree();
    if (k <= 0 || m < 2 * k) fail(Errc::degree_too_small, "lemma needs m >= 2k > 0");
    require_unit_leading(g);
    if (!seed_ok) fail(Errc::seed_violation, "p divides a_0 a_m of the seed");
    const Rational gk = newton_function(g, Rational(k));
    const Rational tail = newton_function(g, Rational(m)) - newton_function(g, Rational(m - k));
    return gk > Rational(r) && tail < Rational(r + 1);
}

bool lemma_r_excludes(const IntegerPolynomial& g, std::uint64_t p, std::int64_t k, std::int64_t r, bool seed_ok) {
    return lemma_r_excludes(build_polygon(g, p), k, r, seed_ok);
}

std::optional<std::int64_t> lemma_r_witness(const NewtonPolygon& g, std::int64_t k) {
    const std::int64_t r = newton_function(g, Rational(k)).floor_below();
    if (lemma_r_excludes(g, k, r, true)) return r;
    return std::nullopt;
}

bool slope_window_excludes(const NewtonPolygon& g, std::int64_t l, std::int64_t k) {
    const std::int64_t m = g.degree();
    if (l < 0 || k <= l || m < 2 * k) fail(Errc::degree_too_small, "criterion needs m >= 2k > 2l >= 0");
    require_unit_leading(g);
    // x = m - j, so j <= m-l-1 is x >= l+1.
    for (std::int64_t x = l + 1; x <= m; ++x) {
        const Valuation& h = g.heights()[static_cast<std::size_t>(x)];
        if (h.is_finite() && h.value() == 0) return false;
    }
    return g.max_slope() < Rational(1, k);
}

bool slope_window_excludes(const IntegerPolynomial& g, std::uint64_t p, std::int64_t l, std::int64_t k) {
    return slope_window_excludes(build_polygon(g, p), l, k);
}

}  // namespace ghl
