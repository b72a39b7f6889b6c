#pragma once

#include "tropcross/metric_graph.hpp"
#include "tropcross/newton_polygon.hpp"
#include "tropcross/plane_curve.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace tropcross;

inline Rational q(std::int64_t p, std::int64_t d = 1) { return Rational(p, d); }
inline Length len(std::int64_t p, std::int64_t d = 1) { return Length(Rational(p, d)); }

AbstractTropicalCurve theta(const Rational& a, const Rational& b, const Rational& c);
AbstractTropicalCurve cycle(const Rational& total, int vertices = 1);
AbstractTropicalCurve path(const std::vector<Rational>& lengths);
// Complete graph on four vertices, six unit edges.
AbstractTropicalCurve k4();

// Numerators in [1, 9], denominators in [1, 6].
Rational random_length(std::mt19937_64& rng);
AbstractTropicalCurve with_random_lengths(const AbstractTropicalCurve& curve, std::mt19937_64& rng);

// Connected 3-regular multigraph on n vertices (n even) by random stub pairing,
// with random lengths.
AbstractTropicalCurve random_cubic(std::mt19937_64& rng, int n);

// Vertex at the origin, rays (1,0), (0,1), (−1,−1).
PlaneTropicalCurve standard_line();

// Accumulates verify_identities over every plane curve it sees.
class IdentityLedger {
public:
    bool record(const PlaneTropicalCurve& curve, const std::string& label);
    std::size_t curves() const { return curves_; }
    const std::vector<std::string>& failures() const { return failures_; }
    bool ok() const { return failures_.empty(); }

private:
    std::size_t curves_ = 0;
    std::vector<std::string> failures_;
};

}  // namespace testing_support
