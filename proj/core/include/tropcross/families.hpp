#pragma once

#include "tropcross/metric_graph.hpp"
#include "tropcross/plane_curve.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropcross {

// A named family with key=value parameters. Length lists are comma separated and a
// single value is broadcast.
//   theta:          a b c
//   barbell:        a b (loops), c (bridge)
//   lollipop:       loops=l1,l2,l3 bridges=b1,b2,b3
//   windmill:       arms=a1,a2,a3
//   caterpillar:    leaves=n spine=...(n-3 lengths)
//   sun:            n lengths=...(n cycle edges) | blocks=k s=...
//   chain_of_loops: g top=... bottom=... bridge=... bridges=true|false generic=true|false
struct FamilySpec {
    std::string family;
    std::map<std::string, std::string> params;

    bool has(const std::string& key) const { return params.count(key) != 0; }
    std::string to_string() const;
};

// Accepts "family=..." plus key=value tokens; a leading bare token is the family name.
FamilySpec parse_family_spec(const std::vector<std::string>& tokens);

AbstractTropicalCurve make_family(const FamilySpec& spec);

struct PlaneRepresentative {
    PlaneTropicalCurve curve;
    std::int64_t claimed_crossings = 0;
    FamilySpec realized;  // lengths actually drawn
    std::string figure;
};

// Throws Error(Precondition) for specs outside the catalog or violating its length constraints.
PlaneRepresentative plane_representative(const FamilySpec& spec);

struct Genus2Classification {
    int crossing_number = 0;
    FamilySpec witness_spec;
    PlaneRepresentative witness;
};

// Input must canonicalize to a stable genus-2 curve: every vertex trivalent, no infinite edges.
Genus2Classification genus2_crossing_number(const AbstractTropicalCurve& curve);

struct TreeClassification {
    bool crossing_zero = false;
    std::optional<FamilySpec> witness_spec;
    std::optional<PlaneRepresentative> witness;
};

// Input must have genus 0 and canonicalize to finite vertices of degree 3 with infinite leaves.
TreeClassification tree_crossing_zero(const AbstractTropicalCurve& curve);

std::optional<FamilySpec> as_caterpillar(const AbstractTropicalCurve& curve);
std::optional<FamilySpec> as_windmill(const AbstractTropicalCurve& curve);
// Number of legs when the canonical form is a cycle with one infinite leg per vertex.
std::optional<std::int64_t> sun_legs(const AbstractTropicalCurve& curve);

// Chain-of-loops lengths avoiding special relations: loop k has halves 1 and 1 + 1/p_k
// for the k-th prime p_k; bridges have length 1.
FamilySpec generic_chain_of_loops(std::int64_t g);

}  // namespace tropcross
