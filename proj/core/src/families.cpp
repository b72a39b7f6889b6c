#include "tropcross/families.hpp"

#include <algorithm>
#include <sstream>

namespace tropcross {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

std::string join(const std::vector<Rational>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + tropcross::to_string(xs[i]);
    return out;
}

std::int64_t get_int(const FamilySpec& s, const std::string& key, std::optional<std::int64_t> fallback = {}) {
    auto it = s.params.find(key);
    if (it == s.params.end()) {
        if (!fallback) fail(ErrorKind::Validation, s.family + " needs parameter " + key);
        return *fallback;
    }
    Rational r = parse_rational(it->second);
    if (denominator(r) != 1) fail(ErrorKind::Validation, key + " must be an integer");
    return to_int64(numerator(r));
}

bool get_bool(const FamilySpec& s, const std::string& key, bool fallback) {
    auto it = s.params.find(key);
    if (it == s.params.end()) return fallback;
    if (it->second == "true" || it->second == "1") return true;
    if (it->second == "false" || it->second == "0") return false;
    fail(ErrorKind::Validation, key + " must be true or false");
}

std::vector<Rational> get_lengths(const FamilySpec& s, const std::string& key, std::size_t count,
                                  const Rational& fallback) {
    std::vector<Rational> out;
    auto it = s.params.find(key);
    if (it == s.params.end()) {
        out.assign(count, fallback);
    } else {
        for (const auto& t : split(it->second, ',')) out.push_back(parse_rational(t));
        if (out.size() == 1 && count != 1) out.assign(count, out[0]);
        if (out.size() != count)
            fail(ErrorKind::Validation, key + " needs " + std::to_string(count) + " lengths, got " +
                                            std::to_string(out.size()));
    }
    for (const auto& x : out)
        if (x <= 0) fail(ErrorKind::Validation, key + " lengths must be positive");
    return out;
}

Rational get_length(const FamilySpec& s, const std::string& key) { return get_lengths(s, key, 1, Rational(1))[0]; }

void check_keys(const FamilySpec& s, std::initializer_list<const char*> allowed) {
    for (const auto& [k, v] : s.params) {
        bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; });
        if (!ok) fail(ErrorKind::Validation, "unknown parameter '" + k + "' for family " + s.family);
    }
}

std::int64_t nth_prime(std::int64_t k) {
    std::int64_t found = 0;
    for (std::int64_t p = 2;; ++p) {
        bool prime = true;
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) prime = false;
        if (prime && found++ == k) return p;
    }
}

struct ChainLengths {
    std::int64_t g = 0;
    std::vector<Rational> top, bottom, bridge;
    bool bridges = true;
};

ChainLengths chain_lengths(const FamilySpec& s) {
    check_keys(s, {"g", "top", "bottom", "bridge", "bridges", "generic"});
    ChainLengths c;
    c.g = get_int(s, "g");
    if (c.g < 1) fail(ErrorKind::Validation, "chain_of_loops needs g >= 1");
    c.bridges = get_bool(s, "bridges", true);
    if (get_bool(s, "generic", false)) {
        if (s.has("top") || s.has("bottom") || s.has("bridge"))
            fail(ErrorKind::Validation, "generic chain_of_loops takes no explicit lengths");
        for (std::int64_t k = 0; k < c.g; ++k) {
            c.top.push_back(1);
            c.bottom.push_back(1 + Rational(1, nth_prime(k)));
        }
        c.bridge.assign(static_cast<std::size_t>(c.g - 1), Rational(1));
        return c;
    }
    auto n = static_cast<std::size_t>(c.g);
    c.top = get_lengths(s, "top", n, 1);
    c.bottom = get_lengths(s, "bottom", n, 1);
    c.bridge = c.g > 1 ? get_lengths(s, "bridge", n - 1, 1) : std::vector<Rational>{};
    return c;
}

}  // namespace

std::string FamilySpec::to_string() const {
    std::string out = "family=" + family;
    for (const auto& [k, v] : params) out += " " + k + "=" + v;
    return out;
}

FamilySpec parse_family_spec(const std::vector<std::string>& tokens) {
    FamilySpec s;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        auto eq = tokens[i].find('=');
        if (eq == std::string::npos) {
            if (i == 0 && s.family.empty()) {
                s.family = tokens[i];
                continue;
            }
            fail(ErrorKind::Format, "expected key=value, got '" + tokens[i] + "'");
        }
        std::string key = tokens[i].substr(0, eq), value = tokens[i].substr(eq + 1);
        if (key == "family")
            s.family = value;
        else
            s.params[key] = value;
    }
    if (s.family.empty()) fail(ErrorKind::Format, "family name missing");
    return s;
}

FamilySpec generic_chain_of_loops(std::int64_t g) {
    FamilySpec s{"chain_of_loops", {{"g", std::to_string(g)}, {"generic", "true"}}};
    return s;
}

namespace {

Point2 pt(const Rational& x, const Rational& y) { return {x, y}; }

Dir2 dir_between(const Point2& a, const Point2& b) {
    auto d = lattice_displacement({a[0], a[1]}, {b[0], b[1]});
    return {d.dir[0], d.dir[1]};
}

// Plane curve assembled from polylines; every interior bend gets the balancing ray.
class Sketch {
public:
    std::size_t point(const Point2& p) {
        auto [it, fresh] = index_.emplace(p, points_.size());
        if (fresh) points_.push_back(p);
        return it->second;
    }

    void path(const std::vector<Point2>& w, bool closed = false) {
        std::size_t m = w.size();
        for (std::size_t i = 0; i + 1 < m; ++i) segments_.push_back({point(w[i]), point(w[i + 1])});
        if (closed) segments_.push_back({point(w[m - 1]), point(w[0])});
        std::size_t first = closed ? 0 : 1, last = closed ? m : m - 1;
        for (std::size_t i = first; i < last; ++i) {
            const Point2& prev = w[(i + m - 1) % m];
            const Point2& next = w[(i + 1) % m];
            Dir2 a = dir_between(prev, w[i]), b = dir_between(w[i], next);
            if (a == b) continue;
            ray(w[i], {a[0] - b[0], a[1] - b[1]});
        }
    }

    void ray(const Point2& base, Dir2 d) { rays_.push_back({point(base), d}); }

    PlaneTropicalCurve build() const { return PlaneTropicalCurve::from_arrangement(points_, segments_, rays_); }

private:
    std::vector<Point2> points_;
    std::map<Point2, std::size_t> index_;
    std::vector<std::pair<std::size_t, std::size_t>> segments_;
    std::vector<PlaneRay> rays_;
};

// Lengths between consecutive bends of a closed polyline, starting at w[0] (a bend).
std::vector<Rational> closed_walk_lengths(const std::vector<Point2>& w) {
    std::size_t m = w.size();
    std::vector<Rational> out;
    Rational acc = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const Point2& a = w[i];
        const Point2& b = w[(i + 1) % m];
        const Point2& c = w[(i + 2) % m];
        acc += lattice_length({a[0], a[1]}, {b[0], b[1]});
        if (dir_between(a, b) != dir_between(b, c)) {
            out.push_back(acc);
            acc = 0;
        }
    }
    return out;
}

Point2 add(const Point2& p, const Rational& x, const Rational& y) { return {p[0] + x, p[1] + y}; }

using Lattice = std::array<std::int64_t, 2>;

// Boundary lattice points, counterclockwise, of a reflexive polygon with n of them.
std::vector<Lattice> reflexive_boundary(std::int64_t n) {
    switch (n) {
        case 3: return {{1, 0}, {0, 1}, {-1, -1}};
        case 4: return {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        case 5: return {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {0, -1}};
        case 6: return {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}};
        case 7: return {{-1, -1}, {0, -1}, {1, -1}, {1, 0}, {0, 1}, {-1, 1}, {-1, 0}};
        case 8: return {{-1, -1}, {0, -1}, {1, -1}, {1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}};
        case 9: return {{-1, -1}, {0, -1}, {1, -1}, {2, -1}, {1, 0}, {0, 1}, {-1, 2}, {-1, 1}, {-1, 0}};
        default: fail(ErrorKind::Precondition, "no reflexive sun drawing for n = " + std::to_string(n));
    }
}

bool closes_up(const std::vector<Lattice>& p, const std::vector<Rational>& l) {
    Rational x = 0, y = 0;
    for (std::size_t j = 0; j < p.size(); ++j) {
        x += l[j] * p[j][0];
        y += l[j] * p[j][1];
    }
    return x == 0 && y == 0;
}

// Smallest weights in 1..3 (lexicographic) closing the reflexive polygon.
std::vector<Rational> reflexive_default_lengths(std::int64_t n) {
    auto p = reflexive_boundary(n);
    std::vector<std::int64_t> w(p.size(), 1);
    for (;;) {
        std::vector<Rational> l(w.begin(), w.end());
        if (closes_up(p, l)) return l;
        std::size_t i = w.size();
        while (i > 0 && w[i - 1] == 3) w[--i] = 1;
        if (i == 0) fail(ErrorKind::Precondition, "no small closing weights");
        ++w[i - 1];
    }
}

// Closed cycle of the sun pattern with k crossing blocks, scale s.
std::vector<Point2> sun_pattern_cycle(std::int64_t k, const Rational& s) {
    auto node = [&](std::int64_t j) { return pt(2 * s * j, s * j); };
    std::vector<Point2> left{pt(-4 * s, 0), pt(-5 * s, -s), pt(-5 * s, -2 * s), pt(-4 * s, -3 * s), pt(-3 * s, -3 * s)};
    // Strand starting with (1,1) from the first node, and the one starting with (1,0).
    auto strand = [&](bool diagonal, bool& arrives_diagonal) {
        std::vector<Point2> out{node(0)};
        for (std::int64_t j = 0; j + 1 < k; ++j) {
            out.push_back(diagonal ? add(node(j), s, s) : add(node(j), s, 0));
            out.push_back(node(j + 1));
            diagonal = !diagonal;
        }
        arrives_diagonal = diagonal;
        return out;
    };
    bool b_diag = false, a_diag = false;
    auto b = strand(true, b_diag);
    auto a = strand(false, a_diag);
    Point2 last = node(k - 1);
    std::vector<Point2> right;
    for (const auto& t : left) right.push_back({last[0] - t[0], last[1] - t[1]});

    std::vector<Point2> cycle(left.begin(), left.end());
    cycle.insert(cycle.end(), b.begin(), b.end());
    if (b_diag) {
        for (std::size_t i = right.size(); i > 0; --i) cycle.push_back(right[i - 1]);
    } else {
        cycle.insert(cycle.end(), right.begin(), right.end());
    }
    for (std::size_t i = a.size(); i > 0; --i) cycle.push_back(a[i - 1]);
    return cycle;
}

std::vector<Rational> sun_lengths(const FamilySpec& s, std::int64_t& n) {
    if (s.has("blocks")) {
        std::int64_t k = get_int(s, "blocks");
        if (k < 1) fail(ErrorKind::Validation, "sun pattern needs blocks >= 1");
        Rational scale = s.has("s") ? get_length(s, "s") : Rational(1);
        auto l = closed_walk_lengths(sun_pattern_cycle(k, scale));
        if (s.has("n") && get_int(s, "n") != static_cast<std::int64_t>(l.size()))
            fail(ErrorKind::Validation, "sun pattern with " + std::to_string(k) + " blocks has " +
                                            std::to_string(l.size()) + " legs");
        n = static_cast<std::int64_t>(l.size());
        if (s.has("lengths") && get_lengths(s, "lengths", l.size(), 1) != l)
            fail(ErrorKind::Precondition, "sun pattern realizes lengths " + join(l));
        return l;
    }
    n = get_int(s, "n");
    if (n < 1) fail(ErrorKind::Validation, "sun needs n >= 1");
    if (!s.has("lengths") && n >= 3 && n <= 9) return reflexive_default_lengths(n);
    return get_lengths(s, "lengths", static_cast<std::size_t>(n), 1);
}

AbstractTropicalCurve sun_curve(const std::vector<Rational>& l) {
    auto n = static_cast<VertexId>(l.size());
    std::vector<VertexId> vs;
    std::vector<Edge> es;
    for (VertexId j = 0; j < 2 * n; ++j) vs.push_back(j);
    for (VertexId j = 0; j < n; ++j) es.push_back({j, (j + 1) % n, Length(l[static_cast<std::size_t>(j)])});
    std::set<VertexId> inf;
    for (VertexId j = 0; j < n; ++j) {
        es.push_back({j, n + j, Length::infinite()});
        inf.insert(n + j);
    }
    return AbstractTropicalCurve(vs, es, inf);
}

}  // namespace

AbstractTropicalCurve make_family(const FamilySpec& s) {
    const std::string& f = s.family;
    if (f == "theta") {
        check_keys(s, {"a", "b", "c"});
        return AbstractTropicalCurve(
            {0, 1}, {{0, 1, Length(get_length(s, "a"))}, {0, 1, Length(get_length(s, "b"))}, {0, 1, Length(get_length(s, "c"))}});
    }
    if (f == "barbell") {
        check_keys(s, {"a", "b", "c"});
        return AbstractTropicalCurve(
            {0, 1}, {{0, 0, Length(get_length(s, "a"))}, {1, 1, Length(get_length(s, "b"))}, {0, 1, Length(get_length(s, "c"))}});
    }
    if (f == "lollipop") {
        check_keys(s, {"loops", "bridges"});
        auto loops = get_lengths(s, "loops", 3, 1);
        auto bridges = get_lengths(s, "bridges", 3, 1);
        std::vector<Edge> es;
        for (VertexId i = 1; i <= 3; ++i) {
            es.push_back({0, i, Length(bridges[static_cast<std::size_t>(i - 1)])});
            es.push_back({i, i, Length(loops[static_cast<std::size_t>(i - 1)])});
        }
        return AbstractTropicalCurve({0, 1, 2, 3}, es);
    }
    if (f == "windmill") {
        check_keys(s, {"arms"});
        auto arms = get_lengths(s, "arms", 3, 1);
        std::vector<VertexId> vs{0, 1, 2, 3};
        std::vector<Edge> es;
        std::set<VertexId> inf;
        VertexId next = 4;
        for (VertexId i = 1; i <= 3; ++i) {
            es.push_back({0, i, Length(arms[static_cast<std::size_t>(i - 1)])});
            for (int leg = 0; leg < 2; ++leg) {
                vs.push_back(next);
                inf.insert(next);
                es.push_back({i, next++, Length::infinite()});
            }
        }
        return AbstractTropicalCurve(vs, es, inf);
    }
    if (f == "caterpillar") {
        check_keys(s, {"leaves", "spine"});
        std::int64_t n = get_int(s, "leaves");
        if (n < 3) fail(ErrorKind::Validation, "caterpillar needs at least 3 leaves");
        std::int64_t k = n - 2;
        auto spine = get_lengths(s, "spine", static_cast<std::size_t>(k - 1), 1);
        std::vector<VertexId> vs;
        std::vector<Edge> es;
        std::set<VertexId> inf;
        for (VertexId i = 0; i < k; ++i) vs.push_back(i);
        for (VertexId i = 0; i + 1 < k; ++i) es.push_back({i, i + 1, Length(spine[static_cast<std::size_t>(i)])});
        VertexId next = k;
        for (VertexId i = 0; i < k; ++i) {
            int legs = (k == 1) ? 3 : (i == 0 || i == k - 1) ? 2 : 1;
            for (int leg = 0; leg < legs; ++leg) {
                vs.push_back(next);
                inf.insert(next);
                es.push_back({i, next++, Length::infinite()});
            }
        }
        return AbstractTropicalCurve(vs, es, inf);
    }
    if (f == "sun") {
        check_keys(s, {"n", "lengths", "blocks", "s"});
        std::int64_t n = 0;
        return sun_curve(sun_lengths(s, n));
    }
    if (f == "chain_of_loops") {
        auto c = chain_lengths(s);
        std::vector<VertexId> vs;
        std::vector<Edge> es;
        auto g = static_cast<std::size_t>(c.g);
        if (!c.bridges) {
            for (VertexId i = 0; i <= c.g; ++i) vs.push_back(i);
            for (std::size_t k = 0; k < g; ++k) {
                auto u = static_cast<VertexId>(k);
                es.push_back({u, u + 1, Length(c.top[k])});
                es.push_back({u, u + 1, Length(c.bottom[k])});
            }
            return AbstractTropicalCurve(vs, es);
        }
        if (g == 1) return AbstractTropicalCurve({0}, {{0, 0, Length(c.top[0] + c.bottom[0])}});
        // Loop k spans L = 2k and R = 2k + 1; the end loops sit on R_0 and L_{g-1}.
        for (std::size_t k = 0; k < g; ++k) {
            auto l = static_cast<VertexId>(2 * k), r = l + 1;
            if (k == 0) {
                vs.push_back(r);
                es.push_back({r, r, Length(c.top[k] + c.bottom[k])});
            } else if (k + 1 == g) {
                vs.push_back(l);
                es.push_back({l, l, Length(c.top[k] + c.bottom[k])});
            } else {
                vs.push_back(l);
                vs.push_back(r);
                es.push_back({l, r, Length(c.top[k])});
                es.push_back({l, r, Length(c.bottom[k])});
            }
            if (k + 1 < g) es.push_back({r, r + 1, Length(c.bridge[k])});
        }
        return AbstractTropicalCurve(vs, es);
    }
    fail(ErrorKind::Validation, "unknown family '" + f + "'");
}

namespace {

FamilySpec theta_spec(std::vector<Rational> l) {
    std::sort(l.begin(), l.end());
    return {"theta", {{"a", to_string(l[0])}, {"b", to_string(l[1])}, {"c", to_string(l[2])}}};
}

PlaneRepresentative theta_representative(const FamilySpec& spec) {
    std::vector<Rational> l{get_length(spec, "a"), get_length(spec, "b"), get_length(spec, "c")};
    std::sort(l.begin(), l.end());
    const Rational &a = l[0], &b = l[1], &c = l[2];
    Sketch sk;
    PlaneRepresentative out;
    out.realized = theta_spec(l);
    if (a == c) {
        Rational u = a / 4;
        auto P = [&](std::int64_t x, std::int64_t y) { return pt(u * x, u * y); };
        sk.path({P(0, 0), P(1, 0), P(2, 0), P(3, 1), P(2, 1)});
        sk.path({P(0, 0), P(0, 1), P(1, 2), P(2, 2), P(2, 1)});
        sk.path({P(0, 0), P(-1, -1), P(0, -1), P(1, 0), P(2, 1)});
        out.claimed_crossings = 1;
        out.figure = "theta-equal-immersion";
    } else if (a < b) {
        Rational s = (b - a) / 3, t = (c - a) / 3;
        sk.path({pt(0, 0), pt(0, a)});
        sk.path({pt(0, 0), pt(-s, 0), pt(-s, a + s), pt(0, a)});
        sk.path({pt(0, 0), pt(t, -t), pt(t, a), pt(0, a)});
        out.figure = "theta-embedding-distinct-shortest";
    } else {
        Rational s = (c - a) / 6;
        sk.path({pt(0, 0), pt(0, a)});
        sk.path({pt(0, 0), pt(a / 4, a / 4), pt(a / 4, 3 * a / 4), pt(0, a)});
        sk.path({pt(0, 0), pt(-s, -2 * s), pt(-s, a + 2 * s), pt(0, a)});
        out.figure = "theta-embedding-two-shortest";
    }
    out.curve = sk.build();
    return out;
}

PlaneRepresentative barbell_representative(const FamilySpec& spec) {
    Rational l1 = get_length(spec, "a"), l2 = get_length(spec, "b"), c = get_length(spec, "c");
    Rational s = l1 / 3, s2 = l2 / 3;
    Sketch sk;
    sk.path({pt(0, 0), pt(s, 0), pt(0, s), pt(0, 0)});
    sk.path({pt(0, 0), pt(-c, -c)});
    sk.path({pt(-c, -c), pt(-c - s2, -c), pt(-c, -c - s2), pt(-c, -c)});
    PlaneRepresentative out;
    out.curve = sk.build();
    out.realized = spec;
    out.figure = "barbell-embedding";
    return out;
}

PlaneRepresentative windmill_representative(const FamilySpec& spec) {
    check_keys(spec, {"arms"});
    auto arms = get_lengths(spec, "arms", 3, 1);
    Sketch sk;
    Point2 wa = pt(arms[0], 0), wb = pt(0, arms[1]), wc = pt(-arms[2], -arms[2]);
    sk.path({pt(0, 0), wa});
    sk.path({pt(0, 0), wb});
    sk.path({pt(0, 0), wc});
    sk.ray(wa, {0, -1});
    sk.ray(wa, {1, 1});
    sk.ray(wb, {-1, 0});
    sk.ray(wb, {1, 1});
    sk.ray(wc, {0, -1});
    sk.ray(wc, {-1, 0});
    PlaneRepresentative out;
    out.curve = sk.build();
    out.realized = spec;
    out.figure = "windmill-embedding";
    return out;
}

PlaneRepresentative caterpillar_representative(const FamilySpec& spec) {
    check_keys(spec, {"leaves", "spine"});
    std::int64_t n = get_int(spec, "leaves");
    if (n < 3) fail(ErrorKind::Validation, "caterpillar needs at least 3 leaves");
    auto k = static_cast<std::size_t>(n - 2);
    auto spine = get_lengths(spec, "spine", k - 1, 1);
    Sketch sk;
    std::vector<Point2> xs{pt(0, 0)};
    std::vector<Dir2> steps;
    for (std::size_t i = 0; i + 1 < k; ++i) {
        Dir2 d = i % 2 == 0 ? Dir2{1, 0} : Dir2{1, 1};
        steps.push_back(d);
        xs.push_back(add(xs.back(), spine[i] * d[0], spine[i] * d[1]));
    }
    if (k == 1) {
        sk.point(xs[0]);
        for (Dir2 d : {Dir2{1, 0}, Dir2{0, 1}, Dir2{-1, -1}}) sk.ray(xs[0], d);
    } else {
        sk.path(xs);
        sk.ray(xs[0], {0, 1});
        sk.ray(xs[0], {-1, -1});
        if (steps.back() == Dir2{1, 1}) {
            sk.ray(xs.back(), {1, 0});
            sk.ray(xs.back(), {0, 1});
        } else {
            sk.ray(xs.back(), {1, 1});
            sk.ray(xs.back(), {0, -1});
        }
    }
    PlaneRepresentative out;
    out.curve = sk.build();
    out.realized = spec;
    out.figure = "caterpillar-embedding";
    return out;
}

PlaneRepresentative sun_representative(const FamilySpec& spec) {
    check_keys(spec, {"n", "lengths", "blocks", "s"});
    std::int64_t n = 0;
    auto l = sun_lengths(spec, n);
    PlaneRepresentative out;
    Sketch sk;
    if (spec.has("blocks")) {
        std::int64_t k = get_int(spec, "blocks");
        Rational scale = spec.has("s") ? get_length(spec, "s") : Rational(1);
        sk.path(sun_pattern_cycle(k, scale), true);
        out.claimed_crossings = k;
        out.figure = "sun-crossing-blocks";
        out.realized = {"sun", {{"n", std::to_string(n)}, {"blocks", std::to_string(k)}, {"lengths", join(l)}}};
        if (spec.has("s")) out.realized.params["s"] = to_string(scale);
    } else {
        if (n < 3 || n > 9) fail(ErrorKind::Precondition, "sun embedding is drawn for 3 <= n <= 9; use blocks=k otherwise");
        auto p = reflexive_boundary(n);
        if (!closes_up(p, l))
            fail(ErrorKind::Precondition, "sun lengths must satisfy sum l_j p_j = 0 for the reflexive polygon");
        std::vector<Point2> cycle{pt(0, 0)};
        for (std::size_t j = 0; j + 1 < p.size(); ++j) cycle.push_back(add(cycle.back(), -l[j] * p[j][1], l[j] * p[j][0]));
        sk.path(cycle, true);
        out.figure = "sun-embedding";
        out.realized = {"sun", {{"n", std::to_string(n)}, {"lengths", join(l)}}};
    }
    out.curve = sk.build();
    return out;
}

PlaneRepresentative chain_representative(const FamilySpec& spec) {
    auto c = chain_lengths(spec);
    if (!c.bridges) fail(ErrorKind::Precondition, "chain drawing needs bridges");
    if (c.g < 2) fail(ErrorKind::Precondition, "chain drawing needs g >= 2");
    auto g = static_cast<std::size_t>(c.g);
    for (std::size_t k = 1; k + 1 < g; ++k)
        if (c.top[k] != c.bottom[k])
            fail(ErrorKind::Precondition, "both halves of inner loop " + std::to_string(k) + " must have equal length");
    Sketch sk;
    Point2 w = pt(0, 0);
    {
        Rational e = (c.top[0] + c.bottom[0]) / 5;
        sk.path({w, add(w, -e, e), add(w, -2 * e, e), add(w, -2 * e, 0), w});
    }
    for (std::size_t k = 1; k < g; ++k) {
        const Rational& b = c.bridge[k - 1];
        Point2 u = add(w, 2 * b, -b);
        sk.path({w, u});
        if (k + 1 == g) {
            Rational e = (c.top[k] + c.bottom[k]) / 5;
            sk.path({u, add(u, e, -e), add(u, 2 * e, -e), add(u, 2 * e, 0), u});
            break;
        }
        Rational h = c.top[k] / 2;
        w = add(u, 2 * h, -h);
        sk.path({u, add(u, h, 0), w});
        sk.path({u, add(u, h, -h), w});
    }
    PlaneRepresentative out;
    out.curve = sk.build();
    out.realized = spec;
    out.figure = "chain-of-loops-embedding";
    return out;
}

}  // namespace

PlaneRepresentative plane_representative(const FamilySpec& spec) {
    const std::string& f = spec.family;
    if (f == "theta") {
        check_keys(spec, {"a", "b", "c"});
        return theta_representative(spec);
    }
    if (f == "barbell") {
        check_keys(spec, {"a", "b", "c"});
        return barbell_representative(spec);
    }
    if (f == "windmill") return windmill_representative(spec);
    if (f == "caterpillar") return caterpillar_representative(spec);
    if (f == "sun") return sun_representative(spec);
    if (f == "chain_of_loops") return chain_representative(spec);
    if (f == "lollipop") fail(ErrorKind::Precondition, "lollipop has no planar embedding");
    fail(ErrorKind::Validation, "unknown family '" + f + "'");
}

namespace {

struct TrivalentCore {
    AbstractTropicalCurve canonical;
    std::vector<VertexId> finite;
    std::map<VertexId, std::vector<std::pair<VertexId, Rational>>> links;  // finite neighbours
};

// Canonical form whose finite vertices all have degree 3; nullopt otherwise.
std::optional<TrivalentCore> trivalent_core(const AbstractTropicalCurve& curve) {
    TrivalentCore t{canonical_form(curve), {}, {}};
    const auto& c = t.canonical;
    for (auto v : c.vertices()) {
        if (c.is_infinite_vertex(v)) continue;
        if (c.degree(v) != 3) return std::nullopt;
        t.finite.push_back(v);
        t.links[v];
    }
    for (const auto& e : c.edges())
        if (!e.len.is_infinite()) {
            t.links[e.u].push_back({e.v, e.len.value()});
            if (!e.is_loop()) t.links[e.v].push_back({e.u, e.len.value()});
        }
    return t;
}

}  // namespace

std::optional<FamilySpec> as_caterpillar(const AbstractTropicalCurve& curve) {
    if (curve.genus() != 0) return std::nullopt;
    auto core = trivalent_core(curve);
    if (!core || core->finite.empty()) return std::nullopt;
    VertexId start = core->finite.front();
    for (auto v : core->finite) {
        if (core->links[v].size() > 2) return std::nullopt;
        if (core->links[v].size() <= 1) start = v;
    }
    std::vector<Rational> spine;
    VertexId prev = start, cur = start;
    for (;;) {
        std::optional<std::pair<VertexId, Rational>> step;
        for (const auto& nb : core->links[cur])
            if (nb.first != prev) step = nb;
        if (!step) break;
        spine.push_back(step->second);
        prev = cur;
        cur = step->first;
    }
    FamilySpec s{"caterpillar", {{"leaves", std::to_string(core->finite.size() + 2)}}};
    if (!spine.empty()) s.params["spine"] = join(spine);
    return s;
}

std::optional<FamilySpec> as_windmill(const AbstractTropicalCurve& curve) {
    if (curve.genus() != 0) return std::nullopt;
    auto core = trivalent_core(curve);
    if (!core || core->finite.size() != 4) return std::nullopt;
    for (auto v : core->finite) {
        const auto& nbs = core->links[v];
        if (nbs.size() != 3) continue;
        std::vector<Rational> arms;
        for (const auto& [w, len] : nbs) {
            if (core->links[w].size() != 1) return std::nullopt;
            arms.push_back(len);
        }
        return FamilySpec{"windmill", {{"arms", join(arms)}}};
    }
    return std::nullopt;
}

std::optional<std::int64_t> sun_legs(const AbstractTropicalCurve& curve) {
    if (curve.genus() != 1) return std::nullopt;
    auto core = trivalent_core(curve);
    if (!core) return std::nullopt;
    const auto& c = core->canonical;
    for (auto v : core->finite) {
        int legs = 0;
        for (auto e : c.incident_edges(v))
            if (c.edges()[e].len.is_infinite()) ++legs;
        if (legs != 1) return std::nullopt;
    }
    return static_cast<std::int64_t>(core->finite.size());
}

Genus2Classification genus2_crossing_number(const AbstractTropicalCurve& curve) {
    if (curve.genus() != 2) fail(ErrorKind::Precondition, "genus is " + std::to_string(curve.genus()) + ", not 2");
    auto core = trivalent_core(curve);
    if (!core || !core->canonical.infinite_vertices().empty())
        fail(ErrorKind::Precondition, "curve is not stable: needs trivalent vertices and no infinite edges");
    const auto& c = core->canonical;
    Genus2Classification out;
    std::vector<Rational> loops, links;
    for (const auto& e : c.edges()) (e.is_loop() ? loops : links).push_back(e.len.value());
    if (loops.empty()) {
        out.witness_spec = theta_spec(links);
        out.crossing_number = links[0] == links[1] && links[1] == links[2] ? 1 : 0;
    } else {
        out.witness_spec = {"barbell", {{"a", to_string(loops[0])}, {"b", to_string(loops[1])}, {"c", to_string(links[0])}}};
        out.crossing_number = 0;
    }
    out.witness = plane_representative(out.witness_spec);
    return out;
}

TreeClassification tree_crossing_zero(const AbstractTropicalCurve& curve) {
    if (curve.genus() != 0) fail(ErrorKind::Precondition, "genus is " + std::to_string(curve.genus()) + ", not 0");
    if (!trivalent_core(curve)) fail(ErrorKind::Precondition, "tree is not trivalent with infinite leaves");
    TreeClassification out;
    auto spec = as_caterpillar(curve);
    if (!spec) spec = as_windmill(curve);
    if (!spec) return out;
    out.crossing_zero = true;
    out.witness_spec = spec;
    out.witness = plane_representative(*spec);
    return out;
}

}  // namespace tropcross
