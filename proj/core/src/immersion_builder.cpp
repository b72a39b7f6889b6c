#include "tropcross/immersion_builder.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <random>
#include <set>

namespace tropcross {

IVec basis_vector(int k, int n) {
    k = ((k % (n + 1)) + (n + 1)) % (n + 1);
    IVec e(static_cast<std::size_t>(n), 0);
    if (k == 0)
        std::fill(e.begin(), e.end(), -1);
    else
        e[static_cast<std::size_t>(k - 1)] = 1;
    return e;
}

namespace {

int mod(int a, int n1) { return ((a % n1) + n1) % n1; }

// Coefficients of x in the basis e_i, …, e_{i+n−1}.
std::vector<Rational> expand(const std::vector<Rational>& x, int i, int n) {
    int missing = mod(i + n, n + 1);
    std::vector<Rational> beta(static_cast<std::size_t>(n + 1));
    if (missing == 0) {
        beta[0] = 0;
        for (int k = 1; k <= n; ++k) beta[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k - 1)];
    } else {
        beta[0] = -x[static_cast<std::size_t>(missing - 1)];
        for (int k = 1; k <= n; ++k)
            beta[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k - 1)] + beta[0];
    }
    std::vector<Rational> alpha(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) alpha[static_cast<std::size_t>(j)] = beta[static_cast<std::size_t>(mod(i + j, n + 1))];
    return alpha;
}

void add_scaled(PointN& p, const Rational& s, const IVec& e) {
    for (std::size_t k = 0; k < p.size(); ++k) p[k] += s * e[k];
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

const std::vector<std::uint64_t>& placement_primes() {
    static const std::vector<std::uint64_t> primes = [] {
        std::vector<std::uint64_t> out;
        std::vector<char> sieve(10000, 1);
        for (std::size_t p = 2; p < sieve.size(); ++p) {
            if (!sieve[p]) continue;
            for (std::size_t q = p * p; q < sieve.size(); q += p) sieve[q] = 0;
            if (p >= 1000) out.push_back(p);
        }
        return out;
    }();
    return primes;
}

}  // namespace

Preprocessed remove_loops_and_parallels(const AbstractTropicalCurve& curve) {
    Preprocessed out{curve, 0};
    for (std::size_t e = 0; e < curve.edges().size(); ++e) {
        const Edge& ed = curve.edges()[e];
        if (!ed.is_loop()) continue;
        Rational third = ed.len.value() / 3;
        auto first = subdivide(out.curve, e, third);
        std::size_t rest = first.curve.edges().size() - 1;
        auto second = subdivide(first.curve, rest, third);
        out.curve = std::move(second.curve);
        out.inserted += 2;
    }
    std::map<std::pair<VertexId, VertexId>, std::vector<std::size_t>> classes;
    for (std::size_t e = 0; e < out.curve.edges().size(); ++e) {
        const Edge& ed = out.curve.edges()[e];
        if (ed.len.is_infinite()) continue;
        classes[{std::min(ed.u, ed.v), std::max(ed.u, ed.v)}].push_back(e);
    }
    for (const auto& [key, list] : classes)
        for (std::size_t k = 1; k < list.size(); ++k) {
            Rational half = out.curve.edges()[list[k]].len.value() / 2;
            out.curve = subdivide(out.curve, list[k], half).curve;
            ++out.inserted;
        }
    return out;
}

IncidenceLabels label_incidences(const AbstractTropicalCurve& curve, int n) {
    const int n1 = n + 1;
    std::set<std::pair<VertexId, VertexId>> seen_pairs;
    for (const Edge& e : curve.edges()) {
        if (e.is_loop()) fail(ErrorKind::Precondition, "label_incidences needs a loop-free curve");
        if (e.len.is_infinite()) continue;
        if (!seen_pairs.insert({std::min(e.u, e.v), std::max(e.u, e.v)}).second)
            fail(ErrorKind::Precondition, "label_incidences needs a curve without parallel edges");
    }
    for (auto v : curve.vertices())
        if (!curve.is_infinite_vertex(v) && curve.degree(v) > n1)
            fail(ErrorKind::Precondition, "vertex degree exceeds n+1");

    std::map<Incidence, int> label;
    std::deque<VertexId> queue;
    std::set<VertexId> visited;
    for (auto start : curve.vertices()) {
        if (curve.is_infinite_vertex(start) || visited.count(start)) continue;
        queue.push_back(start);
        visited.insert(start);
        while (!queue.empty()) {
            VertexId v = queue.front();
            queue.pop_front();
            const auto& inc = curve.incident_edges(v);
            std::vector<int> wanted_far(inc.size(), -1);
            for (std::size_t k = 0; k < inc.size(); ++k) {
                VertexId w = curve.other_end(inc[k], v);
                auto it = label.find({w, inc[k]});
                if (it != label.end()) wanted_far[k] = it->second;
            }
            std::vector<int> best, cur(inc.size());
            int best_score = -1;
            std::vector<char> used(static_cast<std::size_t>(n1), 0);
            std::function<void(std::size_t, int)> rec = [&](std::size_t k, int score) {
                if (k == inc.size()) {
                    if (score > best_score) {
                        best_score = score;
                        best = cur;
                    }
                    return;
                }
                for (int l = 0; l < n1; ++l) {
                    if (used[static_cast<std::size_t>(l)]) continue;
                    int f = wanted_far[k];
                    int gain = (f >= 0 && (mod(f - l, n1) == 1 || mod(l - f, n1) == 1)) ? 1 : 0;
                    used[static_cast<std::size_t>(l)] = 1;
                    cur[k] = l;
                    rec(k + 1, score + gain);
                    used[static_cast<std::size_t>(l)] = 0;
                }
            };
            rec(0, 0);
            for (std::size_t k = 0; k < inc.size(); ++k) {
                label[{v, inc[k]}] = best[k];
                VertexId w = curve.other_end(inc[k], v);
                if (!curve.is_infinite_vertex(w) && !visited.count(w)) {
                    visited.insert(w);
                    queue.push_back(w);
                }
            }
        }
    }

    IncidenceLabels out{curve, label, 0};
    std::size_t original_edges = curve.edges().size();
    for (std::size_t e = 0; e < original_edges; ++e) {
        Edge ed = out.curve.edges()[e];
        if (ed.len.is_infinite()) continue;
        int lu = out.label.at({ed.u, e}), lw = out.label.at({ed.v, e});
        if (mod(lu - lw, n1) == 1 || mod(lw - lu, n1) == 1) continue;
        auto sub = subdivide(out.curve, e, ed.len.value() / 2);
        std::size_t second = sub.curve.edges().size() - 1;
        VertexId x = sub.new_vertex;
        out.curve = std::move(sub.curve);
        out.label.erase({ed.v, e});
        out.label[{ed.v, second}] = lw;
        out.label[{x, e}] = mod(lu + 1, n1);
        int c = mod(lw + 1, n1);
        if (c == mod(lu + 1, n1)) c = mod(lw - 1, n1);
        out.label[{x, second}] = c;
        ++out.inserted;
    }
    return out;
}

BreakpointPlan edge_breakpoints(const PointN& pu, const PointN& pw, const Rational& ell, int i, int n) {
    if (n < 2) fail(ErrorKind::Precondition, "edge_breakpoints needs n >= 2");
    if (pu.size() != static_cast<std::size_t>(n) || pw.size() != pu.size())
        fail(ErrorKind::Precondition, "edge_breakpoints dimension mismatch");
    BreakpointPlan bp;
    bp.label = mod(i, n + 1);
    bp.ell = ell;
    std::vector<Rational> x(pu.size());
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = pw[k] - pu[k];
    bp.alpha = expand(x, bp.label, n);
    bp.m = 0;
    for (const auto& a : bp.alpha) bp.m += abs_of(a);
    if (ell <= bp.m) fail(ErrorKind::Precondition, "edge length " + to_string(ell) + " does not exceed m = " + to_string(bp.m));
    Rational slack = (ell - bp.m) / 2;
    bp.alpha0_p = (bp.alpha[0] + abs_of(bp.alpha[0]) + slack) / 2;
    bp.alpha0_pp = bp.alpha[0] - bp.alpha0_p;
    bp.alpha1_p = (bp.alpha[1] + abs_of(bp.alpha[1]) + slack) / 2;
    bp.alpha1_pp = bp.alpha[1] - bp.alpha1_p;

    IVec ei = basis_vector(bp.label, n), ei1 = basis_vector(bp.label + 1, n);
    PointN p = pu;
    bp.points.push_back(p);
    add_scaled(p, bp.alpha0_p, ei);
    bp.points.push_back(p);
    add_scaled(p, bp.alpha1_p, ei1);
    bp.points.push_back(p);
    add_scaled(p, bp.alpha0_pp, ei);
    bp.points.push_back(p);
    for (int k = n - 1; k >= 2; --k) {
        const Rational& a = bp.alpha[static_cast<std::size_t>(k)];
        if (a == 0) continue;
        add_scaled(p, a, basis_vector(bp.label + k, n));
        bp.points.push_back(p);
    }
    bp.points.push_back(pw);
    return bp;
}

namespace {

// For n >= 3 the α₀″ return would stay in the plane through ι(u) spanned by the two
// tangent directions, where it can meet the first segment of another edge at u. Taking
// the e_{i+2}, …, e_{i+n−1} steps first moves it off that plane; the directions, length
// and tangents are unchanged.
void route_off_tangent_plane(BreakpointPlan& bp, int n) {
    if (n < 3) return;
    std::vector<PointN> pts{bp.points[0], bp.points[1], bp.points[2]};
    PointN p = pts.back();
    for (int k = n - 1; k >= 2; --k) {
        const Rational& a = bp.alpha[static_cast<std::size_t>(k)];
        if (a == 0) continue;
        add_scaled(p, a, basis_vector(bp.label + k, n));
        pts.push_back(p);
    }
    add_scaled(p, bp.alpha0_pp, basis_vector(bp.label, n));
    pts.push_back(p);
    pts.push_back(bp.points.back());
    bp.points = std::move(pts);
}

struct Arrangement {
    std::vector<PointN> points;
    std::vector<std::pair<std::size_t, std::size_t>> segments;
    std::vector<std::pair<std::size_t, IVec>> rays;
    std::vector<char> ray_modification;
    std::set<PointN> plan_points;
};

IVec primitive_step(const PointN& from, const PointN& to) { return lattice_displacement(from, to).dir; }

struct Attempt {
    ImmersionPlan plan;
    Arrangement arr;
};

class Builder {
public:
    Builder(const AbstractTropicalCurve& input, int n, std::uint64_t seed) : n_(n), seed_(seed), rng_(splitmix64(seed)) {
        auto pre = remove_loops_and_parallels(input);
        plan_.n = n;
        plan_.seed = seed;
        plan_.preprocessed = pre.curve;
        preprocessing_ = pre.inserted;
        plan_.labels = label_incidences(pre.curve, n);
        const auto& primes = placement_primes();
        plan_.prime = primes[splitmix64(seed ^ 0x5eedULL) % primes.size()];
        std::optional<Rational> shortest;
        for (const Edge& e : plan_.labels.curve.edges())
            if (!e.len.is_infinite() && (!shortest || e.len.value() < *shortest)) shortest = e.len.value();
        plan_.box = (shortest ? *shortest : Rational(1)) / (2 * n);
    }

    int preprocessing() const { return preprocessing_; }

    Attempt draw() {
        Attempt at;
        at.plan = plan_;
        const auto& curve = plan_.labels.curve;
        std::map<VertexId, std::size_t> point_of;
        for (auto v : curve.vertices()) {
            if (curve.is_infinite_vertex(v)) continue;
            PointN p(static_cast<std::size_t>(n_));
            for (auto& c : p) c = plan_.box * Rational(static_cast<long long>(1 + rng_() % (plan_.prime - 1)),
                                                     static_cast<long long>(plan_.prime));
            at.plan.placement[v] = p;
            point_of[v] = at.arr.points.size();
            at.arr.points.push_back(p);
            at.arr.plan_points.insert(p);
        }
        const auto& labels = plan_.labels.label;
        for (std::size_t e = 0; e < curve.edges().size(); ++e) {
            const Edge& ed = curve.edges()[e];
            if (ed.len.is_infinite()) {
                VertexId fin = curve.is_infinite_vertex(ed.u) ? ed.v : ed.u;
                at.arr.rays.push_back({point_of[fin], basis_vector(labels.at({fin, e}), n_)});
                at.arr.ray_modification.push_back(0);
                continue;
            }
            int lu = labels.at({ed.u, e}), lw = labels.at({ed.v, e});
            VertexId from = ed.u, to = ed.v;
            int i = lu;
            if (mod(lu + 1, n_ + 1) != lw) {
                from = ed.v;
                to = ed.u;
                i = lw;
            }
            BreakpointPlan bp = edge_breakpoints(at.plan.placement[from], at.plan.placement[to], ed.len.value(), i, n_);
            route_off_tangent_plane(bp, n_);
            bp.edge = e;
            std::vector<std::size_t> idx{point_of[from]};
            for (std::size_t k = 1; k + 1 < bp.points.size(); ++k) {
                idx.push_back(at.arr.points.size());
                at.arr.points.push_back(bp.points[k]);
                at.arr.plan_points.insert(bp.points[k]);
            }
            idx.push_back(point_of[to]);
            for (std::size_t k = 0; k + 1 < idx.size(); ++k) at.arr.segments.push_back({idx[k], idx[k + 1]});
            for (std::size_t k = 1; k + 1 < bp.points.size(); ++k) {
                IVec prev = primitive_step(bp.points[k - 1], bp.points[k]);
                IVec next = primitive_step(bp.points[k], bp.points[k + 1]);
                IVec ray(prev.size());
                for (std::size_t c = 0; c < ray.size(); ++c) ray[c] = prev[c] - next[c];
                at.arr.rays.push_back({idx[k], primitive_of(ray)});
                at.arr.ray_modification.push_back(1);
            }
            at.plan.edges.push_back(std::move(bp));
        }
        for (auto v : curve.vertices()) {
            if (curve.is_infinite_vertex(v)) continue;
            // One ray per unused label brings the local model up to degree n + 1.
            std::set<int> used;
            for (auto e : curve.incident_edges(v)) used.insert(labels.at({v, e}));
            for (int k = 0; k <= n_; ++k) {
                if (used.count(k)) continue;
                at.arr.rays.push_back({point_of[v], basis_vector(k, n_)});
                at.arr.ray_modification.push_back(1);
            }
        }
        return at;
    }

    BuildReport report(const Attempt& at, int retries) const {
        BuildReport r;
        r.bounded_segments = at.arr.segments.size();
        r.rays = at.arr.rays.size();
        r.segments = r.bounded_segments + r.rays;
        r.preprocessing_subdivisions = preprocessing_;
        r.label_subdivisions = plan_.labels.inserted;
        r.retries = retries;
        r.seed = seed_;
        r.prime = plan_.prime;
        for (std::size_t k = 0; k < at.arr.rays.size(); ++k)
            r.plan_rays.push_back({at.arr.points[at.arr.rays[k].first], at.arr.rays[k].second,
                                   at.arr.ray_modification[k] != 0});
        return r;
    }

private:
    int n_;
    std::uint64_t seed_;
    std::mt19937_64 rng_;
    ImmersionPlan plan_;
    int preprocessing_ = 0;
};

void check_degree(const AbstractTropicalCurve& curve, int max_degree) {
    for (auto v : curve.vertices())
        if (!curve.is_infinite_vertex(v) && curve.degree(v) > max_degree)
            fail(ErrorKind::Precondition, "vertex " + std::to_string(v) + " has degree " +
                                              std::to_string(curve.degree(v)) + " > " + std::to_string(max_degree));
}

bool generic_plane(const PlaneTropicalCurve& c, const Arrangement& arr) {
    for (std::size_t v = 0; v < c.num_vertices(); ++v) {
        auto cls = classify_vertex(c, v);
        if (cls.kind == VertexKind::Invalid) return false;
        if (cls.kind == VertexKind::Node && arr.plan_points.count({c.points()[v][0], c.points()[v][1]})) return false;
    }
    return true;
}

}  // namespace

PlaneImmersion build_immersion(const AbstractTropicalCurve& curve, std::uint64_t seed, int retry_budget) {
    check_degree(curve, 3);
    Builder builder(curve, 2, seed);
    for (int attempt = 0; attempt <= retry_budget; ++attempt) {
        Attempt at = builder.draw();
        std::vector<Point2> pts;
        for (const auto& p : at.arr.points) pts.push_back({p[0], p[1]});
        std::vector<PlaneRay> rays;
        for (const auto& [b, d] : at.arr.rays) rays.push_back({b, {d[0], d[1]}});
        PlaneTropicalCurve plane;
        try {
            plane = PlaneTropicalCurve::from_arrangement(pts, at.arr.segments, rays);
        } catch (const Error&) {
            continue;
        }
        if (!generic_plane(plane, at.arr)) continue;
        if (!is_immersion_of(plane, curve))
            fail(ErrorKind::Validation, "builder produced a curve that does not resolve to its input");
        at.plan.retries = attempt;
        PlaneImmersion out{std::move(plane), at.plan, builder.report(at, attempt)};
        out.report.crossings = total_crossings(out.curve);
        return out;
    }
    fail(ErrorKind::RetryBudget, "no generic placement within " + std::to_string(retry_budget) + " retries");
}

SpatialEmbedding build_embedding(const AbstractTropicalCurve& curve, int n, std::uint64_t seed, int retry_budget) {
    int d = 0;
    for (auto v : curve.vertices())
        if (!curve.is_infinite_vertex(v)) d = std::max(d, curve.degree(v));
    if (n < std::max(3, d - 1))
        fail(ErrorKind::Precondition, "embedding dimension " + std::to_string(n) + " below max(3, d-1) = " +
                                          std::to_string(std::max(3, d - 1)));
    Builder builder(curve, n, seed);
    for (int attempt = 0; attempt <= retry_budget; ++attempt) {
        Attempt at = builder.draw();
        if (!edge_directions_span(at.plan)) continue;
        std::vector<SpatialRay> rays;
        for (const auto& [b, dir] : at.arr.rays) rays.push_back({b, dir});
        SpatialTropicalCurve sc;
        try {
            sc = SpatialTropicalCurve::from_arrangement(static_cast<std::size_t>(n), at.arr.points, at.arr.segments, rays);
        } catch (const Error&) {
            continue;
        }
        if (!is_smooth(sc)) continue;
        if (!equivalent(to_abstract(sc), curve, true))
            fail(ErrorKind::Validation, "builder produced a curve that does not resolve to its input");
        at.plan.retries = attempt;
        SpatialEmbedding out{std::move(sc), at.plan, builder.report(at, attempt)};
        return out;
    }
    fail(ErrorKind::RetryBudget, "no generic placement within " + std::to_string(retry_budget) + " retries");
}

bool edge_directions_span(const ImmersionPlan& plan) {
    for (const auto& bp : plan.edges) {
        std::vector<IVec> dirs;
        for (std::size_t k = 0; k + 1 < bp.points.size(); ++k) {
            IVec d = primitive_step(bp.points[k], bp.points[k + 1]);
            IVec nd = d;
            for (auto& x : nd) x = -x;
            if (std::find(dirs.begin(), dirs.end(), d) == dirs.end() &&
                std::find(dirs.begin(), dirs.end(), nd) == dirs.end())
                dirs.push_back(d);
        }
        std::size_t n = static_cast<std::size_t>(plan.n);
        if (dirs.size() < n) return false;
        BigInt g = 0;
        std::vector<IVec> pick;
        std::function<void(std::size_t)> rec = [&](std::size_t start) {
            if (pick.size() == n) {
                g = boost::multiprecision::gcd(g, maximal_minor_gcd(pick, n));
                return;
            }
            for (std::size_t k = start; k < dirs.size(); ++k) {
                pick.push_back(dirs[k]);
                rec(k + 1);
                pick.pop_back();
            }
        };
        rec(0);
        if (g != 1) return false;
    }
    return true;
}

bool vertices_rational_bounded(const ImmersionPlan& plan, const std::vector<PointN>& points) {
    BigInt lengths = 1;
    std::optional<Rational> shortest;
    for (const Edge& e : plan.labels.curve.edges()) {
        if (e.len.is_infinite()) continue;
        lengths = lcm_of(lengths, denominator(e.len.value()));
        if (!shortest || e.len.value() < *shortest) shortest = e.len.value();
    }
    BigInt placement = BigInt(2 * plan.n) * BigInt(plan.prime) * (shortest ? denominator(*shortest) : BigInt(1));
    BigInt bound = 4 * lcm_of(placement, lengths);
    for (const auto& p : points)
        for (const auto& c : p)
            if (bound % denominator(c) != 0) return false;
    return true;
}

bool trivalent_vertices_separated(const SpatialTropicalCurve& curve) {
    for (const auto& s : curve.segments())
        if (curve.bounded_degree(s.a) >= 3 && curve.bounded_degree(s.b) >= 3) return false;
    return true;
}

}  // namespace tropcross
