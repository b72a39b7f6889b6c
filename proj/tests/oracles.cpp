#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace oracle {

namespace {

using Matrix = std::vector<std::vector<int>>;  // multiplicities; diagonal = loops

bool connected(const Matrix& m) {
    int n = static_cast<int>(m.size());
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w)
            if (m[v][w] > 0 && !seen[w]) {
                seen[w] = 1;
                stack.push_back(w);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

// Sorted per-vertex (loops, neighbour multiplicities, BFS layer sizes).
std::vector<std::vector<int>> invariant(const Matrix& m) {
    int n = static_cast<int>(m.size());
    std::vector<std::vector<int>> rows;
    for (int v = 0; v < n; ++v) {
        std::vector<int> row{m[v][v]};
        std::vector<int> mult;
        for (int w = 0; w < n; ++w)
            if (w != v && m[v][w] > 0) mult.push_back(m[v][w]);
        std::sort(mult.begin(), mult.end());
        row.push_back(-1);
        row.insert(row.end(), mult.begin(), mult.end());
        std::vector<int> dist(n, -1);
        std::queue<int> q;
        dist[v] = 0;
        q.push(v);
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int w = 0; w < n; ++w)
                if (m[x][w] > 0 && dist[w] < 0) {
                    dist[w] = dist[x] + 1;
                    q.push(w);
                }
        }
        std::vector<int> layers(n, 0);
        for (int d : dist) ++layers[d];
        row.push_back(-1);
        row.insert(row.end(), layers.begin(), layers.end());
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

AbstractTropicalCurve to_curve(const Matrix& m) {
    int n = static_cast<int>(m.size());
    std::vector<tropcross::VertexId> vs;
    std::vector<tropcross::Edge> es;
    for (int v = 0; v < n; ++v) vs.push_back(v);
    for (int v = 0; v < n; ++v)
        for (int w = v; w < n; ++w)
            for (int k = 0; k < m[v][w]; ++k) es.push_back({v, w, tropcross::Length(Rational(1))});
    return AbstractTropicalCurve(vs, es);
}

}  // namespace

std::vector<AbstractTropicalCurve> cubic_multigraphs(int n) {
    if (n <= 0 || n % 2 != 0) return {};
    Matrix m(n, std::vector<int>(n, 0));
    std::vector<int> rem(n, 3);
    std::vector<int> last(n, 0);  // smallest partner allowed next, per vertex
    std::map<std::vector<std::vector<int>>, std::vector<AbstractTropicalCurve>> classes;
    std::vector<AbstractTropicalCurve> out;

    // Once vertices 0..v-1 are complete, their neighbourhood must be a prefix 0..t with
    // t >= v. Every connected multigraph has such a (BFS) labelling, so no class is lost.
    auto bfs_prefix = [&](int v) {
        std::vector<char> hit(n, 0);
        for (int u = 0; u < v; ++u) {
            hit[u] = 1;
            for (int w = 0; w < n; ++w)
                if (m[u][w] > 0) hit[w] = 1;
        }
        int t = 0;
        while (t < n && hit[t]) ++t;
        for (int w = t; w < n; ++w)
            if (hit[w]) return false;
        return v == 0 || t > v || t == n;
    };

    std::function<void()> rec = [&]() {
        int v = 0;
        while (v < n && rem[v] == 0) ++v;
        if (!bfs_prefix(v)) return;
        if (v == n) {
            if (!connected(m)) return;
            auto key = invariant(m);
            auto curve = to_curve(m);
            auto& bucket = classes[key];
            for (const auto& c : bucket)
                if (tropcross::find_isometry(curve, c)) return;
            bucket.push_back(curve);
            out.push_back(curve);
            return;
        }
        // Partners of v are chosen in nondecreasing order so each labelled multigraph
        // appears once; a loop is partner v itself.
        int saved = last[v];
        for (int w = std::max(v, last[v]); w < n; ++w) {
            if (w == v) {
                if (rem[v] < 2) continue;
                m[v][v] += 1;
                rem[v] -= 2;
            } else {
                if (rem[w] == 0) continue;
                m[v][w] += 1;
                m[w][v] += 1;
                rem[v] -= 1;
                rem[w] -= 1;
            }
            last[v] = w;
            rec();
            if (w == v) {
                m[v][v] -= 1;
                rem[v] += 2;
            } else {
                m[v][w] -= 1;
                m[w][v] -= 1;
                rem[v] += 1;
                rem[w] += 1;
            }
        }
        last[v] = saved;
    };
    rec();
    return out;
}

std::vector<Rational> solve(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
    std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) throw std::runtime_error("singular system");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            Rational f = a[r][col] / a[col][col];
            for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
    return x;
}

bool linearly_equivalent(const FiniteGraphModel& model, const Config& a, const Config& b) {
    std::size_t n = model.num_vertices;
    std::int64_t da = 0, db = 0;
    for (std::size_t v = 0; v < n; ++v) {
        da += a[v];
        db += b[v];
    }
    if (da != db) return false;
    if (n == 1) return true;
    std::vector<std::vector<Rational>> lap(n, std::vector<Rational>(n, Rational(0)));
    for (auto [u, v] : model.edges) {
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    // Drop vertex 0: L·1 = 0, so scripts are determined up to a constant.
    std::vector<std::vector<Rational>> red(n - 1, std::vector<Rational>(n - 1));
    std::vector<Rational> rhs(n - 1);
    for (std::size_t r = 1; r < n; ++r) {
        for (std::size_t c = 1; c < n; ++c) red[r - 1][c - 1] = lap[r][c];
        rhs[r - 1] = Rational(a[r] - b[r]);
    }
    auto s = solve(red, rhs);
    return std::all_of(s.begin(), s.end(), [](const Rational& x) { return denominator(x) == 1; });
}

namespace {

void for_each_effective(std::size_t n, std::int64_t degree, const std::function<bool(const Config&)>& fn) {
    Config c(n, 0);
    std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t v, std::int64_t left) -> bool {
        if (v + 1 == n) {
            c[v] = left;
            bool stop = fn(c);
            c[v] = 0;
            return stop;
        }
        for (std::int64_t k = 0; k <= left; ++k) {
            c[v] = k;
            if (rec(v + 1, left - k)) {
                c[v] = 0;
                return true;
            }
        }
        c[v] = 0;
        return false;
    };
    if (n > 0) rec(0, degree);
}

}  // namespace

bool effective_equivalent(const FiniteGraphModel& model, const Config& d) {
    std::int64_t deg = 0;
    for (auto x : d) deg += x;
    if (deg < 0) return false;
    bool found = false;
    for_each_effective(model.num_vertices, deg, [&](const Config& e) {
        found = linearly_equivalent(model, d, e);
        return found;
    });
    return found;
}

std::int64_t rank(const FiniteGraphModel& model, const Config& d) {
    std::int64_t deg = 0;
    for (auto x : d) deg += x;
    if (!effective_equivalent(model, d)) return -1;
    for (std::int64_t k = 1; k <= deg + 1; ++k) {
        bool all = true;
        for_each_effective(model.num_vertices, k, [&](const Config& e) {
            Config rest = d;
            for (std::size_t v = 0; v < rest.size(); ++v) rest[v] -= e[v];
            all = effective_equivalent(model, rest);
            return !all;
        });
        if (!all) return k - 1;
    }
    return deg;
}

bool superstable_by_subsets(const FiniteGraphModel& model, const Config& d, std::size_t q) {
    std::size_t n = model.num_vertices;
    if (n > 20) throw std::runtime_error("model too large for subset enumeration");
    for (std::size_t v = 0; v < n; ++v)
        if (v != q && d[v] < 0) return false;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        if (mask & (std::uint64_t{1} << q)) continue;
        bool can_fire = true;
        for (std::size_t v = 0; v < n && can_fire; ++v) {
            if (!(mask & (std::uint64_t{1} << v))) continue;
            std::int64_t out = 0;
            for (auto w : model.adjacency[v])
                if (!(mask & (std::uint64_t{1} << w))) ++out;
            if (d[v] < out) can_fire = false;
        }
        if (can_fire) return false;
    }
    return true;
}

namespace {

std::vector<std::int64_t> unit(int k, int n) {
    k = ((k % (n + 1)) + n + 1) % (n + 1);
    std::vector<std::int64_t> e(n, 0);
    if (k == 0)
        std::fill(e.begin(), e.end(), -1);
    else
        e[k - 1] = 1;
    return e;
}

void step(PointN& p, const Rational& t, const std::vector<std::int64_t>& e) {
    for (std::size_t c = 0; c < p.size(); ++c) p[c] += t * e[c];
}

}  // namespace

Breakpoints breakpoints(const PointN& pu, const PointN& pw, const Rational& ell, int i, int n) {
    Breakpoints out;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (int k = 0; k < n; ++k) {
        auto e = unit(i + k, n);
        for (int r = 0; r < n; ++r) a[r][k] = Rational(e[r]);
    }
    std::vector<Rational> x(n);
    for (int r = 0; r < n; ++r) x[r] = pw[r] - pu[r];
    out.alpha = solve(a, x);
    out.m = 0;
    for (const auto& al : out.alpha) out.m += al < 0 ? -al : al;
    Rational s = (ell - out.m) / 2;
    // α″ = −t with t > 0 and α′ = α + t; the length condition gives 2t = s + |α| − α.
    auto split = [&](const Rational& al, Rational& p, Rational& pp) {
        Rational t = (s + (al < 0 ? -al : al) - al) / 2;
        pp = -t;
        p = al + t;
    };
    split(out.alpha[0], out.alpha0_p, out.alpha0_pp);
    split(out.alpha[1], out.alpha1_p, out.alpha1_pp);
    PointN p = pu;
    out.points.push_back(p);
    step(p, out.alpha0_p, unit(i, n));
    out.points.push_back(p);
    step(p, out.alpha1_p, unit(i + 1, n));
    out.points.push_back(p);
    step(p, out.alpha0_pp, unit(i, n));
    out.points.push_back(p);
    for (int k = n - 1; k >= 2; --k) {
        if (out.alpha[k] == 0) continue;
        step(p, out.alpha[k], unit(i + k, n));
        out.points.push_back(p);
    }
    step(p, out.alpha1_pp, unit(i + 1, n));
    out.points.push_back(p);
    return out;
}

}  // namespace oracle
