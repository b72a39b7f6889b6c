#include "commands.hpp"

#include "tropcross/divisor.hpp"
#include "tropcross/families.hpp"
#include "tropcross/immersion_builder.hpp"
#include "tropcross/json_io.hpp"
#include "tropcross/newton_polygon.hpp"
#include "tropcross/svg.hpp"
#include "tropcross/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

namespace tropcross::cli {

namespace {

using ordered = nlohmann::ordered_json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Temp file in the target directory, then rename.
void write_file(const std::string& path, const std::string& data) {
    std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path);
        out << data;
        out.flush();
        if (!out) throw IoError("cannot write " + path);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw IoError("cannot move output into " + path);
    }
}

void emit(const std::string& path, const std::string& data, std::ostream& out) {
    if (path.empty() || path == "-")
        out << data;
    else
        write_file(path, data);
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("TROPCROSS_SEED")) {
        char* end = nullptr;
        auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env) return v;
        throw IoError("TROPCROSS_SEED must be a non-negative integer");
    }
    return 0;
}

ordered provenance(const std::string& input) {
    ordered j;
    j["tool"] = "tropcross";
    j["version"] = kVersion;
    j["input_fnv1a"] = fnv1a_hex(input);
    return j;
}

ordered parsed(const std::string& text) { return ordered::parse(text); }

// Extra generate arguments: "--key value" pairs or "key=value" tokens.
std::vector<std::string> family_tokens(const std::string& family, const std::vector<std::string>& extras) {
    std::vector<std::string> tokens{"family=" + family};
    for (std::size_t i = 0; i < extras.size(); ++i) {
        const std::string& t = extras[i];
        if (t.rfind("--", 0) == 0) {
            auto eq = t.find('=');
            if (eq != std::string::npos) {
                tokens.push_back(t.substr(2));
                continue;
            }
            if (i + 1 >= extras.size()) throw IoError("missing value for " + t);
            tokens.push_back(t.substr(2) + "=" + extras[++i]);
        } else if (t.find('=') != std::string::npos) {
            tokens.push_back(t);
        } else {
            throw IoError("unexpected argument '" + t + "'");
        }
    }
    return tokens;
}

ordered lattice_json(const LatticePoint& p) { return ordered::array({p[0], p[1]}); }

int cmd_generate(const std::string& family, const std::vector<std::string>& extras, const std::string& out_path,
                 const std::string& rep_path, std::ostream& out) {
    FamilySpec spec = parse_family_spec(family_tokens(family, extras));
    AbstractTropicalCurve curve = make_family(spec);
    if (!rep_path.empty()) {
        auto rep = plane_representative(spec);
        curve = make_family(rep.realized);
        write_file(rep_path, to_json(rep.curve));
    }
    emit(out_path, to_json(curve), out);
    return kOk;
}

int cmd_immerse(const std::string& in, std::uint64_t seed, int budget, const std::string& out_path,
                const std::string& report_path, std::ostream& out) {
    std::string text = read_file(in);
    auto curve = abstract_curve_from_json(text);
    auto im = build_immersion(curve, seed, budget);
    bool round_trip = is_valid(im.curve) && is_immersion_of(im.curve, curve);
    ordered report = provenance(text);
    report["seed"] = seed;
    report["build"] = parsed(to_json(im.report));
    ordered mults = ordered::array();
    for (const auto& nd : nodes(im.curve)) mults.push_back(nd.multiplicity);
    report["node_multiplicities"] = mults;
    report["round_trip"] = round_trip;
    emit(out_path, to_json(im.curve), out);
    if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
    return round_trip ? kOk : kValidation;
}

int cmd_embed(const std::string& in, int dim, std::uint64_t seed, int budget, const std::string& out_path,
              const std::string& report_path, std::ostream& out) {
    std::string text = read_file(in);
    auto curve = abstract_curve_from_json(text);
    auto em = build_embedding(curve, dim, seed, budget);
    bool injective = find_contacts(em.curve).empty();
    ordered report = provenance(text);
    report["seed"] = seed;
    report["dim"] = dim;
    report["build"] = parsed(to_json(em.report));
    report["injective"] = injective;
    report["smooth"] = is_smooth(em.curve);
    report["rational_bounded"] = vertices_rational_bounded(em.plan, em.curve.points());
    emit(out_path, to_json(em.curve), out);
    if (!report_path.empty()) write_file(report_path, report.dump(2) + "\n");
    return injective ? kOk : kValidation;
}

std::optional<AbstractTropicalCurve> single_component(const Resolution& res) {
    if (res.components.size() != 1) return std::nullopt;
    return res.components[0];
}

int cmd_analyze(const std::string& in, const std::string& report_path, std::optional<std::int64_t> gonality_max,
                std::ostream& out) {
    std::string text = read_file(in);
    auto curve = plane_curve_from_json(text);
    validate(curve);
    auto res = resolve_nodes(curve);
    auto dual = dual_subdivision(curve);
    auto ids = verify_identities(curve);

    ordered r = provenance(text);
    r["seed"] = nullptr;
    r["genus"] = res.genus();
    r["components"] = res.components.size();
    r["crossings"] = total_crossings(curve);
    ordered mults = ordered::array();
    for (const auto& nd : nodes(curve)) mults.push_back({{"vertex", nd.vertex}, {"multiplicity", nd.multiplicity}});
    r["nodes"] = mults;

    ordered poly;
    poly["interior"] = ids.interior;
    poly["boundary"] = ids.boundary;
    poly["area"] = to_string(ids.area);
    poly["lattice_width"] = ids.width.width;
    poly["width_direction"] = ordered::array({ids.width.direction[0], ids.width.direction[1]});
    ordered regions = ordered::array();
    for (std::size_t k = 0; k < dual.region_slopes.size(); ++k)
        regions.push_back({{"slope", lattice_json(dual.region_slopes[k])}, {"bounded", static_cast<bool>(dual.region_bounded[k])}});
    poly["regions"] = regions;
    poly["subdivision"] = parsed(to_json(dual));
    r["polygon"] = poly;

    ordered checks;
    checks["genus_node"] = {{"holds", ids.genus_node.holds}, {"interior", ids.genus_node.interior},
                            {"genus", ids.genus_node.genus}, {"nodes", ids.genus_node.nodes}};
    checks["pick_newton"] = ids.pick_newton;
    checks["pick_cells"] = ids.pick_cells;
    checks["cell_counts"] = ids.cell_counts;
    checks["parallelograms"] = ids.parallelograms;
    checks["cells_tile"] = ids.cells_tile;
    checks["primitive_edges"] = ids.primitive_edges;
    checks["bounded_regions"] = ids.bounded_regions;
    // Scott's inequality needs an interior lattice point; polygons with none have unbounded b.
    bool scott_applies = ids.boundary > 9 && ids.interior > 0;
    if (scott_applies)
        checks["scott"] = {{"applicable", true}, {"holds", scott_check(ids.interior, ids.boundary)}};
    else
        checks["scott"] = {{"applicable", false}};
    r["checks"] = checks;

    ordered bounds = ordered::array();
    if (auto abs = single_component(res)) {
        try {
            if (auto cert = detect_sprawling(*abs); cert && cert->obstructs_embedding())
                bounds.push_back({{"kind", "sprawling"}, {"crossing_at_least", 1}, {"vertex", cert->vertex}});
        } catch (const Error&) {
        }
        if (auto n = sun_legs(*abs))
            bounds.push_back({{"kind", "sun"}, {"legs", *n}, {"crossing_at_least", sun_lower_bound(*n)}});
        if (gonality_max) {
            auto gon = gonality(*abs, *gonality_max);
            if (gon.gonality && *gon.gonality > 2)
                bounds.push_back({{"kind", "gonality"},
                                  {"gonality_upper", *gon.gonality},
                                  {"conditional", "valid if the vertex-supported search value is the exact gonality"},
                                  {"crossing_at_least", gonality_crossing_lower_bound(*gon.gonality, abs->genus())}});
        }
    }
    r["lower_bounds"] = bounds;
    bool all = ids.all() && (!scott_applies || scott_check(ids.interior, ids.boundary));
    r["all_checks_pass"] = all;
    emit(report_path, r.dump(2) + "\n", out);
    return all ? kOk : kValidation;
}

int cmd_bound(const std::string& in, std::optional<std::int64_t> gon, std::optional<std::int64_t> compute_max,
              std::size_t cap, std::ostream& out) {
    auto curve = abstract_curve_from_json(read_file(in));
    std::int64_t best = 0;
    out << "genus " << curve.genus() << "\n";
    try {
        auto cert = detect_sprawling(curve);
        if (cert && cert->obstructs_embedding()) {
            out << "crossing >= 1 (sprawling certificate at vertex " << cert->vertex << ")\n";
            best = std::max<std::int64_t>(best, 1);
        } else {
            out << "sprawling: no obstruction\n";
        }
    } catch (const Error& e) {
        out << "sprawling: not applicable (" << e.what() << ")\n";
    }
    if (auto n = sun_legs(curve)) {
        auto b = sun_lower_bound(*n);
        out << "crossing >= " << b << " (sun with " << *n << " legs)\n";
        best = std::max(best, b);
    }
    std::optional<std::int64_t> d = gon;
    if (!d && compute_max) {
        std::optional<GonalityResult> g;
        try {
            g = gonality(curve, *compute_max, {1, cap});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Precondition) throw;
            out << "gonality: not computed (" << e.what() << ")\n";
        }
        if (g && g->gonality) {
            d = g->gonality;
            out << "gonality <= " << *d << " (vertex-supported search, refinement " << g->refinement << ")\n";
        } else if (g) {
            out << "gonality: none found up to " << *compute_max << " (exhausted at refinement " << g->refinement
                << ")\n";
        }
    }
    if (d) {
        if (*d > 2) {
            auto b = gonality_crossing_lower_bound(*d, curve.genus());
            out << "crossing >= " << b << " (gonality " << *d << ", genus " << curve.genus()
                << (gon ? ")" : "; valid if the searched value is the exact gonality)") << "\n";
            best = std::max(best, b);
        } else {
            out << "gonality bound: needs gonality > 2\n";
        }
    }
    out << "best lower bound: crossing >= " << best << "\n";
    return kOk;
}

int cmd_rank(const std::string& in, const std::string& div_path, std::int64_t refinement, std::size_t cap,
             std::ostream& out) {
    auto curve = abstract_curve_from_json(read_file(in));
    auto div = divisor_from_json(read_file(div_path));
    std::vector<CurvePoint> support;
    for (const auto& t : div.terms) support.push_back(t.first);
    auto model = uniform_model(curve, support, {refinement, cap});
    auto r = rank(model, model.to_config(div));
    ordered j;
    j["degree"] = div.degree();
    j["rank"] = r;
    j["refinement"] = refinement;
    j["model_vertices"] = model.num_vertices;
    out << j.dump(2) << "\n";
    return kOk;
}

int cmd_gonality(const std::string& in, std::int64_t max_d, std::int64_t refinement, std::size_t cap,
                 std::ostream& out) {
    auto curve = abstract_curve_from_json(read_file(in));
    auto g = gonality(curve, max_d, {refinement, cap});
    ordered j;
    if (g.gonality) {
        j["gonality"] = *g.gonality;
        j["witness"] = parsed(to_json(g.witness));
    } else {
        j["gonality"] = nullptr;
        j["note"] = "<= " + std::to_string(max_d) + " exhausted";
    }
    j["refinement"] = g.refinement;
    j["model_vertices"] = g.model_vertices;
    out << j.dump(2) << "\n";
    return kOk;
}

int cmd_render(const std::string& in, const std::string& out_path, const std::string& dual_path, std::ostream& out) {
    auto curve = plane_curve_from_json(read_file(in));
    emit(out_path, render_curve_svg(curve), out);
    if (!dual_path.empty()) write_file(dual_path, render_dual_svg(dual_subdivision(curve)));
    return kOk;
}

}  // namespace

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tropical curve immersions, crossing certificates and divisor ranks", "tropcross"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    std::string in, out_path, report, rep_path, divisor, dual_path, family;
    std::uint64_t seed = 0;
    int dim = 3, budget = kDefaultRetryBudget;
    std::int64_t max_d = 0, refinement = 1;
    std::size_t cap = 64;
    std::optional<std::int64_t> gon, compute_gon, analyze_gon;
    bool seed_given = false;

    auto* gen = app.add_subcommand("generate", "Write a family member as curve JSON");
    gen->add_option("--family", family, "theta, barbell, lollipop, windmill, caterpillar, sun, chain_of_loops")->required();
    gen->add_option("--out", out_path, "Curve JSON (stdout when omitted)");
    gen->add_option("--representative", rep_path, "Also write the catalog plane drawing");
    gen->allow_extras();

    auto* imm = app.add_subcommand("immerse", "Build a planar immersion");
    imm->add_option("--in", in)->required();
    imm->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
    imm->add_option("--retry-budget", budget);
    imm->add_option("--out", out_path);
    imm->add_option("--report", report);

    auto* emb = app.add_subcommand("embed", "Build an embedding in R^n");
    emb->add_option("--in", in)->required();
    emb->add_option("--dim", dim);
    emb->add_option("--seed", seed)->each([&](const std::string&) { seed_given = true; });
    emb->add_option("--retry-budget", budget);
    emb->add_option("--out", out_path);
    emb->add_option("--report", report);

    auto* ana = app.add_subcommand("analyze", "Certify a plane curve");
    ana->add_option("--in", in)->required();
    ana->add_option("--report", report);
    ana->add_option("--gonality-max", analyze_gon, "Also search gonality up to this degree");

    auto* bnd = app.add_subcommand("bound", "Crossing-number lower bounds for an abstract curve");
    bnd->add_option("--in", in)->required();
    auto* g_opt = bnd->add_option("--gonality", gon, "Known divisorial gonality");
    bnd->add_option("--compute-gonality", compute_gon, "Search gonality up to this degree")->excludes(g_opt);
    bnd->add_option("--max-vertices", cap);

    auto* rnk = app.add_subcommand("rank", "Rank of a divisor");
    rnk->add_option("--in", in)->required();
    rnk->add_option("--divisor", divisor)->required();
    rnk->add_option("--refinement", refinement);
    rnk->add_option("--max-vertices", cap);

    auto* gsub = app.add_subcommand("gonality", "Vertex-supported gonality search");
    gsub->add_option("--in", in)->required();
    gsub->add_option("--max", max_d)->required();
    gsub->add_option("--refinement", refinement);
    gsub->add_option("--max-vertices", cap);

    auto* ren = app.add_subcommand("render", "SVG of a plane curve");
    ren->add_option("--in", in)->required();
    ren->add_option("--out", out_path);
    ren->add_option("--dual", dual_path, "Also write the dual subdivision");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kFormat;
    }

    try {
        if (!seed_given) seed = default_seed();
        if (gen->parsed()) return cmd_generate(family, gen->remaining(), out_path, rep_path, out);
        if (imm->parsed()) return cmd_immerse(in, seed, budget, out_path, report, out);
        if (emb->parsed()) return cmd_embed(in, dim, seed, budget, out_path, report, out);
        if (ana->parsed()) return cmd_analyze(in, report, analyze_gon, out);
        if (bnd->parsed()) return cmd_bound(in, gon, compute_gon, cap, out);
        if (rnk->parsed()) return cmd_rank(in, divisor, refinement, cap, out);
        if (gsub->parsed()) return cmd_gonality(in, max_d, refinement, cap, out);
        if (ren->parsed()) return cmd_render(in, out_path, dual_path, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kFormat;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::Format: return kFormat;
            case ErrorKind::RetryBudget: return kRetryBudget;
            default: return kValidation;
        }
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFormat;
    }
    return kFormat;
}

}  // namespace tropcross::cli
