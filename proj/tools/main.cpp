// diskpack command-line tool.
//
// Exit codes: 0 holds / no violation found, 1 violated, 2 unknown or
// precondition not met, 3 malformed input file, 64 bad parameters.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diskpack/bounds.hpp"
#include "diskpack/checker.hpp"
#include "diskpack/constructions.hpp"
#include "diskpack/engine.hpp"
#include "diskpack/io.hpp"
#include "diskpack/svg.hpp"

using namespace diskpack;

namespace {

constexpr int kExitViolated = 1;
constexpr int kExitUnknown = 2;
constexpr int kExitMalformed = 3;
constexpr int kExitUsage = 64;

struct Globals {
    std::uint64_t seed = 0;
    double tolerance = kDefaultTolerance;
    std::string out;
    std::string format = "text";
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Emits a result record: structured JSON to --out or stdout, plus a
/// human-readable summary in text mode.
void emit(const Globals& g, const ResultRecord& rec, const std::string& summary, bool out_is_record = true) {
    const std::string text = serialize(to_json(rec));
    if (out_is_record && !g.out.empty()) write_text_file(g.out, text);
    if (g.format == "structured")
        std::cout << text;
    else
        std::cout << summary;
}

std::string fixed(double v, int digits = 6) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::vector<double> parse_numbers(const std::string& s, std::size_t count, const char* what) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError(std::string("cannot parse ") + what + ": " + s);
        }
    }
    if (out.size() != count) throw UsageError(std::string(what) + " needs " + std::to_string(count) + " numbers");
    return out;
}

Box parse_box(const std::string& s) {
    const auto v = parse_numbers(s, 4, "window (xmin,xmax,ymin,ymax)");
    return {v[0], v[1], v[2], v[3]};
}

// ---- construct ----

struct ConstructArgs {
    std::string name;
    int d = 2;
    double a = 0.5;
    double inflation = 0.0;
    double slide = 0.0;
    std::string kind = "pack2";
    std::optional<double> scale;
    std::string window = "-10,10,-10,10";
    std::string basis = "10,0,0,10";
    double radius = 1.0;
};

int cmd_construct(const Globals& g, const ConstructArgs& c) {
    Json doc;
    Json inputs{{"name", c.name}};
    std::string summary;
    if (c.name == "hex-packing" || c.name == "hex-covering" || c.name == "sect5" || c.name == "greedy") {
        std::optional<PeriodicArrangement> a;
        if (c.name == "hex-packing") {
            a = hex_packing();
        } else if (c.name == "hex-covering") {
            inputs["inflation"] = c.inflation;
            a = hex_covering(c.inflation);
        } else if (c.name == "sect5") {
            inputs["d"] = c.d;
            inputs["a"] = c.a;
            a = sect5_covering(c.d, c.a);
        } else {
            const auto b = parse_numbers(c.basis, 4, "basis (b11,b12,b21,b22)");
            inputs["basis"] = b;
            inputs["radius"] = c.radius;
            a = greedy_saturate(Lattice::planar({b[0], b[1]}, {b[2], b[3]}), c.radius, g.seed);
        }
        doc = to_json(*a);
        summary = "density " + fixed(density(*a)) + "\n";
    } else if (c.name == "split") {
        inputs["slide"] = c.slide;
        inputs["window"] = c.window;
        const auto pts = split_packing(c.slide).centers_in_window(parse_box(c.window));
        doc = to_json(Cluster(pts));
        summary = std::to_string(pts.size()) + " centers\n";
    } else if (c.name == "cluster") {
        const ClusterKind kind = parse_cluster_kind(c.kind);
        inputs["kind"] = c.kind;
        const double scale = c.scale.value_or(2.0);
        if (c.scale) inputs["scale"] = *c.scale;
        const Cluster cl = make_cluster(kind, scale);
        doc = to_json(cl);
        summary = std::to_string(cl.size()) + " centers\n";
    } else {
        throw UsageError("unknown construction: " + c.name +
                         " (expected hex-packing, hex-covering, sect5, split, cluster, greedy)");
    }
    const std::string text = serialize(doc);
    if (!g.out.empty())
        write_text_file(g.out, text);
    if (g.format == "structured") {
        ResultRecord rec{"construct", inputs, doc, kToolVersion, g.seed};
        std::cout << serialize(to_json(rec));
    } else {
        if (g.out.empty()) std::cout << text;
        std::cout << summary;
    }
    return 0;
}

// ---- check ----

struct CheckArgs {
    std::string file;
    std::string mode = "saturation";
    int n = 1;
    double resolution = 0.02;
    std::optional<double> window;
    bool override_window = false;
    std::optional<double> target;
};

int cmd_check(const Globals& g, const CheckArgs& c) {
    const PeriodicArrangement a = arrangement_from_json(read_json_file(c.file));
    if (a.dim() != 2) throw UsageError("checks need a planar arrangement");
    Json inputs{{"file", c.file}, {"mode", c.mode}, {"n", c.n}, {"resolution", c.resolution}, {"tolerance", g.tolerance}};
    if (c.window) inputs["window"] = *c.window;
    ResultRecord rec{"check", inputs, {}, kToolVersion, g.seed};
    int code = 0;
    std::string summary;

    if (c.mode == "packing") {
        const PackingVerdict v = is_packing(a, g.tolerance);
        rec.result = to_json(v);
        code = v.certified ? 0 : kExitViolated;
        summary = std::string(v.certified ? "certified-yes" : "certified-no") + " (min center distance " +
                  fixed(v.min_distance, 9) + ")\n";
    } else if (c.mode == "covering") {
        const double target = c.target.value_or(a.radius());
        rec.inputs["target"] = target;
        const CoverVerdict v = covering_check(a, target, 0.0, g.tolerance);
        rec.result = to_json(v);
        code = v.status == CoverStatusKind::certified_yes ? 0 : v.status == CoverStatusKind::certified_no ? kExitViolated
                                                                                                        : kExitUnknown;
        summary = to_string(v.status) + " at radius " + fixed(target, 9) + "\n";
    } else if (c.mode == "saturation" || c.mode == "reduction") {
        CheckConfig cfg;
        cfg.n = c.n;
        cfg.window_radius = c.window;
        cfg.override_window = c.override_window;
        cfg.placement_grid = c.resolution;
        cfg.seed = g.seed;
        cfg.tolerance = g.tolerance;
        // A window below the locality radius is a parameter error, not a verdict.
        try {
            cfg.window(a.radius());
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        Verdict v;
        try {
            v = c.mode == "saturation" ? check_saturation(a, cfg) : check_reduction(a, cfg);
        } catch (const std::invalid_argument& e) {
            rec.result = {{"status", "precondition-failed"}, {"reason", e.what()}};
            emit(g, rec, std::string("precondition not met: ") + e.what() + "\n");
            return kExitUnknown;
        }
        rec.result = to_json(v);
        code = v.status == VerdictStatus::violated ? kExitViolated : 0;
        summary = to_string(v.status) + " (n=" + std::to_string(v.n) + ", resolution " + fixed(v.resolution, 4) + ")\n";
        if (v.witness) {
            const WitnessMode mode = c.mode == "saturation" ? WitnessMode::saturation : WitnessMode::reduction;
            const bool ok = verify_witness(a, *v.witness, mode, g.tolerance);
            rec.result["witness_verified"] = ok;
            summary += "witness: remove " + std::to_string(v.witness->removed.size()) + ", add " +
                       std::to_string(v.witness->added.size()) + ", margin " + fixed(v.witness->margin, 9) +
                       (ok ? " (re-verified)\n" : " (RE-VERIFICATION FAILED)\n");
            for (const Point& p : v.witness->added) summary += "  add (" + fixed(p.x) + ", " + fixed(p.y) + ")\n";
        }
    } else {
        throw UsageError("unknown check mode: " + c.mode + " (expected packing, covering, saturation, reduction)");
    }
    emit(g, rec, summary);
    return code;
}

// ---- bound ----

struct BoundArgs {
    std::optional<std::string> cluster;
    std::optional<double> scale;
    bool optimize_scale = false;
    bool asymptotic = false;
    bool constants = false;
    int d = 2;
    long long n = 100;
    double delta = 0.9068996821171089;
    double volume = 3.141592653589793;
};

int cmd_bound(const Globals& g, const BoundArgs& b) {
    ResultRecord rec{"bound", Json::object(), {}, kToolVersion, std::nullopt};
    std::string summary;
    const int modes = (b.cluster ? 1 : 0) + (b.asymptotic ? 1 : 0) + (b.constants ? 1 : 0);
    if (modes != 1) throw UsageError("bound needs exactly one of --cluster, --asymptotic, --constants");
    if (b.cluster) {
        const ClusterKind kind = parse_cluster_kind(*b.cluster);
        rec.inputs["cluster"] = *b.cluster;
        BoundReport r;
        if (is_packing_kind(kind)) {
            r = cluster_packing_bound(kind);
        } else {
            if (b.scale && b.optimize_scale) throw UsageError("--scale and --optimize-scale are exclusive");
            rec.inputs["optimize_scale"] = !b.scale.has_value();
            if (b.scale) rec.inputs["scale"] = *b.scale;
            r = cluster_covering_bound(kind, b.scale);
        }
        rec.result = to_json(r);
        summary = "cluster      " + to_string(kind) + " (n=" + std::to_string(r.n) + ", " + to_string(r.side) + ")\n";
        if (r.scale) summary += "scale        " + fixed(*r.scale) + "\n";
        summary += "domain area  [" + fixed(r.domain_area.lower, 9) + ", " + fixed(r.domain_area.upper, 9) + "] " +
                   to_string(r.domain_area.method) + "\n";
        summary += "bound        " + fixed(r.bound) + "\n";
        if (r.paper_value) summary += "paper value  " + fixed(*r.paper_value) + "  (abs err " + fixed(*r.abs_err, 9) + ")\n";
        if (!r.note.empty()) summary += "note         " + r.note + "\n";
    } else if (b.asymptotic) {
        rec.inputs = {{"d", b.d}, {"n", b.n}, {"delta", b.delta}, {"volume", b.volume}};
        double v;
        try {
            v = asymptotic_saturation_bound(b.delta, b.volume, b.d, b.n);
        } catch (const std::domain_error& e) {
            rec.result = {{"value", nullptr}, {"reason", e.what()}};
            emit(g, rec, std::string("vacuous: ") + e.what() + "\n");
            return kExitUnknown;
        }
        rec.result = {{"value", v}};
        summary = "asymptotic saturation bound " + fixed(v) + "\n";
    } else {
        Json table = Json::array();
        for (const NamedConstant& c : known_constants()) {
            Json row{{"name", c.name}, {"expression", c.expression}, {"conjectural", c.conjectural}, {"infinite", c.infinite}};
            row["value"] = std::isfinite(c.value) ? Json(c.value) : Json(nullptr);
            table.push_back(row);
            summary += c.name + std::string(16 - std::min<std::size_t>(15, c.name.size()), ' ') +
                       (c.infinite ? std::string("inf") : std::isnan(c.value) ? c.expression : fixed(c.value)) +
                       (c.conjectural ? "  (conjectured)" : "") + "\n";
        }
        rec.result = table;
    }
    emit(g, rec, summary);
    return 0;
}

// ---- density ----

struct DensityArgs {
    std::string file;
    std::optional<double> window_radius;
    std::string center = "0,0";
};

int cmd_density(const Globals& g, const DensityArgs& d) {
    const Json doc = read_json_file(d.file);
    const PeriodicArrangement a = arrangement_from_json(doc);
    ResultRecord rec{"density", {{"file", d.file}}, {}, kToolVersion, std::nullopt};
    std::string summary;
    const double dens = density(a);
    rec.result = {{"density", dens}};
    summary = "density " + fixed(dens, 9) + "\n";
    if (d.window_radius) {
        if (a.dim() != 2) throw UsageError("relative density needs a planar arrangement");
        const auto c = parse_numbers(d.center, 2, "center");
        const double rel = relative_density(a, Disk{{c[0], c[1]}, *d.window_radius});
        rec.inputs["window_radius"] = *d.window_radius;
        rec.inputs["center"] = c;
        rec.result["relative_density"] = rel;
        summary += "relative density in window " + fixed(rel, 9) + "\n";
    }
    emit(g, rec, summary);
    return 0;
}

// ---- optimize ----

struct OptimizeArgs {
    std::string file;
    std::string objective = "min-density-packing";
    int iterations = 200;
    int constraint_n = 1;
    double resolution = 0.05;
    double cooling = 0.99;
    std::string audit;
};

int cmd_optimize(const Globals& g, const OptimizeArgs& o) {
    const PeriodicArrangement a = arrangement_from_json(read_json_file(o.file));
    SearchConfig cfg;
    cfg.seed = g.seed;
    cfg.iterations = o.iterations;
    cfg.constraint_n = o.constraint_n;
    cfg.resolution = o.resolution;
    cfg.cooling = o.cooling;
    cfg.tolerance = g.tolerance;
    const Objective obj = parse_objective(o.objective);
    std::optional<OptimizeResult> res;
    try {
        res = optimize(a, obj, cfg);
    } catch (const std::invalid_argument& e) {
        std::cerr << "precondition not met: " << e.what() << "\n";
        return kExitUnknown;
    }
    const OptimizeResult& r = *res;
    Json audit = Json::array();
    for (const AuditEntry& e : r.audit)
        audit.push_back({{"iteration", e.iteration},
                         {"move", e.move},
                         {"count_before", e.count_before},
                         {"count_after", e.count_after},
                         {"density_before", e.density_before},
                         {"density_after", e.density_after},
                         {"energy", e.energy}});
    ResultRecord rec{"optimize",
                     {{"file", o.file},
                      {"objective", o.objective},
                      {"iterations", o.iterations},
                      {"constraint_n", o.constraint_n},
                      {"resolution", o.resolution},
                      {"cooling", o.cooling}},
                     {{"best", to_json(r.best)},
                      {"density", density(r.best)},
                      {"final_verdict", to_json(r.final_verdict)},
                      {"audit", audit}},
                     kToolVersion,
                     g.seed};
    if (r.final_cover) rec.result["final_cover"] = to_json(*r.final_cover);
    if (obj == Objective::min_density_packing && o.constraint_n == 2) {
        for (const NamedConstant& c : known_constants())
            if (c.name == "Delta_2(B^2)") rec.result["conjectured_delta2"] = c.value;
    }
    if (!o.audit.empty()) write_text_file(o.audit, serialize(to_json(rec)));
    if (!g.out.empty()) write_text_file(g.out, serialize(to_json(r.best)));
    std::string summary = "best density " + fixed(density(r.best)) + " with " + std::to_string(r.best.size()) +
                          " disks; " + std::to_string(r.audit.size()) + " accepted moves; final check " +
                          to_string(r.final_verdict.status) + "\n";
    if (g.format == "structured")
        std::cout << serialize(to_json(rec));
    else
        std::cout << summary;
    return r.final_verdict.status == VerdictStatus::violated ? kExitViolated : 0;
}

// ---- render ----

struct RenderArgs {
    std::string file;
    std::optional<std::string> window;
};

int cmd_render(const Globals& g, const RenderArgs& r) {
    const Json doc = read_json_file(r.file);
    std::string svg;
    std::size_t circles = 0;
    if (is_cluster_document(doc)) {
        const Cluster c = cluster_from_json(doc);
        svg = r.window ? render_svg(c, parse_box(*r.window)) : render_svg(c);
        for (std::size_t pos = svg.find("<circle"); pos != std::string::npos; pos = svg.find("<circle", pos + 1)) ++circles;
    } else {
        const PeriodicArrangement a = arrangement_from_json(doc);
        if (a.dim() != 2) throw UsageError("render needs a planar arrangement");
        const Box w = parse_box(r.window.value_or("-5,5,-5,5"));
        svg = render_svg(a, w);
        circles = rendered_disk_count(a, w);
    }
    if (g.out.empty()) {
        std::cout << svg;
    } else {
        write_text_file(g.out, svg);
        std::cout << circles << " circles written to " << g.out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Periodic disk packings and coverings: construction, checking, bounds, optimization"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
    app.add_option("--tolerance", g.tolerance, "Geometric tolerance")->capture_default_str();
    app.add_option("--out", g.out, "Output path");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "structured"}))->capture_default_str();

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Build a named arrangement or cluster");
    construct->add_option("name", ca.name, "hex-packing | hex-covering | sect5 | split | cluster | greedy")->required();
    construct->add_option("--d", ca.d, "Dimension of the sect5 lattice");
    construct->add_option("--a", ca.a, "Parameter a of the sect5 lattice");
    construct->add_option("--inflation", ca.inflation, "Radius inflation of hex-covering");
    construct->add_option("--slide", ca.slide, "Slide of the split packing");
    construct->add_option("--window", ca.window, "xmin,xmax,ymin,ymax for split");
    construct->add_option("--kind", ca.kind, "Cluster kind");
    construct->add_option("--scale", ca.scale, "Cluster scale (covering kinds)");
    construct->add_option("--basis", ca.basis, "b11,b12,b21,b22 for greedy");
    construct->add_option("--radius", ca.radius, "Disk radius for greedy");

    CheckArgs ch;
    auto* check = app.add_subcommand("check", "Check an arrangement file");
    check->add_option("file", ch.file)->required();
    check->add_option("--mode", ch.mode)->check(CLI::IsMember({"packing", "covering", "saturation", "reduction"}))->capture_default_str();
    check->add_option("--n", ch.n)->capture_default_str();
    check->add_option("--resolution", ch.resolution, "Placement grid")->capture_default_str();
    check->add_option("--window", ch.window, "Window radius");
    check->add_flag("--override-window", ch.override_window, "Allow a window below the default");
    check->add_option("--target", ch.target, "Covering radius to test (covering mode)");

    BoundArgs ba;
    std::string cluster_kind;
    auto* bound = app.add_subcommand("bound", "Cluster and asymptotic density bounds");
    auto* cluster_opt = bound->add_option("--cluster", cluster_kind, "pack2 | pack3 | pack7 | cover3 | cover4 | cover7");
    bound->add_option("--scale", ba.scale);
    bound->add_flag("--optimize-scale", ba.optimize_scale);
    bound->add_flag("--asymptotic", ba.asymptotic);
    bound->add_flag("--constants", ba.constants);
    bound->add_option("--d", ba.d);
    bound->add_option("--n", ba.n);
    bound->add_option("--delta", ba.delta);
    bound->add_option("--volume", ba.volume);

    DensityArgs da;
    auto* dens = app.add_subcommand("density", "Density of an arrangement file");
    dens->add_option("file", da.file)->required();
    dens->add_option("--window-radius", da.window_radius, "Relative density in a disk window");
    dens->add_option("--center", da.center, "Window center x,y");

    OptimizeArgs oa;
    auto* opt = app.add_subcommand("optimize", "Anneal an arrangement under saturation/reduction constraints");
    opt->add_option("file", oa.file)->required();
    opt->add_option("--objective", oa.objective)->check(CLI::IsMember({"min-density-packing", "min-count-covering"}))->capture_default_str();
    opt->add_option("--iterations", oa.iterations)->capture_default_str();
    opt->add_option("--constraint-n", oa.constraint_n)->capture_default_str();
    opt->add_option("--resolution", oa.resolution)->capture_default_str();
    opt->add_option("--cooling", oa.cooling)->capture_default_str();
    opt->add_option("--audit", oa.audit, "Result file with the audit trail");

    RenderArgs ra;
    auto* render = app.add_subcommand("render", "SVG rendering of an arrangement or cluster file");
    render->add_option("file", ra.file)->required();
    render->add_option("--window", ra.window, "xmin,xmax,ymin,ymax");

    for (auto* sub : {construct, check, bound, dens, opt, render}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*construct) return cmd_construct(g, ca);
        if (*check) return cmd_check(g, ch);
        if (*bound) {
            if (*cluster_opt) ba.cluster = cluster_kind;
            return cmd_bound(g, ba);
        }
        if (*dens) return cmd_density(g, da);
        if (*opt) return cmd_optimize(g, oa);
        if (*render) return cmd_render(g, ra);
    } catch (const FormatError& e) {
        std::cerr << "malformed input: " << e.what() << "\n";
        return kExitMalformed;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
