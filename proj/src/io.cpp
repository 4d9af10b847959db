#include "diskpack/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace diskpack {

namespace {

double number(const Json& j, const char* what) {
    if (!j.is_number()) throw FormatError(std::string("expected a number for ") + what);
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw FormatError(std::string("non-finite value for ") + what);
    return v;
}

Point point_from(const Json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw FormatError(std::string("expected [x, y] for ") + what);
    return {number(j[0], what), number(j[1], what)};
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

/// JSON has no infinity; unbounded values are written as null.
Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

Json to_json(const Point& p) { return Json::array({p.x, p.y}); }

Json to_json(const PeriodicArrangement& a) {
    Json j;
    j["dim"] = a.dim();
    j["basis"] = a.lattice().rows();
    j["motif"] = a.motif_coordinates();
    j["radius"] = a.radius();
    return j;
}

PeriodicArrangement arrangement_from_json(const Json& j) {
    const Json& dj = field(j, "dim");
    if (!dj.is_number_integer() || dj.get<int>() < 1) throw FormatError("'dim' must be a positive integer");
    const int dim = dj.get<int>();
    const Json& bj = field(j, "basis");
    if (!bj.is_array() || static_cast<int>(bj.size()) != dim) throw FormatError("'basis' must have dim rows");
    std::vector<std::vector<double>> rows;
    for (const Json& row : bj) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim) throw FormatError("'basis' rows must have dim entries");
        std::vector<double> r;
        for (const Json& v : row) r.push_back(number(v, "basis"));
        rows.push_back(std::move(r));
    }
    const Json& mj = field(j, "motif");
    if (!mj.is_array() || mj.empty()) throw FormatError("'motif' must be a nonempty array");
    std::vector<std::vector<double>> motif;
    for (const Json& p : mj) {
        if (!p.is_array() || static_cast<int>(p.size()) != dim) throw FormatError("'motif' points must have dim entries");
        std::vector<double> c;
        for (const Json& v : p) c.push_back(number(v, "motif"));
        motif.push_back(std::move(c));
    }
    const double radius = number(field(j, "radius"), "radius");
    try {
        return PeriodicArrangement::from_coordinates(Lattice(std::move(rows)), std::move(motif), radius);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

Json to_json(const Cluster& c) {
    Json pts = Json::array();
    for (const Point& p : c.centers) pts.push_back(to_json(p));
    return {{"centers", pts}};
}

Cluster cluster_from_json(const Json& j) {
    const Json& cj = field(j, "centers");
    if (!cj.is_array()) throw FormatError("'centers' must be an array");
    std::vector<Point> pts;
    for (const Json& p : cj) pts.push_back(point_from(p, "centers"));
    try {
        return Cluster(std::move(pts));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

bool is_cluster_document(const Json& j) { return j.is_object() && j.contains("centers") && !j.contains("basis"); }

Json to_json(const AreaBracket& b) {
    return {{"lower", b.lower},           {"upper", b.upper},
            {"method", to_string(b.method)}, {"resolution", b.resolution},
            {"conclusive", b.conclusive}};
}

Json to_json(const CoverVerdict& v) {
    Json j{{"status", to_string(v.status)}, {"margin", v.margin}, {"resolution", v.resolution}};
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    return j;
}

Json to_json(const HoleBracket& h) {
    return {{"lower", h.lower}, {"upper", h.upper}, {"location", to_json(h.location)}};
}

Json to_json(const PackingVerdict& v) {
    Json j{{"status", v.certified ? "certified-yes" : "certified-no"}, {"min_distance", v.min_distance}};
    if (v.witness) {
        const auto& [a, b] = *v.witness;
        j["witness"] = Json::array({{{"motif", a.motif}, {"a", a.a}, {"b", a.b}}, {{"motif", b.motif}, {"a", b.a}, {"b", b.b}}});
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

Json to_json(const ReplacementWitness& w) {
    Json removed = Json::array();
    for (const DiskCopy& c : w.removed) removed.push_back({{"motif", c.motif}, {"a", c.a}, {"b", c.b}});
    Json added = Json::array();
    for (const Point& p : w.added) added.push_back(to_json(p));
    return {{"removed", removed}, {"added", added}, {"margin", w.margin}};
}

ReplacementWitness witness_from_json(const Json& j) {
    ReplacementWitness w;
    const Json& rj = field(j, "removed");
    if (!rj.is_array()) throw FormatError("'removed' must be an array");
    for (const Json& c : rj) {
        const Json &m = field(c, "motif"), &a = field(c, "a"), &b = field(c, "b");
        if (!m.is_number_integer() || !a.is_number_integer() || !b.is_number_integer())
            throw FormatError("disk copy identifiers must be integers");
        w.removed.push_back({m.get<int>(), a.get<std::int64_t>(), b.get<std::int64_t>()});
    }
    const Json& aj = field(j, "added");
    if (!aj.is_array()) throw FormatError("'added' must be an array");
    for (const Json& p : aj) w.added.push_back(point_from(p, "added"));
    w.margin = number(field(j, "margin"), "margin");
    return w;
}

Json to_json(const Verdict& v) {
    Json j{{"status", to_string(v.status)}, {"n", v.n}, {"resolution", v.resolution}, {"radius_used", v.radius_used}};
    j["witness"] = v.witness ? to_json(*v.witness) : Json(nullptr);
    return j;
}

Json to_json(const BoundReport& r) {
    Json j{{"n", r.n},
           {"side", to_string(r.side)},
           {"cluster", to_json(r.cluster)},
           {"domain_area", to_json(r.domain_area)},
           {"bound", finite_or_null(r.bound)}};
    j["paper_value"] = r.paper_value ? Json(*r.paper_value) : Json(nullptr);
    j["abs_err"] = r.abs_err ? Json(*r.abs_err) : Json(nullptr);
    j["scale"] = r.scale ? Json(*r.scale) : Json(nullptr);
    j["note"] = r.note;
    return j;
}

Json to_json(const ResultRecord& r) {
    Json j{{"command", r.command}, {"inputs", r.inputs}, {"result", r.result}, {"tool_version", r.tool_version}};
    j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
    return j;
}

std::string serialize(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace diskpack
