#pragma once

// File formats. Reals are written with 17 significant digits, which
// round-trips every double exactly.
//
//   points JSON : {"radius": r, "nodes": [{"id": 0, "x": 0.5, "y": 1}, ...]}
//   points CSV  : header "id,x,y", one node per line (radius defaults to 1)
//   topology    : [{"src": id, "dst": id, "len": l}, ...] sorted by EdgeKey
//   DOT         : undirected view with pinned node positions

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "geometry.hpp"
#include "instances.hpp"
#include "local_sim.hpp"
#include "metrics.hpp"
#include "topology.hpp"

namespace udgspan {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct PointFile {
    PointSetPtr points;
    double radius = 1.0;
};

inline std::string points_to_json(const PointSet& pts, double radius) {
    std::string out = "{\"radius\": " + format_real(radius) + ", \"nodes\": [";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& n = pts[i];
        out += i ? ",\n  " : "\n  ";
        out += "{\"id\": " + std::to_string(n.id.value) + ", \"x\": " + format_real(n.pos.x) +
               ", \"y\": " + format_real(n.pos.y) + "}";
    }
    out += pts.empty() ? "]}\n" : "\n]}\n";
    return out;
}

inline std::string points_to_csv(const PointSet& pts) {
    std::string out = "id,x,y\n";
    for (const auto& n : pts.nodes())
        out += std::to_string(n.id.value) + "," + format_real(n.pos.x) + "," + format_real(n.pos.y) + "\n";
    return out;
}

namespace detail {

inline PointSetPtr checked_point_set(std::vector<Node> nodes) {
    try {
        return make_point_set(std::move(nodes));
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

inline double parse_real(const std::string& field, std::size_t line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw FormatError("line " + std::to_string(line) + ": bad number '" + field + "'");
    return v;
}

inline std::uint64_t parse_id(const std::string& field, std::size_t line) {
    if (field.empty() || field.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError("line " + std::to_string(line) + ": bad id '" + field + "'");
    return std::stoull(field);
}

inline std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

}  // namespace detail

inline PointFile points_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed point JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("nodes") || !doc["nodes"].is_array())
        throw FormatError("point JSON must be an object with a \"nodes\" array");
    PointFile file;
    if (doc.contains("radius")) {
        if (!doc["radius"].is_number()) throw FormatError("\"radius\" must be a number");
        file.radius = doc["radius"].get<double>();
        if (!(file.radius > 0.0)) throw FormatError("\"radius\" must be positive");
    }
    std::vector<Node> nodes;
    for (const auto& item : doc["nodes"]) {
        if (!item.is_object() || !item.contains("id") || !item.contains("x") || !item.contains("y"))
            throw FormatError("each node needs \"id\", \"x\" and \"y\"");
        if (!item["id"].is_number_unsigned()) throw FormatError("node id must be a non-negative integer");
        if (!item["x"].is_number() || !item["y"].is_number()) throw FormatError("node coordinates must be numbers");
        nodes.push_back({NodeId{item["id"].get<std::uint64_t>()}, {item["x"].get<double>(), item["y"].get<double>()}});
    }
    file.points = detail::checked_point_set(std::move(nodes));
    return file;
}

inline PointFile points_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<Node> nodes;
    bool header = false;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::trim(line);
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        for (std::string f; std::getline(ss, f, ',');) fields.push_back(detail::trim(f));
        if (!header) {
            if (fields != std::vector<std::string>{"id", "x", "y"})
                throw FormatError("CSV header must be id,x,y");
            header = true;
            continue;
        }
        if (fields.size() != 3) throw FormatError("line " + std::to_string(lineno) + ": expected 3 fields");
        nodes.push_back({NodeId{detail::parse_id(fields[0], lineno)},
                         {detail::parse_real(fields[1], lineno), detail::parse_real(fields[2], lineno)}});
    }
    if (!header) throw FormatError("CSV is empty");
    return {detail::checked_point_set(std::move(nodes)), 1.0};
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

inline bool is_csv(const std::filesystem::path& path) { return path.extension() == ".csv"; }

inline PointFile load_points(const std::filesystem::path& path) {
    const auto text = read_file(path);
    return is_csv(path) ? points_from_csv(text) : points_from_json(text);
}

inline void save_points(const PointSet& pts, const std::filesystem::path& path, double radius = 1.0) {
    write_file(path, is_csv(path) ? points_to_csv(pts) : points_to_json(pts, radius));
}

inline std::string topology_to_json(const DirectedTopology& t) {
    const auto& pts = t.points();
    std::string out = "[";
    bool first = true;
    for (auto e : t.edges()) {
        out += first ? "\n  " : ",\n  ";
        first = false;
        out += "{\"src\": " + std::to_string(pts.id(e.src).value) + ", \"dst\": " +
               std::to_string(pts.id(e.dst).value) + ", \"len\": " + format_real(pts.distance(e.src, e.dst)) + "}";
    }
    out += first ? "]\n" : "\n]\n";
    return out;
}

inline std::string topology_to_csv(const DirectedTopology& t) {
    const auto& pts = t.points();
    std::string out = "src,dst,len\n";
    for (auto e : t.edges())
        out += std::to_string(pts.id(e.src).value) + "," + std::to_string(pts.id(e.dst).value) + "," +
               format_real(pts.distance(e.src, e.dst)) + "\n";
    return out;
}

inline std::string topology_to_dot(const DirectedTopology& t, std::string_view name = "topology") {
    const auto& pts = t.points();
    std::string out = "graph " + std::string(name) + " {\n";
    for (const auto& n : pts.nodes())
        out += "  " + std::to_string(n.id.value) + " [pos=\"" + format_real(n.pos.x) + "," + format_real(n.pos.y) +
               "!\"];\n";
    for (auto e : t.undirected_edges())
        out += "  " + std::to_string(pts.id(e.a).value) + " -- " + std::to_string(pts.id(e.b).value) + ";\n";
    out += "}\n";
    return out;
}

/// Reads a topology edge list and resolves ids against `pts`.
inline std::vector<DirectedEdge> topology_edges_from_json(const std::string& text, const PointSet& pts) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed topology JSON: ") + e.what());
    }
    if (!doc.is_array()) throw FormatError("topology JSON must be an array of edges");
    std::vector<DirectedEdge> edges;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("src") || !item.contains("dst"))
            throw FormatError("each edge needs \"src\" and \"dst\"");
        const NodeId src{item["src"].get<std::uint64_t>()};
        const NodeId dst{item["dst"].get<std::uint64_t>()};
        if (!pts.contains(src) || !pts.contains(dst))
            throw FormatError("edge references unknown node id");
        edges.push_back({pts.index_of(src), pts.index_of(dst)});
    }
    return edges;
}

inline json certificate_to_json(const CertificationResult& result, const PointSet& pts) {
    json j;
    j["ok"] = result.ok();
    j["violations"] = result.violations;
    if (const auto& c = result.certificate) {
        j["src"] = pts.id(c->edge.src).value;
        j["dst"] = pts.id(c->edge.dst).value;
        std::vector<std::uint64_t> path;
        for (NodeIndex w : c->path) path.push_back(pts.id(w).value);
        j["path"] = path;
        j["ell"] = c->ell;
        j["prefix_length"] = c->prefix_length;
        j["reach"] = c->reach;
        j["reach_threshold"] = c->reach_threshold;
        j["prefix_bound"] = std::isfinite(c->prefix_bound) ? json(c->prefix_bound) : json(nullptr);
    }
    return j;
}

inline json certificates_to_json(const std::vector<CertificationResult>& results, const PointSet& pts) {
    json arr = json::array();
    for (const auto& r : results) arr.push_back(certificate_to_json(r, pts));
    return arr;
}

inline json gen_spec_to_json(const GenSpec& spec) {
    json j{{"kind", std::string(to_string(spec.kind))}, {"seed", spec.seed}, {"radius", spec.radius}};
    switch (spec.kind) {
        case GenKind::uniform: j["n"] = spec.n; j["side"] = spec.side; break;
        case GenKind::civilized: j["n"] = spec.n; j["lambda"] = spec.lambda; break;
        case GenKind::figure6: j["s"] = spec.s; break;
    }
    return j;
}

inline GenSpec gen_spec_from_json(const json& j) {
    if (!j.is_object() || !j.contains("kind")) throw FormatError("generator spec needs a \"kind\"");
    GenSpec spec;
    try {
        spec.kind = parse_gen_kind(j.at("kind").get<std::string>());
        spec.seed = j.value("seed", std::uint64_t{0});
        spec.radius = j.value("radius", 1.0);
        switch (spec.kind) {
            case GenKind::uniform:
                spec.n = j.at("n").get<std::size_t>();
                spec.side = j.value("side", 1.0);
                break;
            case GenKind::civilized:
                spec.n = j.at("n").get<std::size_t>();
                spec.lambda = j.at("lambda").get<double>();
                break;
            case GenKind::figure6: spec.s = j.at("s").get<std::size_t>(); break;
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad generator spec: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    return spec;
}

inline json local_report_to_json(const LocalRunReport& report, const PointSet& pts) {
    json d = json::array();
    for (const auto& x : report.discrepancies)
        d.push_back({{"node", pts.id(x.node).value},
                     {"src", pts.id(x.edge.src).value},
                     {"dst", pts.id(x.edge.dst).value},
                     {"present_locally", x.present_locally},
                     {"present_centrally", x.present_centrally}});
    return {{"structure", std::string(to_string(report.structure))},
            {"n", report.n},
            {"k", report.k},
            {"r", report.r ? json(*report.r) : json(nullptr)},
            {"messages", report.messages},
            {"bytes", report.bytes},
            {"endpoint_disagreements", report.endpoint_disagreements},
            {"discrepancies", d}};
}

inline json bounds_to_json(const BoundsReport& b) {
    auto opt = [](const auto& o) { return o ? json(*o) : json(nullptr); };
    return {{"k", b.k},
            {"theta", b.theta},
            {"lambda", opt(b.lambda)},
            {"r", opt(b.r)},
            {"epsilon", opt(b.epsilon)},
            {"beta", b.beta},
            {"yao_bound", opt(b.yao_bound)},
            {"yao_sink_bound", opt(b.yao_sink_bound)},
            {"yy_max_degree", b.yy_max_degree},
            {"sink_max_degree", b.sink_max_degree},
            {"yy_civilized_conditions", b.yy_civilized_conditions},
            {"yy_civilized_bound", opt(b.yy_civilized_bound)},
            {"sparse_sink_lambda", opt(b.sparse_sink_lambda)},
            {"sparse_sink_stated_condition", b.sparse_sink_stated_condition},
            {"sparse_sink_derived_condition", b.sparse_sink_derived_condition},
            {"sparse_sink_conditions", b.sparse_sink_conditions},
            {"sparse_sink_bound", opt(b.sparse_sink_bound)},
            {"epsilon_target", opt(b.epsilon_target)},
            {"epsilon_k", opt(b.epsilon_k)},
            {"epsilon_length_bound", opt(b.epsilon_length_bound)},
            {"epsilon_power_bound", opt(b.epsilon_power_bound)}};
}

}  // namespace udgspan
