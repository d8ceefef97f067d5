#pragma once

// Batch operations behind the command-line tool: analysis rows, full
// verification of one instance, the two-row weight construction, and
// manifest-driven experiment runs.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "checks.hpp"
#include "geometry.hpp"
#include "instances.hpp"
#include "io.hpp"
#include "local_sim.hpp"
#include "metrics.hpp"
#include "topology.hpp"

namespace udgspan {

inline constexpr double kBoundMargin = 1e-9;

struct AnalysisRow {
    std::string instance;
    Structure structure = Structure::Y;
    std::size_t n = 0;
    int k = 0;
    std::optional<double> r;
    std::optional<double> lambda;
    double beta = 2.0;
    std::size_t max_degree = 0;
    double length_stretch = 1.0;
    double power_stretch = 1.0;
    double weight = 0.0;
    std::optional<double> mst_weight;
    std::string bounds_used;
    bool conditions_ok = true;
};

inline const char* kAnalysisCsvHeader =
    "instance,structure,n,k,r,lambda,beta,maxDegree,lengthStretch,powerStretch,weight,mstWeight,boundsUsed,"
    "conditionsOk\n";

inline std::string to_csv(const AnalysisRow& row) {
    auto opt = [](const std::optional<double>& v) { return v ? format_real(*v) : std::string(); };
    return row.instance + "," + std::string(to_string(row.structure)) + "," + std::to_string(row.n) + "," +
           std::to_string(row.k) + "," + opt(row.r) + "," + opt(row.lambda) + "," + format_real(row.beta) + "," +
           std::to_string(row.max_degree) + "," + format_real(row.length_stretch) + "," +
           format_real(row.power_stretch) + "," + format_real(row.weight) + "," + opt(row.mst_weight) + "," +
           row.bounds_used + "," + (row.conditions_ok ? "true" : "false") + "\n";
}

/// Measures one structure and compares it with every closed-form guarantee
/// that applies. The civilized YY bound is used only when lambda is given
/// and the instance is lambda-civilized.
inline AnalysisRow analyze(const UnitDiskGraph& g, const DirectedTopology& h, Structure structure, int k,
                           std::optional<double> r, std::optional<double> lambda, double beta,
                           std::string instance = "") {
    AnalysisRow row;
    row.instance = std::move(instance);
    row.structure = structure;
    row.n = g.size();
    row.k = k;
    row.r = needs_ratio(structure) ? r : std::nullopt;
    row.lambda = lambda;
    row.beta = beta;

    const auto stretch = stretch_report(g, h, beta);
    row.length_stretch = stretch.length_stretch;
    row.power_stretch = stretch.power_stretch;
    row.max_degree = degree_stats(h).max_degree;
    row.weight = total_weight(h);
    if (g.connected()) row.mst_weight = mst_weight(g);

    const auto bounds = compute_bounds(k, lambda, r, std::nullopt, beta);
    std::vector<std::string> used;
    bool ok = true;
    auto apply = [&](const char* name, bool holds) {
        used.push_back(name);
        ok = ok && holds;
    };
    const double len = row.length_stretch;
    switch (structure) {
        case Structure::Y:
            if (bounds.yao_bound) apply("yao", len <= *bounds.yao_bound + kBoundMargin);
            apply("outdeg<=k", check_out_degree(h, static_cast<std::size_t>(k)).empty());
            break;
        case Structure::YY:
            apply("deg<=2k", row.max_degree <= static_cast<std::size_t>(bounds.yy_max_degree));
            if (bounds.yy_civilized_bound && is_civilized(g.points(), *lambda))
                apply("yy-civilized", len <= *bounds.yy_civilized_bound + kBoundMargin);
            break;
        case Structure::YS:
            if (bounds.yao_sink_bound) apply("yao-sink", len <= *bounds.yao_sink_bound + kBoundMargin);
            apply("deg<=k(k+2)", row.max_degree <= static_cast<std::size_t>(bounds.sink_max_degree));
            break;
        case Structure::YE: break;
        case Structure::YES:
            if (bounds.sparse_sink_bound) apply("sparse-sink", len <= *bounds.sparse_sink_bound + kBoundMargin);
            apply("deg<=k(k+2)", row.max_degree <= static_cast<std::size_t>(bounds.sink_max_degree));
            break;
    }
    apply("power<=length^beta", row.power_stretch <= std::pow(len, beta) + kBoundMargin);
    if (row.mst_weight) apply("mst<=weight", *row.mst_weight <= row.weight + kBoundMargin || row.weight == 0.0);
    for (std::size_t i = 0; i < used.size(); ++i) row.bounds_used += (i ? ";" : "") + used[i];
    row.conditions_ok = ok;
    return row;
}

struct Check {
    std::string name;
    bool passed = true;
    std::vector<std::string> details;
};

struct VerifyOptions {
    int k = 8;
    std::optional<double> r = 2.0;
    std::optional<double> lambda;
    double beta = 2.0;
    bool waive_sparse_certificates = false;
    bool check_local = true;
};

struct VerifyReport {
    std::vector<Check> checks;
    std::vector<CertificationResult> sink_certificates;
    std::vector<CertificationResult> sparse_sink_certificates;
    std::vector<LocalRunReport> local_reports;

    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }
};

/// Builds every structure on one instance and checks degree bounds, cone
/// minimality, filter and tree invariants, stretch bounds, the power/length
/// relation, cone-path certificates, oracle agreement and local equivalence.
inline VerifyReport verify(const UnitDiskGraph& g, const VerifyOptions& opt) {
    VerifyReport report;
    auto add = [&](std::string name, Violations v) {
        report.checks.push_back({std::move(name), v.empty(), std::move(v)});
    };
    const int k = opt.k;
    const double r = opt.r.value_or(2.0);
    const bool sink_ok = k >= kMinSinkCones;
    const auto bounds = compute_bounds(k, opt.lambda, r, std::nullopt, opt.beta);
    const auto& pts = g.points();

    const auto y = yao_step(g, k);
    const auto yy = reverse_yao_step(y, k);
    const auto ye = sparse_filter(y, k, r);
    add("yao cone minima", check_yao_minimality(pts, g.radius(), y));
    add("yao out-degree <= k", check_out_degree(y, static_cast<std::size_t>(k)));
    add("yy incoming minima", check_reverse_minimality(y, yy));
    add("yy subset of y", check_subset(yy, y, "yy"));
    add("yy degree <= 2k", check_max_degree(yy, static_cast<std::size_t>(2 * k), "yy"));
    add("sparse filter partition", check_sparse_filter(y, ye, r));
    add("ye subset of y", check_subset(ye.topology, y, "ye"));

    std::vector<std::pair<Structure, DirectedTopology>> built{
        {Structure::Y, y}, {Structure::YY, yy}, {Structure::YE, ye.topology}};
    if (sink_ok) {
        const auto ys = sink_step(y, k);
        const auto yes = sink_step(ye.topology, k);
        add("ys sink trees", check_sink_trees(y, ys));
        add("yes sink trees", check_sink_trees(ye.topology, yes));
        add("ys degree <= k(k+2)", check_max_degree(ys.topology, static_cast<std::size_t>(k * (k + 2)), "ys"));
        add("yes degree <= k(k+2)", check_max_degree(yes.topology, static_cast<std::size_t>(k * (k + 2)), "yes"));

        Violations cert_ys, cert_yes;
        for (auto e : y.edges()) {
            auto c = certify_cone_path(e, y, ys);
            if (!c.ok()) cert_ys.insert(cert_ys.end(), c.violations.begin(), c.violations.end());
            report.sink_certificates.push_back(std::move(c));
        }
        for (auto e : ye.topology.edges()) {
            auto c = certify_cone_path(e, ye.topology, yes);
            if (!c.ok()) cert_yes.insert(cert_yes.end(), c.violations.begin(), c.violations.end());
            report.sparse_sink_certificates.push_back(std::move(c));
        }
        add("ys cone-path certificates", cert_ys);
        if (opt.waive_sparse_certificates && !cert_yes.empty())
            report.checks.push_back({"yes cone-path certificates (waived)", true, cert_yes});
        else
            add("yes cone-path certificates", cert_yes);
        built.emplace_back(Structure::YS, ys.topology);
        built.emplace_back(Structure::YES, yes.topology);
    }

    const bool connected = g.connected();
    const double mst = connected ? mst_weight(g) : 0.0;
    for (const auto& [s, h] : built) {
        const std::string name(to_string(s));
        const auto edges = h.undirected_edges();
        const auto len_m = length_stretch(g, edges, ShortestPathMethod::matrix);
        const auto len_d = length_stretch(g, edges, ShortestPathMethod::per_source);
        const auto pow_m = power_stretch(g, edges, opt.beta, ShortestPathMethod::matrix);
        const auto pow_d = power_stretch(g, edges, opt.beta, ShortestPathMethod::per_source);
        Violations oracle;
        if (std::abs(len_m.factor - len_d.factor) > 1e-9 || std::abs(pow_m.factor - pow_d.factor) > 1e-9)
            oracle.push_back(name + ": matrix and per-source stretch disagree");
        add(name + " oracle agreement", oracle);

        Violations bound;
        const double len = len_m.factor;
        auto exceed = [&](const char* what, double b) {
            if (len > b + kBoundMargin)
                bound.push_back(name + ": length stretch " + format_real(len) + " exceeds " + what + " " + format_real(b));
        };
        if (s == Structure::Y && bounds.yao_bound) exceed("yao bound", *bounds.yao_bound);
        if (s == Structure::YS && bounds.yao_sink_bound) exceed("yao-sink bound", *bounds.yao_sink_bound);
        if (s == Structure::YY && bounds.yy_civilized_bound && opt.lambda && is_civilized(pts, *opt.lambda))
            exceed("civilized yy bound", *bounds.yy_civilized_bound);
        if (s == Structure::YES && bounds.sparse_sink_bound) exceed("sparse-sink bound", *bounds.sparse_sink_bound);
        if (pow_m.factor > std::pow(len, opt.beta) + kBoundMargin)
            bound.push_back(name + ": power stretch exceeds length stretch^beta");
        if (connected && !edges.empty() && total_weight(pts, edges) + kBoundMargin < mst && len_m.factor < HUGE_VAL)
            bound.push_back(name + ": connected structure lighter than the MST");
        add(name + " stretch bounds", bound);
    }

    if (opt.check_local && sink_ok) {
        const auto clique = check_clique_property(g, k);
        add("cone neighborhoods are cliques",
            clique.holds ? Violations{}
                         : Violations{"apex " + std::to_string(pts.id((*clique.counterexample)[0]).value)});
        for (auto s : kAllStructures) {
            auto local = run_local(g, s, k, r);
            Violations v;
            for (const auto& d : local.discrepancies)
                v.push_back(std::string(to_string(s)) + ": node " + std::to_string(pts.id(d.node).value) + " edge " +
                            detail::edge_name(pts, d.edge) + (d.present_locally ? " only local" : " only central"));
            add(std::string(to_string(s)) + " local equivalence", v);
            report.local_reports.push_back(std::move(local));
        }
    }
    return report;
}

struct Figure6Row {
    std::size_t s = 0;
    std::size_t n = 0;
    double weight_y = 0.0;
    double weight_mst = 0.0;
    double ratio = 0.0;
    bool identical = false;
};

/// Builds every structure on the two-row instance and compares weights.
inline Figure6Row reproduce_figure6(std::size_t s, int k, double r) {
    const UnitDiskGraph g(gen_figure6(s), 1.0);
    const auto y = build(Structure::Y, g, k);
    Figure6Row row;
    row.s = s;
    row.n = 2 * s;
    row.weight_y = total_weight(y);
    row.weight_mst = mst_weight(g);
    row.ratio = row.weight_y / row.weight_mst;
    const auto reference = y.undirected_edges();
    row.identical = true;
    for (auto st : kAllStructures)
        if (build(st, g, k, r).undirected_edges() != reference) row.identical = false;
    return row;
}

struct Manifest {
    std::vector<GenSpec> instances;
    std::vector<Structure> structures{kAllStructures, kAllStructures + 5};
    int k = 8;
    double r = 2.0;
    double beta = 2.0;
    std::optional<double> lambda;
    std::optional<double> epsilon;
    std::vector<std::string> formats{"json"};
    bool waive_sparse_certificates = false;
};

inline Manifest manifest_from_json(const json& j) {
    Manifest m;
    try {
        if (!j.is_object() || !j.contains("instances")) throw FormatError("manifest needs an \"instances\" array");
        for (const auto& spec : j.at("instances")) m.instances.push_back(gen_spec_from_json(spec));
        if (j.contains("structures")) {
            m.structures.clear();
            for (const auto& s : j.at("structures")) m.structures.push_back(parse_structure(s.get<std::string>()));
        }
        m.k = j.value("k", 8);
        m.r = j.value("r", 2.0);
        m.beta = j.value("beta", 2.0);
        if (j.contains("lambda") && !j["lambda"].is_null()) m.lambda = j["lambda"].get<double>();
        if (j.contains("epsilon") && !j["epsilon"].is_null()) m.epsilon = j["epsilon"].get<double>();
        if (j.contains("formats")) m.formats = j.at("formats").get<std::vector<std::string>>();
        m.waive_sparse_certificates = j.value("waive_sparse_certificates", false);
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad manifest: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
    for (const auto& f : m.formats)
        if (f != "json" && f != "csv" && f != "dot") throw FormatError("unknown format '" + f + "'");
    return m;
}

inline std::string instance_name(std::size_t index, const GenSpec& spec) {
    std::string name = "inst" + std::to_string(index) + "_" + std::string(to_string(spec.kind));
    if (spec.kind == GenKind::figure6)
        name += "_s" + std::to_string(spec.s);
    else
        name += "_n" + std::to_string(spec.n) + "_seed" + std::to_string(spec.seed);
    return name;
}

struct ManifestResult {
    std::vector<std::filesystem::path> files;
    std::vector<AnalysisRow> rows;
};

/// Writes points, topologies and one report.csv under `out_dir`. File names
/// depend only on the manifest.
inline ManifestResult run_manifest(const Manifest& m, const std::filesystem::path& out_dir) {
    ManifestResult result;
    std::filesystem::create_directories(out_dir);
    auto emit = [&](const std::filesystem::path& p, const std::string& content) {
        write_file(p, content);
        result.files.push_back(p);
    };
    std::string report = kAnalysisCsvHeader;
    for (std::size_t i = 0; i < m.instances.size(); ++i) {
        const auto& spec = m.instances[i];
        const auto name = instance_name(i, spec);
        const auto pts = generate(spec);
        const UnitDiskGraph g(pts, spec.radius);
        emit(out_dir / (name + ".points.json"), points_to_json(*pts, spec.radius));
        const std::optional<double> lambda =
            spec.kind == GenKind::civilized ? std::optional(spec.lambda) : m.lambda;
        for (auto s : m.structures) {
            const auto topo = build(s, g, m.k, m.r);
            const auto stem = name + "." + std::string(to_string(s));
            for (const auto& f : m.formats) {
                if (f == "json") emit(out_dir / (stem + ".json"), topology_to_json(topo));
                if (f == "dot") emit(out_dir / (stem + ".dot"), topology_to_dot(topo, std::string(to_string(s))));
            }
            auto row = analyze(g, topo, s, m.k, m.r, lambda, m.beta, name);
            report += to_csv(row);
            result.rows.push_back(std::move(row));
        }
    }
    emit(out_dir / "report.csv", report);
    return result;
}

}  // namespace udgspan
