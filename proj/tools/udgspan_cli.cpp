// Command-line front end for the udgspan library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udgspan/udgspan.hpp"

namespace {

using namespace udgspan;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-")
        std::cout << content;
    else
        write_file(path, content);
}

std::optional<double> opt_if(const CLI::Option* o, double v) {
    return o->count() ? std::optional(v) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cone-based topologies over unit disk graphs"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a point set");
    std::string gen_kind = "uniform", gen_out = "-";
    GenSpec spec;
    gen->add_option("--kind", gen_kind, "uniform | civilized | figure6")->check(CLI::IsMember({"uniform", "civilized", "figure6"}));
    gen->add_option("--n", spec.n, "Node count (uniform, civilized)");
    gen->add_option("--s", spec.s, "Nodes per side (figure6)");
    gen->add_option("--lambda", spec.lambda, "Minimum spacing (civilized)");
    gen->add_option("--side", spec.side, "Square side (uniform)");
    gen->add_option("--seed", spec.seed, "PRNG seed");
    gen->add_option("--radius", spec.radius, "UDG radius");
    std::string gen_format;
    gen->add_option("--format", gen_format, "json | csv (default: from the file extension, json for stdout)")
        ->check(CLI::IsMember({"json", "csv"}));
    gen->add_option("-o,--out", gen_out, "Output file; '-' for stdout");

    // shared construction flags
    int k = 8;
    double r = 2.0, beta = 2.0, lambda = 0.0;
    std::string structure_name = "y", points_path, out_path = "-";
    auto add_common = [&](CLI::App* cmd, bool with_structure) {
        cmd->add_option("--points", points_path, "Point file (.json or .csv)")->required();
        cmd->add_option("--k", k, "Cone count")->check(CLI::Range(3, 100000));
        if (with_structure)
            cmd->add_option("--structure", structure_name, "y | yy | ys | ye | yes")
                ->check(CLI::IsMember({"y", "yy", "ys", "ye", "yes"}, CLI::ignore_case));
    };

    auto* bld = app.add_subcommand("build", "Build one topology");
    add_common(bld, true);
    bld->add_option("--r", r, "Bucket ratio for ye/yes (default 2)");
    std::string bld_format = "json", bld_certs;
    bld->add_option("--format", bld_format, "json | csv | dot")->check(CLI::IsMember({"json", "csv", "dot"}));
    bld->add_option("-o,--out", out_path, "Output file; '-' for stdout");
    bld->add_option("--certificates", bld_certs, "Write cone-path certificates (ys, yes) to this JSON file");

    auto* ana = app.add_subcommand("analyze", "Measure a topology and emit a CSV report row");
    add_common(ana, true);
    std::string topology_path;
    bool csv_header = true;
    ana->add_option("--topology", topology_path, "Topology edge list (JSON)")->required();
    auto* ana_r = ana->add_option("--r", r, "Bucket ratio used to build the topology");
    auto* ana_lambda = ana->add_option("--lambda", lambda, "Civilization parameter for the yy bound");
    ana->add_option("--beta", beta, "Path-loss exponent");
    ana->add_flag("!--no-header", csv_header, "Omit the CSV header line");
    ana->add_option("-o,--out", out_path, "Output file; '-' for stdout");

    auto* ver = app.add_subcommand("verify", "Check every structure, bound and certificate on an instance");
    add_common(ver, false);
    ver->add_option("--r", r, "Bucket ratio");
    auto* ver_lambda = ver->add_option("--lambda", lambda, "Civilization parameter");
    ver->add_option("--beta", beta, "Path-loss exponent");
    bool waive = false, no_local = false, quiet = false;
    std::string ver_certs;
    ver->add_flag("--waive-sparse-certificates", waive, "Report yes certificate failures without failing");
    ver->add_flag("--no-local", no_local, "Skip local/centralized equivalence");
    ver->add_flag("-q,--quiet", quiet, "Only print failing checks");
    ver->add_option("--certificates", ver_certs, "Write all certificates to this JSON file");

    auto* fig = app.add_subcommand("reproduce-figure6", "Weight table for the two-row construction");
    std::vector<std::size_t> fig_s{5, 50, 500};
    fig->add_option("--s", fig_s, "Nodes per side (repeatable)");
    fig->add_option("--k", k, "Cone count")->check(CLI::Range(6, 100000));
    fig->add_option("--r", r, "Bucket ratio");

    auto* loc = app.add_subcommand("localcheck", "Simulate one-round local construction");
    add_common(loc, true);
    loc->add_option("--r", r, "Bucket ratio for ye/yes");
    loc->add_option("-o,--out", out_path, "Output JSON; '-' for stdout");

    auto* bnd = app.add_subcommand("bounds", "Print closed-form bounds");
    bnd->add_option("--k", k, "Cone count")->check(CLI::Range(3, 100000));
    auto* bnd_lambda = bnd->add_option("--lambda", lambda, "Civilization parameter");
    auto* bnd_r = bnd->add_option("--r", r, "Bucket ratio");
    double epsilon = 0.0;
    auto* bnd_eps = bnd->add_option("--epsilon", epsilon, "Target stretch slack");
    bnd->add_option("--beta", beta, "Path-loss exponent");

    auto* run = app.add_subcommand("run", "Run an experiment manifest");
    std::string manifest_path, run_out;
    run->add_option("--manifest", manifest_path, "Manifest JSON")->required();
    run->add_option("--out", run_out, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            spec.kind = parse_gen_kind(gen_kind);
            const auto pts = generate(spec);
            const bool csv = gen_format.empty() ? gen_out != "-" && is_csv(gen_out) : gen_format == "csv";
            emit(gen_out, csv ? points_to_csv(*pts) : points_to_json(*pts, spec.radius));
            return 0;
        }

        if (*fig) {
            std::cout << "s,n,wtY,wtMST,ratio,identicalStructures\n";
            for (auto s : fig_s) {
                const auto row = reproduce_figure6(s, k, r);
                std::cout << row.s << "," << row.n << "," << format_real(row.weight_y) << ","
                          << format_real(row.weight_mst) << "," << format_real(row.ratio) << ","
                          << (row.identical ? "true" : "false") << "\n";
            }
            return 0;
        }

        if (*bnd) {
            const auto b = compute_bounds(k, opt_if(bnd_lambda, lambda), opt_if(bnd_r, r), opt_if(bnd_eps, epsilon), beta);
            std::cout << bounds_to_json(b).dump(2) << "\n";
            return 0;
        }

        if (*run) {
            const auto manifest = manifest_from_json(json::parse(read_file(manifest_path)));
            const auto result = run_manifest(manifest, run_out);
            std::cerr << "wrote " << result.files.size() << " files to " << run_out << "\n";
            return 0;
        }

        const auto file = load_points(points_path);
        const UnitDiskGraph g(file.points, file.radius);
        const Structure structure = parse_structure(structure_name);

        if (*bld) {
            const std::optional<double> ratio = needs_ratio(structure) ? std::optional(r) : std::nullopt;
            const auto p = build_pipeline(structure, g, k, ratio);
            if (bld_format == "dot")
                emit(out_path, topology_to_dot(p.output(), std::string(to_string(structure))));
            else if (bld_format == "csv")
                emit(out_path, topology_to_csv(p.output()));
            else
                emit(out_path, topology_to_json(p.output()));
            if (!bld_certs.empty()) write_file(bld_certs, certificates_to_json(certify_all(p), g.points()).dump(2) + "\n");
            return 0;
        }

        if (*ana) {
            const DirectedTopology topo(file.points, ConeScheme(k), file.radius,
                                        topology_edges_from_json(read_file(topology_path), g.points()));
            const std::optional<double> ratio = ana_r->count() || needs_ratio(structure) ? std::optional(r) : std::nullopt;
            const auto row = analyze(g, topo, structure, k, ratio, opt_if(ana_lambda, lambda), beta, points_path);
            if (!beta_in_range(beta)) std::cerr << "warning: beta " << beta << " outside [2, 5]\n";
            emit(out_path, (csv_header ? std::string(kAnalysisCsvHeader) : std::string()) + to_csv(row));
            return 0;
        }

        if (*ver) {
            VerifyOptions opt;
            opt.k = k;
            opt.r = r;
            opt.lambda = opt_if(ver_lambda, lambda);
            opt.beta = beta;
            opt.waive_sparse_certificates = waive;
            opt.check_local = !no_local;
            if (!beta_in_range(beta)) std::cerr << "warning: beta " << beta << " outside [2, 5]\n";
            const auto report = verify(g, opt);
            for (const auto& c : report.checks) {
                if (quiet && c.passed) continue;
                std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "\n";
                for (std::size_t i = 0; i < c.details.size() && i < 10; ++i) std::cout << "    " << c.details[i] << "\n";
            }
            if (!ver_certs.empty()) {
                json certs{{"ys", certificates_to_json(report.sink_certificates, g.points())},
                           {"yes", certificates_to_json(report.sparse_sink_certificates, g.points())}};
                write_file(ver_certs, certs.dump(2) + "\n");
            }
            std::cout << (report.passed() ? "verification passed\n" : "verification FAILED\n");
            return report.passed() ? 0 : kExitFailure;
        }

        if (*loc) {
            const auto report = run_local(g, structure, k, needs_ratio(structure) ? std::optional(r) : std::nullopt);
            emit(out_path, local_report_to_json(report, g.points()).dump(2) + "\n");
            return report.discrepancies.empty() ? 0 : kExitFailure;
        }
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
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
