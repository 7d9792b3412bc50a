// nodal-atlas: nodal sets of explicit Laplacian eigenfunctions on model
// surfaces, as embedded metric graphs, with mechanical verification of the
// critical-point and vanishing-order bounds.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "nodal/errors.hpp"
#include "nodal/parallel.hpp"
#include "nodal/report_io.hpp"
#include "nodal/sweep.hpp"

namespace {

using namespace nodal;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitExtraction = 2;
constexpr int kExitViolation = 3;

struct FamilyFlags {
    std::string surface;
    std::vector<int> product;
    std::string modes_file;
    int ell = -1;
    int m = 0;
    std::vector<int> jk;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& ff) {
    cmd->add_option("--surface", ff.surface, "torus | sphere | rectangle")
        ->check(CLI::IsMember({"torus", "sphere", "rectangle"}));
    cmd->add_option("--product", ff.product, "torus product mode indices L1 L2")
        ->expected(2);
    cmd->add_option("--modes", ff.modes_file, "JSON file with a torus mode list");
    cmd->add_option("--ell", ff.ell, "spherical harmonic degree");
    cmd->add_option("--m", ff.m, "spherical harmonic order");
    cmd->add_option("--jk", ff.jk, "rectangle sine indices J K")->expected(2);
}

Eigenfunction build_function(const FamilyFlags& ff) {
    if (!ff.product.empty()) {
        if (ff.surface != "" && ff.surface != "torus")
            throw std::invalid_argument("--product requires --surface torus");
        return product_mode(ff.product[0], ff.product[1]);
    }
    if (!ff.modes_file.empty()) {
        if (ff.surface != "" && ff.surface != "torus")
            throw std::invalid_argument("--modes requires --surface torus");
        std::ifstream in(ff.modes_file);
        if (!in) throw std::invalid_argument("cannot open mode file " + ff.modes_file);
        ordered_json j = ordered_json::parse(in);
        return modes_from_json(j);
    }
    if (ff.ell >= 0) {
        if (ff.surface != "" && ff.surface != "sphere")
            throw std::invalid_argument("--ell requires --surface sphere");
        return sphere_harmonic(ff.ell, ff.m);
    }
    if (!ff.jk.empty()) {
        if (ff.surface != "" && ff.surface != "rectangle")
            throw std::invalid_argument("--jk requires --surface rectangle");
        return rectangle_sine(ff.jk[0], ff.jk[1]);
    }
    throw std::invalid_argument(
        "no eigenfunction given: use --product, --modes, --ell/--m or --jk");
}

void write_output(const std::string& out_path, const std::string& payload) {
    if (out_path.empty() || out_path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output path " + out_path);
    out << payload;
}

int emit_extraction_failure(const std::string& out, const std::exception& e) {
    ordered_json j{{"error", "extraction_failure"}, {"what", e.what()}};
    write_output(out, j.dump(2) + "\n");
    return kExitExtraction;
}

int run_analyze(const FamilyFlags& ff, int grid_n, const std::string& out,
                const std::string& format) {
    Eigenfunction u = build_function(ff);
    SurfaceDescriptor s = natural_surface(u);
    GridSpec grid;
    if (grid_n > 0) grid.resolution = grid_n;

    AnalysisReport report;
    try {
        report = analyze(u, s, grid);
    } catch (const ExtractionError& e) {
        return emit_extraction_failure(out, e);
    }

    if (format == "svg") {
        write_output(out, render_svg(report));
    } else if (format == "csv") {
        std::ostringstream os;
        write_verdict_csv(os, report.verdicts);
        write_output(out, os.str());
    } else {
        write_output(out, report_to_json(report).dump(2) + "\n");
    }
    for (const auto& v : report.verdicts)
        if (!v.holds) return kExitViolation;
    return kExitOk;
}

int sweep_exit(const SweepResult& res) {
    for (const auto& row : res.rows)
        if (!row.ok) return kExitExtraction;
    return res.violations == 0 ? kExitOk : kExitViolation;
}

} // namespace

int main(int argc, char** argv) {
    apply_thread_cap();

    CLI::App app{"nodal sets of explicit Laplacian eigenfunctions as embedded metric graphs"};
    app.require_subcommand(1);

    std::string out_path;
    std::string format = "json";
    int grid_n = 0;
    auto add_output_flags = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "json | csv | svg")
            ->check(CLI::IsMember({"json", "csv", "svg"}));
        cmd->add_option("--grid", grid_n, "grid resolution per axis (default 512)");
    };

    FamilyFlags ff;
    auto* analyze_cmd = app.add_subcommand("analyze", "analyze one eigenfunction");
    add_family_flags(analyze_cmd, ff);
    add_output_flags(analyze_cmd);

    auto* svg_cmd = app.add_subcommand("export-svg", "draw the nodal graph as SVG");
    FamilyFlags ff_svg;
    add_family_flags(svg_cmd, ff_svg);
    add_output_flags(svg_cmd);

    auto* sweep_cmd = app.add_subcommand("sweep", "catalog or random sweeps");
    FamilyFlags ff_sweep;
    add_family_flags(sweep_cmd, ff_sweep);
    add_output_flags(sweep_cmd);
    std::vector<long long> shells;
    int samples = 100;
    uint64_t seed = 7;
    sweep_cmd->add_option("--shell", shells, "torus shell eigenvalue(s) for a random sweep");
    sweep_cmd->add_option("--samples", samples, "number of random samples");
    sweep_cmd->add_option("--seed", seed, "random sweep seed");

    auto* construct_cmd =
        app.add_subcommand("construct", "torus eigenfunction with prescribed vanishing order");
    add_output_flags(construct_cmd);
    int order_n = 0;
    bool paper_lambda = false;
    bool do_analyze = false;
    construct_cmd->add_option("--n", order_n, "vanishing order target (1..8)")->required();
    construct_cmd->add_flag("--paper-lambda", paper_lambda, "use lambda = 5^C(n) (n <= 4)");
    construct_cmd->add_flag("--analyze", do_analyze, "also extract and verify the result");

    auto* r2_cmd = app.add_subcommand("r2", "sum-of-two-squares counts");
    add_output_flags(r2_cmd);
    long long r2_max = 100;
    long long r2_value = -1;
    r2_cmd->add_option("--max", r2_max, "table 1..max");
    r2_cmd->add_option("--value", r2_value, "single n");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze_cmd->parsed())
            return run_analyze(ff, grid_n, out_path, format);

        if (svg_cmd->parsed())
            return run_analyze(ff_svg, grid_n, out_path, "svg");

        if (sweep_cmd->parsed()) {
            GridSpec grid;
            if (grid_n > 0) grid.resolution = grid_n;
            SweepResult res;
            if (!shells.empty()) {
                RandomSweepOptions opts;
                opts.shells = shells;
                opts.samples = samples;
                opts.seed = seed;
                opts.grid = grid;
                res = sweep_random_torus(opts);
            } else if (ff_sweep.surface == "sphere") {
                if (ff_sweep.ell < 0)
                    throw std::invalid_argument("sphere sweep needs --ell LMAX");
                res = sweep_sphere(ff_sweep.ell, grid);
            } else if (ff_sweep.surface == "rectangle") {
                if (ff_sweep.jk.empty())
                    throw std::invalid_argument("rectangle sweep needs --jk JMAX KMAX");
                res = sweep_rectangle(ff_sweep.jk[0], ff_sweep.jk[1], grid);
            } else if (ff_sweep.surface == "torus") {
                if (ff_sweep.product.empty())
                    throw std::invalid_argument(
                        "torus sweep needs --product L1MAX L2MAX or --shell ...");
                res = sweep_torus_products(ff_sweep.product[0], ff_sweep.product[1], grid);
            } else {
                throw std::invalid_argument("sweep needs --surface or --shell");
            }
            std::ostringstream os;
            write_sweep_csv(os, res);
            write_output(out_path, os.str());
            return sweep_exit(res);
        }

        if (construct_cmd->parsed()) {
            ConstructOptions copts;
            copts.paper_lambda = paper_lambda;
            Construction c = construct_high_vanishing(order_n, copts);
            ordered_json j = certificate_to_json(c.certificate, c.u);
            if (do_analyze) {
                GridSpec grid;
                if (grid_n > 0) grid.resolution = grid_n;
                ExtractOptions eopts;
                eopts.detect.seeds.push_back({0.0, 0.0});
                try {
                    AnalysisReport report = analyze(c.u, natural_surface(c.u), grid, eopts);
                    j["report"] = report_to_json(report);
                } catch (const ExtractionError& e) {
                    return emit_extraction_failure(out_path, e);
                }
            }
            write_output(out_path, j.dump(2) + "\n");
            return kExitOk;
        }

        if (r2_cmd->parsed()) {
            std::ostringstream os;
            if (r2_value >= 0) {
                os << "# nodal-atlas r2 v1\nn,r2\n"
                   << r2_value << ',' << r2_formula(r2_value) << '\n';
            } else {
                os << "# nodal-atlas r2 v1\nn,r2\n";
                for (long long n = 1; n <= r2_max; ++n)
                    os << n << ',' << r2_formula(n) << '\n';
            }
            write_output(out_path, os.str());
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ExtractionError& e) {
        std::cerr << "extraction failure: " << e.what() << "\n";
        return kExitExtraction;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
