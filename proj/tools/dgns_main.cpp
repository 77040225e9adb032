#include <iostream>

#include <CLI11.hpp>

#include "dgns/cases.hpp"

using namespace dgns;

namespace {

void apply_overrides(RunConfig& cfg, const std::string& output_dir, int threads, long seed) {
    if (!output_dir.empty()) cfg.output_dir = output_dir;
    if (threads > 0) cfg.threads = threads;
    if (seed >= 0) cfg.seed = static_cast<unsigned long>(seed);
}

int mesh_info(const std::string& path) {
    // Inspection mode: tags are taken from the file, kinds are not needed.
    Mesh mesh = load_mesh(path, {}, /*require_tags=*/false, /*pair_periodic=*/false);
    std::cout << "vertices:        " << mesh.n_vertices() << '\n';
    std::cout << "cells:           " << mesh.n_cells() << '\n';
    std::cout << "interior edges:  " << mesh.interior_edges.size() << '\n';
    std::cout << "boundary edges:  " << mesh.boundary_edges.size() << '\n';
    std::cout.precision(12);
    std::cout << "total area:      " << mesh.total_area() << '\n';
    std::cout << "min h_K:         " << mesh.min_diameter() << '\n';
    double hmax = 0;
    for (double h : mesh.cell_diameter) hmax = std::max(hmax, h);
    std::cout << "max h_K:         " << hmax << '\n';
    std::map<std::string, int> tag_counts;
    for (const auto& [pr, name] : mesh.tagged_edges) tag_counts[name]++;
    for (const auto& [name, count] : tag_counts)
        std::cout << "tag " << name << ": " << count << " edges\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"DDGIC solver for 2-D compressible Navier-Stokes on triangular meshes"};
    app.require_subcommand(1);

    std::string config_path, output_dir, mesh_path;
    int threads = 0;
    long seed = -1;
    std::string levels_str = "0,1,2", degrees_str = "1,2,3";

    auto* solve = app.add_subcommand("solve", "run one case from a config file");
    solve->add_option("config", config_path, "config file")->required();
    solve->add_option("--output-dir", output_dir, "artifact directory override");
    solve->add_option("--threads", threads, "worker count override");
    solve->add_option("--seed", seed, "mesh jitter seed override");

    auto* study = app.add_subcommand("study", "convergence study over mesh levels and degrees");
    study->add_option("config", config_path, "config file")->required();
    study->add_option("--levels", levels_str, "comma-separated mesh levels (default 0,1,2)");
    study->add_option("--degrees", degrees_str, "comma-separated polynomial degrees (default 1,2,3)");
    study->add_option("--output-dir", output_dir, "artifact directory override");
    study->add_option("--threads", threads, "worker count override");
    study->add_option("--seed", seed, "mesh jitter seed override");

    auto* info = app.add_subcommand("mesh-info", "print mesh statistics");
    info->add_option("mesh", mesh_path, "mesh file (native or Gmsh 2.2 ASCII)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (info->parsed()) return mesh_info(mesh_path);
        RunConfig cfg = parse_config(config_path);
        apply_overrides(cfg, output_dir, threads, seed);
        if (solve->parsed()) return run_case(cfg);
        auto parse_ints = [](const std::string& s) {
            std::vector<int> out;
            std::stringstream ss(s);
            std::string tok;
            while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
            return out;
        };
        for (const auto& w : validate_config(cfg)) std::cerr << "warning: " << w << '\n';
        convergence_study(cfg, parse_ints(levels_str), parse_ints(degrees_str));
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
