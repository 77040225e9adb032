#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "dgns/cases.hpp"
#include "dgns/config.hpp"

using namespace dgns;

TEST_CASE("minimal ms1 config gets the protocol defaults") {
    RunConfig cfg = parse_config_text("case = ms1\nk = 2\nmesh_level = 1\n");
    apply_case_defaults(cfg);
    CHECK(cfg.cfl == doctest::Approx(0.1));
    CHECK(cfg.mu.value() == doctest::Approx(1e-3));
    CHECK(cfg.final_time.value() == doctest::Approx(2.0 * M_PI));
    CHECK(cfg.mode == "final_time");
    CHECK(cfg.boundaries.size() == 4);
    CHECK(cfg.boundaries.at("left").kind == "periodic");
    CHECK(validate_config(cfg).empty());
}

TEST_CASE("file values win over case defaults") {
    RunConfig cfg = parse_config_text("case = ms2\nk = 3\nmesh_level = 0\nmu = 5e-3\ncfl = 0.2\n");
    apply_case_defaults(cfg);
    CHECK(cfg.mu.value() == doctest::Approx(5e-3));
    CHECK(cfg.cfl == doctest::Approx(0.2));
    CHECK(cfg.final_time.value() == doctest::Approx(1.0));
}

TEST_CASE("unknown keys are rejected with context") {
    CHECK_THROWS_WITH_AS(parse_config_text("case = ms1\nbogus_key = 3\n"),
                         doctest::Contains("bogus_key"), SolverError);
    CHECK_THROWS_WITH_AS(parse_config_text("case = ms1\n[boundary left]\nwhat = 1\n"),
                         doctest::Contains("what"), SolverError);
    CHECK_THROWS_AS(parse_config_text("case = ms1\nk 2\n"), SolverError);
}

TEST_CASE("validation catches inconsistent setups and flags unusual degrees") {
    RunConfig cfg = parse_config_text("case = ms1\nk = 7\nmesh_level = 0\n");
    apply_case_defaults(cfg);
    const auto warnings = validate_config(cfg);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("k = 7") != std::string::npos);

    RunConfig bad = parse_config_text("case = ms1\nk = 0\n");
    apply_case_defaults(bad);
    CHECK_THROWS_AS(validate_config(bad), SolverError);

    RunConfig steady = parse_config_text("case = plate\nmode = steady\n");
    steady.steady_tol.reset();
    CHECK_THROWS_AS(validate_config(steady), SolverError);
}

TEST_CASE("cases without a mesh source are rejected") {
    RunConfig cfg = parse_config_text("case = ms1\nk = 1\n");
    // strip the default mesh level to simulate a missing mesh
    apply_case_defaults(cfg);
    cfg.mesh_level.reset();
    cfg.mesh_path.clear();
    CHECK_THROWS_WITH_AS(build_case(cfg), doctest::Contains("mesh"), SolverError);
}

TEST_CASE("unknown case names are rejected") {
    RunConfig cfg = parse_config_text("case = vortex-street-9000\n");
    CHECK_THROWS_WITH_AS(apply_case_defaults(cfg), doctest::Contains("unknown case"), SolverError);
}

TEST_CASE("config round-trip: serialize then reparse") {
    RunConfig cfg = parse_config_text(
        "case = plate\nk = 2\ncfl = 0.4\nthreads = 3\noutput_dir = artifacts\n"
        "[boundary outlet]\nkind = outflow\np_back = 0.69\n");
    apply_case_defaults(cfg);
    RunConfig back = parse_config_text(cfg.serialize());
    CHECK(back.case_name == cfg.case_name);
    CHECK(back.degree == cfg.degree);
    CHECK(back.cfl == cfg.cfl);
    CHECK(back.threads == cfg.threads);
    CHECK(back.output_dir == cfg.output_dir);
    CHECK(back.boundaries.size() == cfg.boundaries.size());
    CHECK(back.boundaries.at("outlet").p_back.value() == doctest::Approx(0.69));
    CHECK(back.mu.value() == cfg.mu.value());
    CHECK(back.final_time.has_value() == cfg.final_time.has_value());
}

TEST_CASE("build_case wires the ms1 setup end to end") {
    RunConfig cfg = parse_config_text("case = ms1\nk = 1\nmesh_level = 0\n");
    apply_case_defaults(cfg);
    CaseRun run = build_case(cfg);
    CHECK(run.mesh->n_cells() == 50);
    CHECK(run.basis->degree() == 1);
    CHECK(run.exact.has_value());
    // projected initial condition approximates the exact field
    double Q[4], Qe[4];
    run.U->eval(0, run.mesh->cell_coords(0)[0], Q);
    run.exact->conserved(run.mesh->cell_coords(0)[0].x, run.mesh->cell_coords(0)[0].y, 0.0, run.gas,
                         Qe);
    for (int v = 0; v < 4; ++v) CHECK(Q[v] == doctest::Approx(Qe[v]).epsilon(0.2));
}

TEST_CASE("pressure pulse initial state") {
    double Q[4];
    pressure_pulse_initial({0.5, 0.5}, 1.4, Q);
    CHECK(Q[0] == doctest::Approx(1.0));
    CHECK(Q[1] == 0.0);
    // cos(pi/2) = 0: E = 12/0.4 + 0.5
    CHECK(Q[3] == doctest::Approx(12.0 / 0.4 + 0.5).epsilon(1e-12));
}

TEST_CASE("reproducibility: identical configs give bitwise identical fields") {
    RunConfig cfg = parse_config_text("case = ms1\nk = 1\nmesh_level = 0\nseed = 11\n");
    apply_case_defaults(cfg);
    CaseRun a = build_case(cfg);
    CaseRun b = build_case(cfg);
    SolutionField ra(*a.basis, 4), rb(*b.basis, 4);
    a.op->compute(*a.U, 0.0, ra);
    b.op->compute(*b.U, 0.0, rb);
    REQUIRE(ra.size() == rb.size());
    for (size_t i = 0; i < ra.size(); ++i) CHECK(ra.data()[i] == rb.data()[i]);
}

TEST_CASE("manifest records config and artifact checksums") {
    RunConfig cfg = parse_config_text("case = ms1\nk = 1\nmesh_level = 0\n");
    apply_case_defaults(cfg);
    cfg.output_dir = (std::filesystem::temp_directory_path() / "dgns_manifest_test").string();
    std::filesystem::create_directories(cfg.output_dir);
    {
        std::ofstream f(std::filesystem::path(cfg.output_dir) / "dummy.csv");
        f << "a,b\n1,2\n";
    }
    const std::string body = write_manifest(cfg, {"dummy.csv"});
    CHECK(body.find("case = ms1") != std::string::npos);
    CHECK(body.find("dummy.csv") != std::string::npos);
    CHECK(body.find("fnv1a:") != std::string::npos);
    std::filesystem::remove_all(cfg.output_dir);
}
