// Regenerates the repository mesh data files (data/plate.mesh and
// data/cylinder.mesh). The generators are deterministic, so the output is
// reproducible byte for byte.
#include <iostream>

#include "dgns/mesh_gen.hpp"

int main(int argc, char** argv) {
    const std::string dir = argc > 1 ? argv[1] : "data";
    using namespace dgns;
    Mesh plate = plate_mesh(PlateMeshSpec{}, plate_tags());
    save_native_mesh(plate, dir + "/plate.mesh");
    std::cout << "plate: " << plate.n_cells() << " cells, min h_K = " << plate.min_diameter()
              << '\n';
    Mesh cyl = cylinder_mesh(CylinderMeshSpec{}, cylinder_tags());
    save_native_mesh(cyl, dir + "/cylinder.mesh");
    std::cout << "cylinder: " << cyl.n_cells() << " cells, min h_K = " << cyl.min_diameter()
              << '\n';
    return 0;
}
