#include <istream>
#include <map>
#include <sstream>
#include <string>

#include "dgns/mesh.hpp"

namespace dgns {

namespace {

std::string next_section(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty() && line[0] == '$') return line;
    }
    return {};
}

void skip_to_end(std::istream& in, const std::string& section) {
    std::string line;
    const std::string end = "$End" + section.substr(1);
    while (std::getline(in, line)) {
        if (line.rfind(end, 0) == 0) return;
    }
    throw SolverError("gmsh: missing " + end);
}

}  // namespace

Mesh read_gmsh_mesh(std::istream& in, const TagTable& tags, bool require_tags, bool pair_periodic) {
    Mesh mesh;
    std::map<long, int> node_index;
    std::map<int, std::string> physical_names;  // physical id -> name
    bool have_nodes = false, have_elements = false;

    std::string section;
    while (!(section = next_section(in)).empty()) {
        if (section == "$MeshFormat") {
            double version = 0;
            int file_type = 0, data_size = 0;
            if (!(in >> version >> file_type >> data_size)) throw SolverError("gmsh: bad $MeshFormat");
            if (version < 2.0 || version >= 3.0 || file_type != 0)
                throw SolverError("gmsh: only ASCII v2.x files are supported");
            in.ignore(256, '\n');
            skip_to_end(in, section);
        } else if (section == "$PhysicalNames") {
            int n = 0;
            in >> n;
            in.ignore(256, '\n');
            for (int i = 0; i < n; ++i) {
                std::string line;
                std::getline(in, line);
                std::istringstream ls(line);
                int dim = 0, id = 0;
                std::string name;
                ls >> dim >> id;
                std::getline(ls, name);
                const auto a = name.find('"');
                const auto b = name.rfind('"');
                if (a != std::string::npos && b > a) name = name.substr(a + 1, b - a - 1);
                physical_names[id] = name;
            }
            skip_to_end(in, section);
        } else if (section == "$Nodes") {
            long n = 0;
            if (!(in >> n) || n < 3) throw SolverError("gmsh: bad node count");
            mesh.vertices.reserve(n);
            for (long i = 0; i < n; ++i) {
                long id;
                double x, y, z;
                if (!(in >> id >> x >> y >> z)) throw SolverError("gmsh: bad node line");
                node_index[id] = static_cast<int>(mesh.vertices.size());
                mesh.vertices.push_back({x, y});
            }
            in.ignore(256, '\n');
            skip_to_end(in, section);
            have_nodes = true;
        } else if (section == "$Elements") {
            long n = 0;
            if (!(in >> n)) throw SolverError("gmsh: bad element count");
            in.ignore(256, '\n');
            for (long i = 0; i < n; ++i) {
                std::string line;
                if (!std::getline(in, line)) throw SolverError("gmsh: truncated $Elements");
                std::istringstream ls(line);
                long id;
                int type, ntags;
                if (!(ls >> id >> type >> ntags)) throw SolverError("gmsh: bad element line");
                int physical = 0;
                for (int t = 0; t < ntags; ++t) {
                    int tag;
                    ls >> tag;
                    if (t == 0) physical = tag;
                }
                auto node = [&](long nid) {
                    auto it = node_index.find(nid);
                    if (it == node_index.end()) throw SolverError("gmsh: element references unknown node");
                    return it->second;
                };
                if (type == 1) {  // 2-node line: boundary tag carrier
                    long a, b;
                    if (!(ls >> a >> b)) throw SolverError("gmsh: bad line element");
                    std::string name = physical_names.count(physical) ? physical_names[physical]
                                                                      : "phys" + std::to_string(physical);
                    const int ia = node(a), ib = node(b);
                    mesh.tagged_edges[{std::min(ia, ib), std::max(ia, ib)}] = name;
                } else if (type == 2) {  // 3-node triangle
                    long a, b, c;
                    if (!(ls >> a >> b >> c)) throw SolverError("gmsh: bad triangle element");
                    mesh.cells.push_back({node(a), node(b), node(c)});
                } else if (type == 15) {
                    // point elements: ignored
                } else {
                    throw SolverError("gmsh: unsupported element type " + std::to_string(type));
                }
            }
            skip_to_end(in, section);
            have_elements = true;
        } else {
            skip_to_end(in, section);
        }
    }
    if (!have_nodes || !have_elements) throw SolverError("gmsh: missing $Nodes or $Elements");

    for (const auto& [name, tag] : tags) {
        BoundaryTag t = tag;
        t.name = name;
        mesh.tags.push_back(t);
    }
    mesh.finalize(require_tags, pair_periodic);
    return mesh;
}

}  // namespace dgns
