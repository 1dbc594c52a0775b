#include "hdremesh/mesh_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hdremesh/csv.hpp"
#include "hdremesh/errors.hpp"

namespace hdremesh::io {

namespace {

// Next line that is neither blank nor a '#' comment.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') {
            continue;
        }
        return true;
    }
    return false;
}

[[noreturn]] void parse_failure(const std::string& what) {
    throw Error(ErrorCategory::io, "malformed mesh file: " + what);
}

std::string lowercase_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

} // namespace

TriangleSoup read_off(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) {
        parse_failure("empty input");
    }
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") {
        parse_failure("missing OFF header");
    }
    std::size_t nv = 0, nf = 0, ne = 0;
    // counts may share the header line
    if (!(header >> nv >> nf)) {
        if (!next_content_line(in, line)) {
            parse_failure("missing counts line");
        }
        std::istringstream counts(line);
        if (!(counts >> nv >> nf)) {
            parse_failure("bad counts line");
        }
        counts >> ne;
    }

    TriangleSoup soup;
    soup.positions.reserve(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        if (!next_content_line(in, line)) {
            parse_failure("truncated vertex list");
        }
        std::istringstream ls(line);
        double x = 0, y = 0, z = 0;
        if (!(ls >> x >> y >> z)) {
            parse_failure("bad vertex line " + std::to_string(i));
        }
        soup.positions.emplace_back(x, y, z);
    }
    soup.triangles.reserve(nf);
    for (std::size_t i = 0; i < nf; ++i) {
        if (!next_content_line(in, line)) {
            parse_failure("truncated face list");
        }
        std::istringstream ls(line);
        std::size_t k = 0;
        Triangle t{};
        if (!(ls >> k >> t[0] >> t[1] >> t[2]) || k != 3) {
            parse_failure("face " + std::to_string(i) + " is not a triangle");
        }
        soup.triangles.push_back(t);
    }
    return soup;
}

TriangleSoup read_obj(std::istream& in) {
    TriangleSoup soup;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) {
            continue;
        }
        if (tag == "v") {
            double x = 0, y = 0, z = 0;
            if (!(ls >> x >> y >> z)) {
                parse_failure("bad vertex on line " + std::to_string(lineno));
            }
            soup.positions.emplace_back(x, y, z);
        } else if (tag == "f") {
            std::vector<long> ids;
            std::string token;
            while (ls >> token) {
                // "i", "i/t", "i//n" and "i/t/n" all start with the vertex index
                const std::string head = token.substr(0, token.find('/'));
                long idx = 0;
                const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), idx);
                if (ec != std::errc() || ptr != head.data() + head.size()) {
                    parse_failure("bad face token on line " + std::to_string(lineno));
                }
                ids.push_back(idx);
            }
            if (ids.size() != 3) {
                parse_failure("face on line " + std::to_string(lineno) + " is not a triangle");
            }
            Triangle t{};
            for (int k = 0; k < 3; ++k) {
                const long idx = ids[k];
                const long resolved =
                    idx > 0 ? idx - 1 : static_cast<long>(soup.positions.size()) + idx;
                if (idx == 0 || resolved < 0) {
                    parse_failure("bad index on line " + std::to_string(lineno));
                }
                t[k] = static_cast<NodeIndex>(resolved);
            }
            soup.triangles.push_back(t);
        }
    }
    return soup;
}

void write_off(std::ostream& out, std::span<const Vec3> positions,
               std::span<const Triangle> triangles) {
    out << "OFF\n" << positions.size() << ' ' << triangles.size() << " 0\n";
    for (const auto& p : positions) {
        out << format_number(p.x()) << ' ' << format_number(p.y()) << ' ' << format_number(p.z())
            << '\n';
    }
    for (const auto& t : triangles) {
        out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
    }
}

void write_obj(std::ostream& out, std::span<const Vec3> positions,
               std::span<const Triangle> triangles) {
    for (const auto& p : positions) {
        out << "v " << format_number(p.x()) << ' ' << format_number(p.y()) << ' '
            << format_number(p.z()) << '\n';
    }
    for (const auto& t : triangles) {
        out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
    }
}

TriangleSoup read_mesh_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open mesh file", path.string());
    }
    const std::string ext = lowercase_extension(path);
    try {
        if (ext == ".off") {
            return read_off(in);
        }
        if (ext == ".obj") {
            return read_obj(in);
        }
    } catch (const Error& err) {
        throw IoError(err.what(), path.string());
    }
    throw IoError("unsupported mesh extension '" + ext + "'", path.string());
}

void write_mesh_file(const std::filesystem::path& path, const SurfaceMesh& mesh,
                     Configuration config) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot write mesh file", path.string());
    }
    const auto positions = mesh.positions(config);
    const auto triangles = mesh.triangles();
    if (lowercase_extension(path) == ".obj") {
        write_obj(out, positions, triangles);
    } else {
        write_off(out, positions, triangles);
    }
    if (!out) {
        throw IoError("failed writing mesh file", path.string());
    }
}

DimensionMode infer_mode(std::span<const Vec3> positions) {
    const bool flat = std::all_of(positions.begin(), positions.end(),
                                  [](const Vec3& p) { return p.z() == 0.0; });
    return flat ? DimensionMode::planar2d : DimensionMode::surface3d;
}

SurfaceMesh read_history_pair(const std::filesystem::path& initial_path,
                              const std::filesystem::path& current_path) {
    const TriangleSoup initial = read_mesh_file(initial_path);
    const TriangleSoup current = read_mesh_file(current_path);
    if (initial.positions.size() != current.positions.size() ||
        initial.triangles != current.triangles) {
        throw IoError("connectivity of " + initial_path.string() + " differs from",
                      current_path.string());
    }
    const DimensionMode mode =
        infer_mode(initial.positions) == DimensionMode::planar2d &&
                infer_mode(current.positions) == DimensionMode::planar2d
            ? DimensionMode::planar2d
            : DimensionMode::surface3d;
    return SurfaceMesh::build_with_history(initial.positions, current.positions,
                                           initial.triangles, mode);
}

void write_history_pair(const SurfaceMesh& mesh, const std::filesystem::path& initial_path,
                        const std::filesystem::path& current_path) {
    write_mesh_file(initial_path, mesh, Configuration::initial);
    write_mesh_file(current_path, mesh, Configuration::current);
}

} // namespace hdremesh::io
