#ifndef HDREMESH_SHAPES_HPP
#define HDREMESH_SHAPES_HPP

#include <cstdint>

#include "hdremesh/mesh.hpp"

namespace hdremesh::shapes {

// Unstructured planar mesh of [0, side]^2 at the given target edge length.
SurfaceMesh square(double side, double edge_length, std::uint64_t seed);

// Open cylinder of the given radius around the z axis, z in [0, height]. Rows
// of nodes are staggered by half a spacing; the seed picks the angular phase.
SurfaceMesh cylinder(double radius, double height, double edge_length, std::uint64_t seed);

// Closed capsule along the z axis: a tube of the given radius and straight
// length capped by hemispheres, meshed isotropically at the target length.
SurfaceMesh capsule(double radius, double length, double edge_length, std::uint64_t seed);

// Icosphere-like closed surface from a subdivided octahedron.
SurfaceMesh sphere(double radius, int subdivisions);

} // namespace hdremesh::shapes

#endif
