#ifndef HDREMESH_TYPES_HPP
#define HDREMESH_TYPES_HPP

#include <array>
#include <cstddef>
#include <limits>

#include <Eigen/Dense>

namespace hdremesh {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

using NodeIndex = std::size_t;
using ElementIndex = std::size_t;
using EdgeIndex = std::size_t;

using Triangle = std::array<NodeIndex, 3>;

inline constexpr std::size_t invalid_index = std::numeric_limits<std::size_t>::max();

enum class DimensionMode { planar2d, surface3d };

enum class Configuration { initial, current };

} // namespace hdremesh

#endif
