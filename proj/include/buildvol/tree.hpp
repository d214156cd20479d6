#pragma once

#include "buildvol/bigint.hpp"
#include "buildvol/extension.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace buildvol {

/// Number of vertices at distance exactly R >= 1 from a vertex of a
/// (t+1)-regular tree: (t+1) t^{R-1}. Throws DomainError for R <= 0 or t < 2.
BigInt alpha(std::int64_t t, std::int64_t radius);

/// Sphere count including R = 0, where it is 1.
BigInt sphere_size(std::int64_t t, std::int64_t radius);

/// Vertices within distance R in a (t+1)-regular tree:
/// 1 + (t+1)(t^R - 1)/(t - 1).
BigInt ball_size(std::int64_t t, std::int64_t radius);

/// Volume growth entropy of the (t+1)-regular tree with its counting measure:
/// log t.
double tree_entropy_closed_form(std::int64_t t);

enum class VertexKind : std::uint8_t {
  F,               // vertex of the F-tree
  Subdivision,     // interior point of a subdivided F-edge
  RamifiedBranch,  // in the E'-tree, off the F-tree
  UnramifiedBranch // in the E-tree only
};

struct TreeVertex {
  std::uint32_t parent = 0;
  std::uint32_t depth = 0;
  std::uint32_t first_child = 0;
  std::uint32_t child_count = 0;
  /// Unramified branches hanging below this vertex that were not generated;
  /// each is a rooted tree with q^f children per vertex.
  std::uint32_t stubs = 0;
  /// Position along a subdivided F-edge, 1..e-1; 0 otherwise.
  std::uint16_t edge_position = 0;
  VertexKind kind = VertexKind::F;

  bool marked_F() const noexcept { return kind == VertexKind::F; }
  bool marked_Eprime() const noexcept { return kind != VertexKind::UnramifiedBranch; }
};

struct TreeBuildOptions {
  std::size_t budget = 10'000'000;
  /// Generate unramified branches vertex by vertex instead of summarizing
  /// them as stubs.
  bool expand_unramified = false;
};

struct IntersectionCensus {
  std::int64_t radius = 0;
  BigInt in_F;
  BigInt in_Eprime;
  BigInt total;
  BigInt sphere_F;  // marked_F vertices at distance exactly radius
};

struct RegularityScan {
  std::size_t scanned = 0;     // explicit vertices with depth < radius
  std::size_t violations = 0;
  bool stubs_expanded = false;
  bool ok() const noexcept { return violations == 0; }
};

/// Ball of radius R (in d_E edge units) in the tree of SL2 over E, centred
/// at a vertex of the F-tree, with the F-tree and the intermediate E'-tree
/// marked. E' sits between F and E with E'/F totally ramified of degree e
/// and E/E' unramified of degree f.
///
/// Built breadth first. F-edges are subdivided into e segments, every
/// subdivision vertex carries q-1 extra branches so the E'-tree is
/// (q+1)-regular, and every E'-vertex gains q^f - q unramified branches so
/// the E-tree is (q^f+1)-regular. Vertex 0 is the basepoint.
class TreeBall {
 public:
  const ExtensionParams& params() const noexcept { return params_; }
  std::int64_t radius() const noexcept { return radius_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  const TreeVertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<TreeVertex>& vertices() const noexcept { return vertices_; }
  bool stubs_expanded() const noexcept { return expanded_; }

  /// Degree in the full E-tree; meaningful for depth < radius.
  std::int64_t degree(std::size_t i) const;
  /// Deterministic path identifier: "v" then child ordinals, e.g. "v.0.2".
  std::string id(std::size_t i) const;
  /// Path distance in the E-tree.
  std::int64_t distance(std::size_t i, std::size_t j) const;

  /// Vertices of the E-tree within distance r, stubs included.
  BigInt total_within(std::int64_t r) const;

  /// Graphviz rendering; only for radius <= 6 and expanded stubs.
  std::string to_dot() const;

  friend TreeBall build_extension_tree(const ExtensionParams& params, std::int64_t radius,
                                       const TreeBuildOptions& options);

 private:
  ExtensionParams params_;
  std::int64_t radius_ = 0;
  bool expanded_ = false;
  std::vector<TreeVertex> vertices_;
  std::vector<std::uint64_t> stubs_by_depth_;  // stub roots at depth k
};

/// Throws BudgetExceeded when more than `options.budget` vertices would be
/// generated.
TreeBall build_extension_tree(const ExtensionParams& params, std::int64_t radius,
                              const TreeBuildOptions& options = {});

/// Counts within d_E-radius r <= ball.radius(). in_F must equal
/// ball_size(q, floor(r / e)).
IntersectionCensus census_intersection(const TreeBall& ball, std::int64_t r);

std::vector<IntersectionCensus> census_profile(const TreeBall& ball);

/// Checks that every explicit vertex of depth < radius has degree q^f + 1.
RegularityScan scan_regularity(const TreeBall& ball);

}  // namespace buildvol
