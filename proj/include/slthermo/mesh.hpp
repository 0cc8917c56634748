#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace slthermo {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

enum class MouthEdge { left, right };

/// Straight horizontal edge crack running from one outer edge to an interior tip.
struct CrackSpec {
  double y_line = 0.5;
  MouthEdge mouth_edge = MouthEdge::left;
  double tip_x = 0.5;

  bool operator==(const CrackSpec&) const = default;
};

enum class FacetTag : std::uint8_t { bottom, right, top, left, crack_upper, crack_lower };

std::string_view to_string(FacetTag tag);

struct TaggedFacet {
  int node_a;
  int node_b;
  FacetTag tag;
};

/// Numbering of a (ni+1) x (nj+1) point lattice on the unit square with the
/// crack seam split: lattice points strictly on the open crack span (the
/// mouth included, the tip excluded) get a second "lower" copy numbered after
/// the (ni+1)(nj+1) base points. Shared by the geometric mesh and the
/// higher-order dof layouts.
class SeamLattice {
 public:
  SeamLattice(int ni, int nj, const std::optional<CrackSpec>& crack);

  int ni() const { return ni_; }
  int nj() const { return nj_; }
  int size() const { return static_cast<int>(points_.size()); }
  bool cracked() const { return crack_row_ >= 0; }
  int crack_row() const { return crack_row_; }
  int tip_column() const { return tip_col_; }

  /// Id of lattice point (i, j) as seen from a cell lying below the crack
  /// (`below = true`) or anywhere else.
  int id(int i, int j, bool below = false) const;
  bool on_seam(int i, int j) const;
  Point2 point(int id) const { return points_[id]; }
  /// Lattice coordinates of an id (duplicates report their base position).
  std::pair<int, int> lattice_of(int id) const { return lattice_[id]; }

  /// (upper, lower) ids ordered from the mouth towards the tip.
  const std::vector<std::pair<int, int>>& seam_pairs() const { return pairs_; }

 private:
  int ni_;
  int nj_;
  int crack_row_ = -1;
  int tip_col_ = -1;
  int seam_begin_ = 0;  // first seam column (inclusive)
  int seam_end_ = 0;    // past-the-end seam column
  std::vector<Point2> points_;
  std::vector<std::pair<int, int>> lattice_;
  std::vector<int> lower_id_;  // indexed by column, -1 when not on the seam
  std::vector<std::pair<int, int>> pairs_;
};

/// Structured quadrilateral mesh of the unit square, optionally cut by an edge crack.
struct CrackedMesh {
  int nx = 0;
  int ny = 0;
  std::optional<CrackSpec> crack;

  std::vector<Point2> nodes;
  /// Counterclockwise corner ids; element (i, j) is stored at j * nx + i.
  std::vector<std::array<int, 4>> elements;
  std::vector<TaggedFacet> facets;
  int tip_node = -1;
  /// (upper, lower) duplicated crack-face nodes, mouth first.
  std::vector<std::pair<int, int>> face_pairs;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  bool cracked() const { return crack.has_value(); }
  /// True when element e lies below the crack line.
  bool below_crack(int e) const;
};

/// Throws std::invalid_argument for nx, ny < 1 and MisalignedCrack when the
/// crack does not fall on mesh lines.
CrackedMesh build_grid(int nx, int ny, const std::optional<CrackSpec>& crack = std::nullopt);

/// Cracked grid; requires nx, ny >= 2.
CrackedMesh build_cracked_grid(int nx, int ny, const CrackSpec& crack);

/// Splits every quad into four; crack topology and tags carry over.
CrackedMesh refine_uniform(const CrackedMesh& mesh);

/// Plain-text listing: "# nodes N" then "id x y", "# elements M" then
/// "id n0 n1 n2 n3", "# facets F" then "facet n_a n_b TAG".
void write_mesh_dump(const CrackedMesh& mesh, std::ostream& out);

}  // namespace slthermo
