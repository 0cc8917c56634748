#include "slthermo/mesh.hpp"

#include "slthermo/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace slthermo {

std::string_view to_string(FacetTag tag) {
  switch (tag) {
    case FacetTag::bottom: return "G1_bottom";
    case FacetTag::right: return "G2_right";
    case FacetTag::top: return "G3_top";
    case FacetTag::left: return "G4_left";
    case FacetTag::crack_upper: return "Gc_upper";
    case FacetTag::crack_lower: return "Gc_lower";
  }
  return "unknown";
}

namespace {

/// Returns round(value * divisions) if it is an integer, else -1.
int aligned_index(double value, int divisions) {
  const double scaled = value * divisions;
  const double nearest = std::round(scaled);
  if (std::abs(scaled - nearest) > 1e-9 * std::max(1.0, std::abs(scaled))) return -1;
  return static_cast<int>(nearest);
}

}  // namespace

SeamLattice::SeamLattice(int ni, int nj, const std::optional<CrackSpec>& crack) : ni_(ni), nj_(nj) {
  if (ni < 1 || nj < 1) throw std::invalid_argument("lattice needs at least one cell per direction");
  const int base = (ni + 1) * (nj + 1);
  points_.reserve(base);
  lattice_.reserve(base);
  for (int j = 0; j <= nj; ++j) {
    for (int i = 0; i <= ni; ++i) {
      points_.push_back({static_cast<double>(i) / ni, static_cast<double>(j) / nj});
      lattice_.emplace_back(i, j);
    }
  }
  lower_id_.assign(ni + 1, -1);
  if (!crack) return;

  if (!(crack->tip_x > 0.0 && crack->tip_x < 1.0)) {
    std::ostringstream msg;
    msg << "crack tip x=" << crack->tip_x << " must lie strictly inside (0, 1)";
    throw MisalignedCrack(msg.str());
  }
  if (!(crack->y_line > 0.0 && crack->y_line < 1.0)) {
    std::ostringstream msg;
    msg << "crack line y=" << crack->y_line << " must lie strictly inside (0, 1)";
    throw MisalignedCrack(msg.str());
  }
  crack_row_ = aligned_index(crack->y_line, nj);
  tip_col_ = aligned_index(crack->tip_x, ni);
  if (crack_row_ <= 0 || crack_row_ >= nj) {
    std::ostringstream msg;
    msg << "crack line y=" << crack->y_line << " is not a mesh line of a grid with " << nj << " rows";
    crack_row_ = -1;
    throw MisalignedCrack(msg.str());
  }
  if (tip_col_ <= 0 || tip_col_ >= ni) {
    std::ostringstream msg;
    msg << "crack tip x=" << crack->tip_x << " is not a mesh line of a grid with " << ni << " columns";
    crack_row_ = -1;
    throw MisalignedCrack(msg.str());
  }

  if (crack->mouth_edge == MouthEdge::left) {
    seam_begin_ = 0;
    seam_end_ = tip_col_;
  } else {
    seam_begin_ = tip_col_ + 1;
    seam_end_ = ni + 1;
  }
  auto add_pair = [&](int i) {
    const int lower = static_cast<int>(points_.size());
    points_.push_back(points_[crack_row_ * (ni + 1) + i]);
    lattice_.emplace_back(i, crack_row_);
    lower_id_[i] = lower;
    pairs_.emplace_back(crack_row_ * (ni + 1) + i, lower);
  };
  if (crack->mouth_edge == MouthEdge::left) {
    for (int i = seam_begin_; i < seam_end_; ++i) add_pair(i);
  } else {
    for (int i = seam_end_ - 1; i >= seam_begin_; --i) add_pair(i);
  }
}

bool SeamLattice::on_seam(int i, int j) const {
  return crack_row_ >= 0 && j == crack_row_ && i >= seam_begin_ && i < seam_end_;
}

int SeamLattice::id(int i, int j, bool below) const {
  if (below && on_seam(i, j)) return lower_id_[i];
  return j * (ni_ + 1) + i;
}

bool CrackedMesh::below_crack(int e) const {
  if (!crack) return false;
  const int row = static_cast<int>(std::lround(crack->y_line * ny));
  return e / nx < row;
}

CrackedMesh build_grid(int nx, int ny, const std::optional<CrackSpec>& crack) {
  const SeamLattice lattice(nx, ny, crack);
  CrackedMesh mesh;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.crack = crack;
  mesh.nodes.reserve(lattice.size());
  for (int id = 0; id < lattice.size(); ++id) mesh.nodes.push_back(lattice.point(id));

  const int crack_row = lattice.crack_row();
  const int tip = lattice.tip_column();
  const bool left_mouth = crack && crack->mouth_edge == MouthEdge::left;
  auto column_on_crack = [&](int i) {
    // Cell column i touches the crack along its horizontal edge.
    return left_mouth ? i < tip : i >= tip;
  };

  mesh.elements.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    const bool below = lattice.cracked() && j < crack_row;
    for (int i = 0; i < nx; ++i) {
      const std::array<int, 4> corners{lattice.id(i, j, below), lattice.id(i + 1, j, below),
                                       lattice.id(i + 1, j + 1, below), lattice.id(i, j + 1, below)};
      mesh.elements.push_back(corners);
      if (j == 0) mesh.facets.push_back({corners[0], corners[1], FacetTag::bottom});
      if (i == nx - 1) mesh.facets.push_back({corners[1], corners[2], FacetTag::right});
      if (j == ny - 1) mesh.facets.push_back({corners[2], corners[3], FacetTag::top});
      if (i == 0) mesh.facets.push_back({corners[3], corners[0], FacetTag::left});
      if (lattice.cracked() && column_on_crack(i)) {
        if (j == crack_row) mesh.facets.push_back({corners[0], corners[1], FacetTag::crack_upper});
        if (j == crack_row - 1) mesh.facets.push_back({corners[2], corners[3], FacetTag::crack_lower});
      }
    }
  }
  if (lattice.cracked()) {
    mesh.tip_node = lattice.id(tip, crack_row);
    mesh.face_pairs = lattice.seam_pairs();
  }
  return mesh;
}

CrackedMesh build_cracked_grid(int nx, int ny, const CrackSpec& crack) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("cracked grid needs nx, ny >= 2");
  return build_grid(nx, ny, crack);
}

CrackedMesh refine_uniform(const CrackedMesh& mesh) { return build_grid(2 * mesh.nx, 2 * mesh.ny, mesh.crack); }

void write_mesh_dump(const CrackedMesh& mesh, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << "# nodes " << mesh.num_nodes() << '\n';
  for (int n = 0; n < mesh.num_nodes(); ++n) out << n << ' ' << mesh.nodes[n].x << ' ' << mesh.nodes[n].y << '\n';
  out << "# elements " << mesh.num_elements() << '\n';
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& c = mesh.elements[e];
    out << e << ' ' << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  }
  out << "# facets " << mesh.facets.size() << '\n';
  for (const auto& f : mesh.facets) out << "facet " << f.node_a << ' ' << f.node_b << ' ' << to_string(f.tag) << '\n';
  out.precision(old_precision);
}

}  // namespace slthermo
