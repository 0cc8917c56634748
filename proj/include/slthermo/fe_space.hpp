#pragma once

#include "slthermo/mesh.hpp"
#include "slthermo/quadrature.hpp"
#include "slthermo/tensor.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace slthermo {

/// Lagrange Q_k shape functions on [-1, 1]^2 with equispaced nodes in
/// lexicographic order (xi fastest), tabulated on a quadrature rule.
class ShapeTable {
 public:
  ShapeTable(int order, int points_per_direction);
  /// Tabulation on arbitrary reference points.
  ShapeTable(int order, std::vector<QuadraturePoint2D> points);

  int order() const { return order_; }
  int num_shapes() const { return (order_ + 1) * (order_ + 1); }
  const std::vector<QuadraturePoint2D>& rule() const { return rule_; }
  int num_qp() const { return static_cast<int>(rule_.size()); }

  /// Rows: quadrature points, columns: shapes.
  const Eigen::MatrixXd& values() const { return values_; }
  const Eigen::MatrixXd& d_xi() const { return d_xi_; }
  const Eigen::MatrixXd& d_eta() const { return d_eta_; }

  /// Tabulates the shapes at an arbitrary reference point.
  static void evaluate(int order, double xi, double eta, Eigen::Ref<Eigen::VectorXd> value,
                       Eigen::Ref<Eigen::VectorXd> dxi, Eigen::Ref<Eigen::VectorXd> deta);

 private:
  int order_;
  std::vector<QuadraturePoint2D> rule_;
  Eigen::MatrixXd values_;
  Eigen::MatrixXd d_xi_;
  Eigen::MatrixXd d_eta_;
};

/// Shape data of one element mapped to physical space (bilinear geometry).
struct ElementValues {
  Eigen::VectorXd jxw;    ///< per qp
  Eigen::MatrixX2d xy;    ///< physical qp coordinates
  Eigen::MatrixXd value;  ///< qp x shape
  Eigen::MatrixXd dx;     ///< qp x shape
  Eigen::MatrixXd dy;     ///< qp x shape
};

/// Continuous Q1 or Q2 Lagrange space over a CrackedMesh with scalar or
/// two-component values. Dofs of a vector space are interleaved per node.
/// Nodes on the crack seam are duplicated like the mesh nodes, so the space
/// is discontinuous across the crack faces only.
///
/// The mesh must outlive the space.
class FESpace {
 public:
  FESpace(const CrackedMesh& mesh, int order, int components);

  const CrackedMesh& mesh() const { return *mesh_; }
  int order() const { return order_; }
  int components() const { return components_; }
  int num_nodes() const { return lattice_.size(); }
  int num_dofs() const { return num_nodes() * components_; }
  int num_elements() const { return mesh_->num_elements(); }
  int nodes_per_element() const { return (order_ + 1) * (order_ + 1); }
  int dofs_per_element() const { return nodes_per_element() * components_; }
  int dof(int node, int component) const { return node * components_ + component; }

  std::span<const int> element_nodes(int e) const {
    return {element_nodes_.data() + static_cast<std::size_t>(e) * nodes_per_element(),
            static_cast<std::size_t>(nodes_per_element())};
  }
  Point2 node_point(int node) const { return lattice_.point(node); }
  const SeamLattice& lattice() const { return lattice_; }

  /// FE node sitting on a geometric mesh node.
  int node_of_mesh_node(int mesh_node) const;

  /// Nodes on an outer boundary side (both copies of a split mouth node).
  std::vector<int> boundary_nodes(FacetTag side) const;

  /// Default rule with (order + 1)^2 Gauss points.
  const ShapeTable& shapes() const { return shapes_; }

  ElementValues element_values(int e, const ShapeTable& table) const;
  ElementValues element_values(int e) const { return element_values(e, shapes_); }

 private:
  const CrackedMesh* mesh_;
  int order_;
  int components_;
  SeamLattice lattice_;
  std::vector<int> element_nodes_;
  ShapeTable shapes_;
};

/// Dof vector bound to a space.
struct FEField {
  const FESpace* space = nullptr;
  Eigen::VectorXd values;

  static FEField zeros(const FESpace& space) { return {&space, Eigen::VectorXd::Zero(space.num_dofs())}; }

  /// Nodal interpolation of a scalar function (scalar spaces).
  template <class Fn>
  static FEField interpolate(const FESpace& space, Fn&& fn);

  /// Nodal interpolation of a 2-vector function (vector spaces).
  template <class Fn>
  static FEField interpolate_vector(const FESpace& space, Fn&& fn);

  /// Element-local dof values in local (node, component) order.
  Eigen::VectorXd local_values(int e) const;
};

template <class Fn>
FEField FEField::interpolate(const FESpace& space, Fn&& fn) {
  FEField f = zeros(space);
  for (int n = 0; n < space.num_nodes(); ++n) {
    const Point2 p = space.node_point(n);
    f.values[n] = fn(p.x, p.y);
  }
  return f;
}

template <class Fn>
FEField FEField::interpolate_vector(const FESpace& space, Fn&& fn) {
  FEField f = zeros(space);
  for (int n = 0; n < space.num_nodes(); ++n) {
    const Point2 p = space.node_point(n);
    const Eigen::Vector2d v = fn(p.x, p.y);
    f.values[space.dof(n, 0)] = v[0];
    f.values[space.dof(n, 1)] = v[1];
  }
  return f;
}

/// Gradient of a scalar field at quadrature point qp of element e.
Eigen::Vector2d thermal_gradient_at_qp(const FEField& theta, int element, int qp);

/// Symmetric gradient (Mandel form) of a vector field at quadrature point qp of element e.
SymTensor2 evaluate_strain(const FEField& u, int element, int qp);

/// Strain from element-local dofs and mapped shape gradients at one qp.
SymTensor2 strain_at(const Eigen::VectorXd& local_u, const ElementValues& ev, int qp);

}  // namespace slthermo
