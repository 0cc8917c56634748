#include "slthermo/fe_space.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace slthermo {

namespace {

void lagrange_1d(int order, double x, double* value, double* derivative) {
  const int n = order + 1;
  auto node = [order](int a) { return -1.0 + 2.0 * a / order; };
  for (int a = 0; a < n; ++a) {
    double v = 1.0;
    double d = 0.0;
    for (int c = 0; c < n; ++c) {
      if (c == a) continue;
      const double denom = node(a) - node(c);
      double term = 1.0 / denom;
      for (int b = 0; b < n; ++b) {
        if (b == a || b == c) continue;
        term *= (x - node(b)) / (node(a) - node(b));
      }
      d += term;
      v *= (x - node(c)) / denom;
    }
    value[a] = v;
    derivative[a] = d;
  }
}

}  // namespace

void ShapeTable::evaluate(int order, double xi, double eta, Eigen::Ref<Eigen::VectorXd> value,
                          Eigen::Ref<Eigen::VectorXd> dxi, Eigen::Ref<Eigen::VectorXd> deta) {
  double vx[3], dx[3], vy[3], dy[3];
  lagrange_1d(order, xi, vx, dx);
  lagrange_1d(order, eta, vy, dy);
  const int n = order + 1;
  for (int b = 0; b < n; ++b) {
    for (int a = 0; a < n; ++a) {
      const int s = a + n * b;
      value[s] = vx[a] * vy[b];
      dxi[s] = dx[a] * vy[b];
      deta[s] = vx[a] * dy[b];
    }
  }
}

ShapeTable::ShapeTable(int order, int points_per_direction) : ShapeTable(order, gauss_square(points_per_direction)) {}

ShapeTable::ShapeTable(int order, std::vector<QuadraturePoint2D> points) : order_(order), rule_(std::move(points)) {
  if (order != 1 && order != 2) throw std::invalid_argument("element order must be 1 or 2");
  const int nq = num_qp();
  const int ns = num_shapes();
  values_.resize(nq, ns);
  d_xi_.resize(nq, ns);
  d_eta_.resize(nq, ns);
  Eigen::VectorXd v(ns), dx(ns), dy(ns);
  for (int q = 0; q < nq; ++q) {
    evaluate(order, rule_[q].xi, rule_[q].eta, v, dx, dy);
    values_.row(q) = v.transpose();
    d_xi_.row(q) = dx.transpose();
    d_eta_.row(q) = dy.transpose();
  }
}

FESpace::FESpace(const CrackedMesh& mesh, int order, int components)
    : mesh_(&mesh),
      order_(order),
      components_(components),
      lattice_(order * mesh.nx, order * mesh.ny, mesh.crack),
      shapes_(order, order + 1) {
  if (components != 1 && components != 2) throw std::invalid_argument("space must have 1 or 2 components");
  const int n = order + 1;
  element_nodes_.reserve(static_cast<std::size_t>(mesh.num_elements()) * n * n);
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const int ei = e % mesh.nx;
    const int ej = e / mesh.nx;
    const bool below = mesh.below_crack(e);
    for (int b = 0; b < n; ++b) {
      for (int a = 0; a < n; ++a) element_nodes_.push_back(lattice_.id(order * ei + a, order * ej + b, below));
    }
  }
}

int FESpace::node_of_mesh_node(int mesh_node) const {
  const int base = (mesh_->nx + 1) * (mesh_->ny + 1);
  if (mesh_node < base) {
    const int i = mesh_node % (mesh_->nx + 1);
    const int j = mesh_node / (mesh_->nx + 1);
    return lattice_.id(order_ * i, order_ * j);
  }
  for (const auto& [upper, lower] : mesh_->face_pairs) {
    if (lower == mesh_node) {
      const int i = upper % (mesh_->nx + 1);
      const int j = upper / (mesh_->nx + 1);
      return lattice_.id(order_ * i, order_ * j, true);
    }
  }
  throw std::out_of_range("mesh node id out of range");
}

std::vector<int> FESpace::boundary_nodes(FacetTag side) const {
  std::vector<int> nodes;
  const int ni = lattice_.ni();
  const int nj = lattice_.nj();
  auto add = [&](int i, int j) {
    nodes.push_back(lattice_.id(i, j));
    if (lattice_.on_seam(i, j)) nodes.push_back(lattice_.id(i, j, true));
  };
  switch (side) {
    case FacetTag::bottom: for (int i = 0; i <= ni; ++i) add(i, 0); break;
    case FacetTag::top: for (int i = 0; i <= ni; ++i) add(i, nj); break;
    case FacetTag::left: for (int j = 0; j <= nj; ++j) add(0, j); break;
    case FacetTag::right: for (int j = 0; j <= nj; ++j) add(ni, j); break;
    case FacetTag::crack_upper:
    case FacetTag::crack_lower:
      for (const auto& [upper, lower] : lattice_.seam_pairs()) nodes.push_back(side == FacetTag::crack_upper ? upper : lower);
      if (lattice_.cracked()) nodes.push_back(lattice_.id(lattice_.tip_column(), lattice_.crack_row()));
      break;
  }
  return nodes;
}

ElementValues FESpace::element_values(int e, const ShapeTable& table) const {
  const auto& corners = mesh_->elements[e];
  Eigen::Matrix<double, 4, 2> xc;
  for (int c = 0; c < 4; ++c) xc.row(c) << mesh_->nodes[corners[c]].x, mesh_->nodes[corners[c]].y;

  const int nq = table.num_qp();
  ElementValues ev;
  ev.jxw.resize(nq);
  ev.xy.resize(nq, 2);
  ev.value = table.values();
  ev.dx.resize(nq, table.num_shapes());
  ev.dy.resize(nq, table.num_shapes());
  for (int q = 0; q < nq; ++q) {
    const double xi = table.rule()[q].xi;
    const double eta = table.rule()[q].eta;
    const Eigen::Vector4d n((1 - xi) * (1 - eta), (1 + xi) * (1 - eta), (1 + xi) * (1 + eta), (1 - xi) * (1 + eta));
    const Eigen::Vector4d n_xi(-(1 - eta), (1 - eta), (1 + eta), -(1 + eta));
    const Eigen::Vector4d n_eta(-(1 - xi), -(1 + xi), (1 + xi), (1 - xi));
    ev.xy.row(q) = 0.25 * (n.transpose() * xc);
    Eigen::Matrix2d jac;
    jac.col(0) = 0.25 * (xc.transpose() * n_xi);
    jac.col(1) = 0.25 * (xc.transpose() * n_eta);
    const double det = jac.determinant();
    if (!(det > 0.0)) {
      std::ostringstream msg;
      msg << "non-positive Jacobian " << det << " in element " << e;
      throw std::runtime_error(msg.str());
    }
    ev.jxw[q] = det * table.rule()[q].w;
    const Eigen::Matrix2d inv_t = jac.inverse().transpose();
    for (int s = 0; s < table.num_shapes(); ++s) {
      const Eigen::Vector2d g = inv_t * Eigen::Vector2d(table.d_xi()(q, s), table.d_eta()(q, s));
      ev.dx(q, s) = g[0];
      ev.dy(q, s) = g[1];
    }
  }
  return ev;
}

Eigen::VectorXd FEField::local_values(int e) const {
  const auto nodes = space->element_nodes(e);
  const int nc = space->components();
  Eigen::VectorXd local(static_cast<Eigen::Index>(nodes.size()) * nc);
  for (std::size_t a = 0; a < nodes.size(); ++a) {
    for (int c = 0; c < nc; ++c) local[a * nc + c] = values[space->dof(nodes[a], c)];
  }
  return local;
}

Eigen::Vector2d thermal_gradient_at_qp(const FEField& theta, int element, int qp) {
  if (theta.space->components() != 1) throw std::invalid_argument("thermal gradient needs a scalar field");
  const ElementValues ev = theta.space->element_values(element);
  const Eigen::VectorXd local = theta.local_values(element);
  return {ev.dx.row(qp).dot(local), ev.dy.row(qp).dot(local)};
}

SymTensor2 strain_at(const Eigen::VectorXd& local_u, const ElementValues& ev, int qp) {
  double ux_x = 0.0, ux_y = 0.0, uy_x = 0.0, uy_y = 0.0;
  for (Eigen::Index s = 0; s < ev.dx.cols(); ++s) {
    const double ux = local_u[2 * s];
    const double uy = local_u[2 * s + 1];
    ux_x += ev.dx(qp, s) * ux;
    ux_y += ev.dy(qp, s) * ux;
    uy_x += ev.dx(qp, s) * uy;
    uy_y += ev.dy(qp, s) * uy;
  }
  return SymTensor2::from_components(ux_x, uy_y, 0.5 * (ux_y + uy_x));
}

SymTensor2 evaluate_strain(const FEField& u, int element, int qp) {
  if (u.space->components() != 2) throw std::invalid_argument("strain needs a vector field");
  return strain_at(u.local_values(element), u.space->element_values(element), qp);
}

}  // namespace slthermo
