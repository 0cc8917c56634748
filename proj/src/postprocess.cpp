#include "slthermo/postprocess.hpp"

#include "slthermo/errors.hpp"

#include <algorithm>
#include <charconv>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slthermo {

namespace {

struct QpState {
  SymTensor2 strain;
  SymTensor2 stress;
  SymTensor2 thermal;
  double energy = 0.0;
  double jxw = 0.0;
};

NodalField make_field(std::string name, std::string units, FieldKind kind, int nodes) {
  const int cols = kind == FieldKind::scalar ? 1 : kind == FieldKind::vector ? 2 : 3;
  return {std::move(name), std::move(units), kind, Eigen::MatrixXd::Zero(nodes, cols)};
}

std::ofstream open_for_writing(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  return out;
}

void check_stream(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value, std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

FieldMap recover_fields(const FEField& u, const FEField& theta, const MaterialParams& p,
                        const RecoveryOptions& options) {
  const FESpace& space = *u.space;
  const FESpace& tspace = *theta.space;
  const CrackedMesh& mesh = space.mesh();
  if (space.components() != 2 || tspace.components() != 1 || &tspace.mesh() != &mesh) {
    throw std::invalid_argument("recover_fields needs a displacement and a temperature on the same mesh");
  }

  // Corner evaluation samples each element at its four vertices (in the
  // element's counterclockwise corner order); averaging samples at the
  // Gauss points and spreads each sample to all four corners.
  const bool at_corners = options.method == NodalRecovery::corner_values;
  const ShapeTable& volume_table = space.shapes();
  const ShapeTable table = at_corners ? ShapeTable(space.order(), {{-1, -1, 1}, {1, -1, 1}, {1, 1, 1}, {-1, 1, 1}})
                                      : volume_table;
  const ShapeTable theta_table(tspace.order(), table.rule());
  const int ne = mesh.num_elements();
  const int nq = table.num_qp();
  std::vector<QpState> states(static_cast<std::size_t>(ne) * nq);
  std::vector<std::exception_ptr> failures(ne);

  auto element_kernel = [&](int e) {
    try {
      const ElementValues ev = space.element_values(e, table);
      const ElementValues tv = tspace.element_values(e, theta_table);
      const double area = at_corners ? space.element_values(e, volume_table).jxw.sum() : 0.0;
      const Eigen::VectorXd u_local = u.local_values(e);
      const Eigen::VectorXd t_local = theta.local_values(e);
      for (int q = 0; q < nq; ++q) {
        QpState& s = states[static_cast<std::size_t>(e) * nq + q];
        s.strain = strain_at(u_local, ev, q);
        try {
          s.stress = stress_from_strain(s.strain, p);
        } catch (const InadmissibleStrain& err) {
          std::ostringstream where;
          where << "element " << e << (at_corners ? ", corner " : ", quadrature point ") << q;
          throw InadmissibleStrain(err.energy_norm(), p.b(), where.str());
        }
        s.thermal = thermal_stress(s.stress, tv.value.row(q).dot(t_local), p);
        s.energy = strain_energy_density(s.strain, p);
        s.jxw = at_corners ? area : ev.jxw[q];
      }
    } catch (...) {
      failures[e] = std::current_exception();
    }
  };
  if (options.execution == Execution::serial) {
    for (int e = 0; e < ne; ++e) element_kernel(e);
  } else {
#pragma omp parallel for schedule(static)
    for (int e = 0; e < ne; ++e) element_kernel(e);
  }
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  const int nn = mesh.num_nodes();
  Eigen::VectorXd weight = Eigen::VectorXd::Zero(nn);
  Eigen::MatrixXd strain = Eigen::MatrixXd::Zero(nn, 3);
  Eigen::MatrixXd stress = Eigen::MatrixXd::Zero(nn, 3);
  Eigen::MatrixXd thermal = Eigen::MatrixXd::Zero(nn, 3);
  Eigen::VectorXd energy = Eigen::VectorXd::Zero(nn);
  for (int e = 0; e < ne; ++e) {
    const auto& corners = mesh.elements[e];
    for (int q = 0; q < nq; ++q) {
      const QpState& s = states[static_cast<std::size_t>(e) * nq + q];
      for (int c = 0; c < 4; ++c) {
        if (at_corners && c != q) continue;
        const double w = s.jxw;
        const int n = corners[c];
        weight[n] += w;
        strain.row(n) += w * s.strain.mandel().transpose();
        stress.row(n) += w * s.stress.mandel().transpose();
        thermal.row(n) += w * s.thermal.mandel().transpose();
        energy[n] += w * s.energy;
      }
    }
  }

  FieldMap fields;
  auto add = [&fields](NodalField f) { fields.emplace(f.name, std::move(f)); };
  NodalField displacement = make_field("displacement", "length", FieldKind::vector, nn);
  NodalField temperature = make_field("temperature", "temperature", FieldKind::scalar, nn);
  NodalField strain_f = make_field("strain", "1", FieldKind::tensor, nn);
  NodalField stress_f = make_field("stress", "stress", FieldKind::tensor, nn);
  NodalField thermal_f = make_field("thermal_stress", "stress", FieldKind::tensor, nn);
  NodalField energy_f = make_field("energy_density", "energy/volume", FieldKind::scalar, nn);
  NodalField strain_norm = make_field("strain_norm", "1", FieldKind::scalar, nn);
  NodalField stress_norm = make_field("stress_norm", "stress", FieldKind::scalar, nn);
  NodalField stress_p1 = make_field("stress_principal_max", "stress", FieldKind::scalar, nn);
  NodalField stress_p2 = make_field("stress_principal_min", "stress", FieldKind::scalar, nn);
  NodalField strain_p1 = make_field("strain_principal_max", "1", FieldKind::scalar, nn);
  NodalField strain_p2 = make_field("strain_principal_min", "1", FieldKind::scalar, nn);

  for (int n = 0; n < nn; ++n) {
    const int fe_node = space.node_of_mesh_node(n);
    displacement.values(n, 0) = u.values[space.dof(fe_node, 0)];
    displacement.values(n, 1) = u.values[space.dof(fe_node, 1)];
    temperature.values(n, 0) = theta.values[tspace.node_of_mesh_node(n)];
    const double w = weight[n];
    const SymTensor2 eps(strain.row(n).transpose() / w);
    const SymTensor2 sig(stress.row(n).transpose() / w);
    strain_f.values.row(n) = eps.mandel().transpose();
    stress_f.values.row(n) = sig.mandel().transpose();
    thermal_f.values.row(n) = thermal.row(n) / w;
    energy_f.values(n, 0) = energy[n] / w;
    strain_norm.values(n, 0) = eps.norm();
    stress_norm.values(n, 0) = sig.norm();
    const auto sp = sig.principal_values();
    const auto ep = eps.principal_values();
    stress_p1.values(n, 0) = sp[0];
    stress_p2.values(n, 0) = sp[1];
    strain_p1.values(n, 0) = ep[0];
    strain_p2.values(n, 0) = ep[1];
  }
  for (auto* f : {&displacement, &temperature, &strain_f, &stress_f, &thermal_f, &energy_f, &strain_norm, &stress_norm,
                  &stress_p1, &stress_p2, &strain_p1, &strain_p2}) {
    add(std::move(*f));
  }
  return fields;
}

int argmax_node(const NodalField& field) {
  if (field.kind != FieldKind::scalar || field.num_nodes() == 0) {
    throw std::invalid_argument("argmax_node needs a non-empty scalar field");
  }
  Eigen::Index index = 0;
  field.values.col(0).maxCoeff(&index);
  return static_cast<int>(index);
}

std::vector<OpeningPoint> crack_opening_profile(const FEField& u, const CrackedMesh& mesh) {
  if (!mesh.cracked()) throw std::invalid_argument("crack opening profile needs a cracked mesh");
  const FESpace& space = *u.space;
  std::vector<OpeningPoint> profile;
  profile.reserve(mesh.face_pairs.size() + 1);
  for (const auto& [upper, lower] : mesh.face_pairs) {
    const double uy_upper = u.values[space.dof(space.node_of_mesh_node(upper), 1)];
    const double uy_lower = u.values[space.dof(space.node_of_mesh_node(lower), 1)];
    profile.push_back({mesh.nodes[upper].x, uy_upper - uy_lower});
  }
  profile.push_back({mesh.nodes[mesh.tip_node].x, 0.0});
  return profile;
}

std::vector<LinePoint> extract_line(const NodalField& field, const CrackedMesh& mesh, double y) {
  if (field.kind != FieldKind::scalar) throw std::invalid_argument("extract_line needs a scalar field");
  std::vector<LinePoint> line;
  const int base = (mesh.nx + 1) * (mesh.ny + 1);
  for (int n = 0; n < base; ++n) {
    if (std::abs(mesh.nodes[n].y - y) <= 1e-12) line.push_back({mesh.nodes[n].x, field.values(n, 0)});
  }
  std::sort(line.begin(), line.end(), [](const LinePoint& a, const LinePoint& b) { return a.x < b.x; });
  return line;
}

SweepRow summarize(const FieldMap& fields, const SolveReport& report) {
  SweepRow row;
  row.max_stress_norm = fields.at("stress_norm").values.maxCoeff();
  row.max_strain_norm = fields.at("strain_norm").values.maxCoeff();
  row.max_principal_stress = fields.at("stress_principal_max").values.maxCoeff();
  row.min_principal_stress = fields.at("stress_principal_min").values.minCoeff();
  row.max_principal_strain = fields.at("strain_principal_max").values.maxCoeff();
  row.min_principal_strain = fields.at("strain_principal_min").values.minCoeff();
  row.converged = report.converged;
  row.iterations = report.iterations;
  row.clamp_events = report.clamp_events;
  return row;
}

void write_vtk(const FieldMap& fields, const CrackedMesh& mesh, const std::filesystem::path& path) {
  for (const auto& [name, field] : fields) {
    if (field.num_nodes() != mesh.num_nodes()) throw std::invalid_argument("field " + name + " does not match the mesh");
  }
  std::ofstream out = open_for_writing(path);
  out << "# vtk DataFile Version 3.0\n";
  out << "strain-limiting thermoelastic solution\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_nodes() << " double\n";
  for (const auto& p : mesh.nodes) out << format_double(p.x) << ' ' << format_double(p.y) << " 0\n";
  out << "CELLS " << mesh.num_elements() << ' ' << 5 * mesh.num_elements() << '\n';
  for (const auto& c : mesh.elements) out << "4 " << c[0] << ' ' << c[1] << ' ' << c[2] << ' ' << c[3] << '\n';
  out << "CELL_TYPES " << mesh.num_elements() << '\n';
  for (int e = 0; e < mesh.num_elements(); ++e) out << "9\n";
  if (!fields.empty()) out << "POINT_DATA " << mesh.num_nodes() << '\n';
  for (const auto& [name, field] : fields) {
    const auto& v = field.values;
    switch (field.kind) {
      case FieldKind::scalar:
        out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
        for (int n = 0; n < field.num_nodes(); ++n) out << format_double(v(n, 0)) << '\n';
        break;
      case FieldKind::vector:
        out << "VECTORS " << name << " double\n";
        for (int n = 0; n < field.num_nodes(); ++n) {
          out << format_double(v(n, 0)) << ' ' << format_double(v(n, 1)) << " 0\n";
        }
        break;
      case FieldKind::tensor:
        out << "TENSORS " << name << " double\n";
        for (int n = 0; n < field.num_nodes(); ++n) {
          const SymTensor2 t(v(n, 0), v(n, 1), v(n, 2));
          const std::string t11 = format_double(t.t11());
          const std::string t22 = format_double(t.t22());
          const std::string t12 = format_double(t.t12());
          out << t11 << ' ' << t12 << " 0\n" << t12 << ' ' << t22 << " 0\n0 0 0\n";
        }
        break;
    }
  }
  check_stream(out, path);
}

void write_csv(const std::vector<SweepRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  out << "parameter,value,max_stress_norm,max_strain_norm,max_principal_stress,min_principal_stress,"
         "max_principal_strain,min_principal_strain,converged,iterations,clamp_events\n";
  for (const auto& r : rows) {
    out << r.parameter << ',' << format_double(r.value) << ',' << format_double(r.max_stress_norm) << ','
        << format_double(r.max_strain_norm) << ',' << format_double(r.max_principal_stress) << ','
        << format_double(r.min_principal_stress) << ',' << format_double(r.max_principal_strain) << ','
        << format_double(r.min_principal_strain) << ',' << (r.converged ? 1 : 0) << ',' << r.iterations << ','
        << r.clamp_events << '\n';
  }
  check_stream(out, path);
}

void write_csv(const std::vector<OpeningPoint>& profile, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  out << "x,jump\n";
  for (const auto& p : profile) out << format_double(p.x) << ',' << format_double(p.jump) << '\n';
  check_stream(out, path);
}

void write_csv(const std::vector<LinePoint>& line, const std::filesystem::path& path) {
  std::ofstream out = open_for_writing(path);
  out << "x,value\n";
  for (const auto& p : line) out << format_double(p.x) << ',' << format_double(p.value) << '\n';
  check_stream(out, path);
}

}  // namespace slthermo
