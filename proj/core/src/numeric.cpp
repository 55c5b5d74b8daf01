#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "usflab/exact.hpp"

namespace usflab {

double effective_resistance_numeric(const Network& net, VertexId u, VertexId v) {
  net.check_vertex(u);
  net.check_vertex(v);
  if (u == v) return 0.0;

  // Ground v: solve the reduced Laplacian system L' phi = e_u and read phi[u].
  Eigen::Index n = Eigen::Index(net.vertex_count()) - 1;
  auto index = [&](VertexId w) { return Eigen::Index(w > v ? w - 1 : w); };

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(4 * net.edge_count());
  for (const Edge& e : net.edges()) {
    if (e.is_self_loop()) continue;
    double c = e.conductance.convert_to<double>();
    if (e.u != v) entries.emplace_back(index(e.u), index(e.u), c);
    if (e.v != v) entries.emplace_back(index(e.v), index(e.v), c);
    if (e.u != v && e.v != v) {
      entries.emplace_back(index(e.u), index(e.v), -c);
      entries.emplace_back(index(e.v), index(e.u), -c);
    }
  }
  Eigen::SparseMatrix<double> laplacian(n, n);
  laplacian.setFromTriplets(entries.begin(), entries.end());

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(laplacian);
  if (solver.info() != Eigen::Success) {
    raise(Errc::bad_params, "sparse factorization failed");
  }
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs[index(u)] = 1.0;
  Eigen::VectorXd potential = solver.solve(rhs);
  if (solver.info() != Eigen::Success) {
    raise(Errc::bad_params, "sparse solve failed");
  }
  return potential[index(u)];
}

}  // namespace usflab
