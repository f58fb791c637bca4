#pragma once

#include "akgeo/connections.hpp"

namespace akgeo {

// Type projections of a complexified tangent vector.
Eigen::VectorXcd project10(const Eigen::MatrixXd& J, const Eigen::VectorXcd& v);
Eigen::VectorXcd project01(const Eigen::MatrixXd& J, const Eigen::VectorXcd& v);

// Complex bilinear extension of g, no conjugation.
std::complex<double> g_bilinear(const Eigen::MatrixXd& g, const Eigen::VectorXcd& u,
                                const Eigen::VectorXcd& v);
// Hermitian pairing h(u, v) = g(u, conj v).
std::complex<double> h_pair(const Eigen::MatrixXd& g, const Eigen::VectorXcd& u,
                            const Eigen::VectorXcd& v);

struct HermitianFrame {
  int n = 0, dim = 0;
  std::vector<Eigen::VectorXcd> W;  // h-orthonormal basis of the (1,0) space
};

// Deterministic Gram-Schmidt over h on the (1,0) projections of the
// coordinate directions, taken in coordinate order.
HermitianFrame hermitian_orthonormal_frame(const Eigen::MatrixXd& g,
                                           const Eigen::MatrixXd& J);

// g-orthonormal real frame from the coordinate directions.
std::vector<Eigen::VectorXd> real_orthonormal_frame(const Eigen::MatrixXd& g);

// Frame germs Z_i(u) = W_i + A_i(u) + (1/2) B_i(u, u) around a base point,
// normalized so that, at the base point: the conjugate frame is parallel
// along (1,0) frame directions, the (1,0) part of frame derivatives along
// (1,0) frame directions vanishes, the Gram matrix is the identity with
// vanishing first derivatives, and the mixed second covariant derivatives
// nabla_r nabla_kbar Z_i vanish.
struct GnhFrame {
  int n = 0, dim = 0;
  std::vector<double> base;
  std::vector<Eigen::VectorXcd> W;   // values at the base point
  std::vector<Eigen::MatrixXcd> A;   // A[i].col(j) = d_j Z_i at the base
  // quad[i][j * dim + l] = B_i(e_j, e_l), symmetric in (j, l)
  std::vector<std::vector<Eigen::VectorXcd>> quad;

  VectorJet germ(const ChartJets& cj, int i) const;
};

struct GnhVerification {
  double conj_parallel = 0.0;    // |nabla_k Z_ibar| at the base
  double holo_derivative = 0.0;  // |P10 nabla_k Z_i|
  double gram_value = 0.0;       // |G - Id|
  double gram_derivative = 0.0;  // |dG|
  double second_mixed = 0.0;     // |nabla_r nabla_kbar Z_i|
  const char* worst_name() const;
  double worst() const;
};

// Independent re-evaluation of the construction's defining conditions using
// germ arithmetic only.
GnhVerification verify_gnh_properties(const ChartJets& cj, const GnhFrame& f);

// Closed-form construction; requires cj.order >= 3. With check=true the
// result is verified and a violation beyond tol.second_order raises
// ConstructionError naming the worst condition.
GnhFrame construct_gnh_frame(const ChartJets& cj, const Tolerances& tol = {},
                             bool check = true);

}  // namespace akgeo
