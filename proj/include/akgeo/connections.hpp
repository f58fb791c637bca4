#pragma once

#include <complex>
#include <span>
#include <vector>

#include "akgeo/charts.hpp"

namespace akgeo {

struct CJetGrid {
  int dim = 0;
  std::vector<CJet> m;
  const CJet& at(int a, int b) const { return m[a * dim + b]; }
  CJet& at(int a, int b) { return m[a * dim + b]; }
};

// Three-index table; first index is the derivative / direction slot.
struct JetCube {
  int dim = 0;
  std::vector<Jet> m;
  const Jet& at(int c, int a, int b) const { return m[(c * dim + a) * dim + b]; }
  Jet& at(int c, int a, int b) { return m[(c * dim + a) * dim + b]; }
};

struct CJetCube {
  int dim = 0;
  std::vector<CJet> m;
  const CJet& at(int c, int a, int b) const { return m[(c * dim + a) * dim + b]; }
  CJet& at(int c, int a, int b) { return m[(c * dim + a) * dim + b]; }
};

// A complex vector field germ: coordinate components as complex jets.
using VectorJet = std::vector<CJet>;

// Flat four-index value table T[x][y][z][w]; contractions feed the four
// arguments in that slot order.
inline int idx4(int dim, int x, int y, int z, int w) {
  return ((x * dim + y) * dim + z) * dim + w;
}

std::complex<double> contract4(std::span<const double> table, int dim,
                               const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y,
                               const Eigen::VectorXcd& Z, const Eigen::VectorXcd& W);

// Everything the curvature layer needs at one point of one chart, evaluated
// once: coordinate lifts, structure jets, derived metric and its inverse,
// Christoffel symbols of the Levi-Civita connection, nabla J, the second
// canonical (Hermitian) connection, and lowered curvature tables.
struct ChartJets {
  ChartJets(const AlmostKahlerChart& chart, std::span<const double> p, int order,
            const Tolerances& tol = {});

  const AlmostKahlerChart* chart = nullptr;
  int order = 0;
  int dim = 0;
  std::vector<double> base;
  std::vector<Jet> x;

  JetGrid kappa, jm, g, ginv;  // full requested order
  // gamma.at(c, a, b) = Gamma^a_{cb}, the a-component of nabla_{d_c} d_b;
  // one order lower than the structure jets.
  JetCube gamma;
  // nablaJ.at(c, a, b) = (nabla_{d_c} J)^a_b
  JetCube nablaJ;
  // Hermitian connection Gamma~^a_{cb} = Gamma^a_{cb} - (1/2) J^a_d (nabla_c J)^d_b;
  // torsion does not vanish, so the first two lower indices are ordered.
  JetCube gammaH;

  // complexified copies used by germ arithmetic
  CJetGrid cg, cjm;
  CJetCube cgamma, cgammaH;

  // pointwise values
  Eigen::MatrixXd g0, ginv0, J0, kappa0;

  // Lowered curvature tables in slot order (X, Y, Z, W), present when
  // order >= 2: riem_table[x][y][z][w] = g(R(d_x, d_y) d_z, d_w) with
  // R(X, Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
  std::vector<double> riem_table, riemH_table;

  std::complex<double> riemann(const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y,
                               const Eigen::VectorXcd& Z, const Eigen::VectorXcd& W) const;
  std::complex<double> hermitian_riemann(const Eigen::VectorXcd& X,
                                         const Eigen::VectorXcd& Y,
                                         const Eigen::VectorXcd& Z,
                                         const Eigen::VectorXcd& W) const;
};

// Germ constructors and arithmetic. All bilinear pairings are complex
// bilinear without conjugation; callers conjugate arguments explicitly.
VectorJet vj_constant(const ChartJets& cj, const Eigen::VectorXcd& v);
VectorJet vj_real(std::span<const Jet> components);
VectorJet vj_conj(const VectorJet& X);
Eigen::VectorXcd vj_value(const VectorJet& X);
VectorJet vj_add(const VectorJet& X, const VectorJet& Y);
VectorJet vj_sub(const VectorJet& X, const VectorJet& Y);
VectorJet vj_scale(const VectorJet& X, std::complex<double> s);
VectorJet vj_scale_field(const VectorJet& X, const CJet& f);

VectorJet apply_J(const ChartJets& cj, const VectorJet& X);
VectorJet lie_bracket(const VectorJet& X, const VectorJet& Y);
VectorJet nabla(const ChartJets& cj, const VectorJet& X, const VectorJet& Y);
VectorJet nabla_h(const ChartJets& cj, const VectorJet& X, const VectorJet& Y);
// (nabla_X J) Y = nabla_X (J Y) - J nabla_X Y
VectorJet nabla_J(const ChartJets& cj, const VectorJet& X, const VectorJet& Y);
CJet g_pair(const ChartJets& cj, const VectorJet& X, const VectorJet& Y);

VectorJet nijenhuis(const ChartJets& cj, const VectorJet& X, const VectorJet& Y);
// B(X, Y) = J (nabla_X J) Y - (nabla_{JX} J) Y
VectorJet b_tensor(const ChartJets& cj, const VectorJet& X, const VectorJet& Y);
// (nabla_X B)(Y, Z)
VectorJet nabla_b(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
                  const VectorJet& Z);
// L(X, Y, Z, W) = g((nabla_X B)(Y, Z), W)
CJet l_tensor(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
              const VectorJet& Z, const VectorJet& W);
// g(nabla_X (J nabla_Y Z) - nabla_Y (J nabla_X Z) - nabla_{[X,Y]} (J Z), J W);
// built from germs, not tensorial in any slot.
CJet rj_curvature(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
                  const VectorJet& Z, const VectorJet& W);
// curvature of the given connection applied to germs; cross-validates the
// pointwise curvature tables and extends them to non-constant germs
CJet curvature_germ(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
                    const VectorJet& Z, const VectorJet& W, bool hermitian = false);

// Pointwise component tables at the base point.
// nijenhuis_components: N^a_{bc} with N(d_b, d_c)^a, order-1 jets.
CJetCube nijenhuis_jets(const ChartJets& cj);
// (nabla_c N)^a_{bd} values, flattened as idx4(c, b, d, a).
std::vector<double> nabla_nijenhuis_components(const ChartJets& cj);
// lowered L values in slot order (X, Y, Z, W)
std::vector<double> l_components(const ChartJets& cj);

// Holomorphic bisectional-type comparison value: R(v, Jv, w, Jw) normalized
// by |v|^2 |w|^2; hermitian switches the curvature table.
double bisectional_curvature(const ChartJets& cj, Eigen::VectorXd v,
                             Eigen::VectorXd w, bool hermitian);

}  // namespace akgeo
