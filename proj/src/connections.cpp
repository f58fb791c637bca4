#include "akgeo/connections.hpp"

#include <cmath>

namespace akgeo {

namespace {

// Gauss-Jordan on a grid of jets. The input is a derived metric, positive
// definite by validation, so pivoting on the diagonal is safe.
JetGrid invert_jets(const JetGrid& A) {
  const int d = A.dim;
  JetGrid M = A;
  JetGrid inv;
  inv.dim = d;
  Jet zero = A.m[0] * 0.0;
  inv.m.assign(std::size_t(d) * d, zero);
  for (int a = 0; a < d; ++a) inv.at(a, a) = zero + 1.0;

  for (int k = 0; k < d; ++k) {
    if (std::abs(M.at(k, k).value()) < 1e-14)
      throw StructureError("metric jet inversion hit a vanishing pivot");
    Jet ip = reciprocal(M.at(k, k));
    for (int b = 0; b < d; ++b) {
      M.at(k, b) = M.at(k, b) * ip;
      inv.at(k, b) = inv.at(k, b) * ip;
    }
    for (int r = 0; r < d; ++r) {
      if (r == k) continue;
      Jet f = M.at(r, k);
      if (coeff_inf_norm(f) == 0.0) continue;
      for (int b = 0; b < d; ++b) {
        M.at(r, b) = M.at(r, b) - f * M.at(k, b);
        inv.at(r, b) = inv.at(r, b) - f * inv.at(k, b);
      }
    }
  }
  return inv;
}

Eigen::MatrixXd grid_values(const JetGrid& grid) {
  Eigen::MatrixXd m(grid.dim, grid.dim);
  for (int a = 0; a < grid.dim; ++a)
    for (int b = 0; b < grid.dim; ++b) m(a, b) = grid.at(a, b).value();
  return m;
}

CJetGrid complexify_grid(const JetGrid& grid) {
  CJetGrid out;
  out.dim = grid.dim;
  out.m.reserve(grid.m.size());
  for (const auto& j : grid.m) out.m.push_back(complexify(j));
  return out;
}

CJetCube complexify_cube(const JetCube& cube) {
  CJetCube out;
  out.dim = cube.dim;
  out.m.reserve(cube.m.size());
  for (const auto& j : cube.m) out.m.push_back(complexify(j));
  return out;
}

// Lowered curvature of an affine connection given by coefficient jets
// G.at(c, a, b) = coefficient a of the derivative along d_c of d_b. Valid for
// non-symmetric coefficients as well. Output slot order (X, Y, Z, W).
std::vector<double> lowered_curvature(const JetCube& G, const Eigen::MatrixXd& g0) {
  const int d = G.dim;
  std::vector<double> up(std::size_t(d) * d * d * d);  // up[idx4(c,d,b,a)] = Riem^a_{bcd}
  for (int c = 0; c < d; ++c)
    for (int dd = 0; dd < d; ++dd)
      for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a) {
          double v = G.at(dd, a, b).derivative(c).value() -
                     G.at(c, a, b).derivative(dd).value();
          for (int e = 0; e < d; ++e)
            v += G.at(c, a, e).value() * G.at(dd, e, b).value() -
                 G.at(dd, a, e).value() * G.at(c, e, b).value();
          up[idx4(d, c, dd, b, a)] = v;
        }
  std::vector<double> low(up.size());
  for (int c = 0; c < d; ++c)
    for (int dd = 0; dd < d; ++dd)
      for (int b = 0; b < d; ++b)
        for (int a = 0; a < d; ++a) {
          double v = 0.0;
          for (int e = 0; e < d; ++e)
            v += g0(e, a) * up[idx4(d, c, dd, b, e)];
          low[idx4(d, c, dd, b, a)] = v;
        }
  return low;
}

CJet czero(const ChartJets& cj) {
  return CJet::constant(cj.dim, cj.order, 0.0);
}

}  // namespace

std::complex<double> contract4(std::span<const double> table, int dim,
                               const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y,
                               const Eigen::VectorXcd& Z, const Eigen::VectorXcd& W) {
  std::complex<double> acc = 0.0;
  int t = 0;
  for (int x = 0; x < dim; ++x)
    for (int y = 0; y < dim; ++y) {
      const std::complex<double> xy = X(x) * Y(y);
      if (xy == 0.0) { t += dim * dim; continue; }
      for (int z = 0; z < dim; ++z) {
        const std::complex<double> xyz = xy * Z(z);
        for (int w = 0; w < dim; ++w, ++t) acc += table[t] * xyz * W(w);
      }
    }
  return acc;
}

ChartJets::ChartJets(const AlmostKahlerChart& c, std::span<const double> p,
                     int ord, const Tolerances& tol) {
  if (ord < 1)
    throw OrderError("connection data needs jets of order at least 1");
  chart = &c;
  order = ord;
  dim = c.dim();
  base.assign(p.begin(), p.end());
  x = domain_lift(c.domain, p, order);

  kappa = kappa_jets(c, x);
  jm = j_jets(c, x);
  g = metric_jets(kappa, jm);
  ginv = invert_jets(g);

  g0 = grid_values(g);
  ginv0 = grid_values(ginv);
  J0 = grid_values(jm);
  kappa0 = grid_values(kappa);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g0 + g0.transpose()));
  if (es.eigenvalues().minCoeff() < tol.positivity_floor)
    throw StructureError("derived metric is not positive definite at the base point");

  // dg.at(c, d, b) = d_c g_{db}
  JetCube dg;
  dg.dim = dim;
  dg.m.reserve(std::size_t(dim) * dim * dim);
  for (int c2 = 0; c2 < dim; ++c2)
    for (int d2 = 0; d2 < dim; ++d2)
      for (int b2 = 0; b2 < dim; ++b2)
        dg.m.push_back(g.at(d2, b2).derivative(c2));

  gamma.dim = dim;
  gamma.m.reserve(dg.m.size());
  for (int c2 = 0; c2 < dim; ++c2)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Jet acc = dg.at(c2, 0, b) * 0.0;
        for (int d2 = 0; d2 < dim; ++d2)
          acc = acc + ginv.at(a, d2) *
                          (dg.at(c2, d2, b) + dg.at(b, d2, c2) - dg.at(d2, c2, b));
        gamma.m.push_back(acc * 0.5);
      }

  nablaJ.dim = dim;
  nablaJ.m.reserve(gamma.m.size());
  for (int c2 = 0; c2 < dim; ++c2)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Jet acc = jm.at(a, b).derivative(c2);
        for (int d2 = 0; d2 < dim; ++d2)
          acc = acc + gamma.at(c2, a, d2) * jm.at(d2, b) -
                gamma.at(c2, d2, b) * jm.at(a, d2);
        nablaJ.m.push_back(acc);
      }

  gammaH.dim = dim;
  gammaH.m.reserve(gamma.m.size());
  for (int c2 = 0; c2 < dim; ++c2)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        Jet acc = gamma.at(c2, a, b);
        for (int d2 = 0; d2 < dim; ++d2)
          acc = acc - 0.5 * (jm.at(a, d2) * nablaJ.at(c2, d2, b));
        gammaH.m.push_back(acc);
      }

  cg = complexify_grid(g);
  cjm = complexify_grid(jm);
  cgamma = complexify_cube(gamma);
  cgammaH = complexify_cube(gammaH);

  if (order >= 2) {
    riem_table = lowered_curvature(gamma, g0);
    riemH_table = lowered_curvature(gammaH, g0);
  }
}

std::complex<double> ChartJets::riemann(const Eigen::VectorXcd& X,
                                        const Eigen::VectorXcd& Y,
                                        const Eigen::VectorXcd& Z,
                                        const Eigen::VectorXcd& W) const {
  if (riem_table.empty())
    throw OrderError("curvature tables need jets of order at least 2");
  return contract4(riem_table, dim, X, Y, Z, W);
}

std::complex<double> ChartJets::hermitian_riemann(const Eigen::VectorXcd& X,
                                                  const Eigen::VectorXcd& Y,
                                                  const Eigen::VectorXcd& Z,
                                                  const Eigen::VectorXcd& W) const {
  if (riemH_table.empty())
    throw OrderError("curvature tables need jets of order at least 2");
  return contract4(riemH_table, dim, X, Y, Z, W);
}

VectorJet vj_constant(const ChartJets& cj, const Eigen::VectorXcd& v) {
  VectorJet out;
  out.reserve(cj.dim);
  for (int a = 0; a < cj.dim; ++a)
    out.push_back(CJet::constant(cj.dim, cj.order, v(a)));
  return out;
}

VectorJet vj_real(std::span<const Jet> components) {
  VectorJet out;
  out.reserve(components.size());
  for (const auto& j : components) out.push_back(complexify(j));
  return out;
}

VectorJet vj_conj(const VectorJet& X) {
  VectorJet out;
  out.reserve(X.size());
  for (const auto& j : X) out.push_back(conj(j));
  return out;
}

Eigen::VectorXcd vj_value(const VectorJet& X) {
  Eigen::VectorXcd v(X.size());
  for (std::size_t a = 0; a < X.size(); ++a) v(int(a)) = X[a].value();
  return v;
}

VectorJet vj_add(const VectorJet& X, const VectorJet& Y) {
  VectorJet out;
  out.reserve(X.size());
  for (std::size_t a = 0; a < X.size(); ++a) out.push_back(X[a] + Y[a]);
  return out;
}

VectorJet vj_sub(const VectorJet& X, const VectorJet& Y) {
  VectorJet out;
  out.reserve(X.size());
  for (std::size_t a = 0; a < X.size(); ++a) out.push_back(X[a] - Y[a]);
  return out;
}

VectorJet vj_scale(const VectorJet& X, std::complex<double> s) {
  VectorJet out;
  out.reserve(X.size());
  for (const auto& j : X) out.push_back(j * s);
  return out;
}

VectorJet vj_scale_field(const VectorJet& X, const CJet& f) {
  VectorJet out;
  out.reserve(X.size());
  for (const auto& j : X) out.push_back(j * f);
  return out;
}

VectorJet apply_J(const ChartJets& cj, const VectorJet& X) {
  VectorJet out;
  out.reserve(cj.dim);
  for (int a = 0; a < cj.dim; ++a) {
    CJet acc = cj.cjm.at(a, 0) * X[0];
    for (int b = 1; b < cj.dim; ++b) acc = acc + cj.cjm.at(a, b) * X[b];
    out.push_back(acc);
  }
  return out;
}

VectorJet lie_bracket(const VectorJet& X, const VectorJet& Y) {
  const int d = int(X.size());
  VectorJet out;
  out.reserve(d);
  for (int a = 0; a < d; ++a) {
    CJet acc = X[0] * Y[a].derivative(0) - Y[0] * X[a].derivative(0);
    for (int b = 1; b < d; ++b)
      acc = acc + X[b] * Y[a].derivative(b) - Y[b] * X[a].derivative(b);
    out.push_back(acc);
  }
  return out;
}

namespace {

VectorJet nabla_with(const CJetCube& G, const VectorJet& X, const VectorJet& Y) {
  const int d = G.dim;
  VectorJet out;
  out.reserve(d);
  for (int a = 0; a < d; ++a) {
    CJet acc = X[0] * Y[a].derivative(0);
    for (int c = 1; c < d; ++c) acc = acc + X[c] * Y[a].derivative(c);
    for (int c = 0; c < d; ++c)
      for (int b = 0; b < d; ++b) acc = acc + G.at(c, a, b) * X[c] * Y[b];
    out.push_back(acc);
  }
  return out;
}

}  // namespace

VectorJet nabla(const ChartJets& cj, const VectorJet& X, const VectorJet& Y) {
  return nabla_with(cj.cgamma, X, Y);
}

VectorJet nabla_h(const ChartJets& cj, const VectorJet& X, const VectorJet& Y) {
  return nabla_with(cj.cgammaH, X, Y);
}

VectorJet nabla_J(const ChartJets& cj, const VectorJet& X, const VectorJet& Y) {
  return vj_sub(nabla(cj, X, apply_J(cj, Y)), apply_J(cj, nabla(cj, X, Y)));
}

CJet g_pair(const ChartJets& cj, const VectorJet& X, const VectorJet& Y) {
  CJet acc = czero(cj);
  for (int a = 0; a < cj.dim; ++a)
    for (int b = 0; b < cj.dim; ++b) acc = acc + cj.cg.at(a, b) * X[a] * Y[b];
  return acc;
}

VectorJet nijenhuis(const ChartJets& cj, const VectorJet& X, const VectorJet& Y) {
  VectorJet jx = apply_J(cj, X), jy = apply_J(cj, Y);
  VectorJet out = lie_bracket(jx, jy);
  out = vj_sub(out, apply_J(cj, lie_bracket(jx, Y)));
  out = vj_sub(out, apply_J(cj, lie_bracket(X, jy)));
  out = vj_sub(out, lie_bracket(X, Y));
  return out;
}

VectorJet b_tensor(const ChartJets& cj, const VectorJet& X, const VectorJet& Y) {
  return vj_sub(apply_J(cj, nabla_J(cj, X, Y)), nabla_J(cj, apply_J(cj, X), Y));
}

VectorJet nabla_b(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
                  const VectorJet& Z) {
  VectorJet out = nabla(cj, X, b_tensor(cj, Y, Z));
  out = vj_sub(out, b_tensor(cj, nabla(cj, X, Y), Z));
  out = vj_sub(out, b_tensor(cj, Y, nabla(cj, X, Z)));
  return out;
}

CJet l_tensor(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
              const VectorJet& Z, const VectorJet& W) {
  return g_pair(cj, nabla_b(cj, X, Y, Z), W);
}

CJet rj_curvature(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
                  const VectorJet& Z, const VectorJet& W) {
  VectorJet t = nabla(cj, X, apply_J(cj, nabla(cj, Y, Z)));
  t = vj_sub(t, nabla(cj, Y, apply_J(cj, nabla(cj, X, Z))));
  t = vj_sub(t, nabla(cj, lie_bracket(X, Y), apply_J(cj, Z)));
  return g_pair(cj, t, apply_J(cj, W));
}

CJet curvature_germ(const ChartJets& cj, const VectorJet& X, const VectorJet& Y,
                    const VectorJet& Z, const VectorJet& W, bool hermitian) {
  const CJetCube& G = hermitian ? cj.cgammaH : cj.cgamma;
  VectorJet t = nabla_with(G, X, nabla_with(G, Y, Z));
  t = vj_sub(t, nabla_with(G, Y, nabla_with(G, X, Z)));
  t = vj_sub(t, nabla_with(G, lie_bracket(X, Y), Z));
  return g_pair(cj, t, W);
}

CJetCube nijenhuis_jets(const ChartJets& cj) {
  const int d = cj.dim;
  // dJ.at(c, a, b) = d_c J^a_b
  JetCube dJ;
  dJ.dim = d;
  dJ.m.reserve(std::size_t(d) * d * d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) dJ.m.push_back(cj.jm.at(a, b).derivative(c));

  // stored as N.m[(b * d + c) * d + a] = N^a_{bc}
  JetCube N;
  N.dim = d;
  N.m.assign(std::size_t(d) * d * d, dJ.m[0] * 0.0);
  for (int b = 0; b < d; ++b)
    for (int c = 0; c < d; ++c)
      for (int a = 0; a < d; ++a) {
        Jet acc = dJ.m[0] * 0.0;
        for (int e = 0; e < d; ++e)
          acc = acc + cj.jm.at(e, b) * dJ.at(e, a, c) -
                cj.jm.at(e, c) * dJ.at(e, a, b) +
                cj.jm.at(a, e) * (dJ.at(c, e, b) - dJ.at(b, e, c));
        N.m[std::size_t((b * d + c) * d + a)] = acc;
      }

  CJetCube out;
  out.dim = d;
  out.m.reserve(N.m.size());
  for (const auto& j : N.m) out.m.push_back(complexify(j));
  return out;
}

std::vector<double> nabla_nijenhuis_components(const ChartJets& cj) {
  const int d = cj.dim;
  CJetCube N = nijenhuis_jets(cj);
  auto Nat = [&](int b, int c, int a) -> const CJet& {
    return N.m[std::size_t((b * d + c) * d + a)];
  };
  auto G = [&](int c, int a, int b) { return cj.gamma.at(c, a, b).value(); };
  std::vector<double> out(std::size_t(d) * d * d * d);
  for (int c = 0; c < d; ++c)
    for (int b = 0; b < d; ++b)
      for (int e = 0; e < d; ++e)
        for (int a = 0; a < d; ++a) {
          double v = Nat(b, e, a).derivative(c).value().real();
          for (int f = 0; f < d; ++f)
            v += G(c, a, f) * Nat(b, e, f).value().real() -
                 G(c, f, b) * Nat(f, e, a).value().real() -
                 G(c, f, e) * Nat(b, f, a).value().real();
          out[idx4(d, c, b, e, a)] = v;
        }
  return out;
}

std::vector<double> l_components(const ChartJets& cj) {
  const int d = cj.dim;
  // B.at(c, a, b) = component a of B(d_c, d_b)
  JetCube B;
  B.dim = d;
  B.m.reserve(std::size_t(d) * d * d);
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        Jet acc = cj.nablaJ.m[0] * 0.0;
        for (int e = 0; e < d; ++e)
          acc = acc + cj.jm.at(a, e) * cj.nablaJ.at(c, e, b) -
                cj.jm.at(e, c) * cj.nablaJ.at(e, a, b);
        B.m.push_back(acc);
      }

  auto G = [&](int c, int a, int b) { return cj.gamma.at(c, a, b).value(); };
  std::vector<double> out(std::size_t(d) * d * d * d);
  for (int c = 0; c < d; ++c)
    for (int d2 = 0; d2 < d; ++d2)
      for (int e = 0; e < d; ++e) {
        // (nabla_c B)^f_{d2 e}
        std::vector<double> nb(d);
        for (int f = 0; f < d; ++f) {
          double v = B.at(d2, f, e).derivative(c).value();
          for (int h = 0; h < d; ++h)
            v += G(c, f, h) * B.at(d2, h, e).value() -
                 G(c, h, d2) * B.at(h, f, e).value() -
                 G(c, h, e) * B.at(d2, f, h).value();
          nb[f] = v;
        }
        for (int a = 0; a < d; ++a) {
          double v = 0.0;
          for (int f = 0; f < d; ++f) v += cj.g0(f, a) * nb[f];
          out[idx4(d, c, d2, e, a)] = v;
        }
      }
  return out;
}

double bisectional_curvature(const ChartJets& cj, Eigen::VectorXd v,
                             Eigen::VectorXd w, bool hermitian) {
  const double nv = std::sqrt(v.dot(cj.g0 * v));
  const double nw = std::sqrt(w.dot(cj.g0 * w));
  if (nv < 1e-12 || nw < 1e-12)
    throw std::invalid_argument("bisectional curvature needs nonzero vectors");
  v /= nv;
  w /= nw;
  Eigen::VectorXcd X = v.cast<std::complex<double>>();
  Eigen::VectorXcd JX = (cj.J0 * v).cast<std::complex<double>>();
  Eigen::VectorXcd Z = w.cast<std::complex<double>>();
  Eigen::VectorXcd JZ = (cj.J0 * w).cast<std::complex<double>>();
  auto val = hermitian ? cj.hermitian_riemann(X, JX, Z, JZ)
                       : cj.riemann(X, JX, Z, JZ);
  return val.real();
}

}  // namespace akgeo
