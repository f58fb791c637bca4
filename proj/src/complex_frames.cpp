#include "akgeo/complex_frames.hpp"

#include <cmath>

namespace akgeo {

using cx = std::complex<double>;

Eigen::VectorXcd project10(const Eigen::MatrixXd& J, const Eigen::VectorXcd& v) {
  return 0.5 * (v - cx(0, 1) * (J * v));
}

Eigen::VectorXcd project01(const Eigen::MatrixXd& J, const Eigen::VectorXcd& v) {
  return 0.5 * (v + cx(0, 1) * (J * v));
}

cx g_bilinear(const Eigen::MatrixXd& g, const Eigen::VectorXcd& u,
              const Eigen::VectorXcd& v) {
  return u.transpose() * (g * v);
}

cx h_pair(const Eigen::MatrixXd& g, const Eigen::VectorXcd& u,
          const Eigen::VectorXcd& v) {
  return g_bilinear(g, u, v.conjugate());
}

HermitianFrame hermitian_orthonormal_frame(const Eigen::MatrixXd& g,
                                           const Eigen::MatrixXd& J) {
  const int dim = int(g.rows());
  const int n = dim / 2;
  HermitianFrame frame;
  frame.n = n;
  frame.dim = dim;
  for (int c = 0; c < dim && int(frame.W.size()) < n; ++c) {
    Eigen::VectorXcd cand = Eigen::VectorXcd::Zero(dim);
    cand(c) = 1.0;
    cand = project10(J, cand);
    for (const auto& w : frame.W) cand -= h_pair(g, cand, w) * w;
    double norm2 = h_pair(g, cand, cand).real();
    if (norm2 > 1e-4) frame.W.push_back(cand / std::sqrt(norm2));
  }
  if (int(frame.W.size()) != n)
    throw StructureError("failed to assemble a Hermitian frame from coordinate directions");
  return frame;
}

std::vector<Eigen::VectorXd> real_orthonormal_frame(const Eigen::MatrixXd& g) {
  const int dim = int(g.rows());
  std::vector<Eigen::VectorXd> frame;
  for (int c = 0; c < dim; ++c) {
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(dim);
    cand(c) = 1.0;
    for (const auto& u : frame) cand -= u.dot(g * cand) * u;
    double norm2 = cand.dot(g * cand);
    if (norm2 > 1e-12) frame.push_back(cand / std::sqrt(norm2));
  }
  if (int(frame.size()) != dim)
    throw StructureError("failed to assemble an orthonormal frame from coordinate directions");
  return frame;
}

VectorJet GnhFrame::germ(const ChartJets& cj, int i) const {
  const JetLayout& lay = jet_layout(dim, cj.order);
  VectorJet Z;
  Z.reserve(dim);
  for (int a = 0; a < dim; ++a) {
    CJet comp(&lay);
    comp.coeff(0) = W[i](a);
    for (int j = 0; j < dim; ++j) comp.coeff(1 + j) = A[i](a, j);
    for (int j = 0; j < dim; ++j)
      for (int l = j; l < dim; ++l) {
        std::vector<int> multi(dim, 0);
        multi[j] += 1;
        multi[l] += 1;
        int pos = lay.index_of(multi);
        cx v = quad[i][j * dim + l](a);
        comp.coeff(pos) = (j == l) ? 0.5 * v : v;
      }
    Z.push_back(comp);
  }
  return Z;
}

namespace {

double vec_norm(const Eigen::VectorXcd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace

const char* GnhVerification::worst_name() const {
  double w = conj_parallel;
  const char* name = "conj_parallel";
  if (holo_derivative > w) { w = holo_derivative; name = "holo_derivative"; }
  if (gram_value > w) { w = gram_value; name = "gram_value"; }
  if (gram_derivative > w) { w = gram_derivative; name = "gram_derivative"; }
  if (second_mixed > w) { name = "second_mixed"; }
  return name;
}

double GnhVerification::worst() const {
  return std::max({conj_parallel, holo_derivative, gram_value, gram_derivative,
                   second_mixed});
}

GnhVerification verify_gnh_properties(const ChartJets& cj, const GnhFrame& f) {
  const int n = f.n;
  GnhVerification out;

  std::vector<VectorJet> Z, Zbar;
  for (int i = 0; i < n; ++i) {
    Z.push_back(f.germ(cj, i));
    Zbar.push_back(vj_conj(Z.back()));
  }

  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXcd d1 = vj_value(nabla(cj, Z[k], Zbar[i]));
      out.conj_parallel = std::max(out.conj_parallel, vec_norm(d1));

      Eigen::VectorXcd d2 = vj_value(nabla(cj, Z[k], Z[i]));
      out.holo_derivative =
          std::max(out.holo_derivative, vec_norm(project10(cj.J0, d2)));

      CJet gram = g_pair(cj, Z[k], Zbar[i]);
      double target = (k == i) ? 1.0 : 0.0;
      out.gram_value = std::max(out.gram_value, std::abs(gram.value() - target));
      for (int c = 0; c < f.dim; ++c)
        out.gram_derivative =
            std::max(out.gram_derivative, std::abs(gram.derivative(c).value()));

      for (int r = 0; r < n; ++r) {
        Eigen::VectorXcd d3 = vj_value(nabla(cj, Z[r], nabla(cj, Zbar[k], Z[i])));
        out.second_mixed = std::max(out.second_mixed, vec_norm(d3));
      }
    }
  return out;
}

GnhFrame construct_gnh_frame(const ChartJets& cj, const Tolerances& tol,
                             bool check) {
  if (cj.order < 3)
    throw OrderError("frame construction needs jets of order at least 3");
  const int dim = cj.dim;
  const int n = dim / 2;

  GnhFrame f;
  f.n = n;
  f.dim = dim;
  f.base = cj.base;
  f.W = hermitian_orthonormal_frame(cj.g0, cj.J0).W;

  // Connection value and first-derivative contractions at the base point.
  auto gamma0 = [&](const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int c = 0; c < dim; ++c) {
      if (X(c) == 0.0) continue;
      for (int b = 0; b < dim; ++b) {
        if (Y(b) == 0.0) continue;
        const cx xy = X(c) * Y(b);
        for (int a = 0; a < dim; ++a)
          out(a) += cj.gamma.at(c, a, b).value() * xy;
      }
    }
    return out;
  };
  auto nablaJ0 = [&](const Eigen::VectorXcd& X, const Eigen::VectorXcd& Y) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int c = 0; c < dim; ++c) {
      if (X(c) == 0.0) continue;
      for (int b = 0; b < dim; ++b) {
        if (Y(b) == 0.0) continue;
        const cx xy = X(c) * Y(b);
        for (int a = 0; a < dim; ++a)
          out(a) += cj.nablaJ.at(c, a, b).value() * xy;
      }
    }
    return out;
  };
  auto dgamma = [&](const Eigen::VectorXcd& D, const Eigen::VectorXcd& X,
                    const Eigen::VectorXcd& Y) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(dim);
    for (int c = 0; c < dim; ++c)
      for (int b = 0; b < dim; ++b) {
        const cx xy = X(c) * Y(b);
        if (xy == 0.0) continue;
        for (int d = 0; d < dim; ++d) {
          const cx w = D(d) * xy;
          if (w == 0.0) continue;
          for (int a = 0; a < dim; ++a)
            out(a) += cj.gamma.at(c, a, b).derivative(d).value() * w;
        }
      }
    return out;
  };

  // Basis (W_1..W_n, conj W_1..conj W_n) of the complexified tangent space.
  Eigen::MatrixXcd S(dim, dim);
  for (int m = 0; m < n; ++m) {
    S.col(m) = f.W[m];
    S.col(n + m) = f.W[m].conjugate();
  }
  Eigen::PartialPivLU<Eigen::MatrixXcd> Slu(S);

  // First-order data: values of the germ derivative map A_i on the frame
  // basis. Q[i][k] = A_i(conj W_k) makes the conjugate frame parallel along
  // (1,0) directions. P[i][k] = A_i(W_k) pins the covariant derivative
  // nabla_{W_k} Z_i at the base to -(i/2) (nabla_{W_k} J) W_i. That value
  // has no (1,0) part (nabla J swaps types), so the holomorphic-derivative
  // condition stays exact, and it is the gauge under which the frame
  // bracket reproduces -1/4 of the Nijenhuis tensor at the base point.
  std::vector<std::vector<Eigen::VectorXcd>> P(n), Q(n);
  for (int i = 0; i < n; ++i) {
    P[i].resize(n);
    Q[i].resize(n);
    for (int k = 0; k < n; ++k) {
      P[i][k] = cx(0.0, -0.5) * nablaJ0(f.W[k], f.W[i]) -
                gamma0(f.W[k], f.W[i]);
      Q[i][k] = -gamma0(f.W[k], f.W[i].conjugate()).conjugate();
    }
  }

  // Coordinate form: A_i(v) = sum_m (S^-1 v)_m * (basis value)_m, so the
  // matrix is [P_i | Q_i] S^-1.
  f.A.resize(n);
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXcd vals(dim, dim);
    for (int k = 0; k < n; ++k) {
      vals.col(k) = P[i][k];
      vals.col(n + k) = Q[i][k];
    }
    f.A[i] = vals * Slu.inverse();
  }

  auto a_of = [&](int i, const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return f.A[i] * v;
  };

  // Second-order data: the mixed block B_i(W_r, conj W_k) is pinned by the
  // vanishing of nabla_r nabla_kbar Z_i at the base; the pure blocks are
  // free and set to zero.
  std::vector<std::vector<Eigen::VectorXcd>> mixed(n);
  for (int i = 0; i < n; ++i) {
    mixed[i].assign(std::size_t(n) * n, Eigen::VectorXcd::Zero(dim));
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) {
        Eigen::VectorXcd wk_bar = f.W[k].conjugate();
        Eigen::VectorXcd dzk_bar = Q[k][r].conjugate();  // derivative of conj Z_k along W_r
        Eigen::VectorXcd f0 = Q[i][k] + gamma0(wk_bar, f.W[i]);
        Eigen::VectorXcd rhs = a_of(i, dzk_bar);
        rhs += dgamma(f.W[r], wk_bar, f.W[i]);
        rhs += gamma0(dzk_bar, f.W[i]);
        rhs += gamma0(wk_bar, P[i][r]);
        rhs += gamma0(f.W[r], f0);
        mixed[i][r * n + k] = -rhs;
      }
  }

  // Translate the basis-pair values into coordinate-pair values:
  // B_i(e_j, e_l) = sum_{m,m'} (S^-1 e_j)_m (S^-1 e_l)_{m'} B_i(V_m, V_m').
  Eigen::MatrixXcd Sinv = Slu.inverse();
  f.quad.resize(n);
  for (int i = 0; i < n; ++i) {
    f.quad[i].assign(std::size_t(dim) * dim, Eigen::VectorXcd::Zero(dim));
    auto basis_pair = [&](int m, int mp) -> Eigen::VectorXcd {
      if (m < n && mp >= n) return mixed[i][m * n + (mp - n)];
      if (m >= n && mp < n) return mixed[i][mp * n + (m - n)];
      return Eigen::VectorXcd::Zero(dim);
    };
    for (int j = 0; j < dim; ++j)
      for (int l = j; l < dim; ++l) {
        Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(dim);
        for (int m = 0; m < dim; ++m) {
          if (Sinv(m, j) == 0.0) continue;
          for (int mp = 0; mp < dim; ++mp) {
            const cx w = Sinv(m, j) * Sinv(mp, l);
            if (w == 0.0) continue;
            acc += w * basis_pair(m, mp);
          }
        }
        f.quad[i][j * dim + l] = acc;
        f.quad[i][l * dim + j] = acc;
      }
  }

  if (check) {
    GnhVerification v = verify_gnh_properties(cj, f);
    if (v.worst() > tol.second_order)
      throw ConstructionError(v.worst_name(), v.worst());
  }
  return f;
}

}  // namespace akgeo
