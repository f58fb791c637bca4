#include "akgeo/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <utility>

#include <Eigen/Dense>
#include <json.hpp>

#include "akgeo/complex_frames.hpp"
#include "akgeo/connections.hpp"
#include "akgeo/sampling.hpp"

namespace akgeo {
namespace {

using cx = std::complex<double>;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

std::vector<double> box_center(const Box& box) {
  std::vector<double> c(box.dim());
  for (int v = 0; v < box.dim(); ++v) c[v] = 0.5 * (box.lo[v] + box.hi[v]);
  return c;
}

// Domain center first, then the seeded draws. The center is included
// deterministically so that structure constants visible only at
// distinguished points (such as a nilmanifold origin) always enter the sup.
std::vector<std::vector<double>> sample_points(const Box& box, int nsamples,
                                               std::uint64_t seed) {
  std::vector<std::vector<double>> pts;
  pts.reserve(std::size_t(nsamples) + 1);
  pts.push_back(box_center(box));
  Sampler sampler(seed);
  for (int s = 0; s < nsamples; ++s) pts.push_back(sampler.point(box));
  return pts;
}

double h_norm(const MatrixXd& g, const VectorXcd& v) {
  return std::sqrt(std::abs(h_pair(g, v, v)));
}

double g_norm(const MatrixXd& g, const VectorXd& v) {
  return std::sqrt(std::abs(v.dot(g * v)));
}

// Values shared by the identity rows and the defect scan at one point.
struct PointData {
  ChartJets cj;
  HermitianFrame hf;
  std::vector<VectorXd> rf;
  std::vector<VectorXcd> W, Wb;
  std::vector<MatrixXd> dJ;  // dJ[c](a, b) = (nabla_c J)^a_b
  std::vector<double> nv;    // nv[(b d + c) d + a] = N(d_b, d_c)^a

  PointData(const AlmostKahlerChart& chart, const std::vector<double>& p,
            int order, const Tolerances& tol)
      : cj(chart, p, order, tol) {
    const int d = cj.dim;
    hf = hermitian_orthonormal_frame(cj.g0, cj.J0);
    rf = real_orthonormal_frame(cj.g0);
    W.resize(hf.n);
    Wb.resize(hf.n);
    for (int i = 0; i < hf.n; ++i) {
      W[i] = hf.W[i];
      Wb[i] = hf.W[i].conjugate();
    }
    dJ.resize(d);
    for (int c = 0; c < d; ++c) {
      dJ[c].resize(d, d);
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) dJ[c](a, b) = cj.nablaJ.at(c, a, b).value();
    }
    CJetCube N = nijenhuis_jets(cj);
    nv.assign(std::size_t(d) * d * d, 0.0);
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int a = 0; a < d; ++a)
          nv[std::size_t(b * d + c) * d + a] = N.at(b, c, a).value().real();
  }

  int dim() const { return cj.dim; }
  int n() const { return hf.n; }

  // (nabla_X J) as a matrix for a real or complex direction X
  MatrixXd dj_dir(const VectorXd& X) const {
    MatrixXd M = MatrixXd::Zero(dim(), dim());
    for (int c = 0; c < dim(); ++c)
      if (X(c) != 0.0) M += X(c) * dJ[c];
    return M;
  }
  Eigen::MatrixXcd dj_dir_c(const VectorXcd& X) const {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(dim(), dim());
    for (int c = 0; c < dim(); ++c)
      if (X(c) != 0.0) M += X(c) * dJ[c];
    return M;
  }

  VectorXd n_real(const VectorXd& X, const VectorXd& Y) const {
    const int d = dim();
    VectorXd out = VectorXd::Zero(d);
    for (int b = 0; b < d; ++b) {
      if (X(b) == 0.0) continue;
      for (int c = 0; c < d; ++c) {
        const double xy = X(b) * Y(c);
        if (xy == 0.0) continue;
        for (int a = 0; a < d; ++a) out(a) += nv[std::size_t(b * d + c) * d + a] * xy;
      }
    }
    return out;
  }
  VectorXcd n_cplx(const VectorXcd& X, const VectorXcd& Y) const {
    const int d = dim();
    VectorXcd out = VectorXcd::Zero(d);
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        const cx xy = X(b) * Y(c);
        if (xy == 0.0) continue;
        for (int a = 0; a < d; ++a) out(a) += nv[std::size_t(b * d + c) * d + a] * xy;
      }
    return out;
  }
};

struct RowAccumulator {
  std::string name;
  std::string anchor;
  double residual = 0.0;
  void feed(double r) { residual = std::max(residual, r); }
};

// Index of each suite row, fixed so accumulators and emission stay aligned.
enum RowId {
  kFundamental = 0,
  kConjDirections,
  kBAntisym,
  kLSwap,
  kLTypeVanishing,
  kLCurvatureDifference,
  kSekigawa,
  kWr1,
  kMetricParallel,
  kJParallel,
  kTorsionQuarterN,
  kNRange01,
  kBracketQuarterN,
  kRjComponent,
  kLDiagonalDerivative,
  kRiemannComponent,
  kRowCount
};

std::vector<RowAccumulator> make_rows() {
  std::vector<RowAccumulator> rows(kRowCount);
  auto set = [&](RowId id, const char* name, const char* anchor) {
    rows[id].name = name;
    rows[id].anchor = anchor;
  };
  set(kFundamental, "fundamental_relation",
      "2g((∇_X J)Y,Z)=g(N_J(Y,Z),JX)");
  set(kConjDirections, "conjugate_direction_annihilation",
      "(∇_{Z_ī}J)Z_j=0");
  set(kBAntisym, "b_antisymmetrization",
      "B(X,Y)-B(Y,X)=-N_J(X,Y)");
  set(kLSwap, "l_swap_symmetry",
      "L_{ījrs̄}=L_{jīs̄r}");
  set(kLTypeVanishing, "l_type_vanishing",
      "L_{ij̄rs}=L_{ijr̄s}=L_{ijrs̄}=0");
  set(kLCurvatureDifference, "l_from_curvature_difference",
      "L_{ījrs̄}(o)=-2R^J_{ījrs̄}(o)+2R_{ījrs̄}(o)");
  set(kSekigawa, "sekigawa_decomposition",
      "R̃(X,Y,Z,W)=½R(X,Y,Z,W)+½R(X,Y,JZ,JW)"
      "-¼g((∇_X J)(∇_Y J)Z-(∇_Y J)(∇_X J)Z,W)");
  set(kWr1, "hermitian_curvature_quarter_l",
      "R̃_{ij̄rs̄}=R_{ij̄rs̄}+¼L_{j̄irs̄}");
  set(kMetricParallel, "hermitian_metric_parallel", "∇̃g=0");
  set(kJParallel, "hermitian_j_parallel", "∇̃J=0");
  set(kTorsionQuarterN, "hermitian_torsion_quarter_n",
      "T^{∇̃}=¼N_J");
  set(kNRange01, "nijenhuis_range_01",
      "N_J(Z_i,Z_k) is of type (0,1)");
  set(kBracketQuarterN, "frame_bracket_quarter_n",
      "[Z_i,Z_k](o)=-¼N_J(Z_i,Z_k)(o)");
  set(kRjComponent, "rj_component_formula",
      "R^J_{ījrs̄}(o)=-i g(∇_ī J∇_j Z_r,Z_s̄)(o)");
  set(kLDiagonalDerivative, "l_diagonal_second_derivative",
      "L(Z_ī,Z_i,Z_j,Z_j̄)(o)=-4g(∇_i Z_j,∇_ī Z_j̄)(o)");
  set(kRiemannComponent, "riemann_component_formula",
      "R_{ik̄rs̄}(o)=-g(∇_k̄∇_i Z_r,Z_s̄)(o)");
  return rows;
}

// Rows expressible through pointwise tensors and the curvature tables.
void feed_tensor_rows(const PointData& pd, std::vector<RowAccumulator>& rows,
                      double* wr1_statement, double* wr1_proof) {
  const int d = pd.dim();
  const int n = pd.n();
  const ChartJets& cj = pd.cj;
  const MatrixXd& g0 = cj.g0;
  const MatrixXd& J0 = cj.J0;
  const auto L = l_components(cj);

  // precomputed (nabla_{F_i} J) and (nabla_{J F_i} J) over the real frame
  std::vector<MatrixXd> MF(d), MJF(d);
  for (int i = 0; i < d; ++i) {
    MF[i] = pd.dj_dir(pd.rf[i]);
    MJF[i] = pd.dj_dir(VectorXd(J0 * pd.rf[i]));
  }

  for (int i = 0; i < d; ++i) {
    const VectorXd& X = pd.rf[i];
    for (int j = 0; j < d; ++j) {
      const VectorXd& Y = pd.rf[j];
      VectorXd nxy = pd.n_real(X, Y);
      // B(X, Y) - B(Y, X) + N(X, Y) = 0
      VectorXd bxy = J0 * (MF[i] * Y) - MJF[i] * Y;
      VectorXd byx = J0 * (MF[j] * X) - MJF[j] * X;
      rows[kBAntisym].feed(g_norm(g0, VectorXd(bxy - byx + nxy)));
      for (int k = 0; k < d; ++k) {
        const VectorXd& Z = pd.rf[k];
        double lhs = 2.0 * (MF[i] * Y).dot(g0 * Z);
        double rhs = pd.n_real(Y, Z).dot(g0 * (J0 * X));
        rows[kFundamental].feed(std::abs(lhs - rhs));
      }
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rows[kConjDirections].feed(h_norm(g0, pd.dj_dir_c(pd.Wb[i]) * pd.W[j]));
      rows[kNRange01].feed(
          h_norm(g0, project10(J0, pd.n_cplx(pd.W[i], pd.W[j]))));
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          cx a = contract4(L, d, pd.Wb[i], pd.W[j], pd.W[r], pd.Wb[s]);
          cx b = contract4(L, d, pd.W[j], pd.Wb[i], pd.Wb[s], pd.W[r]);
          rows[kLSwap].feed(std::abs(a - b));
          rows[kLTypeVanishing].feed(
              std::abs(contract4(L, d, pd.W[i], pd.Wb[j], pd.W[r], pd.W[s])));
          rows[kLTypeVanishing].feed(
              std::abs(contract4(L, d, pd.W[i], pd.W[j], pd.Wb[r], pd.W[s])));
          rows[kLTypeVanishing].feed(
              std::abs(contract4(L, d, pd.W[i], pd.W[j], pd.W[r], pd.Wb[s])));

          cx Rt = contract4(cj.riemH_table, d, pd.W[i], pd.Wb[j], pd.W[r], pd.Wb[s]);
          cx R = contract4(cj.riem_table, d, pd.W[i], pd.Wb[j], pd.W[r], pd.Wb[s]);
          cx Ls = contract4(L, d, pd.W[i], pd.Wb[j], pd.W[r], pd.Wb[s]);
          cx Lp = contract4(L, d, pd.Wb[j], pd.W[i], pd.W[r], pd.Wb[s]);
          double rs = std::abs(Rt - R - 0.25 * Ls);
          double rp = std::abs(Rt - R - 0.25 * Lp);
          *wr1_statement = std::max(*wr1_statement, rs);
          *wr1_proof = std::max(*wr1_proof, rp);
          rows[kWr1].feed(rp);
        }
    }

  // Sekigawa decomposition over coordinate quadruples: extract the (x, y)
  // slice of each table, compare against the half-sum plus the J-derivative
  // commutator term.
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y) {
      MatrixXd Rxy(d, d), RHxy(d, d);
      for (int z = 0; z < d; ++z)
        for (int w = 0; w < d; ++w) {
          Rxy(z, w) = cj.riem_table[idx4(d, x, y, z, w)];
          RHxy(z, w) = cj.riemH_table[idx4(d, x, y, z, w)];
        }
      MatrixXd C = pd.dJ[x] * pd.dJ[y] - pd.dJ[y] * pd.dJ[x];
      MatrixXd resid = RHxy - 0.5 * Rxy - 0.5 * (J0.transpose() * Rxy * J0) +
                       0.25 * (C.transpose() * g0);
      rows[kSekigawa].feed(resid.cwiseAbs().maxCoeff());
    }

  // Parallelism and torsion of the Hermitian connection, coordinatewise.
  for (int c = 0; c < d; ++c)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double dg = cj.g.at(a, b).derivative(c).value();
        double dj = cj.jm.at(a, b).derivative(c).value();
        double tg = dg, tj = dj;
        for (int e = 0; e < d; ++e) {
          tg -= cj.gammaH.at(c, e, a).value() * g0(e, b);
          tg -= cj.gammaH.at(c, e, b).value() * g0(a, e);
          tj += cj.gammaH.at(c, a, e).value() * J0(e, b);
          tj -= cj.gammaH.at(c, e, b).value() * J0(a, e);
        }
        rows[kMetricParallel].feed(std::abs(tg));
        rows[kJParallel].feed(std::abs(tj));
        double tors = cj.gammaH.at(c, a, b).value() - cj.gammaH.at(b, a, c).value();
        rows[kTorsionQuarterN].feed(
            std::abs(tors - 0.25 * pd.nv[std::size_t(c * d + b) * d + a]));
      }
}

// Rows that evaluate normalized frame germs at the base point.
void feed_frame_rows(const PointData& pd, const Tolerances& tol,
                     std::vector<RowAccumulator>& rows) {
  const ChartJets& cj = pd.cj;
  const int d = pd.dim();
  const int n = pd.n();
  const auto L = l_components(cj);
  GnhFrame f = construct_gnh_frame(cj, tol, /*check=*/false);

  std::vector<VectorJet> Z(n), Zb(n), JZ(n);
  for (int i = 0; i < n; ++i) {
    Z[i] = f.germ(cj, i);
    Zb[i] = vj_conj(Z[i]);
    JZ[i] = apply_J(cj, Z[i]);
  }

  // nabla_{Z_j} Z_r and nabla_{conj Z_i} Z_r, plus their J images
  std::vector<std::vector<VectorJet>> U(n), Ub(n), JU(n), JUb(n);
  for (int j = 0; j < n; ++j) {
    U[j].reserve(n);
    Ub[j].reserve(n);
    JU[j].reserve(n);
    JUb[j].reserve(n);
    for (int r = 0; r < n; ++r) {
      U[j].push_back(nabla(cj, Z[j], Z[r]));
      Ub[j].push_back(nabla(cj, Zb[j], Z[r]));
      JU[j].push_back(apply_J(cj, U[j][r]));
      JUb[j].push_back(apply_J(cj, Ub[j][r]));
    }
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // bracket against the Nijenhuis value
      VectorXcd br = vj_value(lie_bracket(Z[i], Z[j]));
      VectorXcd nj = vj_value(nijenhuis(cj, Z[i], Z[j]));
      rows[kBracketQuarterN].feed((br + 0.25 * nj).cwiseAbs().maxCoeff());

      // L diagonal from first frame derivatives
      cx ld = contract4(L, d, pd.Wb[i], pd.W[i], pd.W[j], pd.Wb[j]);
      VectorXcd v = vj_value(U[i][j]);
      rows[kLDiagonalDerivative].feed(
          std::abs(ld + 4.0 * g_bilinear(cj.g0, v, v.conjugate())));

      VectorJet brc = lie_bracket(Zb[i], Z[j]);
      for (int r = 0; r < n; ++r) {
        VectorXcd t1 = vj_value(nabla(cj, Zb[i], JU[j][r]));
        VectorXcd t2 = vj_value(nabla(cj, Z[j], JUb[i][r]));
        VectorXcd t3 = vj_value(nabla(cj, brc, JZ[r]));
        VectorXcd core = t1 - t2 - t3;
        VectorXcd t4 = vj_value(nabla(cj, Zb[j], U[i][r]));
        for (int s = 0; s < n; ++s) {
          // J conj Z_s has value -i conj W_s
          cx rj = g_bilinear(cj.g0, core, VectorXcd(cx(0, -1) * pd.Wb[s]));
          cx Lv = contract4(L, d, pd.Wb[i], pd.W[j], pd.W[r], pd.Wb[s]);
          cx Rv = contract4(cj.riem_table, d, pd.Wb[i], pd.W[j], pd.W[r], pd.Wb[s]);
          rows[kLCurvatureDifference].feed(std::abs(Lv + 2.0 * rj - 2.0 * Rv));
          rows[kRjComponent].feed(
              std::abs(rj - cx(0, -1) * g_bilinear(cj.g0, t1, pd.Wb[s])));
          cx Rv2 = contract4(cj.riem_table, d, pd.W[i], pd.Wb[j], pd.W[r], pd.Wb[s]);
          rows[kRiemannComponent].feed(
              std::abs(Rv2 + g_bilinear(cj.g0, t4, pd.Wb[s])));
        }
      }
    }
}

std::string wr1_classify(double statement, double proof, const Tolerances& tol) {
  bool s = statement <= tol.second_order;
  bool p = proof <= tol.second_order;
  if (s && p) return "both";
  if (s) return "statement";
  if (p) return "proof";
  return "neither";
}

}  // namespace

bool IdentityReport::all_pass() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const IdentityRow& r) { return r.pass; });
}

double IdentityReport::max_residual() const {
  double m = 0.0;
  for (const auto& r : rows) m = std::max(m, r.residual);
  return m;
}

const IdentityRow* IdentityReport::find(std::string_view name) const {
  for (const auto& r : rows)
    if (r.name == name) return &r;
  return nullptr;
}

IdentityReport identity_suite(const AlmostKahlerChart& chart, int nsamples,
                              std::uint64_t seed, const Tolerances& tol) {
  IdentityReport report;
  report.chart = chart.label;
  report.seed = seed;
  report.nsamples = nsamples;

  std::vector<RowAccumulator> rows = make_rows();
  double wr1_statement = 0.0, wr1_proof = 0.0;

  for (const auto& p : sample_points(chart.domain, nsamples, seed)) {
    PointData pd(chart, p, 3, tol);
    feed_tensor_rows(pd, rows, &wr1_statement, &wr1_proof);
    feed_frame_rows(pd, tol, rows);
  }

  report.rows.reserve(rows.size());
  for (const auto& acc : rows)
    report.rows.push_back({acc.name, acc.anchor, acc.residual,
                           acc.residual <= tol.second_order});
  report.wr1_statement = wr1_statement;
  report.wr1_proof = wr1_proof;
  report.wr1_variant = wr1_classify(wr1_statement, wr1_proof, tol);
  return report;
}

void Defect::consider(double v, const std::vector<double>& p, std::string d) {
  if (v > value || detail.empty()) {
    value = v;
    point = p;
    detail = std::move(d);
  }
}

const Defect* DefectReport::find(std::string_view name) const {
  for (const auto& [n, d] : defects)
    if (n == name) return &d;
  return nullptr;
}

DefectReport integrability_defects(const AlmostKahlerChart& chart, int nsamples,
                                   std::uint64_t seed, const Tolerances& tol) {
  DefectReport report;
  report.chart = chart.label;
  report.seed = seed;
  report.nsamples = nsamples;
  report.defects = {{"nijenhuis", {}},       {"nabla01_nijenhuis", {}},
                    {"L_diagonal", {}},      {"RJ_vs_R", {}},
                    {"hermitian_vs_R", {}},  {"bisectional", {}}};
  Defect& d_nij = report.defects[0].second;
  Defect& d_dnij = report.defects[1].second;
  Defect& d_ldiag = report.defects[2].second;
  Defect& d_rj = report.defects[3].second;
  Defect& d_herm = report.defects[4].second;
  Defect& d_bisec = report.defects[5].second;

  char buf[128];
  // Plane directions for the bisectional comparison come from a separate
  // stream so the sampled base points match the identity suite's.
  Sampler planes(seed ^ 0x9e3779b97f4a7c15ull);

  for (const auto& p : sample_points(chart.domain, nsamples, seed)) {
    PointData pd(chart, p, 2, tol);
    const ChartJets& cj = pd.cj;
    const int d = pd.dim();
    const int n = pd.n();
    const auto L = l_components(cj);
    const auto dN = nabla_nijenhuis_components(cj);

    // ||N_J|| over real frame pairs
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        double v = g_norm(cj.g0, pd.n_real(pd.rf[i], pd.rf[j]));
        std::snprintf(buf, sizeof buf, "frame pair (e_%d, e_%d)", i + 1, j + 1);
        d_nij.consider(v, p, buf);
      }

    // ||(nabla''_k N)(u, v)|| with u, v over the frame and its conjugates
    for (int k = 0; k < n; ++k)
      for (int bi = 0; bi < 2 * n; ++bi)
        for (int ei = 0; ei < 2 * n; ++ei) {
          const VectorXcd& u = bi < n ? pd.W[bi] : pd.Wb[bi - n];
          const VectorXcd& w = ei < n ? pd.W[ei] : pd.Wb[ei - n];
          VectorXcd out = VectorXcd::Zero(d);
          for (int c = 0; c < d; ++c)
            for (int b = 0; b < d; ++b) {
              const cx cb = std::conj(pd.W[k](c)) * u(b);
              if (cb == 0.0) continue;
              for (int e = 0; e < d; ++e) {
                const cx w3 = cb * w(e);
                if (w3 == 0.0) continue;
                for (int a = 0; a < d; ++a) out(a) += dN[idx4(d, c, b, e, a)] * w3;
              }
            }
          std::snprintf(buf, sizeof buf,
                        "direction conj W_%d, arguments (%s_%d, %s_%d)", k + 1,
                        bi < n ? "W" : "conj W", bi % n + 1,
                        ei < n ? "W" : "conj W", ei % n + 1);
          d_dnij.consider(h_norm(cj.g0, out), p, buf);
        }

    // |L(Z_ibar, Z_i, Z_j, Z_jbar)|
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double v = std::abs(contract4(L, d, pd.Wb[i], pd.W[i], pd.W[j], pd.Wb[j]));
        std::snprintf(buf, sizeof buf, "(i, j) = (%d, %d)", i + 1, j + 1);
        d_ldiag.consider(v, p, buf);
      }

    // |R^J(JX, Y, X, JY) - R(JX, Y, X, JY)| on constant extensions of the
    // real frame
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        VectorXcd X = pd.rf[i].cast<cx>();
        VectorXcd Y = pd.rf[j].cast<cx>();
        VectorXcd JX = (cj.J0 * pd.rf[i]).cast<cx>();
        VectorXcd JY = (cj.J0 * pd.rf[j]).cast<cx>();
        cx rj = rj_curvature(cj, vj_constant(cj, JX), vj_constant(cj, Y),
                             vj_constant(cj, X), vj_constant(cj, JY))
                    .value();
        cx r = contract4(cj.riem_table, d, JX, Y, X, JY);
        std::snprintf(buf, sizeof buf, "(X, Y) = (F_%d, F_%d)", i + 1, j + 1);
        d_rj.consider(std::abs(rj - r), p, buf);
      }

    // |R~(X, JX, Y, JY) - R(X, JX, Y, JY)| over real frame pairs
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        VectorXcd X = pd.rf[i].cast<cx>();
        VectorXcd Y = pd.rf[j].cast<cx>();
        VectorXcd JX = (cj.J0 * pd.rf[i]).cast<cx>();
        VectorXcd JY = (cj.J0 * pd.rf[j]).cast<cx>();
        cx a = contract4(cj.riemH_table, d, X, JX, Y, JY);
        cx b = contract4(cj.riem_table, d, X, JX, Y, JY);
        std::snprintf(buf, sizeof buf, "(X, Y) = (F_%d, F_%d)", i + 1, j + 1);
        d_herm.consider(std::abs(a - b), p, buf);
      }

    // |K - K~| over frame planes and sampled planes
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) {
        double v = std::abs(bisectional_curvature(cj, pd.rf[i], pd.rf[j], false) -
                            bisectional_curvature(cj, pd.rf[i], pd.rf[j], true));
        std::snprintf(buf, sizeof buf, "planes spanned by F_%d, F_%d", i + 1,
                      j + 1);
        d_bisec.consider(v, p, buf);
      }
    for (int t = 0; t < 3; ++t) {
      VectorXd v(d), w(d);
      for (int a = 0; a < d; ++a) v(a) = planes.uniform(-1.0, 1.0);
      for (int a = 0; a < d; ++a) w(a) = planes.uniform(-1.0, 1.0);
      double val = std::abs(bisectional_curvature(cj, v, w, false) -
                            bisectional_curvature(cj, v, w, true));
      std::snprintf(buf, sizeof buf, "sampled plane pair %d", t + 1);
      d_bisec.consider(val, p, buf);
    }
  }

  report.identities = identity_suite(chart, nsamples, seed, tol);
  report.verdict = classify(report, tol);
  return report;
}

std::string classify(const DefectReport& report, const Tolerances& tol) {
  bool all_zero = true;
  double nij = 0.0;
  for (const auto& [name, defect] : report.defects) {
    if (defect.value > tol.zero_consistency) all_zero = false;
    if (name == "nijenhuis") nij = defect.value;
  }
  if (all_zero) return "kahler-consistent";
  if (nij >= tol.nonzero_detection) return "non-integrable";
  return "inconclusive";
}

std::string report_to_json(const DefectReport& report) {
  nlohmann::json j;
  j["schema"] = "akgeo-report/1";
  j["chart"] = report.chart;
  j["seed"] = report.seed;
  j["nsamples"] = report.nsamples;
  nlohmann::json defects;
  for (const auto& [name, defect] : report.defects) {
    defects[name] = {{"value", defect.value},
                     {"point", defect.point},
                     {"detail", defect.detail}};
  }
  j["defects"] = defects;
  j["verdict"] = report.verdict;
  nlohmann::json identities = nlohmann::json::array();
  for (const auto& row : report.identities.rows)
    identities.push_back({{"name", row.name},
                          {"paper_anchor", row.anchor},
                          {"residual", row.residual},
                          {"pass", row.pass}});
  j["identities"] = identities;
  j["wr1_residuals"] = {{"statement", report.identities.wr1_statement},
                        {"proof", report.identities.wr1_proof}};
  j["wr1_variant"] = report.identities.wr1_variant;
  return j.dump(2);
}

}  // namespace akgeo
