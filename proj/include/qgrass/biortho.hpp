#pragma once

// Numeric pseudo-Hermitian toolkit: biorthonormal eigendecomposition of a
// concrete complex matrix with real spectrum, the metric eta, numeric ladder
// operators, and instantiation of symbolic expressions as matrices.

#include <Eigen/Dense>
#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qgrass/errors.hpp"
#include "qgrass/operators.hpp"

namespace qgrass {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using cdouble = std::complex<double>;

struct BiorthoDecomp {
  CMatrix H;
  Eigen::VectorXd E;  // ascending
  CMatrix Psi;        // right eigenvectors as columns, unit norm
  CMatrix Phi;        // <phi_i|psi_j> = delta_ij
  CMatrix eta;        // sum |phi_i><phi_i|
  CMatrix eta_inv;    // sum |psi_i><psi_i|

  int size() const { return static_cast<int>(H.rows()); }
};

inline double spectral_scale(const CMatrix& h) { return std::max(1.0, h.norm()); }

/// Throws DecompositionError for complex spectra, defective or degenerate
/// input. All thresholds are relative to max(1, ||H||) and scale with tol.
inline BiorthoDecomp biortho_decompose(const CMatrix& h, double tol = 1e-10) {
  if (h.rows() != h.cols() || h.rows() == 0) throw DecompositionError("H must be a nonempty square matrix");
  const double scale = spectral_scale(h);
  const double reject = 1e3 * tol;

  Eigen::ComplexEigenSolver<CMatrix> es(h, true);
  if (es.info() != Eigen::Success) throw DecompositionError("eigen solver did not converge");

  const auto dim = h.rows();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](auto a, auto b) { return es.eigenvalues()[a].real() < es.eigenvalues()[b].real(); });

  BiorthoDecomp d;
  d.H = h;
  d.E.resize(dim);
  d.Psi.resize(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const cdouble ev = es.eigenvalues()[order[static_cast<std::size_t>(i)]];
    if (std::abs(ev.imag()) > reject * scale)
      throw DecompositionError("complex eigenvalue " + std::to_string(ev.real()) + (ev.imag() < 0 ? "" : "+") +
                               std::to_string(ev.imag()) + "i");
    d.E[i] = ev.real();
    CVector v = es.eigenvectors().col(order[static_cast<std::size_t>(i)]);
    v.normalize();
    Eigen::Index big = 0;
    v.cwiseAbs().maxCoeff(&big);
    v *= std::conj(v[big]) / std::abs(v[big]);
    d.Psi.col(i) = v;
  }

  const Eigen::JacobiSVD<CMatrix> svd(d.Psi);
  const auto& sv = svd.singularValues();
  if (sv[dim - 1] < reject * sv[0]) throw DecompositionError("defective matrix: eigenvectors are not a basis");
  for (Eigen::Index i = 0; i + 1 < dim; ++i)
    if (d.E[i + 1] - d.E[i] < reject * scale) throw DecompositionError("degenerate spectrum");

  d.Phi = d.Psi.inverse().adjoint();
  d.eta = d.Phi * d.Phi.adjoint();
  d.eta_inv = d.Psi * d.Psi.adjoint();
  return d;
}

/// Residuals of the decomposition invariants, each relative where meaningful.
struct DecompResiduals {
  double right_eigen;   // max_i ||H psi_i - E_i psi_i|| / ||H||
  double left_eigen;    // max_i ||H^dag phi_i - E_i phi_i|| / ||H||
  double pairing;       // max |<phi_i|psi_j> - delta_ij|
  double completeness;  // ||sum psi_i phi_i^dag - I||
  double eta_product;   // ||eta eta^{-1} - I||
  double eta_hermitian;  // ||eta - eta^dag||

  double max() const {
    return std::max({right_eigen, left_eigen, pairing, completeness, eta_product, eta_hermitian});
  }
};

inline DecompResiduals decomposition_residuals(const BiorthoDecomp& d) {
  const double scale = spectral_scale(d.H);
  const auto dim = d.H.rows();
  DecompResiduals r{};
  for (Eigen::Index i = 0; i < dim; ++i) {
    r.right_eigen = std::max(r.right_eigen, (d.H * d.Psi.col(i) - d.E[i] * d.Psi.col(i)).norm() / scale);
    r.left_eigen = std::max(r.left_eigen, (d.H.adjoint() * d.Phi.col(i) - d.E[i] * d.Phi.col(i)).norm() / scale);
  }
  const CMatrix id = CMatrix::Identity(dim, dim);
  r.pairing = (d.Phi.adjoint() * d.Psi - id).cwiseAbs().maxCoeff();
  r.completeness = (d.Psi * d.Phi.adjoint() - id).norm();
  r.eta_product = (d.eta * d.eta_inv - id).norm();
  r.eta_hermitian = (d.eta - d.eta.adjoint()).norm();
  return r;
}

struct PseudoHermiticityReport {
  double residual;            // ||eta H eta^{-1} - H^dag|| / ||H||
  double min_eta_eigenvalue;  // eta must be positive definite
  bool passes;
};

inline PseudoHermiticityReport check_pseudo_hermiticity(const BiorthoDecomp& d, double tol = 1e-10) {
  const double residual = (d.eta * d.H * d.eta_inv - d.H.adjoint()).norm() / spectral_scale(d.H);
  const CMatrix herm = 0.5 * (d.eta + d.eta.adjoint());
  const Eigen::SelfAdjointEigenSolver<CMatrix> es(herm);
  const double min_ev = es.eigenvalues().minCoeff();
  return {residual, min_ev, residual <= tol && min_ev > 0};
}

inline std::vector<double> sqrt_rho_values(std::span<const mpq_class> rho, int count) {
  if (static_cast<int>(rho.size()) < count) throw DomainError("need " + std::to_string(count) + " rho values");
  std::vector<double> s;
  for (int i = 0; i < count; ++i) {
    if (rho[static_cast<std::size_t>(i)] <= 0) throw DomainError("rho values must be positive");
    s.push_back(std::sqrt(rho[static_cast<std::size_t>(i)].get_d()));
  }
  return s;
}

struct NumericLadder {
  CMatrix b, bsharp, btilde, btilde_sharp_prime;
  double nilpotency;          // ||b^n|| / ||b||^n
  double sharp_explicit;      // ||b# - sum sqrt(rho_{i+1}) psi_{i+1} phi_i^dag|| / ||b||
  double tilde_sharp_dagger;  // ||b~#' - b^dag|| / ||b||
};

inline NumericLadder numeric_ladder(const BiorthoDecomp& d, std::span<const mpq_class> rho) {
  const auto n = d.H.rows();
  const std::vector<double> s = sqrt_rho_values(rho, static_cast<int>(n) - 1);
  NumericLadder l;
  l.b = CMatrix::Zero(n, n);
  CMatrix explicit_sharp = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    const double si = s[static_cast<std::size_t>(i)];
    l.b += si * d.Psi.col(i) * d.Phi.col(i + 1).adjoint();
    explicit_sharp += si * d.Psi.col(i + 1) * d.Phi.col(i).adjoint();
  }
  l.bsharp = d.eta_inv * l.b.adjoint() * d.eta;
  l.btilde = d.eta * l.b * d.eta_inv;
  l.btilde_sharp_prime = d.eta * l.btilde.adjoint() * d.eta_inv;

  const double bn = l.b.norm();
  CMatrix power = CMatrix::Identity(n, n);
  for (Eigen::Index k = 0; k < n; ++k) power = power * l.b;
  l.nilpotency = power.norm() / std::pow(bn, static_cast<double>(n));
  l.sharp_explicit = (l.bsharp - explicit_sharp).norm() / bn;
  l.tilde_sharp_dagger = (l.btilde_sharp_prime - l.b.adjoint()).norm() / bn;
  return l;
}

/// [A, B]_q with q = exp(2 pi i / n).
inline CMatrix numeric_q_commutator(const CMatrix& a, const CMatrix& b, int n) {
  const cdouble q = std::polar(1.0, 2.0 * std::numbers::pi / n);
  return a * b - q * (b * a);
}

enum class DyadShape : int { Operator = 0, Ket = 1, Bra = 2 };

/// Word -> matrix map of an instantiated expression; kets are columns, bras rows.
struct NumericInstance {
  std::map<std::pair<Word, DyadShape>, CMatrix> blocks;
  double max_norm = 0.0;  // max Frobenius norm over blocks
};

inline CVector family_vector(const BiorthoDecomp& d, Family f, int i) {
  if (i < 0 || i >= d.size()) throw DomainError("level index " + std::to_string(i) + " outside the decomposition");
  return f == Family::Psi ? CVector(d.Psi.col(i)) : CVector(d.Phi.col(i));
}

/// Maps dyads to matrices via the decomposition (Gram entries included) and
/// evaluates coefficients at the given rho and u. Grassmann words stay formal.
inline NumericInstance instantiate_numeric(const OpExpr& e, const BiorthoDecomp& d, std::span<const mpq_class> rho,
                                           cdouble u = 1.0) {
  const int n = d.size();
  if (e.level() != n)
    throw DomainError("symbolic level " + std::to_string(e.level()) + " does not match decomposition size " +
                      std::to_string(n));
  NumericInstance inst;
  for (const auto& [key, c] : e.terms()) {
    const cdouble value = c.eval(rho, u);
    const Dyad& dy = key.dyad;
    CMatrix m;
    DyadShape shape = DyadShape::Operator;
    switch (dy.form) {
      case DyadForm::Identity: m = CMatrix::Identity(n, n); break;
      case DyadForm::Outer:
        m = family_vector(d, dy.ket_family, dy.ket_index) * family_vector(d, dy.bra_family, dy.bra_index).adjoint();
        break;
      case DyadForm::Ket:
        shape = DyadShape::Ket;
        m = family_vector(d, dy.ket_family, dy.ket_index);
        break;
      case DyadForm::Bra:
        shape = DyadShape::Bra;
        m = family_vector(d, dy.bra_family, dy.bra_index).adjoint();
        break;
    }
    auto [it, fresh] = inst.blocks.try_emplace({key.word, shape}, value * m);
    if (!fresh) it->second += value * m;
  }
  for (const auto& [k, m] : inst.blocks) inst.max_norm = std::max(inst.max_norm, m.norm());
  return inst;
}

/// Max Frobenius norm of the blockwise difference a - b (missing blocks count as zero).
inline double instance_distance(const NumericInstance& a, const NumericInstance& b) {
  double worst = 0.0;
  for (const auto& [k, m] : a.blocks) {
    auto it = b.blocks.find(k);
    worst = std::max(worst, it == b.blocks.end() ? m.norm() : (m - it->second).norm());
  }
  for (const auto& [k, m] : b.blocks)
    if (!a.blocks.contains(k)) worst = std::max(worst, m.norm());
  return worst;
}

/// H = S D S^{-1} with S = I + 0.25 G/||G||_2 (G complex Gaussian), so
/// cond(S) <= 5/3, and D real with gaps of at least 0.5.
inline CMatrix random_real_spectrum_matrix(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> gap(0.5, 1.5);
  CMatrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = cdouble(gauss(rng), gauss(rng));
  const double g2 = Eigen::JacobiSVD<CMatrix>(g).singularValues()[0];
  const CMatrix s = CMatrix::Identity(dim, dim) + (0.25 / g2) * g;
  Eigen::VectorXcd diag(dim);
  double e = -0.5 * dim;
  for (int i = 0; i < dim; ++i) {
    diag[i] = e;
    e += gap(rng);
  }
  return s * diag.asDiagonal() * s.inverse();
}

}  // namespace qgrass
