#include "fsgrid/eof.hpp"

#include <algorithm>
#include <cmath>

#include "fsgrid/errors.hpp"

namespace fsgrid {

namespace {

// Orients each column so that its largest-magnitude component is positive.
void apply_sign_convention(Eigen::MatrixXd& vecs) {
  for (Eigen::Index c = 0; c < vecs.cols(); ++c) {
    Eigen::Index best = 0;
    double mag = std::fabs(vecs(0, c));
    for (Eigen::Index i = 1; i < vecs.rows(); ++i) {
      const double m = std::fabs(vecs(i, c));
      if (m > mag) {
        mag = m;
        best = i;
      }
    }
    if (vecs(best, c) < 0.0) vecs.col(c) = -vecs.col(c);
  }
}

// Deterministically extends the first `filled` orthonormal columns of `basis`
// to all of its columns, drawing candidates from the canonical basis.
void complete_orthonormal(Eigen::MatrixXd& basis, Eigen::Index filled) {
  const Eigen::Index m = basis.rows();
  Eigen::Index next = filled;
  for (Eigen::Index e = 0; e < m && next < basis.cols(); ++e) {
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(m);
    cand(e) = 1.0;
    cand -= basis.leftCols(next) * (basis.leftCols(next).transpose() * cand);
    const double norm = cand.norm();
    if (norm > 0.5) {  // candidate lies mostly outside the current span
      basis.col(next++) = cand / norm;
    }
  }
  if (next < basis.cols()) throw NumericalFailure("orthonormal completion failed");
}

}  // namespace

void SpaceTimeMatrix::validate() const {
  if (data.rows() < 1 || data.cols() < 2) {
    throw EmptyMatrix("space-time matrix needs m >= 1 locations and T >= 2 times");
  }
  if (!data.allFinite()) throw BadParameters("space-time matrix contains non-finite values");
  if (!location_ids.empty() && static_cast<Eigen::Index>(location_ids.size()) != data.rows()) {
    throw BadParameters("location_ids length does not match row count");
  }
  if (!time_ids.empty() && static_cast<Eigen::Index>(time_ids.size()) != data.cols()) {
    throw BadParameters("time_ids length does not match column count");
  }
}

Eigen::VectorXd spatial_mean(const SpaceTimeMatrix& field) {
  field.validate();
  return field.data.rowwise().mean();
}

Eigen::MatrixXd spatial_covariance(const SpaceTimeMatrix& field) {
  field.validate();
  const Eigen::MatrixXd centered = field.data.colwise() - field.data.rowwise().mean().eval();
  return (centered * centered.transpose()) / static_cast<double>(field.data.cols());
}

EofResult decompose(const SpaceTimeMatrix& field, EofPath path) {
  field.validate();
  const Eigen::Index m = field.data.rows();
  const Eigen::Index T = field.data.cols();
  const Eigen::Index r = std::min(m, T);
  if (path == EofPath::automatic) path = (m <= T) ? EofPath::direct : EofPath::gram;

  EofResult out;
  out.path = path;
  out.mean = field.data.rowwise().mean();
  const Eigen::MatrixXd centered = field.data.colwise() - out.mean;

  out.eigenvalues.resize(r);
  out.eofs.resize(m, r);

  if (path == EofPath::direct) {
    const Eigen::MatrixXd cov = (centered * centered.transpose()) / static_cast<double>(T);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
    // Eigen sorts ascending; keep the top r in descending order.
    for (Eigen::Index k = 0; k < r; ++k) {
      out.eigenvalues(k) = solver.eigenvalues()(m - 1 - k);
      out.eofs.col(k) = solver.eigenvectors().col(m - 1 - k);
    }
  } else {
    const Eigen::MatrixXd gram = (centered.transpose() * centered) / static_cast<double>(T);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
    for (Eigen::Index k = 0; k < r; ++k) out.eigenvalues(k) = solver.eigenvalues()(T - 1 - k);
    const double top = std::max(out.eigenvalues(0), 0.0);
    // Y u / ||Y u|| maps dual eigenvectors onto EOFs; only meaningful for
    // clearly nonzero eigenvalues. The numerically-zero tail (centering alone
    // guarantees at least one) gets eigenvalue 0 and an orthonormal
    // completion orthogonal to the data span.
    Eigen::Index filled = 0;
    while (filled < r && out.eigenvalues(filled) > top * 1e-12) {
      const Eigen::VectorXd mapped = centered * solver.eigenvectors().col(T - 1 - filled);
      const double norm = mapped.norm();
      if (norm <= 0.0) break;
      out.eofs.col(filled) = mapped / norm;
      ++filled;
    }
    for (Eigen::Index k = filled; k < r; ++k) out.eigenvalues(k) = 0.0;
    complete_orthonormal(out.eofs, filled);
  }

  for (Eigen::Index k = 0; k < r; ++k) {
    if (out.eigenvalues(k) < 0.0) out.eigenvalues(k) = 0.0;
  }
  apply_sign_convention(out.eofs);
  out.pcs = out.eofs.transpose() * field.data;
  return out;
}

Eigen::VectorXd pc_series(const SpaceTimeMatrix& field, const EofResult& result, int k) {
  field.validate();
  if (k < 1 || k > result.modes()) throw ModeOutOfRange("pc_series: mode index out of range");
  return field.data.transpose() * result.eofs.col(k - 1);
}

Eigen::MatrixXd reconstruct(const EofResult& result, const std::vector<int>& modes) {
  const Eigen::Index T = result.pcs.cols();
  Eigen::MatrixXd out = result.mean.replicate(1, T);
  std::vector<int> unique_modes = modes;
  std::sort(unique_modes.begin(), unique_modes.end());
  unique_modes.erase(std::unique(unique_modes.begin(), unique_modes.end()), unique_modes.end());
  for (int k : unique_modes) {
    if (k < 1 || k > result.modes()) throw ModeOutOfRange("reconstruct: mode index out of range");
    const double mean_proj = result.eofs.col(k - 1).dot(result.mean);
    out += result.eofs.col(k - 1) *
           (result.pcs.row(k - 1).array() - mean_proj).matrix();
  }
  return out;
}

}  // namespace fsgrid
