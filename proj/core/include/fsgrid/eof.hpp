#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fsgrid/date.hpp"

namespace fsgrid {

// Space-time data block: m locations as rows, T times as columns. No missing
// values; callers drop or pre-fill incomplete locations first. The id vectors
// may be left empty; when present they must match the matrix dimensions.
struct SpaceTimeMatrix {
  Eigen::MatrixXd data;
  std::vector<std::string> location_ids;
  std::vector<Date> time_ids;

  void validate() const;  // throws EmptyMatrix / BadParameters
};

// Which eigenproblem decompose() solves: the m x m covariance ("direct"), its
// T x T Gram dual ("gram"), or whichever is smaller ("automatic").
enum class EofPath { automatic, direct, gram };

struct EofResult {
  Eigen::VectorXd mean;         // length m
  Eigen::VectorXd eigenvalues;  // length r = min(m, T), non-increasing, >= 0
  Eigen::MatrixXd eofs;         // m x r, orthonormal columns
  Eigen::MatrixXd pcs;          // r x T, uncentered projections eofs' * data
  EofPath path = EofPath::automatic;

  Eigen::Index modes() const { return eigenvalues.size(); }
};

// Row-wise arithmetic mean over time.
Eigen::VectorXd spatial_mean(const SpaceTimeMatrix& field);

// (1/T) * (X - mean) (X - mean)'; divisor T, not T-1.
Eigen::MatrixXd spatial_covariance(const SpaceTimeMatrix& field);

// Full EOF decomposition, r = min(m, T) modes sorted by non-increasing
// eigenvalue. Each EOF is oriented so its component of largest absolute value
// is positive (ties broken by lowest index).
EofResult decompose(const SpaceTimeMatrix& field, EofPath path = EofPath::automatic);

// Uncentered projection a_k(t) of the observations onto EOF k (1-based).
Eigen::VectorXd pc_series(const SpaceTimeMatrix& field, const EofResult& result, int k);

// mean * 1' + sum over the requested modes (1-based) of the centered PC
// contributions. With every mode present this reproduces the input field.
Eigen::MatrixXd reconstruct(const EofResult& result, const std::vector<int>& modes);

}  // namespace fsgrid
