#ifndef SPECTRAL_SAMPLING_HPP
#define SPECTRAL_SAMPLING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "spectral/types.hpp"

namespace spectral {

/// A sorted, strictly increasing, nonempty set of kept sample indices within
/// an ambient dimension n.
struct SelectionPattern {
  std::vector<Eigen::Index> indices;
  Eigen::Index ambient = 0;

  SelectionPattern() = default;
  SelectionPattern(std::vector<Eigen::Index> idx, Eigen::Index n);

  Eigen::Index size() const { return static_cast<Eigen::Index>(indices.size()); }
  bool contains_zero() const { return !indices.empty() && indices.front() == 0; }
};

/// Outcome of the three structural checks on a measurement matrix M:
///   full_rank          rank(M) == rows(M), via SVD at tolerance 1e-10*sigma_max
///   range_condition    T_n*(M*M) lies in range(M*) (least-squares residual
///                      <= 1e-9 relative)
///   atom_norm_constant T_n*(M*M) == m*e0 at tolerance 1e-9, equivalently
///                      ||M a(f,phi)||^2 == m for every atom
/// residual_norms stores the measured residual of each check in that order.
struct ValidityReport {
  bool full_rank = false;
  bool range_condition = false;
  bool atom_norm_constant = false;
  std::array<double, 3> residual_norms{0.0, 0.0, 0.0};

  bool all() const { return full_rank && range_condition && atom_norm_constant; }
};

/// Multirate sampler bank on a common alignment grid of grid_size points.
/// Each sampler contributes {delay + k*stride : 0 <= k < count}; all indices
/// must stay below grid_size.
struct MrssConfig {
  struct Sampler {
    Eigen::Index stride = 1;
    Eigen::Index delay = 0;
    Eigen::Index count = 1;
  };
  std::vector<Sampler> samplers;
  Eigen::Index grid_size = 0;
};

/// An m x n measurement matrix with its validity report computed eagerly.
/// Immutable; safe to share across threads.
class SamplingOperator {
 public:
  static SamplingOperator selection(const SelectionPattern& pattern);
  static SamplingOperator dense(const Mat& matrix);
  static SamplingOperator identity(Eigen::Index n);

  const Mat& matrix() const { return mat_; }
  Eigen::Index rows() const { return mat_.rows(); }
  Eigen::Index cols() const { return mat_.cols(); }
  const ValidityReport& validity() const { return report_; }
  const std::optional<SelectionPattern>& pattern() const { return pattern_; }

 private:
  SamplingOperator(Mat m, ValidityReport r, std::optional<SelectionPattern> p);

  Mat mat_;
  ValidityReport report_;
  std::optional<SelectionPattern> pattern_;
};

/// Builds the selection matrix C_I whose rows are the canonical basis vectors
/// indexed by the pattern.
SamplingOperator selection_matrix(const SelectionPattern& pattern);

/// Runs the three checks described on ValidityReport.
ValidityReport validate_sampling_matrix(const Mat& M);

/// m indices drawn uniformly without replacement from {0..n-1}; with
/// force_zero, index 0 is always kept and the rest are drawn from {1..n-1}.
/// Deterministic for a fixed seed.
SelectionPattern random_subsample(Eigen::Index n, Eigen::Index m, std::uint64_t seed,
                                  bool force_zero = true);

/// Merged, deduplicated index set of all samplers in the config.
SelectionPattern mrss_pattern(const MrssConfig& config);

/// True when the difference set {|i-j| : i,j in I} is contained in I. The
/// reduced semidefinite program represents the partial atomic norm exactly on
/// such patterns (uniform decimations through 0, contiguous prefixes, and
/// unions merging to these); on other patterns it is a strict restriction and
/// its value can exceed the norm.
bool difference_set_closed(const SelectionPattern& pattern);

}  // namespace spectral

#endif  // SPECTRAL_SAMPLING_HPP
