#include "spectral/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "spectral/toeplitz.hpp"

namespace spectral {

SelectionPattern::SelectionPattern(std::vector<Eigen::Index> idx, Eigen::Index n)
    : indices(std::move(idx)), ambient(n) {
  if (indices.empty()) throw std::invalid_argument("SelectionPattern: empty index set");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] < 0 || indices[k] >= ambient)
      throw std::invalid_argument("SelectionPattern: index out of range");
    if (k > 0 && indices[k] <= indices[k - 1])
      throw std::invalid_argument("SelectionPattern: indices must be strictly increasing");
  }
}

SamplingOperator::SamplingOperator(Mat m, ValidityReport r, std::optional<SelectionPattern> p)
    : mat_(std::move(m)), report_(r), pattern_(std::move(p)) {}

SamplingOperator SamplingOperator::selection(const SelectionPattern& pattern) {
  Mat M = Mat::Zero(pattern.size(), pattern.ambient);
  for (Eigen::Index r = 0; r < pattern.size(); ++r) M(r, pattern.indices[r]) = 1.0;
  ValidityReport rep = validate_sampling_matrix(M);
  return SamplingOperator(std::move(M), rep, pattern);
}

SamplingOperator SamplingOperator::dense(const Mat& matrix) {
  if (matrix.rows() > matrix.cols())
    throw std::invalid_argument("SamplingOperator: matrix must be fat (m <= n)");
  if (!matrix.allFinite())
    throw std::invalid_argument("SamplingOperator: non-finite entries");
  return SamplingOperator(matrix, validate_sampling_matrix(matrix), std::nullopt);
}

SamplingOperator SamplingOperator::identity(Eigen::Index n) {
  std::vector<Eigen::Index> idx(n);
  for (Eigen::Index j = 0; j < n; ++j) idx[j] = j;
  return selection(SelectionPattern(std::move(idx), n));
}

SamplingOperator selection_matrix(const SelectionPattern& pattern) {
  return SamplingOperator::selection(pattern);
}

ValidityReport validate_sampling_matrix(const Mat& M) {
  if (M.rows() > M.cols())
    throw std::invalid_argument("validate_sampling_matrix: matrix must be fat (m <= n)");
  const Eigen::Index m = M.rows();
  const Eigen::Index n = M.cols();
  ValidityReport rep;

  Eigen::JacobiSVD<Mat> svd(M);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv[0] : 0.0;
  const double smin = sv.size() ? sv[sv.size() - 1] : 0.0;
  rep.full_rank = smax > 0.0 && smin > 1e-10 * smax;
  rep.residual_norms[0] = smax > 0.0 ? smin / smax : 0.0;

  const Vec g = toeplitz_adjoint(Mat(M.adjoint() * M));
  const double gnorm = g.norm();
  if (gnorm == 0.0) {
    rep.range_condition = true;
    rep.residual_norms[1] = 0.0;
  } else {
    const Vec w = Mat(M.adjoint()).completeOrthogonalDecomposition().solve(g);
    const double res = (M.adjoint() * w - g).norm() / gnorm;
    rep.residual_norms[1] = res;
    rep.range_condition = res <= 1e-9;
  }

  Vec target = Vec::Zero(n);
  target[0] = static_cast<double>(m);
  const double anc_res = (g - target).norm() / (1.0 + target.norm());
  rep.residual_norms[2] = anc_res;
  rep.atom_norm_constant = anc_res <= 1e-9;
  return rep;
}

namespace {

// uniform double in [0,1) from the top 53 bits of the engine output;
// uniform_real_distribution is implementation-defined, this is not
double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

Eigen::Index uniform_below(std::mt19937_64& eng, Eigen::Index bound) {
  return static_cast<Eigen::Index>(uniform01(eng) * static_cast<double>(bound));
}

}  // namespace

SelectionPattern random_subsample(Eigen::Index n, Eigen::Index m, std::uint64_t seed,
                                  bool force_zero) {
  if (m < 1 || m > n) throw std::invalid_argument("random_subsample: need 1 <= m <= n");
  std::mt19937_64 eng(seed);
  std::vector<Eigen::Index> pool;
  std::vector<Eigen::Index> chosen;
  Eigen::Index need = m;
  if (force_zero) {
    chosen.push_back(0);
    --need;
    for (Eigen::Index j = 1; j < n; ++j) pool.push_back(j);
  } else {
    for (Eigen::Index j = 0; j < n; ++j) pool.push_back(j);
  }
  // partial Fisher-Yates: draw `need` entries to the front
  for (Eigen::Index k = 0; k < need; ++k) {
    const Eigen::Index r = k + uniform_below(eng, static_cast<Eigen::Index>(pool.size()) - k);
    std::swap(pool[k], pool[r]);
    chosen.push_back(pool[k]);
  }
  std::sort(chosen.begin(), chosen.end());
  return SelectionPattern(std::move(chosen), n);
}

SelectionPattern mrss_pattern(const MrssConfig& config) {
  if (config.samplers.empty())
    throw std::invalid_argument("mrss_pattern: no samplers configured");
  if (config.grid_size < 1) throw std::invalid_argument("mrss_pattern: empty grid");
  std::set<Eigen::Index> merged;
  for (const auto& s : config.samplers) {
    if (s.stride < 1 || s.delay < 0 || s.count < 1)
      throw std::invalid_argument("mrss_pattern: sampler parameters must be positive");
    const Eigen::Index last = s.delay + (s.count - 1) * s.stride;
    if (last >= config.grid_size)
      throw std::invalid_argument("mrss_pattern: sampler index " + std::to_string(last) +
                                  " overflows grid of size " + std::to_string(config.grid_size));
    for (Eigen::Index k = 0; k < s.count; ++k) merged.insert(s.delay + k * s.stride);
  }
  return SelectionPattern(std::vector<Eigen::Index>(merged.begin(), merged.end()),
                          config.grid_size);
}

bool difference_set_closed(const SelectionPattern& pattern) {
  std::set<Eigen::Index> in(pattern.indices.begin(), pattern.indices.end());
  for (std::size_t a = 0; a < pattern.indices.size(); ++a)
    for (std::size_t b = a + 1; b < pattern.indices.size(); ++b)
      if (!in.count(pattern.indices[b] - pattern.indices[a])) return false;
  return true;
}

}  // namespace spectral
