#ifndef SPECTRAL_TYPES_HPP
#define SPECTRAL_TYPES_HPP

#include <complex>
#include <vector>

#include <Eigen/Core>

namespace spectral {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

/// A frequency on the unit torus, stored in [0,1). Construction reduces any
/// real argument modulo 1, so aliased inputs like -0.25 and 0.75 compare equal.
class Frequency {
 public:
  Frequency() = default;
  explicit Frequency(double raw);

  double value() const { return value_; }

  friend bool operator<(Frequency a, Frequency b) { return a.value_ < b.value_; }
  friend bool operator==(Frequency a, Frequency b) { return a.value_ == b.value_; }

 private:
  double value_ = 0.0;
};

/// Wrap-around distance on the torus: min(|f-g|, 1-|f-g|).
double wrap_distance(Frequency a, Frequency b);
double wrap_distance(double a, double b);

/// A finite atomic spectral measure: distinct frequencies with nonzero complex
/// amplitudes, sorted ascending by frequency. Amplitude and phase are merged
/// into one complex number; (|amp|, arg(amp)) recovers the polar split.
/// Entries whose frequencies collide within 1e-12 wrap distance are merged at
/// construction (amplitudes summed) and zero-amplitude entries are dropped.
class SpectralSupport {
 public:
  struct Entry {
    Frequency freq;
    Complex amp;
  };

  SpectralSupport() = default;
  explicit SpectralSupport(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  static constexpr double kMergeTolerance = 1e-12;

 private:
  std::vector<Entry> entries_;
};

/// A fixed-length complex time series; entries are checked finite at
/// construction.
class ComplexSignal {
 public:
  ComplexSignal() = default;
  explicit ComplexSignal(Vec samples);

  const Vec& vec() const { return samples_; }
  Eigen::Index size() const { return samples_.size(); }
  bool is_zero() const { return samples_.size() == 0 || samples_.norm() == 0.0; }

 private:
  Vec samples_;
};

}  // namespace spectral

#endif  // SPECTRAL_TYPES_HPP
