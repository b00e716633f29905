#include "spectral/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spectral/sampling.hpp"

namespace spectral {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Frequency::Frequency(double raw) {
  if (!std::isfinite(raw)) throw std::invalid_argument("Frequency: non-finite value");
  double r = raw - std::floor(raw);
  if (r >= 1.0) r = 0.0;  // e.g. raw = -1e-18 rounds up to 1.0
  value_ = r;
}

double wrap_distance(double a, double b) {
  double d = std::abs(a - b);
  d = d - std::floor(d);
  return std::min(d, 1.0 - d);
}

double wrap_distance(Frequency a, Frequency b) {
  return wrap_distance(a.value(), b.value());
}

SpectralSupport::SpectralSupport(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.freq < b.freq; });
  // merge runs of frequencies within the wrap tolerance, then the seam pair
  // (last vs first) which is adjacent on the torus
  std::vector<Entry> merged;
  for (const Entry& e : entries) {
    if (!merged.empty() && wrap_distance(merged.back().freq, e.freq) <= kMergeTolerance) {
      merged.back().amp += e.amp;
    } else {
      merged.push_back(e);
    }
  }
  if (merged.size() >= 2 &&
      wrap_distance(merged.front().freq, merged.back().freq) <= kMergeTolerance) {
    merged.front().amp += merged.back().amp;
    merged.pop_back();
  }
  for (const Entry& e : merged) {
    if (std::abs(e.amp) > 0.0) entries_.push_back(e);
  }
}

ComplexSignal::ComplexSignal(Vec samples) : samples_(std::move(samples)) {
  for (Eigen::Index j = 0; j < samples_.size(); ++j) {
    if (!std::isfinite(samples_[j].real()) || !std::isfinite(samples_[j].imag()))
      throw std::invalid_argument("ComplexSignal: non-finite sample");
  }
}

ComplexSignal atom_full(Frequency f, double phi, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("atom_full: dimension must be positive");
  Vec a(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    // reduce f*j mod 1 before scaling by 2*pi to keep the argument small
    const double frac = std::fmod(f.value() * static_cast<double>(j), 1.0);
    a[j] = std::polar(1.0, kTwoPi * frac + phi);
  }
  return ComplexSignal(std::move(a));
}

ComplexSignal atom_partial(Frequency f, double phi, const SamplingOperator& M) {
  const ComplexSignal a = atom_full(f, phi, M.cols());
  return ComplexSignal(M.matrix() * a.vec());
}

ComplexSignal synthesize_signal(const SpectralSupport& support, Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("synthesize_signal: dimension must be positive");
  Vec x = Vec::Zero(n);
  for (const auto& e : support.entries()) {
    x += e.amp * atom_full(e.freq, 0.0, n).vec();
  }
  return ComplexSignal(std::move(x));
}

double min_separation(const SpectralSupport& support) {
  const auto& es = support.entries();
  if (es.size() < 2) return 1.0;
  double best = 1.0;
  for (std::size_t k = 0; k + 1 < es.size(); ++k)
    best = std::min(best, wrap_distance(es[k].freq, es[k + 1].freq));
  best = std::min(best, wrap_distance(es.front().freq, es.back().freq));
  return best;
}

}  // namespace spectral
