#ifndef SPECTRAL_ATOMS_HPP
#define SPECTRAL_ATOMS_HPP

#include "spectral/types.hpp"

namespace spectral {

class SamplingOperator;

/// Full atom a(f, phi) in C^n: entry j is e^{i(2*pi*f*j + phi)}.
/// Its Euclidean norm is exactly sqrt(n).
ComplexSignal atom_full(Frequency f, double phi, Eigen::Index n);

/// Compressed atom b(f, phi) = M * a(f, phi), length m.
ComplexSignal atom_partial(Frequency f, double phi, const SamplingOperator& M);

/// x_j = sum_k c_k e^{i 2 pi f_k j}, j = 0..n-1. Empty support gives zeros.
ComplexSignal synthesize_signal(const SpectralSupport& support, Eigen::Index n);

/// Minimum pairwise wrap-around distance of the support frequencies.
/// Supports with fewer than two entries return 1, the torus diameter sentinel.
double min_separation(const SpectralSupport& support);

}  // namespace spectral

#endif  // SPECTRAL_ATOMS_HPP
