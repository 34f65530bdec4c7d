#pragma once

#include "scpast/linalg.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace scpast::wavelet {

enum class Family { haar, symmlet8 };

Family parse_family(std::string_view name);
std::string_view family_name(Family family);

/// Orthonormal two-channel filter bank plus a decomposition depth.
class WaveletFilter {
 public:
  WaveletFilter(Family family, int levels);

  Family family() const noexcept { return family_; }
  int levels() const noexcept { return levels_; }
  const std::vector<double>& lowpass() const noexcept { return lowpass_; }
  /// g_k = (-1)^k h_{L-1-k}.
  const std::vector<double>& highpass() const noexcept { return highpass_; }

 private:
  Family family_;
  int levels_;
  std::vector<double> lowpass_;
  std::vector<double> highpass_;
};

/// J - 3 for lengths 2^J * m with m odd (at least 1).
int default_levels(Index length);

/// Periodized orthonormal analysis transform. Output layout is coarsest
/// first: [a_L, d_L, d_{L-1}, ..., d_1]. Throws BadLength unless the length
/// is divisible by 2^levels.
Vector dwt(const Vector& x, const WaveletFilter& filter);

/// Exact inverse of dwt.
Vector idwt(const Vector& c, const WaveletFilter& filter);

/// Column-wise transforms of an n x d matrix.
Matrix dwt_columns(const Matrix& x, const WaveletFilter& filter);
Matrix idwt_columns(const Matrix& c, const WaveletFilter& filter);

}  // namespace scpast::wavelet
