#include "scpast/wavelet.hpp"

#include "scpast/errors.hpp"

#include <array>
#include <cmath>

namespace scpast::wavelet {

namespace {

// Symlet with 8 vanishing moments (16 taps), standard published table.
constexpr std::array<double, 16> kSymmlet8 = {
    -0.0033824159510061256, -0.0005421323317911481, 0.03169508781149298,
    0.007607487324917605,   -0.1432942383508097,    -0.061273359067658524,
    0.4813596512583722,     0.7771857517005235,     0.3644418948353314,
    -0.05194583810770904,   -0.027219029917056003,  0.049137179673607506,
    0.003808752013890615,   -0.01495225833704823,   -0.0003029205147213668,
    0.0018899503327594609};

void require_length(Index length, int levels) {
  const Index block = Index{1} << levels;
  if (length < block || length % block != 0) {
    throw BadLength("signal length " + std::to_string(length) + " is not a multiple of 2^" +
                    std::to_string(levels));
  }
}

// One analysis level on x[0, m): approximation into lo, detail into hi.
void analyze(const double* x, Index m, const std::vector<double>& h, const std::vector<double>& g,
             double* lo, double* hi) {
  const Index half = m / 2;
  const auto taps = static_cast<Index>(h.size());
  for (Index i = 0; i < half; ++i) {
    double a = 0.0;
    double d = 0.0;
    for (Index k = 0; k < taps; ++k) {
      const double xv = x[(2 * i + k) % m];
      a += h[k] * xv;
      d += g[k] * xv;
    }
    lo[i] = a;
    hi[i] = d;
  }
}

// Transpose of analyze: accumulates the length-m signal from lo/hi.
void synthesize(const double* lo, const double* hi, Index m, const std::vector<double>& h,
                const std::vector<double>& g, double* x) {
  const Index half = m / 2;
  const auto taps = static_cast<Index>(h.size());
  for (Index j = 0; j < m; ++j) {
    x[j] = 0.0;
  }
  for (Index i = 0; i < half; ++i) {
    for (Index k = 0; k < taps; ++k) {
      x[(2 * i + k) % m] += h[k] * lo[i] + g[k] * hi[i];
    }
  }
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "haar") {
    return Family::haar;
  }
  if (name == "symmlet8") {
    return Family::symmlet8;
  }
  throw ConfigError("unknown wavelet family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
  return family == Family::haar ? "haar" : "symmlet8";
}

WaveletFilter::WaveletFilter(Family family, int levels) : family_(family), levels_(levels) {
  if (levels < 1) {
    throw BadLength("wavelet decomposition needs at least one level");
  }
  if (family == Family::haar) {
    const double c = 1.0 / std::sqrt(2.0);
    lowpass_ = {c, c};
  } else {
    lowpass_.assign(kSymmlet8.begin(), kSymmlet8.end());
  }
  const std::size_t len = lowpass_.size();
  highpass_.resize(len);
  for (std::size_t k = 0; k < len; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    highpass_[k] = sign * lowpass_[len - 1 - k];
  }
}

int default_levels(Index length) {
  int j = 0;
  while (length > 0 && length % 2 == 0) {
    length /= 2;
    ++j;
  }
  return std::max(1, j - 3);
}

Vector dwt(const Vector& x, const WaveletFilter& filter) {
  require_length(x.size(), filter.levels());
  Vector out = x;
  Vector work(x.size());
  Index m = x.size();
  for (int level = 0; level < filter.levels(); ++level) {
    analyze(out.data(), m, filter.lowpass(), filter.highpass(), work.data(), work.data() + m / 2);
    out.head(m) = work.head(m);
    m /= 2;
  }
  return out;
}

Vector idwt(const Vector& c, const WaveletFilter& filter) {
  require_length(c.size(), filter.levels());
  Vector out = c;
  Vector work(c.size());
  Index m = c.size() >> filter.levels();
  for (int level = 0; level < filter.levels(); ++level) {
    m *= 2;
    synthesize(out.data(), out.data() + m / 2, m, filter.lowpass(), filter.highpass(), work.data());
    out.head(m) = work.head(m);
  }
  return out;
}

Matrix dwt_columns(const Matrix& x, const WaveletFilter& filter) {
  Matrix out(x.rows(), x.cols());
  for (Index j = 0; j < x.cols(); ++j) {
    out.col(j) = dwt(x.col(j), filter);
  }
  return out;
}

Matrix idwt_columns(const Matrix& c, const WaveletFilter& filter) {
  Matrix out(c.rows(), c.cols());
  for (Index j = 0; j < c.cols(); ++j) {
    out.col(j) = idwt(c.col(j), filter);
  }
  return out;
}

}  // namespace scpast::wavelet
