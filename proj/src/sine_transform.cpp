#include "zak/sine_transform.hpp"

#include <unsupported/Eigen/FFT>
#include <unordered_map>

#include "zak/errors.hpp"

namespace zak {

struct SineTransform::Impl {
  mutable Eigen::FFT<double> fft;
  mutable Eigen::VectorXd padded;     // odd extension, length 2M
  mutable Eigen::VectorXcd spectrum;  // full complex spectrum, length 2M
};

SineTransform::SineTransform(int cells) : cells_(cells), impl_(new Impl) {
  require(cells >= 4, "SineTransform: requires M >= 4");
  impl_->padded.setZero(2 * cells_);
  impl_->spectrum.setZero(2 * cells_);
}

SineTransform::~SineTransform() = default;
SineTransform::SineTransform(SineTransform&&) noexcept = default;
SineTransform& SineTransform::operator=(SineTransform&&) noexcept = default;

Eigen::VectorXd SineTransform::sine_sum(const Eigen::VectorXd& interior) const {
  const int m = cells_;
  require(interior.size() == m - 1, "SineTransform: wrong interior length");
  Eigen::VectorXd& y = impl_->padded;
  y(0) = 0.0;
  y(m) = 0.0;
  y.segment(1, m - 1) = interior;
  y.segment(m + 1, m - 1) = -interior.reverse();
  // For odd y, Y_k = -2i sum_{n=1}^{M-1} y_n sin(pi k n / M).
  impl_->fft.fwd(impl_->spectrum, y);
  return (-0.5) * impl_->spectrum.segment(1, m - 1).imag();
}

Eigen::VectorXd SineTransform::forward(const Eigen::VectorXd& interior) const {
  return (2.0 / cells_) * sine_sum(interior);
}

Eigen::VectorXd SineTransform::inverse(const Eigen::VectorXd& coeffs) const {
  return sine_sum(coeffs);
}

Eigen::VectorXcd SineTransform::forward(const Eigen::VectorXcd& interior) const {
  Eigen::VectorXcd out(interior.size());
  out.real() = forward(Eigen::VectorXd(interior.real()));
  out.imag() = forward(Eigen::VectorXd(interior.imag()));
  return out;
}

Eigen::VectorXcd SineTransform::inverse(const Eigen::VectorXcd& coeffs) const {
  Eigen::VectorXcd out(coeffs.size());
  out.real() = inverse(Eigen::VectorXd(coeffs.real()));
  out.imag() = inverse(Eigen::VectorXd(coeffs.imag()));
  return out;
}

const SineTransform& shared_sine_transform(int cells) {
  thread_local std::unordered_map<int, std::unique_ptr<SineTransform>> cache;
  auto& slot = cache[cells];
  if (!slot) slot = std::make_unique<SineTransform>(cells);
  return *slot;
}

}  // namespace zak
