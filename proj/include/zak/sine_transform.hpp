// Discrete sine transform on the interior nodes of a Dirichlet grid.
//
// Conventions (l, j = 1..M-1):
//   forward:  c_l = (2/M) sum_j f_j sin(l j pi / M)
//   inverse:  f_j = sum_l c_l sin(l j pi / M)
// so forward(inverse(c)) == c. The kernel is evaluated through a real FFT of
// the odd extension (length 2M), which keeps the transform O(M log M) for the
// 2^a 5^b sizes used by the sweeps.
#pragma once

#include <Eigen/Core>
#include <memory>

namespace zak {

class SineTransform {
 public:
  explicit SineTransform(int cells);
  ~SineTransform();
  SineTransform(SineTransform&&) noexcept;
  SineTransform& operator=(SineTransform&&) noexcept;

  int cells() const { return cells_; }

  // Plain sine sum S_k = sum_{n=1}^{M-1} v_n sin(n k pi / M); self-inverse up
  // to the factor M/2.
  Eigen::VectorXd sine_sum(const Eigen::VectorXd& interior) const;

  Eigen::VectorXd forward(const Eigen::VectorXd& interior) const;
  Eigen::VectorXd inverse(const Eigen::VectorXd& coeffs) const;

  // Complex fields transform component-wise (two real kernels each way).
  Eigen::VectorXcd forward(const Eigen::VectorXcd& interior) const;
  Eigen::VectorXcd inverse(const Eigen::VectorXcd& coeffs) const;

 private:
  int cells_;
  struct Impl;                    // hides the FFT backend
  std::unique_ptr<Impl> impl_;
};

// Per-thread transform cache so immutable spectral data (WaveModes) can be
// evaluated concurrently without sharing FFT workspaces across threads.
const SineTransform& shared_sine_transform(int cells);

}  // namespace zak
