#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace smdo_tune {

// Rational discrete-time block in ascending powers of z^-1:
//
//   H(z) = (b[0] + b[1] z^-1 + ... + b[m] z^-m) /
//          (a[0] + a[1] z^-1 + ... + a[n] z^-n)
//
// realizing, once the denominator is normalized to a[0] = 1,
//
//   y[k] = sum_j b[j] u[k-j] - sum_{j>=1} a[j] y[k-j]
//
// with zero initial conditions. A block with b[0] == 0 delays its input
// by at least one sample; only such blocks may sit inside a feedback
// loop, otherwise the loop closes an algebraic cycle within one step.
struct DiscreteTransferFunction {
  std::vector<double> num;    // b coefficients
  std::vector<double> den;    // a coefficients
  double sample_time = 1.0;   // seconds

  // True when the (normalized) direct feedthrough b[0] vanishes.
  bool strictly_proper() const;

  friend bool operator==(const DiscreteTransferFunction&,
                         const DiscreteTransferFunction&) = default;
};

// Equivalent monic form, every coefficient divided by a[0].
// Throws ValidationError when a[0] == 0 or the denominator is empty.
DiscreteTransferFunction normalize_tf(const DiscreteTransferFunction& tf);

// Zero-state response to the given input sequence; output length equals
// input length. Throws on non-finite input samples.
std::vector<double> open_loop_response(const DiscreteTransferFunction& tf,
                                       std::span<const double> input);

// Per-channel simulation memory for step-by-step use inside a loop.
class TfChannel {
 public:
  explicit TfChannel(const DiscreteTransferFunction& tf);

  // Contribution of past samples to the current output. For a strictly
  // proper channel this already is the full output of the step.
  double peek() const;

  // Applies input u for the current step, returns the step's output and
  // shifts the memory forward one sample.
  double push(double u);

  const DiscreteTransferFunction& tf() const { return tf_; }

 private:
  DiscreteTransferFunction tf_;   // normalized
  std::vector<double> u_past_;    // u_past_[j] = u[k-1-j]
  std::vector<double> y_past_;    // y_past_[j] = y[k-1-j]
};

// Square grid of transfer functions, dim 1 or 2. Entry (i, j) maps
// input j to output i; output i is the sum over its row (superposition).
struct MimoPlant {
  std::size_t dim = 0;
  std::vector<DiscreteTransferFunction> channels;  // row-major, dim*dim

  const DiscreteTransferFunction& at(std::size_t i, std::size_t j) const;
  double sample_time() const;

  friend bool operator==(const MimoPlant&, const MimoPlant&) = default;
};

MimoPlant siso_plant(DiscreteTransferFunction tf);

// Shared sample time, normalizable denominators; with in_loop set every
// channel must be strictly proper.
void validate_plant(const MimoPlant& plant, bool in_loop);

}  // namespace smdo_tune
