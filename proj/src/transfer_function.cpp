#include "smdo_tune/transfer_function.hpp"

#include <cmath>
#include <string>

#include "smdo_tune/errors.hpp"

namespace smdo_tune {

namespace {

void shift_in(std::vector<double>& memory, double newest) {
  if (memory.empty()) return;
  for (std::size_t j = memory.size() - 1; j > 0; --j) memory[j] = memory[j - 1];
  memory[0] = newest;
}

}  // namespace

bool DiscreteTransferFunction::strictly_proper() const {
  return num.empty() || num[0] == 0.0;
}

DiscreteTransferFunction normalize_tf(const DiscreteTransferFunction& tf) {
  if (tf.den.empty())
    throw ValidationError("transfer function denominator is empty");
  if (tf.den[0] == 0.0)
    throw ValidationError("leading denominator coefficient is zero");
  for (double c : tf.num)
    if (!std::isfinite(c)) throw ValidationError("non-finite numerator coefficient");
  for (double c : tf.den)
    if (!std::isfinite(c)) throw ValidationError("non-finite denominator coefficient");
  if (!(tf.sample_time > 0.0))
    throw ValidationError("sample time must be positive");

  DiscreteTransferFunction out = tf;
  const double a0 = tf.den[0];
  for (double& c : out.num) c /= a0;
  for (double& c : out.den) c /= a0;
  out.den[0] = 1.0;
  return out;
}

TfChannel::TfChannel(const DiscreteTransferFunction& tf) : tf_(normalize_tf(tf)) {
  u_past_.assign(tf_.num.empty() ? 0 : tf_.num.size() - 1, 0.0);
  y_past_.assign(tf_.den.size() - 1, 0.0);
}

double TfChannel::peek() const {
  double acc = 0.0;
  for (std::size_t j = 1; j < tf_.num.size(); ++j) acc += tf_.num[j] * u_past_[j - 1];
  for (std::size_t j = 1; j < tf_.den.size(); ++j) acc -= tf_.den[j] * y_past_[j - 1];
  return acc;
}

double TfChannel::push(double u) {
  const double feedthrough = tf_.num.empty() ? 0.0 : tf_.num[0];
  const double y = feedthrough * u + peek();
  shift_in(u_past_, u);
  shift_in(y_past_, y);
  return y;
}

std::vector<double> open_loop_response(const DiscreteTransferFunction& tf,
                                       std::span<const double> input) {
  TfChannel channel(tf);
  std::vector<double> output;
  output.reserve(input.size());
  for (double u : input) {
    if (!std::isfinite(u)) throw ValidationError("non-finite input sample");
    output.push_back(channel.push(u));
  }
  return output;
}

const DiscreteTransferFunction& MimoPlant::at(std::size_t i, std::size_t j) const {
  return channels[i * dim + j];
}

double MimoPlant::sample_time() const {
  return channels.empty() ? 0.0 : channels.front().sample_time;
}

MimoPlant siso_plant(DiscreteTransferFunction tf) {
  MimoPlant plant;
  plant.dim = 1;
  plant.channels.push_back(std::move(tf));
  return plant;
}

void validate_plant(const MimoPlant& plant, bool in_loop) {
  if (plant.dim != 1 && plant.dim != 2)
    throw ValidationError("plant dimension must be 1 or 2");
  if (plant.channels.size() != plant.dim * plant.dim)
    throw ValidationError("plant channel count does not match its dimension");
  const double dt = plant.channels.front().sample_time;
  for (std::size_t i = 0; i < plant.dim; ++i) {
    for (std::size_t j = 0; j < plant.dim; ++j) {
      const DiscreteTransferFunction& tf = plant.at(i, j);
      const std::string where =
          "plant channel (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (tf.sample_time != dt)
        throw ValidationError(where + ": sample time differs across blocks");
      DiscreteTransferFunction normalized;
      try {
        normalized = normalize_tf(tf);
      } catch (const ValidationError& err) {
        throw ValidationError(where + ": " + err.what());
      }
      if (in_loop && !normalized.strictly_proper())
        throw ValidationError(where +
                              ": algebraic loop risk: plant must be strictly proper");
    }
  }
}

}  // namespace smdo_tune
