#include "nettag/network.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "nettag/error.hpp"
#include "nettag/text.hpp"

namespace nettag {

double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

namespace {

void check_shape(const NetworkShape& shape) {
  if (shape.input_size == 0 || shape.output_size == 0)
    throw ArgumentError("network needs input_size > 0 and output_size > 0");
}

// uniform_real_distribution is implementation-defined; scale raw 53-bit
// draws directly so that seeded init is bit-identical across platforms.
double uniform_signed(std::mt19937_64& rng, double range) {
  double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
  return (2.0 * u - 1.0) * range;
}

std::vector<double> layer_forward(std::span<const double> input,
                                  const Matrix& w) {
  std::vector<double> out(w.cols);
  for (size_t j = 0; j < w.cols; ++j) {
    double net = w.at(w.rows - 1, j);  // bias
    for (size_t i = 0; i < input.size(); ++i) net += input[i] * w.at(i, j);
    out[j] = logistic(net);
  }
  return out;
}

void layer_update(Matrix& w, Matrix& mom, std::span<const double> input,
                  std::span<const double> deltas,
                  const TrainingHyperparams& hp) {
  for (size_t i = 0; i < w.rows; ++i) {
    double a = i + 1 == w.rows ? 1.0 : input[i];
    for (size_t j = 0; j < w.cols; ++j) {
      double dw = hp.learning_rate * a * deltas[j] + hp.momentum * mom.at(i, j);
      if (!std::isfinite(dw))
        throw NumericError("non-finite weight update; training aborted");
      mom.at(i, j) = dw;
      w.at(i, j) += dw;
    }
  }
}

}  // namespace

Network Network::init(const NetworkShape& shape, uint64_t seed,
                      double init_range) {
  check_shape(shape);
  Network net;
  net.shape_ = shape;
  if (shape.hidden_size > 0) {
    net.weights_.emplace_back(shape.input_size + 1, shape.hidden_size);
    net.weights_.emplace_back(shape.hidden_size + 1, shape.output_size);
  } else {
    net.weights_.emplace_back(shape.input_size + 1, shape.output_size);
  }
  std::mt19937_64 rng(seed);
  for (Matrix& w : net.weights_) {
    for (double& v : w.data) v = uniform_signed(rng, init_range);
    net.momentum_.emplace_back(w.rows, w.cols);
  }
  return net;
}

ForwardResult Network::forward(std::span<const double> input) const {
  if (input.size() != shape_.input_size)
    throw ArgumentError("forward: input size mismatch");
  ForwardResult result;
  if (has_hidden_layer()) {
    result.hidden = layer_forward(input, weights_[0]);
    result.output = layer_forward(result.hidden, weights_[1]);
  } else {
    result.output = layer_forward(input, weights_[0]);
  }
  return result;
}

void Network::update(std::span<const double> input,
                     std::span<const double> hidden,
                     std::span<const double> out_deltas,
                     std::span<const double> hid_deltas,
                     const TrainingHyperparams& hp) {
  if (has_hidden_layer()) {
    layer_update(weights_[1], momentum_[1], hidden, out_deltas, hp);
    layer_update(weights_[0], momentum_[0], input, hid_deltas, hp);
  } else {
    layer_update(weights_[0], momentum_[0], input, out_deltas, hp);
  }
}

std::vector<double> output_deltas(std::span<const double> target,
                                  std::span<const double> output,
                                  double error_threshold) {
  if (target.size() != output.size())
    throw ArgumentError("output_deltas: length mismatch");
  std::vector<double> deltas(output.size());
  for (size_t j = 0; j < output.size(); ++j) {
    double err = target[j] - output[j];
    deltas[j] = std::fabs(err) < error_threshold
                    ? 0.0
                    : output[j] * (1.0 - output[j]) * err;
  }
  return deltas;
}

std::vector<double> hidden_deltas(std::span<const double> hidden_activations,
                                  std::span<const double> out_deltas,
                                  const Matrix& hidden_to_output) {
  if (hidden_activations.size() + 1 != hidden_to_output.rows ||
      out_deltas.size() != hidden_to_output.cols)
    throw ArgumentError("hidden_deltas: dimension mismatch");
  std::vector<double> deltas(hidden_activations.size());
  for (size_t j = 0; j < deltas.size(); ++j) {
    double sum = 0.0;
    for (size_t k = 0; k < out_deltas.size(); ++k)
      sum += out_deltas[k] * hidden_to_output.at(j, k);
    double a = hidden_activations[j];
    deltas[j] = a * (1.0 - a) * sum;
  }
  return deltas;
}

namespace {
constexpr int kModelDigits = 17;
}

void Network::save(std::ostream& out) const {
  out << "netmodel 1\n";
  out << shape_.input_size << ' ' << shape_.hidden_size << ' '
      << shape_.output_size << '\n';
  for (const Matrix& w : weights_) {
    for (size_t i = 0; i < w.rows; ++i) {
      for (size_t j = 0; j < w.cols; ++j) {
        if (j) out << ' ';
        out << format_real(w.at(i, j), kModelDigits);
      }
      out << '\n';
    }
  }
}

Network Network::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "netmodel 1")
    throw FormatError("unknown model file version (expected 'netmodel 1')");
  NetworkShape shape;
  if (!(in >> shape.input_size >> shape.hidden_size >> shape.output_size))
    throw ParseError("model file: bad shape line");
  check_shape(shape);
  Network net;
  net.shape_ = shape;
  if (shape.hidden_size > 0) {
    net.weights_.emplace_back(shape.input_size + 1, shape.hidden_size);
    net.weights_.emplace_back(shape.hidden_size + 1, shape.output_size);
  } else {
    net.weights_.emplace_back(shape.input_size + 1, shape.output_size);
  }
  for (Matrix& w : net.weights_) {
    for (double& v : w.data)
      if (!(in >> v)) throw ParseError("model file: truncated weight matrix");
    net.momentum_.emplace_back(w.rows, w.cols);
  }
  return net;
}

bool Network::operator==(const Network& other) const {
  if (shape_.input_size != other.shape_.input_size ||
      shape_.hidden_size != other.shape_.hidden_size ||
      shape_.output_size != other.shape_.output_size)
    return false;
  for (size_t l = 0; l < weights_.size(); ++l)
    if (weights_[l].data != other.weights_[l].data) return false;
  return true;
}

}  // namespace nettag
