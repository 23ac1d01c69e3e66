#ifndef NETTAG_NETWORK_HPP
#define NETTAG_NETWORK_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace nettag {

struct NetworkShape {
  size_t input_size = 0;
  size_t hidden_size = 0;  // 0 = no hidden layer
  size_t output_size = 0;
};

// Row-major matrix; row i holds the outgoing weights of input unit i.
// The last row is the bias row (weights from a constant-1 unit).
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double& at(size_t r, size_t c) { return data[r * cols + c]; }
  double at(size_t r, size_t c) const { return data[r * cols + c]; }
};

struct TrainingHyperparams {
  double learning_rate = 0.1;
  double momentum = 0.9;
  double error_threshold = 0.1;
  uint64_t seed = 1;
};

struct ForwardResult {
  std::vector<double> output;
  std::vector<double> hidden;  // empty when there is no hidden layer
};

// Logistic-activation MLP with zero or one hidden layer. Biases live in
// the extra row of each weight matrix.
class Network {
 public:
  Network() = default;

  // Weights drawn uniformly from [-init_range, init_range] with a
  // deterministic generator; identical arguments give identical networks
  // on any platform.
  static Network init(const NetworkShape& shape, uint64_t seed,
                      double init_range = 0.1);

  const NetworkShape& shape() const { return shape_; }
  bool has_hidden_layer() const { return shape_.hidden_size > 0; }

  // first weight matrix: (input+1) x (hidden or output)
  // second weight matrix (hidden layers only): (hidden+1) x output
  const Matrix& weights(size_t layer) const { return weights_[layer]; }
  Matrix& weights(size_t layer) { return weights_[layer]; }
  size_t layer_count() const { return weights_.size(); }

  ForwardResult forward(std::span<const double> input) const;

  // One stochastic gradient step with momentum. hidden_deltas is ignored
  // when there is no hidden layer. Throws NumericError on non-finite
  // values so training aborts instead of corrupting weights.
  void update(std::span<const double> input, std::span<const double> hidden,
              std::span<const double> out_deltas,
              std::span<const double> hidden_deltas,
              const TrainingHyperparams& hp);

  // `netmodel 1` text format; momentum state is not serialized.
  void save(std::ostream& out) const;
  static Network load(std::istream& in);

  bool operator==(const Network& other) const;

 private:
  NetworkShape shape_;
  std::vector<Matrix> weights_;
  std::vector<Matrix> momentum_;
};

// delta_j = a_j (1 - a_j) (t_j - a_j), zeroed when |t_j - a_j| is below
// the error threshold.
std::vector<double> output_deltas(std::span<const double> target,
                                  std::span<const double> output,
                                  double error_threshold);

// delta_j = a_j (1 - a_j) sum_k delta_k w_jk; the bias row of the
// hidden-to-output matrix takes no part in the sum.
std::vector<double> hidden_deltas(std::span<const double> hidden_activations,
                                  std::span<const double> out_deltas,
                                  const Matrix& hidden_to_output);

double logistic(double x);

}  // namespace nettag

#endif
