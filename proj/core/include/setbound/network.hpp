#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "setbound/activation.hpp"

namespace setbound {

/// Dense layer y = act(W x + b).
struct Layer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;     // out
  Activation activation = Activation::linear;

  std::size_t in_dim() const { return static_cast<std::size_t>(weights.cols()); }
  std::size_t out_dim() const { return static_cast<std::size_t>(weights.rows()); }
};

/// Thrown for malformed or inconsistent model documents.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Immutable feedforward network of dense layers with differentiable
/// activations.
class Network {
 public:
  /// Validates shapes, chaining and finiteness; throws ModelError.
  explicit Network(std::vector<Layer> layers);

  std::span<const Layer> layers() const { return layers_; }
  std::size_t input_dim() const { return layers_.front().in_dim(); }
  std::size_t output_dim() const { return layers_.back().out_dim(); }
  bool is_square() const { return input_dim() == output_dim(); }

 private:
  std::vector<Layer> layers_;
};

/// Parses the model JSON document
/// `{"layers":[{"weights":[[...],...],"bias":[...],"activation":"tanh"}]}`.
Network load_network(std::string_view json_text);
Network load_network_file(const std::filesystem::path& path);

/// Serialises with round-trip-exact doubles.
std::string save_network(const Network& net);
void save_network_file(const Network& net, const std::filesystem::path& path);

/// Throws std::invalid_argument if x.size() != input_dim.
Eigen::VectorXd forward_point(const Network& net, const Eigen::VectorXd& x);
Eigen::VectorXd forward_point(const Network& net, std::span<const double> x);

/// Chain-rule Jacobian dN/dx at x (output_dim x input_dim).
Eigen::MatrixXd point_jacobian(const Network& net, const Eigen::VectorXd& x);

/// Deterministic network with weights and biases uniform in [-scale, scale].
/// `dims` lists layer widths from input to output; hidden layers use
/// `hidden`, the last layer uses `output`.
Network generate_network(std::uint64_t seed, std::span<const std::size_t> dims, Activation hidden,
                         double scale = 1.0, Activation output = Activation::linear);

}  // namespace setbound
