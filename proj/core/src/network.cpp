#include "setbound/network.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "setbound/random.hpp"

namespace setbound {

using json = nlohmann::json;

namespace {

bool all_finite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

Network::Network(std::vector<Layer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ModelError("network has no layers");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    const std::string where = "layer " + std::to_string(l) + ": ";
    if (layer.weights.rows() == 0 || layer.weights.cols() == 0) {
      throw ModelError(where + "empty weight matrix");
    }
    if (layer.bias.size() != layer.weights.rows()) {
      throw ModelError(where + "bias length " + std::to_string(layer.bias.size()) +
                       " does not match weight rows " + std::to_string(layer.weights.rows()));
    }
    if (!all_finite(layer.weights) || !layer.bias.allFinite()) {
      throw ModelError(where + "non-finite parameter");
    }
    if (l > 0 && layers_[l - 1].out_dim() != layer.in_dim()) {
      throw ModelError(where + "input width " + std::to_string(layer.in_dim()) +
                       " does not match previous output width " +
                       std::to_string(layers_[l - 1].out_dim()));
    }
  }
}

Network load_network(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ModelError(std::string("model JSON parse error: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("layers") || !doc["layers"].is_array()) {
    throw ModelError("model JSON must be an object with a \"layers\" array");
  }
  std::vector<Layer> layers;
  std::size_t index = 0;
  for (const auto& jl : doc["layers"]) {
    const std::string where = "layer " + std::to_string(index++) + ": ";
    if (!jl.is_object()) throw ModelError(where + "must be an object");
    const auto w = jl.find("weights");
    const auto b = jl.find("bias");
    const auto a = jl.find("activation");
    if (w == jl.end() || !w->is_array() || w->empty()) throw ModelError(where + "missing \"weights\"");
    if (b == jl.end() || !b->is_array()) throw ModelError(where + "missing \"bias\"");
    if (a == jl.end() || !a->is_string()) throw ModelError(where + "missing \"activation\"");

    Layer layer;
    try {
      layer.activation = parse_activation(a->get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ModelError(where + e.what());
    }
    const std::size_t rows = w->size();
    if (!(*w)[0].is_array() || (*w)[0].empty()) throw ModelError(where + "weights rows must be arrays");
    const std::size_t cols = (*w)[0].size();
    layer.weights.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      const auto& row = (*w)[r];
      if (!row.is_array() || row.size() != cols) throw ModelError(where + "weights are not rectangular");
      for (std::size_t c = 0; c < cols; ++c) {
        if (!row[c].is_number()) throw ModelError(where + "non-numeric weight");
        layer.weights(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c].get<double>();
      }
    }
    layer.bias.resize(static_cast<Eigen::Index>(b->size()));
    for (std::size_t i = 0; i < b->size(); ++i) {
      if (!(*b)[i].is_number()) throw ModelError(where + "non-numeric bias");
      layer.bias(static_cast<Eigen::Index>(i)) = (*b)[i].get<double>();
    }
    layers.push_back(std::move(layer));
  }
  return Network(std::move(layers));
}

Network load_network_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_network(ss.str());
}

std::string save_network(const Network& net) {
  json layers = json::array();
  for (const Layer& layer : net.layers()) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) row.push_back(layer.weights(r, c));
      rows.push_back(std::move(row));
    }
    json bias = json::array();
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) bias.push_back(layer.bias(i));
    layers.push_back({{"weights", std::move(rows)}, {"bias", std::move(bias)},
                      {"activation", to_string(layer.activation)}});
  }
  return json{{"layers", std::move(layers)}}.dump();
}

void save_network_file(const Network& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write model file " + path.string());
  out << save_network(net) << '\n';
}

Eigen::VectorXd forward_point(const Network& net, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != net.input_dim()) {
    throw std::invalid_argument("forward_point: input has dimension " + std::to_string(x.size()) +
                                ", network expects " + std::to_string(net.input_dim()));
  }
  Eigen::VectorXd y = x;
  for (const Layer& layer : net.layers()) {
    Eigen::VectorXd z = layer.weights * y + layer.bias;
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = activate(layer.activation, z(i));
    y = std::move(z);
  }
  return y;
}

Eigen::VectorXd forward_point(const Network& net, std::span<const double> x) {
  return forward_point(net, Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())).eval());
}

Eigen::MatrixXd point_jacobian(const Network& net, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != net.input_dim()) {
    throw std::invalid_argument("point_jacobian: input has dimension " + std::to_string(x.size()) +
                                ", network expects " + std::to_string(net.input_dim()));
  }
  Eigen::VectorXd y = x;
  Eigen::MatrixXd jac = Eigen::MatrixXd::Identity(x.size(), x.size());
  for (const Layer& layer : net.layers()) {
    Eigen::VectorXd z = layer.weights * y + layer.bias;
    Eigen::MatrixXd next = layer.weights * jac;
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      next.row(i) *= activate_deriv(layer.activation, z(i));
      z(i) = activate(layer.activation, z(i));
    }
    jac = std::move(next);
    y = std::move(z);
  }
  return jac;
}

Network generate_network(std::uint64_t seed, std::span<const std::size_t> dims, Activation hidden,
                         double scale, Activation output) {
  if (dims.size() < 2) throw std::invalid_argument("generate_network: need at least two widths");
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("generate_network: scale must be positive");
  }
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("generate_network: zero layer width");
  }
  std::vector<Layer> layers;
  std::uint64_t counter = 0;
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    Layer layer;
    const auto rows = static_cast<Eigen::Index>(dims[l + 1]);
    const auto cols = static_cast<Eigen::Index>(dims[l]);
    layer.weights.resize(rows, cols);
    layer.bias.resize(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        layer.weights(r, c) = counter_uniform(seed, 0, counter++, -scale, scale);
      }
    }
    for (Eigen::Index r = 0; r < rows; ++r) layer.bias(r) = counter_uniform(seed, 0, counter++, -scale, scale);
    layer.activation = (l + 2 == dims.size()) ? output : hidden;
    layers.push_back(std::move(layer));
  }
  return Network(std::move(layers));
}

}  // namespace setbound
