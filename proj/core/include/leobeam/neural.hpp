#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "leobeam/errors.hpp"
#include "leobeam/rng.hpp"

namespace leobeam {

/// Dense MLP with rectifier hidden layers and identity output, stored as
/// per-layer (out x in) weight matrices and bias vectors. All math is double.
struct QNetwork {
    std::vector<int> layer_sizes;          ///< e.g. {F, 128, 128, |A|}
    std::vector<Eigen::MatrixXd> weights;  ///< layer_sizes.size() - 1 entries
    std::vector<Eigen::VectorXd> biases;

    int input_dim() const { return layer_sizes.front(); }
    int output_dim() const { return layer_sizes.back(); }
};

/// He-initialized (rows x cols) matrix: entries ~ N(0, 2 / fan_in) with
/// fan_in = cols. Consumes rows*cols gaussian draws in row-major order.
Eigen::MatrixXd he_init(int rows, int cols, Rng& rng);

/// Builds a network with He-initialized weights and zero biases.
QNetwork make_network(const std::vector<int>& layer_sizes, Rng& rng);

/// Single-sample forward pass.
Eigen::VectorXd forward(const QNetwork& net, const Eigen::VectorXd& input);

/// Batch forward (rows = samples). If cache is non-null the layer
/// activations are stored for a following backward pass; cache->front() is
/// the input batch.
Eigen::MatrixXd forward_batch(const QNetwork& net, const Eigen::MatrixXd& inputs,
                              std::vector<Eigen::MatrixXd>* cache = nullptr);

/// Unit Huber loss and its derivative (clamp(delta, -1, 1)).
double huber(double delta);
double huber_derivative(double delta);

struct Gradients {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;
};

/// Gradients of the mean Huber loss over the batch, with the loss applied
/// only at each sample's taken-action output. Returns (gradients, mean loss).
std::pair<Gradients, double> backward(const QNetwork& net, const Eigen::MatrixXd& states,
                                      const std::vector<int>& actions,
                                      const Eigen::VectorXd& targets);

double gradient_global_norm(const Gradients& g);

/// Scales all gradients by max_norm/norm when the global L2 norm exceeds
/// max_norm; otherwise leaves them unchanged.
void clip_global_norm(Gradients& g, double max_norm = 5.0);

struct AdamState {
    std::vector<Eigen::MatrixXd> m_w, v_w;
    std::vector<Eigen::VectorXd> m_b, v_b;
    long step = 0;
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

AdamState make_adam(const QNetwork& net, double lr = 1e-3);

/// Standard bias-corrected Adam update in place.
void adam_step(QNetwork& net, const Gradients& g, AdamState& adam);

/// Versioned binary checkpoint: magic "LBQN", format version, layer sizes,
/// then row-major weight and bias payloads per layer (little-endian f64).
void save_checkpoint(const QNetwork& net, const std::string& path);
QNetwork load_checkpoint(const std::string& path);

} // namespace leobeam
