#include "leobeam/neural.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace leobeam {

Eigen::MatrixXd he_init(int rows, int cols, Rng& rng) {
    if (rows < 1 || cols < 1)
        throw InputError("he_init: dimensions must be positive");
    double std_dev = std::sqrt(2.0 / static_cast<double>(cols));
    Eigen::MatrixXd m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = std_dev * rng.gaussian();
    return m;
}

QNetwork make_network(const std::vector<int>& layer_sizes, Rng& rng) {
    if (layer_sizes.size() < 2)
        throw InputError("make_network: need at least input and output layers");
    QNetwork net;
    net.layer_sizes = layer_sizes;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
        net.weights.push_back(he_init(layer_sizes[l + 1], layer_sizes[l], rng));
        net.biases.push_back(Eigen::VectorXd::Zero(layer_sizes[l + 1]));
    }
    return net;
}

Eigen::VectorXd forward(const QNetwork& net, const Eigen::VectorXd& input) {
    if (input.size() != net.input_dim())
        throw InputError("forward: input dimension mismatch");
    Eigen::VectorXd h = input;
    const std::size_t n_layers = net.weights.size();
    for (std::size_t l = 0; l < n_layers; ++l) {
        h = net.weights[l] * h + net.biases[l];
        if (l + 1 < n_layers)
            h = h.cwiseMax(0.0);
    }
    return h;
}

Eigen::MatrixXd forward_batch(const QNetwork& net, const Eigen::MatrixXd& inputs,
                              std::vector<Eigen::MatrixXd>* cache) {
    if (inputs.cols() != net.input_dim())
        throw InputError("forward_batch: input dimension mismatch");
    Eigen::MatrixXd h = inputs;
    if (cache) {
        cache->clear();
        cache->push_back(h);
    }
    const std::size_t n_layers = net.weights.size();
    for (std::size_t l = 0; l < n_layers; ++l) {
        h = (h * net.weights[l].transpose()).rowwise() + net.biases[l].transpose();
        if (l + 1 < n_layers) {
            h = h.cwiseMax(0.0);
            if (cache)
                cache->push_back(h);
        }
    }
    return h;
}

double huber(double delta) {
    double a = std::abs(delta);
    return a < 1.0 ? 0.5 * delta * delta : a - 0.5;
}

double huber_derivative(double delta) {
    return std::clamp(delta, -1.0, 1.0);
}

std::pair<Gradients, double> backward(const QNetwork& net, const Eigen::MatrixXd& states,
                                      const std::vector<int>& actions,
                                      const Eigen::VectorXd& targets) {
    const long batch = states.rows();
    if (batch == 0 || static_cast<long>(actions.size()) != batch || targets.size() != batch)
        throw InputError("backward: inconsistent batch shapes");

    std::vector<Eigen::MatrixXd> acts;
    Eigen::MatrixXd q = forward_batch(net, states, &acts); // acts: input + hidden activations

    double loss = 0.0;
    Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(batch, net.output_dim());
    for (long i = 0; i < batch; ++i) {
        int a = actions[i];
        if (a < 0 || a >= net.output_dim())
            throw InputError("backward: action index out of range");
        double delta = q(i, a) - targets(i);
        loss += huber(delta);
        dq(i, a) = huber_derivative(delta) / static_cast<double>(batch);
    }
    loss /= static_cast<double>(batch);

    const std::size_t n_layers = net.weights.size();
    Gradients grads;
    grads.weights.resize(n_layers);
    grads.biases.resize(n_layers);

    Eigen::MatrixXd upstream = dq; // batch x layer_out
    for (std::size_t l = n_layers; l-- > 0;) {
        grads.weights[l] = upstream.transpose() * acts[l];
        grads.biases[l] = upstream.colwise().sum().transpose();
        if (l > 0) {
            upstream = upstream * net.weights[l];
            // rectifier mask of the activation that fed layer l
            upstream = ((acts[l].array() > 0.0).cast<double>() * upstream.array()).matrix();
        }
    }
    return {std::move(grads), loss};
}

double gradient_global_norm(const Gradients& g) {
    double sq = 0.0;
    for (const auto& w : g.weights)
        sq += w.squaredNorm();
    for (const auto& b : g.biases)
        sq += b.squaredNorm();
    return std::sqrt(sq);
}

void clip_global_norm(Gradients& g, double max_norm) {
    double norm = gradient_global_norm(g);
    if (norm <= max_norm || norm == 0.0)
        return;
    double scale = max_norm / norm;
    for (auto& w : g.weights)
        w *= scale;
    for (auto& b : g.biases)
        b *= scale;
}

AdamState make_adam(const QNetwork& net, double lr) {
    AdamState s;
    s.lr = lr;
    for (const auto& w : net.weights) {
        s.m_w.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
        s.v_w.push_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    }
    for (const auto& b : net.biases) {
        s.m_b.push_back(Eigen::VectorXd::Zero(b.size()));
        s.v_b.push_back(Eigen::VectorXd::Zero(b.size()));
    }
    return s;
}

void adam_step(QNetwork& net, const Gradients& g, AdamState& adam) {
    if (g.weights.size() != net.weights.size() || g.biases.size() != net.biases.size())
        throw InputError("adam_step: gradient/parameter shape mismatch");
    adam.step += 1;
    const double bc1 = 1.0 - std::pow(adam.beta1, static_cast<double>(adam.step));
    const double bc2 = 1.0 - std::pow(adam.beta2, static_cast<double>(adam.step));
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        adam.m_w[l] = adam.beta1 * adam.m_w[l] + (1.0 - adam.beta1) * g.weights[l];
        adam.v_w[l] = adam.beta2 * adam.v_w[l] +
                      (1.0 - adam.beta2) * g.weights[l].array().square().matrix();
        Eigen::ArrayXXd mhat = adam.m_w[l].array() / bc1;
        Eigen::ArrayXXd vhat = adam.v_w[l].array() / bc2;
        net.weights[l].array() -= adam.lr * mhat / (vhat.sqrt() + adam.eps);

        adam.m_b[l] = adam.beta1 * adam.m_b[l] + (1.0 - adam.beta1) * g.biases[l];
        adam.v_b[l] = adam.beta2 * adam.v_b[l] +
                      (1.0 - adam.beta2) * g.biases[l].array().square().matrix();
        Eigen::ArrayXd mbh = adam.m_b[l].array() / bc1;
        Eigen::ArrayXd vbh = adam.v_b[l].array() / bc2;
        net.biases[l].array() -= adam.lr * mbh / (vbh.sqrt() + adam.eps);
    }
}

namespace {

constexpr char kMagic[4] = {'L', 'B', 'Q', 'N'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

} // namespace

void save_checkpoint(const QNetwork& net, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw Error("save_checkpoint: cannot open " + path);
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(net.layer_sizes.size()));
    for (int s : net.layer_sizes)
        write_u32(os, static_cast<std::uint32_t>(s));
    for (std::size_t l = 0; l < net.weights.size(); ++l) {
        const auto& w = net.weights[l];
        for (int r = 0; r < w.rows(); ++r)
            for (int c = 0; c < w.cols(); ++c) {
                double v = w(r, c);
                os.write(reinterpret_cast<const char*>(&v), sizeof(v));
            }
        const auto& b = net.biases[l];
        os.write(reinterpret_cast<const char*>(b.data()),
                 static_cast<std::streamsize>(sizeof(double) * b.size()));
    }
    if (!os)
        throw Error("save_checkpoint: write failed for " + path);
}

QNetwork load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw Error("load_checkpoint: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw Error("load_checkpoint: bad magic in " + path);
    std::uint32_t version = read_u32(is);
    if (version != kVersion)
        throw Error("load_checkpoint: unsupported version in " + path);
    std::uint32_t n_sizes = read_u32(is);
    if (!is || n_sizes < 2 || n_sizes > 64)
        throw Error("load_checkpoint: corrupt layer header in " + path);
    QNetwork net;
    for (std::uint32_t i = 0; i < n_sizes; ++i)
        net.layer_sizes.push_back(static_cast<int>(read_u32(is)));
    for (std::size_t l = 0; l + 1 < net.layer_sizes.size(); ++l) {
        int rows = net.layer_sizes[l + 1];
        int cols = net.layer_sizes[l];
        Eigen::MatrixXd w(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) {
                double v = 0;
                is.read(reinterpret_cast<char*>(&v), sizeof(v));
                w(r, c) = v;
            }
        Eigen::VectorXd b(rows);
        is.read(reinterpret_cast<char*>(b.data()),
                static_cast<std::streamsize>(sizeof(double) * rows));
        net.weights.push_back(std::move(w));
        net.biases.push_back(std::move(b));
    }
    if (!is)
        throw Error("load_checkpoint: truncated file " + path);
    return net;
}

} // namespace leobeam
