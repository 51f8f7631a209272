#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "adarefiner/rng.hpp"

namespace adarefiner::rl {

// 2-hidden-layer tanh MLP with explicit backpropagation. Templated on the
// scalar so training runs in float32 while gradient checks can instantiate
// the identical code at double precision.
template <typename Scalar>
class Mlp {
public:
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    struct Cache {
        Matrix h1;  // post-tanh, rows = batch
        Matrix h2;
    };

    struct Grads {
        Matrix w1, w2, w3;
        Vector b1, b2, b3;

        void resize_like(const Mlp& net) {
            w1.setZero(net.w1.rows(), net.w1.cols());
            w2.setZero(net.w2.rows(), net.w2.cols());
            w3.setZero(net.w3.rows(), net.w3.cols());
            b1.setZero(net.b1.size());
            b2.setZero(net.b2.size());
            b3.setZero(net.b3.size());
        }
    };

    struct AdamState {
        Grads m;
        Grads v;
        std::int64_t t = 0;
    };

    Mlp() = default;

    // Scaled random init (std 1/sqrt(fan_in)); the output layer is further
    // scaled by out_scale (small for actor heads).
    Mlp(int input, int hidden, int output, Rng& rng, double out_scale = 1.0) {
        auto init = [&rng](Matrix& w, int rows, int cols, double scale) {
            w.resize(rows, cols);
            const double std = scale / std::sqrt(static_cast<double>(cols));
            for (int c = 0; c < cols; ++c) {
                for (int r = 0; r < rows; ++r) {
                    w(r, c) = static_cast<Scalar>(rng.normal() * std);
                }
            }
        };
        init(w1, hidden, input, 1.0);
        init(w2, hidden, hidden, 1.0);
        init(w3, output, hidden, out_scale);
        b1.setZero(hidden);
        b2.setZero(hidden);
        b3.setZero(output);
    }

    int input_dim() const { return static_cast<int>(w1.cols()); }
    int output_dim() const { return static_cast<int>(w3.rows()); }
    int hidden_dim() const { return static_cast<int>(w1.rows()); }

    // X has one sample per row; returns batch x output.
    Matrix forward(const Matrix& x, Cache* cache = nullptr) const {
        Matrix h1 = ((x * w1.transpose()).rowwise() + b1.transpose())
                        .array()
                        .tanh()
                        .matrix();
        Matrix h2 = ((h1 * w2.transpose()).rowwise() + b2.transpose())
                        .array()
                        .tanh()
                        .matrix();
        Matrix out = (h2 * w3.transpose()).rowwise() + b3.transpose();
        if (cache != nullptr) {
            cache->h1 = std::move(h1);
            cache->h2 = std::move(h2);
        }
        return out;
    }

    // Accumulates parameter gradients for dL/dout into grads.
    void backward(const Matrix& x, const Cache& cache, const Matrix& dout,
                  Grads& grads) const {
        grads.w3.noalias() += dout.transpose() * cache.h2;
        grads.b3 += dout.colwise().sum().transpose();
        Matrix dh2 = (dout * w3).cwiseProduct(
            (Scalar(1) - cache.h2.array().square()).matrix());
        grads.w2.noalias() += dh2.transpose() * cache.h1;
        grads.b2 += dh2.colwise().sum().transpose();
        Matrix dh1 = (dh2 * w2).cwiseProduct(
            (Scalar(1) - cache.h1.array().square()).matrix());
        grads.w1.noalias() += dh1.transpose() * x;
        grads.b1 += dh1.colwise().sum().transpose();
    }

    void adam_step(const Grads& grads, AdamState& state, double lr, double eps,
                   double beta1 = 0.9, double beta2 = 0.999) {
        if (state.t == 0) {
            state.m.resize_like(*this);
            state.v.resize_like(*this);
        }
        ++state.t;
        const auto lr_s = static_cast<Scalar>(lr);
        const auto eps_s = static_cast<Scalar>(eps);
        const auto b1_s = static_cast<Scalar>(beta1);
        const auto b2_s = static_cast<Scalar>(beta2);
        const auto bc1 = static_cast<Scalar>(
            1.0 - std::pow(beta1, static_cast<double>(state.t)));
        const auto bc2 = static_cast<Scalar>(
            1.0 - std::pow(beta2, static_cast<double>(state.t)));
        auto update = [&](auto& param, const auto& grad, auto& m, auto& v) {
            m = (b1_s * m.array() + (Scalar(1) - b1_s) * grad.array()).matrix();
            v = (b2_s * v.array() +
                 (Scalar(1) - b2_s) * grad.array().square())
                    .matrix();
            param.array() -= lr_s * (m.array() / bc1) /
                             ((v.array() / bc2).sqrt() + eps_s);
        };
        update(w1, grads.w1, state.m.w1, state.v.w1);
        update(w2, grads.w2, state.m.w2, state.v.w2);
        update(w3, grads.w3, state.m.w3, state.v.w3);
        update(b1, grads.b1, state.m.b1, state.v.b1);
        update(b2, grads.b2, state.m.b2, state.v.b2);
        update(b3, grads.b3, state.m.b3, state.v.b3);
    }

    Matrix w1, w2, w3;
    Vector b1, b2, b3;
};

}  // namespace adarefiner::rl
