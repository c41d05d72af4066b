#pragma once

// Batch forward/backward passes shared by evaluation and the training loop.

#include "smad/mlp.hpp"

#include <vector>

namespace smad::detail {

/// Buffers reused across epochs so the training loop does not allocate.
struct Workspace {
    std::vector<std::vector<double>> activations;  ///< per layer, n x out (last = logits)
    std::vector<std::vector<double>> deltas;       ///< per layer, n x out
    std::vector<std::vector<double>> transposed;   ///< per layer, out x in
    std::vector<double> dlogit;
    std::size_t rows = 0;

    void prepare(const Network& net, std::size_t n);
};

/// Fills ws.activations; returns a pointer to the n logits.
const double* forward_pass(const Network& net, const double* x, std::size_t n, Workspace& ws);

/// Back-propagates ws.dlogit (set by the caller) into `grad`, which must already
/// have the network's shapes. Requires a preceding forward_pass on the same x.
void backward_pass(const Network& net, const double* x, std::size_t n, Workspace& ws, NetworkGradient& grad);

/// Adds lambda * W / ||W|| to each weight gradient and returns lambda * sum ||W||.
double add_l2(const Network& net, double lambda, NetworkGradient& grad);

NetworkGradient zero_gradient(const Network& net);

} // namespace smad::detail
