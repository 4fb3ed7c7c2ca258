#pragma once

#include <cstdint>
#include <vector>

#include "fmq/errors.hpp"

namespace fmq {

// Rates of the M/M/1 queue with catastrophes plus the fractional order.
struct QueueParams {
    double lambda;      // arrival rate
    double mu;          // service rate
    double xi;          // catastrophe rate
    double alpha = 1.0; // fractional order in (0, 1]

    double theta() const { return lambda + mu + xi; }

    void validate() const {
        if (!(lambda > 0)) throw DomainError("lambda must be > 0");
        if (!(mu > 0)) throw DomainError("mu must be > 0");
        if (!(xi >= 0)) throw DomainError("xi must be >= 0");
        if (!(alpha > 0 && alpha <= 1)) throw AlphaOutOfRange(alpha);
    }
};

// A single state-probability query P^alpha_{i,n}(t).
struct TransientQuery {
    int i;     // initial state
    int n;     // target state
    double t;  // time

    void validate() const {
        if (i < 0) throw DomainError("initial state must be >= 0");
        if (n < 0) throw DomainError("target state must be >= 0");
        if (!(t >= 0)) throw DomainError("time must be >= 0");
    }
};

// State-probability vector over 0..N with the unaccounted tail mass.
struct TransientDistribution {
    double t = 0.0;
    int i = 0;
    std::vector<double> probs;
    double tail_mass = 0.0;
};

// Controls for the quadratures in the transient module.
struct QuadratureControl {
    double abs_tol = 1e-8;
    double y_cut_quantile = 1.0 - 1e-9;  // tail cut of the subordinator density
    int grid_nodes = 256;                // convolution grid resolution

    void validate() const {
        if (!(abs_tol > 0)) throw DomainError("QuadratureControl.abs_tol must be > 0");
        if (!(y_cut_quantile > 0 && y_cut_quantile < 1))
            throw DomainError("QuadratureControl.y_cut_quantile must be in (0,1)");
        if (grid_nodes < 8) throw DomainError("QuadratureControl.grid_nodes must be >= 8");
    }
};

}  // namespace fmq
