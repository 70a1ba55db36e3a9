#pragma once

// Shared helpers for the test suites: random trajectories, random OGB models
// drawn from the built-in basis registry, and small independent oracles.

#include <random>
#include <vector>

#include "ogbm/ogb.hpp"
#include "ogbm/signal.hpp"

namespace ogbm::testing {

inline Trajectory random_trajectory(Eigen::Index q, Eigen::Index T, std::mt19937_64& rng, double low = -1.0,
                                    double high = 1.0, const std::string& prefix = "ch") {
    Eigen::MatrixXd m(q, T);
    for (Eigen::Index i = 0; i < q; ++i) {
        for (Eigen::Index t = 0; t < T; ++t) m(i, t) = detail::uniform_open(rng, low, high);
    }
    return make_trajectory(std::move(m), default_labels(q, prefix));
}

/// A random OGB model over the built-in basis registry: bounded dimensions,
/// 0-2 Kronecker basis functions, 0-2 zero-padded terms.
inline OgbModel random_ogb_model(std::mt19937_64& rng) {
    OgbModel m;
    const Eigen::Index n_u = 1 + static_cast<Eigen::Index>(rng() % 2);
    const Eigen::Index n_y = 1 + static_cast<Eigen::Index>(rng() % 2);
    const Eigen::Index d = static_cast<Eigen::Index>(rng() % 3);

    auto random_scalar_basis = [&](Eigen::Index max_shift) {
        const Eigen::Index ch = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n_y));
        const Eigen::Index shift = static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(max_shift + 1));
        switch (rng() % 4) {
            case 0: return basis_monomial(n_y, d, ch, shift, 1 + static_cast<int>(rng() % 2));
            case 1: return basis_sin(n_y, d, ch, shift);
            case 2: return basis_cos(n_y, d, ch, shift);
            default: return basis_constant(detail::uniform_open(rng, -1.0, 1.0));
        }
    };

    const Eigen::Index n_phi_b = static_cast<Eigen::Index>(rng() % 3);
    for (Eigen::Index i = 0; i < n_phi_b; ++i) m.phi_b.push_back(random_scalar_basis(d));

    const Eigen::Index kron_len = n_phi_b * n_u * (d + 1);
    const Eigen::Index pad = 1 + static_cast<Eigen::Index>(rng() % 3);
    m.zero_pad = pad;
    const Eigen::Index n_b0 = static_cast<Eigen::Index>(rng() % 3);
    for (Eigen::Index i = 0; i < n_b0; ++i) {
        m.phi_b0.push_back(
            {random_scalar_basis(d), kron_len + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(pad))});
    }
    m.dims = SystemDims{n_u, n_y, kron_len + pad, std::max<Eigen::Index>(d, 1), 1, d};
    if (n_u == 2 && rng() % 3 == 0) m.input_map = shear_cube_input_map();
    m.validate();
    return m;
}

}  // namespace ogbm::testing
