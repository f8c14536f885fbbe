#pragma once

#include <Eigen/Core>

#include "hgu/grid.hpp"

namespace hgu {

/// Orthonormal linear encoder/decoder pair.
/// kind dct: truncated 2-D DCT-II basis in zigzag order (encode . decode = id
/// on the latent side, decode . encode = orthogonal projection).
/// kind identity: pass-through reshape, latent dim = h*w (no stored basis).
class OrthoCodec {
public:
    static OrthoCodec identity(int h, int w);
    /// k lowest-frequency DCT-II basis images, each unit l2 norm.
    static OrthoCodec fit_dct(int h, int w, int k);

    Vec encode(const Grid& x) const;
    Grid decode(const Vec& z) const;
    Vec decode_adjoint(const Grid& g) const;

    int latent_dim() const { return k_; }
    int height() const { return h_; }
    int width() const { return w_; }
    bool is_identity() const { return identity_; }
    /// N x k matrix of basis columns (empty for the identity codec).
    const Eigen::MatrixXd& basis() const { return basis_; }

private:
    OrthoCodec() = default;
    int h_ = 0, w_ = 0, k_ = 0;
    bool identity_ = false;
    Eigen::MatrixXd basis_;
};

}  // namespace hgu
