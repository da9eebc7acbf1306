#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "oqwlab/kraus.hpp"
#include "oqwlab/numerics.hpp"

namespace oqwlab {

class QuantizedWalk;
class AugmentedState;
struct UEigenSystem;

/// Seeded generator with fully specified output streams: uniforms come from the
/// top 53 bits of mt19937_64 words and gaussians from Box-Muller on those, so
/// identical seeds reproduce identical draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();           // [0, 1)
    double gaussian();          // standard normal
    Complex complex_gaussian(); // independent N(0,1) real and imaginary parts

    /// Integer in [0, bound).
    std::uint64_t below(std::uint64_t bound);

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Stream seed for (base, stream) so trajectory ensembles get independent,
/// reproducible generators.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

CMat gaussian_matrix(int rows, int cols, Rng& rng);

/// Haar-adjacent unitary: QR orthonormalization of a complex Gaussian matrix.
CMat random_unitary(int n, Rng& rng);

/// Valid family built per node by slicing a random (m*n) x n isometry over m
/// random targets, which satisfies the completeness relation up to roundoff.
/// max_out_degree 0 means "up to num_nodes".
KrausFamily random_kraus_family(int num_nodes, int coin_dim, Rng& rng, int max_out_degree = 0);

/// Column-stochastic matrix with strictly positive entries.
RMat random_stochastic(int n, Rng& rng);

AugmentedState random_augmented_state(int num_nodes, int coin_dim, Rng& rng);

/// Unit-norm random combination of the eigensystem's vectors.
AugmentedState random_span_state(const UEigenSystem& eig, Rng& rng);

/// Unit-norm state orthogonal to span{psi_j, S psi_j}, or nullopt when that
/// span already fills the augmented space.
std::optional<AugmentedState> random_complement_state(const QuantizedWalk& walk, Rng& rng);

}  // namespace oqwlab
