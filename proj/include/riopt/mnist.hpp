#pragma once

#include "riopt/problems.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace riopt {

// IDX image container: u32 big-endian magic 0x00000803, then count, rows,
// cols (u32 big-endian each), then count*rows*cols unsigned bytes, row-major.

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

struct MnistImages {
  Matrix data;  // count x (rows*cols), values scaled to [0, 1]
  Index rows = 0, cols = 0;
  DatasetManifest manifest;
};

/// Parses an IDX image file. Throws ParseError naming the byte offset on a
/// wrong magic, truncated payload, or dimension overflow.
MnistImages load_mnist_idx(const std::string& images_path);
MnistImages parse_mnist_idx(const std::vector<unsigned char>& bytes, const std::string& origin);

/// Parses an IDX label file (magic 0x00000801). Accepted for completeness;
/// nothing downstream consumes labels.
std::vector<std::uint8_t> load_mnist_labels(const std::string& labels_path);

/// PCA instance over a deterministic subsample of the images:
/// H = A^T A / count with A the subsample x pixels matrix.
PcaInstance mnist_pca_instance(const MnistImages& images, Index p, Index subsample,
                               std::uint64_t seed);

/// Serializes images (already in [0, 1]) back to IDX bytes. Used for fixtures.
std::vector<unsigned char> make_idx_image_bytes(const std::vector<std::vector<std::uint8_t>>& images,
                                                Index rows, Index cols);

}  // namespace riopt
