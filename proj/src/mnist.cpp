#include "riopt/mnist.hpp"

#include <fstream>
#include <limits>

namespace riopt {

namespace {

std::uint32_t read_u32_be(const std::vector<unsigned char>& bytes, size_t offset,
                          const std::string& origin, const char* field) {
  if (offset + 4 > bytes.size())
    throw ParseError(origin + ": truncated while reading " + field + " at byte offset " +
                         std::to_string(offset),
                     static_cast<long long>(offset));
  return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
         (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
         (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
         static_cast<std::uint32_t>(bytes[offset + 3]);
}

std::vector<unsigned char> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return std::vector<unsigned char>(std::istreambuf_iterator<char>(in),
                                    std::istreambuf_iterator<char>());
}

}  // namespace

MnistImages parse_mnist_idx(const std::vector<unsigned char>& bytes, const std::string& origin) {
  const std::uint32_t magic = read_u32_be(bytes, 0, origin, "magic");
  if (magic != kIdxImageMagic) {
    char got[16];
    std::snprintf(got, sizeof(got), "0x%08x", magic);
    throw ParseError(origin + ": expected image tensor magic 0x00000803 at byte offset 0, got " +
                         got,
                     0);
  }
  const std::uint64_t count = read_u32_be(bytes, 4, origin, "count");
  const std::uint64_t rows = read_u32_be(bytes, 8, origin, "rows");
  const std::uint64_t cols = read_u32_be(bytes, 12, origin, "cols");

  if (rows == 0 || cols == 0 || rows * cols > (1ULL << 24) || count > (1ULL << 31))
    throw ParseError(origin + ": dimension overflow in header at byte offset 4 (count=" +
                         std::to_string(count) + " rows=" + std::to_string(rows) + " cols=" +
                         std::to_string(cols) + ")",
                     4);

  const std::uint64_t payload = count * rows * cols;
  if (16 + payload > bytes.size())
    throw ParseError(origin + ": truncated payload, need " + std::to_string(16 + payload) +
                         " bytes but file has " + std::to_string(bytes.size()) +
                         " (failure at byte offset " + std::to_string(bytes.size()) + ")",
                     static_cast<long long>(bytes.size()));

  MnistImages out;
  out.rows = static_cast<Index>(rows);
  out.cols = static_cast<Index>(cols);
  out.data.resize(static_cast<Index>(count), static_cast<Index>(rows * cols));
  for (std::uint64_t img = 0; img < count; ++img)
    for (std::uint64_t px = 0; px < rows * cols; ++px)
      out.data(static_cast<Index>(img), static_cast<Index>(px)) =
          static_cast<Scalar>(bytes[16 + img * rows * cols + px]) / 255.0;

  out.manifest = {"mnist-idx", origin + " count=" + std::to_string(count), 0,
                  fnv1a(bytes.data(), bytes.size())};
  return out;
}

MnistImages load_mnist_idx(const std::string& images_path) {
  return parse_mnist_idx(read_file(images_path), images_path);
}

std::vector<std::uint8_t> load_mnist_labels(const std::string& labels_path) {
  const std::vector<unsigned char> bytes = read_file(labels_path);
  const std::uint32_t magic = read_u32_be(bytes, 0, labels_path, "magic");
  if (magic != kIdxLabelMagic)
    throw ParseError(labels_path + ": expected label tensor magic 0x00000801 at byte offset 0",
                     0);
  const std::uint64_t count = read_u32_be(bytes, 4, labels_path, "count");
  if (8 + count > bytes.size())
    throw ParseError(labels_path + ": truncated payload (failure at byte offset " +
                         std::to_string(bytes.size()) + ")",
                     static_cast<long long>(bytes.size()));
  return std::vector<std::uint8_t>(bytes.begin() + 8, bytes.begin() + 8 + count);
}

PcaInstance mnist_pca_instance(const MnistImages& images, Index p, Index subsample,
                               std::uint64_t seed) {
  const Index total = images.data.rows();
  const Index take = std::min(subsample, total);
  if (take < 1) throw ConfigError("mnist pca: no images to sample");

  // Deterministic sample without replacement (partial Fisher-Yates).
  std::vector<Index> order(static_cast<size_t>(total));
  for (Index i = 0; i < total; ++i) order[static_cast<size_t>(i)] = i;
  Rng rng(seed, /*stream=*/404);
  for (Index i = 0; i < take; ++i) {
    const Index j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(total - i)));
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
  }

  Matrix a(take, images.data.cols());
  for (Index i = 0; i < take; ++i) a.row(i) = images.data.row(order[static_cast<size_t>(i)]);

  PcaInstance inst;
  inst.n = images.data.cols();
  inst.p = p;
  inst.h = a.transpose() * a / static_cast<Scalar>(take);
  inst.manifest = {"mnist-idx",
                   "pca from " + images.manifest.params + " subsample=" + std::to_string(take) +
                       " p=" + std::to_string(p),
                   seed, fnv1a(inst.h)};
  return inst;
}

std::vector<unsigned char> make_idx_image_bytes(
    const std::vector<std::vector<std::uint8_t>>& images, Index rows, Index cols) {
  std::vector<unsigned char> bytes;
  auto push_u32 = [&bytes](std::uint32_t v) {
    bytes.push_back(static_cast<unsigned char>((v >> 24) & 0xff));
    bytes.push_back(static_cast<unsigned char>((v >> 16) & 0xff));
    bytes.push_back(static_cast<unsigned char>((v >> 8) & 0xff));
    bytes.push_back(static_cast<unsigned char>(v & 0xff));
  };
  push_u32(kIdxImageMagic);
  push_u32(static_cast<std::uint32_t>(images.size()));
  push_u32(static_cast<std::uint32_t>(rows));
  push_u32(static_cast<std::uint32_t>(cols));
  for (const auto& img : images) {
    if (img.size() != static_cast<size_t>(rows * cols))
      throw ContractViolation("idx fixture: image pixel count mismatch");
    bytes.insert(bytes.end(), img.begin(), img.end());
  }
  return bytes;
}

}  // namespace riopt
