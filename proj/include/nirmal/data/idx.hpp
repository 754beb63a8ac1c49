#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nirmal/data/dataset.hpp"

// IDX container as used by MNIST and Fashion-MNIST: a 4-byte magic
// (0x00, 0x00, type 0x08 = u8, dimension count), one big-endian u32 per
// dimension, then the raw u8 payload. Files may be gzip-compressed.
namespace nirmal::data {

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

struct IdxImages {
    std::uint32_t count = 0;
    std::uint32_t rows = 0;
    std::uint32_t cols = 0;
    std::vector<std::uint8_t> pixels;  // count * rows * cols
};

struct IdxLabels {
    std::vector<std::uint8_t> labels;
};

// Whole file contents, transparently inflated when the gzip magic 1F 8B leads.
std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path);
std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes, const std::string& source);
std::vector<std::uint8_t> gzip(std::span<const std::uint8_t> bytes);

// `source` names the input in error messages.
IdxImages parse_idx_images(std::span<const std::uint8_t> bytes, const std::string& source);
IdxLabels parse_idx_labels(std::span<const std::uint8_t> bytes, const std::string& source);
std::vector<std::uint8_t> encode_idx(const IdxImages& images);
std::vector<std::uint8_t> encode_idx(const IdxLabels& labels);

IdxImages read_idx_images(const std::filesystem::path& path);
IdxLabels read_idx_labels(const std::filesystem::path& path);
void write_idx(const std::filesystem::path& path, const IdxImages& images, bool compress = false);
void write_idx(const std::filesystem::path& path, const IdxLabels& labels, bool compress = false);

// Pixels scaled to u8/255, shape [N, 1, rows, cols].
Dataset to_dataset(const IdxImages& images, const IdxLabels& labels, std::size_t num_classes, std::string name);
Dataset load_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path,
                 std::size_t num_classes = 10, std::string name = "idx");

// Inverse of to_dataset for single-channel data in [0, 1]; pixels are rounded
// to the nearest u8.
std::pair<IdxImages, IdxLabels> to_idx(const Dataset& ds);

enum class DatasetKind { mnist, fashion, synth };

std::string to_string(DatasetKind kind);
DatasetKind parse_dataset_kind(const std::string& name);

struct Split {
    Dataset train;
    Dataset test;
};

// `<dir>/<base>` or `<dir>/<base>.gz`; throws IoError naming both when absent.
std::filesystem::path locate_idx_file(const std::filesystem::path& dir, const std::string& base);
// Standard file names: train-images-idx3-ubyte, train-labels-idx1-ubyte,
// t10k-images-idx3-ubyte, t10k-labels-idx1-ubyte.
Split load_standard_split(DatasetKind kind, const std::filesystem::path& dir);

}  // namespace nirmal::data
