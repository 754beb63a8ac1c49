#include "nirmal/data/idx.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "nirmal/error.hpp"

namespace nirmal::data {

namespace {

std::string hex32(std::uint32_t v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%08X", v);
    return buf;
}

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    return (std::uint32_t{bytes[offset]} << 24) | (std::uint32_t{bytes[offset + 1]} << 16) |
           (std::uint32_t{bytes[offset + 2]} << 8) | std::uint32_t{bytes[offset + 3]};
}

void append_be32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

// Validates magic and returns the dimension sizes.
std::vector<std::uint32_t> parse_header(std::span<const std::uint8_t> bytes, std::uint32_t expected_magic,
                                        const std::string& source) {
    if (bytes.size() < 4) throw IoError(source + ": truncated IDX file (" + std::to_string(bytes.size()) + " bytes)");
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != expected_magic) {
        throw FormatError(source + ": unexpected IDX magic " + hex32(magic) + " (expected " + hex32(expected_magic) +
                          ")");
    }
    const std::size_t ndims = expected_magic & 0xFFu;
    if (bytes.size() < 4 + 4 * ndims) throw IoError(source + ": truncated IDX header");
    std::vector<std::uint32_t> dims(ndims);
    for (std::size_t i = 0; i < ndims; ++i) dims[i] = read_be32(bytes, 4 + 4 * i);
    return dims;
}

void write_bytes(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace

std::vector<std::uint8_t> gunzip(std::span<const std::uint8_t> bytes, const std::string& source) {
    z_stream zs{};
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK) throw IoError(source + ": zlib initialisation failed");
    std::vector<std::uint8_t> out(std::max<std::size_t>(bytes.size() * 4, 1 << 16));
    zs.next_in = const_cast<Bytef*>(bytes.data());
    zs.avail_in = static_cast<uInt>(bytes.size());
    int rc = Z_OK;
    while (rc != Z_STREAM_END) {
        if (zs.total_out == out.size()) out.resize(out.size() * 2);
        zs.next_out = out.data() + zs.total_out;
        zs.avail_out = static_cast<uInt>(out.size() - zs.total_out);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc == Z_BUF_ERROR && zs.avail_in == 0) break;
        if (rc != Z_OK && rc != Z_STREAM_END && rc != Z_BUF_ERROR) {
            inflateEnd(&zs);
            throw IoError(source + ": corrupt gzip stream");
        }
    }
    const auto produced = zs.total_out;
    inflateEnd(&zs);
    if (rc != Z_STREAM_END) throw IoError(source + ": truncated gzip stream");
    out.resize(produced);
    return out;
}

std::vector<std::uint8_t> gzip(std::span<const std::uint8_t> bytes) {
    z_stream zs{};
    if (deflateInit2(&zs, Z_BEST_COMPRESSION, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY) != Z_OK) {
        throw IoError("zlib deflate initialisation failed");
    }
    std::vector<std::uint8_t> out(deflateBound(&zs, static_cast<uLong>(bytes.size())));
    zs.next_in = const_cast<Bytef*>(bytes.data());
    zs.avail_in = static_cast<uInt>(bytes.size());
    zs.next_out = out.data();
    zs.avail_out = static_cast<uInt>(out.size());
    const int rc = deflate(&zs, Z_FINISH);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    if (rc != Z_STREAM_END) throw IoError("gzip compression failed");
    return out;
}

std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for " + path.string());
    if (bytes.size() >= 2 && bytes[0] == 0x1F && bytes[1] == 0x8B) return gunzip(bytes, path.string());
    return bytes;
}

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes, const std::string& source) {
    const auto dims = parse_header(bytes, kIdxImageMagic, source);
    IdxImages img{dims[0], dims[1], dims[2], {}};
    const std::size_t payload = std::size_t{img.count} * img.rows * img.cols;
    const std::size_t offset = 16;
    if (bytes.size() < offset + payload) {
        throw IoError(source + ": truncated image payload (" + std::to_string(bytes.size() - offset) + " of " +
                      std::to_string(payload) + " bytes)");
    }
    img.pixels.assign(bytes.begin() + offset, bytes.begin() + static_cast<std::ptrdiff_t>(offset + payload));
    return img;
}

IdxLabels parse_idx_labels(std::span<const std::uint8_t> bytes, const std::string& source) {
    const auto dims = parse_header(bytes, kIdxLabelMagic, source);
    const std::size_t offset = 8;
    if (bytes.size() < offset + dims[0]) {
        throw IoError(source + ": truncated label payload (" + std::to_string(bytes.size() - offset) + " of " +
                      std::to_string(dims[0]) + " bytes)");
    }
    return {std::vector<std::uint8_t>(bytes.begin() + offset, bytes.begin() + static_cast<std::ptrdiff_t>(offset + dims[0]))};
}

std::vector<std::uint8_t> encode_idx(const IdxImages& images) {
    if (images.pixels.size() != std::size_t{images.count} * images.rows * images.cols) {
        throw ContractViolation("encode_idx: pixel count does not match dimensions");
    }
    std::vector<std::uint8_t> out;
    out.reserve(16 + images.pixels.size());
    append_be32(out, kIdxImageMagic);
    append_be32(out, images.count);
    append_be32(out, images.rows);
    append_be32(out, images.cols);
    out.insert(out.end(), images.pixels.begin(), images.pixels.end());
    return out;
}

std::vector<std::uint8_t> encode_idx(const IdxLabels& labels) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + labels.labels.size());
    append_be32(out, kIdxLabelMagic);
    append_be32(out, static_cast<std::uint32_t>(labels.labels.size()));
    out.insert(out.end(), labels.labels.begin(), labels.labels.end());
    return out;
}

IdxImages read_idx_images(const std::filesystem::path& path) {
    return parse_idx_images(read_file_bytes(path), path.string());
}

IdxLabels read_idx_labels(const std::filesystem::path& path) {
    return parse_idx_labels(read_file_bytes(path), path.string());
}

void write_idx(const std::filesystem::path& path, const IdxImages& images, bool compress) {
    auto bytes = encode_idx(images);
    write_bytes(path, compress ? gzip(bytes) : bytes);
}

void write_idx(const std::filesystem::path& path, const IdxLabels& labels, bool compress) {
    auto bytes = encode_idx(labels);
    write_bytes(path, compress ? gzip(bytes) : bytes);
}

Dataset to_dataset(const IdxImages& images, const IdxLabels& labels, std::size_t num_classes, std::string name) {
    if (images.count != labels.labels.size()) {
        throw ConsistencyError(name + ": image file holds " + std::to_string(images.count) + " samples but label file " +
                               std::to_string(labels.labels.size()));
    }
    if (images.count == 0 || images.rows == 0 || images.cols == 0) throw FormatError(name + ": IDX file has a zero extent");
    std::vector<Label> ls(labels.labels.begin(), labels.labels.end());
    for (Label l : ls) {
        if (l >= num_classes) throw FormatError(name + ": label value " + std::to_string(l) + " out of range");
    }
    std::vector<float> px(images.pixels.size());
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = static_cast<float>(images.pixels[i]) / 255.0f;
    return {Buffer({images.count, 1, images.rows, images.cols}, std::move(px)), std::move(ls), num_classes,
            std::move(name)};
}

Dataset load_idx(const std::filesystem::path& images_path, const std::filesystem::path& labels_path,
                 std::size_t num_classes, std::string name) {
    return to_dataset(read_idx_images(images_path), read_idx_labels(labels_path), num_classes, std::move(name));
}

std::pair<IdxImages, IdxLabels> to_idx(const Dataset& ds) {
    ds.validate();
    if (ds.images.extent(1) != 1) throw ContractViolation("to_idx: IDX images are single-channel");
    IdxImages img{static_cast<std::uint32_t>(ds.size()), static_cast<std::uint32_t>(ds.images.extent(2)),
                  static_cast<std::uint32_t>(ds.images.extent(3)), std::vector<std::uint8_t>(ds.images.size())};
    auto px = ds.images.data();
    for (std::size_t i = 0; i < px.size(); ++i) {
        const float scaled = std::round(px[i] * 255.0f);
        if (!(scaled >= 0.0f && scaled <= 255.0f)) throw ContractViolation("to_idx: pixel outside [0, 1]");
        img.pixels[i] = static_cast<std::uint8_t>(scaled);
    }
    IdxLabels lab;
    lab.labels.reserve(ds.size());
    for (Label l : ds.labels) {
        if (l > 255) throw ContractViolation("to_idx: label does not fit in u8");
        lab.labels.push_back(static_cast<std::uint8_t>(l));
    }
    return {std::move(img), std::move(lab)};
}

std::string to_string(DatasetKind kind) {
    switch (kind) {
        case DatasetKind::mnist: return "mnist";
        case DatasetKind::fashion: return "fashion";
        case DatasetKind::synth: return "synth";
    }
    return "unknown";
}

DatasetKind parse_dataset_kind(const std::string& name) {
    if (name == "mnist") return DatasetKind::mnist;
    if (name == "fashion") return DatasetKind::fashion;
    if (name == "synth") return DatasetKind::synth;
    throw ConfigError("unknown dataset '" + name + "' (expected mnist, fashion or synth)");
}

std::filesystem::path locate_idx_file(const std::filesystem::path& dir, const std::string& base) {
    const auto plain = dir / base;
    if (std::filesystem::is_regular_file(plain)) return plain;
    const auto packed = dir / (base + ".gz");
    if (std::filesystem::is_regular_file(packed)) return packed;
    throw IoError("missing dataset file " + plain.string() + " (or " + packed.string() + ")");
}

Split load_standard_split(DatasetKind kind, const std::filesystem::path& dir) {
    if (kind == DatasetKind::synth) throw ContractViolation("synthetic data has no IDX files");
    const std::string prefix = to_string(kind);
    // Locate all four before parsing any so a missing file fails fast.
    const auto tr_img = locate_idx_file(dir, "train-images-idx3-ubyte");
    const auto tr_lab = locate_idx_file(dir, "train-labels-idx1-ubyte");
    const auto te_img = locate_idx_file(dir, "t10k-images-idx3-ubyte");
    const auto te_lab = locate_idx_file(dir, "t10k-labels-idx1-ubyte");
    return {load_idx(tr_img, tr_lab, 10, prefix + "-train"), load_idx(te_img, te_lab, 10, prefix + "-test")};
}

}  // namespace nirmal::data
