#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nirmal/data/idx.hpp"

namespace nirmal::bench {

struct RemoteFile {
    std::string name;  // e.g. train-images-idx3-ubyte.gz
    std::string md5;
};

std::vector<RemoteFile> standard_archives(data::DatasetKind kind);
std::string default_mirror(data::DatasetKind kind);

std::string md5_hex(std::span<const std::uint8_t> bytes);

// Downloads each file from `base_url` + "/" + name into dir unless a copy with
// the right checksum is already there. A checksum mismatch removes the file
// and raises IoError.
void fetch_files(const std::string& base_url, const std::vector<RemoteFile>& files, const std::filesystem::path& dir);

void fetch_dataset(data::DatasetKind kind, const std::filesystem::path& dir, const std::string& mirror = "");

}  // namespace nirmal::bench
