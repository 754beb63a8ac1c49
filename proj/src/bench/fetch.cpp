#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <openssl/evp.h>

#include "nirmal/bench/fetch.hpp"

#include <cstdio>

#include "nirmal/bench/outputs.hpp"
#include "nirmal/error.hpp"

namespace nirmal::bench {

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;    // prefix without trailing slash
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw ConfigError("mirror URL needs a scheme: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    SplitUrl out{url.substr(0, path_start), path_start == std::string::npos ? "" : url.substr(path_start)};
    while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
    return out;
}

bool has_checksum(const std::filesystem::path& path, const std::string& md5) {
    if (!std::filesystem::is_regular_file(path)) return false;
    const std::string text = read_text(path);
    return md5_hex(std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size())) == md5;
}

}  // namespace

std::vector<RemoteFile> standard_archives(data::DatasetKind kind) {
    switch (kind) {
        case data::DatasetKind::mnist:
            return {{"train-images-idx3-ubyte.gz", "f68b3c2dcbeaaa9fbdd348bbdeb94873"},
                    {"train-labels-idx1-ubyte.gz", "d53e105ee54ea40749a09fcbcd1e9432"},
                    {"t10k-images-idx3-ubyte.gz", "9fb629c4189551a2d022fa330f9573f3"},
                    {"t10k-labels-idx1-ubyte.gz", "ec29112dd5afa0611ce80d1b7f02629c"}};
        case data::DatasetKind::fashion:
            return {{"train-images-idx3-ubyte.gz", "8d4fb7e6c68d591d4c3dfef9ec88bf0d"},
                    {"train-labels-idx1-ubyte.gz", "25c81989df183df01b3e8a0aad5dffbe"},
                    {"t10k-images-idx3-ubyte.gz", "bef4ecab320f06d8554ea6380940ec79"},
                    {"t10k-labels-idx1-ubyte.gz", "bb300cfdad3c16e7a12a480ee83cd310"}};
        case data::DatasetKind::synth:
            break;
    }
    throw ConfigError("synthetic data has nothing to fetch");
}

std::string default_mirror(data::DatasetKind kind) {
    if (kind == data::DatasetKind::mnist) return "https://ossci-datasets.s3.amazonaws.com/mnist";
    if (kind == data::DatasetKind::fashion) return "http://fashion-mnist.s3-website.eu-central-1.amazonaws.com";
    throw ConfigError("synthetic data has nothing to fetch");
}

std::string md5_hex(std::span<const std::uint8_t> bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_md5(), nullptr) != 1) {
        throw Error("MD5 digest failed");
    }
    std::string out;
    char hex[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(hex, sizeof hex, "%02x", digest[i]);
        out += hex;
    }
    return out;
}

void fetch_files(const std::string& base_url, const std::vector<RemoteFile>& files, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create data directory " + dir.string());
    const SplitUrl url = split_url(base_url);
    httplib::Client client(url.origin);
    client.set_follow_location(true);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);
    for (const auto& file : files) {
        const auto target = dir / file.name;
        if (has_checksum(target, file.md5)) continue;
        const std::string remote = url.path + "/" + file.name;
        auto res = client.Get(remote);
        if (!res) throw IoError("download of " + url.origin + remote + " failed: " + httplib::to_string(res.error()));
        if (res->status != 200) throw IoError("download of " + url.origin + remote + " returned HTTP " + std::to_string(res->status));
        const auto& body = res->body;
        const std::string got = md5_hex(std::span(reinterpret_cast<const std::uint8_t*>(body.data()), body.size()));
        if (got != file.md5) {
            std::filesystem::remove(target, ec);
            throw IoError("checksum mismatch for " + file.name + ": expected " + file.md5 + ", got " + got);
        }
        write_text(target, body);
    }
}

void fetch_dataset(data::DatasetKind kind, const std::filesystem::path& dir, const std::string& mirror) {
    fetch_files(mirror.empty() ? default_mirror(kind) : mirror, standard_archives(kind), dir);
}

}  // namespace nirmal::bench
