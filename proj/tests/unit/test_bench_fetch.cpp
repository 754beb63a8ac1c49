#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <gtest/gtest.h>

#include <filesystem>
#include <thread>

#include "nirmal/bench/fetch.hpp"
#include "nirmal/bench/outputs.hpp"
#include "nirmal/data/idx.hpp"
#include "nirmal/error.hpp"

using namespace nirmal;
using namespace nirmal::bench;
namespace fs = std::filesystem;

namespace {

using Files = std::map<std::string, std::string>;

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

// Serves fixed bodies under /data/<name> on a loopback port.
class LocalServer {
public:
    explicit LocalServer(Files files) : files_(std::move(files)) {
        server_.Get(R"(/data/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
            ++hits_;
            const auto it = files_.find(req.matches[1]);
            if (it == files_.end()) {
                res.status = 404;
                return;
            }
            res.set_content(it->second, "application/octet-stream");
        });
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~LocalServer() {
        server_.stop();
        thread_.join();
    }
    std::string base() const { return "http://127.0.0.1:" + std::to_string(port_) + "/data"; }
    int hits() const { return hits_; }

private:
    Files files_;
    httplib::Server server_;
    std::thread thread_;
    int port_ = 0;
    std::atomic<int> hits_{0};
};

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("nirmal_fetch_" + name);
    fs::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Fetch, Md5KnownValues) {
    EXPECT_EQ(md5_hex(bytes_of("")), "d41d8cd98f00b204e9800998ecf8427e");
    EXPECT_EQ(md5_hex(bytes_of("The quick brown fox jumps over the lazy dog")), "9e107d9d372bb6826bd81d3542a419d6");
}

TEST(Fetch, StandardArchiveList) {
    for (auto kind : {data::DatasetKind::mnist, data::DatasetKind::fashion}) {
        const auto files = standard_archives(kind);
        ASSERT_EQ(files.size(), 4u);
        for (const auto& f : files) {
            EXPECT_EQ(f.md5.size(), 32u);
            EXPECT_EQ(f.name.substr(f.name.size() - 3), ".gz");
        }
        EXPECT_FALSE(default_mirror(kind).empty());
    }
    EXPECT_THROW(standard_archives(data::DatasetKind::synth), ConfigError);
}

TEST(Fetch, DownloadsVerifiesAndSkipsValidCopies) {
    const std::string body = "idx payload";
    LocalServer server(Files{{"a.gz", body}});
    const auto dir = scratch("ok");
    const std::vector<RemoteFile> files{{"a.gz", md5_hex(bytes_of(body))}};
    fetch_files(server.base(), files, dir);
    EXPECT_EQ(read_text(dir / "a.gz"), body);
    EXPECT_EQ(server.hits(), 1);
    fetch_files(server.base(), files, dir);
    EXPECT_EQ(server.hits(), 1);
}

TEST(Fetch, ChecksumMismatchRemovesFile) {
    LocalServer server(Files{{"a.gz", "tampered"}});
    const auto dir = scratch("bad");
    EXPECT_THROW(fetch_files(server.base(), {{"a.gz", md5_hex(bytes_of("original"))}}, dir), IoError);
    EXPECT_FALSE(fs::exists(dir / "a.gz"));
}

TEST(Fetch, MissingRemoteAndUnreachableHost) {
    LocalServer server(Files{});
    EXPECT_THROW(fetch_files(server.base(), {{"none.gz", std::string(32, '0')}}, scratch("404")), IoError);
    EXPECT_THROW(fetch_files("http://127.0.0.1:1/data", {{"x.gz", std::string(32, '0')}}, scratch("down")), IoError);
}

TEST(Fetch, FetchedArchivesLoad) {
    // A gzip IDX pair served and fetched end to end, then parsed.
    data::IdxImages imgs{1, 2, 2, {0, 64, 128, 255}};
    data::IdxLabels lbls{{4}};
    const auto gi = data::gzip(data::encode_idx(imgs));
    const auto gl = data::gzip(data::encode_idx(lbls));
    LocalServer server(Files{{"i.gz", std::string(gi.begin(), gi.end())}, {"l.gz", std::string(gl.begin(), gl.end())}});
    const auto dir = scratch("load");
    fetch_files(server.base(), {{"i.gz", md5_hex(gi)}, {"l.gz", md5_hex(gl)}}, dir);
    const auto ds = data::load_idx(dir / "i.gz", dir / "l.gz");
    EXPECT_EQ(ds.labels, (std::vector<Label>{4}));
    EXPECT_EQ(ds.images[3], 1.0f);
}
