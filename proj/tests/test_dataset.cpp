#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "roaring/dataset.hpp"

using namespace roaring;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("roaring_test_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }

    void write(const std::string& file, const std::string& text) const {
        std::ofstream(path / file, std::ios::binary) << text;
    }
};

std::string load_error(const fs::path& dir) {
    try {
        load_dataset(dir);
    } catch (const DatasetError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("parsing one set") {
    CHECK(parse_set("1,5,9", "a.txt") == std::vector<std::uint32_t>{1, 5, 9});
    CHECK(parse_set("1,5,9\n", "a.txt") == std::vector<std::uint32_t>{1, 5, 9});
    CHECK(parse_set("4294967295", "a.txt") == std::vector<std::uint32_t>{4294967295u});
    CHECK_THROWS_WITH_AS(parse_set("5,3", "b.txt"), doctest::Contains("not strictly increasing"),
                         DatasetError);
    CHECK_THROWS_WITH_AS(parse_set("1,1", "b.txt"), doctest::Contains("value #2"), DatasetError);
    CHECK_THROWS_WITH_AS(parse_set("1,4294967296", "c.txt"),
                         doctest::Contains("overflows 32 bits"), DatasetError);
    CHECK_THROWS_WITH_AS(parse_set("1,,2", "d.txt"), doctest::Contains("value #2"), DatasetError);
    CHECK_THROWS_WITH_AS(parse_set("1,x", "d.txt"), doctest::Contains("d.txt"), DatasetError);
    CHECK_THROWS_AS(parse_set("", "e.txt"), DatasetError);
}

TEST_CASE("loading a directory orders sets by file name") {
    TempDir dir("load");
    dir.write("b.txt", "7,8\n");
    dir.write("a.txt", "1,5,9");
    dir.write("c.txt", "100");
    const Dataset d = load_dataset(dir.path);
    REQUIRE(d.sets.size() == 3);
    CHECK(d.sets[0] == std::vector<std::uint32_t>{1, 5, 9});
    CHECK(d.sets[1] == std::vector<std::uint32_t>{7, 8});
    CHECK(d.universe() == 101);
    CHECK(d.total_values() == 6);

    dir.write("d.txt", "5,3");
    const std::string err = load_error(dir.path);
    CHECK(err.find("d.txt") != std::string::npos);
    CHECK(err.find("value #2") != std::string::npos);
    CHECK(err.find("not strictly increasing") != std::string::npos);

    CHECK(!load_error(dir.path / "missing").empty());
}

TEST_CASE("write then load reproduces the dataset") {
    TempDir dir("roundtrip");
    const Dataset d = gen_clusterdata(3, 200, 50, 100000);
    write_dataset(d, dir.path);
    const Dataset back = load_dataset(dir.path);
    CHECK(back.sets.size() == 200);
    CHECK(back.sets == d.sets);
}

TEST_CASE("clustered generator") {
    const Dataset full = gen_clusterdata(5, 2, 1000, 1000);
    for (const auto& s : full.sets) {
        REQUIRE(s.size() == 1000);
        CHECK(s.front() == 0);
        CHECK(s.back() == 999);
    }

    const Dataset d = gen_clusterdata(1, 100, 100000, 10000000);
    CHECK(check_dataset(d) == "");
    CHECK(d.sets.size() == 100);
    for (const auto& s : d.sets) {
        REQUIRE(s.size() == 100000);
        REQUIRE(s.back() < 10000000);
        std::vector<std::uint32_t> gaps;
        for (std::size_t i = 1; i < s.size(); ++i) gaps.push_back(s[i] - s[i - 1]);
        std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
        CHECK(gaps[gaps.size() / 2] <= 16);
        CHECK(*std::max_element(gaps.begin(), gaps.end()) > 16);
    }

    const Dataset again = gen_clusterdata(1, 100, 100000, 10000000);
    CHECK(again.sets == d.sets);
    CHECK(gen_clusterdata(2, 1, 1000, 100000).sets != gen_clusterdata(1, 1, 1000, 100000).sets);
    // the first set does not depend on how many follow
    CHECK(gen_clusterdata(1, 1, 100000, 10000000).sets[0] == d.sets[0]);

    // dense request: small gaps alone overshoot, retries shrink them
    const Dataset dense = gen_clusterdata(9, 3, 900, 1000);
    CHECK(check_dataset(dense) == "");
    for (const auto& s : dense.sets) CHECK(s.back() < 1000);

    CHECK_THROWS_AS(gen_clusterdata(1, 1, 11, 10), DatasetError);
}

TEST_CASE("splitmix64 reference values") {
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFull);
    CHECK(splitmix64(1) == 0x910A2DEC89025CC1ull);
}
