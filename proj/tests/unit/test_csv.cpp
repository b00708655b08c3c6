#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "sindex/csv.hpp"

namespace {

struct TempCsv {
    std::string path;
    explicit TempCsv(const std::string& content) {
        path = std::string(std::tmpnam(nullptr)) + ".csv";
        std::ofstream out(path);
        out << content;
    }
    ~TempCsv() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("reads a well-formed file") {
    TempCsv file("y,x1,z1\n1.5,2,3\n-0.5,0,1\n2.25,1,0\n");
    auto table = sindex::read_csv(file.path);
    CHECK(table.columns == std::vector<std::string>{"y", "x1", "z1"});
    CHECK(table.values.rows() == 3);
    CHECK(table.values(0, 0) == 1.5);
    CHECK(table.values(2, 2) == 0.0);

    auto data = sindex::dataset_from_csv(table, "y", {"x1"}, {"z1"});
    CHECK(data.y(2) == 2.25);
    CHECK(data.x_target(0, 0) == 2.0);
    CHECK(data.x_nuisance(1, 0) == 1.0);
}

TEST_CASE("ragged rows name the line") {
    TempCsv file("y,x\n1,2\n3\n");
    try {
        sindex::read_csv(file.path);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
}

TEST_CASE("non-numeric cells name the column") {
    TempCsv file("y,x\n1,2\n3,oops\n");
    try {
        sindex::read_csv(file.path);
        FAIL("expected an error");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("'x'") != std::string::npos);
        CHECK(msg.find("oops") != std::string::npos);
    }
}

TEST_CASE("missing values are rejected") {
    TempCsv file("y,x\n1,\n");
    CHECK_THROWS_AS(sindex::read_csv(file.path), std::invalid_argument);
}

TEST_CASE("unknown column names are rejected") {
    TempCsv file("y,x\n1,2\n3,4\n5,6\n");
    auto table = sindex::read_csv(file.path);
    CHECK_THROWS_AS(sindex::dataset_from_csv(table, "y", {"nope"}, {}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sindex::dataset_from_csv(table, "nope", {"x"}, {}),
                    std::invalid_argument);
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(sindex::read_csv("/nonexistent/path.csv"), std::invalid_argument);
}
