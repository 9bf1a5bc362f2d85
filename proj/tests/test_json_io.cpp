#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bergman/json_io.hpp"
#include "bergman/toeplitz.hpp"
#include "bergman/verify/corpus.hpp"

namespace {

using namespace bergman;
using Exact = GaussianRational;
using Float = Complex;
using io::json;

TEST(JsonIo, RationalLiterals) {
    EXPECT_EQ(io::read_rational(json(3)), Rational(3));
    EXPECT_EQ(io::read_rational(json("-6/4")), Rational(make_rational(-3, 2)));
    EXPECT_EQ(io::read_rational(json(0.5)), Rational(make_rational(1, 2)));
    EXPECT_THROW(io::read_rational(json("one half")), DomainError);
    EXPECT_THROW(io::read_rational(json::array()), DomainError);
    EXPECT_EQ(io::write_rational(Rational(make_rational(2, 6))), json("1/3"));
    EXPECT_EQ(io::write_rational(Rational(7)), json(7));
}

TEST(JsonIo, SymbolRoundTrip) {
    for (const auto& g : {corpus::square_of_z_plus_zbar<Exact>(), corpus::z_plus_zbar_power<Exact>(3),
                          corpus::modulus_squared<Exact>()}) {
        const auto back = io::symbol_from_json<Exact>(json::parse(io::symbol_to_json(g).dump()));
        EXPECT_TRUE((back - g).is_zero());
    }
    const auto gf = corpus::square_of_z_plus_zbar<Float>();
    const auto back = io::symbol_from_json<Float>(io::symbol_to_json(gf));
    EXPECT_TRUE((back - gf).is_zero());
}

TEST(JsonIo, HarmonicForm) {
    const auto j = json::parse(R"({"harmonic":{"f1":[{"re":0},{"re":1}],"m":3,"f2":[{"re":"1/2","im":0}]}})");
    const auto g = io::symbol_from_json<Exact>(j);
    const Complex z(0.3, -0.2);
    EXPECT_NEAR(std::abs(g(z) - (z + 0.5 * std::pow(std::conj(z), 3))), 0.0, 1e-14);
}

TEST(JsonIo, MissingFieldsAreErrors) {
    EXPECT_ANY_THROW(io::symbol_from_json<Exact>(json::parse(R"({"terms":[{"degree":1}]})")));
    EXPECT_ANY_THROW(io::symbol_from_json<Exact>(json::parse(R"({"something":1})")));
}

TEST(JsonIo, CsvIsOrderedByOffsetThenColumn) {
    const auto a = toeplitz_matrix(corpus::z_plus_zbar_power<Exact>(1), 8);
    const auto csv = io::matrix_to_csv(a);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "offset,column,re,im");
    std::pair<int, int> prev{-1000, -1};
    int rows = 0;
    while (std::getline(in, line)) {
        int d = 0, c = 0;
        char comma = 0;
        std::istringstream ls(line);
        ls >> d >> comma >> c;
        EXPECT_LT(prev, std::pair(d, c));
        prev = {d, c};
        ++rows;
    }
    EXPECT_GT(rows, 8);
    EXPECT_NE(csv.find("1/2"), std::string::npos);
}

TEST(JsonIo, MatrixJsonMetadata) {
    const auto a = toeplitz_matrix(corpus::monomial<Float>(1), 16);
    const auto j = io::matrix_to_json(a, true);
    EXPECT_EQ(j["n"], 16);
    EXPECT_EQ(j["basis"], "orthonormal");
    EXPECT_EQ(j["entries"].size(), 15u);
    EXPECT_EQ(j["window"], a.window());
}

TEST(JsonIo, AtomicWriteReplacesContent) {
    const auto dir = std::filesystem::temp_directory_path() / "bergman_json_io_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / "out.json";
    io::write_file_atomic(path, "first");
    io::write_file_atomic(path, "second");
    std::ifstream in(path);
    std::string s((std::istreambuf_iterator<char>(in)), {});
    EXPECT_EQ(s, "second");
    EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST(JsonIo, ReadJsonFileErrors) {
    EXPECT_THROW(io::read_json_file("/nonexistent/bergman.json"), DomainError);
}

}  // namespace
