#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "hoffman/constants.hpp"
#include "hoffman/io.hpp"
#include "instances.hpp"

using namespace hoffman;
namespace fs = std::filesystem;

namespace {

const fs::path kFixtures = HOFFMAN_FIXTURE_DIR;

std::string schema_message(const std::string& text) {
    try {
        io::parse_instance(text);
    } catch (const io::SchemaError& e) {
        return e.what();
    }
    return {};
}

const char* kMinimal = R"({"schema": 1, "A": [[1, 2], [3, 4]], "R": {"type": "orthant"},
                           "S": {"type": "zero"}, "norms": {"b": "l1", "x": "linf"}})";

}  // namespace

TEST(Parse, Minimal) {
    const auto inst = io::parse_instance(kMinimal);
    EXPECT_EQ(inst.a.rows(), 2u);
    EXPECT_EQ(inst.a(1, 0), 3.0);
    EXPECT_TRUE(cones::structurally_equal(inst.r, cones::SignedOrthant::nonneg(2)));
    EXPECT_TRUE(inst.s.as<cones::ZeroSet>());
    EXPECT_EQ(inst.norms, (mapping::NormPair{NormTag::L1, NormTag::LInf}));
    EXPECT_EQ(inst.side, "primal");
}

TEST(Parse, ErrorsNameTheField) {
    EXPECT_NE(schema_message(R"({"schema": 2})").find("$.schema"), std::string::npos);
    EXPECT_NE(schema_message(R"({"schema": 1, "A": [[1, 2], [3]], "R": {"type": "full"}})").find("$.A[1]"),
              std::string::npos);
    EXPECT_NE(schema_message(R"({"schema": 1, "A": [[1]], "R": {"type": "ball"}, "S": {"type": "zero"},
                               "norms": {"b": "l1", "x": "l1"}})")
                  .find("$.R.type"),
              std::string::npos);
    EXPECT_NE(schema_message(R"({"schema": 1, "A": [[1]], "R": {"type": "full"}, "S": {"type": "zero"},
                               "norms": {"b": "l3", "x": "l1"}})")
                  .find("$.norms.b"),
              std::string::npos);
    EXPECT_NE(schema_message(R"({"schema": 1, "A": [[1]], "R": {"type": "orthant", "signs": ["+", "?"]},
                               "S": {"type": "zero"}, "norms": {"b": "l1", "x": "l1"}})")
                  .find("$.R.signs[1]"),
              std::string::npos);
}

TEST(Parse, DimensionMismatch) {
    const std::string msg = schema_message(R"({"schema": 1, "A": [[1, 2]], "R": {"type": "orthant", "signs": ["+"]},
                                              "S": {"type": "zero"}, "norms": {"b": "l1", "x": "l1"}})");
    EXPECT_NE(msg.find("$.R"), std::string::npos);
}

TEST(Parse, InvalidJsonReportsLocation) {
    EXPECT_NE(schema_message("{\"schema\": 1,\n  \"A\": [[1, 2]\n").find("line"), std::string::npos);
}

TEST(Parse, SchemaErrorIsInputError) {
    EXPECT_THROW(io::parse_instance("[]"), InputError);
}

TEST(Parse, BoxWithInfiniteBounds) {
    const auto inst = io::parse_instance(R"({"schema": 1, "A": [[1, 1]],
        "R": {"cone": {"type": "box", "lower": [null, -1], "upper": ["inf", 2]}},
        "S": {"type": "orthant", "signs": ["-"]}, "norms": {"b": "linf", "x": "l1"}})");
    const auto* b = inst.r.as<cones::Box>();
    ASSERT_TRUE(b);
    EXPECT_TRUE(std::isinf(b->lower[0]) && b->lower[0] < 0);
    EXPECT_TRUE(std::isinf(b->upper[0]) && b->upper[0] > 0);
    EXPECT_EQ(b->upper[1], 2.0);
}

TEST(Parse, OptionsAndSide) {
    const auto inst = io::parse_instance(R"({"schema": 1, "matrix": [[1]], "R": {"type": "full"},
        "S": {"type": "zero"}, "norms": {"b": "l1", "x": "l1"}, "side": "adjoint",
        "options": {"tol": 1e-8, "threads": 2, "seed": 9}})");
    EXPECT_EQ(inst.side, "adjoint");
    EXPECT_EQ(inst.options.tol, 1e-8);
    EXPECT_EQ(inst.options.threads, 2u);
    EXPECT_EQ(inst.seed, 9u);
}

TEST(Load, CsvMatrixMatchesJsonFixture) {
    const DenseMatrix csv = io::load_matrix(kFixtures / "chi_golden.csv");
    const DenseMatrix json = io::load_matrix(kFixtures / "chi_golden.json");
    EXPECT_EQ(csv, json);
    EXPECT_EQ(csv, (DenseMatrix{{1, 0, 1}, {0, 1, 1}}));
}

TEST(Load, CsvReferenceInsideInstance) {
    const fs::path dir = fs::temp_directory_path() / "hoffman_io_test";
    fs::create_directories(dir);
    std::ofstream(dir / "m.csv") << "# comment\n1, -1\n";
    const auto inst = io::parse_instance(R"({"schema": 1, "A": {"csv": "m.csv"}, "R": {"type": "orthant"},
        "S": {"type": "zero"}, "norms": {"b": "l1", "x": "l1"}})",
                                         dir);
    EXPECT_EQ(inst.a, (DenseMatrix{{1, -1}}));
    std::ofstream(dir / "bad.csv") << "1, x\n";
    EXPECT_THROW(io::load_matrix(dir / "bad.csv"), io::SchemaError);
    fs::remove_all(dir);
}

TEST(Load, AllFixturesParse) {
    for (const auto& entry : fs::directory_iterator(kFixtures)) {
        if (entry.path().extension() != ".json") continue;
        const auto inst = io::load_instance(entry.path());
        EXPECT_NO_THROW(io::to_map(inst)) << entry.path();
    }
}

TEST(Load, AdjointSideFlipsTheMap) {
    const auto inst = io::load_instance(kFixtures / "dual_theta_pi8.json");
    ASSERT_EQ(inst.side, "adjoint");
    const auto m = io::to_map(inst);
    EXPECT_EQ(m.a(), inst.a.transpose());
    EXPECT_EQ(m.norms(), inst.norms.dualized());
}

TEST(Encode, ConeRoundTrip) {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 30; ++trial) {
        const cones::ConeRepr c = gen::random_cone(rng, 3);
        io::Json inst;
        inst["schema"] = 1;
        inst["A"] = io::matrix_json(DenseMatrix::identity(3));
        inst["R"] = io::cone_json(c);
        inst["S"] = io::cone_json(cones::ZeroSet{3});
        inst["norms"] = {{"b", "l1"}, {"x", "l1"}};
        const auto back = io::parse_instance(inst.dump());
        EXPECT_TRUE(cones::structurally_equal(back.r, c)) << cones::kind_name(c);
    }
}

TEST(Encode, StableDumpIsByteIdentical) {
    const auto m = io::to_map(io::load_instance(kFixtures / "primal_theta_pi12.json"));
    const std::string a = io::dump_stable(io::report_json(hoffman_constant(m, {1e-9, 1})));
    const std::string b = io::dump_stable(io::report_json(hoffman_constant(m, {1e-9, 3})));
    EXPECT_EQ(a, b);
    EXPECT_NE(a.find("\"method\": \"geometric-inradius\""), std::string::npos);
}

TEST(Encode, NumbersKeepFullPrecision) {
    io::Json j;
    j["x"] = 0.1;
    j["inf"] = std::numeric_limits<double>::infinity();
    j["v"] = io::vector_json(Vector{1.0 / 3});
    const std::string s = io::dump_stable(j);
    EXPECT_NE(s.find("0.10000000000000001"), std::string::npos);
    EXPECT_NE(s.find("\"inf\": null"), std::string::npos);
    EXPECT_NE(s.find("0.33333333333333331"), std::string::npos);
    EXPECT_EQ(io::Json::parse(s)["x"].get<double>(), 0.1);
}

TEST(Encode, InfiniteReportHasNullValue) {
    HoffmanReport r;
    r.infinite = true;
    r.value = std::numeric_limits<double>::infinity();
    const auto j = io::report_json(r);
    EXPECT_TRUE(j["value"].is_null());
    EXPECT_TRUE(j["infinite"].get<bool>());
}
