#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "fixtures.hpp"
#include "qrep/enumerate.hpp"
#include "qrep/io.hpp"

using namespace qrep;

namespace {

std::size_t error_line(const std::string& text) {
    try {
        parse_representation(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 0;
}

const char* kForkLines =
    "vertex 1\nvertex 2\nvertex 3\nvertex 4\n"
    "arrow a 1 3\narrow b 2 3\narrow c 3 4\n";

}  // namespace

TEST(RepFile, InlineQuiver) {
    std::string text = std::string(kForkLines) +
                       "ring 4\n"
                       "module 1 Z/2\n"
                       "module 3 Z/4\n"
                       "module 4 Z/4   # comment\n"
                       "map a [[2]]\n"
                       "map c [[1]]\n";
    auto x = parse_representation(text);
    EXPECT_EQ(x, fixtures::fork_cokernel_z2());
}

TEST(RepFile, QuiverPathRelativeToFile) {
    auto dir = std::filesystem::temp_directory_path() / "qrep_io_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "fork.quiver") << kForkLines;
    std::ofstream(dir / "x.rep") << "quiver fork.quiver\nring 4\nmodule 1 Z/2\nmodule 3 Z/4\nmodule 4 Z/4\n"
                                    "map a [[2]]\nmap c [[1]]\n";
    EXPECT_EQ(load_representation(dir / "x.rep"), fixtures::fork_cokernel_z2());
    std::filesystem::remove_all(dir);
}

TEST(RepFile, LiteralSummandBasis) {
    const std::string head = "vertex 1\nvertex 2\narrow a 1 2\nring 4\nmodule 1 Z/4\n";
    auto x = parse_representation(head + "module 2 Z/4 + Z/2\nmap a [[1],[0]]\n");
    auto y = parse_representation(head + "module 2 Z/2 + Z/4\nmap a [[0],[1]]\n");
    EXPECT_EQ(x, y);
    // Generator of Z/2 sent to an element of order 2 only.
    auto z = parse_representation("vertex 1\nvertex 2\narrow a 1 2\nring 4\nmodule 1 Z/2\nmodule 2 Z/4 + Z/2\n"
                                  "map a [[2],[1]]\n");
    EXPECT_EQ(z.map(0).apply({1}).size(), 2u);
}

TEST(RepFile, LinePreciseErrors) {
    const std::string h = "vertex 1\nvertex 2\narrow a 1 2\n";
    EXPECT_EQ(error_line(h + "ring 4\nmodule 3 Z/4\n"), 5u);                        // unknown vertex
    EXPECT_EQ(error_line(h + "ring 4\nmodule 1 Z/4\nmodule 1 Z/2\n"), 6u);          // duplicate module
    EXPECT_EQ(error_line(h + "ring 4\nmodule 1 Z/4\nmodule 2 Z/4\nmap a [[1,0]]\n"), 7u);  // shape
    EXPECT_EQ(error_line(h + "ring 4\nmodule 1 Z/4\nmodule 2 Z/2\nmap a [[1]]\nmap a [[1]]\n"), 8u);
    EXPECT_EQ(error_line(h + "ring 4\nmodule 1 Z/2\nmodule 2 Z/4\nmap a [[1]]\n"), 7u);  // not a homomorphism
    EXPECT_EQ(error_line(h + "ring 4\nmodule 1 Z/8\n"), 5u);                        // order does not divide n
    EXPECT_EQ(error_line(h + "ring 4\nmodule 1 Z/x\n"), 5u);
    EXPECT_EQ(error_line(h + "ring 4\nbogus\n"), 5u);
    EXPECT_EQ(error_line(h + "ring 4\nmap b [[1]]\n"), 5u);
    EXPECT_EQ(error_line(h + "ring 4\nmodule 1 Z/4\nmodule 2 Z/4\nmap a [[1]\n"), 7u);
    EXPECT_EQ(error_line(h + "vertex 1\nring 4\n"), 4u);  // duplicate vertex
    EXPECT_GT(error_line(h + "module 1 Z/4\n"), 0u);      // missing ring
    EXPECT_GT(error_line(h + "ring 4\nmodule 1 Z/4\nmodule 2 Z/4\n"), 0u);  // missing map
}

TEST(RepFile, TextRoundTrip) {
    RingSpec r4(4);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        auto x = random_rep(fork_quiver(), r4, 16, rng);
        EXPECT_EQ(parse_representation(representation_text(x)), x);
    }
}

TEST(Json, RepresentationRoundTrip) {
    RingSpec r6(6);
    std::mt19937_64 rng(4);
    for (int t = 0; t < 30; ++t) {
        auto x = random_rep(fork_quiver(), r6, 36, rng);
        auto j = representation_to_json(x);
        EXPECT_EQ(representation_from_json(Json::parse(j.dump())), x);
    }
    EXPECT_EQ(quiver_from_json(quiver_to_json(opposite(fork_quiver()))), opposite(fork_quiver()));
}
